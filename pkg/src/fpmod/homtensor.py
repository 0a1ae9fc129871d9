"""Hom modules, tensor products, base change, and the two deciders
(flatness, projectivity) that the descent theorems compare.

Hom(M, N) is presented by solving the well-definedness constraint
T * M.rels = N.rels * Y for the matrix T of a candidate morphism; tensor
products use the standard presentation with relations M.rels (x) id and
id (x) N.rels; base change applies the ring map entrywise to the
relation matrix.
"""

from dataclasses import dataclass

from .errors import DeciderDisagreement, RingMismatch
from .matrix import Mat
from .normal_forms import kernel_matrix, solve_linear
from .fpmodule import (
    FpModule,
    Morphism,
    mk_module,
    mk_morphism,
)
from .rings import INTEGERS_MOD


# ---------------------------------------------------------------------------
# Hom


@dataclass(frozen=True)
class HomModule:
    """Hom(M, N) presented as an FpModule, with encode/decode maps."""

    M: FpModule
    N: FpModule
    underlying: FpModule
    gen_mats: Mat  # columns are vec'd well-defined matrices
    triv_mats: Mat  # columns spanning the matrices equivalent to zero

    def decode(self, z):
        """Morphism corresponding to an element (coordinate column)."""
        v = self.gen_mats.mul(z)
        T = Mat.unvec(self.M.ring, v, self.N.gens, self.M.gens)
        return mk_morphism(self.M, self.N, T)

    def encode(self, f):
        """Coordinates of a morphism; inverse of decode modulo relations."""
        big = self.gen_mats.hstack(self.triv_mats)
        sol = solve_linear(big, f.mat.vec())
        if sol is None:
            raise RingMismatch("morphism does not belong to this Hom module")
        return sol.select_rows(range(self.gen_mats.cols))


def hom_module(M, N):
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    ring = M.ring
    nm = N.gens * M.gens
    # constraint [ (M.rels^T (x) I_N) | -(I_rM (x) N.rels) ] [vec T; vec Y] = 0
    iN = Mat.identity(ring, N.gens)
    irM = Mat.identity(ring, M.rels.cols)
    lhs = M.rels.transpose().kron(iN).hstack(irM.kron(N.rels).neg())
    K = kernel_matrix(lhs)
    W = K.select_rows(range(nm))
    keep = [j for j in range(W.cols) if not W.col_mat(j).is_zero()]
    W = W.select_columns(keep)
    # matrices whose columns lie in span(N.rels): vec(N.rels * C) = (I (x) N.rels) vec C
    B = Mat.identity(ring, M.gens).kron(N.rels)
    rels = kernel_matrix(W.hstack(B)).select_rows(range(W.cols))
    underlying = FpModule(ring, W.cols, rels)
    return HomModule(M, N, underlying, W, B)


# ---------------------------------------------------------------------------
# tensor


def tensor(M, N):
    """M (x) N with generator (i, j) at index i*N.gens + j."""
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    ring = M.ring
    left = M.rels.kron(Mat.identity(ring, N.gens))
    right = Mat.identity(ring, M.gens).kron(N.rels)
    return mk_module(ring, left.hstack(right))


def tensor_mor(f, g):
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    return mk_morphism(src, tgt, f.mat.kron(g.mat))


# ---------------------------------------------------------------------------
# base change


def apply_ring_map(phi, A):
    """Entrywise coefficient transport along the ring map."""
    return A.map_entries(phi.apply, new_ring=phi.target)


def base_change(phi, M):
    if M.ring != phi.source:
        raise RingMismatch(f"module over {M.ring}, map from {phi.source}")
    return mk_module(phi.target, apply_ring_map(phi, M.rels))


def base_change_mor(phi, f):
    return mk_morphism(
        base_change(phi, f.source), base_change(phi, f.target), apply_ring_map(phi, f.mat)
    )


# ---------------------------------------------------------------------------
# deciders


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _prime_factorization(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_flat(M):
    """Flatness decider.

    Domains: torsion-free.  Fields: always.  Z/n: for every divisor d of
    n the multiplication map (d) (x) M -> M must be injective, which by
    principality reduces to ann_M(d) = (n/d)M; both sides are computed as
    honest submodules and compared by mutual membership.
    """
    ring = M.ring
    if ring.is_field:
        return True
    if ring.kind != INTEGERS_MOD:
        torsion, _ = M.invariants()
        return not torsion
    from .fpmodule import SubmoduleRep, kernel, sub_eq

    n = ring.modulus
    for d in _divisors(n):
        if d == 1 or d == n:
            continue
        mult_d = mk_morphism(M, M, Mat.identity(ring, M.gens).scale(ring.from_int(d)))
        _, incl = kernel(mult_d)
        ann = SubmoduleRep(M, incl.mat)
        scaled = SubmoduleRep(M, Mat.identity(ring, M.gens).scale(ring.from_int(n // d)))
        if not sub_eq(ann, scaled):
            return False
    return True


def _projective_by_invariants(M):
    ring = M.ring
    torsion, _ = M.invariants()
    if ring.kind != INTEGERS_MOD:
        return not torsion
    nfact = _prime_factorization(ring.modulus)
    for d in torsion:
        for p, e in _prime_factorization(d).items():
            if e != nfact[p]:
                return False
    return True


def _projective_by_split_search(M):
    # section of the canonical R^gens ->> M: S = I + A*W with S*A = 0,
    # i.e. A*W*A = -A; vec(AWA) = (A^T (x) A) vec(W)
    A = M.rels
    if A.cols == 0:
        return True
    lhs = A.transpose().kron(A)
    rhs = A.neg().vec()
    return solve_linear(lhs, rhs) is not None


def is_projective(M):
    """Projectivity, decided twice (invariant criterion and split search).

    The two deciders are independent implementations and must agree;
    disagreement is an internal bug, not a property of the input.
    """
    via_inv = _projective_by_invariants(M)
    via_split = _projective_by_split_search(M)
    if via_inv != via_split:
        raise DeciderDisagreement(
            f"invariant criterion says {via_inv}, split search says {via_split} for {M}"
        )
    return via_inv
