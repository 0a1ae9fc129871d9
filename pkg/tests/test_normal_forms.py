"""Smith/Hermite normal forms, linear solving, and kernels.

The SNF oracle is the minor-gcd identity: the product d_1...d_k of the
first k invariant factors equals the gcd of all k x k minors, computed
here by independent cofactor expansion.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fpmod.errors import UnsupportedRing
from fpmod.matrix import Mat
from fpmod.normal_forms import hnf, is_unimodular, kernel_matrix, snf, solve_linear
from fpmod.rings import ZZ, QQ, ZI, Fp, Zmod


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j in range(len(rows)):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def _minor_gcd(rows, k):
    n, m = len(rows), len(rows[0])
    g = 0
    for ri in itertools.combinations(range(n), k):
        for ci in itertools.combinations(range(m), k):
            g = math.gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
    return g


int_matrix = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-10, 10), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        )
    )
)


@given(int_matrix)
@settings(max_examples=150, deadline=None)
def test_snf_integer_properties(rows):
    A = Mat.from_ints(ZZ, rows)
    sf = snf(A)
    assert sf.U.mul(A).mul(sf.V).entries == sf.D.entries
    assert is_unimodular(sf.U) and is_unimodular(sf.V)
    facs = sf.invariant_factors
    assert all(d > 0 for d in facs)
    for i in range(len(facs) - 1):
        assert facs[i + 1] % facs[i] == 0
    prod = 1
    for k, d in enumerate(facs, start=1):
        prod *= d
        assert prod == _minor_gcd(rows, k)


def test_snf_worked_example():
    A = Mat.from_ints(ZZ, [[2, 0], [0, 3]])
    assert snf(A).invariant_factors == (1, 6)


def test_hnf_worked_examples():
    H, U = hnf(Mat.from_ints(ZZ, [[2, 4]]))
    assert H.to_rows() == [[2, 0]]
    assert is_unimodular(U)
    H, _ = hnf(Mat.from_ints(ZZ, [[2, 3]]))
    assert H.to_rows() == [[1, 0]]


@given(int_matrix)
@settings(max_examples=60, deadline=None)
def test_hnf_properties(rows):
    A = Mat.from_ints(ZZ, rows)
    H, U = hnf(A)
    assert A.mul(U).entries == H.entries
    assert is_unimodular(U)


def test_snf_gaussian():
    A = Mat.from_rows(ZI, [[(1, 1), (0, 0)], [(0, 0), (2, 0)]])
    sf = snf(A)
    assert sf.U.mul(A).mul(sf.V).entries == sf.D.entries
    # det = 2(1+i); the chain (1+i) | 2 matches it up to a unit
    assert sf.invariant_factors == ((1, 1), (2, 0))
    prod = ZI.mul(*sf.invariant_factors)
    assert ZI.normalize_assoc(prod)[0] == ZI.normalize_assoc((2, 2))[0]


def test_snf_rationals():
    A = Mat.from_rows(QQ, [[2, 4], [1, 3]])
    sf = snf(A)
    assert sf.invariant_factors == (1, 1)


def test_snf_rejects_zmod():
    with pytest.raises(UnsupportedRing):
        snf(Mat.from_ints(Zmod(6), [[2]]))


def test_solve_worked_examples():
    # 2x = 3 has no integer solution
    assert solve_linear(Mat.from_ints(ZZ, [[2]]), Mat.from_ints(ZZ, [[3]])) is None
    # 2x = 4 over Z/6 does
    sol = solve_linear(Mat.from_ints(Zmod(6), [[2]]), Mat.from_ints(Zmod(6), [[4]]))
    assert sol is not None and Zmod(6).mul(2, sol.get(0, 0)) == 4


def test_solve_completeness_exhaustive_zmod():
    """solve_linear over Z/n agrees with brute force for all small systems."""
    for n in (2, 3, 4, 6, 8):
        ring = Zmod(n)
        rng = random.Random(n)
        for _ in range(60):
            r, c = rng.randint(1, 2), rng.randint(1, 2)
            A = Mat.from_ints(ring, [[rng.randrange(n) for _ in range(c)] for _ in range(r)])
            b = Mat.from_ints(ring, [[rng.randrange(n)] for _ in range(r)])
            found = solve_linear(A, b)
            brute = None
            for xs in itertools.product(range(n), repeat=c):
                x = Mat.from_ints(ring, [[v] for v in xs])
                if A.mul(x).entries == b.entries:
                    brute = x
                    break
            assert (found is None) == (brute is None)
            if found is not None:
                assert A.mul(found).entries == b.entries


@given(int_matrix)
@settings(max_examples=60, deadline=None)
def test_kernel_matrix_integer(rows):
    A = Mat.from_ints(ZZ, rows)
    K = kernel_matrix(A)
    assert A.mul(K).is_zero()
    # rank-nullity: kernel rank equals cols - rank(A)
    assert K.cols == A.cols - snf(A).rank


def test_kernel_matrix_zmod():
    ring = Zmod(6)
    A = Mat.from_ints(ring, [[2]])
    K = kernel_matrix(A)
    assert A.mul(K).is_zero()
    assert K.cols >= 1  # 3 generates the kernel


def test_solve_matrix_rhs():
    A = Mat.from_ints(ZZ, [[2, 0], [0, 3]])
    B = Mat.from_ints(ZZ, [[4, 6], [9, 0]])
    X = solve_linear(A, B)
    assert X is not None and A.mul(X).entries == B.entries
