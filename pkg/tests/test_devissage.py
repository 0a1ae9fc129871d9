"""Filtrations, internal direct sums, summand devissage, and cyclic
decompositions of projectives."""

import pytest

from fpmod.errors import InvalidFiltration, NotIdempotent, NotInternal, NotProjective
from fpmod.matrix import Mat
from fpmod.fpmodule import (
    SubmoduleRep,
    free_module,
    identity_morphism,
    mk_module,
    mk_morphism,
    present_submodule,
    sub_eq,
)
from fpmod.devissage import (
    InternalDecomposition,
    KaplanskyFiltration,
    decomposition_to_filtration,
    filtration_to_decomposition,
    projective_cyclic_decomposition,
    relative_complement,
    summand_devissage,
    validate_decomposition,
    validate_filtration,
)
from fpmod.rings import ZZ, Zmod


def test_z6_filtration_roundtrip():
    M = mk_module(ZZ, Mat.from_ints(ZZ, [[2, 0], [0, 3]]))
    p1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    p2 = SubmoduleRep(M, Mat.from_ints(ZZ, [[0], [1]]))
    D = InternalDecomposition(M, (p1, p2))
    assert validate_decomposition(D)
    F = decomposition_to_filtration(D)
    ok, clause = validate_filtration(F)
    assert ok and clause is None
    D2 = filtration_to_decomposition(F)
    assert len(D2.parts) == 2
    for p, q in zip(D.parts, D2.parts):
        mp, _ = present_submodule(M, p.gens_mat)
        mq, _ = present_submodule(M, q.gens_mat)
        assert mp.invariants() == mq.invariants()


def test_invalid_filtration_clause_named():
    # Z/4 with "complement" equal to the whole module at a proper stage
    M = mk_module(ZZ, Mat.from_ints(ZZ, [[4]]))
    bot = SubmoduleRep(M, Mat.zeros(ZZ, 1, 0))
    half = SubmoduleRep(M, Mat.from_ints(ZZ, [[2]]))
    top = SubmoduleRep(M, Mat.from_ints(ZZ, [[1]]))
    F = KaplanskyFiltration(M, (bot, half, top), (half, top))
    ok, clause = validate_filtration(F)
    assert not ok and "disjoint" in clause


def test_filtration_monotone_violation():
    M = free_module(ZZ, 2)
    bot = SubmoduleRep(M, Mat.zeros(ZZ, 2, 0))
    e1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    e2 = SubmoduleRep(M, Mat.from_ints(ZZ, [[0], [1]]))
    top = SubmoduleRep(M, Mat.identity(ZZ, 2))
    F = KaplanskyFiltration(M, (bot, e1, e2, top), (e1, e2, top))
    ok, clause = validate_filtration(F)
    assert not ok and clause.startswith("monotone")


def test_relative_complement():
    M = free_module(ZZ, 2)
    e1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    top = SubmoduleRep(M, Mat.identity(ZZ, 2))
    C = relative_complement(M, e1, top)
    assert C is not None
    assert sub_eq(C, SubmoduleRep(M, C.gens_mat))


def test_relative_complement_can_fail():
    # 2Z inside Z has no complement
    M = free_module(ZZ, 1)
    A = SubmoduleRep(M, Mat.from_ints(ZZ, [[2]]))
    B = SubmoduleRep(M, Mat.from_ints(ZZ, [[1]]))
    assert relative_complement(M, A, B) is None


def test_summand_devissage_coordinate_projection():
    # M = Z/3 + Z/2, e = projection on the first summand
    M = mk_module(ZZ, Mat.from_ints(ZZ, [[3, 0], [0, 2]]))
    p1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    p2 = SubmoduleRep(M, Mat.from_ints(ZZ, [[0], [1]]))
    D = InternalDecomposition(M, (p1, p2))
    e = mk_morphism(M, M, Mat.from_ints(ZZ, [[1, 0], [0, 0]]))
    out = summand_devissage(D, e)
    assert out.ambient.invariants() == ((3,), 0)
    assert len(out.parts) == 1
    assert validate_decomposition(out)


def test_summand_devissage_mixing_idempotent():
    """e(x,y) = (y,y) on Z^2 forces the closure to absorb both parts."""
    M = free_module(ZZ, 2)
    p1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    p2 = SubmoduleRep(M, Mat.from_ints(ZZ, [[0], [1]]))
    D = InternalDecomposition(M, (p1, p2))
    e = mk_morphism(M, M, Mat.from_ints(ZZ, [[0, 1], [0, 1]]))
    out = summand_devissage(D, e)
    assert out.ambient.invariants() == ((), 1)  # im(e) is free of rank 1
    assert validate_decomposition(out)


def test_summand_devissage_rejects_non_idempotent():
    M = free_module(ZZ, 1)
    D = InternalDecomposition(M, (SubmoduleRep(M, Mat.identity(ZZ, 1)),))
    two = mk_morphism(M, M, Mat.from_ints(ZZ, [[2]]))
    with pytest.raises(NotIdempotent):
        summand_devissage(D, two)


def test_summand_devissage_over_zmod6():
    ring = Zmod(6)
    M = mk_module(ring, Mat.from_ints(ring, [[2, 0], [0, 3]]))
    p1 = SubmoduleRep(M, Mat.from_ints(ring, [[1], [0]]))
    p2 = SubmoduleRep(M, Mat.from_ints(ring, [[0], [1]]))
    D = InternalDecomposition(M, (p1, p2))
    e = mk_morphism(M, M, Mat.from_ints(ring, [[1, 0], [0, 0]]))
    out = summand_devissage(D, e)
    assert validate_decomposition(out)
    assert out.ambient.invariants() == ((2,), 0)


def test_projective_cyclic_decomposition():
    D = projective_cyclic_decomposition(free_module(ZZ, 2))
    assert len(D.parts) == 2 and validate_decomposition(D)
    ring = Zmod(6)
    M = mk_module(ring, Mat.from_ints(ring, [[2]]))
    D = projective_cyclic_decomposition(M)
    assert len(D.parts) == 1 and validate_decomposition(D)


def test_projective_cyclic_rejects_torsion():
    M = mk_module(ZZ, Mat.from_ints(ZZ, [[2]]))
    with pytest.raises(NotProjective):
        projective_cyclic_decomposition(M)
