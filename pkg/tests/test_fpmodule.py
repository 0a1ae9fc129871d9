"""Finitely presented modules, morphisms, kernels/cokernels, submodules."""

import pytest

from fpmod.errors import NotWellDefined
from fpmod.matrix import Mat
from fpmod.fpmodule import (
    SubmoduleRep,
    cokernel,
    compose,
    direct_sum,
    free_module,
    full_submodule,
    identity_morphism,
    image,
    is_injective,
    is_iso,
    is_surjective,
    kernel,
    member,
    mk_module,
    mk_morphism,
    mor_eq,
    present_submodule,
    quotient_by,
    sub_eq,
    sub_intersection,
    sub_sum,
    zero_morphism,
    zero_submodule,
)
from fpmod.rings import ZZ, QQ, Zmod


def zmod_cyclic(ring, d):
    return mk_module(ring, Mat.from_ints(ring, [[d]]))


def test_invariants_basic():
    assert zmod_cyclic(ZZ, 6).invariants() == ((6,), 0)
    assert free_module(ZZ, 3).invariants() == ((), 3)
    M = mk_module(ZZ, Mat.from_ints(ZZ, [[2, 0], [0, 3]]))
    assert M.invariants() == ((6,), 0)  # Z/2 + Z/3 = Z/6


def test_invariants_over_zmod():
    # Z/2 presented over Z/4: torsion (2,), no free part
    M = zmod_cyclic(Zmod(4), 2)
    assert M.invariants() == ((2,), 0)
    # free of rank 1 over Z/6
    assert free_module(Zmod(6), 1).invariants() == ((), 1)


def test_is_iso_ignores_presentation():
    A = mk_module(ZZ, Mat.from_ints(ZZ, [[2, 0], [0, 3]]))
    B = zmod_cyclic(ZZ, 6)
    assert is_iso(A, B)
    assert not is_iso(A, zmod_cyclic(ZZ, 4))


def test_morphism_well_definedness():
    Z2, Z4 = zmod_cyclic(ZZ, 2), zmod_cyclic(ZZ, 4)
    with pytest.raises(NotWellDefined):
        mk_morphism(Z2, Z4, Mat.from_ints(ZZ, [[1]]))
    f = mk_morphism(Z2, Z4, Mat.from_ints(ZZ, [[2]]))
    assert not mor_eq(f, zero_morphism(Z2, Z4))


def test_morphism_equality_mod_relations():
    Z4 = zmod_cyclic(ZZ, 4)
    f = mk_morphism(Z4, Z4, Mat.from_ints(ZZ, [[1]]))
    g = mk_morphism(Z4, Z4, Mat.from_ints(ZZ, [[5]]))
    assert mor_eq(f, g)


def test_kernel_cokernel_mult2():
    Z = free_module(ZZ, 1)
    f = mk_morphism(Z, Z, Mat.from_ints(ZZ, [[2]]))
    K, _ = kernel(f)
    assert K.is_zero_module()
    C, proj = cokernel(f)
    assert C.invariants() == ((2,), 0)
    assert mor_eq(compose(proj, f), zero_morphism(Z, C))


def test_kernel_on_torsion():
    Z4 = zmod_cyclic(ZZ, 4)
    f = mk_morphism(Z4, Z4, Mat.from_ints(ZZ, [[2]]))
    K, incl = kernel(f)
    assert K.invariants() == ((2,), 0)
    assert mor_eq(compose(f, incl), zero_morphism(K, Z4))


def test_kernel_of_sum_map():
    Z2f = free_module(ZZ, 2)
    Z = free_module(ZZ, 1)
    f = mk_morphism(Z2f, Z, Mat.from_ints(ZZ, [[1, 1]]))
    K, incl = kernel(f)
    assert K.invariants() == ((), 1)
    assert f.mat.mul(incl.mat).is_zero()


def test_injective_surjective():
    Z = free_module(ZZ, 1)
    two = mk_morphism(Z, Z, Mat.from_ints(ZZ, [[2]]))
    assert is_injective(two) and not is_surjective(two)
    assert is_surjective(identity_morphism(Z))


def test_direct_sum_structure():
    A, B = zmod_cyclic(ZZ, 2), free_module(ZZ, 1)
    S, inl, inr, pl, pr = direct_sum(A, B)
    assert S.invariants() == ((2,), 1)
    assert mor_eq(compose(pl, inl), identity_morphism(A))
    assert mor_eq(compose(pr, inr), identity_morphism(B))
    assert mor_eq(compose(pl, inr), zero_morphism(B, A))


def test_submodule_lattice():
    M = free_module(ZZ, 2)
    e1 = SubmoduleRep(M, Mat.from_ints(ZZ, [[1], [0]]))
    e2 = SubmoduleRep(M, Mat.from_ints(ZZ, [[0], [1]]))
    from fpmod.fpmodule import sub_is_zero

    assert sub_eq(sub_sum(e1, e2), full_submodule(M))
    assert sub_is_zero(sub_intersection(e1, e2))
    assert member(e1, Mat.from_ints(ZZ, [[3], [0]]))
    assert not member(e1, Mat.from_ints(ZZ, [[0], [1]]))


def test_submodule_intersection_nontrivial():
    M = free_module(ZZ, 1)
    a = SubmoduleRep(M, Mat.from_ints(ZZ, [[4]]))
    b = SubmoduleRep(M, Mat.from_ints(ZZ, [[6]]))
    inter = sub_intersection(a, b)
    lcm = SubmoduleRep(M, Mat.from_ints(ZZ, [[12]]))
    assert sub_eq(inter, lcm)


def test_present_submodule():
    # 2Z/4Z inside Z/4 is cyclic of order 2
    Z4 = zmod_cyclic(ZZ, 4)
    S, incl = present_submodule(Z4, Mat.from_ints(ZZ, [[2]]))
    assert S.invariants() == ((2,), 0)
    assert incl.target is Z4


def test_image_and_quotient():
    Z = free_module(ZZ, 1)
    f = mk_morphism(Z, Z, Mat.from_ints(ZZ, [[3]]))
    im = image(f)
    Q = quotient_by(im)
    assert Q[0].invariants() == ((3,), 0)


def test_rationals_modules_are_vector_spaces():
    M = mk_module(QQ, Mat.from_ints(QQ, [[2, 0], [0, 0]]))
    assert M.invariants() == ((), 1)
