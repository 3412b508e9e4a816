import numpy as np
import pytest

from hnp_knot.errors import CapExceeded, NotCyclic, NotSubgroup
from hnp_knot.groups.matrices import linear_perm_group, sl2_generators
from hnp_knot.groups.permgroup import (
    close,
    conjugate_subgroup,
    cyclic_subgroups,
    derived_subgroup,
    point_stabilizer,
    trivial_group,
)
from hnp_knot.groups.zoo import build_a4, build_cyclic, build_P, build_Pprime, build_v4
from hnp_knot.cohomology.cocycles import (
    conjugation_invariants,
    conjugation_matrix,
    h1_finite,
    h2_cyclic_tate,
    h2_finite,
    h2_lattice,
    restrict,
)
from hnp_knot.cohomology.lattice import (
    chevalley_lattice,
    dual,
    induced_lattice,
    standard_rep_mod_p,
    trivial_lattice,
    trivial_module,
)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_h2_of_cyclic_with_integer_coefficients(m):
    C = build_cyclic(m)
    assert h2_lattice(C, trivial_lattice(C)).invariants.as_list() == [m]
    assert h2_cyclic_tate(C, trivial_lattice(C)).as_list() == [m]


def test_h2_of_cyclic_chevalley_lattice_vanishes():
    C = build_P(1, 3)
    J = chevalley_lattice(C, trivial_group(9))
    assert h2_lattice(C, J).invariants.is_trivial
    assert h2_cyclic_tate(C, J).is_trivial


@pytest.mark.parametrize("G", [build_Pprime(1, 3), build_Pprime(2, 3), build_a4()], ids=["P'1", "P'2", "A4"])
def test_cocycle_path_agrees_with_periodicity(G):
    H = point_stabilizer(G, 0)
    for M in (trivial_lattice(G), induced_lattice(G, H), chevalley_lattice(G, H)):
        for C in cyclic_subgroups(G):
            assert h2_lattice(C, M).invariants == h2_cyclic_tate(C, M)


def test_tate_needs_a_cyclic_group():
    V4 = build_v4()
    with pytest.raises(NotCyclic):
        h2_cyclic_tate(V4, trivial_lattice(V4))


def test_representatives_are_cocycles():
    C = build_cyclic(3)
    coh = h2_lattice(C, trivial_lattice(C))
    assert coh.representatives
    for u in coh.representatives:
        assert coh.space.is_cocycle(u)
        assert coh.contains(u)
        assert not coh.is_zero_class(u)


def test_h1_with_trivial_coefficients_is_hom():
    C3 = build_cyclic(3)
    assert h1_finite(C3, trivial_module(C3, 3)).invariants.as_list() == [3]
    assert h1_finite(build_v4(), trivial_module(build_v4(), 2)).invariants.as_list() == [2, 2]
    assert h1_finite(C3, trivial_module(C3, 2)).invariants.is_trivial


def test_h2_finite():
    C2 = build_cyclic(2)
    assert h2_finite(C2, trivial_module(C2, 2)).invariants.as_list() == [2]
    V4 = build_v4()
    assert h2_finite(V4, trivial_module(V4, 2)).invariants.as_list() == [2, 2, 2]
    with pytest.raises(CapExceeded):
        h2_finite(build_a4(), trivial_module(build_a4(), 2), cap=8)


def test_sl2_cohomology_of_the_standard_representation_vanishes():
    L = linear_perm_group(sl2_generators(3), 3)
    V = standard_rep_mod_p(L, 3)
    assert h1_finite(L, V).invariants.is_trivial
    assert h1_finite(L, dual(V)).invariants.is_trivial
    assert h2_finite(L, V, cap=24).invariants.is_trivial


def test_h2_of_induced_lattice_has_order_of_abelianization():
    A4, V4 = build_a4(), build_v4()
    assert h2_lattice(A4, induced_lattice(A4, V4)).order == 4
    H = point_stabilizer(A4, 0)
    assert h2_lattice(A4, induced_lattice(A4, H)).order == H.order // derived_subgroup(H).order


def test_restriction_to_the_trivial_group_is_zero():
    C = build_cyclic(4)
    M = trivial_lattice(C)
    coh = h2_lattice(C, M)
    u = coh.representatives[0]
    row, target = restrict(coh, u, trivial_group(4), M)
    assert row.size == 0 or not row.any()
    assert target.invariants.is_trivial
    same, whole = restrict(coh, u, C, M)
    assert np.array_equal(same, u % coh.modulus)
    assert whole.invariants.as_list() == [4]
    with pytest.raises(NotSubgroup):
        restrict(coh, u, build_cyclic(2), M)


def test_conjugation_invariants_detect_special_actions(star_groups, diag_group, translations3):
    for order in (2, 8):
        G, H = star_groups[order]
        assert conjugation_invariants(translations3, G, chevalley_lattice(G, H)).as_list() == [3]
    G, H = diag_group
    assert conjugation_invariants(translations3, G, chevalley_lattice(G, H)).is_trivial


def test_conjugation_invariants_need_a_normal_subgroup():
    A4 = build_a4()
    H = point_stabilizer(A4, 0)
    with pytest.raises(NotSubgroup):
        conjugation_invariants(H, A4, trivial_lattice(A4))


def test_restriction_commutes_with_conjugation():
    A4 = build_a4()
    M = chevalley_lattice(A4, point_stabilizer(A4, 0))
    coh = h2_lattice(A4, M)
    n = coh.modulus

    def act(x):
        return np.mod(M.matrix(x), n)

    D = point_stabilizer(A4, 1)
    g = next(x for x in A4 if x(1) != 1)
    D_g = conjugate_subgroup(D, g)
    assert D_g != D
    conjugate_on_G = conjugation_matrix(coh.space, coh.space, g, act)
    assert len(coh.space.cocycles) > 0
    for u in coh.space.cocycles.rows:
        on_D, target = restrict(coh, u, D, M)
        _, target_g = restrict(coh, u, D_g, M)
        moved = on_D @ conjugation_matrix(target.space, target_g.space, g, act) % n
        conjugated, _ = restrict(coh, u @ conjugate_on_G % n, D_g, M)
        assert np.array_equal(moved, conjugated)
        assert target_g.space.is_cocycle(moved)
