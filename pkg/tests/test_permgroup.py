import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from hnp_knot.errors import BadParameter, CapExceeded, NotSubgroup
from hnp_knot.groups.permgroup import (
    GroupHom,
    Perm,
    center,
    close,
    commutator,
    cyclic_subgroups,
    derived_subgroup,
    double_coset_reps,
    exponent,
    intersection,
    is_normal,
    is_transitive,
    left_cosets,
    normal_core,
    point_stabilizer,
    set_order_cap,
    subgroup,
    subgroups_elementary_abelian,
    sylow_p,
)
from hnp_knot.groups.zoo import build_a4, build_P, build_pi, build_Pprime, build_v4


def _sympy(G):
    return PermutationGroup([Permutation(list(g.images)) for g in G.generators])


def test_product_is_composition():
    g = Perm([1, 2, 0])
    h = Perm([1, 0, 2])
    assert (g * h)(0) == g(h(0)) == 2
    assert (g * g.inverse()).is_identity()
    assert g ** 3 == Perm.identity(3)
    assert g.order() == 3


def test_commutator_of_commuting_elements():
    g = Perm([1, 2, 0])
    assert commutator(g, g ** 2).is_identity()


def test_checked_rejects_non_permutation():
    with pytest.raises(BadParameter):
        Perm.checked([0, 0, 1])


def test_orders_agree_with_sympy(star_groups):
    for G in (build_v4(), build_a4(), build_Pprime(2, 3), build_P(2, 3), star_groups[24][0]):
        S = _sympy(G)
        assert G.order == S.order()
        assert center(G).order == S.center().order()
        assert derived_subgroup(G).order == S.derived_subgroup().order()


def test_sylow_orders_agree_with_sympy(star_groups):
    G = star_groups[24][0]
    S = _sympy(G)
    for p in (2, 3):
        P = sylow_p(G, p)
        assert P.order == S.sylow_subgroup(p).order()
        assert P.is_subgroup_of(G)


def test_sylow_of_a4_is_the_klein_group():
    A4 = build_a4()
    P = sylow_p(A4, 2)
    assert P == build_v4()
    assert is_normal(P, A4)
    assert sylow_p(A4, 3).order == 3


def test_order_cap_is_enforced():
    set_order_cap(10)
    with pytest.raises(CapExceeded):
        close([Perm([1, 2, 3, 4, 0]), Perm([1, 0, 2, 3, 4])], 5)


def test_order_cap_must_be_positive():
    with pytest.raises(BadParameter):
        set_order_cap(0)


def test_generators_of_wrong_degree_are_rejected():
    with pytest.raises(BadParameter):
        close([Perm([1, 0])], 3)


def test_transitivity_and_stabilizer():
    A4 = build_a4()
    assert is_transitive(A4)
    H = point_stabilizer(A4, 0)
    assert H.order == 3
    assert all(h(0) == 0 for h in H)
    assert not is_transitive(close([Perm([1, 0, 2, 3])], 4))


def test_exponents_of_the_order_27_families():
    assert exponent(build_Pprime(2, 3)) == 3
    assert exponent(build_P(2, 3)) == 9
    assert exponent(build_P(1, 3)) == 9


def test_left_cosets_are_ordered_by_least_element():
    A4, V4 = build_a4(), build_v4()
    cosets = left_cosets(A4, V4)
    assert len(cosets) == 3
    assert all(len(c) == 4 for c in cosets)
    assert all(c[0] == min(c) for c in cosets)
    leaders = [c[0] for c in cosets]
    assert leaders == sorted(leaders)
    assert cosets[0][0].is_identity()


def test_double_cosets_of_a_point_stabilizer_match_its_orbits():
    A4 = build_a4()
    H = point_stabilizer(A4, 0)
    assert len(double_coset_reps(A4, H, H)) == 2
    assert len(double_coset_reps(A4, H, A4)) == 1


def test_double_cosets_need_subgroups():
    with pytest.raises(NotSubgroup):
        double_coset_reps(build_v4(), build_a4(), build_v4())


def test_cyclic_subgroups():
    assert len(cyclic_subgroups(build_v4())) == 4
    # trivial, four of order 3, three of order 2
    assert len(cyclic_subgroups(build_a4())) == 8


def test_elementary_abelian_subgroups():
    assert len(subgroups_elementary_abelian(build_v4(), 2, 2)) == 1
    assert len(subgroups_elementary_abelian(build_a4(), 2, 2)) == 1
    # the four maximal subgroups of the Heisenberg group
    assert len(subgroups_elementary_abelian(build_Pprime(2, 3), 3, 2)) == 4
    assert subgroups_elementary_abelian(build_P(1, 3), 3, 2) == []


def test_normal_core_of_a_stabilizer_is_trivial():
    A4 = build_a4()
    assert normal_core(A4, point_stabilizer(A4, 0)).is_trivial()
    assert normal_core(A4, build_v4()) == build_v4()


def test_intersection_and_subgroup():
    A4, V4 = build_a4(), build_v4()
    H = point_stabilizer(A4, 0)
    assert intersection(V4, H).is_trivial()
    with pytest.raises(NotSubgroup):
        subgroup(V4, [Perm([1, 2, 0, 3])])


def test_group_hom_onto_a_quotient():
    pi = build_pi(1, 3)
    assert pi.is_surjective()
    assert pi.source.order == 81
    assert pi.kernel().order == 9
    assert pi.image() == pi.target
    assert pi.preimage(pi.target) == pi.source


def test_group_hom_rejects_non_homomorphisms():
    C3 = close([Perm([1, 2, 0])], 3)
    C2 = close([Perm([1, 0])], 2)
    with pytest.raises(BadParameter):
        GroupHom(C3, C2, [Perm([1, 0])])
