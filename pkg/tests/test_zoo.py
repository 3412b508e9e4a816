import pytest

from hnp_knot.errors import BadParameter, UnknownConstruction
from hnp_knot.groups.matrices import (
    MatGL2,
    gl2_generators,
    linear_perm_group,
    matrix_group,
    matrix_of_perm,
    sl2_elements,
    sl2_generators,
    translation,
)
from hnp_knot.groups.permgroup import (
    commutator_subgroup,
    exponent,
    is_abelian,
    is_cyclic,
    is_elementary_abelian,
    is_normal,
    is_transitive,
    point_stabilizer,
)
from hnp_knot.groups.zoo import (
    build_E,
    build_H,
    build_H_tilde,
    build_P,
    build_Pprime,
    build_cyclic,
    build_pi,
    build_q8_cover,
    build_semidirect_std,
    construct,
    gen_beta_bar,
    gen_delta,
    gen_gamma,
    gen_rho1,
    gen_tau,
    identity_suite,
    sylow_shape,
    trivial_extension,
)


def test_matrix_arithmetic():
    S, T = sl2_generators(3)
    assert S.det == 1 and T.det == 1
    assert S.order() == 3
    assert T.order() == 4
    assert S * S.inverse() == MatGL2.identity(3)
    with pytest.raises(BadParameter):
        MatGL2(1, 1, 1, 1, 3)


def test_plane_action_reverses_products():
    S, T = sl2_generators(3)
    assert (S * T).as_perm() == T.as_perm() * S.as_perm()
    assert matrix_of_perm(S.as_perm(), 3) == S


def test_sl2_and_gl2_orders():
    assert len(sl2_elements(3)) == 24
    assert len(matrix_group(sl2_generators(3))) == 24
    assert len(matrix_group(gl2_generators(3))) == 48
    assert linear_perm_group(sl2_generators(3), 3).order == 24


def test_translation():
    t = translation(3, 1, 0)
    assert t(0) == 1 and t(2) == 0 and t(3) == 4
    assert t.order() == 3


def test_tau_has_order_p_squared():
    assert gen_tau(3).order() == 9
    assert gen_tau(3) ** 3 == gen_rho1(3)
    assert build_P(1, 3).order == 9
    assert is_cyclic(build_P(1, 3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_orders(n):
    assert build_P(n, 3).order == 3 ** (n + 1)
    assert build_Pprime(n, 3).order == 3 ** (n + 1)
    assert build_E(n, 3).order == 3 ** n
    assert is_transitive(build_P(n, 3))
    assert is_transitive(build_Pprime(n, 3))
    assert build_H(n, 3).is_subgroup_of(build_E(n, 3))


def test_E2_in_Pprime2():
    G, E2 = build_Pprime(2, 3), build_E(2, 3)
    assert is_elementary_abelian(E2, 3)
    assert is_normal(E2, G)
    assert commutator_subgroup(E2, G) == build_E(1, 3)
    assert exponent(G) == 3
    assert exponent(build_P(2, 3)) == 9


def test_H_tilde_lies_in_E_p():
    E3 = build_E(3, 3)
    for n in (1, 2, 3):
        assert build_H_tilde(n, 3).is_subgroup_of(E3)
    assert is_abelian(E3)


def test_generator_ranges():
    with pytest.raises(BadParameter):
        gen_gamma(0, 3)
    with pytest.raises(BadParameter):
        gen_beta_bar(3, 3)
    with pytest.raises(BadParameter):
        build_P(1, 4)
    assert gen_delta(1, 3) == gen_rho1(3)


@pytest.mark.parametrize("p", [3, 5])
def test_identity_suite(p):
    checks = identity_suite(p)
    assert checks and all(checks.values()), checks


def test_semidirect_with_sl2():
    G, H = build_semidirect_std(3, sl2_generators(3))
    assert G.order == 216
    assert H.order == 24
    assert all(h(0) == 0 for h in H)
    assert sylow_shape(G, 3) == ("P'", 2)
    for point in (0, 4, 8):
        assert point_stabilizer(G, point).order == 24


def test_top_level_groups_coincide():
    assert build_P(3, 3) == build_Pprime(3, 3)
    assert build_P(3, 3).order == 81


def test_projection_onto_the_heisenberg_group():
    pi = build_pi(2, 3)
    assert pi.is_surjective()
    assert pi.target.order == 27
    assert pi.kernel() == build_E(1, 3)
    assert pi.preimage(build_H(2, 3)) == build_H_tilde(2, 3)
    assert pi.preimage(build_H(2, 3)).order == 9


def test_sylow_shapes():
    assert sylow_shape(build_P(2, 3), 3) == ("P", 2)
    assert sylow_shape(build_Pprime(1, 3), 3) == ("P'", 1)
    assert sylow_shape(build_P(1, 3), 3) == ("P", 1)


def test_small_extensions():
    q8 = build_q8_cover()
    q8.validate()
    assert q8.total.order == 8
    assert q8.kernel.order == 2
    assert q8.base.order == 4
    ext = trivial_extension(build_cyclic(5))
    ext.validate()
    assert ext.kernel.is_trivial()


def test_construct():
    assert construct("P'n", {"p": 3, "n": 2}).order == 27
    assert construct("Cm", {"m": 5}).order == 5
    assert construct("semidirect-std", {"p": 3, "mats": [[[1, 1], [0, 1]]]}).order == 27
    assert construct("A4").order == 12
    with pytest.raises(BadParameter):
        construct("Pn", {"p": 3})
    with pytest.raises(UnknownConstruction):
        construct("S4", {})
