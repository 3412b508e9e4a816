import pytest

from hnp_knot.errors import PreconditionViolated
from hnp_knot.groups.permgroup import point_stabilizer
from hnp_knot.groups.zoo import build_a4, build_E, build_H, build_H_tilde, build_P
from hnp_knot.cohomology.characters import CharacterGroup, WordCoordinates, s2_character, selmer_order_identity
from hnp_knot.cohomology.sha import DecompositionSet, sha2_chevalley


@pytest.fixture(scope="module")
def p3_tower():
    return build_P(3, 3), build_E(3, 3)


@pytest.mark.parametrize("n, expected", [(1, 3), (2, 9), (3, 9)])
def test_s2_for_the_exponent_p_squared_family(n, expected):
    G, H, E = build_P(n, 3), build_H(n, 3), build_E(n, 3)
    s2 = s2_character(G, H, E, DecompositionSet.cyclic(G))
    assert isinstance(s2, CharacterGroup)
    assert s2.order == expected
    # characters of an elementary abelian group
    assert all(d == 3 for d in s2.invariants.as_list())


@pytest.mark.parametrize("n, expected", [(1, 9), (2, 27), (3, 9)])
def test_s2_over_the_largest_group(p3_tower, n, expected):
    G, E = p3_tower
    s2 = s2_character(G, build_H_tilde(n, 3), E, DecompositionSet.cyclic(G))
    assert s2.order == expected


def test_s2_with_a_maximal_decomposition_group(p3_tower):
    G, E = p3_tower
    D = DecompositionSet.build(G, [E])
    assert s2_character(G, build_H_tilde(2, 3), E, D).order == 9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_order_identity_for_the_family(n):
    G, H, E = build_P(n, 3), build_H(n, 3), build_E(n, 3)
    D = DecompositionSet.cyclic(G)
    s2, abelian_part, stabilizer_part = selmer_order_identity(G, H, E, D)
    assert s2 == abelian_part * stabilizer_part * sha2_chevalley(G, H, D).order


@pytest.mark.parametrize("n, sha_order", [(1, 3), (2, 3)])
def test_order_identity_over_the_largest_group(p3_tower, n, sha_order):
    G, E = p3_tower
    H = build_H_tilde(n, 3)
    D = DecompositionSet.cyclic(G)
    s2, abelian_part, stabilizer_part = selmer_order_identity(G, H, E, D)
    sha = sha2_chevalley(G, H, D)
    assert sha.order == sha_order
    assert s2 == abelian_part * stabilizer_part * sha.order


def test_word_coordinates_span_the_group():
    E = build_E(2, 3)
    words = WordCoordinates(E)
    assert words.modulus == 3
    images = {tuple(int(x) % 3 for x in words(e)) for e in E}
    assert len(images) == E.order


def test_setting_is_checked():
    A4 = build_a4()
    H = point_stabilizer(A4, 0)
    with pytest.raises(PreconditionViolated):
        s2_character(A4, H, H, DecompositionSet.cyclic(A4))
