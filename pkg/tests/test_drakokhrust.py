import pytest

from hnp_knot.errors import CapExceeded, UnverifiedExtension
from hnp_knot.groups.heisenberg import build_heisenberg_cover
from hnp_knot.groups.matrices import sl2_generators
from hnp_knot.groups.permgroup import point_stabilizer, trivial_group
from hnp_knot.groups.zoo import (
    build_a4,
    build_cyclic,
    build_P,
    build_q8_cover,
    build_v4,
    trivial_extension,
)
from hnp_knot.cohomology.drakokhrust import (
    abelian_quotient_invariants,
    drakokhrust_sha,
    drakokhrust_subgroup,
    invariants_from_orders,
    representation_flag,
    schur_multiplier_small,
)
from hnp_knot.cohomology.sha import sha_omega


def test_invariants_from_element_orders():
    assert invariants_from_orders([1, 2, 2, 2, 4, 4, 4, 4]).as_list() == [2, 4]
    assert invariants_from_orders([1, 2, 3, 3, 6, 6]).as_list() == [6]
    assert invariants_from_orders([1]).is_trivial


def test_abelian_quotient():
    assert abelian_quotient_invariants(build_a4(), build_v4()).as_list() == [3]
    V4 = build_v4()
    assert abelian_quotient_invariants(V4, trivial_group(4)).as_list() == [2, 2]


@pytest.mark.parametrize(
    "G, expected",
    [(build_P(1, 3), []), (build_v4(), [2]), (build_a4(), [2]), (build_P(2, 3), []), (trivial_group(3), [])],
    ids=["C9", "V4", "A4", "P2", "trivial"],
)
def test_schur_multiplier(G, expected):
    assert schur_multiplier_small(G).as_list() == expected


def test_schur_multiplier_is_capped(star_groups):
    with pytest.raises(CapExceeded):
        schur_multiplier_small(star_groups[24][0])


def test_quaternion_cover_of_the_klein_group():
    ext = build_q8_cover()
    assert ext.flag == "unverified"
    assert representation_flag(ext) == "oracle-verified"
    result = drakokhrust_sha(ext, trivial_group(4))
    assert result.as_list() == [2]
    V4 = build_v4()
    assert result == sha_omega(V4, point_stabilizer(V4, 0)).invariants


@pytest.mark.parametrize("m", [3, 5, 9])
def test_cyclic_groups_are_their_own_covers(m):
    ext = trivial_extension(build_cyclic(m))
    assert representation_flag(ext) == "oracle-verified"
    assert drakokhrust_sha(ext, trivial_group(m)).is_trivial


def test_unverified_extension_is_refused():
    ext = trivial_extension(build_v4())
    assert representation_flag(ext) == "unverified"
    with pytest.raises(UnverifiedExtension):
        drakokhrust_sha(ext, trivial_group(4))
    assert drakokhrust_sha(ext, trivial_group(4), allow_unverified=True).is_trivial


def test_heisenberg_cover_p3():
    ext = build_heisenberg_cover(3, sl2_generators(3))
    assert representation_flag(ext) == "proved"
    H = point_stabilizer(ext.base, 0)
    assert drakokhrust_sha(ext, H).as_list() == [3]
    H_tilde = ext.projection.preimage(H)
    assert drakokhrust_subgroup(ext.total, H_tilde).is_subgroup_of(H_tilde)


@pytest.mark.slow
def test_heisenberg_cover_p5():
    ext = build_heisenberg_cover(5, sl2_generators(5))
    assert drakokhrust_sha(ext, point_stabilizer(ext.base, 0)).as_list() == [5]
