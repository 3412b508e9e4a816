import numpy as np
import pytest

from hnp_knot.errors import BadParameter, NotSubgroup
from hnp_knot.groups.matrices import linear_perm_group, sl2_generators
from hnp_knot.groups.permgroup import Perm, close, point_stabilizer, trivial_group
from hnp_knot.groups.zoo import build_a4, build_E, build_pi, build_Pprime, build_v4, gen_delta
from hnp_knot.cohomology.lattice import (
    GLattice,
    chevalley_lattice,
    chevalley_sequence,
    dual,
    induce_lattice,
    induced_lattice,
    inflate_lattice,
    mackey_pieces,
    reduce_mod,
    standard_rep_mod_p,
    trivial_lattice,
    trivial_module,
)


def test_trivial_lattice():
    M = trivial_lattice(build_a4())
    assert M.rank == 1
    assert all(np.array_equal(M.matrix(g), [[1]]) for g in build_a4())


def test_non_homomorphic_matrices_are_rejected():
    C2 = close([Perm([1, 0])], 2)
    with pytest.raises(BadParameter):
        GLattice(C2, 1, (np.array([[2]]),))


def test_induced_lattice_ranks():
    A4 = build_a4()
    assert induced_lattice(A4, A4).rank == 1
    assert induced_lattice(A4, trivial_group(4)).rank == 12
    P2, H = build_Pprime(2, 3), point_stabilizer(build_Pprime(2, 3), 0)
    assert induced_lattice(P2, H).rank == 9


def test_chevalley_sequence_is_exact_and_equivariant(star_groups):
    G, H = star_groups[8]
    seq = chevalley_sequence(G, H)
    assert seq.lattice.rank == 8
    assert not (seq.projection @ seq.embedding).any()
    for s in G.generators:
        lhs = seq.projection @ seq.induced.matrix(s)
        rhs = seq.lattice.matrix(s) @ seq.projection
        assert np.array_equal(lhs, rhs)
    for g in G:
        assert abs(round(np.linalg.det(seq.lattice.matrix(g).astype(float)))) == 1


def test_induce_trivial_lattice_is_the_permutation_lattice():
    A4, V4 = build_a4(), build_v4()
    direct = induced_lattice(A4, V4)
    induced = induce_lattice(A4, trivial_lattice(V4))
    for g in A4:
        assert np.array_equal(direct.matrix(g), induced.matrix(g))


def test_induce_needs_a_subgroup():
    with pytest.raises(NotSubgroup):
        induce_lattice(build_v4(), trivial_lattice(build_a4()))


def test_inflation_along_a_quotient():
    pi = build_pi(1, 3)
    J = chevalley_lattice(pi.target, point_stabilizer(pi.target, 0))
    inflated = inflate_lattice(J, pi)
    assert inflated.rank == 8
    for g in pi.source:
        assert np.array_equal(inflated.matrix(g), J.matrix(pi(g)))


def test_restriction():
    A4, V4 = build_a4(), build_v4()
    J = chevalley_lattice(A4, point_stabilizer(A4, 0))
    R = J.restrict(V4)
    for g in V4:
        assert np.array_equal(R.matrix(g), J.matrix(g))
    with pytest.raises(NotSubgroup):
        J.restrict(close([Perm([1, 0, 2, 3])], 4))


def test_reduce_and_dual():
    A4 = build_a4()
    J = chevalley_lattice(A4, point_stabilizer(A4, 0))
    R = reduce_mod(J, 3)
    assert R.modulus == 3 and R.rank == 3
    twice = dual(dual(R))
    for g in A4:
        assert np.array_equal(R.matrix(g), np.mod(J.matrix(g), 3))
        assert np.array_equal(twice.matrix(g), R.matrix(g))
    T = trivial_module(A4, 5)
    assert all(np.array_equal(dual(T).matrix(g), [[1]]) for g in A4)


def test_standard_representation():
    L = linear_perm_group(sl2_generators(3), 3)
    V = standard_rep_mod_p(L, 3)
    assert V.rank == 2
    S = L.generators[0]
    # (1 1; 0 1) sends e1 = (1, 0) to (1, 1)
    assert np.array_equal(V.matrix(S)[:, 0], [1, 1])
    with pytest.raises(BadParameter):
        standard_rep_mod_p(build_a4(), 3)


def test_mackey_pieces():
    G, E2 = build_Pprime(2, 3), build_E(2, 3)
    D = close([gen_delta(2, 3)], 9)
    pieces = mackey_pieces(G, E2, D)
    assert len(pieces) == 3
    assert sum(piece.index_in(D) for piece in pieces) == 3
    trivial = mackey_pieces(G, E2, trivial_group(9))
    assert len(trivial) == 3
    assert all(piece.intersection.is_trivial() for piece in trivial)
    whole = mackey_pieces(G, E2, G)
    assert len(whole) == 1
    assert whole[0].intersection == E2
