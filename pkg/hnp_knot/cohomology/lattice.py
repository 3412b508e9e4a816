"""G-lattices and finite G-modules given by action matrices.

Matrices act on column vectors and ``A[g*h] == A[g] @ A[h]``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..errors import BadParameter, NotSubgroup
from ..groups.permgroup import (
    Perm,
    PermGroup,
    conjugate_subgroup,
    double_coset_reps,
    intersection,
    left_cosets,
)

logger = logging.getLogger(__name__)


def _action_table(
    group: PermGroup, gen_matrices: Sequence[np.ndarray], rank: int, modulus: Optional[int]
) -> Dict[Perm, np.ndarray]:
    """Extend generator matrices to every element, checking each relation met on the way."""
    if len(gen_matrices) != len(group.generators):
        raise BadParameter("one action matrix per generator is required")
    mats = []
    for A in gen_matrices:
        A = np.asarray(A, dtype=np.int64).reshape(rank, rank)
        mats.append(np.mod(A, modulus) if modulus else A)
    ident = np.eye(rank, dtype=np.int64)
    table = {group.identity: ident}
    frontier = [group.identity]
    pairs = list(zip(group.generators, mats))
    while frontier:
        fresh = []
        for x in frontier:
            Ax = table[x]
            for s, As in pairs:
                y = x * s
                Ay = Ax @ As
                if modulus:
                    Ay = np.mod(Ay, modulus)
                known = table.get(y)
                if known is None:
                    table[y] = Ay
                    fresh.append(y)
                elif not np.array_equal(known, Ay):
                    raise BadParameter("action matrices do not define a homomorphism")
        frontier = fresh
    for A in table.values():
        A.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class GLattice:
    """A free Z-module of rank ``rank`` with a matrix action of ``group``."""

    group: PermGroup
    rank: int
    gen_matrices: tuple
    name: str = ""
    _table: Dict[Perm, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_table", _action_table(self.group, self.gen_matrices, self.rank, None))
        for A in self.gen_matrices:
            if self.rank and abs(round(np.linalg.det(np.asarray(A, dtype=float)))) != 1:
                raise BadParameter(f"action matrix of {self.name or 'lattice'} is not invertible over Z")

    def matrix(self, g: Perm) -> np.ndarray:
        return self._table[g]

    def restrict(self, D: PermGroup) -> "GLattice":
        if not D.is_subgroup_of(self.group):
            raise NotSubgroup(f"restriction of {self.name or 'lattice'} to a non-subgroup")
        return GLattice(D, self.rank, tuple(self.matrix(d) for d in D.generators), self.name)


@dataclass(frozen=True, eq=False)
class FinGModule:
    """A free Z/n-module of rank ``rank`` with a matrix action of ``group``."""

    group: PermGroup
    modulus: int
    rank: int
    gen_matrices: tuple
    name: str = ""
    _table: Dict[Perm, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise BadParameter(f"modulus must be at least 2, got {self.modulus}")
        object.__setattr__(self, "_table", _action_table(self.group, self.gen_matrices, self.rank, self.modulus))

    def matrix(self, g: Perm) -> np.ndarray:
        return self._table[g]

    def restrict(self, D: PermGroup) -> "FinGModule":
        if not D.is_subgroup_of(self.group):
            raise NotSubgroup(f"restriction of {self.name or 'module'} to a non-subgroup")
        return FinGModule(D, self.modulus, self.rank, tuple(self.matrix(d) for d in D.generators), self.name)


def trivial_lattice(G: PermGroup) -> GLattice:
    one = np.ones((1, 1), dtype=np.int64)
    return GLattice(G, 1, tuple(one for _ in G.generators), "Z")


def trivial_module(G: PermGroup, modulus: int) -> FinGModule:
    one = np.ones((1, 1), dtype=np.int64)
    return FinGModule(G, modulus, 1, tuple(one for _ in G.generators), f"Z/{modulus}")


def standard_rep_mod_p(linear_group: PermGroup, p: int) -> FinGModule:
    """F_p^2 for a group of linear plane permutations; columns are the images of ``e1`` and ``e2``."""
    if linear_group.degree != p * p:
        raise BadParameter(f"expected permutations of the {p * p} plane points")
    mats = []
    for g in linear_group.generators:
        if g(0) != 0:
            raise BadParameter("standard representation needs permutations fixing the origin")
        u, v = g(1), g(p)
        mats.append(np.array([[u % p, v % p], [u // p, v // p]], dtype=np.int64))
    return FinGModule(linear_group, p, 2, tuple(mats), "V")


def _coset_index(cosets: List[List[Perm]]) -> Dict[Perm, int]:
    return {g: i for i, coset in enumerate(cosets) for g in coset}


def _permutation_matrix(images: Sequence[int]) -> np.ndarray:
    k = len(images)
    P = np.zeros((k, k), dtype=np.int64)
    for i, j in enumerate(images):
        P[j, i] = 1
    return P


def coset_action(G: PermGroup, H: PermGroup) -> List[List[int]]:
    """For each generator of ``G``, the permutation it induces on the left cosets of ``H``."""
    cosets = left_cosets(G, H)
    where = _coset_index(cosets)
    return [[where[s * coset[0]] for coset in cosets] for s in G.generators]


def induced_lattice(G: PermGroup, H: PermGroup) -> GLattice:
    """``Ind_H^G Z`` on the left cosets of ``H`` ordered by least element."""
    mats = tuple(_permutation_matrix(images) for images in coset_action(G, H))
    k = G.order // H.order
    return GLattice(G, k, mats, "Ind")


def induce_lattice(G: PermGroup, M: GLattice) -> GLattice:
    """``Ind_H^G M`` for a lattice ``M`` on ``H <= G``: one block of coordinates per left coset.

    ``s`` sends the block of ``g_i H`` to the block of ``g_j H = s g_i H`` through
    ``M(g_j^-1 s g_i)``.
    """
    H = M.group
    if not H.is_subgroup_of(G):
        raise NotSubgroup("inducing from a group that is not a subgroup")
    cosets = left_cosets(G, H)
    where = _coset_index(cosets)
    reps = [coset[0] for coset in cosets]
    r, k = M.rank, len(cosets)
    mats = []
    for s in G.generators:
        A = np.zeros((r * k, r * k), dtype=np.int64)
        for i, g in enumerate(reps):
            j = where[s * g]
            h = reps[j].inverse() * s * g
            A[j * r:(j + 1) * r, i * r:(i + 1) * r] = M.matrix(h)
        mats.append(A)
    return GLattice(G, r * k, tuple(mats), f"Ind({M.name})")


def inflate_lattice(M: GLattice, projection) -> GLattice:
    """Pull a lattice on ``projection.target`` back along ``projection``."""
    if projection.target != M.group:
        raise NotSubgroup("inflation along a map into another group")
    source = projection.source
    mats = tuple(M.matrix(projection(s)) for s in source.generators)
    return GLattice(source, M.rank, mats, f"Inf({M.name})")


@dataclass(frozen=True, eq=False)
class ChevalleySequence:
    """``0 -> Z -> Ind_H^G Z -> J_{G/H} -> 0`` with its explicit maps."""

    induced: GLattice
    lattice: GLattice
    embedding: np.ndarray
    projection: np.ndarray


def chevalley_sequence(G: PermGroup, H: PermGroup) -> ChevalleySequence:
    """``J_{G/H}`` in the basis of the first ``(G:H) - 1`` coset coordinates."""
    induced = induced_lattice(G, H)
    k = induced.rank
    projection = np.zeros((k - 1, k), dtype=np.int64)
    projection[:, : k - 1] = np.eye(k - 1, dtype=np.int64)
    projection[:, k - 1] = -1
    mats = []
    for images in coset_action(G, H):
        J = np.zeros((k - 1, k - 1), dtype=np.int64)
        for i in range(k - 1):
            if images[i] == k - 1:
                J[:, i] = -1
            else:
                J[images[i], i] = 1
        mats.append(J)
    lattice = GLattice(G, k - 1, tuple(mats), "J")
    embedding = np.ones(k, dtype=np.int64)
    return ChevalleySequence(induced, lattice, embedding, projection)


def chevalley_lattice(G: PermGroup, H: PermGroup) -> GLattice:
    return chevalley_sequence(G, H).lattice


def reduce_mod(M: GLattice, n: int) -> FinGModule:
    return FinGModule(M.group, n, M.rank, tuple(np.mod(A, n) for A in M.gen_matrices), f"{M.name}/{n}")


def dual(M: FinGModule) -> FinGModule:
    """``Hom(M, Z/n)`` with ``g`` acting by the transpose of ``A[g^-1]``."""
    mats = tuple(M.matrix(s.inverse()).T.copy() for s in M.group.generators)
    name = M.name[:-1] if M.name.endswith("^") else f"{M.name}^"
    return FinGModule(M.group, M.modulus, M.rank, mats, name)


@dataclass(frozen=True)
class MackeyPiece:
    representative: Perm
    intersection: PermGroup

    def index_in(self, D: PermGroup) -> int:
        return D.order // self.intersection.order


def mackey_pieces(G: PermGroup, H: PermGroup, D: PermGroup) -> List[MackeyPiece]:
    """One piece ``D n gHg^-1`` per double coset ``D g H``."""
    pieces = [
        MackeyPiece(g, intersection(D, conjugate_subgroup(H, g)))
        for g in double_coset_reps(G, D, H)
    ]
    if sum(piece.index_in(D) for piece in pieces) != G.order // H.order:
        raise ArithmeticError("Mackey pieces do not account for every coset")
    return pieces
