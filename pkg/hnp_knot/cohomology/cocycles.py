"""Cocycle linear algebra for H^1 and H^2 with finite coefficients.

A 1-cocycle ``f`` is determined by its values on the generators of the group,
so it is stored as the row ``u = (f(s_1), ..., f(s_k))`` in ``(Z/n)^(k r)``.
H^2 of a lattice ``M`` is realized as ``H^1(G, M/n)`` modulo the reductions of
integral classes, with ``n = |G|`` unless stated otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from sympy import Matrix, ilcm

from ..errors import CapExceeded, NotCyclic, NotSubgroup
from ..groups.permgroup import Perm, PermGroup, is_normal
from ..linalg.zmod import (
    AbelianInvariants,
    HowellBasis,
    howell,
    kernel,
    preimage,
    quotient_invariants,
    span,
    zero_span,
)
from .lattice import FinGModule, GLattice

logger = logging.getLogger(__name__)


class CocycleSpace:
    """1-cocycles of ``group`` with values in ``(Z/n)^rank``.

    ``evaluation[g]`` is the ``rank x (k*rank)`` matrix with ``f(g) = evaluation[g] @ u``.
    """

    def __init__(self, group: PermGroup, rank: int, modulus: int, action: Callable[[Perm], np.ndarray]) -> None:
        self.group = group
        self.rank = rank
        self.modulus = modulus
        self.action = action
        self.width = len(group.generators) * rank
        self.evaluation: Dict[Perm, np.ndarray] = {}
        self.cocycles = self._solve()
        self.coboundaries = self._coboundaries()

    def _solve(self) -> HowellBasis:
        n, r, w = self.modulus, self.rank, self.width
        ident = self.group.identity
        self.evaluation[ident] = np.zeros((r, w), dtype=np.int64)
        frontier = [ident]
        constraints: List[np.ndarray] = []
        while frontier:
            fresh = []
            for x in frontier:
                Lx = self.evaluation[x]
                Ax = self.action(x)
                for j, s in enumerate(self.group.generators):
                    y = x * s
                    candidate = Lx.copy()
                    candidate[:, j * r:(j + 1) * r] += Ax
                    candidate %= n
                    known = self.evaluation.get(y)
                    if known is None:
                        self.evaluation[y] = candidate
                        fresh.append(y)
                    else:
                        diff = (candidate - known) % n
                        if diff.any():
                            constraints.append(diff)
            frontier = fresh
        if w == 0:
            return zero_span(0, n)
        if not constraints:
            return howell(np.eye(w, dtype=np.int64), n)
        if len(constraints) * r > 2000:
            logger.debug(f"cocycle system for order {self.group.order}: {len(constraints) * r} rows, {w} unknowns")
        relations = howell(np.vstack(constraints), n, w)
        return kernel(relations.rows.T, n, len(relations))

    def _coboundaries(self) -> HowellBasis:
        n, r = self.modulus, self.rank
        if self.width == 0:
            return zero_span(0, n)
        eye = np.eye(r, dtype=np.int64)
        blocks = [(self.action(s) - eye) % n for s in self.group.generators]
        rows = [np.concatenate([B[:, i] for B in blocks]) for i in range(r)]
        return span(rows, n, self.width)

    def evaluate(self, u: np.ndarray, g: Perm) -> np.ndarray:
        return self.evaluation[g] @ np.asarray(u, dtype=np.int64) % self.modulus

    def restriction_matrix(self, elements: Sequence[Perm]) -> np.ndarray:
        """Row-vector map from cocycles on this group to values on ``elements``."""
        if not elements:
            return np.zeros((self.width, 0), dtype=np.int64)
        return np.hstack([self.evaluation[e].T for e in elements]) % self.modulus

    def is_cocycle(self, u: np.ndarray) -> bool:
        """Check ``f(gh) = f(g) + g f(h)`` on all pairs."""
        values = {g: self.evaluate(u, g) for g in self.group}
        n = self.modulus
        for g in self.group:
            Ag = self.action(g)
            for h in self.group:
                if not np.array_equal(values[g * h], (values[g] + Ag @ values[h]) % n):
                    return False
        return True


@dataclass(frozen=True, eq=False)
class CohGroup:
    """A subquotient ``numerator / denominator`` of cocycle rows, with its invariants."""

    description: str
    space: CocycleSpace
    numerator: HowellBasis
    denominator: HowellBasis
    invariants: AbelianInvariants = field(init=False)
    representatives: List[np.ndarray] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariants", quotient_invariants(self.numerator, self.denominator))
        reps = []
        for row in self.numerator.rows:
            reduced = self.denominator.reduce(row)
            if reduced.any():
                reps.append(reduced)
        object.__setattr__(self, "representatives", reps)

    @property
    def modulus(self) -> int:
        return self.space.modulus

    @property
    def order(self) -> int:
        return self.invariants.order

    def contains(self, u) -> bool:
        return self.numerator.contains(u)

    def is_zero_class(self, u) -> bool:
        return self.denominator.contains(u)

    def __str__(self) -> str:
        return f"{self.description} = {self.invariants}"


def _space_for_module(A: FinGModule, G: Optional[PermGroup] = None) -> CocycleSpace:
    group = G or A.group
    return CocycleSpace(group, A.rank, A.modulus, A.matrix)


def h1_finite(G: PermGroup, A: FinGModule) -> CohGroup:
    if not G.is_subgroup_of(A.group):
        raise NotSubgroup("H^1 over a group the module is not defined on")
    space = _space_for_module(A, G)
    return CohGroup(f"H1({A.name})", space, space.cocycles, space.coboundaries)


def connecting_rows(space: CocycleSpace, M: GLattice) -> List[np.ndarray]:
    """Reductions of the cocycles ``s -> (s m - m) / n`` for ``m`` lifting ``(M/n)^G``."""
    n, r = space.modulus, space.rank
    if r == 0 or not space.group.generators:
        return []
    eye = np.eye(r, dtype=np.int64)
    stacked = np.hstack([((M.matrix(s) - eye) % n).T for s in space.group.generators])
    invariant = kernel(stacked, n)
    rows = []
    for m in invariant.rows:
        pieces = []
        for s in space.group.generators:
            diff = M.matrix(s) @ m - m
            if np.mod(diff, n).any():
                raise ArithmeticError("lifted invariant vector is not invariant modulo n")
            pieces.append(np.mod(diff // n, n))
        rows.append(np.concatenate(pieces))
    return rows


def integral_classes(space: CocycleSpace, M: GLattice) -> HowellBasis:
    """Coboundaries plus reductions of integral 1-cocycles: the classes that vanish in H^2(G, M)."""
    if space.width == 0:
        return space.coboundaries
    extra = connecting_rows(space, M)
    if not extra:
        return space.coboundaries
    return space.coboundaries + span(extra, space.modulus, space.width)


def h2_lattice(G: PermGroup, M: GLattice, modulus: Optional[int] = None) -> CohGroup:
    """``H^2(G, M)`` (its ``modulus``-torsion when a modulus is given) for a lattice on ``G`` or a supergroup."""
    if not G.is_subgroup_of(M.group):
        raise NotSubgroup("H^2 over a group the lattice is not defined on")
    n = modulus or G.order
    if n < 2:
        space = CocycleSpace(G, M.rank, 2, M.matrix)
        return CohGroup(f"H2({M.name})", space, space.coboundaries, space.coboundaries)
    space = CocycleSpace(G, M.rank, n, lambda g: np.mod(M.matrix(g), n))
    trivial = integral_classes(space, M)
    return CohGroup(f"H2({M.name})", space, space.cocycles, trivial)


def restrict(coh: CohGroup, u, D: PermGroup, M: GLattice) -> tuple:
    """Restrict the class of ``u`` to ``D``; returns the restricted row and ``H^2(D, M)`` at the same modulus."""
    if not D.is_subgroup_of(coh.space.group):
        raise NotSubgroup("restriction to a non-subgroup")
    target = h2_lattice(D, M, coh.modulus)
    R = coh.space.restriction_matrix(D.generators)
    return np.asarray(u, dtype=np.int64) @ R % coh.modulus, target


def conjugation_matrix(source: CocycleSpace, target: CocycleSpace, g: Perm, action: Callable[[Perm], np.ndarray]) -> np.ndarray:
    """Transport cocycles on ``D`` to ``g D g^-1`` by ``x -> g f(g^-1 x g)``."""
    n = source.modulus
    g_inv = g.inverse()
    Ag = action(g)
    blocks = [(Ag @ source.evaluation[g_inv * t * g]).T for t in target.group.generators]
    if not blocks:
        return np.zeros((source.width, 0), dtype=np.int64)
    return np.hstack(blocks) % n


def h2_cyclic_tate(C: PermGroup, M: GLattice) -> AbelianInvariants:
    """``M^C / N_C M`` for cyclic ``C``."""
    m = C.order
    gen = next((c for c in C if c.order() == m), None)
    if gen is None:
        raise NotCyclic(f"group of order {m} has no element of order {m}")
    if m == 1 or M.rank == 0:
        return AbelianInvariants()
    r = M.rank
    A = M.matrix(gen)
    fixed = Matrix((A - np.eye(r, dtype=np.int64)).tolist()).nullspace()
    if not fixed:
        return AbelianInvariants()
    basis = []
    for v in fixed:
        scale = ilcm(*[x.q for x in v]) if len(v) > 1 else v[0].q
        basis.append([int(x * scale) for x in v])
    B = np.array(basis, dtype=np.int64)
    saturated = [row for row in B]
    _, pivots = Matrix(B.tolist()).rref()
    minor = Matrix(B[:, list(pivots)].tolist())
    d = abs(int(minor.det()))
    if d > 1:
        for w in kernel(B, d).rows:
            combo = w @ B
            saturated.append(combo // d)
    fixed_span = span([np.mod(row, m) for row in saturated], m, r)
    norm = sum(M.matrix(c) for c in C)
    norm_span = span([np.mod(row, m) for row in norm.T], m, r)
    return quotient_invariants(fixed_span, norm_span)


def _coinduced_quotient(G: PermGroup, A: FinGModule) -> FinGModule:
    """``Map(G, A) / A`` on functions with ``f(1) = 0``; ``(g f)(x) = f(x g) - x f(g)``."""
    r, n = A.rank, A.modulus
    others = [x for x in G if not x.is_identity()]
    slot = {x: i for i, x in enumerate(others)}
    size = len(others) * r
    mats = []
    for g in G.generators:
        T = np.zeros((size, size), dtype=np.int64)
        for x in others:
            row = slot[x] * r
            xg = x * g
            if not xg.is_identity():
                col = slot[xg] * r
                T[row:row + r, col:col + r] += np.eye(r, dtype=np.int64)
            if not g.is_identity():
                col = slot[g] * r
                T[row:row + r, col:col + r] -= A.matrix(x)
        mats.append(T % n)
    return FinGModule(G, n, size, tuple(mats), f"Map({A.name})/{A.name}")


def h2_finite(G: PermGroup, A: FinGModule, cap: int = 64) -> CohGroup:
    """``H^2(G, A) = H^1(G, Map(G, A) / A)`` for small ``G``."""
    if G.order > cap:
        raise CapExceeded(f"finite-module H^2 is limited to groups of order {cap}, got {G.order}")
    restricted = A if A.group == G else A.restrict(G)
    shifted = _coinduced_quotient(G, restricted)
    space = _space_for_module(shifted)
    return CohGroup(f"H2({A.name})", space, space.cocycles, space.coboundaries)


def conjugation_invariants(N: PermGroup, G: PermGroup, M: GLattice) -> AbelianInvariants:
    """Invariants of ``H^2(N, M)^G`` under ``(g f)(x) = g f(g^-1 x g)``."""
    if not is_normal(N, G):
        raise NotSubgroup("conjugation action needs a normal subgroup")
    coh = h2_lattice(N, M, N.order)
    if coh.numerator.cols == 0 or N.order == 1:
        return AbelianInvariants()
    n = coh.modulus
    eye = np.eye(coh.space.width, dtype=np.int64)
    maps = [
        (conjugation_matrix(coh.space, coh.space, g, lambda x: np.mod(M.matrix(x), n)) - eye) % n
        for g in G.generators
    ]
    fixed = preimage(coh.numerator, maps, [coh.denominator] * len(maps))
    return quotient_invariants(fixed + coh.denominator, coh.denominator)
