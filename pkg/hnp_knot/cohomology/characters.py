"""Character-level description of S^2 for an abelian normal subgroup ``E``.

``H^2(G, Ind_E^G Z)`` is identified with the character group of ``E``; a
character ``f`` lies in S^2 when, for every decomposition group ``D``, the
family ``x -> f(g^-1 x g)`` on ``D n E`` (one entry per double coset ``D g E``)
splits as a common character trivial on ``D^der n E`` plus characters trivial
on ``D n gHg^-1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..errors import PreconditionViolated
from ..groups.permgroup import (
    Perm,
    PermGroup,
    close,
    conjugate_subgroup,
    derived_subgroup,
    double_coset_reps,
    exponent,
    intersection,
    is_abelian,
    is_normal,
)
from ..linalg.zmod import AbelianInvariants, HowellBasis, kernel, quotient_invariants, span, zero_span
from .sha import DecompositionSet, restriction_targets

logger = logging.getLogger(__name__)


class WordCoordinates:
    """Exponent vectors over the generators of an abelian group, modulo its exponent."""

    def __init__(self, E: PermGroup) -> None:
        self.group = E
        self.modulus = max(exponent(E), 2)
        self.generators: Tuple[Perm, ...] = E.generators
        t = len(self.generators)
        self.coords: Dict[Perm, np.ndarray] = {E.identity: np.zeros(t, dtype=np.int64)}
        relations: List[np.ndarray] = []
        frontier = [E.identity]
        while frontier:
            fresh = []
            for x in frontier:
                cx = self.coords[x]
                for i, s in enumerate(self.generators):
                    y = x * s
                    cy = cx.copy()
                    cy[i] = (cy[i] + 1) % self.modulus
                    known = self.coords.get(y)
                    if known is None:
                        self.coords[y] = cy
                        fresh.append(y)
                    elif not np.array_equal(known, cy):
                        relations.append((cy - known) % self.modulus)
            frontier = fresh
        self.relations: HowellBasis = span(relations, self.modulus, t)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def __call__(self, x: Perm) -> np.ndarray:
        return self.coords[x]


@dataclass(frozen=True, eq=False)
class CharacterGroup:
    """A subgroup of the character group of ``E`` as rows ``v`` with ``f(x) = coords(x) . v / modulus``."""

    words: WordCoordinates
    characters: HowellBasis

    @property
    def modulus(self) -> int:
        return self.words.modulus

    @property
    def invariants(self) -> AbelianInvariants:
        return quotient_invariants(self.characters, zero_span(self.words.rank, self.modulus))

    @property
    def order(self) -> int:
        return self.characters.size

    def value(self, v, x: Perm) -> int:
        return int(self.words(x) @ np.asarray(v, dtype=np.int64) % self.modulus)


def _check_setting(G: PermGroup, H: PermGroup, E: PermGroup) -> None:
    if not E.is_subgroup_of(G) or not is_normal(E, G):
        raise PreconditionViolated("E must be a normal subgroup of G")
    if not is_abelian(E):
        raise PreconditionViolated("E must be abelian")
    if not H.is_subgroup_of(E):
        raise PreconditionViolated("H must lie inside E")


def _constraints_for(G: PermGroup, H: PermGroup, E: PermGroup, D: PermGroup, words: WordCoordinates) -> List[np.ndarray]:
    n = words.modulus
    pieces: List[Tuple[Perm, Perm]] = []
    for g in double_coset_reps(G, D, E):
        C = intersection(D, conjugate_subgroup(H, g))
        pieces.extend((g, c) for c in C.generators)
    if not pieces:
        return []
    commutators = intersection(derived_subgroup(D), E)
    stack = [words(c) for _, c in pieces]
    stack += [words(b) for b in commutators.generators]
    stack += list(words.relations.rows)
    tuples = kernel(np.vstack(stack), n)
    rows = []
    for w in tuples.rows:
        row = np.zeros(words.rank, dtype=np.int64)
        for coeff, (g, c) in zip(w[: len(pieces)], pieces):
            if coeff:
                row = (row + int(coeff) * words(g.inverse() * c * g)) % n
        if row.any():
            rows.append(row)
    return rows


def s2_character(G: PermGroup, H: PermGroup, E: PermGroup, decomposition: DecompositionSet) -> CharacterGroup:
    """The characters of ``E`` satisfying the splitting condition for every decomposition group."""
    _check_setting(G, H, E)
    words = WordCoordinates(E)
    n, t = words.modulus, words.rank
    rows: List[np.ndarray] = list(words.relations.rows)
    targets = restriction_targets(G, decomposition, H)
    for D in targets:
        rows.extend(_constraints_for(G, H, E, D, words))
    logger.debug(f"S2 over E of order {E.order}: {len(targets)} decomposition groups, {len(rows)} constraint rows")
    if not rows or t == 0:
        characters = zero_span(t, n) if t == 0 else span(np.eye(t, dtype=np.int64), n, t)
    else:
        characters = kernel(np.vstack(rows).T, n, len(rows))
    return CharacterGroup(words, characters)


def selmer_order_identity(
    G: PermGroup, H: PermGroup, E: PermGroup, decomposition: DecompositionSet
) -> Tuple[int, int, int]:
    """``(|S^2|, |E / (E n G^der)|, |(E n H G^der) / H|)``."""
    s2 = s2_character(G, H, E, decomposition)
    G_der = derived_subgroup(G)
    HG_der = close(list(H.generators) + list(G_der.generators), G.degree)
    abelian_part = E.order // intersection(E, G_der).order
    stabilizer_part = intersection(E, HG_der).order // H.order
    return s2.order, abelian_part, stabilizer_part
