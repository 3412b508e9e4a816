"""Decomposition sets and the kernel of joint restriction on H^2."""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, List, Optional, Sequence

import numpy as np

from ..errors import MethodDisagreement, NotSubgroup
from ..groups.permgroup import (
    PermGroup,
    are_conjugate,
    conjugates,
    cyclic_subgroups,
    is_cyclic,
    p_part,
    subgroups_elementary_abelian,
    sylow_p,
)
from ..linalg.zmod import preimage
from .cocycles import CocycleSpace, CohGroup, h2_lattice, integral_classes
from .lattice import GLattice, chevalley_lattice

logger = logging.getLogger(__name__)


def _prime_divisors(n: int) -> List[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


class DecompositionSet:
    """An admissible set of subgroups: closed under conjugation and holding every cyclic subgroup."""

    def __init__(self, group: PermGroup, members: Sequence[PermGroup], supplied: Sequence[PermGroup]) -> None:
        self.group = group
        self.members = tuple(sorted(set(members), key=PermGroup.sort_key))
        self.supplied = tuple(supplied)

    @classmethod
    def build(cls, G: PermGroup, subgroups: Iterable[PermGroup] = (), *, include_cyclic: bool = True) -> "DecompositionSet":
        supplied = list(subgroups)
        found = {}
        for D in supplied:
            if not D.is_subgroup_of(G):
                raise NotSubgroup(f"decomposition group of order {D.order} is not inside G")
            if D in found:
                continue
            if is_cyclic(D) and include_cyclic:
                continue
            for C in conjugates(G, D):
                found.setdefault(C, C)
        if include_cyclic:
            for C in cyclic_subgroups(G):
                found.setdefault(C, C)
        result = cls(G, list(found), supplied)
        added = len(result.members) - len(set(supplied))
        if added > 0:
            logger.debug(f"decomposition set closed: {len(supplied)} supplied, {added} added by closure")
        return result

    @classmethod
    def cyclic(cls, G: PermGroup) -> "DecompositionSet":
        return cls.build(G, ())

    def __iter__(self) -> Iterator[PermGroup]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, D: PermGroup) -> bool:
        return D in self.members

    @property
    def added(self) -> int:
        return len(self.members) - len(set(self.supplied))

    def non_cyclic(self) -> List[PermGroup]:
        return [D for D in self.members if not is_cyclic(D)]

    def classes(self) -> List[PermGroup]:
        """One member per conjugacy class."""
        reps: List[PermGroup] = []
        for D in self.members:
            if not any(are_conjugate(self.group, R, D) for R in reps):
                reps.append(D)
        return reps

    def contains_elementary_abelian(self, p: int) -> bool:
        """Whether some member contains a subgroup isomorphic to ``(C_p)^2``."""
        for D in self.non_cyclic():
            if D.order % (p * p) == 0 and subgroups_elementary_abelian(D, p, 2):
                return True
        return False


def _reduce_targets(G: PermGroup, candidates: Iterable[PermGroup]) -> List[PermGroup]:
    """Drop trivial groups, conjugates of kept groups and groups inside a conjugate of another."""
    reps: List[PermGroup] = []
    for D in sorted(set(candidates), key=lambda D: (-D.order, D.sort_key())):
        if D.is_trivial() or any(are_conjugate(G, R, D) for R in reps):
            continue
        reps.append(D)
    kept: List[PermGroup] = []
    for D in reps:
        larger = [R for R in reps if R.order > D.order and R.order % D.order == 0]
        if any(D.is_subgroup_of(C) for R in larger for C in conjugates(G, R)):
            continue
        kept.append(D)
    return kept


def restriction_targets(
    G: PermGroup, decomposition: DecompositionSet, H: Optional[PermGroup] = None
) -> List[PermGroup]:
    """Subgroups whose restrictions cut out the same kernel as the whole set.

    With ``H`` given the coefficients are ``J_{G/H}`` and the cyclic members are
    replaced by the cyclic subgroups of ``H``.
    """
    if H is None:
        return _reduce_targets(G, decomposition)
    candidates = cyclic_subgroups(H) + decomposition.non_cyclic()
    return _reduce_targets(G, candidates)


def sylow_targets(G: PermGroup, targets: Iterable[PermGroup], p: int) -> List[PermGroup]:
    return _reduce_targets(G, (sylow_p(D, p) for D in targets))


def fast_modulus(G: PermGroup, H: PermGroup) -> int:
    """The part of ``|G|`` at the primes dividing ``(G:H)``."""
    m = 1
    for q in _prime_divisors(G.order // H.order):
        m *= p_part(G.order, q)
    return m


def _kernel_of_restrictions(
    G: PermGroup, M: GLattice, targets: Sequence[PermGroup], modulus: int
) -> CohGroup:
    coh = h2_lattice(G, M, modulus)
    maps, images = [], []
    for D in targets:
        target_space = CocycleSpace(D, M.rank, coh.modulus, coh.space.action)
        maps.append(coh.space.restriction_matrix(D.generators))
        images.append(integral_classes(target_space, M))
    logger.debug(f"restricting H2 of order-{G.order} group to {len(targets)} subgroups at modulus {modulus}")
    K = preimage(coh.numerator, maps, images) if maps else coh.numerator
    return CohGroup("Sha2", coh.space, K + coh.denominator, coh.denominator)


def _p_primary(sha: CohGroup, p: int) -> CohGroup:
    """Restrict a subquotient to its ``p``-primary classes."""
    cofactor = sha.modulus // p_part(sha.modulus, p)
    if cofactor == 1:
        return sha
    scaled = sha.numerator.scaled(cofactor) + sha.denominator
    return CohGroup(sha.description, sha.space, scaled, sha.denominator)


def sha2(
    G: PermGroup,
    M: GLattice,
    decomposition: DecompositionSet,
    *,
    H: Optional[PermGroup] = None,
    fast_p_part: bool = False,
    sylow_reduction: bool = False,
    cross_check: bool = False,
) -> CohGroup:
    """Kernel of ``H^2(G, M) -> prod_D H^2(D, M)`` over the decomposition set.

    Pass ``H`` when ``M`` is ``J_{G/H}``: this enables the cyclic-of-H targets,
    the prime-part modulus and, for prime-power index, the Sylow targets.
    """
    if decomposition.group != G:
        raise NotSubgroup("decomposition set belongs to another group")
    if H is not None and H == G:
        space = CocycleSpace(G, M.rank, 2, M.matrix)
        return CohGroup("Sha2", space, space.coboundaries, space.coboundaries)
    targets = restriction_targets(G, decomposition, H)
    modulus = fast_modulus(G, H) if (fast_p_part and H is not None) else G.order
    primes = _prime_divisors(G.order // H.order) if H is not None else []
    reduced = sylow_reduction and len(primes) == 1
    if reduced:
        p = primes[0]
        result = _p_primary(_kernel_of_restrictions(G, M, sylow_targets(G, targets, p), modulus), p)
    else:
        result = _kernel_of_restrictions(G, M, targets, modulus)
    if cross_check and (reduced or modulus != G.order):
        plain = _kernel_of_restrictions(G, M, targets, G.order)
        if plain.invariants != result.invariants:
            logger.error(
                f"sha2 disagreement on order-{G.order} group: reduced path {result.invariants.as_list()}, "
                f"plain path {plain.invariants.as_list()}"
            )
            raise MethodDisagreement("reduced and plain Sha computations disagree")
    return result


def sha2_chevalley(G: PermGroup, H: PermGroup, decomposition: DecompositionSet, **options) -> CohGroup:
    return sha2(G, chevalley_lattice(G, H), decomposition, H=H, **options)


def sha_omega(G: PermGroup, H: PermGroup, **options) -> CohGroup:
    """``Sha^2_omega(G, J_{G/H})``, the kernel over all cyclic subgroups."""
    if not H.is_subgroup_of(G):
        raise NotSubgroup("H is not a subgroup of G")
    return sha2_chevalley(G, H, DecompositionSet.cyclic(G), **options)


def restriction_is_zero(coh: CohGroup, u: np.ndarray, D: PermGroup, M: GLattice) -> bool:
    """Whether the class of ``u`` dies on ``D``."""
    target = CocycleSpace(D, M.rank, coh.modulus, coh.space.action)
    row = np.asarray(u, dtype=np.int64) @ coh.space.restriction_matrix(D.generators) % coh.modulus
    return integral_classes(target, M).contains(row)
