"""Permutations and finite permutation groups with materialized element sets.

Composition is functional: ``(g * h)(x) == g(h(x))``. Element lists are
sorted lexicographically by image sequence, and every "first found" choice
below walks that order, so results are reproducible.
"""

from __future__ import annotations

import logging
from functools import reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import BadParameter, CapExceeded, NotSubgroup

logger = logging.getLogger(__name__)

_ORDER_CAP = 1_000_000


def set_order_cap(cap: int) -> None:
    """Install the process-wide closure cap."""
    global _ORDER_CAP
    if cap < 1:
        raise BadParameter(f"order cap must be positive, got {cap}")
    _ORDER_CAP = int(cap)


def order_cap() -> int:
    return _ORDER_CAP


class Perm:
    """A bijection of ``{0, ..., d-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]) -> None:
        self.images: Tuple[int, ...] = tuple(images)
        self._hash = hash(self.images)

    @classmethod
    def checked(cls, images: Iterable[int]) -> "Perm":
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise BadParameter(f"not a permutation of 0..{len(imgs) - 1}: {list(imgs)}")
        return cls(imgs)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(map(self.images.__getitem__, other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Perm.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * len(self.images)
        result = 1
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            result = result * length // gcd(result, length)
        return result

    def conjugate_by(self, g: "Perm") -> "Perm":
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


def commutator(g: Perm, h: Perm) -> Perm:
    """``[g, h] = g^-1 h g h^-1``."""
    return g.inverse() * h * g * h.inverse()


class PermGroup:
    """A finite permutation group together with its full sorted element list."""

    __slots__ = ("degree", "generators", "elements", "_members")

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm]) -> None:
        self.degree = degree
        self.generators: Tuple[Perm, ...] = tuple(generators)
        self.elements: Tuple[Perm, ...] = tuple(elements)
        self._members: FrozenSet[Perm] = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._members

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @property
    def members(self) -> FrozenSet[Perm]:
        return self._members

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._members <= other._members

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermGroup) and self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
        return (self.order, tuple(g.images for g in self.elements))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, generators={len(self.generators)})"


def close(generators: Iterable[Perm], degree: int) -> PermGroup:
    """The group generated by ``generators`` with all elements materialized."""
    gens: List[Perm] = []
    for g in generators:
        if g.degree != degree:
            raise BadParameter(f"generator of degree {g.degree} given for degree {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    cap = _ORDER_CAP
    raw_gens = [g.images for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for x in frontier:
            for s in raw_gens:
                y = tuple(map(x.__getitem__, s))
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        if len(seen) > cap:
            raise CapExceeded(f"closure exceeded the order cap {cap}")
        frontier = fresh
    elements = [Perm(images) for images in sorted(seen)]
    if len(elements) > 5000:
        logger.debug(f"closed group of degree {degree} with {len(gens)} generators: order {len(elements)}")
    return PermGroup(degree, gens, elements)


def trivial_group(degree: int) -> PermGroup:
    return close([], degree)


def _require_subgroup(H: PermGroup, G: PermGroup, name: str = "H") -> None:
    if not H.is_subgroup_of(G):
        raise NotSubgroup(f"{name} (order {H.order}) is not a subgroup of the ambient group (order {G.order})")


def subgroup_from_elements(elements: Iterable[Perm], degree: int) -> PermGroup:
    """Wrap a known subgroup element set, choosing generators greedily in sorted order."""
    members = sorted(set(elements))
    gens: List[Perm] = []
    current = {Perm.identity(degree)}
    target = len(members)
    for x in members:
        if len(current) == target:
            break
        if x in current:
            continue
        gens.append(x)
        current = set(close(gens, degree).elements)
    if len(current) != target:
        raise NotSubgroup("element set is not closed under multiplication")
    return PermGroup(degree, gens, members)


def subgroup(G: PermGroup, generators: Iterable[Perm]) -> PermGroup:
    H = close(generators, G.degree)
    _require_subgroup(H, G)
    return H


def orbit(G: PermGroup, point: int) -> List[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        fresh = []
        for x in frontier:
            for s in G.generators:
                y = s(x)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return sorted(seen)


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(G, 0)) == G.degree


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < G.degree:
        raise BadParameter(f"point {point} outside 0..{G.degree - 1}")
    return subgroup_from_elements((g for g in G if g(point) == point), G.degree)


def conjugate_subgroup(D: PermGroup, g: Perm) -> PermGroup:
    """``g D g^-1`` computed element-wise."""
    g_inv = g.inverse()
    gens = [g * d * g_inv for d in D.generators]
    elements = sorted(g * d * g_inv for d in D.elements)
    return PermGroup(D.degree, gens, elements)


def normal_closure(G: PermGroup, generators: Iterable[Perm]) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``generators``."""
    N = close(generators, G.degree)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            g_inv = g.inverse()
            for n in N.generators:
                c = g * n * g_inv
                if c not in N:
                    N = close(list(N.generators) + [c], G.degree)
                    changed = True
                    break
            if changed:
                break
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for a in G.generators for b in G.generators]
    return normal_closure(G, comms)


def commutator_subgroup(A: PermGroup, B: PermGroup) -> PermGroup:
    """``[A, B]``, the normal closure in ``<A, B>`` of generator commutators."""
    joint = close(list(A.generators) + list(B.generators), A.degree)
    comms = [commutator(a, b) for a in A.generators for b in B.generators]
    return normal_closure(joint, comms)


def center(G: PermGroup) -> PermGroup:
    central = (z for z in G if all(z * s == s * z for s in G.generators))
    return subgroup_from_elements(central, G.degree)


def exponent(G: PermGroup) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (g.order() for g in G), 1)


def is_abelian(G: PermGroup) -> bool:
    gens = G.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])


def is_elementary_abelian(G: PermGroup, p: int) -> bool:
    return is_abelian(G) and all((g ** p).is_identity() for g in G.generators)


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    return all(g * n * g.inverse() in N for g in G.generators for n in N.generators)


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    def normalizes(g: Perm) -> bool:
        g_inv = g.inverse()
        return all(g * h * g_inv in H for h in H.generators)

    return subgroup_from_elements((g for g in G if normalizes(g)), G.degree)


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    small, big = (A, B) if A.order <= B.order else (B, A)
    return subgroup_from_elements((g for g in small if g in big), A.degree)


def is_cyclic(G: PermGroup) -> bool:
    return any(g.order() == G.order for g in G)


def conjugates(G: PermGroup, D: PermGroup) -> List[PermGroup]:
    """Every distinct ``g D g^-1``, one per coset of the normalizer."""
    _require_subgroup(D, G, "D")
    return [conjugate_subgroup(D, coset[0]) for coset in left_cosets(G, normalizer(G, D))]


def are_conjugate(G: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    if A.order != B.order:
        return False
    return any(C == B for C in conjugates(G, A))


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_p(G: PermGroup, p: int) -> PermGroup:
    """One p-Sylow subgroup, grown by elements of the normalizer in sorted order."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise BadParameter(f"{p} is not prime")
    target = p_part(G.order, p)
    P = trivial_group(G.degree)
    while P.order < target:
        for x in G:
            if x in P or (x ** p) not in P:
                continue
            x_inv = x.inverse()
            if all(x * g * x_inv in P for g in P.generators):
                P = close(list(P.generators) + [x], G.degree)
                break
        else:
            raise ArithmeticError("no normalizing element found while growing a Sylow subgroup")
    return P


def normal_core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``G`` contained in ``H``."""
    _require_subgroup(H, G)
    members = set(H.elements)
    changed = True
    while changed:
        changed = False
        for s in G.generators:
            s_inv = s.inverse()
            kept = {k for k in members if s_inv * k * s in members}
            if kept != members:
                members = kept
                changed = True
    return subgroup_from_elements(members, G.degree)


def double_coset_reps(G: PermGroup, D: PermGroup, H: PermGroup) -> List[Perm]:
    """The least element of each double coset ``D g H``."""
    _require_subgroup(D, G, "D")
    _require_subgroup(H, G, "H")
    covered = set()
    reps: List[Perm] = []
    for g in G:
        if g in covered:
            continue
        reps.append(g)
        coset = [g * h for h in H.elements]
        covered.update(d * x for d in D.elements for x in coset)
    return reps


def left_cosets(G: PermGroup, H: PermGroup) -> List[List[Perm]]:
    """Left cosets ``gH`` ordered by their least element."""
    _require_subgroup(H, G)
    covered = set()
    cosets: List[List[Perm]] = []
    for g in G:
        if g in covered:
            continue
        coset = sorted(g * h for h in H.elements)
        covered.update(coset)
        cosets.append(coset)
    return cosets


def cyclic_subgroups(G: PermGroup) -> List[PermGroup]:
    """Every cyclic subgroup once, ordered by order then elements."""
    found: Dict[FrozenSet[Perm], PermGroup] = {}
    for g in G:
        powers = [Perm.identity(G.degree)]
        x = g
        while not x.is_identity():
            powers.append(x)
            x = x * g
        key = frozenset(powers)
        if key not in found:
            gens = [] if g.is_identity() else [g]
            found[key] = PermGroup(G.degree, gens, sorted(powers))
    return sorted(found.values(), key=PermGroup.sort_key)


def subgroups_elementary_abelian(G: PermGroup, p: int, rank: int) -> List[PermGroup]:
    """All subgroups isomorphic to ``(C_p)^rank``."""
    if rank < 1:
        raise BadParameter(f"rank must be at least 1, got {rank}")
    order_p = [x for x in G if not x.is_identity() and (x ** p).is_identity()]
    level: Dict[FrozenSet[Perm], PermGroup] = {}
    for x in order_p:
        S = close([x], G.degree)
        level.setdefault(S.members, S)
    for _ in range(rank - 1):
        grown: Dict[FrozenSet[Perm], PermGroup] = {}
        for S in level.values():
            for y in order_p:
                if y in S or any(y * s != s * y for s in S.generators):
                    continue
                T = close(list(S.generators) + [y], G.degree)
                grown.setdefault(T.members, T)
        level = grown
    return sorted(level.values(), key=PermGroup.sort_key)


def set_product_size(A: PermGroup, B: PermGroup) -> int:
    """``|A B|`` as a set, via ``|A||B| / |A n B|``."""
    return A.order * B.order // intersection(A, B).order


class GroupHom:
    """A homomorphism given on generators and verified on every source element."""

    def __init__(self, source: PermGroup, target: PermGroup, images: Sequence[Perm]) -> None:
        if len(images) != len(source.generators):
            raise BadParameter("one image per source generator is required")
        for img in images:
            if img not in target:
                raise BadParameter("generator image lies outside the target group")
        self.source = source
        self.target = target
        self.images: Tuple[Perm, ...] = tuple(images)
        self._table = self._extend()

    def _extend(self) -> Dict[Perm, Perm]:
        ident = self.source.identity
        table = {ident: self.target.identity}
        frontier = [ident]
        pairs = list(zip(self.source.generators, self.images))
        while frontier:
            fresh = []
            for x in frontier:
                fx = table[x]
                for s, fs in pairs:
                    y = x * s
                    fy = fx * fs
                    known = table.get(y)
                    if known is None:
                        table[y] = fy
                        fresh.append(y)
                    elif known != fy:
                        raise BadParameter("generator images do not extend to a homomorphism")
            frontier = fresh
        return table

    def __call__(self, g: Perm) -> Perm:
        return self._table[g]

    def kernel(self) -> PermGroup:
        ident = self.target.identity
        return subgroup_from_elements((g for g, fg in self._table.items() if fg == ident), self.source.degree)

    def image(self) -> PermGroup:
        return subgroup_from_elements(set(self._table.values()), self.target.degree)

    def is_surjective(self) -> bool:
        return len(set(self._table.values())) == self.target.order

    def preimage(self, K: PermGroup) -> PermGroup:
        return subgroup_from_elements((g for g, fg in self._table.items() if fg in K), self.source.degree)
