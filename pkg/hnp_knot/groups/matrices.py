"""2x2 matrices over F_p acting on the plane F_p x F_p.

A matrix ``(a b; c d)`` moves the point ``(x, y)`` to ``(a x + c y, b x + d y)``.
Points are encoded as ``x + p*y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

from ..errors import BadParameter
from .permgroup import Perm, PermGroup, close


@dataclass(frozen=True, order=True)
class MatGL2:
    """An invertible matrix ``(a b; c d)`` mod ``p``."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if self.det == 0:
            raise BadParameter(f"matrix {self.as_rows()} is singular mod {self.p}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "MatGL2":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise BadParameter(f"expected a 2x2 matrix, got {rows}")
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d), p)

    @classmethod
    def identity(cls, p: int) -> "MatGL2":
        return cls(1, 0, 0, 1, p)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def is_special(self) -> bool:
        return self.det == 1

    def __mul__(self, other: "MatGL2") -> "MatGL2":
        p = self.p
        return MatGL2(
            (self.a * other.a + self.b * other.c) % p,
            (self.a * other.b + self.b * other.d) % p,
            (self.c * other.a + self.d * other.c) % p,
            (self.c * other.b + self.d * other.d) % p,
            p,
        )

    def inverse(self) -> "MatGL2":
        inv = pow(self.det, -1, self.p)
        return MatGL2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, self.p)

    def act(self, x: int, y: int) -> Tuple[int, int]:
        p = self.p
        return (self.a * x + self.c * y) % p, (self.b * x + self.d * y) % p

    def as_perm(self) -> Perm:
        p = self.p
        images = [0] * (p * p)
        for x, y in product(range(p), repeat=2):
            u, v = self.act(x, y)
            images[x + p * y] = u + p * v
        return Perm(images)

    def as_rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def order(self) -> int:
        k, m = 1, self
        ident = MatGL2.identity(self.p)
        while m != ident:
            m = m * self
            k += 1
        return k


def translation(p: int, u: int, v: int) -> Perm:
    """The translation ``(x, y) -> (x + u, y + v)`` of the plane."""
    images = [0] * (p * p)
    for x, y in product(range(p), repeat=2):
        images[x + p * y] = (x + u) % p + p * ((y + v) % p)
    return Perm(images)


@lru_cache(maxsize=None)
def sl2_elements(p: int) -> Tuple[MatGL2, ...]:
    return tuple(
        MatGL2(a, b, c, d, p)
        for a, b, c, d in product(range(p), repeat=4)
        if (a * d - b * c) % p == 1
    )


def sl2_generators(p: int) -> List[MatGL2]:
    """``S = (1 1; 0 1)`` and ``T = (0 -1; 1 0)``, which generate SL2(F_p)."""
    return [MatGL2(1, 1, 0, 1, p), MatGL2(0, -1, 1, 0, p)]


def gl2_generators(p: int) -> List[MatGL2]:
    """SL2 generators together with ``diag(g, 1)`` for a generator ``g`` of F_p^x."""
    if p == 2:
        return sl2_generators(p)
    g = next(x for x in range(2, p) if all(pow(x, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
    return sl2_generators(p) + [MatGL2(g, 0, 0, 1, p)]


def _prime_factors(n: int) -> List[int]:
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


def parse_matrices(literal: Sequence[Sequence[Sequence[int]]], p: int) -> List[MatGL2]:
    return [MatGL2.from_rows(rows, p) for rows in literal]


def matrix_group(matgens: Sequence[MatGL2]) -> List[MatGL2]:
    """All products of ``matgens``, sorted."""
    if not matgens:
        raise BadParameter("at least one matrix is needed to know p")
    ident = MatGL2.identity(matgens[0].p)
    seen = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for m in frontier:
            for g in matgens:
                y = m * g
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return sorted(seen)


def linear_perm_group(matgens: Sequence[MatGL2], p: int) -> PermGroup:
    """The matrix group generated by ``matgens`` acting on the ``p*p`` plane points."""
    return close([m.as_perm() for m in matgens], p * p)


def matrix_of_perm(perm: Perm, p: int) -> MatGL2:
    """Read a linear plane permutation back as ``(a b; c d)``: ``e1 -> (a, b)``, ``e2 -> (c, d)``."""
    u, v = perm(1), perm(p)
    return MatGL2(u % p, u // p, v % p, v // p, p)
