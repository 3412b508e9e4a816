"""Exact linear algebra over Z/n.

Row spans are kept in Howell form, the canonical echelon form for modules
over Z/n with composite ``n``. All vectors are rows; a matrix ``M`` acts on a
row vector ``x`` as ``x @ M``. Kernels are left kernels: ``{x | x M = 0}``.

Entries are stored as ``numpy.int64`` and reduced after every operation, so
products stay below ``n**2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from ..errors import BadParameter, NotContained

logger = logging.getLogger(__name__)


def as_matrix(rows, modulus: int, cols: Optional[int] = None) -> np.ndarray:
    """Coerce ``rows`` into a reduced 2-D int64 array."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        width = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        height = arr.shape[0] if arr.ndim == 2 and width == 0 else 0
        return np.zeros((height, width), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return np.mod(arr, modulus)


def gcdext(a: int, b: int) -> Tuple[int, int, int, int, int]:
    """Return ``(g, s, t, u, v)`` with ``s*a + t*b = g``, ``u*a + v*b = 0``
    and ``s*v - t*u = 1``."""
    if a == 0 and b == 0:
        return 0, 1, 0, 0, 1
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g = old_r
    return g, old_s, old_t, -b // g, a // g


def unit_normalizer(a: int, n: int) -> int:
    """A unit ``c`` mod ``n`` with ``a*c = gcd(a, n)`` mod ``n``."""
    g = gcd(a, n)
    if g == 0 or g == n:
        return 1
    _, s, _, _, _ = gcdext(a // g, n // g)
    c = s % (n // g)
    while gcd(c, n) != 1:
        c += n // g
    return c


@dataclass(frozen=True)
class ModMatrix:
    """A dense matrix over Z/n."""

    modulus: int
    entries: np.ndarray

    @classmethod
    def of(cls, rows, modulus: int, cols: Optional[int] = None) -> "ModMatrix":
        if modulus < 2:
            raise BadParameter(f"modulus must be at least 2, got {modulus}")
        return cls(modulus, as_matrix(rows, modulus, cols))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def howell(self) -> "HowellBasis":
        return howell(self.entries, self.modulus)


@dataclass(frozen=True, eq=False)
class HowellBasis:
    """Canonical generating rows of a row span in ``(Z/n)^cols``."""

    modulus: int
    cols: int
    rows: np.ndarray
    pivots: Tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HowellBasis):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.cols == other.cols
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.cols, self.rows.tobytes()))

    def __len__(self) -> int:
        return self.rows.shape[0]

    @property
    def size(self) -> int:
        """Number of elements of the span."""
        total = 1
        for r, c in enumerate(self.pivots):
            total *= self.modulus // int(self.rows[r, c])
        return total

    def reduce(self, vector) -> np.ndarray:
        """Greedy reduction of ``vector`` by the basis; zero iff it lies in the span."""
        v = np.mod(np.asarray(vector, dtype=np.int64), self.modulus)
        for r, c in enumerate(self.pivots):
            d = int(self.rows[r, c])
            q = int(v[c]) // d
            if q:
                v = np.mod(v - q * self.rows[r], self.modulus)
        return v

    def contains(self, vector) -> bool:
        v = self.reduce(vector)
        return not v.any()

    def contains_all(self, other: "HowellBasis") -> bool:
        return all(self.contains(row) for row in other.rows)

    def scaled(self, factor: int) -> "HowellBasis":
        return howell(self.rows * factor, self.modulus, self.cols)

    def __add__(self, other: "HowellBasis") -> "HowellBasis":
        return howell(np.vstack([self.rows, other.rows]), self.modulus, self.cols)


def _pivot_of(row: np.ndarray) -> int:
    nz = np.flatnonzero(row)
    return int(nz[0]) if nz.size else -1


def howell(matrix, modulus: int, cols: Optional[int] = None) -> HowellBasis:
    """Howell form of the row span of ``matrix`` over Z/``modulus``."""
    n = modulus
    A = as_matrix(matrix, n, cols).copy()
    ncols = A.shape[1]
    top = 0
    for col in range(ncols):
        if top >= A.shape[0]:
            break
        below = A[top:, col]
        nz = np.flatnonzero(below)
        if nz.size == 0:
            continue
        k = top + int(nz[np.argmin(np.gcd(below[nz], n))])
        if k != top:
            A[[top, k]] = A[[k, top]]
        A[top] = np.mod(A[top] * unit_normalizer(int(A[top, col]), n), n)
        d = int(A[top, col])
        while True:
            bad = np.flatnonzero(np.mod(A[top + 1:, col], d))
            if bad.size == 0:
                break
            i = top + 1 + int(bad[0])
            _, s, t, u, v = gcdext(d, int(A[i, col]))
            first = np.mod(s * A[top] + t * A[i], n)
            second = np.mod(u * A[top] + v * A[i], n)
            A[top], A[i] = first, second
            A[top] = np.mod(A[top] * unit_normalizer(int(A[top, col]), n), n)
            d = int(A[top, col])
        factors = A[top + 1:, col] // d
        if factors.any():
            A[top + 1:] = np.mod(A[top + 1:] - factors[:, None] * A[top], n)
        if d != 1:
            extra = np.mod(A[top] * (n // d), n)
            if extra.any():
                A = np.vstack([A, extra])
        top += 1
    H = A[:top]
    pivots = tuple(_pivot_of(row) for row in H)
    for r, c in enumerate(pivots):
        if r == 0:
            continue
        d = int(H[r, c])
        q = H[:r, c] // d
        if q.any():
            H[:r] = np.mod(H[:r] - q[:, None] * H[r], n)
    H.setflags(write=False)
    return HowellBasis(modulus=n, cols=ncols, rows=H, pivots=pivots)


def zero_span(cols: int, modulus: int) -> HowellBasis:
    return howell(np.zeros((0, cols), dtype=np.int64), modulus, cols)


def span(rows: Iterable, modulus: int, cols: int) -> HowellBasis:
    rows = list(rows)
    if not rows:
        return zero_span(cols, modulus)
    return howell(np.vstack([np.asarray(r, dtype=np.int64).reshape(-1, cols) for r in rows]), modulus, cols)


def kernel(matrix, modulus: int, cols: Optional[int] = None) -> HowellBasis:
    """Howell basis of ``{x | x M = 0 mod n}``."""
    M = as_matrix(matrix, modulus, cols)
    r, c = M.shape
    augmented = np.hstack([M, np.eye(r, dtype=np.int64)])
    H = howell(augmented, modulus)
    keep = [row[c:] for row, p in zip(H.rows, H.pivots) if p >= c]
    result = span(keep, modulus, r)
    for row in result.rows:
        if np.mod(row @ M, modulus).any():
            raise ArithmeticError("kernel row failed membership re-check")
    return result


def solve(matrix, target, modulus: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``x M = target``, or ``None`` if the system is inconsistent."""
    M = as_matrix(matrix, modulus)
    r, c = M.shape
    t = np.mod(np.asarray(target, dtype=np.int64).reshape(-1), modulus)
    if not t.any():
        return np.zeros(r, dtype=np.int64)
    if r == 0:
        return None
    H = howell(np.hstack([M, np.eye(r, dtype=np.int64)]), modulus)
    v = np.concatenate([t, np.zeros(r, dtype=np.int64)])
    for row, p in zip(H.rows, H.pivots):
        if p >= c:
            break
        d = int(row[p])
        if int(v[p]) % d:
            return None
        q = int(v[p]) // d
        if q:
            v = np.mod(v - q * row, modulus)
    if v[:c].any():
        return None
    x = np.mod(-v[c:], modulus)
    if not np.array_equal(np.mod(x @ M, modulus), t):
        raise ArithmeticError("solve produced a vector that does not verify")
    return x


def preimage(source: HowellBasis, maps: Sequence[np.ndarray], targets: Sequence[HowellBasis]) -> HowellBasis:
    """Elements ``z`` of ``span(source)`` with ``z @ maps[j]`` in ``targets[j]`` for all ``j``."""
    n = source.modulus
    s = len(source)
    if s == 0 or not maps:
        return source
    Z = source.rows
    top = np.hstack([np.mod(Z @ F, n) for F in maps])
    widths = [F.shape[1] for F in maps]
    blocks = [top]
    offset = 0
    total = sum(widths)
    for T, w in zip(targets, widths):
        if len(T):
            block = np.zeros((len(T), total), dtype=np.int64)
            block[:, offset:offset + w] = np.mod(-T.rows, n)
            blocks.append(block)
        offset += w
    K = kernel(np.vstack(blocks), n)
    lam = K.rows[:, :s]
    return howell(np.mod(lam @ Z, n), n, source.cols)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d1 | d2 | ... | dk`` of a finite abelian group."""

    factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain: {self.factors}")
        if any(d <= 1 for d in self.factors):
            raise ValueError(f"invariant factors must exceed 1: {self.factors}")

    @classmethod
    def of(cls, factors: Iterable[int]) -> "AbelianInvariants":
        return cls(tuple(sorted(int(d) for d in factors if int(d) > 1)))

    @property
    def order(self) -> int:
        total = 1
        for d in self.factors:
            total *= d
        return total

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def p_part(self, p: int) -> "AbelianInvariants":
        parts = []
        for d in self.factors:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            parts.append(q)
        return AbelianInvariants.of(parts)

    def as_list(self) -> List[int]:
        return list(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.factors)


def _lattice_matrix(relations: HowellBasis, k: int) -> np.ndarray:
    """Square upper-triangular integer basis of ``lift(relations) + n Z^k``."""
    n = relations.modulus
    S = np.zeros((k, k), dtype=np.int64)
    by_pivot = {c: r for r, c in enumerate(relations.pivots)}
    for j in range(k):
        if j in by_pivot:
            S[j] = relations.rows[by_pivot[j]]
        else:
            S[j, j] = n
    return S


def quotient_invariants(A: HowellBasis, B: HowellBasis) -> AbelianInvariants:
    """Invariant factors of ``span(A) / span(B)``."""
    if A.modulus != B.modulus or A.cols != B.cols:
        raise NotContained("spans live in different ambient modules")
    if not A.contains_all(B):
        raise NotContained("denominator span is not contained in numerator span")
    n = A.modulus
    k = len(A)
    if k == 0:
        return AbelianInvariants()
    rel_rows: List[np.ndarray] = list(kernel(A.rows, n).rows)
    for b in B.rows:
        mu = solve(A.rows, b, n)
        if mu is None:
            raise NotContained("denominator row has no preimage")
        rel_rows.append(mu)
    relations = span(rel_rows, n, k)
    S = _lattice_matrix(relations, k)
    factors = invariant_factors(Matrix(S.tolist()), domain=ZZ)
    result = AbelianInvariants.of(abs(int(f)) for f in factors)
    if result.order * B.size != A.size:
        raise ArithmeticError("quotient order does not match span sizes")
    return result
