"""Sha^2_omega(G, J_{G/H}) from a generalized representation group, by element enumeration."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Iterable, List

from ..errors import CapExceeded, NotSubgroup, UnverifiedExtension
from ..groups.permgroup import (
    PermGroup,
    close,
    commutator,
    conjugate_subgroup,
    derived_subgroup,
    double_coset_reps,
    intersection,
    left_cosets,
    trivial_group,
)
from ..groups.zoo import CentralExtension
from ..linalg.zmod import AbelianInvariants
from .cocycles import h2_lattice
from .lattice import chevalley_lattice

logger = logging.getLogger(__name__)

SCHUR_CAP = 64


def _prime_factorization(n: int) -> Counter:
    out: Counter = Counter()
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] += 1
            n //= q
        q += 1
    if n > 1:
        out[n] += 1
    return out


def invariants_from_orders(orders: Iterable[int]) -> AbelianInvariants:
    """Invariant factors of a finite abelian group given the multiset of its element orders."""
    orders = list(orders)
    total = len(orders)
    factors: List[int] = []
    for p, top in _prime_factorization(total).items():
        logs = [0]
        for k in range(1, top + 1):
            count = sum(1 for o in orders if (p ** k) % o == 0)
            logs.append(_log(count, p))
        # number of cyclic factors of order at least p^k
        at_least = [logs[k] - logs[k - 1] for k in range(1, top + 1)] + [0]
        exps = []
        for k in range(1, top + 1):
            exps.extend([k] * (at_least[k - 1] - at_least[k]))
        factors.append(sorted(p ** e for e in exps))
    merged = []
    width = max((len(f) for f in factors), default=0)
    for i in range(width):
        d = 1
        for f in factors:
            j = len(f) - width + i
            if j >= 0:
                d *= f[j]
        merged.append(d)
    return AbelianInvariants.of(merged)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ArithmeticError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


def abelian_quotient_invariants(A: PermGroup, N: PermGroup) -> AbelianInvariants:
    """Invariants of ``A / N`` for ``N`` normal in ``A`` with abelian quotient."""
    if not N.is_subgroup_of(A):
        raise NotSubgroup("denominator is not inside the numerator group")
    if any(commutator(a, b) not in N for a in A.generators for b in A.generators):
        raise ArithmeticError("quotient is not abelian")
    orders = []
    for coset in left_cosets(A, N):
        x = coset[0]
        y, k = x, 1
        while y not in N:
            y = y * x
            k += 1
        orders.append(k)
    return invariants_from_orders(orders)


def schur_multiplier_small(G: PermGroup, cap: int = SCHUR_CAP) -> AbelianInvariants:
    """``H^2(G, Q/Z)``, realized as ``H^2(G, J_G)`` for the regular Chevalley lattice."""
    if G.order > cap:
        raise CapExceeded(f"Schur multiplier oracle is limited to order {cap}, got {G.order}")
    if G.order == 1:
        return AbelianInvariants()
    return h2_lattice(G, chevalley_lattice(G, trivial_group(G.degree))).invariants


def representation_flag(ext: CentralExtension, cap: int = SCHUR_CAP) -> str:
    if ext.flag == "proved":
        return "proved"
    base = ext.base
    if base.order <= cap:
        image = intersection(ext.kernel, derived_subgroup(ext.total))
        if image.order == schur_multiplier_small(base, cap).order:
            return "oracle-verified"
    return "unverified"


def drakokhrust_subgroup(total: PermGroup, H_tilde: PermGroup) -> PermGroup:
    """The subgroup generated by ``[h, g]`` with ``h`` in ``H_tilde n g^-1 H_tilde g``."""
    gens = [commutator(a, b) for a in H_tilde.generators for b in H_tilde.generators]
    for g in double_coset_reps(total, H_tilde, H_tilde):
        for s in intersection(H_tilde, conjugate_subgroup(H_tilde, g.inverse())).generators:
            gens.append(commutator(s, g))
    return close(gens, total.degree)


def drakokhrust_sha(ext: CentralExtension, H: PermGroup, *, allow_unverified: bool = False) -> AbelianInvariants:
    """Invariants of ``(H~ n G~^der) / Phi(H~)`` with ``H~`` the preimage of ``H``."""
    if not H.is_subgroup_of(ext.base):
        raise NotSubgroup("H is not a subgroup of the base group")
    flag = representation_flag(ext)
    if flag == "unverified":
        if not allow_unverified:
            raise UnverifiedExtension("central extension is not known to be a generalized representation group")
        logger.warning("computing the Drakokhrust quotient over an unverified extension")
    H_tilde = ext.projection.preimage(H)
    numerator = intersection(H_tilde, derived_subgroup(ext.total))
    phi = drakokhrust_subgroup(ext.total, H_tilde)
    logger.debug(
        f"Drakokhrust quotient: |G~| = {ext.total.order}, |H~ n G~^der| = {numerator.order}, |Phi| = {phi.order}"
    )
    return abelian_quotient_invariants(numerator, phi)
