"""Named permutation groups of degree p^2 and the small extensions used as oracles.

Points of degree ``p*p`` are pairs ``(i, j)`` in F_p x F_p encoded as ``i + p*j``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import BadParameter, UnknownConstruction
from .matrices import MatGL2, parse_matrices, translation
from .permgroup import (
    GroupHom,
    Perm,
    PermGroup,
    center,
    close,
    commutator,
    point_stabilizer,
    sylow_p,
    trivial_group,
)

logger = logging.getLogger(__name__)

# Generators of the seven conjugacy classes of subgroups of SL2(F_3), by order.
SL2_F3_CLASSES: Dict[int, List[List[List[int]]]] = {
    1: [],
    2: [[[2, 0], [0, 2]]],
    3: [[[1, 1], [0, 1]]],
    4: [[[0, 2], [1, 0]]],
    6: [[[1, 1], [0, 1]], [[2, 0], [0, 2]]],
    8: [[[0, 2], [1, 0]], [[1, 1], [1, 2]]],
    24: [[[1, 1], [0, 1]], [[0, 2], [1, 0]]],
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _require_prime(p: int) -> None:
    if not _is_prime(p):
        raise BadParameter(f"p must be prime, got {p}")


def _require_range(name: str, value: int, low: int, high: int) -> None:
    if not low <= value <= high:
        raise BadParameter(f"{name} must lie in {low}..{high}, got {value}")


def _plane_perm(p: int, rule) -> Perm:
    images = [0] * (p * p)
    for i in range(p):
        for j in range(p):
            x, y = rule(i, j)
            images[i + p * j] = x % p + p * (y % p)
    return Perm(images)


def binomial_exponent(m: int, k: int) -> int:
    """``(-1)^(m-k) * C(m, k)`` for ``k <= m``, else 0, over the integers."""
    if k > m:
        return 0
    return (-1) ** (m - k) * comb(m, k)


def gen_z(i0: int, p: int) -> Perm:
    _require_prime(p)
    _require_range("i0", i0, 0, p - 1)
    return _plane_perm(p, lambda i, j: (i, j + 1) if i == i0 else (i, j))


def gen_rho1(p: int) -> Perm:
    _require_prime(p)
    return _plane_perm(p, lambda i, j: (i, j + 1))


def gen_rho2(p: int) -> Perm:
    _require_prime(p)
    return _plane_perm(p, lambda i, j: (i + 1, j))


def gen_tau(p: int) -> Perm:
    return gen_z(p - 1, p) * gen_rho2(p)


def gen_beta_bar(beta: int, p: int) -> Perm:
    _require_prime(p)
    if beta % p == 0:
        raise BadParameter(f"beta must be a unit mod {p}")
    return _plane_perm(p, lambda i, j: (beta * i, j))


def gen_beta_tilde(beta: int, p: int) -> Perm:
    _require_prime(p)
    if beta % p == 0:
        raise BadParameter(f"beta must be a unit mod {p}")
    return _plane_perm(p, lambda i, j: (i, beta * j))


def gen_gamma(n: int, p: int) -> Perm:
    """Product of ``z_i`` raised to the signed binomials of row ``p - n``."""
    _require_prime(p)
    _require_range("n", n, 1, p)
    m = p - n
    shifts = [binomial_exponent(m, k) % p for k in range(p)]
    return _plane_perm(p, lambda i, j: (i, j + shifts[i]))


def gen_delta(n: int, p: int) -> Perm:
    rho2 = gen_rho2(p)
    return rho2 * gen_gamma(n, p) * rho2.inverse()


def build_P(n: int, p: int) -> PermGroup:
    _require_prime(p)
    _require_range("n", n, 1, p)
    return close([gen_tau(p), gen_gamma(n, p)], p * p)


def build_Pprime(n: int, p: int) -> PermGroup:
    _require_prime(p)
    _require_range("n", n, 1, p)
    return close([gen_rho1(p), gen_rho2(p), gen_gamma(n, p)], p * p)


def build_E(n: int, p: int) -> PermGroup:
    _require_prime(p)
    _require_range("n", n, 0, p)
    return close([gen_delta(k, p) for k in range(1, n + 1)], p * p)


def build_H(n: int, p: int) -> PermGroup:
    _require_prime(p)
    _require_range("n", n, 1, p)
    return close([gen_delta(k, p) for k in range(2, n + 1)], p * p)


def build_H_tilde(n: int, p: int) -> PermGroup:
    """``<delta_p, ..., delta_{p-n+2}> E_{p-n}``, the preimage of ``H_n`` in ``P_p``."""
    _require_prime(p)
    _require_range("n", n, 1, p)
    gens = [gen_delta(k, p) for k in range(p - n + 2, p + 1)]
    gens += [gen_delta(k, p) for k in range(1, p - n + 1)]
    return close(gens, p * p)


def build_pi(n: int, p: int) -> GroupHom:
    """The surjection ``P_p -> P'_n`` fixing ``rho2`` and shifting the ``delta`` index down by ``p - n``."""
    _require_prime(p)
    _require_range("n", n, 1, p)
    degree = p * p
    deltas = [gen_delta(k, p) for k in range(1, p + 1)]
    rho2 = gen_rho2(p)
    source = close(deltas + [rho2], degree)
    target = build_Pprime(n, p)
    shift = p - n
    lookup = {d: (gen_delta(k - shift, p) if k > shift else Perm.identity(degree)) for k, d in enumerate(deltas, 1)}
    lookup[rho2] = rho2
    images = [lookup[g] for g in source.generators]
    return GroupHom(source, target, images)


def build_semidirect_std(p: int, matgens: Sequence[MatGL2]) -> Tuple[PermGroup, PermGroup]:
    """``(C_p)^2`` translations extended by the linear action of ``matgens``.

    Returns the group together with the stabilizer of ``(0, 0)``.
    """
    _require_prime(p)
    for m in matgens:
        if m.p != p:
            raise BadParameter(f"matrix {m.as_rows()} is over F_{m.p}, expected F_{p}")
    gens = [translation(p, 1, 0), translation(p, 0, 1)] + [m.as_perm() for m in matgens]
    G = close(gens, p * p)
    return G, point_stabilizer(G, 0)


def sylow_shape(G: PermGroup, p: int) -> Tuple[str, int]:
    """``("P", n)`` when a p-Sylow subgroup has exponent ``p^2``, else ``("P'", n)``."""
    P = sylow_p(G, p)
    size, n = P.order, -1
    while size > 1:
        size //= p
        n += 1
    if n < 1:
        raise BadParameter(f"the p-Sylow subgroup has order {P.order}, too small for degree p^2")
    wide = any(g.order() == p * p for g in P)
    return ("P" if wide else "P'"), n


def identity_suite(p: int) -> Dict[str, bool]:
    """Check the commutation and norm identities among the plane generators."""
    deg = p * p
    one = Perm.identity(deg)
    rho1, rho2, tau = gen_rho1(p), gen_rho2(p), gen_tau(p)
    deltas = {k: gen_delta(k, p) for k in range(1, p + 1)}
    zs = [gen_z(i, p) for i in range(p)]
    checks = {
        "tau_power_is_rho1": tau ** p == rho1,
        "delta1_is_rho1": deltas[1] == rho1,
        "delta_p_is_z1": deltas[p] == zs[1],
        "z_and_delta_commute": all(
            commutator(a, b) == one for a in zs + list(deltas.values()) for b in zs + list(deltas.values())
        ),
    }
    lowered = True
    for n in range(1, p + 1):
        below = deltas[n - 1] if n > 1 else one
        if commutator(deltas[n], rho2) != below:
            lowered = False
        if any(commutator(deltas[n], z * rho2) != below for z in zs):
            lowered = False
    checks["commutator_lowers_delta"] = lowered
    norms = True
    for n in range(1, p + 1):
        prod = one
        for i in range(p):
            prod = prod * (rho2 ** i) * deltas[n] * (rho2 ** -i)
        if prod != (rho1 if n == p else one):
            norms = False
    checks["norm_identity"] = norms
    if p >= 3:
        d2 = deltas[2]
        checks["delta2_conjugates_rho2"] = d2 * rho2 * d2.inverse() == rho1.inverse() * rho2
    scaling = True
    for beta in range(1, p):
        bb, bt = gen_beta_bar(beta, p), gen_beta_tilde(beta, p)
        scaling &= bb * rho1 * bb.inverse() == rho1
        scaling &= bb * rho2 * bb.inverse() == rho2 ** beta
        scaling &= bt * rho1 * bt.inverse() == rho1 ** beta
        scaling &= bt * rho2 * bt.inverse() == rho2
    checks["beta_scaling"] = scaling
    return checks


@dataclass(frozen=True, eq=False)
class CentralExtension:
    """A surjection ``total -> base`` whose kernel is central.

    ``flag`` records the provenance of the generalized-representation property:
    ``"proved"``, ``"oracle-verified"`` or ``"unverified"``.
    """

    total: PermGroup
    kernel: PermGroup
    projection: GroupHom
    flag: str = "unverified"

    @property
    def base(self) -> PermGroup:
        return self.projection.target

    def validate(self) -> None:
        if not self.kernel.is_subgroup_of(center(self.total)):
            raise BadParameter("extension kernel is not central")
        if not self.projection.is_surjective():
            raise BadParameter("extension projection is not surjective")
        if self.projection.kernel() != self.kernel:
            raise BadParameter("extension kernel differs from the projection kernel")


def build_v4() -> PermGroup:
    return close([Perm([1, 0, 3, 2]), Perm([2, 3, 0, 1])], 4)


def build_a4() -> PermGroup:
    return close([Perm([1, 2, 0, 3]), Perm([0, 2, 3, 1])], 4)


# Unit quaternions 1, i, j, k as 0..3; (sign, unit) for the product of two units.
_QUATERNION_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _quaternion_left(unit: int) -> Perm:
    """Left multiplication by a unit quaternion on ``u + 4*b`` with ``b = 1`` for a minus sign."""
    images = [0] * 8
    for b in (0, 1):
        for u in range(4):
            sign, w = _QUATERNION_TABLE[(unit, u)]
            negative = (sign < 0) != bool(b)
            images[u + 4 * b] = w + 4 * int(negative)
    return Perm(images)


def build_q8_cover() -> CentralExtension:
    """The quaternion group mapping onto the Klein four-group with kernel ``{+1, -1}``."""
    total = close([_quaternion_left(1), _quaternion_left(2)], 8)
    base = build_v4()
    # forgetting the sign sends left multiplication to the regular action of V4
    images = [Perm([g(u) % 4 for u in range(4)]) for g in total.generators]
    projection = GroupHom(total, base, images)
    kernel = projection.kernel()
    return CentralExtension(total, kernel, projection, flag="unverified")


def trivial_extension(G: PermGroup) -> CentralExtension:
    """``G`` as its own cover with trivial kernel."""
    projection = GroupHom(G, G, list(G.generators))
    return CentralExtension(G, trivial_group(G.degree), projection, flag="unverified")


def build_cyclic(m: int) -> PermGroup:
    if m < 1:
        raise BadParameter(f"cyclic order must be positive, got {m}")
    return close([Perm([(x + 1) % m for x in range(m)])], m)


NAMED_CONSTRUCTIONS = ("Pn", "P'n", "En", "Hn", "semidirect-std", "heisenberg-cover", "V4", "A4", "Q8-cover", "Cm")


def construct(name: str, params: Optional[Dict[str, Any]] = None) -> PermGroup:
    """Build a named group from its parameters (``p``, ``n``, ``mats``, ``m``)."""
    params = dict(params or {})
    p = params.get("p")
    n = params.get("n")
    if name in ("Pn", "P'n", "En", "Hn"):
        if p is None or n is None:
            raise BadParameter(f"{name} needs both p and n")
        builder = {"Pn": build_P, "P'n": build_Pprime, "En": build_E, "Hn": build_H}[name]
        return builder(int(n), int(p))
    if name in ("semidirect-std", "heisenberg-cover"):
        if p is None:
            raise BadParameter(f"{name} needs p")
        mats = parse_matrices(params.get("mats") or [], int(p))
        if name == "semidirect-std":
            return build_semidirect_std(int(p), mats)[0]
        from .heisenberg import build_heisenberg_cover

        return build_heisenberg_cover(int(p), mats).total
    if name == "V4":
        return build_v4()
    if name == "A4":
        return build_a4()
    if name == "Q8-cover":
        return build_q8_cover().total
    if name == "Cm":
        return build_cyclic(int(params.get("m", p or 1)))
    raise UnknownConstruction(f"unknown construction {name!r}; known: {', '.join(NAMED_CONSTRUCTIONS)}")
