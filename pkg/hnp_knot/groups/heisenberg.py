"""The Heisenberg group P'_2 of order p^3, its center-fixing automorphisms and
the central extension ``P'_2 x| G -> (C_p)^2 x| G`` for ``G <= SL2(F_p)``.

Elements of P'_2 are kept in the normal form ``delta1^y delta2^x1 rho2^x2`` and
indexed by ``y + p*x1 + p^2*x2``. Modulo the center the element has plane
coordinates ``(x1, x2)``.

Automorphisms compose left to right: ``(f * g)(x) == g(f(x))``. With this
product the lift ``SL2(F_p) -> Aut(P'_2)`` is a homomorphism for the matrix
action ``(x, y) -> (a x + c y, b x + d y)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import BadParameter, NoLiftFound, PreconditionViolated
from .matrices import MatGL2, matrix_group, sl2_elements, sl2_generators, translation
from .permgroup import GroupHom, Perm, close
from .zoo import CentralExtension, build_semidirect_std, gen_delta, gen_rho2

logger = logging.getLogger(__name__)


class HeisenbergModel:
    """P'_2 realized on its ``p^3`` normal-form indices."""

    def __init__(self, p: int) -> None:
        if p < 3:
            raise BadParameter(f"the Heisenberg model needs an odd prime, got {p}")
        self.p = p
        self.order = p ** 3
        d1, d2, r2 = gen_delta(1, p), gen_delta(2, p), gen_rho2(p)
        self.elements: List[Perm] = []
        for x2 in range(p):
            for x1 in range(p):
                for y in range(p):
                    self.elements.append((d1 ** y) * (d2 ** x1) * (r2 ** x2))
        self.index: Dict[Perm, int] = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != self.order:
            raise ArithmeticError("normal forms of P'_2 are not distinct")
        self.identity = self.element(0, 0, 0)
        self.delta1 = self.element(1, 0, 0)
        self.delta2 = self.element(0, 1, 0)
        self.rho2 = self.element(0, 0, 1)
        self._right: Dict[int, Tuple[int, ...]] = {}

    def element(self, y: int, x1: int, x2: int) -> int:
        p = self.p
        return y % p + p * (x1 % p) + p * p * (x2 % p)

    def coords(self, idx: int) -> Tuple[int, int, int]:
        p = self.p
        return idx % p, (idx // p) % p, idx // (p * p)

    def plane(self, idx: int) -> Tuple[int, int]:
        _, x1, x2 = self.coords(idx)
        return x1, x2

    def mul(self, i: int, j: int) -> int:
        return self.right_table(j)[i]

    def right_table(self, j: int) -> Tuple[int, ...]:
        """``x -> x * e_j`` for every index ``x``."""
        table = self._right.get(j)
        if table is None:
            e = self.elements[j]
            table = tuple(self.index[g * e] for g in self.elements)
            self._right[j] = table
        return table

    def left_perm(self, j: int) -> Perm:
        """Left multiplication by ``e_j`` as a permutation of the indices."""
        e = self.elements[j]
        return Perm(self.index[e * g] for g in self.elements)


@lru_cache(maxsize=None)
def heisenberg_model(p: int) -> HeisenbergModel:
    return HeisenbergModel(p)


@dataclass(frozen=True)
class AutMap:
    """A bijection of the index set of P'_2 respecting multiplication."""

    images: Tuple[int, ...]

    def __call__(self, idx: int) -> int:
        return self.images[idx]

    def __mul__(self, other: "AutMap") -> "AutMap":
        return AutMap(tuple(other.images[i] for i in self.images))

    @classmethod
    def identity(cls, order: int) -> "AutMap":
        return cls(tuple(range(order)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def as_perm(self) -> Perm:
        return Perm(self.images)

    def plane_matrix(self, model: HeisenbergModel) -> Tuple[int, int, int, int]:
        """``(a, b, c, d)`` with ``delta2 -> (a, b)`` and ``rho2 -> (c, d)`` modulo the center."""
        a, b = model.plane(self.images[model.delta2])
        c, d = model.plane(self.images[model.rho2])
        return a, b, c, d

    def is_homomorphism(self, model: HeisenbergModel) -> bool:
        for s in (model.delta1, model.delta2, model.rho2):
            right = model.right_table(s)
            fs = self.images[s]
            image_right = model.right_table(fs)
            if any(self.images[right[x]] != image_right[self.images[x]] for x in range(model.order)):
                return False
        return len(set(self.images)) == model.order


def extend_generators(model: HeisenbergModel, delta2_image: int, rho2_image: int) -> Optional[AutMap]:
    """The automorphism sending ``delta2`` and ``rho2`` to the given elements, if one exists."""
    pairs = [(model.delta2, delta2_image), (model.rho2, rho2_image)]
    table = {model.identity: model.identity}
    frontier = [model.identity]
    while frontier:
        fresh = []
        for x in frontier:
            fx = table[x]
            for s, fs in pairs:
                y = model.right_table(s)[x]
                fy = model.right_table(fs)[fx]
                known = table.get(y)
                if known is None:
                    table[y] = fy
                    fresh.append(y)
                elif known != fy:
                    return None
        frontier = fresh
    if len(table) != model.order or len(set(table.values())) != model.order:
        return None
    return AutMap(tuple(table[i] for i in range(model.order)))


def closed_form_candidate(model: HeisenbergModel, g: MatGL2) -> Optional[AutMap]:
    """The map ``delta1^y delta2^x1 rho2^x2 -> delta1^y delta2^(a x1 + c x2) rho2^(b x1 + x2)``,
    kept only when it is an automorphism inducing ``g`` on the plane."""
    images = []
    for idx in range(model.order):
        y, x1, x2 = model.coords(idx)
        images.append(model.element(y, g.a * x1 + g.c * x2, g.b * x1 + x2))
    candidate = AutMap(tuple(images))
    if not candidate.is_homomorphism(model):
        return None
    if candidate.plane_matrix(model) != (g.a, g.b, g.c, g.d):
        return None
    return candidate


def _plane_lifts(model: HeisenbergModel, g: MatGL2) -> Iterator[AutMap]:
    p = model.p
    for yu in range(p):
        for yv in range(p):
            f = extend_generators(model, model.element(yu, g.a, g.b), model.element(yv, g.c, g.d))
            if f is not None:
                yield f


def center_fixing_lifts(p: int, g: MatGL2) -> List[AutMap]:
    """Every automorphism of P'_2 fixing the center pointwise and inducing ``g`` on the plane."""
    model = heisenberg_model(p)
    return [f for f in _plane_lifts(model, g) if f(model.delta1) == model.delta1]


def _candidates(model: HeisenbergModel, g: MatGL2) -> List[AutMap]:
    lifts = [f for f in _plane_lifts(model, g) if f(model.delta1) == model.delta1]
    closed = closed_form_candidate(model, g)
    if closed is not None and closed(model.delta1) == model.delta1:
        lifts = [closed] + [f for f in lifts if f != closed]
    else:
        logger.debug(f"closed-form lift rejected for {g.as_rows()}; searching {len(lifts)} lifts")
    return lifts


def _generate_section(
    model: HeisenbergModel, assignment: Sequence[Tuple[MatGL2, AutMap]], limit: int
) -> Optional[Dict[MatGL2, AutMap]]:
    ident = MatGL2.identity(model.p)
    table = {ident: AutMap.identity(model.order)}
    frontier = [ident]
    while frontier:
        fresh = []
        for m in frontier:
            f = table[m]
            for s, fs in assignment:
                y = m * s
                fy = f * fs
                known = table.get(y)
                if known is None:
                    if len(table) >= limit:
                        return None
                    table[y] = fy
                    fresh.append(y)
                elif known != fy:
                    return None
        frontier = fresh
    return table


@lru_cache(maxsize=None)
def lift_table(p: int) -> Dict[MatGL2, AutMap]:
    """A homomorphic section ``SL2(F_p) -> Aut(P'_2)`` fixing the center."""
    model = heisenberg_model(p)
    S, T = sl2_generators(p)
    limit = len(sl2_elements(p))
    s_lifts, t_lifts = _candidates(model, S), _candidates(model, T)
    tried = 0
    for fs in s_lifts:
        for ft in t_lifts:
            tried += 1
            table = _generate_section(model, [(S, fs), (T, ft)], limit)
            if table is not None and len(table) == limit:
                logger.debug(f"section of SL2(F_{p}) found after {tried} generator lift pairs")
                return table
    raise NoLiftFound(f"no homomorphic lift of SL2(F_{p}) after {tried} pairs")


def winter_lift(p: int, g: MatGL2) -> AutMap:
    if g.p != p:
        raise BadParameter(f"matrix over F_{g.p} given for p = {p}")
    if not g.is_special():
        raise BadParameter(f"matrix {g.as_rows()} has determinant {g.det}, expected 1")
    return lift_table(p)[g]


def build_heisenberg_cover(p: int, matgens: Sequence[MatGL2]) -> CentralExtension:
    """``P'_2 x| G`` acting on P'_2, mapped onto ``(C_p)^2 x| G`` with kernel the center of P'_2.

    The flag is ``"proved"`` when ``matgens`` generate all of SL2(F_p). Any other
    cover comes back ``"unverified"``, which is provisional: pass it through
    ``cohomology.drakokhrust.representation_flag`` to upgrade it to
    ``"oracle-verified"`` when the Schur multiplier oracle applies.
    """
    for m in matgens:
        if m.p != p or not m.is_special():
            raise PreconditionViolated(f"matrix {m.as_rows()} is not in SL2(F_{p})")
    model = heisenberg_model(p)
    degree = model.order
    image_of: Dict[Perm, Perm] = {
        model.left_perm(model.delta1): Perm.identity(p * p),
        model.left_perm(model.delta2): translation(p, 1, 0),
        model.left_perm(model.rho2): translation(p, 0, 1),
    }
    for m in matgens:
        image_of[winter_lift(p, m).as_perm()] = m.as_perm()
    total = close(list(image_of), degree)
    base, _ = build_semidirect_std(p, matgens)
    projection = GroupHom(total, base, [image_of[g] for g in total.generators])
    kernel = close([model.left_perm(model.delta1)], degree)
    full = bool(matgens) and len(matrix_group(matgens)) == len(sl2_elements(p))
    logger.debug(f"heisenberg cover for p={p}: total order {total.order}, base order {base.order}")
    return CentralExtension(total, kernel, projection, flag="proved" if full else "unverified")
