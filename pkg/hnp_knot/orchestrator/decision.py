"""Decision procedures for the Hasse norm principle in degree p^2.

``KnotDecider`` runs the structural classifier (condition (*) plus the
decomposition-group test) and, on request, the cohomology engine, and refuses
to report when the two disagree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from ..cohomology.sha import DecompositionSet, sha2_chevalley, sha_omega
from ..errors import BadParameter, MethodDisagreement, NotStabilizer, NotTransitive
from ..groups.matrices import MatGL2
from ..groups.permgroup import (
    Perm,
    PermGroup,
    close,
    intersection,
    is_normal,
    is_transitive,
    subgroups_elementary_abelian,
    sylow_p,
)
from ..groups.zoo import sylow_shape
from ..linalg.zmod import AbelianInvariants, quotient_invariants
from ..schemas.models import DecompositionEcho, KnotReport, StarWitnessModel

METHODS = ("classifier", "cohomology")


@dataclass(frozen=True)
class StarWitness:
    """A regular normal ``(C_p)^2`` complementing ``H`` and the matrices of ``H`` acting on it."""

    normal_subgroup: PermGroup
    basis: Tuple[Perm, Perm]
    matrices: Tuple[MatGL2, ...]
    determinants: Tuple[int, ...]

    @property
    def holds(self) -> bool:
        return all(d == 1 for d in self.determinants)

    def to_model(self) -> StarWitnessModel:
        return StarWitnessModel(
            normal_subgroup=[list(g.images) for g in self.basis],
            matrices=[m.as_rows() for m in self.matrices],
            determinants=list(self.determinants),
        )


def degree_prime(G: PermGroup) -> int:
    p = isqrt(G.degree)
    if p * p != G.degree or p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
        raise BadParameter(f"degree {G.degree} is not the square of a prime")
    return p


def stabilized_point(G: PermGroup, H: PermGroup) -> int:
    """The point whose stabilizer is ``H``."""
    if not is_transitive(G):
        raise NotTransitive(f"group of order {G.order} is not transitive on {G.degree} points")
    if G.order != H.order * G.degree or not H.is_subgroup_of(G):
        raise NotStabilizer("H has the wrong order to be a point stabilizer")
    for point in range(G.degree):
        if all(h(point) == point for h in H.generators):
            return point
    raise NotStabilizer("H fixes no point")


def _action_matrix(h: Perm, basis: Tuple[Perm, Perm], coords: Dict[Perm, Tuple[int, int]], p: int) -> MatGL2:
    h_inv = h.inverse()
    a, b = coords[h * basis[0] * h_inv]
    c, d = coords[h * basis[1] * h_inv]
    return MatGL2(a, b, c, d, p)


def _witness_for(N: PermGroup, H: PermGroup, p: int) -> StarWitness:
    b1 = next(x for x in N if not x.is_identity())
    line = close([b1], N.degree)
    b2 = next(x for x in N if x not in line)
    coords = {(b1 ** i) * (b2 ** j): (i, j) for i in range(p) for j in range(p)}
    mats = tuple(_action_matrix(h, (b1, b2), coords, p) for h in H.generators)
    return StarWitness(N, (b1, b2), mats, tuple(m.det for m in mats))


def star_candidates(G: PermGroup, H: PermGroup, p: int) -> List[StarWitness]:
    """Every normal ``(C_p)^2`` meeting ``H`` trivially, with its determinant data."""
    found = []
    for N in subgroups_elementary_abelian(G, p, 2):
        if is_normal(N, G) and intersection(N, H).is_trivial():
            found.append(_witness_for(N, H, p))
    return found


def degree_four_exception(G: PermGroup) -> bool:
    """Degree 4: the Klein four-group and the alternating group carry the obstruction."""
    if G.degree != 4 or G.order not in (4, 12):
        return False
    if G.order == 4:
        return all((g ** 2).is_identity() for g in G)
    return all(g.order() in (1, 2, 3) for g in G)


class KnotDecider:
    """Decides the Hasse norm principle for a transitive group of degree ``p^2``."""

    def __init__(
        self,
        *,
        methods: Sequence[str] = METHODS,
        fast_p_part: bool = True,
        sylow_reduction: bool = True,
        cross_check: bool = False,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        unknown = set(methods) - set(METHODS)
        if unknown or not methods:
            raise BadParameter(f"methods must be chosen from {METHODS}, got {list(methods)}")
        self.methods = tuple(m for m in METHODS if m in methods)
        self.sha_options = {
            "fast_p_part": fast_p_part,
            "sylow_reduction": sylow_reduction,
            "cross_check": cross_check,
        }
        self.logger = logger or logging.getLogger(self.__class__.__name__)

    def with_methods(self, methods: Sequence[str]) -> "KnotDecider":
        """A decider with the same engine options and another method selection."""
        return KnotDecider(methods=methods, logger=self.logger, **self.sha_options)

    def check_condition_star(self, G: PermGroup, H: PermGroup) -> Optional[StarWitness]:
        stabilized_point(G, H)
        p = degree_prime(G)
        candidates = star_candidates(G, H, p)
        self.logger.debug(f"condition (*) for order {G.order}: {len(candidates)} candidate subgroups")
        return next((w for w in candidates if w.holds), None)

    def _classify(self, G: PermGroup, H: PermGroup, D: DecompositionSet, p: int) -> Tuple[AbelianInvariants, Optional[StarWitness]]:
        if p == 2:
            if degree_four_exception(G) and not D.contains_elementary_abelian(2):
                return AbelianInvariants.of([2]), None
            return AbelianInvariants(), None
        witness = self.check_condition_star(G, H)
        if witness is None or D.contains_elementary_abelian(p):
            return AbelianInvariants(), witness
        return AbelianInvariants.of([p]), witness

    def decide_hnp(self, G: PermGroup, H: PermGroup, D: DecompositionSet) -> KnotReport:
        stabilized_point(G, H)
        p = degree_prime(G)
        classified: Optional[AbelianInvariants] = None
        witness: Optional[StarWitness] = None
        computed: Optional[AbelianInvariants] = None
        defect: Optional[List[int]] = None
        if "classifier" in self.methods:
            classified, witness = self._classify(G, H, D, p)
        if "cohomology" in self.methods:
            sha_d = sha2_chevalley(G, H, D, **self.sha_options)
            computed = sha_d.invariants
            if D.non_cyclic():
                sha_w = sha_omega(G, H, **self.sha_options)
                defect = quotient_invariants(sha_w.numerator, sha_d.numerator).as_list()
        if classified is not None and computed is not None and classified != computed:
            self.logger.error(
                f"classifier says {classified.as_list()} but cohomology says {computed.as_list()} "
                f"for a group of order {G.order}"
            )
            raise MethodDisagreement("classifier and cohomology engine disagree")
        invariants = computed if computed is not None else classified
        method = "both" if len(self.methods) == 2 else self.methods[0]
        report = KnotReport(
            question="hnp",
            p=p,
            degree=G.degree,
            group_order=G.order,
            stabilizer_order=H.order,
            sylow_shape=list(sylow_shape(G, p)),
            star=witness.to_model() if witness is not None else None,
            sha_invariants=invariants.as_list(),
            decision=_decision(invariants),
            method=method,
            decomposition=_echo(D, p),
            weak_approximation_defect=defect,
        )
        self.logger.info(f"order {G.order}, |H| = {H.order}: {report.decision} via {method}")
        return report

    def decide_h1pic(self, G: PermGroup, H: PermGroup) -> KnotReport:
        """``H^1(k, Pic)`` is ``Z/p`` exactly when condition (*) holds."""
        stabilized_point(G, H)
        p = degree_prime(G)
        if p == 2:
            invariants = AbelianInvariants.of([2]) if degree_four_exception(G) else AbelianInvariants()
            witness = None
        else:
            witness = self.check_condition_star(G, H)
            invariants = AbelianInvariants.of([p]) if witness is not None else AbelianInvariants()
        if "cohomology" in self.methods:
            computed = sha_omega(G, H, **self.sha_options).invariants
            if computed != invariants:
                self.logger.error(f"H1(Pic) classifier {invariants.as_list()} vs Sha_omega {computed.as_list()}")
                raise MethodDisagreement("condition (*) and Sha_omega disagree")
        return KnotReport(
            question="h1pic",
            p=p,
            degree=G.degree,
            group_order=G.order,
            stabilizer_order=H.order,
            sylow_shape=list(sylow_shape(G, p)),
            star=witness.to_model() if witness is not None else None,
            sha_invariants=invariants.as_list(),
            decision=_decision(invariants),
            method="both" if len(self.methods) == 2 else self.methods[0],
        )

    def adequacy_criterion(self, G: PermGroup, H: PermGroup, D: DecompositionSet) -> bool:
        """Whether some ``D`` gives ``P = (P n D)(P n H)`` for a p-Sylow ``P``."""
        stabilized_point(G, H)
        p = degree_prime(G)
        P = sylow_p(G, p)
        PH = intersection(P, H)
        adequate = False
        for member in D:
            PD = intersection(P, member)
            if PD.order * PH.order // intersection(PD, PH).order == P.order:
                adequate = True
                break
        if adequate and p != 2:
            classified, witness = self._classify(G, H, D, p)
            if witness is not None and not classified.is_trivial:
                self.logger.error(f"adequate decomposition data but decision {classified.as_list()}")
                raise MethodDisagreement("adequate extension with a nontrivial knot group")
        return adequate


def _decision(invariants: AbelianInvariants) -> str:
    if invariants.is_trivial:
        return "trivial"
    return " x ".join(f"Z/{d}" for d in invariants.as_list())


def _echo(D: DecompositionSet, p: int) -> DecompositionEcho:
    return DecompositionEcho(
        supplied=len(D.supplied),
        closure_size=len(D),
        added_by_closure=max(D.added, 0),
        non_cyclic_orders=sorted(C.order for C in D.non_cyclic()),
        contains_elementary_abelian=D.contains_elementary_abelian(p),
    )
