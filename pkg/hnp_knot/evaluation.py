"""Verification suites: known values and internal consistency checks.

Each suite is a list of cases with an expected and a computed value; the
result is a ``pandas.DataFrame`` with one row per case. ``run.py verify``
prints the table and exits nonzero when any row fails.
"""

from __future__ import annotations

import argparse
import logging
import random
import time
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import pandas as pd

from .cohomology.cocycles import h1_finite, h2_cyclic_tate, h2_finite, h2_lattice, conjugation_invariants
from .cohomology.characters import s2_character, selmer_order_identity
from .cohomology.drakokhrust import drakokhrust_sha, representation_flag, schur_multiplier_small
from .cohomology.lattice import (
    chevalley_lattice,
    dual,
    induce_lattice,
    induced_lattice,
    inflate_lattice,
    standard_rep_mod_p,
    trivial_lattice,
)
from .cohomology.sha import DecompositionSet, sha2, sha2_chevalley, sha_omega
from .errors import KnotError
from .groups.heisenberg import build_heisenberg_cover
from .groups.matrices import gl2_generators, linear_perm_group, parse_matrices, sl2_generators, translation
from .groups.permgroup import (
    Perm,
    PermGroup,
    close,
    cyclic_subgroups,
    derived_subgroup,
    intersection,
    point_stabilizer,
    sylow_p,
    trivial_group,
)
from .groups.zoo import (
    SL2_F3_CLASSES,
    build_a4,
    build_cyclic,
    build_E,
    build_H,
    build_H_tilde,
    build_P,
    build_pi,
    build_Pprime,
    build_q8_cover,
    build_semidirect_std,
    build_v4,
    identity_suite,
    trivial_extension,
)
from .linalg.zmod import AbelianInvariants
from .orchestrator.decision import KnotDecider
from .schemas.models import RunConfig, VerifyRow

logger = logging.getLogger(__name__)

SUITES = ("p3-classification", "p3-pgroups", "oracles", "drakokhrust", "p5-stretch")

# generators of G-dagger with a matrix of determinant -1
NON_SPECIAL_MATS: Dict[str, List[List[List[int]]]] = {
    "diag(-1,1)": [[[2, 0], [0, 1]]],
    "borel": [[[1, 1], [0, 1]], [[2, 0], [0, 1]]],
    "gl2": [],
}


def _fmt(invariants: AbelianInvariants) -> str:
    return str(invariants.as_list())


def _case(suite: str, case: str, expected: str, compute: Callable[[], object]) -> VerifyRow:
    start = time.perf_counter()
    try:
        computed = str(compute())
    except KnotError as exc:
        logger.error(f"{suite}/{case} raised {exc.__class__.__name__}: {exc}")
        computed = f"error: {exc.__class__.__name__}"
    except Exception as exc:
        logger.exception(f"{suite}/{case} failed unexpectedly")
        computed = f"internal error: {exc.__class__.__name__}"
    seconds = time.perf_counter() - start
    passed = computed == expected
    logger.info(f"{suite}/{case}: expected {expected}, computed {computed} ({seconds:.2f}s)")
    return VerifyRow(suite=suite, case=case, expected=expected, computed=computed, passed=passed, seconds=round(seconds, 3))


def star_group(order: int) -> Tuple[PermGroup, PermGroup]:
    """``(C_3)^2 x| G-dagger`` for the listed subgroup of SL2(F_3) of the given order."""
    return build_semidirect_std(3, parse_matrices(SL2_F3_CLASSES[order], 3))


def _non_special_group(name: str) -> Tuple[PermGroup, PermGroup]:
    mats = gl2_generators(3) if name == "gl2" else parse_matrices(NON_SPECIAL_MATS[name], 3)
    return build_semidirect_std(3, mats)


def _stabilized(G: PermGroup) -> Tuple[PermGroup, PermGroup]:
    return G, point_stabilizer(G, 0)


def _translations(p: int) -> PermGroup:
    return close([translation(p, 1, 0), translation(p, 0, 1)], p * p)


# -- p3-classification ------------------------------------------------------


def _sample_adequate(G: PermGroup, H: PermGroup, rng: random.Random) -> PermGroup:
    """A random subgroup ``D`` with ``P = (P n D)(P n H)`` for the 3-Sylow ``P``."""
    P = sylow_p(G, 3)
    PH = intersection(P, H)
    elements = list(G)
    for _ in range(20):
        D = close(rng.sample(elements, 2), G.degree)
        PD = intersection(P, D)
        if PD.order * PH.order // intersection(PD, PH).order == P.order:
            return D
    # a translation together with random extras is always adequate
    return close(list(_translations(3).generators) + [rng.choice(elements)], G.degree)


def _adequacy_sweep(samples: int, seed: int) -> str:
    rng = random.Random(seed)
    decider = KnotDecider(methods=("classifier",))
    orders = sorted(SL2_F3_CLASSES)
    groups = {order: star_group(order) for order in orders}
    trivial = 0
    for _ in range(samples):
        G, H = groups[rng.choice(orders)]
        D = DecompositionSet.build(G, [_sample_adequate(G, H, rng)])
        if decider.adequacy_criterion(G, H, D) and decider.decide_hnp(G, H, D).is_trivial:
            trivial += 1
    return f"{trivial}/{samples}"


def suite_p3_classification(config: RunConfig) -> List[VerifyRow]:
    suite = "p3-classification"
    decider = KnotDecider(**_engine_options(config))
    rows = []
    for order in sorted(SL2_F3_CLASSES):
        def compute(order=order):
            G, H = star_group(order)
            return decider.decide_hnp(G, H, DecompositionSet.cyclic(G)).sha_invariants
        rows.append(_case(suite, f"star-{order}", "[3]", compute))
    for name in NON_SPECIAL_MATS:
        def compute(name=name):
            G, H = _non_special_group(name)
            return decider.decide_hnp(G, H, DecompositionSet.cyclic(G)).sha_invariants
        rows.append(_case(suite, f"non-special-{name}", "[]", compute))

    def with_translations(G: PermGroup, H: PermGroup) -> List[int]:
        D = DecompositionSet.build(G, [_translations(3)])
        return decider.decide_hnp(G, H, D).sha_invariants

    rows.append(_case(suite, "P'1-translations-decomposed", "[]", lambda: with_translations(*_stabilized(build_Pprime(1, 3)))))
    rows.append(_case(suite, "star-24-translations-decomposed", "[]", lambda: with_translations(*star_group(24))))
    samples = config.adequacy_samples
    rows.append(_case(suite, "adequate-samples", f"{samples}/{samples}", lambda: _adequacy_sweep(samples, config.seed)))
    return rows


# -- p3-pgroups -------------------------------------------------------------


def _prop_s2_expected(n: int, p: int) -> int:
    E, H = build_E(n, p), build_H(n, p)
    return E.order // intersection(H, build_E(n - 1, p)).order


def _tilde_s2_expected(n: int, p: int) -> int:
    E = build_E(p, p)
    if n < p:
        return E.order // build_E(p - n - 1, p).order
    return E.order // intersection(build_H_tilde(n, p), build_E(p - 1, p)).order


def _identity_product(G: PermGroup, H: PermGroup, E: PermGroup) -> str:
    D = DecompositionSet.cyclic(G)
    s2, abelian_part, stabilizer_part = selmer_order_identity(G, H, E, D)
    sha = sha2_chevalley(G, H, D)
    return f"{s2} = {abelian_part * stabilizer_part * sha.order}"


def suite_p3_pgroups(config: RunConfig) -> List[VerifyRow]:
    suite, p = "p3-pgroups", 3
    options = _engine_options(config)
    options.pop("methods")
    rows = []
    families = [("P'1", build_Pprime(1, p), "[3]"), ("P'2", build_Pprime(2, p), "[3]"),
                ("C9", build_P(1, p), "[]"), ("P2", build_P(2, p), "[]"), ("P3", build_P(3, p), "[]")]
    for name, G, expected in families:
        rows.append(_case(suite, f"sha-omega-{name}", expected,
                          lambda G=G: _fmt(sha_omega(G, point_stabilizer(G, 0), **options).invariants)))
    for n in (1, 2, 3):
        G, H, E = build_P(n, p), build_H(n, p), build_E(n, p)
        rows.append(_case(suite, f"s2-P{n}", str(_prop_s2_expected(n, p)),
                          lambda G=G, H=H, E=E: s2_character(G, H, E, DecompositionSet.cyclic(G)).order))
    P3, E3 = build_P(p, p), build_E(p, p)
    for n in (1, 2, 3):
        H = build_H_tilde(n, p)
        rows.append(_case(suite, f"s2-P3-tilde-H{n}", str(_tilde_s2_expected(n, p)),
                          lambda H=H: s2_character(P3, H, E3, DecompositionSet.cyclic(P3)).order))

    def with_maximal() -> int:
        D = DecompositionSet.build(P3, [E3])
        return s2_character(P3, build_H_tilde(2, p), E3, D).order

    rows.append(_case(suite, "s2-P3-tilde-H2-maximal-decomposed", str(E3.order // 3), with_maximal))
    for n in (1, 2, 3):
        G, H, E = build_P(n, p), build_H(n, p), build_E(n, p)
        s2 = _prop_s2_expected(n, p)
        rows.append(_case(suite, f"order-identity-P{n}", f"{s2} = {s2}", lambda G=G, H=H, E=E: _identity_product(G, H, E)))
    for n in (1, 2):
        s2 = _tilde_s2_expected(n, p)
        rows.append(_case(suite, f"order-identity-P3-tilde-H{n}", f"{s2} = {s2}",
                          lambda n=n: _identity_product(P3, build_H_tilde(n, p), E3)))
    return rows


# -- oracles ----------------------------------------------------------------


def _lattices(G: PermGroup, H: PermGroup):
    return [trivial_lattice(G), induced_lattice(G, H), chevalley_lattice(G, H)]


def _tate_mismatches(G: PermGroup, H: PermGroup) -> int:
    bad = 0
    for M in _lattices(G, H):
        for C in cyclic_subgroups(G):
            if h2_lattice(C, M).invariants != h2_cyclic_tate(C, M):
                logger.error(f"Tate mismatch on {M.name} for a cyclic subgroup of order {C.order}")
                bad += 1
    return bad


def _small_pairs() -> List[Tuple[str, PermGroup, PermGroup]]:
    pairs = [
        ("P'1", *_stabilized(build_Pprime(1, 3))),
        ("P'2", *_stabilized(build_Pprime(2, 3))),
        ("P2", *_stabilized(build_P(2, 3))),
        ("V4", *_stabilized(build_v4())),
        ("A4", *_stabilized(build_a4())),
    ]
    pairs += [(f"star-{order}", *star_group(order)) for order in (2, 4, 8)]
    pairs.append(("non-special-diag(-1,1)", *_non_special_group("diag(-1,1)")))
    return pairs


def _prime_index_pairs() -> List[Tuple[str, PermGroup, PermGroup]]:
    C9 = build_P(1, 3)
    tau = next(g for g in C9 if g.order() == 9)
    V4 = build_v4()
    return [
        ("P'2/E2", build_Pprime(2, 3), build_E(2, 3)),
        ("C9/C3", C9, close([tau ** 3], 9)),
        ("V4/C2", V4, close([V4.generators[0]], 4)),
        ("A4/V4", build_a4(), close(list(V4.generators), 4)),
        ("C5/1", build_cyclic(5), trivial_group(5)),
    ]


def _bell_vanishing() -> str:
    L = linear_perm_group(sl2_generators(3), 3)
    V = standard_rep_mod_p(L, 3)
    orders = [h1_finite(L, V).order, h2_finite(L, V, cap=24).order,
              h1_finite(L, dual(V)).order, h2_finite(L, dual(V), cap=24).order]
    return ",".join(str(o) for o in orders)


def _multiplier_invariants(G: PermGroup, H: PermGroup) -> str:
    N = _translations(3)
    return _fmt(conjugation_invariants(N, G, chevalley_lattice(G, H)))


def _inflation_pair(n: int, p: int = 3) -> str:
    pi = build_pi(n, p)
    target = pi.target
    H = point_stabilizer(target, 0)
    inflated = inflate_lattice(chevalley_lattice(target, H), pi)
    upstairs = sha2(pi.source, inflated, DecompositionSet.cyclic(pi.source))
    downstairs = sha_omega(target, H)
    return f"{_fmt(upstairs.invariants)} = {_fmt(downstairs.invariants)}"


def _shapiro_pair(G: PermGroup, H: PermGroup) -> str:
    J = chevalley_lattice(H, trivial_group(H.degree))
    upstairs = sha2(G, induce_lattice(G, J), DecompositionSet.cyclic(G))
    downstairs = sha2(H, J, DecompositionSet.cyclic(H))
    return f"{_fmt(upstairs.invariants)} = {_fmt(downstairs.invariants)}"


def _sylow_divides(G: PermGroup, H: PermGroup) -> bool:
    P = sylow_p(G, 3)
    whole = sha_omega(G, H)
    local = sha2(P, chevalley_lattice(G, H).restrict(P), DecompositionSet.cyclic(P))
    return local.order % whole.order == 0


def suite_oracles(config: RunConfig) -> List[VerifyRow]:
    suite = "oracles"
    rows = []
    for name, G, H in _small_pairs():
        rows.append(_case(suite, f"tate-{name}", "0", lambda G=G, H=H: _tate_mismatches(G, H)))
    for name, G, H in _small_pairs():
        index = G.order // H.order
        rows.append(_case(suite, f"annihilation-{name}", "True",
                          lambda G=G, H=H, index=index: index % sha_omega(G, H).invariants.exponent == 0))
    for name, G, H in _prime_index_pairs():
        rows.append(_case(suite, f"prime-index-{name}", "[]", lambda G=G, H=H: _fmt(sha_omega(G, H).invariants)))
    for name, G, H in _prime_index_pairs()[:4] + [("star-8", *star_group(8))]:
        abelianized = H.order // derived_subgroup(H).order
        rows.append(_case(suite, f"induced-h2-order-{name}", str(abelianized),
                          lambda G=G, H=H: h2_lattice(G, induced_lattice(G, H)).order))
    V4 = build_v4()
    rows.append(_case(suite, "shapiro-A4-V4", "[2] = [2]", lambda: _shapiro_pair(build_a4(), close(list(V4.generators), 4))))
    rows.append(_case(suite, "shapiro-P'2-E2", "[3] = [3]", lambda: _shapiro_pair(build_Pprime(2, 3), build_E(2, 3))))
    for n in (1, 2):
        rows.append(_case(suite, f"inflation-pi{n}", "[3] = [3]", lambda n=n: _inflation_pair(n)))
    for name, G, H in _small_pairs():
        if G.degree == 9:
            rows.append(_case(suite, f"sylow-divisibility-{name}", "True", lambda G=G, H=H: _sylow_divides(G, H)))
    for p in (3, 5):
        rows.append(_case(suite, f"identity-suite-p{p}", "True", lambda p=p: all(identity_suite(p).values())))
    rows.append(_case(suite, "sl2-cohomology-of-V", "1,1,1,1", _bell_vanishing))
    for order in (2, 8, 24):
        rows.append(_case(suite, f"multiplier-invariants-star-{order}", "[3]",
                          lambda order=order: _multiplier_invariants(*star_group(order))))
    for name in NON_SPECIAL_MATS:
        rows.append(_case(suite, f"multiplier-invariants-non-special-{name}", "[]",
                          lambda name=name: _multiplier_invariants(*_non_special_group(name))))
    V4_pair = _stabilized(V4)
    rows.append(_case(suite, "p2-V4", "[2]", lambda: _fmt(sha_omega(*V4_pair).invariants)))
    rows.append(_case(suite, "p2-A4", "[2]", lambda: _fmt(sha_omega(*_stabilized(build_a4())).invariants)))
    rows.append(_case(suite, "p2-C4", "[]", lambda: _fmt(sha_omega(*_stabilized(build_cyclic(4))).invariants)))
    rows.append(_case(suite, "p2-V4-self-decomposed", "[]",
                      lambda: _fmt(sha2_chevalley(V4_pair[0], V4_pair[1], DecompositionSet.build(V4, [V4])).invariants)))
    for name, G, expected in [("C9", build_P(1, 3), "[]"), ("V4", V4, "[2]"), ("A4", build_a4(), "[2]"), ("P2", build_P(2, 3), "[]")]:
        rows.append(_case(suite, f"schur-{name}", expected, lambda G=G: _fmt(schur_multiplier_small(G, config.schur_cap))))
    return rows


# -- drakokhrust ------------------------------------------------------------


def _cover_sha(p: int) -> str:
    ext = build_heisenberg_cover(p, sl2_generators(p))
    return _fmt(drakokhrust_sha(ext, point_stabilizer(ext.base, 0)))


def suite_drakokhrust(config: RunConfig) -> List[VerifyRow]:
    suite = "drakokhrust"
    rows = [_case(suite, "heisenberg-cover-p3", "[3]", lambda: _cover_sha(3))]
    rows.append(_case(suite, "heisenberg-cover-p3-flag", "proved",
                      lambda: representation_flag(build_heisenberg_cover(3, sl2_generators(3)), config.schur_cap)))
    rows.append(_case(suite, "q8-cover", "[2]", lambda: _fmt(drakokhrust_sha(build_q8_cover(), trivial_group(4)))))
    rows.append(_case(suite, "q8-cover-flag", "oracle-verified",
                      lambda: representation_flag(build_q8_cover(), config.schur_cap)))
    rows.append(_case(suite, "q8-cover-vs-direct", "[2]", lambda: _fmt(sha_omega(*_stabilized(build_v4())).invariants)))
    for m in (3, 5, 9):
        rows.append(_case(suite, f"cyclic-{m}", "[]",
                          lambda m=m: _fmt(drakokhrust_sha(trivial_extension(build_cyclic(m)), trivial_group(m)))))
    return rows


# -- p5-stretch -------------------------------------------------------------


def suite_p5_stretch(config: RunConfig) -> List[VerifyRow]:
    suite = "p5-stretch"
    return [
        _case(suite, "identity-suite-p5", "True", lambda: all(identity_suite(5).values())),
        _case(suite, "heisenberg-cover-p5", "[5]", lambda: _cover_sha(5)),
    ]


_SUITE_FUNCTIONS: Dict[str, Callable[[RunConfig], List[VerifyRow]]] = {
    "p3-classification": suite_p3_classification,
    "p3-pgroups": suite_p3_pgroups,
    "oracles": suite_oracles,
    "drakokhrust": suite_drakokhrust,
    "p5-stretch": suite_p5_stretch,
}


def _engine_options(config: RunConfig) -> Dict[str, object]:
    return {
        "methods": tuple(config.methods),
        "fast_p_part": config.fast_p_part,
        "sylow_reduction": config.sylow_reduction,
        "cross_check": config.cross_check_fast_path,
    }


def rows_to_frame(rows: Iterable[VerifyRow]) -> pd.DataFrame:
    columns = list(VerifyRow.model_fields)
    return pd.DataFrame([row.model_dump() for row in rows], columns=columns)


def run_suite(name: str, config: RunConfig) -> pd.DataFrame:
    """Run one suite and return its table."""
    if name not in _SUITE_FUNCTIONS:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    frame = rows_to_frame(_SUITE_FUNCTIONS[name](config))
    passed = int(frame["passed"].sum())
    logger.info(f"suite {name}: {passed}/{len(frame)} cases passed")
    return frame


def main(args: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Run a verification suite of the knot engine")
    parser.add_argument("suite", choices=SUITES, help="Suite to run")
    parser.add_argument("--csv", type=str, default=None, help="Write the result table to this CSV file")
    parser.add_argument("--samples", type=int, default=100, help="Sampled decomposition sets for the adequacy sweep")
    parser.add_argument("--seed", type=int, default=0, help="Seed for the sampled decomposition sets")
    parsed = parser.parse_args(args=args)
    config = RunConfig(command="verify", suite=parsed.suite, adequacy_samples=parsed.samples, seed=parsed.seed)
    frame = run_suite(parsed.suite, config)
    print(frame.drop(columns=["seconds"]).to_string(index=False))
    if parsed.csv:
        frame.to_csv(parsed.csv, index=False)
    return 0 if frame["passed"].all() else 2


if __name__ == "__main__":
    raise SystemExit(main())
