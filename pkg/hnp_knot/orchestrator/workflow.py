"""Per-document pipeline: resolve the group, validate, decide, validate the report.

The group arithmetic is CPU-bound, so each stage runs in a worker thread and
the coroutine only sequences them.
"""

from __future__ import annotations

import asyncio
from typing import Any, Dict, List, Tuple, Union

from ..cohomology.sha import DecompositionSet
from ..errors import BadParameter, InputError
from ..groups.permgroup import Perm, PermGroup, close, point_stabilizer, sylow_p
from ..groups.zoo import construct
from ..schemas.models import AdequacyReport, GroupLiteral, InputDocument, NamedGroup
from ..utils.hashing import canonical_hash
from .decision import KnotDecider, degree_prime
from .validation import validate_document, validate_literal, validate_report

COMMANDS = ("sha", "h1pic", "adequacy")


def resolve_group(group: Union[GroupLiteral, NamedGroup]) -> PermGroup:
    """Build the group named or listed in a document."""
    if isinstance(group, GroupLiteral):
        check = validate_literal(group)
        if not check.ok:
            raise InputError(check.reason, check.location)
        return close([Perm(images) for images in group.generators], group.degree)
    params = group.model_dump(exclude={"name"}, exclude_none=True)
    return construct(group.name, params)


def resolve_document(document: InputDocument) -> Tuple[PermGroup, PermGroup, DecompositionSet]:
    G = resolve_group(document.group)
    check = validate_document(document, G.degree)
    if not check.ok:
        raise InputError(check.reason, check.location)
    H = point_stabilizer(G, document.stabilizer_point)
    supplied: List[PermGroup] = [
        close([Perm(images) for images in gens], G.degree) for gens in document.decomposition_groups
    ]
    return G, H, DecompositionSet.build(G, supplied)


def _adequacy(decider: KnotDecider, G: PermGroup, H: PermGroup, D: DecompositionSet) -> AdequacyReport:
    adequate = decider.adequacy_criterion(G, H, D)
    return AdequacyReport(
        adequate=adequate,
        sylow_order=sylow_p(G, degree_prime(G)).order,
        decision="trivial" if adequate else None,
    )


async def process_document(
    *,
    document: InputDocument,
    decider: KnotDecider,
    command: str,
) -> Dict[str, Any]:
    """Run one command on one document and return the report with its inputs."""
    if command not in COMMANDS:
        raise BadParameter(f"unknown command {command!r}")
    G, H, D = await asyncio.to_thread(resolve_document, document)

    if tuple(document.methods) != decider.methods:
        decider = decider.with_methods(document.methods)

    if command == "sha":
        report = await asyncio.to_thread(decider.decide_hnp, G, H, D)
    elif command == "h1pic":
        report = await asyncio.to_thread(decider.decide_h1pic, G, H)
    else:
        report = await asyncio.to_thread(_adequacy, decider, G, H, D)

    report.input_hash = canonical_hash(document)
    report.label = document.label
    if command != "adequacy":
        check = validate_report(report)
        if not check.ok:
            raise BadParameter(f"inconsistent report: {check.reason} at {check.location}")
    return {"document": document, "group_order": G.order, "report": report}
