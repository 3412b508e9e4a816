"""Checks on untrusted documents and on outgoing reports.

Each check returns a ``ValidationResult`` with a snake_case reason code so
that failures can be tabulated; the workflow turns a failed check into an
``InputError`` carrying the JSON location.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..schemas.models import GroupLiteral, InputDocument, KnotReport


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: Optional[str] = None
    location: Optional[str] = None


def validate_images(images: Sequence[int], degree: int, location: str) -> ValidationResult:
    if len(images) != degree:
        return ValidationResult(False, "generator_length_mismatch", location)
    if any(x < 0 or x >= degree for x in images):
        return ValidationResult(False, "generator_point_out_of_range", location)
    if len(set(images)) != degree:
        return ValidationResult(False, "generator_not_a_permutation", location)
    return ValidationResult(True)


def validate_literal(literal: GroupLiteral, location: str = "group") -> ValidationResult:
    for k, images in enumerate(literal.generators):
        check = validate_images(images, literal.degree, f"{location}.generators[{k}]")
        if not check.ok:
            return check
    return ValidationResult(True)


def validate_document(document: InputDocument, degree: int) -> ValidationResult:
    """Validate a document against the degree of its resolved group."""
    if isinstance(document.group, GroupLiteral):
        check = validate_literal(document.group)
        if not check.ok:
            return check
    if document.stabilizer_point >= degree:
        return ValidationResult(False, "stabilizer_point_out_of_range", "stabilizer_point")
    for i, gens in enumerate(document.decomposition_groups):
        for k, images in enumerate(gens):
            check = validate_images(images, degree, f"decomposition_groups[{i}][{k}]")
            if not check.ok:
                return check
    if not document.methods:
        return ValidationResult(False, "no_methods_selected", "methods")
    return ValidationResult(True)


def _divisibility_ordered(factors: List[int]) -> bool:
    return all(f > 1 for f in factors) and all(b % a == 0 for a, b in zip(factors, factors[1:]))


def validate_report(report: KnotReport) -> ValidationResult:
    """A report must list invariants in divisibility order and name the matching group."""
    if not _divisibility_ordered(report.sha_invariants):
        return ValidationResult(False, "invariants_not_in_divisibility_order", "sha_invariants")
    expected = " x ".join(f"Z/{d}" for d in report.sha_invariants) or "trivial"
    if report.decision != expected:
        return ValidationResult(False, "decision_does_not_match_invariants", "decision")
    if report.group_order != report.stabilizer_order * report.degree:
        return ValidationResult(False, "stabilizer_index_differs_from_degree", "stabilizer_order")
    return ValidationResult(True)
