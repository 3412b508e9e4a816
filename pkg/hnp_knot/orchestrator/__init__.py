"""Decision procedures and the per-document pipeline."""

from .decision import KnotDecider, StarWitness
from .validation import ValidationResult, validate_document, validate_report
from .workflow import process_document, resolve_document

__all__ = [
    "KnotDecider",
    "StarWitness",
    "ValidationResult",
    "process_document",
    "resolve_document",
    "validate_document",
    "validate_report",
]
