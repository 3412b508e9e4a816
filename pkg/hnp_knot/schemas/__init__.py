"""Pydantic schemas for documents, reports and run manifests."""

from .models import (
    GroupLiteral,
    InputDocument,
    KnotReport,
    NamedGroup,
    RunConfig,
    RunManifest,
    VerifyRow,
)

__all__ = [
    "GroupLiteral",
    "InputDocument",
    "KnotReport",
    "NamedGroup",
    "RunConfig",
    "RunManifest",
    "VerifyRow",
]
