"""Stable names for inputs: content hashes for reports, slugs for output files."""

from __future__ import annotations

import hashlib
import json
import re
from typing import Any

from pydantic import BaseModel


def canonical_json(value: Any) -> str:
    """Key-sorted, whitespace-free JSON; pydantic models are dumped first."""
    if isinstance(value, BaseModel):
        value = value.model_dump(mode="json")
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def canonical_hash(value: Any, length: int = 16) -> str:
    """Leading hex digits of the SHA-256 of ``canonical_json(value)``.

    >>> canonical_hash({"b": 1, "a": 2}) == canonical_hash({"a": 2, "b": 1})
    True
    """
    return hashlib.sha256(canonical_json(value).encode("utf-8")).hexdigest()[:length]


def slugify(value: str) -> str:
    """Lowercase, hyphen-separated form of ``value`` that is safe as a file name.

    Primes are spelled out so that ``P'2`` and ``P2`` stay distinct.

    >>> slugify("P'2 x| SL2(F_3)")
    'pprime2-x-sl2-f-3'
    """
    value = value.strip().lower().replace("'", "prime")
    value = re.sub(r"[^a-z0-9]+", "-", value)
    return value.strip("-")
