"""Exception hierarchy for the knot engine.

Every failure the engine can signal derives from :class:`KnotError` so the
CLI can map any of them to exit code 2 with a single ``except`` clause.
"""

from __future__ import annotations

from typing import Optional


class KnotError(Exception):
    """Base class for all engine errors."""


class CapExceeded(KnotError):
    """A group closure grew past the configured order cap."""


class NotSubgroup(KnotError):
    """A group passed as a subgroup is not contained in the ambient group."""


class BadParameter(KnotError):
    """A constructor parameter lies outside its documented range."""


class NoLiftFound(KnotError):
    """No section of SL2 into the center-fixing automorphisms was found."""


class NotContained(KnotError):
    """The denominator span of a quotient is not inside the numerator span."""


class NotCyclic(KnotError):
    """A cyclic group was required."""


class PreconditionViolated(KnotError):
    """Inputs do not satisfy the setting an operation is defined for."""


class UnverifiedExtension(KnotError):
    """A central extension lacks a generalized-representation certificate."""


class NotTransitive(KnotError):
    """The permutation group is not transitive."""


class NotStabilizer(KnotError):
    """The given subgroup is not a point stabilizer."""


class UnknownConstruction(KnotError):
    """A named construction is not known to the zoo."""


class MethodDisagreement(KnotError):
    """Two independent computation paths produced different answers."""


class InputError(KnotError):
    """An input document failed parsing or validation."""

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
