"""Linear algebra over Z/n."""

from .zmod import AbelianInvariants, HowellBasis, howell, kernel, preimage, quotient_invariants, solve

__all__ = ["AbelianInvariants", "HowellBasis", "howell", "kernel", "preimage", "quotient_invariants", "solve"]
