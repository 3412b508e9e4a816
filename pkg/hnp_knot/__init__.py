"""
hnp_knot: the Hasse norm principle for extensions of degree p^2
================================================================

The knot group of a degree-p^2 extension is computed from finite data only:
the Galois group of the closure as a permutation group, the point stabilizer
of the extension, and a set of decomposition groups. Two independent paths
produce the answer and are cross-checked.

- ``groups``: permutation groups, GL2(F_p), the named families and the
  Heisenberg covers.
- ``linalg``: linear algebra over Z/n (Howell form, kernels, invariants).
- ``cohomology``: lattices, H^1 and H^2, the Sha groups, the character
  formula and the Drakokhrust formula.
- ``orchestrator``: the structural classifier and the per-document pipeline.
- ``schemas`` and ``config``: pydantic documents and YAML configuration.
"""

__version__ = "0.1.0"

__all__ = [
    "__version__",
]
