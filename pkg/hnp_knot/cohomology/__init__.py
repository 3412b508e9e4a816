"""Group cohomology of lattices and the Sha groups built from it."""

from .cocycles import CohGroup, h2_cyclic_tate, h2_lattice
from .lattice import GLattice, chevalley_lattice, induced_lattice
from .sha import DecompositionSet, sha2, sha2_chevalley, sha_omega

__all__ = [
    "CohGroup",
    "DecompositionSet",
    "GLattice",
    "chevalley_lattice",
    "h2_cyclic_tate",
    "h2_lattice",
    "induced_lattice",
    "sha2",
    "sha2_chevalley",
    "sha_omega",
]
