"""Permutation groups, 2x2 matrices mod p and the named constructions."""

from .matrices import MatGL2
from .permgroup import GroupHom, Perm, PermGroup, close
from .zoo import CentralExtension, construct

__all__ = ["CentralExtension", "GroupHom", "MatGL2", "Perm", "PermGroup", "close", "construct"]
