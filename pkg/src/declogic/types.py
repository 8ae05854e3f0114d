"""Object types for the decorated term calculus.

Types are finite products and sums over named base types, with a unit
(empty product) and an empty type (empty sum).  They are plain frozen
dataclasses so they can serve as dict keys and appear inside terms.
"""

from __future__ import annotations

from dataclasses import dataclass


class ObjType:
    """Base class for object types."""

    __slots__ = ()


@dataclass(frozen=True)
class Unit(ObjType):
    """The terminal object; one inhabitant."""


@dataclass(frozen=True)
class Empty(ObjType):
    """The initial object; no inhabitants."""


@dataclass(frozen=True)
class Base(ObjType):
    """A named base type whose carrier is supplied by a finite model."""

    name: str


@dataclass(frozen=True)
class Prod(ObjType):
    left: ObjType
    right: ObjType


@dataclass(frozen=True)
class Sum(ObjType):
    left: ObjType
    right: ObjType


UNIT_T = Unit()
EMPTY_T = Empty()


def base_names(ty: ObjType) -> frozenset[str]:
    """Names of all base types mentioned in `ty`."""
    stack = [ty]
    names = set()
    while stack:
        t = stack.pop()
        if isinstance(t, Base):
            names.add(t.name)
        elif isinstance(t, (Prod, Sum)):
            stack.append(t.left)
            stack.append(t.right)
    return frozenset(names)


def dual_type(ty: ObjType) -> ObjType:
    """Swap products with sums and unit with empty, recursively."""
    if isinstance(ty, Unit):
        return EMPTY_T
    if isinstance(ty, Empty):
        return UNIT_T
    if isinstance(ty, Base):
        return ty
    if isinstance(ty, Prod):
        return Sum(dual_type(ty.left), dual_type(ty.right))
    if isinstance(ty, Sum):
        return Prod(dual_type(ty.left), dual_type(ty.right))
    raise TypeError(f"not an object type: {ty!r}")
