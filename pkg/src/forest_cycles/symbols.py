"""Symbol types shared by the forest and cycle layers.

Two separate alphabets are in play.  Trees carry decorations on their
external vertices (``DecoSymbol``), while cycle coordinates are built
from multiplicative symbols (``Sym``) whose kind separates fixed
constants from algebraic parameters and topological simplex variables.
"""

from __future__ import annotations

from dataclasses import dataclass

KIND_CONST = "const"
KIND_PARAM = "param"
KIND_TOP = "top"

_KIND_RANK = {KIND_CONST: 0, KIND_PARAM: 1, KIND_TOP: 2}


@dataclass(frozen=True)
class DecoSymbol:
    """Decoration attached to an external vertex of a planted tree.

    Exactly one decoration per session is the distinguished unit; it
    sorts before every other decoration.
    """

    name: str
    is_unit: bool = False

    def sort_key(self) -> tuple:
        return (0 if self.is_unit else 1, self.name)

    def __str__(self) -> str:
        return self.name


UNIT = DecoSymbol("1", is_unit=True)


def deco(name: str) -> DecoSymbol:
    """Decoration from a plain name; "1" maps to the unit."""
    return UNIT if name == "1" else DecoSymbol(name)


def standard_decorations(m: int):
    """The unit root decoration plus leaf decorations x1..xm."""
    return UNIT, tuple(DecoSymbol(f"x{i}") for i in range(1, m + 1))


@dataclass(frozen=True)
class Sym:
    """Multiplicative symbol appearing in cycle coordinates.

    kind "const" marks a fixed argument and kind "param" an algebraic
    cycle parameter, canonically named u1, u2, ...  kind "top" marks a
    topological simplex variable (s1, s2, ...); there the index order is
    semantic and never renamed.
    """

    kind: str
    name: str
    index: int = 0

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.index, self.name)

    def __str__(self) -> str:
        return self.name


def constant(name: str) -> Sym:
    return Sym(KIND_CONST, name)


def parameter(i: int) -> Sym:
    return Sym(KIND_PARAM, f"u{i}", i)


def topological(i: int) -> Sym:
    return Sym(KIND_TOP, f"s{i}", i)


def sym_from_name(name: str) -> Sym:
    """Infer the kind from the u<k>/s<k> naming convention (JSON input)."""
    if len(name) > 1 and name[0] in "us" and name[1:].isdigit():
        i = int(name[1:])
        return parameter(i) if name[0] == "u" else topological(i)
    return constant(name)
