"""The multiple-logarithm tree sum and its combinatorial checks.

tau(x1..xm) is the sum, all coefficients +1, of every trivalent planted
plane tree whose leaves are decorated x1..xm left to right and whose root
carries the unit decoration.  There are Catalan(m-1) such trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .formal import FormalSum
from .forest_algebra import (ForestTerm, Leaf, Node, RDecoTree, add_forest,
                             d_contributions, edge_is_internal)
from .symbols import UNIT, DecoSymbol


@dataclass(frozen=True)
class TauSpec:
    decorations: Tuple[DecoSymbol, ...]

    def __post_init__(self):
        if len(self.decorations) < 2:
            raise ValueError("need at least two decorations")
        if len(set(self.decorations)) != len(self.decorations):
            raise ValueError("decorations must be pairwise distinct")
        if any(x.is_unit for x in self.decorations):
            raise ValueError("decorations must differ from the unit")

    @property
    def m(self) -> int:
        return len(self.decorations)


def _binary_shapes(leaves):
    if len(leaves) == 1:
        return [Leaf(leaves[0])]
    shapes = []
    for cut in range(1, len(leaves)):
        for left in _binary_shapes(leaves[:cut]):
            for right in _binary_shapes(leaves[cut:]):
                shapes.append(Node((left, right)))
    return shapes


def tau_trees(spec: TauSpec) -> List[RDecoTree]:
    """All trivalent trees of the sum, in enumeration order."""
    return [RDecoTree(UNIT, top) for top in _binary_shapes(spec.decorations)]


def tau(spec: TauSpec) -> FormalSum:
    out = FormalSum()
    for T in tau_trees(spec):
        add_forest(out, ForestTerm((T,)), 1)
    return out


@dataclass
class CancellationReport:
    """Outcome of restricting the differential to internal-edge contractions."""

    m: int
    passed: bool
    pairs: list = field(default_factory=list)  # (repr, [(tree_idx, edge, coeff)])
    residual_terms: int = 0


def check_internal_cancellation(spec: TauSpec) -> CancellationReport:
    """The internal-edge part of d(tau) must vanish identically.

    Groups the individual contraction contributions by their resulting
    canonical forest; every group has to sum to zero.
    """
    groups: dict = {}
    for idx, T in enumerate(tau_trees(spec)):
        for i, p, result, coeff in d_contributions(ForestTerm((T,))):
            if result is None or not edge_is_internal(T, p):
                continue
            groups.setdefault(result, []).append((idx, p, coeff))
    pairs = []
    residual = 0
    for result, contribs in sorted(groups.items(), key=lambda kv: repr(kv[0])):
        total = sum((c for _, _, c in contribs), Fraction(0))
        pairs.append((repr(result), contribs))
        if total:
            residual += 1
    return CancellationReport(m=spec.m, passed=(residual == 0), pairs=pairs,
                              residual_terms=residual)


@dataclass
class DecomposabilityReport:
    """Tree counts of the surviving terms of d(tau)."""

    m: int
    all_two_trees: bool
    counts: dict = field(default_factory=dict)  # trees-per-term -> #terms
    note: str = ""


def check_decomposable(spec: TauSpec) -> DecomposabilityReport:
    """Every surviving term of d(tau) should be a product of exactly two
    trees.  Reported, not asserted: callers decide how to treat m = 2,
    where the statement is not part of the trivalent cancellation setup
    (it does in fact hold there too)."""
    from .forest_algebra import d

    dtau = d(tau(spec))
    counts: dict = {}
    for F, _ in dtau:
        k = len(F.trees)
        counts[k] = counts.get(k, 0) + 1
    all_two = set(counts) <= {2}
    note = ""
    if spec.m == 2:
        note = ("m=2: leaf-edge contractions at the single trivalent vertex "
                "split into two components as well, so every surviving term "
                "is a product of two trees")
    return DecomposabilityReport(m=spec.m, all_two_trees=all_two,
                                 counts=counts, note=note)
