"""JSON and LaTeX emission for trees, forests and cycle sums.

Tree schema: {"root": "<deco>", "node": N} with N either
{"leaf": "<deco>"} or {"children": [N, ...]}.  Forest terms carry a
"sign" and a "trees" array; sum entries add a "coeff" string.  Cycle
coordinates are exponent maps {"<sym>": exp, ...}; symbol kinds are
inferred from the u<k>/s<k> naming convention.  Bare-monomial
coordinates are marked by their 1-based positions in a "plain" array.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cycle_algebra import Coordinate, CycleTerm, monomial
from .forest_algebra import ForestTerm, Leaf, Node, RDecoTree
from .formal import FormalSum
from .symbols import deco, sym_from_name

# ---------------------------------------------------------------------------
# JSON

def _node_to_json(node):
    if isinstance(node, Leaf):
        return {"leaf": node.deco.name}
    return {"children": [_node_to_json(ch) for ch in node.children]}


def _node_from_json(obj):
    if "leaf" in obj:
        return Leaf(deco(obj["leaf"]))
    return Node(tuple(_node_from_json(ch) for ch in obj["children"]))


def tree_to_json(T: RDecoTree) -> dict:
    return {"root": T.root_deco.name, "node": _node_to_json(T.top)}


def tree_from_json(obj) -> RDecoTree:
    return RDecoTree(deco(obj["root"]), _node_from_json(obj["node"]))


def forest_term_to_json(F: ForestTerm) -> dict:
    return {"sign": F.sign, "trees": [tree_to_json(t) for t in F.trees]}


def forest_term_from_json(obj) -> ForestTerm:
    return ForestTerm(tuple(tree_from_json(t) for t in obj["trees"]),
                      int(obj.get("sign", 1)))


def forest_sum_to_json(S: FormalSum) -> list:
    out = []
    for F, c in sorted(S, key=lambda fc: repr(fc[0])):
        entry = forest_term_to_json(F)
        entry["coeff"] = str(c)
        out.append(entry)
    return out


def forest_sum_from_json(entries) -> FormalSum:
    from .forest_algebra import add_forest

    out = FormalSum()
    for obj in entries:
        add_forest(out, forest_term_from_json(obj), Fraction(obj.get("coeff", 1)))
    return out


def cycle_term_to_json(t: CycleTerm) -> dict:
    coords = []
    plain = []
    for i, c in enumerate(t.coords, start=1):
        coords.append({s.name: e for s, e in c.q.exps})
        if not c.one_minus:
            plain.append(i)
    obj = {"coords": coords}
    if plain:
        obj["plain"] = plain
    return obj


def cycle_term_from_json(obj) -> CycleTerm:
    plain = set(obj.get("plain", ()))
    coords = []
    for i, cobj in enumerate(obj["coords"], start=1):
        q = monomial({sym_from_name(name): int(e) for name, e in cobj.items()})
        coords.append(Coordinate(q, i not in plain))
    return CycleTerm(tuple(coords))


def cycle_sum_to_json(S: FormalSum) -> list:
    out = []
    for t, c in sorted(S, key=lambda tc: str(tc[0])):
        entry = cycle_term_to_json(t)
        entry["coeff"] = str(c)
        out.append(entry)
    return out


def cycle_sum_from_json(entries) -> FormalSum:
    from .cycle_algebra import add_cycle

    out = FormalSum()
    for obj in entries:
        add_cycle(out, cycle_term_from_json(obj).coords, Fraction(obj.get("coeff", 1)))
    return out


# ---------------------------------------------------------------------------
# LaTeX

_NAME_RE = re.compile(r"^([A-Za-z]+)(\d+)$")


def sym_to_latex(name: str) -> str:
    m = _NAME_RE.match(name)
    if m:
        return f"{m.group(1)}_{{{m.group(2)}}}"
    return name


def monomial_to_latex(q) -> str:
    if q.is_one:
        return "1"
    num = []
    den = []
    for s, e in q.exps:
        base = sym_to_latex(s.name)
        piece = base if abs(e) == 1 else f"{base}^{{{abs(e)}}}"
        (num if e > 0 else den).append(piece)
    if not den:
        return " ".join(num)
    return rf"\frac{{{' '.join(num) or '1'}}}{{{' '.join(den)}}}"


def coordinate_to_latex(c: Coordinate) -> str:
    body = monomial_to_latex(c.q)
    return f"1-{body}" if c.one_minus else body


def cycle_term_to_latex(t: CycleTerm) -> str:
    return r"\left[" + ",\, ".join(coordinate_to_latex(c) for c in t.coords) + r"\right]"


def _coeff_prefix(c: Fraction) -> str:
    if c == 1:
        return "+"
    if c == -1:
        return "-"
    return ("+" if c > 0 else "-") + str(abs(c)) + r"\,"


def cycle_sum_to_latex(S: FormalSum) -> str:
    if S.is_zero():
        return "0"
    parts = []
    for t, c in sorted(S, key=lambda tc: str(tc[0])):
        parts.append(_coeff_prefix(c) + cycle_term_to_latex(t))
    text = " ".join(parts)
    return text[1:] if text.startswith("+") else text


def _node_to_latex(node) -> str:
    if isinstance(node, Leaf):
        return sym_to_latex(node.deco.name)
    return "(" + "\\," .join(_node_to_latex(ch) for ch in node.children) + ")"


def tree_to_latex(T: RDecoTree) -> str:
    # root decoration first, then the nested planar bracketing of branches
    return rf"\bigl({sym_to_latex(T.root_deco.name)};\ {_node_to_latex(T.top)}\bigr)"


def forest_term_to_latex(F: ForestTerm) -> str:
    if not F.trees:
        return r"\mathbf{1}"
    body = r" \star ".join(tree_to_latex(t) for t in F.trees)
    return body if F.sign >= 0 else "-" + body


def forest_sum_to_latex(S: FormalSum) -> str:
    if S.is_zero():
        return "0"
    parts = []
    for F, c in sorted(S, key=lambda fc: repr(fc[0])):
        parts.append(_coeff_prefix(c) + forest_term_to_latex(F))
    text = " ".join(parts)
    return text[1:] if text.startswith("+") else text
