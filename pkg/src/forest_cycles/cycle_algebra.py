"""Cubical algebraic cycle terms with Laurent-monomial coordinates.

A term is an ordered list of coordinates on the algebraic n-cube.  Each
coordinate is either 1 - q (the generic shape) or the bare monomial q,
where q is a Laurent monomial in constant symbols, algebraic parameters
and topological variables.  The bare shape exists because the classical
weight-one cycle [t, 1-t, 1-a/t] and its boundary [a, 1-a] need it; both
shapes share the same face and sign machinery.

Terms are canonical: coordinates are sorted, with the permutation
parity exported as a sign, and equal coordinates kill the term.
Algebraic parameters are renamed to u1..uk by a label-invariant scheme,
so that two parametrizations of the same cycle compare equal.
Topological variables are never renamed; their index order is data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .formal import FormalSum
from .symbols import KIND_PARAM, KIND_TOP, Sym, parameter

INF = math.inf

_ASSIGNMENT_CAP = 5040  # 7!; relabeling search never comes near this


class OutOfClassError(Exception):
    """Raised when an operation would leave the monomial coordinate class."""


@dataclass(frozen=True)
class Monomial:
    """Finitely supported exponent vector, stored sorted by symbol key."""

    exps: Tuple[Tuple[Sym, int], ...] = ()

    @property
    def is_one(self) -> bool:
        return not self.exps

    def exp_of(self, sym: Sym) -> int:
        for s, e in self.exps:
            if s == sym:
                return e
        return 0

    def syms(self):
        return [s for s, _ in self.exps]

    def syms_of_kind(self, kind: str):
        return [s for s, _ in self.exps if s.kind == kind]

    def __mul__(self, other: "Monomial") -> "Monomial":
        acc: Dict[Sym, int] = dict(self.exps)
        for s, e in other.exps:
            acc[s] = acc.get(s, 0) + e
        return monomial(acc)

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return ONE
        return monomial({s: e * k for s, e in self.exps})

    def without(self, sym: Sym) -> "Monomial":
        return Monomial(tuple((s, e) for s, e in self.exps if s != sym))

    def substitute(self, sym: Sym, repl: "Monomial") -> "Monomial":
        e = self.exp_of(sym)
        if e == 0:
            return self
        return self.without(sym) * (repl ** e)

    def rename(self, mapping: Dict[Sym, Sym]) -> "Monomial":
        return monomial({mapping.get(s, s): e for s, e in self.exps})

    def key(self) -> tuple:
        return tuple((s.sort_key(), e) for s, e in self.exps)

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(f"{s}^{e}" if e != 1 else str(s) for s, e in self.exps)


def monomial(exps) -> Monomial:
    if isinstance(exps, Monomial):
        return exps
    items = exps.items() if isinstance(exps, dict) else exps
    acc: Dict[Sym, int] = {}
    for s, e in items:
        if e:
            acc[s] = acc.get(s, 0) + e
            if not acc[s]:
                del acc[s]
    return Monomial(tuple(sorted(acc.items(), key=lambda se: se[0].sort_key())))


ONE = Monomial()


@dataclass(frozen=True)
class Coordinate:
    """The function 1 - q when one_minus is set, else q itself."""

    q: Monomial
    one_minus: bool = True

    def key(self) -> tuple:
        return (self.q.key(), 1 if self.one_minus else 0)

    def rename(self, mapping) -> "Coordinate":
        return Coordinate(self.q.rename(mapping), self.one_minus)

    def __str__(self) -> str:
        return f"1-{self.q}" if self.one_minus else str(self.q)


@dataclass(frozen=True)
class CycleTerm:
    coords: Tuple[Coordinate, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def params(self) -> tuple:
        seen = []
        for c in self.coords:
            for s in c.q.syms_of_kind(KIND_PARAM):
                if s not in seen:
                    seen.append(s)
        return tuple(sorted(seen, key=Sym.sort_key))

    @property
    def top_syms(self) -> tuple:
        seen = []
        for c in self.coords:
            for s in c.q.syms_of_kind(KIND_TOP):
                if s not in seen:
                    seen.append(s)
        return tuple(sorted(seen, key=Sym.sort_key))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


EMPTY_TERM = CycleTerm(())


def dimension(t: CycleTerm) -> int:
    """Number of distinct algebraic parameters."""
    return len(t.params)


# ---------------------------------------------------------------------------
# canonical form

def _sort_coords(coords) -> Tuple[tuple, int]:
    items = list(coords)
    keys = [c.key() for c in items]
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return tuple(items), sign


def _anonymous_entry(sym: Sym, e: int) -> tuple:
    # parameters are anonymized; constants and topological syms keep names
    if sym.kind == KIND_PARAM:
        return (KIND_PARAM, "", e)
    return (sym.kind, sym.name, e)


def _param_signatures(coords, params):
    """Label-invariant signatures used to partition the parameters before
    the relabeling search.  Two refinement rounds over co-occurrence."""
    base = {}
    for p in params:
        occ = []
        for c in coords:
            e = c.q.exp_of(p)
            if e:
                shape = (1 if c.one_minus else 0,
                         tuple(sorted(_anonymous_entry(s, ee)
                                      for s, ee in c.q.exps)))
                occ.append((shape, e))
        base[p] = tuple(sorted(occ))
    for _ in range(2):
        nxt = {}
        for p in params:
            neigh = []
            for c in coords:
                if c.q.exp_of(p):
                    others = tuple(sorted(base[s]
                                          for s in c.q.syms_of_kind(KIND_PARAM)
                                          if s != p))
                    neigh.append(others)
            nxt[p] = (base[p], tuple(sorted(neigh)))
        base = nxt
    return base


def _cell_assignments(params, sigs):
    """Bijections params -> u1..uk respecting the signature partition,
    with contiguous index blocks per cell in signature order."""
    cells: Dict[tuple, list] = {}
    for p in params:
        cells.setdefault(sigs[p], []).append(p)
    ordered = [sorted(cells[k], key=Sym.sort_key) for k in sorted(cells)]
    total = 1
    for cell in ordered:
        total *= math.factorial(len(cell))
        if total > _ASSIGNMENT_CAP:
            raise OutOfClassError("parameter relabeling search too large")
    offsets = []
    i = 1
    for cell in ordered:
        offsets.append(i)
        i += len(cell)
    for perms in itertools.product(*[itertools.permutations(c) for c in ordered]):
        mapping = {}
        for off, perm in zip(offsets, perms):
            for d_, p in enumerate(perm):
                mapping[p] = parameter(off + d_)
        yield mapping


def normalize(raw_coords: Iterable[Coordinate]):
    """Canonical (CycleTerm, sign) of a raw coordinate list, or None.

    None means the term is zero.  That happens when a coordinate is the
    constant monomial 1 (the coordinate function either vanishes
    identically or sits at the removed point 1 of the cube) and when two
    coordinates coincide; it also happens when the minimal parameter
    relabeling is reached with both permutation parities, meaning the
    term carries an orientation-reversing self-symmetry.
    """
    coords = tuple(raw_coords)
    for c in coords:
        if c.q.is_one:
            return None
    if len(set(coords)) != len(coords):
        return None

    params = sorted({s for c in coords for s in c.q.syms_of_kind(KIND_PARAM)},
                    key=Sym.sort_key)
    if not params:
        sorted_coords, sign = _sort_coords(coords)
        return CycleTerm(sorted_coords), sign

    sigs = _param_signatures(coords, params)
    best_key = None
    best = None
    parities = set()
    for mapping in _cell_assignments(params, sigs):
        renamed = [c.rename(mapping) for c in coords]
        sorted_coords, sign = _sort_coords(renamed)
        key = tuple(c.key() for c in sorted_coords)
        if best_key is None or key < best_key:
            best_key = key
            best = (sorted_coords, sign)
            parities = {sign}
        elif key == best_key:
            parities.add(sign)
    if len(parities) == 2:
        return None
    sorted_coords, sign = best
    return CycleTerm(sorted_coords), sign


def add_cycle(out: FormalSum, raw_coords, coeff) -> None:
    res = normalize(raw_coords)
    if res is None:
        return
    term, sign = res
    out.add_term(term, Fraction(coeff) * sign)


def cycle_sum(entries) -> FormalSum:
    out = FormalSum()
    for raw, c in entries:
        add_cycle(out, raw, c)
    return out


# ---------------------------------------------------------------------------
# faces

@dataclass(frozen=True)
class FaceOutcome:
    """One face computation before sign conventions.

    contributions holds (CycleTerm, sign) pairs that survived; flags
    lists degeneracies in which a coordinate became a constant 0 or
    infinity on the face (the cycle then sits inside a deeper face,
    which is exactly an admissibility violation).  An outcome with no
    contributions and no flags is an empty intersection.
    """

    contributions: Tuple[Tuple[CycleTerm, int], ...] = ()
    flags: Tuple[str, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.contributions and not self.flags


_EMPTY_OUTCOME = FaceOutcome()


def _limit_outcome(coords, i, degen_sym, to_infinity):
    """Common part of the degeneration faces: drop coordinate i and send
    one parameter to 0 or infinity, then classify what the other
    coordinates do in the limit.  Emptiness (a coordinate pinned at the
    removed point 1) dominates any flag."""
    new_coords = []
    flags = []
    for jdx, c in enumerate(coords):
        if jdx == i:
            continue
        f = c.q.exp_of(degen_sym)
        if f == 0:
            new_coords.append(c)
            continue
        blows_up = (f > 0) == to_infinity
        if blows_up:
            flags.append(f"coordinate {jdx + 1} -> constant infinity")
        else:
            # q -> 0
            if c.one_minus:
                return _EMPTY_OUTCOME  # 1 - q -> 1, the removed point
            flags.append(f"coordinate {jdx + 1} -> constant 0")
    if flags:
        return FaceOutcome((), tuple(flags))
    res = normalize(new_coords)
    if res is None:
        return _EMPTY_OUTCOME
    return FaceOutcome((res,), ())


def _zero_face_one_minus(coords, i):
    """Solve q_i = 1 by eliminating one parameter of exponent +-1."""
    q = coords[i].q
    pivots = [s for s, e in q.exps if s.kind == KIND_PARAM and abs(e) == 1]
    if not pivots:
        if q.syms_of_kind(KIND_PARAM):
            raise OutOfClassError(
                f"zero-face of {coords[i]}: no parameter enters with exponent +-1")
        tops = set(q.syms_of_kind(KIND_TOP))
        if len(tops) >= 2:
            raise OutOfClassError(
                f"zero-face of {coords[i]} relates two topological variables")
        # constants alone, or one topological variable against generic
        # constants: no solution on the cube resp. inside [0,1]
        return _EMPTY_OUTCOME
    pivot = min(pivots, key=Sym.sort_key)
    e = q.exp_of(pivot)
    repl = q.without(pivot) ** (-e)
    new_coords = []
    flags = []
    empty = False
    for jdx, c in enumerate(coords):
        if jdx == i:
            continue
        q2 = c.q.substitute(pivot, repl)
        if q2.is_one:
            if c.one_minus:
                flags.append(f"coordinate {jdx + 1} -> constant 0")
                continue
            empty = True  # bare monomial pinned at the removed point 1
            break
        new_coords.append(Coordinate(q2, c.one_minus))
    if empty:
        return _EMPTY_OUTCOME
    if flags:
        return FaceOutcome((), tuple(flags))
    res = normalize(new_coords)
    if res is None:
        return _EMPTY_OUTCOME
    return FaceOutcome((res,), ())


def _degeneration_directions(q: Monomial, want_infinity: bool):
    """Parameter degenerations u -> 0/inf driving q to 0 or infinity."""
    out = []
    for s, e in q.exps:
        if s.kind != KIND_PARAM:
            continue
        to_inf = (e > 0) == want_infinity
        out.append((s, to_inf))
    return out


def face_outcome(t: CycleTerm, i: int, eps) -> FaceOutcome:
    """Face i (1-based) at eps in {0, inf} of a single term."""
    if not 1 <= i <= t.n:
        raise ValueError(f"face index {i} out of range")
    c = t.coords[i - 1]
    at_zero = not (eps == INF or eps == "inf")

    if c.one_minus:
        if at_zero:
            return _zero_face_one_minus(t.coords, i - 1)
        want_infinity = True
    else:
        # bare monomial coordinate: z = q, so z = 0 and z = inf are both
        # reached only through parameter degenerations
        want_infinity = not at_zero

    degens = _degeneration_directions(c.q, want_infinity)
    if not degens:
        if not at_zero and any(e < 0 for s, e in c.q.exps if s.kind == KIND_TOP):
            raise OutOfClassError(
                f"coordinate {i} would need a topological variable at 0 to blow up")
        return _EMPTY_OUTCOME
    contributions = []
    flags = []
    for sym, to_inf in degens:
        out = _limit_outcome(t.coords, i - 1, sym, to_inf)
        contributions.extend(out.contributions)
        flags.extend(out.flags)
    return FaceOutcome(tuple(contributions), tuple(flags))


def face(t: CycleTerm, i: int, eps) -> FormalSum:
    """Public face map; degenerate-constant outcomes are class errors."""
    out = face_outcome(t, i, eps)
    if out.flags:
        raise OutOfClassError("; ".join(out.flags))
    s = FormalSum()
    for term, sign in out.contributions:
        s.add_term(term, sign)
    return s


def boundary_term(t: CycleTerm) -> FormalSum:
    out = FormalSum()
    for i in range(1, t.n + 1):
        sign = 1 if i % 2 == 1 else -1
        for eps, eps_sign in ((0, 1), (INF, -1)):
            res = face_outcome(t, i, eps)
            if res.flags:
                raise OutOfClassError("; ".join(res.flags))
            for term, s in res.contributions:
                out.add_term(term, Fraction(sign * eps_sign * s))
    return out


def boundary(S: FormalSum) -> FormalSum:
    """The cycle differential: alternating sum of zero- and infinity-faces."""
    return S.bind(boundary_term)


# ---------------------------------------------------------------------------
# product

def _alpha_convert(term: CycleTerm, start: int) -> CycleTerm:
    mapping = {p: parameter(start + k) for k, p in enumerate(term.params)}
    return CycleTerm(tuple(c.rename(mapping) for c in term.coords))


def concat(A: FormalSum, B: FormalSum) -> FormalSum:
    """Coordinate concatenation followed by renormalization.

    Canonically stored terms reuse the names u1, u2, ...; the second
    factor is renamed to fresh parameters first, which is the meaning of
    the fresh-parameter discipline under canonical storage.
    """
    out = FormalSum()
    for ta, ca in A:
        na = len(ta.params)
        for tb, cb in B:
            tb2 = _alpha_convert(tb, na + 1)
            add_cycle(out, ta.coords + tb2.coords, ca * cb)
    return out


def unit_sum() -> FormalSum:
    return FormalSum.single(EMPTY_TERM, 1)


# ---------------------------------------------------------------------------
# admissibility

@dataclass
class AdmissibilityReport:
    admissible: bool
    certificate: tuple = ()  # chain of (i, eps, detail) leading to a violation
    faces_checked: int = 0


def is_admissible(t: CycleTerm) -> AdmissibilityReport:
    """Recursive proper-intersection check over all face chains.

    Each nonempty face must eliminate exactly one algebraic parameter and
    never pin a coordinate at a constant 0 or infinity; the same is then
    required of every face of the face.  The certificate is the first
    violating face chain found.
    """
    memo: Dict[CycleTerm, Optional[tuple]] = {}
    counter = [0]

    def walk(term: CycleTerm) -> Optional[tuple]:
        if term in memo:
            return memo[term]
        memo[term] = None  # provisional, faces strictly shrink n anyway
        for i in range(1, term.n + 1):
            for eps in (0, INF):
                counter[0] += 1
                out = face_outcome(term, i, eps)
                if out.flags:
                    memo[term] = ((i, eps, "; ".join(out.flags)),)
                    return memo[term]
                for sub, _ in out.contributions:
                    if dimension(sub) != dimension(term) - 1:
                        memo[term] = ((i, eps,
                                       f"face eliminates {dimension(term) - dimension(sub)} parameters"),)
                        return memo[term]
                    deeper = walk(sub)
                    if deeper is not None:
                        memo[term] = ((i, eps, "face chain"),) + deeper
                        return memo[term]
        return None

    chain = walk(t)
    return AdmissibilityReport(admissible=(chain is None),
                               certificate=chain or (),
                               faces_checked=counter[0])
