"""Floating-point verification layer.

Provides the truncated multiple-logarithm series, the iterated integral
over the ordered simplex, the variable change linking the two, numeric
evaluation of purely topological cycle terms, and a finite-difference
check of the weight-two differential identity.

The series and the integral satisfy I(x) = (-1)^m Li(z(x)) for depth m;
both quantities are exposed unnormalized and the sign relation is
asserted in the test suite rather than hidden inside either function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from .cycle_algebra import CycleTerm
from .formal import FormalSum, perm_parity
from .symbols import KIND_CONST, KIND_PARAM, KIND_TOP


@dataclass(frozen=True)
class NumericContext:
    series_truncation: int = 400
    quadrature_order: int = 32
    tolerance: float = 1e-8
    margin: float = 1e-6

    def __post_init__(self):
        if self.series_truncation < 1:
            raise ValueError("series truncation must be >= 1")
        if self.quadrature_order < 2:
            raise ValueError("quadrature order must be >= 2")
        if self.tolerance <= 0 or self.margin <= 0:
            raise ValueError("tolerance and margin must be positive")


DEFAULT_CTX = NumericContext()


def li1(z) -> complex:
    """-log(1 - z), the depth-one closed form."""
    if isinstance(z, complex):
        import cmath
        return -cmath.log(1 - z)
    return -math.log1p(-z)


def multiple_log_series(z: Sequence[complex], ctx: NumericContext = DEFAULT_CTX) -> complex:
    """Truncated nested sum over 0 < k1 < ... < km <= K of prod z_i^{k_i}/k_i.

    Raises when an argument leaves the guarded polydisc or when the tail
    bound exceeds the context tolerance.
    """
    zs = [complex(v) for v in z]
    if not zs:
        raise ValueError("need at least one argument")
    K = ctx.series_truncation
    for v in zs:
        if abs(v) > 1 - ctx.margin:
            raise ValueError(f"|z| = {abs(v)} outside the polydisc guard")
    # tail bound: the first m-1 factors are bounded by Li1 of the moduli,
    # the last index beyond K contributes a geometric tail
    zm = abs(zs[-1])
    if zm > 0:
        bound = 1.0
        for v in zs[:-1]:
            bound *= -math.log1p(-abs(v)) if abs(v) < 1 else math.inf
        tail = bound * zm ** (K + 1) / ((K + 1) * (1 - zm))
        if tail > ctx.tolerance:
            raise ValueError(
                f"truncation K={K} insufficient: tail bound {tail:.3e}")
    prev: List[complex] = [0j] * (K + 1)
    first = True
    for v in zs:
        cur = [0j] * (K + 1)
        p = 1.0 + 0j
        running = 0j
        for k in range(1, K + 1):
            p *= v
            if first:
                cur[k] = p / k
            else:
                running += prev[k - 1]
                cur[k] = p / k * running
        prev = cur
        first = False
    return sum(prev)


def z_from_x(x: Sequence[float]) -> list:
    """z_m = 1/x_m, z_i = x_{i+1}/x_i."""
    xs = list(x)
    if any(v == 0 for v in xs):
        raise ValueError("zero entry")
    out = []
    for i in range(len(xs) - 1):
        out.append(xs[i + 1] / xs[i])
    out.append(1.0 / xs[-1])
    return out


def x_from_z(z: Sequence[float]) -> list:
    """x_i = 1/(z_i * ... * z_m)."""
    zs = list(z)
    if any(v == 0 for v in zs):
        raise ValueError("zero entry")
    out = []
    acc = 1.0
    for v in reversed(zs):
        acc *= v
        out.append(1.0 / acc)
    out.reverse()
    return out


def simplex_integral(x: Sequence[float], ctx: NumericContext = DEFAULT_CTX) -> float:
    """Integral over 0 <= t1 <= ... <= tm <= 1 of prod dt_i/(t_i - x_i).

    Nested Gauss-Legendre recursion; each level integrates the previous
    one from 0 to the running upper limit.  All x_i must avoid [0,1] so
    the integrand stays smooth on the closed simplex.
    """
    xs = [float(v) for v in x]
    if not xs:
        raise ValueError("need at least one x")
    for v in xs:
        if 0.0 <= v <= 1.0:
            raise ValueError(f"singular integrand: x = {v} lies in [0,1]")
    nodes, weights = np.polynomial.legendre.leggauss(ctx.quadrature_order)
    half = (nodes + 1.0) / 2.0

    def g(level: int, s: np.ndarray) -> np.ndarray:
        if level == 0:
            return np.ones_like(s)
        t = np.multiply.outer(s, half)
        inner = g(level - 1, t.reshape(-1)).reshape(t.shape)
        vals = inner / (t - xs[level - 1])
        return (vals * weights).sum(axis=-1) * (s / 2.0)

    return float(g(len(xs), np.asarray([1.0]))[0])


def integral_error_estimate(x: Sequence[float], ctx: NumericContext = DEFAULT_CTX) -> float:
    """Self-estimate: difference against the doubled quadrature order."""
    finer = NumericContext(series_truncation=ctx.series_truncation,
                           quadrature_order=2 * ctx.quadrature_order,
                           tolerance=ctx.tolerance, margin=ctx.margin)
    return abs(simplex_integral(x, ctx) - simplex_integral(x, finer))


def eval_topological_cycle(t: CycleTerm, assignment: Dict[str, float],
                           ctx: NumericContext = DEFAULT_CTX) -> float:
    """Integral of a purely topological term against the volume form.

    Every coordinate must have the shape 1 - s_k * C with C a constant
    monomial; it contributes the factor ds_k/(s_k - 1/C).  The variables
    s_1..s_r must each appear exactly once.  Reordering the coordinates
    into simplex order contributes the permutation sign.  The classical
    normalization by (2*pi*i)^{-r} is not applied here.
    """
    entries = []
    for c in t.coords:
        if not c.one_minus:
            raise ValueError("unsupported coordinate shape: bare monomial")
        if c.q.syms_of_kind(KIND_PARAM):
            raise ValueError("term still contains algebraic parameters")
        tops = [(s, e) for s, e in c.q.exps if s.kind == KIND_TOP]
        if len(tops) != 1 or tops[0][1] != 1:
            raise ValueError(f"unsupported coordinate shape: {c}")
        cval = 1.0
        for s, e in c.q.exps:
            if s.kind == KIND_CONST:
                if s.name not in assignment:
                    raise ValueError(f"no value assigned to constant {s.name}")
                cval *= assignment[s.name] ** e
        entries.append((tops[0][0].index, 1.0 / cval))
    indices = [i for i, _ in entries]
    r = len(entries)
    if sorted(indices) != list(range(1, r + 1)):
        raise ValueError("each s_k must appear exactly once with contiguous indices")
    sign = perm_parity([i - 1 for i in indices])
    xs = [x for _, x in sorted(entries)]
    return sign * simplex_integral(xs, ctx)


def eval_topological_sum(S: FormalSum, assignment: Dict[str, float],
                         ctx: NumericContext = DEFAULT_CTX) -> float:
    total = 0.0
    for t, c in S:
        total += float(c) * eval_topological_cycle(t, assignment, ctx)
    return total


def _li11(x: float, y: float, ctx: NumericContext) -> float:
    return multiple_log_series([x, y], ctx).real


def diff_li11_coefficients(x: float, y: float, ctx: NumericContext = DEFAULT_CTX):
    """Closed-form coefficients of the weight-two differential identity.

    d Li_{1,1}(x, y) = A(x, y) dx + B(x, y) dy with
        A = (Li1(y) - Li1(xy)/x) / (1 - x)
        B = Li1(xy) / (1 - y).
    For small |x| the quotient Li1(xy)/x is evaluated by its series to
    avoid cancellation; its limit at x = 0 is y, so A(0, y) = Li1(y) - y.
    """
    if abs(x) < 0.25:
        quotient = 0.0
        p = 1.0  # x^{n-1}
        for n in range(1, ctx.series_truncation + 1):
            term = p * y ** n / n
            quotient += term
            p *= x
            if abs(term) < 1e-18:
                break
        a = (li1(y).real - quotient) / (1 - x)
    else:
        a = (li1(y).real - li1(x * y).real / x) / (1 - x)
    b = li1(x * y).real / (1 - y)
    return a, b


def check_diffLi(x: float, y: float, h: float = 1e-4,
                 ctx: NumericContext = DEFAULT_CTX) -> float:
    """Max residual of central finite differences of the series against
    the closed-form coefficients."""
    for v in (abs(x) + h, abs(y) + h):
        if v > 1 - ctx.margin:
            raise ValueError("perturbed point leaves the polydisc guard")
    fdx = (_li11(x + h, y, ctx) - _li11(x - h, y, ctx)) / (2 * h)
    fdy = (_li11(x, y + h, ctx) - _li11(x, y - h, ctx)) / (2 * h)
    a, b = diff_li11_coefficients(x, y, ctx)
    return max(abs(fdx - a), abs(fdy - b))
