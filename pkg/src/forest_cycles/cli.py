"""Command-line front end.

Subcommands: tau (emit a tree sum), phi (emit its cycle image or the
image of a tree file), verify (run a named verification suite), eval
(numeric series / integral / comparison).  Exit codes: 0 pass, 1
verification failure, 2 usage or unsupported-class errors.  The
environment variable FOREST_CYCLES_LOG sets the logging level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import forest_algebra as fa
from . import forest_cycling as fc
from . import hybrid as hy
from . import numerics as nm
from . import serialize as sz
from .cycle_algebra import OutOfClassError, boundary, is_admissible
from .symbols import UNIT, deco
from .tau import TauSpec, check_decomposable, check_internal_cancellation, tau, tau_trees


@dataclass
class RunConfig:
    subcommand: str
    m: int = 3
    decorations: tuple = ()
    fmt: str = "text"
    tol: float = 1e-6
    seed: int = 0
    count: int = 200
    fixture: Optional[str] = None
    xs: tuple = ()
    tree_file: Optional[str] = None
    suite: Optional[str] = None
    mode: Optional[str] = None
    order: int = 32


def _spec(cfg: RunConfig) -> TauSpec:
    if cfg.decorations:
        names = cfg.decorations
    else:
        names = tuple(f"x{i}" for i in range(1, cfg.m + 1))
    return TauSpec(tuple(deco(n) for n in names))


def cmd_tau(cfg: RunConfig) -> int:
    S = tau(_spec(cfg))
    if cfg.fmt == "json":
        print(json.dumps(sz.forest_sum_to_json(S), indent=2))
    elif cfg.fmt == "latex":
        print(sz.forest_sum_to_latex(S))
    else:
        print(f"tau over {cfg.m} decorations: {len(S)} trees")
        for F, c in sorted(S, key=lambda fc_: repr(fc_[0])):
            print(f"  {c} * {sz.forest_term_to_latex(F)}")
    return 0


def cmd_phi(cfg: RunConfig) -> int:
    if cfg.tree_file:
        with open(cfg.tree_file) as fh:
            T = sz.tree_from_json(json.load(fh))
        S = fc.phi(fa.tree_sum(T))
    else:
        S = fc.phi(tau(_spec(cfg)))
    if cfg.fmt == "json":
        print(json.dumps(sz.cycle_sum_to_json(S), indent=2))
    elif cfg.fmt == "latex":
        print(sz.cycle_sum_to_latex(S))
    else:
        for t, c in sorted(S, key=lambda tc: str(tc[0])):
            print(f"{c} * {t}")
    return 0


# ---------------------------------------------------------------------------
# verification suites

def _random_tree(rng: random.Random, max_edges: int, pool) -> fa.RDecoTree:
    def build(budget):
        # budget = edges available below the current edge
        if budget <= 1 or rng.random() < 0.35:
            return fa.Leaf(deco(rng.choice(pool)))
        arity = 2 if budget < 3 or rng.random() < 0.7 else 3
        shares = [1] * arity
        left = budget - arity
        for _ in range(left):
            shares[rng.randrange(arity)] += 1
        return fa.Node(tuple(build(s) for s in shares))

    root = UNIT if rng.random() < 0.5 else deco(rng.choice(pool))
    return fa.RDecoTree(root, build(rng.randint(1, max_edges) - 1))


def random_forest(rng: random.Random, max_edges: int = 8) -> fa.ForestTerm:
    pool = [f"x{i}" for i in range(1, 10)]
    k = rng.choice([1, 1, 2, 3])
    trees = []
    left = max_edges
    for i in range(k):
        cap = left - (k - 1 - i)
        if cap < 1:
            break
        T = _random_tree(rng, max(1, min(cap, 4)), pool)
        trees.append(T)
        left -= fa.edge_count(T)
    return fa.ForestTerm(tuple(trees))


def _suite_d2(cfg: RunConfig) -> bool:
    rng = random.Random(cfg.seed)
    ok = True
    for _ in range(cfg.count):
        S = fa.forest_sum([(random_forest(rng), 1)])
        if not fa.d(fa.d(S)).is_zero():
            ok = False
    print(f"d^2 = 0 on {cfg.count} random forests: {'pass' if ok else 'FAIL'}")
    return ok


def _suite_leibniz(cfg: RunConfig) -> bool:
    rng = random.Random(cfg.seed)
    ok = True
    pairs = max(1, cfg.count // 2)
    for _ in range(pairs):
        A = fa.forest_sum([(random_forest(rng, 5), 1)])
        B = fa.forest_sum([(random_forest(rng, 5), 1)])
        if A.is_zero() or B.is_zero():
            continue
        eA = fa.grade(A.terms()[0])[0]
        lhs = fa.d(fa.star(A, B))
        rhs = fa.star(fa.d(A), B) + fa.star(A, fa.d(B)).scale((-1) ** eA)
        if lhs != rhs:
            ok = False
    print(f"graded Leibniz on {pairs} random pairs: {'pass' if ok else 'FAIL'}")
    return ok


def _suite_del2(cfg: RunConfig) -> bool:
    ok = True
    for m in range(2, cfg.m + 1):
        spec = TauSpec(tuple(deco(f"x{i}") for i in range(1, m + 1)))
        for T in tau_trees(spec):
            Z = fc.phi(fa.tree_sum(T))
            if not boundary(boundary(Z)).is_zero():
                ok = False
    print(f"boundary^2 = 0 on tree images up to m = {cfg.m}: {'pass' if ok else 'FAIL'}")
    return ok


def _suite_chain_map(cfg: RunConfig) -> bool:
    ok = True
    log = logging.getLogger("forest_cycles.forest_cycling")
    old = log.level
    log.setLevel(logging.ERROR)  # differential images repeat decorations by design
    try:
        for m in range(2, cfg.m + 1):
            spec = TauSpec(tuple(deco(f"x{i}") for i in range(1, m + 1)))
            for T in tau_trees(spec):
                if not fc.verify_chain_map(T).passed:
                    ok = False
    finally:
        log.setLevel(old)
    print(f"chain map on all tree-sum trees up to m = {cfg.m}: {'pass' if ok else 'FAIL'}")
    return ok


def _suite_cancellation(cfg: RunConfig) -> bool:
    ok = True
    for m in range(2, cfg.m + 1):
        spec = TauSpec(tuple(deco(f"x{i}") for i in range(1, m + 1)))
        rep = check_internal_cancellation(spec)
        if not rep.passed:
            ok = False
        dec = check_decomposable(spec)
        if m >= 3 and not dec.all_two_trees:
            ok = False
    print(f"internal cancellation and two-tree splitting up to m = {cfg.m}: "
          f"{'pass' if ok else 'FAIL'}")
    return ok


def _suite_admissibility(cfg: RunConfig) -> bool:
    ok = True
    for m in range(2, cfg.m + 1):
        spec = TauSpec(tuple(deco(f"x{i}") for i in range(1, m + 1)))
        Z = fc.phi(tau(spec))
        for t, _ in Z:
            if not is_admissible(t).admissible:
                ok = False
    print(f"admissibility of tree images up to m = {cfg.m}: {'pass' if ok else 'FAIL'}")
    return ok


def _suite_bounding(cfg: RunConfig) -> bool:
    ok = True
    names = [cfg.fixture] if cfg.fixture else ["double_log", "triple_log"]
    for name in names:
        chain, target, _meta = hy.load_fixture(name)
        rep = hy.verify_bounding(chain, target)
        print(f"fixture {name}: {'pass' if rep.passed else 'FAIL'} "
              f"({len(rep.residual)} negligible residual terms)")
        if not rep.passed:
            for t, c in rep.offending:
                print(f"  offending: {c} * {t}")
            ok = False
    return ok


def _suite_numeric(cfg: RunConfig) -> bool:
    ctx = nm.NumericContext(quadrature_order=cfg.order, tolerance=min(cfg.tol, 1e-8))
    ok = True
    if cfg.xs:
        xs = list(cfg.xs)
        value = nm.simplex_integral(xs, ctx)
        series = nm.multiple_log_series(nm.z_from_x(xs), ctx)
        diff = abs(value - (-1) ** len(xs) * series.real)
        print(f"integral {value:.12f} vs series {series.real:.12f} "
              f"(signed diff {diff:.2e}): {'pass' if diff < cfg.tol else 'FAIL'}")
        ok = ok and diff < cfg.tol
    for name in ("double_log", "triple_log"):
        chain, _target, meta = hy.load_fixture(name)
        top = hy.topological_part(chain)
        assignment = {f"x{i + 1}": v for i, v in enumerate(meta["xs"])}
        value = nm.eval_topological_sum(top, assignment, ctx)
        expected = meta["integral_sign"] * nm.simplex_integral(meta["xs"], ctx)
        good = abs(value - expected) < cfg.tol
        print(f"fixture {name} topological integral {value:.10f} "
              f"expected {expected:.10f}: {'pass' if good else 'FAIL'}")
        ok = ok and good
    resid = nm.check_diffLi(0.3, 0.4, 1e-4, ctx)
    good = resid < 1e-5
    print(f"differential identity residual {resid:.2e}: {'pass' if good else 'FAIL'}")
    return ok and good


_SUITES = {
    "d2": _suite_d2,
    "leibniz": _suite_leibniz,
    "del2": _suite_del2,
    "chain-map": _suite_chain_map,
    "cancellation": _suite_cancellation,
    "admissibility": _suite_admissibility,
    "bounding": _suite_bounding,
    "numeric": _suite_numeric,
}


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite == "all":
        suites = list(_SUITES)
    elif cfg.suite in _SUITES:
        suites = [cfg.suite]
    else:
        print(f"unknown suite {cfg.suite!r}; choose from "
              f"{', '.join([*_SUITES, 'all'])}", file=sys.stderr)
        return 2
    ok = True
    for name in suites:
        ok = _SUITES[name](cfg) and ok
    return 0 if ok else 1


def cmd_eval(cfg: RunConfig) -> int:
    ctx = nm.NumericContext(quadrature_order=cfg.order)
    xs = list(cfg.xs)
    report = {}
    if cfg.mode in ("integral", "compare"):
        report["value"] = nm.simplex_integral(xs, ctx)
        report["error_estimate"] = nm.integral_error_estimate(xs, ctx)
    if cfg.mode in ("series", "compare"):
        z = nm.z_from_x(xs) if cfg.mode == "compare" else xs
        sval = nm.multiple_log_series(z, ctx)
        report["series"] = sval.real if sval.imag == 0 else [sval.real, sval.imag]
    if cfg.mode == "compare":
        m = len(xs)
        report["comparison"] = abs(report["value"] - (-1) ** m * report["series"])
        report["passed"] = report["comparison"] < cfg.tol
    print(json.dumps(report, indent=2))
    return 0 if report.get("passed", True) else 1


# ---------------------------------------------------------------------------

def _parse(argv) -> RunConfig:
    top = argparse.ArgumentParser(prog="forest-cycles", description=__doc__)
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--m", type=int, default=3)
        p.add_argument("--decos", type=str, default="",
                       help="comma-separated decoration names (default x1..xm)")
        p.add_argument("--format", dest="fmt", choices=("text", "json", "latex"),
                       default="text")

    p_tau = sub.add_parser("tau", help="emit the tree sum")
    common(p_tau)

    p_phi = sub.add_parser("phi", help="emit the cycle image")
    common(p_phi)
    p_phi.add_argument("--tree", dest="tree_file", default=None,
                       help="JSON tree file instead of the tree sum")

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=[*_SUITES, "all"])
    p_ver.add_argument("--m", type=int, default=4)
    p_ver.add_argument("--fixture", choices=("double_log", "triple_log"), default=None)
    p_ver.add_argument("--x", dest="xs", type=str, default="")
    p_ver.add_argument("--tol", type=float, default=1e-6)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--count", type=int, default=200)
    p_ver.add_argument("--order", type=int, default=32)

    p_ev = sub.add_parser("eval", help="numeric evaluation")
    p_ev.add_argument("mode", choices=("series", "integral", "compare"))
    p_ev.add_argument("--x", dest="xs", type=str, required=True)
    p_ev.add_argument("--tol", type=float, default=1e-6)
    p_ev.add_argument("--order", type=int, default=32)

    ns = top.parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand)
    for name in ("m", "fmt", "tol", "seed", "count", "fixture",
                 "tree_file", "suite", "mode", "order"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "decos", ""):
        cfg.decorations = tuple(s.strip() for s in ns.decos.split(",") if s.strip())
        cfg.m = len(cfg.decorations)
    if getattr(ns, "xs", ""):
        cfg.xs = tuple(float(s) for s in ns.xs.split(","))
    return cfg


def main(argv=None) -> int:
    level = os.environ.get("FOREST_CYCLES_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO))
    try:
        cfg = _parse(sys.argv[1:] if argv is None else argv)
        handler = {"tau": cmd_tau, "phi": cmd_phi,
                   "verify": cmd_verify, "eval": cmd_eval}[cfg.subcommand]
        return handler(cfg)
    except (OutOfClassError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
