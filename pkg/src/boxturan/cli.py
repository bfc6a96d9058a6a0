"""Command-line interface.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 a budget was exceeded and the check was skipped.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, selftest
from .construction import build_instance, density_holds, expected_edges, rote_instance_report
from .errors import BudgetExceeded
from .finite_field import DEFAULT_MAX_SIZE, is_prime
from .hypergraph import DEFAULT_PAIR_BUDGET, dumps_edgelist, find_complete_rpartite, loads_edgelist
from .nullstellensatz import DEFAULT_EVAL_BUDGET

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"p must be prime, got {p}")
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _fmt(v) -> str:
    return str(v).lower() if isinstance(v, bool) else str(v)


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_gen(args) -> int:
    if args.r < 2:
        raise UsageError("r must be >= 2")
    inst = build_instance(
        args.p,
        args.r,
        args.mode,
        budget_evals=args.budget_evals,
        budget_pairs=args.budget_pairs,
        max_field=args.max_field,
    )
    rep = inst.report
    if args.out:
        out = Path(args.out)
        if out.suffix == ".json":
            raise UsageError("--out names the edge-list file; the report goes next to it as .json")
        out.write_text(dumps_edgelist(inst.hypergraph, field=inst.ctx.descriptor))
        out.with_suffix(".json").write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
    lines = [f"{k}: {_fmt(v)}" for k, v in rep.to_dict().items()]
    if inst.witness is not None:
        lines.append("witness: " + inst.witness.describe(inst.hypergraph))
    _emit(args, rep.to_dict(), lines)
    if rep.box_free == "skipped-budget" and rep.counts_ok and rep.density_ok:
        return EXIT_BUDGET
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        H, meta = loads_edgelist(Path(args.edges).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read edge list: {exc}") from None
    r, m = H.r, H.num_edges
    result: dict = {"r": r, "parts": list(H.part_sizes), "num_edges": m}
    lines = [f"r: {r}", f"parts: {','.join(map(str, H.part_sizes))}", f"num_edges: {m}"]
    ok, skipped = True, False

    try:
        w = find_complete_rpartite(H, (2,) * r, args.budget_pairs) if all(n >= 2 for n in H.part_sizes) else None
        result["box_free"] = w is None
        lines.append(f"box_free: {_fmt(w is None)}")
        if w is not None:
            ok = False
            result["witness"] = [[int(H.labels[i][v]) for v in part] for i, part in enumerate(w.parts)]
            lines.append("witness: " + w.describe(H))
    except BudgetExceeded as exc:
        skipped = True
        result["box_free"] = "skipped-budget"
        lines.append(f"box_free: skipped ({exc})")

    equal = len(set(H.part_sizes)) == 1 and r >= 1
    n = H.part_sizes[0] if equal else None
    density = density_holds(m, n, r) if equal else None
    result["density_ok"] = density
    if args.p is not None and args.r is not None:
        exp = expected_edges(args.p, args.r)
        result["expected_edges"] = exp
        lines.append(f"expected_edges: {exp} ({'match' if exp == m else 'MISMATCH'})")
        if exp != m or args.r != r or n != args.p**args.r - 1:
            ok = False
        lines.append(f"density m^r >= n^(r*r-1): {_fmt(density)}")
        if not density:
            ok = False
    else:
        lines.append(f"density m^r >= n^(r*r-1): {_fmt(density)} (informational without --p/--r)")

    _emit(args, result, lines)
    if not ok:
        return EXIT_FAIL
    return EXIT_BUDGET if skipped else EXIT_OK


def cmd_bounds(args) -> int:
    if args.rmax < 2:
        raise UsageError("--rmax must be >= 2")
    recs = bounds.comparison_table(args.rmax)
    if args.format == "json":
        print(bounds.table_json(recs))
    else:
        print(bounds.format_table(recs))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_all(seed=args.seed, max_field=args.max_field, trials=args.trials)
    if args.format == "json":
        payload = {
            "seed": args.seed,
            "suites": [{"name": s.name, "ok": s.ok, "checked": s.checked, "note": s.note, "failures": s.failures} for s in results],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"selftest seed={args.seed} max_field={args.max_field} trials={args.trials}")
        for s in results:
            print(s.line())
        print("ALL PASS" if all(s.ok for s in results) else "FAILURES")
    return EXIT_OK if all(s.ok for s in results) else EXIT_FAIL


def cmd_rote(args) -> int:
    rep = rote_instance_report(args.p)
    lines = [
        f"f(x, y) = xy + x^{rep.p_exponent} + y^{rep.q_exponent} over GF({rep.p}^2)",
        f"rote shape xy + P(x) + Q(y): {_fmt(rep.rote_shape)}",
        f"n = |GF({rep.p}^2)^*|: {rep.n}",
        f"|Z|: {rep.zero_count} (expected {rep.expected})",
        f"|Z| / n^(3/2): {rep.ratio:.6f}",
    ]
    _emit(args, rep.to_dict(), lines)
    return EXIT_OK if rep.rote_shape and rep.zero_count == rep.expected else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxturan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    g = sub.add_parser("gen", help="build the box-free hypergraph for (p, r)")
    g.add_argument("--p", type=_prime, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--mode", choices=("fast", "naive"), default="fast")
    g.add_argument("--out", help="edge-list path; the JSON report is written alongside with suffix .json")
    g.add_argument("--budget-evals", type=_positive, default=DEFAULT_EVAL_BUDGET)
    g.add_argument("--budget-pairs", type=_positive, default=DEFAULT_PAIR_BUDGET)
    g.add_argument("--max-field", type=_positive, default=DEFAULT_MAX_SIZE)
    common(g)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check an edge list for K_{2,...,2} copies and edge counts")
    v.add_argument("edges")
    v.add_argument("--p", type=_prime)
    v.add_argument("--r", type=int)
    v.add_argument("--budget-pairs", type=_positive, default=DEFAULT_PAIR_BUDGET)
    common(v)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="exact exponent comparison table")
    b.add_argument("--rmax", type=int, default=5)
    common(b)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("selftest", help="run the invariant battery")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-field", type=_positive, default=2**16)
    s.add_argument("--trials", type=_positive, default=1000)
    common(s)
    s.set_defaults(func=cmd_selftest)

    ro = sub.add_parser("rote", help="r = 2 instance read as xy + P(x) + Q(y)")
    ro.add_argument("--p", type=_prime, required=True)
    common(ro)
    ro.set_defaults(func=cmd_rote)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
