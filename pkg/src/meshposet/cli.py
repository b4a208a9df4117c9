"""Command-line interface: ``meshposet <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import poset, stats
from .containment import merged_boxes, mesh_occurrences
from .errors import (
    BudgetExceeded,
    CornerShaded,
    EmptyPattern,
    MeshPatternError,
    NoZero,
    NotComparable,
    NotInGamma,
    PreconditionFailed,
    TooLarge,
)
from .pattern import MeshPattern, decompose, direct_sum, parse_pattern, random_mesh_pattern, skew_decompose, skew_sum
from .words import BOTTOM_GAMMA, gamma_to_word, mobius_word, mu_gamma_closed_form

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_NOT_COMPARABLE = 3
EXIT_BUDGET = 4
EXIT_ORACLE = 5
EXIT_PRECONDITION = 6

EPILOG = """\
patterns are written PERM|BOXES, e.g. "132|1,3;2,2"; "e|" is the empty pattern.

exit codes:
  0  success, or "true" for predicate commands (contains, purity)
  1  "false" for predicate commands
  2  malformed input (bad pattern text, box outside the grid, ...)
  3  the first pattern does not occur in the second
  4  budget or size cap exceeded
  5  Möbius recursion and chain-count oracle disagree
  6  precondition failed (shaded corner, pattern outside Γ, ...)
"""


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key, value, text=None):
        self.data[key] = value
        if text is not False:
            self.lines.append(text if text is not None else f"{key.replace('_', ' ')}: {_fmt(value)}")

    def flush(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return ", ".join(f"{k}: {v}" for k, v in value.items())
    return str(value)


def _occ(eta) -> str:
    return "(" + ",".join(str(q) for q in eta) + ")"


def cmd_contains(args) -> int:
    m, p = parse_pattern(args.m), parse_pattern(args.p)
    occ = mesh_occurrences(m, p)
    out = _Out(args.json)
    out.put("contains", bool(occ))
    if args.witness:
        out.put("occurrences", [list(e) for e in occ], False)
        out.lines.extend(_occ(e) for e in occ)
    out.flush()
    return EXIT_TRUE if occ else EXIT_FALSE


def cmd_interval(args) -> int:
    m, p = parse_pattern(args.m), parse_pattern(args.p)
    I = poset.interval(m, p, args.budget, args.max_len)
    if args.export == "dot":
        sys.stdout.write(poset.to_dot(I))
        return EXIT_TRUE
    report = poset.interval_report(I)
    if args.export == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_TRUE
    out = _Out(args.json)
    out.put("elements", len(I))
    out.put("covers", len(I.covers))
    out.put("mobius", report["mobius"][str(p)])
    st = report["stats"]
    if args.stats:
        out.put("pure", st["pure"])
        out.put("dimension", st["dimension"])
        out.put("chain_lengths", {int(k): v for k, v in sorted(st["chain_lengths"].items(), key=lambda kv: int(kv[0]))})
        out.put("components", st["components"])
        out.put("nontrivial_components", st["nontrivial_components"])
        out.put("strongly_disconnected", st["strongly_disconnected"])
        try:
            shelling = poset.find_shelling(poset.order_complex(I), args.shelling_cap, args.full_overlap)
            out.put("shellable", shelling is not None)
        except BudgetExceeded:
            out.put("shellable", "unknown (facet cap)")
        if m == MeshPattern((1,)):
            formula = poset.formula_dimension(p)
            out.put("dimension_formula", formula)
            out.put(
                "note",
                f"formula |perm|+|shading| = {formula}, longest chain has {st['dimension']} edges",
            )
    out.flush()
    return EXIT_TRUE


def cmd_mobius(args) -> int:
    m, p = parse_pattern(args.m), parse_pattern(args.p)
    value = poset.mobius(m, p, args.budget, args.max_len)
    out = _Out(args.json)
    out.put("mobius", value, str(value) if not args.oracle else None)
    code = EXIT_TRUE
    if args.oracle:
        check = poset.mobius_via_chains(m, p, args.budget, args.max_len)
        out.put("oracle", check)
        if check != value:
            out.put("mismatch", True)
            code = EXIT_ORACLE
    out.flush()
    return code


def cmd_purity(args) -> int:
    m = parse_pattern(args.m)
    witnesses = poset.nonpurity_witnesses(m)
    out = _Out(args.json)
    out.put("nonpure", bool(witnesses))
    rows = []
    for w in witnesses:
        merged = merged_boxes(m, w["point"])
        rows.append(
            {
                "point": w["point"],
                "deleted": str(w["deleted"]),
                "merged": {f"{a},{b}": [f"{x},{y}" for x, y in sorted(v)] for (a, b), v in merged.items()},
            }
        )
        groups = "; ".join(
            f"({a},{b}) <- " + " ".join(f"({x},{y})" for x, y in sorted(v)) for (a, b), v in merged.items()
        )
        out.lines.append(f"witness point {w['point']}: {w['deleted']} merges {groups}")
    out.data["witnesses"] = rows
    out.flush()
    return EXIT_TRUE if witnesses else EXIT_FALSE


def cmd_gamma(args) -> int:
    m = parse_pattern(args.m)
    word = gamma_to_word(m)
    out = _Out(args.json)
    out.put("word", word)
    out.put("mu_closed_form", mu_gamma_closed_form(m))
    out.put("mu_word", mobius_word("0", word))
    if args.poset:
        out.put("mu_poset", poset.mobius(BOTTOM_GAMMA, m, args.budget, args.max_len))
    out.flush()
    return EXIT_TRUE


def cmd_sum(args) -> int:
    s, t = parse_pattern(args.s), parse_pattern(args.t)
    result = skew_sum(s, t) if args.skew else direct_sum(s, t)
    out = _Out(args.json)
    out.put("pattern", str(result), str(result))
    out.flush()
    return EXIT_TRUE


def cmd_decompose(args) -> int:
    m = parse_pattern(args.m)
    parts = skew_decompose(m) if args.skew else decompose(m)
    out = _Out(args.json)
    out.put("parts", [str(q) for q in parts], False)
    out.lines.extend(str(q) for q in parts)
    out.flush()
    return EXIT_TRUE


def cmd_stats(args) -> int:
    if args.exact:
        out = _Out(args.json)
        values = {}
        for n in args.n:
            value = stats.exact_proportion(n)
            values[str(n)] = str(value)
            out.lines.append(f"{n}\t{value}\t{float(value):.6f}")
        out.data["exact"] = values
        out.flush()
        return EXIT_TRUE
    rows = []
    for n in args.n:
        est = stats.estimate_proportion(n, args.samples, args.seed, args.q, args.workers)
        rows.append(
            {"n": n, "samples": args.samples, "value": est.value, "half_width": est.half_width,
             "bound_8_over_n": stats.bound(n)}
        )
    if args.json:
        print(json.dumps({"model": stats.MODEL, "seed": args.seed, "rows": rows}, indent=2, sort_keys=True))
    else:
        sys.stdout.write(stats.to_tsv(rows))
    return EXIT_TRUE


def cmd_random(args) -> int:
    m = random_mesh_pattern(args.n, args.q, args.seed)
    out = _Out(args.json)
    out.put("pattern", str(m), str(m))
    out.flush()
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--plain", action="store_true", help="plain ASCII output (output is already uncoloured)")
    common.add_argument("--budget", type=int, default=poset.DEFAULT_BUDGET, help="cap on candidate patterns")
    common.add_argument("--max-len", type=int, default=poset.DEFAULT_MAX_LEN, help="cap on interval top length")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--shelling-cap", type=int, default=poset.DEFAULT_SHELLING_CAP, help="max facets searched")
    common.add_argument("--full-overlap", action="store_true", help="require full-dimensional overlaps")

    parser = argparse.ArgumentParser(
        prog="meshposet",
        description="Mesh pattern containment, intervals and Möbius values.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, epilog=EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("contains", cmd_contains, "does the first pattern occur in the second")
    p.add_argument("m")
    p.add_argument("p")
    p.add_argument("--witness", action="store_true", help="list every occurrence")

    p = add("interval", cmd_interval, "summarise the interval [m, p]")
    p.add_argument("m")
    p.add_argument("p")
    p.add_argument("--export", choices=["dot", "json"])
    p.add_argument("--stats", action="store_true", help="chains, purity, components, shellability")

    p = add("mobius", cmd_mobius, "Möbius value of [m, p]")
    p.add_argument("m")
    p.add_argument("p")
    p.add_argument("--oracle", action="store_true", help="cross-check by counting chains")

    p = add("purity", cmd_purity, "is [1, m] nonpure, with witnesses")
    p.add_argument("m")

    p = add("gamma", cmd_gamma, "binary word and Möbius values for a pattern of Γ")
    p.add_argument("m")
    p.add_argument("--poset", action="store_true", help="also compute μ by interval recursion")

    p = add("sum", cmd_sum, "direct (or skew) sum of two patterns")
    p.add_argument("s")
    p.add_argument("t")
    p.add_argument("--skew", action="store_true")

    p = add("decompose", cmd_decompose, "split into sum-indecomposable parts")
    p.add_argument("m")
    p.add_argument("--skew", action="store_true")

    p = add("stats", cmd_stats, "share of patterns containing a corner-shaded singleton")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="full enumeration, n <= 3")

    p = add("random", cmd_random, "draw a random mesh pattern")
    p.add_argument("n", type=int)
    p.add_argument("--q", type=float, default=0.5)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotComparable as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_COMPARABLE
    except (BudgetExceeded, TooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionFailed, CornerShaded, NotInGamma, NoZero, EmptyPattern) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MeshPatternError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
