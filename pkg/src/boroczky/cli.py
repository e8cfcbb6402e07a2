"""Command-line front end.

Exit codes: 0 containment holds (or success), 3 containment fails,
1 internal error, 2 usage error.  JSON goes to stdout and is deterministic;
timings are written to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .arrangement import (LineArrangement, boroczky_lines, dual_hesse, incidence, plot_svg,
                          triple_points, verify_line_distribution)
from .groebner import Ideal, free_resolution
from .ideals import (RQ, NotThreeGenerated, bocci_harbourne, containment_direct, ghm_check,
                     hilbert_burch, product_of_lines, radical_ideal, seceleanu_check, symbolic_power)

EXIT_HOLDS, EXIT_ERROR, EXIT_USAGE, EXIT_FAILS = 0, 1, 2, 3
METHODS = ("direct", "bh", "ghm", "seceleanu")

log = logging.getLogger("boroczky")


class Timer:
    """Collects per-stage wall-clock times and reports them on stderr."""

    def __init__(self, tag: str = "", quiet: bool = False):
        self.tag = tag
        self.quiet = quiet
        self.stages: dict[str, float] = {}

    def __call__(self, stage: str):
        timer = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.stages[stage] = timer.stages.get(stage, 0.0) + time.perf_counter() - self.t0
                return False

        return _Stage()

    def emit(self):
        if self.quiet:
            return
        parts = " ".join(f"{k}={v:.2f}s" for k, v in self.stages.items())
        print(f"[timing] {self.tag} {parts}", file=sys.stderr, flush=True)


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get("BOROCZKY_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise SystemExit(f"BOROCZKY_THREADS must be an integer, got {cap!r}")
    return max(1, n)


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class ReportRow:
    n: int
    lines: int
    triple_points: int
    min_gens: list[int]
    methods: dict
    holds: bool
    witness: str | None = None
    timings: dict = field(default_factory=dict)

    def verdict(self) -> dict:
        return {"n": self.n, "triple_points": self.triple_points, "min_gens": self.min_gens,
                "methods": self.methods, "holds": self.holds, "witness": self.witness}


def analyze(arr: LineArrangement, methods=METHODS, quiet: bool = True) -> ReportRow:
    """Decide I^(3) in I^2 for the triple points of ``arr``.

    The direct test always runs unless every requested method is decisive,
    so the final verdict never rests on an inconclusive criterion.
    """
    timer = Timer(f"{arr.name} n={arr.n}", quiet)
    with timer("incidence"):
        T = triple_points(arr)
    by_orbit = arr.n >= 10
    with timer("ideal"):
        I = radical_ideal(T, by_orbit=by_orbit)
    out: dict = {}
    decided: bool | None = None
    I2 = I ** 2
    I3 = None
    if "bh" in methods:
        with timer("symbolic"):
            I3 = symbolic_power(T, 3, by_orbit=by_orbit)
        with timer("bh"):
            v = bocci_harbourne(I, I3)
        out["bh"] = v.to_json()
        if v.holds:
            decided = True
    A = None
    if "ghm" in methods or "seceleanu" in methods:
        try:
            with timer("hilbert-burch"):
                A = hilbert_burch(I)
        except NotThreeGenerated as e:
            for k in ("ghm", "seceleanu"):
                if k in methods:
                    out[k] = {"result": "not-applicable", "reason": str(e)}
    if A is not None and "ghm" in methods:
        with timer("ghm"):
            v = ghm_check(A)
        out["ghm"] = v.to_json()
        if v.holds:
            decided = True
    sec = None
    if A is not None and "seceleanu" in methods:
        with timer("seceleanu"):
            sec = seceleanu_check(I, A)
        out["seceleanu"] = sec.to_json()
        decided = sec.holds
    witness = None
    if "direct" in methods or decided is None:
        if I3 is None:
            with timer("symbolic"):
                I3 = symbolic_power(T, 3, by_orbit=by_orbit)
        with timer("direct"):
            v = containment_direct(I3, I2, product_of_lines(arr))
        out["direct"] = {k: val for k, val in v.to_json().items() if k != "witness"}
        if sec is not None and sec.holds != v.holds:
            raise ArithmeticError("Seceleanu criterion disagrees with the direct test")
        if decided is True and not v.holds:
            raise ArithmeticError("a sufficient criterion fired but the direct test fails")
        decided = v.holds
        if v.witness is not None:
            witness = v.witness.to_text()
    methods_sorted = {k: out[k] for k in METHODS if k in out}
    timer.emit()
    return ReportRow(arr.n, len(arr.lines), len(T), I.generator_degrees(), methods_sorted,
                     bool(decided), witness, dict(timer.stages))


def _analyze_n(n: int) -> ReportRow:
    return analyze(boroczky_lines(n), quiet=False)


def build_report(ns, workers: int = 1) -> list[ReportRow]:
    ns = sorted(ns)
    if workers <= 1 or len(ns) == 1:
        return [_analyze_n(n) for n in ns]
    with ProcessPoolExecutor(max_workers=min(workers, len(ns))) as pool:
        return list(pool.map(_analyze_n, ns))


def report_markdown(rows) -> str:
    head = "| n | lines | triple points | min gens | direct | BH (reg, alpha) | GHM | Seceleanu | verdict |"
    out = [head, "|" + "---|" * 9]
    for r in rows:
        m = r.methods
        bh = m.get("bh", {})
        bh_txt = f"{bh.get('result', '-')} ({bh.get('reg')}, {bh.get('alpha')})" if bh else "-"
        ghm = m.get("ghm", {})
        ghm_txt = ghm.get("result", "-")
        if "entry_gens" in ghm:
            ghm_txt += f" ({ghm['entry_gens']})"
        out.append(f"| {r.n} | {r.lines} | {r.triple_points} | {','.join(map(str, r.min_gens))} | "
                   f"{m.get('direct', {}).get('result', '-')} | {bh_txt} | {ghm_txt} | "
                   f"{m.get('seceleanu', {}).get('result', '-')} | {'holds' if r.holds else 'fails'} |")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected A..B")
    if lo < 4 or hi < lo:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 4 <= A <= B")
    return list(range(lo, hi + 1))


def _lines_count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if n < 4:
        raise argparse.ArgumentTypeError("Böröczky arrangements need n >= 4")
    if n > 24:
        raise argparse.ArgumentTypeError("n is capped at 24")
    return n


def _add_target(p, positional=True):
    if positional:
        p.add_argument("n", type=_lines_count, nargs="?", help="number of lines (4..24)")
    p.add_argument("--dual-hesse", action="store_true", help="use the 9-line dual-Hesse arrangement")
    p.add_argument("--arrangement", metavar="FILE", help="arrangement JSON (as written by generate --json)")


def _target(args, parser) -> LineArrangement:
    chosen = sum(bool(x) for x in (args.n, args.dual_hesse, args.arrangement))
    if chosen != 1:
        parser.error("give exactly one of N, --dual-hesse, --arrangement")
    if args.dual_hesse:
        return dual_hesse()
    if args.arrangement:
        return LineArrangement.from_json(json.loads(Path(args.arrangement).read_text()))
    return boroczky_lines(args.n)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boroczky", description="Böröczky arrangements and the I^(3) in I^2 question")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print an arrangement as JSON or SVG")
    p.set_defaults(parser=p)
    _add_target(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--svg", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("incidence", help="intersection points with multiplicities")
    p.set_defaults(parser=p)
    _add_target(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("ideal", help="minimal generators of I(T) or its symbolic power")
    p.set_defaults(parser=p)
    _add_target(p)
    p.add_argument("--power", type=int, default=1, help="symbolic power m")
    p.add_argument("--method", choices=("elimination", "interpolation"), default="elimination")
    p.add_argument("-o", "--output")

    p = sub.add_parser("resolve", help="Betti table of I^r (or of a generator file)")
    p.set_defaults(parser=p)
    _add_target(p)
    p.add_argument("--power", type=int, default=1, help="ordinary power r")
    p.add_argument("--ideal", metavar="FILE", help="generator file instead of an arrangement")
    p.add_argument("--differentials", action="store_true", help="include the differentials as text")
    p.add_argument("-o", "--output")

    p = sub.add_parser("contain", help="decide I^(3) in I^2")
    p.set_defaults(parser=p)
    _add_target(p)
    p.add_argument("--method", choices=("all",) + METHODS, default="all")
    p.add_argument("-o", "--output")

    p = sub.add_parser("report", help="verdict table over a range of n")
    p.set_defaults(parser=p)
    p.add_argument("span", nargs="?", type=_parse_range, metavar="A..B", help="same as --range")
    p.add_argument("--range", dest="range_", type=_parse_range, default=_parse_range("4..12"), metavar="A..B")
    p.add_argument("--json", action="store_true", help="print JSON instead of Markdown")
    p.add_argument("--json-out", metavar="FILE", help="also write the JSON table here")
    p.add_argument("-j", "--workers", type=int, default=None)

    p = sub.add_parser("fixtures", help="write fixture files")
    p.set_defaults(parser=p)
    p.add_argument("--dual-hesse", action="store_true")
    p.add_argument("--published-ideals", "--paper-ideals", dest="published", action="store_true",
                   help="the published generator lists for n = 10, 11")
    p.add_argument("--outdir", default="fixtures")

    p = sub.add_parser("plot", help="SVG drawing of an arrangement")
    p.set_defaults(parser=p)
    _add_target(p)
    p.add_argument("-o", "--output")
    p.add_argument("--size", type=int, default=600)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return _dispatch(args, ap)
    except SystemExit:
        raise
    except Exception as exc:  # reported, not re-raised: exit code 1 is the contract
        log.debug("internal error", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args, ap) -> int:
    cmd = args.command
    sp = args.parser
    if cmd == "generate":
        arr = _target(args, sp)
        _emit(plot_svg(arr) if args.svg else _dumps(arr.to_json()), args.output)
        return 0
    if cmd == "plot":
        arr = _target(args, sp)
        _emit(plot_svg(arr, size=args.size), args.output)
        return 0
    if cmd == "incidence":
        arr = _target(args, sp)
        rep = incidence(arr)
        obj = rep.to_json()
        obj["census"] = {str(k): v for k, v in rep.census().items()}
        if arr.name == "boroczky":
            verify_line_distribution(arr, rep)
        _emit(_dumps(obj), args.output)
        return 0
    if cmd == "ideal":
        if args.power < 1:
            sp.error("--power must be at least 1")
        arr = _target(args, sp)
        timer = Timer(f"ideal n={arr.n}")
        with timer("ideal"):
            T = triple_points(arr)
            I = symbolic_power(T, args.power, method=args.method, **(
                {"by_orbit": arr.n >= 10} if args.method == "elimination" else {}))
        timer.emit()
        gens = I.minimal_generators()
        obj = {"n": arr.n, "power": args.power, "field": I.ring.domain.tag,
               "min_gens": [g.degree() for g in gens], "generators": [g.to_text() for g in gens]}
        _emit(_dumps(obj), args.output)
        return 0
    if cmd == "resolve":
        if args.power < 1:
            sp.error("--power must be at least 1")
        timer = Timer("resolve")
        if args.ideal:
            if args.n or args.dual_hesse or args.arrangement:
                sp.error("--ideal excludes an arrangement target")
            from .fixtures import load_generators
            I = Ideal(load_generators(args.ideal), RQ)
        else:
            arr = _target(args, sp)
            with timer("ideal"):
                I = radical_ideal(triple_points(arr), by_orbit=arr.n >= 10)
        with timer("resolution"):
            P = I ** args.power
            res = free_resolution(P)
        timer.emit()
        obj = res.betti_table().to_json(alpha=P.alpha())
        if args.differentials:
            obj["differentials"] = [res.differential_text(i) for i in range(1, res.length + 1)]
        _emit(_dumps(obj), args.output)
        return 0
    if cmd == "contain":
        arr = _target(args, sp)
        if arr.name == "boroczky" and arr.n > 12:
            print(f"warning: n={arr.n} is beyond the supported range 4..12", file=sys.stderr)
        methods = METHODS if args.method == "all" else (args.method,)
        row = analyze(arr, methods, quiet=False)
        _emit(_dumps(row.verdict()), args.output)
        summary = f"{arr.name} n={arr.n}: I^(3) in I^2 {'holds' if row.holds else 'fails'}"
        print(summary + "; " + ", ".join(f"{k}={v['result']}" for k, v in row.methods.items()), file=sys.stderr)
        return EXIT_HOLDS if row.holds else EXIT_FAILS
    if cmd == "report":
        ns = args.span or args.range_
        if ns[-1] > 12:
            print("warning: rows beyond n=12 are experimental", file=sys.stderr)
        rows = build_report(ns, worker_count(args.workers))
        table = [r.verdict() for r in rows]
        if args.json_out:
            Path(args.json_out).write_text(_dumps(table))
        sys.stdout.write(_dumps(table) if args.json else report_markdown(rows))
        return 0
    if cmd == "fixtures":
        from .fixtures import write_fixtures
        dual, published = args.dual_hesse, args.published
        if not (dual or published):
            dual = published = True
        for p in write_fixtures(args.outdir, dual=dual, published=published):
            print(p)
        return 0
    ap.error(f"unknown command {cmd}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
