"""Command line entry point.

Exit codes for ``check``: 0 the property holds, 1 a real counterexample was
found, 2 usage or parse errors, 3 iteration cap exceeded.  ``bench`` uses 0,
2, and 4 for cross-strategy verdict disagreement.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .cegar import (
    BenchCase,
    CegarConfig,
    RefinementError,
    Strategy,
    StrategyDisagreement,
    abstract_mc,
    run_benchmark,
)
from .parsing import ParseError, parse_model, parse_property
from .randmodels import random_case
from .reporting import export_dot, format_counterexample, write_bench_csv, write_report

EXIT_HOLDS = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_DISAGREEMENT = 4

_STRATEGY_NAMES = [s.value for s in Strategy]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cegarmc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="run the refinement loop on one model")
    chk.add_argument("--model", required=True, help=".kmod model file")
    chk.add_argument("--prop", required=True, help='property, e.g. "GF state=stop"')
    chk.add_argument("--hide", default="", help="comma-separated variables to hide")
    chk.add_argument("--strategy", choices=_STRATEGY_NAMES, default=Strategy.EXTRA_VAR.value)
    chk.add_argument("--cap", type=int, default=None, help="iteration cap (default 2*|S|)")
    chk.add_argument("--report", default=None, help="write the JSON run report here")
    chk.add_argument("--dot-dir", default=None, help="write per-iteration DOT dumps here")
    chk.add_argument("--plot-dir", default=None, help="write run figures here")

    ben = sub.add_parser("bench", help="compare refinement strategies")
    ben.add_argument("--models", default=None, help="directory of .kmod files")
    ben.add_argument("--strategies", default=",".join(_STRATEGY_NAMES))
    ben.add_argument("--seed", type=int, default=0, help="seed for --random")
    ben.add_argument("--random", default=None, metavar="N,K", help="add N random models over K boolean variables")
    ben.add_argument("--cap", type=int, default=None)
    ben.add_argument("--plot-dir", default=None, help="write comparison figures here")
    return parser


def _load_model(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}") from exc
    try:
        return parse_model(text), text
    except ParseError as exc:
        raise _Usage(f"{path}:{exc}") from exc


class _Usage(Exception):
    pass


def _cmd_check(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.model)
    try:
        formula = parse_property(args.prop)
    except ParseError as exc:
        raise _Usage(f"property: {exc}") from exc
    hidden = frozenset(n.strip() for n in args.hide.split(",") if n.strip())
    config = CegarConfig(hidden, Strategy(args.strategy), args.cap)
    try:
        report = abstract_mc(model, formula, config)
    except (ValueError, RefinementError) as exc:
        raise _Usage(str(exc)) from exc

    if args.report:
        Path(args.report).write_text(write_report(report), encoding="utf-8")
    if args.dot_dir:
        dot_dir = Path(args.dot_dir)
        dot_dir.mkdir(parents=True, exist_ok=True)
        for i, rec in enumerate(report.iterations, start=1):
            dot = export_dot(rec.abstract_model, rec.counterexample)
            (dot_dir / f"iter_{i}.dot").write_text(dot, encoding="utf-8")
    if args.plot_dir:
        from .figures import save_iteration_figure

        plot_dir = Path(args.plot_dir)
        plot_dir.mkdir(parents=True, exist_ok=True)
        save_iteration_figure(report, plot_dir / "iterations.png")

    print(f"verdict: {report.final} ({report.total_iterations} iteration(s))")
    if report.final == "violated":
        assert report.witness is not None
        print(f"counterexample: {format_counterexample(report.witness)}")
        return EXIT_VIOLATED
    if report.final == "cap-exceeded":
        print("iteration cap exceeded before a verdict", file=sys.stderr)
        return EXIT_CAP
    return EXIT_HOLDS


def _directives(text: str) -> dict[str, str]:
    found: dict[str, str] = {}
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped.startswith("#"):
            continue
        body = stripped.lstrip("#").strip()
        for key in ("prop", "hide"):
            prefix = key + ":"
            if body.startswith(prefix) and key not in found:
                found[key] = body[len(prefix):].strip()
    return found


def _bench_cases(args: argparse.Namespace) -> list[BenchCase]:
    cases: list[BenchCase] = []
    if args.models is not None:
        directory = Path(args.models)
        if not directory.is_dir():
            raise _Usage(f"not a directory: {args.models}")
        for path in sorted(directory.glob("*.kmod")):
            model, text = _load_model(str(path))
            directives = _directives(text)
            if "prop" not in directives:
                raise _Usage(f"{path}: missing `# prop: ...` directive")
            try:
                formula = parse_property(directives["prop"])
            except ParseError as exc:
                raise _Usage(f"{path}: property: {exc}") from exc
            hidden = frozenset(
                n.strip() for n in directives.get("hide", "").split(",") if n.strip()
            )
            cases.append(BenchCase(path.stem, model, formula, hidden))
    if args.random is not None:
        try:
            count_text, vars_text = args.random.split(",")
            count, n_vars = int(count_text), int(vars_text)
            if count < 1 or n_vars < 1:
                raise ValueError
        except ValueError:
            raise _Usage(f"--random expects N,K with positive integers, got {args.random!r}")
        rng = random.Random(args.seed)
        cases.extend(random_case(rng, i, n_vars) for i in range(1, count + 1))
    if args.models is None and args.random is None:
        raise _Usage("bench needs --models and/or --random")
    return cases


def _cmd_bench(args: argparse.Namespace) -> int:
    names = [n.strip() for n in args.strategies.split(",") if n.strip()]
    bad = [n for n in names if n not in _STRATEGY_NAMES]
    if bad or not names:
        raise _Usage(f"unknown strategy {bad[0]!r}" if bad else "no strategies given")
    strategies = [Strategy(n) for n in names]
    cases = _bench_cases(args)
    try:
        rows = run_benchmark(cases, strategies, args.cap)
    except StrategyDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (ValueError, RefinementError) as exc:
        raise _Usage(str(exc)) from exc
    sys.stdout.write(write_bench_csv(rows))
    if args.plot_dir and rows:
        from .figures import save_benchmark_figure

        plot_dir = Path(args.plot_dir)
        plot_dir.mkdir(parents=True, exist_ok=True)
        save_benchmark_figure(rows, plot_dir / "final_sizes.png")
    return EXIT_HOLDS


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        return _cmd_bench(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
