"""Run artifacts: DOT graphs, the JSON run report, and the benchmark CSV."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .cegar import BenchRow, CegarReport
from .checker import Counterexample, FinitePath, Lasso
from .model import KripkeModel, render_value


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _quote(text: str) -> str:
    return f'"{_escape(text)}"'


def _label(*rows: str) -> str:
    return '"' + "\\n".join(_escape(r) for r in rows) + '"'


def _highlight_edges(cex: Counterexample) -> set[tuple[str, str]]:
    match cex:
        case FinitePath(states):
            return set(zip(states, states[1:]))
        case Lasso(prefix, loop):
            seq = prefix + loop
            edges = set(zip(seq, seq[1:]))
            edges.add((loop[-1], loop[0]))
            return edges
    raise TypeError(f"not a counterexample: {cex!r}")


def _path_states(cex: Counterexample) -> tuple[str, ...]:
    match cex:
        case FinitePath(states):
            return states
        case Lasso(prefix, loop):
            return prefix + loop
    raise TypeError(f"not a counterexample: {cex!r}")


def export_dot(model: KripkeModel, highlight: Counterexample | None = None) -> str:
    """A deterministic DOT digraph; a highlighted counterexample's edges
    (including a lasso's closing edge) are drawn bold red."""
    marked: set[tuple[str, str]] = set()
    if highlight is not None:
        unknown = [sid for sid in _path_states(highlight) if sid not in model.states]
        if unknown:
            raise ValueError(f"highlight references unknown state {unknown[0]!r}")
        marked = _highlight_edges(highlight)

    lines = ["digraph kripke {", "  rankdir=LR;", '  node [shape=box, fontname="Helvetica"];']
    for sid in sorted(model.states):
        state = model.states[sid]
        assignment = ", ".join(
            f"{d.name}={render_value(state.assignment[d.name])}" for d in model.variables
        )
        attrs = [f"label={_label(sid, assignment)}"]
        if sid in model.initial:
            attrs.append("peripheries=2")
        lines.append(f"  {_quote(sid)} [{', '.join(attrs)}];")
    for a, b in sorted(model.transitions):
        style = ' [color=red, penwidth=2.0]' if (a, b) in marked else ""
        lines.append(f"  {_quote(a)} -> {_quote(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def counterexample_to_json(cex: Counterexample) -> dict:
    match cex:
        case FinitePath(states):
            return {"kind": "finite", "states": list(states)}
        case Lasso(prefix, loop):
            return {"kind": "lasso", "prefix": list(prefix), "loop": list(loop)}
    raise TypeError(f"not a counterexample: {cex!r}")


def format_counterexample(cex: Counterexample) -> str:
    match cex:
        case FinitePath(states):
            return " -> ".join(states)
        case Lasso(prefix, loop):
            head = " -> ".join(prefix)
            cycle = " -> ".join(loop)
            return (f"{head} -> " if head else "") + f"({cycle})^w"
    raise TypeError(f"not a counterexample: {cex!r}")


def write_report(report: CegarReport) -> str:
    """The JSON run report: per-iteration sizes, verdicts and refinement
    actions, plus the final verdict (and concrete witness, if violated)."""
    entries = []
    for i, rec in enumerate(report.iterations, start=1):
        entry: dict = {
            "index": i,
            "abstract_states": rec.abstract_states,
            "abstract_transitions": rec.abstract_transitions,
            "verdict": rec.verdict,
        }
        if rec.counterexample is not None:
            entry["counterexample"] = counterexample_to_json(rec.counterexample)
        if rec.spurious is not None:
            entry["spurious"] = rec.spurious
        if rec.failure is not None:
            entry["failure_state"] = rec.failure.failure_state
            entry["dead_count"] = len(rec.failure.dead)
            entry["bad_count"] = len(rec.failure.bad)
            entry["isolated_count"] = len(rec.failure.isolated)
        if rec.refinement is not None:
            entry["refinement"] = rec.refinement.value
            entry["added_variable"] = ",".join(rec.added_variables)
        entries.append(entry)

    doc: dict = {
        "final_verdict": report.final,
        "total_iterations": report.total_iterations,
        "iterations": entries,
    }
    if report.witness is not None:
        doc["witness"] = counterexample_to_json(report.witness)
    return json.dumps(doc, indent=2) + "\n"


BENCH_COLUMNS = (
    "model",
    "strategy",
    "verdict",
    "iterations",
    "final_abstract_states",
    "max_abstract_states",
    "millis",
)


def write_bench_csv(rows: Iterable[BenchRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.model,
                row.strategy.value,
                row.verdict,
                row.iterations,
                row.final_abstract_states,
                row.max_abstract_states,
                row.millis,
            ]
        )
    return buffer.getvalue()
