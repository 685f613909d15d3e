"""The abstraction / check / analyze / refine loop, plus a strategy benchmark.

Each iteration checks the current abstract model.  A counterexample is
analyzed against the base model; real ones are concretized and reported,
spurious ones drive one refinement step.  The abstract state count grows
strictly with every refinement, so the loop terminates within the number of
base states; the iteration cap is a belt-and-braces guard on top of that.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .abstraction import Abstraction, build_abstract_model, check_formula_visibility, hide
from .checker import Counterexample, check
from .model import KripkeModel, PropertyFormula, validate_model
from .refinement import (
    TO_BAD,
    TO_DEAD,
    minimal_separating_set,
    refine_extra_var,
    refine_smallest,
    refine_visible,
)
from .spurious import FailureAnalysis, check_spurious, concretize


class Strategy(Enum):
    EXTRA_VAR = "extra-var"
    SMALLEST_DEAD = "smallest-dead"
    SMALLEST_BAD = "smallest-bad"
    VISIBLE_MINIMAL = "visible-minimal"


class RefinementError(Exception):
    """The selected strategy cannot make progress on this model."""


class StrategyDisagreement(Exception):
    """Benchmark strategies reached different verdicts on one model."""


@dataclass
class CegarConfig:
    initial_invisible: frozenset[str]
    strategy: Strategy = Strategy.EXTRA_VAR
    iteration_cap: int | None = None  # None: 2 * |states|


@dataclass
class IterationRecord:
    abstraction: Abstraction
    abstract_model: KripkeModel
    abstract_states: int
    abstract_transitions: int
    verdict: str  # "holds" | "counterexample"
    counterexample: Counterexample | None = None
    spurious: bool | None = None
    failure: FailureAnalysis | None = None
    refinement: Strategy | None = None
    added_variables: tuple[str, ...] = ()


@dataclass
class CegarReport:
    final: str  # "holds" | "violated" | "cap-exceeded"
    iterations: list[IterationRecord] = field(default_factory=list)
    witness: Counterexample | None = None

    @property
    def total_iterations(self) -> int:
        return len(self.iterations)


def _fresh_name(a: Abstraction, index: int) -> str:
    taken = set(a.base.variable_names) | {s.name for s in a.synthetic}
    name = f"B{index}"
    while name in taken:  # base model already uses B<index>; rare, but legal input
        name += "_"
    return name


def _refine(a: Abstraction, f: FailureAnalysis, strategy: Strategy, index: int) -> tuple[Abstraction, tuple[str, ...]]:
    if strategy is Strategy.VISIBLE_MINIMAL:
        dead = [a.base.states[sid] for sid in sorted(f.dead)]
        bad = [a.base.states[sid] for sid in sorted(f.bad)]
        separating = minimal_separating_set(dead, bad, a.invisible)
        if separating is None:
            raise RefinementError(
                "no invisible variable separates the dead and bad states"
                f" of failure state {f.failure_state!r}"
            )
        return refine_visible(a, separating), tuple(sorted(separating))
    name = _fresh_name(a, index)
    if strategy is Strategy.EXTRA_VAR:
        return refine_extra_var(a, f, name), (name,)
    side = TO_DEAD if strategy is Strategy.SMALLEST_DEAD else TO_BAD
    return refine_smallest(a, f, side, name), (name,)


def abstract_mc(model: KripkeModel, formula: PropertyFormula, config: CegarConfig) -> CegarReport:
    """Run the full loop; the report records one entry per iteration.

    Real counterexamples are re-validated by concretization before being
    reported, and the returned witness is always a path of the base model.
    """
    violations = validate_model(model)
    if violations:
        raise ValueError(violations[0])
    abstraction = hide(model, config.initial_invisible)
    check_formula_visibility(formula, abstraction)
    cap = config.iteration_cap if config.iteration_cap is not None else max(1, 2 * len(model.states))

    iterations: list[IterationRecord] = []
    for index in range(1, cap + 1):
        abstract_model = build_abstract_model(abstraction)
        cex = check(abstract_model, formula)
        record = IterationRecord(
            abstraction=abstraction,
            abstract_model=abstract_model,
            abstract_states=len(abstract_model.states),
            abstract_transitions=len(abstract_model.transitions),
            verdict="holds" if cex is None else "counterexample",
            counterexample=cex,
        )
        iterations.append(record)
        if cex is None:
            return CegarReport("holds", iterations)
        failure = check_spurious(cex, abstraction)
        if failure is None:
            witness = concretize(cex, abstraction)
            assert witness is not None, "real counterexample must concretize"
            record.spurious = False
            return CegarReport("violated", iterations, witness=witness)
        record.spurious = True
        record.failure = failure
        abstraction, added = _refine(abstraction, failure, config.strategy, index)
        record.refinement = config.strategy
        record.added_variables = added
    return CegarReport("cap-exceeded", iterations)


# ---------------------------------------------------------------------------
# Benchmark harness
# ---------------------------------------------------------------------------


@dataclass
class BenchCase:
    name: str
    model: KripkeModel
    formula: PropertyFormula
    hidden: frozenset[str]


@dataclass
class BenchRow:
    model: str
    strategy: Strategy
    verdict: str
    iterations: int
    final_abstract_states: int
    max_abstract_states: int
    millis: int


def run_benchmark(
    cases: Iterable[BenchCase],
    strategies: Sequence[Strategy],
    iteration_cap: int | None = None,
) -> list[BenchRow]:
    """One row per case and strategy; verdict disagreement is a hard failure."""
    rows: list[BenchRow] = []
    for case in cases:
        verdicts: dict[Strategy, str] = {}
        for strategy in strategies:
            config = CegarConfig(case.hidden, strategy, iteration_cap)
            started = time.perf_counter()
            report = abstract_mc(case.model, case.formula, config)
            millis = int(round((time.perf_counter() - started) * 1000))
            rows.append(
                BenchRow(
                    model=case.name,
                    strategy=strategy,
                    verdict=report.final,
                    iterations=report.total_iterations,
                    final_abstract_states=report.iterations[-1].abstract_states,
                    max_abstract_states=max(r.abstract_states for r in report.iterations),
                    millis=millis,
                )
            )
            verdicts[strategy] = report.final
        if len(set(verdicts.values())) > 1:
            detail = ", ".join(f"{s.value}={v}" for s, v in verdicts.items())
            raise StrategyDisagreement(f"verdicts diverge on {case.name!r}: {detail}")
    return rows
