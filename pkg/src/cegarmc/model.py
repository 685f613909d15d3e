"""Kripke structures over finite-domain variables, plus predicate evaluation.

A model is a set of explicitly enumerated states, each a total valuation of
the declared variables.  Every variable ranges over its declared domain plus
the undefined value, written ``_`` in the concrete syntax and represented as
``None`` here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Optional

# The undefined value: a first-class member of every variable's range,
# ordered after all declared domain values.
Value = Optional[str]
UNDEF: Value = None
UNDEF_TOKEN = "_"


def render_value(v: Value) -> str:
    return UNDEF_TOKEN if v is None else v


@dataclass(frozen=True)
class VariableDecl:
    name: str
    domain: tuple[str, ...]

    def value_key(self, v: Value) -> int:
        """Sort key over domain ∪ {undefined}; undefined sorts last."""
        if v is None:
            return len(self.domain)
        return self.domain.index(v)


@dataclass
class State:
    """An explicit state: an id plus a total assignment of the model's variables."""

    id: str
    assignment: dict[str, Value]


@dataclass
class KripkeModel:
    variables: list[VariableDecl]
    states: dict[str, State]
    initial: frozenset[str]
    transitions: frozenset[tuple[str, str]]
    labels: dict[str, frozenset[str]] = field(default_factory=dict)

    # Treated as immutable after construction; cached views below rely on it.

    @cached_property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.variables)

    @cached_property
    def state_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.states))

    @cached_property
    def _succ(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {sid: [] for sid in self.states}
        for a, b in sorted(self.transitions):
            out[a].append(b)
        return {sid: tuple(ts) for sid, ts in out.items()}

    def variable(self, name: str) -> VariableDecl:
        for d in self.variables:
            if d.name == name:
                return d
        raise ValueError(f"unknown variable {name!r}")

    def successors(self, sid: str) -> tuple[str, ...]:
        """Successor state ids of ``sid``, sorted."""
        if sid not in self.states:
            raise ValueError(f"unknown state {sid!r}")
        return self._succ[sid]

    def labels_of(self, sid: str) -> frozenset[str]:
        return self.labels.get(sid, frozenset())

    @cached_property
    def propositions(self) -> frozenset[str]:
        props: set[str] = set()
        for ps in self.labels.values():
            props |= ps
        return frozenset(props)


def validate_model(model: KripkeModel) -> list[str]:
    """Check all structural invariants; returns a list of violations (empty = ok)."""
    errors: list[str] = []
    seen_vars: set[str] = set()
    for decl in model.variables:
        if not decl.name:
            errors.append("variable with empty name")
        if decl.name in seen_vars:
            errors.append(f"duplicate variable {decl.name!r}")
        seen_vars.add(decl.name)
        if not decl.domain:
            errors.append(f"variable {decl.name!r} has empty domain")
        if len(set(decl.domain)) != len(decl.domain):
            errors.append(f"variable {decl.name!r} has duplicate domain values")

    domains = {d.name: set(d.domain) for d in model.variables}
    for sid, state in model.states.items():
        if state.id != sid:
            errors.append(f"state {sid!r} keyed under a different id {state.id!r}")
        missing = set(domains) - set(state.assignment)
        for name in sorted(missing):
            errors.append(f"state {sid!r} does not assign variable {name!r}")
        for name, value in state.assignment.items():
            if name not in domains:
                errors.append(f"state {sid!r} assigns undeclared variable {name!r}")
            elif value is not None and value not in domains[name]:
                errors.append(
                    f"state {sid!r}: value {value!r} not in domain of {name!r}"
                )
    for sid in sorted(model.initial):
        if sid not in model.states:
            errors.append(f"unknown state {sid!r} in initial set")
    for a, b in sorted(model.transitions):
        for sid in (a, b):
            if sid not in model.states:
                errors.append(f"unknown state {sid!r} in transition {a!r} -> {b!r}")
    for sid in sorted(model.labels):
        if sid not in model.states:
            errors.append(f"unknown state {sid!r} in label declaration")
    return errors


# ---------------------------------------------------------------------------
# Predicates and temporal formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    """Atom ``var = value``; value None matches the undefined value."""

    var: str
    value: Value

    def __call__(self, assignment: Mapping[str, Value], labels: frozenset[str]) -> bool:
        if self.var not in assignment:
            raise ValueError(f"predicate references unknown variable {self.var!r}")
        return assignment[self.var] == self.value


@dataclass(frozen=True)
class Prop:
    name: str

    def __call__(self, assignment: Mapping[str, Value], labels: frozenset[str]) -> bool:
        return self.name in labels


@dataclass(frozen=True)
class Not:
    inner: "Predicate"

    def __call__(self, assignment: Mapping[str, Value], labels: frozenset[str]) -> bool:
        return not self.inner(assignment, labels)


@dataclass(frozen=True)
class And:
    parts: tuple["Predicate", ...]

    def __call__(self, assignment: Mapping[str, Value], labels: frozenset[str]) -> bool:
        return all(p(assignment, labels) for p in self.parts)


@dataclass(frozen=True)
class Or:
    parts: tuple["Predicate", ...]

    def __call__(self, assignment: Mapping[str, Value], labels: frozenset[str]) -> bool:
        return any(p(assignment, labels) for p in self.parts)


Predicate = Eq | Prop | Not | And | Or


@dataclass(frozen=True)
class PropertyFormula:
    """Either AG(predicate) (invariance) or GF(predicate) (recurrence)."""

    operator: str  # "AG" | "GF"
    predicate: Predicate

    def __post_init__(self) -> None:
        if self.operator not in ("AG", "GF"):
            raise ValueError(f"unsupported temporal operator {self.operator!r}")


def eval_predicate(state: State, labels: frozenset[str], pred: Predicate) -> bool:
    """Evaluate ``pred`` on a state's assignment and its proposition labels."""
    return pred(state.assignment, labels)


def predicate_atoms(pred: Predicate) -> Iterator[Eq | Prop]:
    match pred:
        case Eq() | Prop():
            yield pred
        case Not(inner):
            yield from predicate_atoms(inner)
        case And(parts) | Or(parts):
            for p in parts:
                yield from predicate_atoms(p)


def validate_predicate(model: KripkeModel, pred: Predicate) -> None:
    """Raise ValueError if an atom references an undeclared variable, a value
    outside its domain, or a proposition never used in the model's labels."""
    domains = {d.name: set(d.domain) for d in model.variables}
    for atom in predicate_atoms(pred):
        match atom:
            case Eq(var, value):
                if var not in domains:
                    raise ValueError(f"predicate references undeclared variable {var!r}")
                if value is not None and value not in domains[var]:
                    raise ValueError(f"value {value!r} not in domain of {var!r}")
            case Prop(name):
                if name not in model.propositions:
                    raise ValueError(f"predicate references unknown proposition {name!r}")
