"""Variable-hiding abstraction: projection, origins, and the abstract model.

An abstraction keeps a subset of the base model's variables visible and may
carry synthetic boolean variables introduced by refinement.  Synthetic
variables are stored as valuation maps over concrete state ids (states not in
the map take the undefined value); the base model is never modified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import (
    KripkeModel,
    Predicate,
    PropertyFormula,
    State,
    UNDEF_TOKEN,
    Value,
    VariableDecl,
    predicate_atoms,
    render_value,
)
from .model import Eq, Prop

SYNTHETIC_DOMAIN = ("0", "1")


@dataclass
class SyntheticVar:
    """A refinement-added boolean variable, valued per concrete state id."""

    name: str
    valuation: dict[str, str]  # state id -> "0" | "1"; absent = undefined

    def value_at(self, sid: str) -> Value:
        return self.valuation.get(sid)


@dataclass
class Abstraction:
    base: KripkeModel
    visible: tuple[str, ...]  # base variable names, in declaration order
    synthetic: tuple[SyntheticVar, ...] = ()

    def __post_init__(self) -> None:
        base_names = list(self.base.variable_names)
        unknown = [v for v in self.visible if v not in base_names]
        if unknown:
            raise ValueError(f"visible variable {unknown[0]!r} not declared in model")
        # normalize to declaration order
        object.__setattr__(
            self, "visible", tuple(n for n in base_names if n in set(self.visible))
        )
        taken = set(base_names)
        for syn in self.synthetic:
            if syn.name in taken:
                raise ValueError(f"synthetic variable name {syn.name!r} already in use")
            taken.add(syn.name)
            bad = set(syn.valuation) - set(self.base.states)
            if bad:
                raise ValueError(f"synthetic {syn.name!r} values unknown state {sorted(bad)[0]!r}")

    @property
    def invisible(self) -> tuple[str, ...]:
        vis = set(self.visible)
        return tuple(n for n in self.base.variable_names if n not in vis)

    def variable_order(self) -> tuple[str, ...]:
        """All abstract variables: visible base ones, then synthetic ones."""
        return self.visible + tuple(s.name for s in self.synthetic)


def hide(model: KripkeModel, invisible: Iterable[str]) -> Abstraction:
    """Abstraction that hides the given base variables (and nothing else)."""
    hidden = set(invisible)
    unknown = hidden - set(model.variable_names)
    if unknown:
        raise ValueError(f"cannot hide undeclared variable {sorted(unknown)[0]!r}")
    visible = tuple(n for n in model.variable_names if n not in hidden)
    return Abstraction(model, visible)


@dataclass(frozen=True)
class AbstractState:
    """Projection of concrete states; the id is the canonical rendering of
    the assignment and identifies the state across runs."""

    id: str
    values: tuple[Value, ...]  # aligned with Abstraction.variable_order()


def _abstract_id(names: tuple[str, ...], values: tuple[Value, ...]) -> str:
    if not names:
        return "()"
    return ",".join(f"{n}={render_value(v)}" for n, v in zip(names, values))


def project(state: State | str, a: Abstraction) -> AbstractState:
    """The abstract state a concrete state maps to under ``a``."""
    if isinstance(state, str):
        if state not in a.base.states:
            raise ValueError(f"unknown state {state!r}")
        state = a.base.states[state]
    values = tuple(state.assignment[v] for v in a.visible) + tuple(
        syn.value_at(state.id) for syn in a.synthetic
    )
    return AbstractState(_abstract_id(a.variable_order(), values), values)


def origins(abstract_state: AbstractState, a: Abstraction) -> frozenset[str]:
    """Concrete state ids projecting to ``abstract_state`` (possibly empty)."""
    return frozenset(
        sid for sid in a.base.states if project(sid, a).values == abstract_state.values
    )


def origins_map(a: Abstraction) -> dict[str, frozenset[str]]:
    """Map abstract state id -> the set of its concrete origins."""
    groups: dict[str, set[str]] = {}
    for sid in a.base.state_ids:
        groups.setdefault(project(sid, a).id, set()).add(sid)
    return {aid: frozenset(sids) for aid, sids in groups.items()}


def build_abstract_model(a: Abstraction) -> KripkeModel:
    """Existential abstraction of the base model.

    Abstract states are the projections of all base states; a pair of
    abstract states is connected iff some pair of their origins is; labels
    are unioned over origins.
    """
    order = a.variable_order()
    decls = [a.base.variable(n) for n in a.visible] + [
        VariableDecl(s.name, SYNTHETIC_DOMAIN) for s in a.synthetic
    ]

    proj: dict[str, AbstractState] = {sid: project(sid, a) for sid in a.base.states}
    states: dict[str, State] = {}
    labels: dict[str, set[str]] = {}
    for sid in a.base.state_ids:
        ab = proj[sid]
        if ab.id not in states:
            states[ab.id] = State(ab.id, dict(zip(order, ab.values)))
        props = a.base.labels_of(sid)
        if props:
            labels.setdefault(ab.id, set()).update(props)

    initial = frozenset(proj[sid].id for sid in a.base.initial)
    transitions = frozenset(
        (proj[s].id, proj[t].id) for s, t in a.base.transitions
    )
    return KripkeModel(
        variables=decls,
        states=states,
        initial=initial,
        transitions=transitions,
        labels={aid: frozenset(ps) for aid, ps in labels.items()},
    )


def check_formula_visibility(formula: PropertyFormula, a: Abstraction) -> None:
    """Reject formulas whose truth cannot soundly transfer through ``a``.

    Variable atoms must reference visible base variables.  Proposition atoms
    are allowed only if, within every origin set, all states agree on the
    proposition (abstract labels are unioned over origins, so disagreement
    would make abstract satisfaction meaningless for the base model).
    """
    visible = set(a.visible)
    blocks = origins_map(a)
    for atom in predicate_atoms(formula.predicate):
        match atom:
            case Eq(var, _):
                if var not in set(a.base.variable_names):
                    raise ValueError(f"formula references undeclared variable {var!r}")
                if var not in visible:
                    raise ValueError(f"formula references invisible variable {var!r}")
            case Prop(name):
                for aid, sids in blocks.items():
                    memberships = {name in a.base.labels_of(sid) for sid in sids}
                    if len(memberships) > 1:
                        raise ValueError(
                            f"proposition {name!r} is inconsistent across the origins"
                            f" of abstract state {aid!r}"
                        )
