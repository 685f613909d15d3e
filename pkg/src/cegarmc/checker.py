"""Model checking AG/GF properties on explicit Kripke models.

AG violations are shortest finite paths to a failing state (BFS); GF
violations are lassos whose loop avoids the recurrence predicate.  All
searches iterate states in sorted order, so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .model import KripkeModel, PropertyFormula, validate_predicate


@dataclass(frozen=True)
class FinitePath:
    states: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("finite counterexample must contain a state")


@dataclass(frozen=True)
class Lasso:
    prefix: tuple[str, ...]
    loop: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")


Counterexample = FinitePath | Lasso


def validate_path(model: KripkeModel, cex: Counterexample) -> None:
    """Raise ValueError unless ``cex`` is a path of ``model`` from an initial state."""

    def check_edges(seq: tuple[str, ...]) -> None:
        for sid in seq:
            if sid not in model.states:
                raise ValueError(f"path references unknown state {sid!r}")
        for a, b in zip(seq, seq[1:]):
            if (a, b) not in model.transitions:
                raise ValueError(f"path uses missing transition {a!r} -> {b!r}")

    match cex:
        case FinitePath(states):
            check_edges(states)
            if states[0] not in model.initial:
                raise ValueError(f"path does not start at an initial state: {states[0]!r}")
        case Lasso(prefix, loop):
            check_edges(prefix + loop)
            head = prefix[0] if prefix else loop[0]
            if head not in model.initial:
                raise ValueError(f"lasso does not start at an initial state: {head!r}")
            if (loop[-1], loop[0]) not in model.transitions:
                raise ValueError(
                    f"lasso loop does not close: missing {loop[-1]!r} -> {loop[0]!r}"
                )


def _satisfies(model: KripkeModel, sid: str, formula: PropertyFormula) -> bool:
    state = model.states[sid]
    return formula.predicate(state.assignment, model.labels_of(sid))


def _reachable(model: KripkeModel) -> tuple[dict[str, str | None], tuple[str, ...]]:
    """BFS over the whole model; returns (parent map, states in BFS order)."""
    parents: dict[str, str | None] = {}
    order: list[str] = []
    queue: deque[str] = deque()
    for sid in sorted(model.initial):
        parents[sid] = None
        order.append(sid)
        queue.append(sid)
    while queue:
        current = queue.popleft()
        for nxt in model.successors(current):
            if nxt not in parents:
                parents[nxt] = current
                order.append(nxt)
                queue.append(nxt)
    return parents, tuple(order)


def _walk_back(parents: dict[str, str | None], sid: str) -> tuple[str, ...]:
    path = [sid]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])  # type: ignore[arg-type]
    return tuple(reversed(path))


def _shortest_loop(model: KripkeModel, head: str, allowed: frozenset[str]) -> tuple[str, ...]:
    """Shortest cycle head -> ... -> head staying inside ``allowed``."""
    if (head, head) in model.transitions:
        return (head,)
    parents: dict[str, str | None] = {}
    queue: deque[str] = deque()
    for nxt in model.successors(head):
        if nxt in allowed and nxt not in parents:
            parents[nxt] = None
            queue.append(nxt)
    while queue:
        current = queue.popleft()
        if (current, head) in model.transitions:
            back = [current]
            while parents[back[-1]] is not None:
                back.append(parents[back[-1]])  # type: ignore[arg-type]
            return (head,) + tuple(reversed(back))
        for nxt in model.successors(current):
            if nxt in allowed and nxt not in parents:
                parents[nxt] = current
                queue.append(nxt)
    raise ValueError(f"no cycle through {head!r}")  # caller guarantees one exists


def _on_cycle(model: KripkeModel, sid: str, allowed: frozenset[str]) -> bool:
    """Can ``sid`` reach itself through states in ``allowed``?"""
    seen: set[str] = set()
    stack = [n for n in model.successors(sid) if n in allowed]
    while stack:
        current = stack.pop()
        if current == sid:
            return True
        if current in seen:
            continue
        seen.add(current)
        stack.extend(n for n in model.successors(current) if n in allowed)
    return False


def check(model: KripkeModel, formula: PropertyFormula) -> Counterexample | None:
    """Check ``formula`` on ``model``; returns None if it holds.

    AG p fails on the shortest reachable path to a state violating p.
    GF p fails on a reachable lasso whose loop contains no p-state; the loop
    head is the sorted-first violating state lying on such a cycle.
    """
    validate_predicate(model, formula.predicate)
    parents, order = _reachable(model)

    if formula.operator == "AG":
        for sid in order:  # BFS order: first hit is a shortest violation
            if not _satisfies(model, sid, formula):
                return FinitePath(_walk_back(parents, sid))
        return None

    bad = frozenset(sid for sid in parents if not _satisfies(model, sid, formula))
    for head in sorted(bad):
        if _on_cycle(model, head, bad):
            loop = _shortest_loop(model, head, bad)
            path_to_head = _walk_back(parents, head)
            return Lasso(prefix=path_to_head[:-1], loop=loop)
    return None


def holds_on_path(model: KripkeModel, formula: PropertyFormula, cex: Counterexample) -> bool:
    """Truth of ``formula`` on one path, with lassos read as infinite unrollings.

    GF on a finite path is False: a finite path fixes no infinite behaviour
    in which the predicate could recur forever.
    """
    validate_path(model, cex)
    match cex, formula.operator:
        case FinitePath(states), "AG":
            return all(_satisfies(model, sid, formula) for sid in states)
        case FinitePath(_), "GF":
            return False
        case Lasso(prefix, loop), "AG":
            return all(_satisfies(model, sid, formula) for sid in prefix + loop)
        case Lasso(_, loop), "GF":
            return any(_satisfies(model, sid, formula) for sid in loop)
    raise TypeError(f"not a counterexample: {cex!r}")
