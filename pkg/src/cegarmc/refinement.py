"""Refinement of a failed abstraction.

The extra-variable strategies split only the failure state by adding one
synthetic boolean per refinement; the classical baseline makes invisible
base variables visible, for which the exact minimal separating set is
computed by subset enumeration.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .abstraction import Abstraction, SyntheticVar, origins_map
from .model import State
from .spurious import FailureAnalysis

TO_DEAD = "dead"
TO_BAD = "bad"


def _check_fresh(a: Abstraction, name: str) -> None:
    taken = set(a.base.variable_names) | {s.name for s in a.synthetic}
    if name in taken:
        raise ValueError(f"variable name {name!r} already in use")


def _check_failure(a: Abstraction, f: FailureAnalysis) -> None:
    block = origins_map(a).get(f.failure_state)
    if block is None:
        raise ValueError(f"unknown abstract state {f.failure_state!r}")
    if f.dead | f.bad | f.isolated != block:
        raise ValueError("failure analysis does not partition the failure state's origins")


def refine_extra_var(a: Abstraction, f: FailureAnalysis, fresh_name: str) -> Abstraction:
    """Add a synthetic boolean: 0 on the dead states, 1 on the bad states,
    undefined elsewhere.  Splits the failure state into two or three."""
    _check_fresh(a, fresh_name)
    _check_failure(a, f)
    valuation = {sid: "0" for sid in f.dead} | {sid: "1" for sid in f.bad}
    return Abstraction(a.base, a.visible, a.synthetic + (SyntheticVar(fresh_name, valuation),))


def refine_smallest(a: Abstraction, f: FailureAnalysis, side: str, fresh_name: str) -> Abstraction:
    """Like refine_extra_var but the isolated states join ``side`` ("dead" or
    "bad"), so the failure state splits into exactly two."""
    if side not in (TO_DEAD, TO_BAD):
        raise ValueError(f"side must be {TO_DEAD!r} or {TO_BAD!r}, got {side!r}")
    _check_fresh(a, fresh_name)
    _check_failure(a, f)
    zeros = f.dead | f.isolated if side == TO_DEAD else f.dead
    ones = f.bad | f.isolated if side == TO_BAD else f.bad
    valuation = {sid: "0" for sid in zeros} | {sid: "1" for sid in ones}
    return Abstraction(a.base, a.visible, a.synthetic + (SyntheticVar(fresh_name, valuation),))


def minimal_separating_set(
    dead: Iterable[State], bad: Iterable[State], invisible: Iterable[str]
) -> frozenset[str] | None:
    """Smallest set of invisible variables on which every dead/bad pair of
    states differs; ties broken lexicographically.  None if even the full
    invisible set fails (some pair has identical assignments on it).

    Exhaustive enumeration by increasing size; exponential, but exact.
    """
    dead = list(dead)
    bad = list(bad)
    if not dead or not bad:
        raise ValueError("dead and bad state sets must be nonempty")
    candidates = sorted(set(invisible))
    for size in range(1, len(candidates) + 1):
        for subset in combinations(candidates, size):
            if all(
                any(d.assignment[v] != b.assignment[v] for v in subset)
                for d in dead
                for b in bad
            ):
                return frozenset(subset)
    return None


def refine_visible(a: Abstraction, names: Iterable[str]) -> Abstraction:
    """Make the given invisible base variables visible."""
    names = set(names)
    invisible = set(a.invisible)
    bad = names - invisible
    if bad:
        raise ValueError(f"variable {sorted(bad)[0]!r} is not invisible")
    return Abstraction(a.base, a.visible + tuple(names), a.synthetic)
