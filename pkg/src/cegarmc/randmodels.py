"""Seeded random Kripke models for benchmarks and property tests.

States get distinct assignments (sampled without replacement from the value
cube), so any two states can be separated by some variable and the
visible-variable baseline is always applicable.
"""

from __future__ import annotations

import random
from itertools import product

from .cegar import BenchCase
from .model import Eq, KripkeModel, Not, PropertyFormula, State, VariableDecl


def random_model(
    rng: random.Random,
    n_vars: int,
    max_states: int | None = None,
    density: float | None = None,
) -> KripkeModel:
    """A model over boolean variables x1..x<n_vars> with distinct-state
    assignments, random edges, and at least one initial state."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    names = [f"x{i}" for i in range(1, n_vars + 1)]
    variables = [VariableDecl(name, ("0", "1")) for name in names]

    cube = ["".join(bits) for bits in product("01", repeat=n_vars)]
    limit = len(cube) if max_states is None else min(max_states, len(cube))
    n_states = rng.randint(2, max(2, limit))
    chosen = rng.sample(cube, n_states)
    states = {
        f"s{i:02d}": State(f"s{i:02d}", dict(zip(names, bits)))
        for i, bits in enumerate(chosen, start=1)
    }
    ids = sorted(states)

    if density is None:
        density = rng.uniform(1.0, 3.0) / n_states
    transitions = {
        (a, b) for a in ids for b in ids if rng.random() < density
    }
    n_initial = rng.randint(1, max(1, n_states // 8))
    initial = frozenset(rng.sample(ids, n_initial))
    return KripkeModel(
        variables=variables,
        states=states,
        initial=initial,
        transitions=frozenset(transitions),
        labels={},
    )


def random_formula(rng: random.Random) -> PropertyFormula:
    """AG or GF over x1, the variable kept visible by random_case."""
    value = rng.choice(["0", "1"])
    if rng.random() < 0.5:
        return PropertyFormula("AG", Not(Eq("x1", value)))
    return PropertyFormula("GF", Eq("x1", value))


def random_case(rng: random.Random, index: int, n_vars: int, max_states: int | None = None) -> BenchCase:
    """A benchmark case hiding every variable except x1."""
    model = random_model(rng, n_vars, max_states)
    formula = random_formula(rng)
    hidden = frozenset(n for n in model.variable_names if n != "x1")
    return BenchCase(f"random-{index:03d}", model, formula, hidden)
