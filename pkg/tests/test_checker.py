import random

import networkx as nx
import pytest

from cegarmc import (
    Eq,
    FinitePath,
    KripkeModel,
    Lasso,
    Not,
    PropertyFormula,
    State,
    VariableDecl,
    build_abstract_model,
    check,
    hide,
    holds_on_path,
    parse_property,
    validate_path,
)
from cegarmc.randmodels import random_formula, random_model

from oracles import graph_of, oracle_check, reachable_states


def chain_model(*bits):
    """Linear model over one boolean variable with the given values."""
    states = {
        f"s{i}": State(f"s{i}", {"x": b}) for i, b in enumerate(bits, start=1)
    }
    transitions = {(f"s{i}", f"s{i+1}") for i in range(1, len(bits))}
    return KripkeModel(
        variables=[VariableDecl("x", ("0", "1"))],
        states=states,
        initial=frozenset({"s1"}),
        transitions=frozenset(transitions),
    )


def test_abstract_traffic_light_counterexample(traffic_light):
    am = build_abstract_model(hide(traffic_light, ["color"]))
    cex = check(am, parse_property("GF state=stop"))
    assert cex == Lasso(prefix=("state=stop",), loop=("state=go",))


def test_concrete_traffic_light_holds(traffic_light):
    assert check(traffic_light, parse_property("GF state=stop")) is None


def test_ag_on_single_state():
    model = chain_model("0")
    assert check(model, PropertyFormula("AG", Eq("x", "0"))) is None
    cex = check(model, PropertyFormula("AG", Eq("x", "1")))
    assert cex == FinitePath(("s1",))


def test_ag_counterexamples_are_shortest():
    rng = random.Random(5)
    for _ in range(60):
        model = random_model(rng, 3, max_states=8)
        formula = PropertyFormula("AG", Not(Eq("x1", "1")))
        cex = check(model, formula)
        if cex is None:
            continue
        bad = {
            s
            for s in reachable_states(model)
            if not formula.predicate(model.states[s].assignment, model.labels_of(s))
        }
        g = graph_of(model)
        best = min(
            nx.shortest_path_length(g, i, b) + 1
            for i in model.initial
            for b in bad
            if nx.has_path(g, i, b)
        )
        assert len(cex.states) == best


def test_gf_deadlock_is_not_a_counterexample():
    # the only violating run dies in a deadlock, so no lasso exists
    model = chain_model("0", "1", "1")
    assert check(model, PropertyFormula("GF", Eq("x", "0"))) is None


def test_verdicts_match_bruteforce_oracle():
    rng = random.Random(31)
    for _ in range(300):
        model = random_model(rng, rng.randint(1, 4), max_states=10)
        formula = random_formula(rng)
        cex = check(model, formula)
        assert (cex is None) == oracle_check(model, formula)
        if cex is not None:
            validate_path(model, cex)
            assert not holds_on_path(model, formula, cex)


def test_check_is_deterministic():
    rng = random.Random(77)
    for _ in range(40):
        model = random_model(rng, 3, max_states=12)
        formula = random_formula(rng)
        assert check(model, formula) == check(model, formula)


def test_holds_on_path_cases(traffic_light):
    gf = parse_property("GF state=stop")
    ag = parse_property("AG state=stop")
    cycle = Lasso(prefix=(), loop=("s1", "s2", "s3"))
    assert holds_on_path(traffic_light, gf, cycle)  # loop visits a stop state
    assert not holds_on_path(traffic_light, ag, cycle)
    assert holds_on_path(traffic_light, ag, FinitePath(("s1",)))
    faulty = Lasso(prefix=("s1",), loop=("s2",))
    with pytest.raises(ValueError, match="missing"):
        holds_on_path(traffic_light, gf, faulty)


def test_holds_on_path_loop_without_recurrence(faulty_traffic_light):
    gf = parse_property("GF state=stop")
    assert not holds_on_path(faulty_traffic_light, gf, Lasso(("s1",), ("s2",)))


def test_validate_path_rejects_noninitial_start(traffic_light):
    with pytest.raises(ValueError, match="initial"):
        validate_path(traffic_light, FinitePath(("s2", "s3")))
