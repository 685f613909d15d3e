import random

import pytest

from cegarmc import (
    BenchCase,
    CegarConfig,
    Lasso,
    RefinementError,
    Strategy,
    abstract_mc,
    check,
    holds_on_path,
    parse_model,
    parse_property,
    run_benchmark,
    validate_path,
)
from cegarmc.randmodels import random_case

GF_STOP = parse_property("GF state=stop")


def test_traffic_light_loop_converges(traffic_light):
    report = abstract_mc(traffic_light, GF_STOP, CegarConfig(frozenset({"color"})))
    assert report.final == "holds"
    assert report.total_iterations == 2
    first, second = report.iterations
    assert (first.abstract_states, first.abstract_transitions) == (2, 3)
    assert first.counterexample == Lasso(("state=stop",), ("state=go",))
    assert first.spurious is True
    assert first.added_variables == ("B1",)
    assert second.verdict == "holds"
    assert second.abstract_states == 3
    assert check(traffic_light, GF_STOP) is None  # direct check agrees


def test_faulty_traffic_light_reports_concrete_lasso(faulty_traffic_light):
    report = abstract_mc(faulty_traffic_light, GF_STOP, CegarConfig(frozenset({"color"})))
    assert report.final == "violated"
    assert report.witness == Lasso(("s1",), ("s2",))
    validate_path(faulty_traffic_light, report.witness)
    assert not holds_on_path(faulty_traffic_light, GF_STOP, report.witness)


def test_hide_nothing_is_a_single_direct_iteration(traffic_light, faulty_traffic_light):
    for model in (traffic_light, faulty_traffic_light):
        report = abstract_mc(model, GF_STOP, CegarConfig(frozenset()))
        direct = check(model, GF_STOP)
        assert report.total_iterations == 1
        assert (report.final == "holds") == (direct is None)


def test_formula_over_hidden_variable_rejected(traffic_light):
    with pytest.raises(ValueError, match="invisible"):
        abstract_mc(
            traffic_light,
            parse_property("GF color=red"),
            CegarConfig(frozenset({"color"})),
        )


def test_cap_exceeded_is_a_verdict(traffic_light):
    report = abstract_mc(traffic_light, GF_STOP, CegarConfig(frozenset({"color"}), iteration_cap=1))
    assert report.final == "cap-exceeded"
    assert report.total_iterations == 1


TWO_ROUTES = """
var pos : a | b | c | d
var idx : 1 | 2
state a1 : pos=a, idx=1
state b1 : pos=b, idx=1
state b2 : pos=b, idx=2
state c1 : pos=c, idx=1
state c2 : pos=c, idx=2
state d1 : pos=d, idx=1
init a1
trans a1 -> b1
trans b2 -> d1
trans a1 -> c1
trans c2 -> d1
"""


def test_fresh_variables_are_numbered_by_iteration():
    model = parse_model(TWO_ROUTES)
    formula = parse_property("AG !(pos=d)")
    report = abstract_mc(model, formula, CegarConfig(frozenset({"idx"})))
    assert report.final == "holds"
    assert report.total_iterations == 3
    assert report.iterations[0].added_variables == ("B1",)
    assert report.iterations[1].added_variables == ("B2",)


def test_smallest_strategies_converge_too():
    model = parse_model(TWO_ROUTES)
    formula = parse_property("AG !(pos=d)")
    for strategy in (Strategy.SMALLEST_DEAD, Strategy.SMALLEST_BAD):
        report = abstract_mc(model, formula, CegarConfig(frozenset({"idx"}), strategy))
        assert report.final == "holds"


INSEPARABLE = """
var x : q0 | q1 | q2
state a : x=q0
state t1 : x=q1
state t2 : x=q1
state g : x=q2
init a
trans a -> t1
trans t2 -> g
"""


def test_visible_minimal_cannot_split_twin_assignments():
    # t1 and t2 carry identical assignments; no variable separates them, but a
    # synthetic boolean (keyed by state id) still can
    model = parse_model(INSEPARABLE)
    formula = parse_property("AG !(x=q2)")
    with pytest.raises(RefinementError, match="no invisible variable"):
        abstract_mc(model, formula, CegarConfig(frozenset(), Strategy.VISIBLE_MINIMAL))
    report = abstract_mc(model, formula, CegarConfig(frozenset(), Strategy.EXTRA_VAR))
    assert report.final == "holds"
    assert check(model, formula) is None


def fixture_case(model, prop, hidden):
    return BenchCase("case", model, parse_property(prop), frozenset(hidden))


def test_benchmark_extra_var_beats_minimal_visible(splitting_cost):
    rows = run_benchmark(
        [fixture_case(splitting_cost, "AG !(x1=c)", {"x2", "x3"})],
        [Strategy.EXTRA_VAR, Strategy.VISIBLE_MINIMAL],
    )
    by_strategy = {row.strategy: row for row in rows}
    assert by_strategy[Strategy.EXTRA_VAR].verdict == "holds"
    assert (
        by_strategy[Strategy.EXTRA_VAR].final_abstract_states
        < by_strategy[Strategy.VISIBLE_MINIMAL].final_abstract_states
    )


def test_benchmark_identity_rows_agree(traffic_light):
    rows = run_benchmark(
        [fixture_case(traffic_light, "GF state=stop", set())], list(Strategy)
    )
    assert all(row.iterations == 1 for row in rows)
    assert len({(r.verdict, r.final_abstract_states, r.max_abstract_states) for r in rows}) == 1


def test_benchmark_strategies_agree_on_random_models():
    rng = random.Random(2023)
    cases = [random_case(rng, i, 6, max_states=48) for i in range(1, 51)]
    rows = run_benchmark(cases, list(Strategy))  # raises on any disagreement
    assert len(rows) == 50 * len(Strategy)
    assert all(row.verdict in ("holds", "violated") for row in rows)
