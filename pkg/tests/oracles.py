"""Independent brute-force oracles the implementation is tested against.

These deliberately avoid the library's own search routines: verdicts come
from networkx graph algorithms, realizability from naive enumeration over
(state, position) pairs, and separating sets from trying every subset.
"""

from itertools import chain, combinations

import networkx as nx

from cegarmc import Abstraction, KripkeModel, PropertyFormula, origins_map


def graph_of(model: KripkeModel) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(model.states)
    g.add_edges_from(model.transitions)
    return g


def reachable_states(model: KripkeModel) -> set[str]:
    g = graph_of(model)
    reach = set(model.initial)
    for s in model.initial:
        reach |= nx.descendants(g, s)
    return reach


def oracle_check(model: KripkeModel, formula: PropertyFormula) -> bool:
    """Brute-force verdict: AG via reachability, GF via acyclicity of the
    reachable subgraph restricted to states violating the predicate."""
    reach = reachable_states(model)
    sat = {
        s
        for s in reach
        if formula.predicate(model.states[s].assignment, model.labels_of(s))
    }
    if formula.operator == "AG":
        return sat == reach
    bad = reach - sat
    return nx.is_directed_acyclic_graph(graph_of(model).subgraph(bad))


def oracle_realizable_finite(path: list[str], a: Abstraction) -> bool:
    """Naive search for a concrete run through the path's blocks in order,
    allowing any number of steps inside each block."""
    blocks = [origins_map(a).get(aid, frozenset()) for aid in path]
    base = a.base

    def explore(sid: str, pos: int, seen: set[tuple[str, int]]) -> bool:
        if pos == len(path) - 1:
            return True
        if (sid, pos) in seen:
            return False
        seen.add((sid, pos))
        for nxt in base.successors(sid):
            if nxt in blocks[pos + 1] and explore(nxt, pos + 1, seen):
                return True
            if nxt in blocks[pos] and explore(nxt, pos, seen):
                return True
        return False

    return any(explore(sid, 0, set()) for sid in sorted(blocks[0] & base.initial))


def oracle_realizable_lasso(prefix: list[str], loop: list[str], a: Abstraction) -> bool:
    """Naive cycle hunt in the lasso's product space: enumerate runs that may
    stutter inside blocks, and accept when a (state, loop position) pair
    repeats after at least one position step."""
    omap = origins_map(a)
    positions = [omap.get(aid, frozenset()) for aid in prefix + loop]
    k, m = len(prefix), len(loop)
    base = a.base

    def moves(sid: str, pos: int):
        for nxt in base.successors(sid):
            if nxt in positions[pos]:
                yield nxt, pos, False
            adv = k if pos == k + m - 1 else pos + 1
            if adv < k + m and nxt in positions[adv]:
                yield nxt, adv, True

    def run(sid: str, pos: int, trail: list[tuple[str, int]], advanced_at: set[int]) -> bool:
        node = (sid, pos)
        if node in trail:
            start = trail.index(node)
            return any(i >= start for i in advanced_at)
        trail.append(node)
        for nxt, npos, advanced in moves(sid, pos):
            marks = advanced_at | {len(trail) - 1} if advanced else advanced_at
            if run(nxt, npos, trail, marks):
                return True
        trail.pop()
        return False

    first = positions[0] if prefix else positions[k]
    start_pos = 0 if prefix else k
    return any(run(sid, start_pos, [], set()) for sid in sorted(first & base.initial))


def all_subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def oracle_separating_sets(dead, bad, invisible):
    """Every subset of the invisible variables that separates all dead/bad pairs."""
    winners = []
    for subset in all_subsets(invisible):
        if all(
            any(d.assignment[v] != b.assignment[v] for v in subset)
            for d in dead
            for b in bad
        ):
            winners.append(frozenset(subset))
    return winners
