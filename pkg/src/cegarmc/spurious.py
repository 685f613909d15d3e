"""Spurious-counterexample analysis over an abstraction.

For each position of an abstract path, ``In`` is the fixpoint of origins
reachable from the previous position's ``In`` set (one inter-block step, then
any number of steps inside the block), and ``Out`` is the fixpoint of origins
from which the next position's block can be reached without leaving the
current block.  A position whose ``In`` and ``Out`` sets are disjoint is a
failure: the path cannot be driven through it in the base model.

The matching notion of realization is therefore block-stuttering: a concrete
path may take several steps inside each block before moving on.  concretize()
searches the product of the base model with the path positions (with
stutter edges) and is the ground truth for lassos, where scanning one
unrolling of the loop is not conclusive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .abstraction import Abstraction, origins_map, project
from .checker import Counterexample, FinitePath, Lasso


@dataclass(frozen=True)
class FailureAnalysis:
    """The first failing position of an unrolled counterexample.

    ``unrollings`` records how many traversals of a lasso's loop were scanned
    before the failure appeared; 1 means the plain single-unrolling scan
    (always the case for finite paths).
    """

    failure_index: int  # 0-based position in the scanned unrolled path
    failure_state: str  # abstract state id
    dead: frozenset[str]
    bad: frozenset[str]
    isolated: frozenset[str]
    unrollings: int = 1

    def __post_init__(self) -> None:
        if not self.dead or not self.bad:
            raise ValueError("dead and bad sets of a failure must be nonempty")
        if self.dead & self.bad:
            raise ValueError("dead and bad sets must be disjoint")
        if self.isolated & (self.dead | self.bad):
            raise ValueError("isolated states overlap dead/bad")


class _Context:
    """Per-abstraction lookup tables shared by the analyses."""

    def __init__(self, a: Abstraction):
        base = a.base
        self.blocks = origins_map(a)
        self.initial_ids = base.initial
        self.succ = {sid: frozenset(base.successors(sid)) for sid in base.states}
        proj = {sid: project(sid, a).id for sid in base.states}
        self.abstract_initial = frozenset(proj[s] for s in base.initial)
        self.abstract_edges = frozenset((proj[s], proj[t]) for s, t in base.transitions)

    def block(self, aid: str) -> frozenset[str]:
        if aid not in self.blocks:
            raise ValueError(f"unknown abstract state {aid!r}")
        return self.blocks[aid]

    def forward_closure(self, seed: Iterable[str], block: frozenset[str]) -> frozenset[str]:
        result = set(seed)
        frontier = list(result)
        while frontier:
            s = frontier.pop()
            for t in self.succ[s]:
                if t in block and t not in result:
                    result.add(t)
                    frontier.append(t)
        return frozenset(result)

    def entry_set(self, sources: frozenset[str], block: frozenset[str]) -> frozenset[str]:
        return frozenset(t for s in sources for t in self.succ[s] if t in block)

    def out_closure(self, aid: str, next_aid: str) -> frozenset[str]:
        block = self.block(aid)
        target = self.block(next_aid)
        result = {s for s in block if self.succ[s] & target}
        while True:
            added = {s for s in block - result if self.succ[s] & result}
            if not added:
                return frozenset(result)
            result |= added


def _validate_abstract_path(path: Sequence[str], ctx: _Context) -> None:
    for aid in path:
        ctx.block(aid)
    for a, b in zip(path, path[1:]):
        if (a, b) not in ctx.abstract_edges:
            raise ValueError(f"not an abstract transition: {a!r} -> {b!r}")


def unroll(cex: Counterexample) -> tuple[str, ...]:
    """Finite prefix to scan: a lasso contributes one loop traversal plus a
    trailing copy of the loop head."""
    match cex:
        case FinitePath(states):
            return states
        case Lasso(prefix, loop):
            return prefix + loop + (loop[0],)
    raise TypeError(f"not a counterexample: {cex!r}")


def in_sets(path: Sequence[str], a: Abstraction) -> list[frozenset[str]]:
    """The In set of every path position (ids of abstract states).

    The first position starts from its initial origins; later positions are
    fed from the previous In set.  Each step closes under transitions that
    stay inside the position's block.
    """
    ctx = _Context(a)
    _validate_abstract_path(path, ctx)
    result: list[frozenset[str]] = []
    for i, aid in enumerate(path):
        block = ctx.block(aid)
        if i == 0:
            seed: frozenset[str] = block & ctx.initial_ids
        else:
            seed = ctx.entry_set(result[-1], block)
        result.append(ctx.forward_closure(seed, block))
    return result


def out_set(path: Sequence[str], i: int, a: Abstraction) -> frozenset[str]:
    """Origins of ``path[i]`` that can reach the next position's block without
    leaving their own block (0-based; the position must have a successor)."""
    if not 0 <= i < len(path) - 1:
        raise ValueError(f"position {i} has no successor in a path of length {len(path)}")
    ctx = _Context(a)
    _validate_abstract_path(path, ctx)
    return ctx.out_closure(path[i], path[i + 1])


def check_spurious(cex: Counterexample, a: Abstraction) -> FailureAnalysis | None:
    """First failure of ``cex`` against the base model, or None if it is real.

    The unrolled path is scanned left to right.  A lasso whose single
    unrolling scans clean is settled by concretize(); if that fails, loop
    traversals are appended until the (then guaranteed) failure position
    materializes, so the refinement step always gets a concrete partition.
    """
    ctx = _Context(a)
    path = unroll(cex)
    _validate_abstract_path(path, ctx)
    head = path[0]
    if head not in ctx.abstract_initial:
        raise ValueError(f"counterexample does not start at an abstract initial state: {head!r}")

    in_cur = ctx.forward_closure(ctx.block(head) & ctx.initial_ids, ctx.block(head))

    def fail(j: int, aid: str, out: frozenset[str], unrollings: int) -> FailureAnalysis:
        dead, bad = in_cur, out
        isolated = ctx.block(aid) - dead - bad
        return FailureAnalysis(j, aid, dead, bad, isolated, unrollings)

    def advance(j: int, nxt: str) -> FailureAnalysis | None:
        nonlocal in_cur
        out = ctx.out_closure(path_at(j), nxt)
        if not (in_cur & out):
            return fail(j, path_at(j), out, unrollings_at(j))
        block = ctx.block(nxt)
        in_cur = ctx.forward_closure(ctx.entry_set(in_cur, block), block)
        return None

    match cex:
        case FinitePath(_):
            prefix_len, loop = len(path), ()
        case Lasso(prefix, loop):
            prefix_len = len(prefix)

    def path_at(j: int) -> str:
        if j < len(path):
            return path[j]
        return loop[(j - prefix_len) % len(loop)]

    def unrollings_at(j: int) -> int:
        if not loop or j < prefix_len:
            return 1
        return (j - prefix_len) // len(loop) + 1

    for j in range(len(path) - 1):
        hit = advance(j, path[j + 1])
        if hit:
            return hit
    if isinstance(cex, FinitePath):
        return None
    if concretize(cex, a) is not None:
        return None

    # Unrealizable lasso: without a product cycle the In sets must run into a
    # failure within the product's node count.
    limit = sum(len(ctx.block(aid)) for aid in cex.prefix + cex.loop) + len(path) + 2
    j = len(path) - 1
    while j <= limit:
        hit = advance(j, path_at(j + 1))
        if hit:
            return hit
        j += 1
    raise AssertionError("unrealizable lasso produced no failure position")


# ---------------------------------------------------------------------------
# Exact concretization via product search
# ---------------------------------------------------------------------------


def _product_neighbors(
    node: tuple[str, int],
    blocks: list[frozenset[str]],
    advance_of: dict[int, int],
    succ: dict[str, frozenset[str]],
) -> list[tuple[str, int]]:
    sid, pos = node
    neighbors: set[tuple[str, int]] = set()
    for t in succ[sid]:
        if t in blocks[pos]:
            neighbors.add((t, pos))
        nxt = advance_of.get(pos)
        if nxt is not None and t in blocks[nxt]:
            neighbors.add((t, nxt))
    return sorted(neighbors, key=lambda n: (n[1], n[0]))


def _product_bfs(
    starts: list[tuple[str, int]],
    goal: tuple[str, int] | None,
    goal_pos: int | None,
    blocks: list[frozenset[str]],
    advance_of: dict[int, int],
    succ: dict[str, frozenset[str]],
) -> list[tuple[str, int]] | None:
    """Shortest product path from any start to ``goal`` (or any node at
    position ``goal_pos``); None if unreachable."""
    parents: dict[tuple[str, int], tuple[str, int] | None] = {s: None for s in starts}
    queue: deque[tuple[str, int]] = deque(starts)
    while queue:
        node = queue.popleft()
        if node == goal or (goal_pos is not None and node[1] == goal_pos):
            out = [node]
            while parents[out[-1]] is not None:
                out.append(parents[out[-1]])  # type: ignore[arg-type]
            return list(reversed(out))
        for nxt in _product_neighbors(node, blocks, advance_of, succ):
            if nxt not in parents:
                parents[nxt] = node
                queue.append(nxt)
    return None


def concretize(cex: Counterexample, a: Abstraction) -> Counterexample | None:
    """A concrete path of the base model realizing ``cex``, or None.

    A finite path is realized by driving through its blocks in order,
    stuttering inside blocks as needed.  A lasso is realized by a concrete
    lasso whose loop keeps cycling through the abstract loop's blocks, found
    as a reachable product cycle that makes at least one position step (a
    cycle of pure intra-block stutters does not traverse the loop).
    """
    ctx = _Context(a)
    _validate_abstract_path(unroll(cex), ctx)

    match cex:
        case FinitePath(states):
            blocks = [ctx.block(aid) for aid in states]
            advance_of = {i: i + 1 for i in range(len(states) - 1)}
            starts = sorted((sid, 0) for sid in blocks[0] & ctx.initial_ids)
            found = _product_bfs(starts, None, len(states) - 1, blocks, advance_of, ctx.succ)
            if found is None:
                return None
            return FinitePath(tuple(sid for sid, _ in found))

        case Lasso(prefix, loop):
            k, m = len(prefix), len(loop)
            blocks = [ctx.block(aid) for aid in prefix + loop]
            advance_of = {i: i + 1 for i in range(k + m - 1)}
            advance_of[k + m - 1] = k  # close the loop
            first = blocks[0] if prefix else blocks[k]
            starts = sorted((sid, 0 if prefix else k) for sid in first & ctx.initial_ids)
            if not starts:
                return None

            reachable: set[tuple[str, int]] = set(starts)
            queue: deque[tuple[str, int]] = deque(starts)
            while queue:
                node = queue.popleft()
                for nxt in _product_neighbors(node, blocks, advance_of, ctx.succ):
                    if nxt not in reachable:
                        reachable.add(nxt)
                        queue.append(nxt)

            # Position-stepping edges among reachable nodes, in deterministic order.
            for pos in range(k, k + m):
                nxt_pos = advance_of[pos]
                for sid in sorted(blocks[pos]):
                    if (sid, pos) not in reachable:
                        continue
                    for t in sorted(ctx.succ[sid]):
                        tail = (t, nxt_pos)
                        if t not in blocks[nxt_pos] or tail not in reachable:
                            continue
                        back = _product_bfs([tail], (sid, pos), None, blocks, advance_of, ctx.succ)
                        if back is None:
                            continue
                        stem = _product_bfs(starts, tail, None, blocks, advance_of, ctx.succ)
                        assert stem is not None  # tail is reachable
                        return Lasso(
                            prefix=tuple(s for s, _ in stem[:-1]),
                            loop=tuple(s for s, _ in back),
                        )
            return None
    raise TypeError(f"not a counterexample: {cex!r}")
