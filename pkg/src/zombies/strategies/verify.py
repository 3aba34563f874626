"""Exhaustive checks of a fixed deterministic policy against every opponent.

Both verifiers explore the graph whose nodes are ``(state, memory)`` pairs
of the fixed policy.  The fixed side contributes one edge per node, the
opponent every legal move.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable

from ..graph import Graph
from ..rules import GameState, IllegalMove, Rules, Side, apply, initial_state, pursuer_moves, survivor_moves
from ..solver import BudgetExceeded, state_budget
from .policy import Policy, PolicyError

Check = Callable[[object, object], "str | None"]


@dataclass
class PursuerReport:
    success: bool
    k: int
    placement: tuple[int, ...]
    worst_case_plies: int | None = None
    nodes: int = 0
    counterexample: list[GameState] = field(default_factory=list)
    reason: str = ""
    violations: list[str] = field(default_factory=list)

    @property
    def worst_case_rounds(self) -> int | None:
        return None if self.worst_case_plies is None else (self.worst_case_plies + 1) // 2


@dataclass
class SurvivorReport:
    success: bool
    k: int
    placements: int = 0
    nodes: int = 0
    max_pursuer_branching: int = 0
    counterexample: list[GameState] = field(default_factory=list)
    reason: str = ""
    violations: list[str] = field(default_factory=list)


def verify_pursuer_policy(g: Graph, rules: Rules, policy: Policy, k: int,
                          check: Check | None = None, budget: int | None = None) -> PursuerReport:
    """Does ``policy`` capture every survivor, whatever it does?

    Success means the explored graph is acyclic and every leaf is a
    capture; the worst case is the longest path in plies.
    """
    budget = state_budget() if budget is None else budget
    placement, mem0 = policy.initial()
    placement = tuple(sorted(placement))
    report = PursuerReport(False, k, placement)
    if len(placement) != k:
        report.reason = f"policy placed {len(placement)} pursuers, expected {k}"
        return report

    done: dict = {}  # node -> longest plies to capture
    on_path: set = set()

    def successors(node):
        state, mem = node
        if state.to_move is Side.PURSUERS:
            move, mem2 = policy.step(state, mem)
            return [(apply(state, move, g, rules), mem2)]
        return [(apply(state, v, g, rules), mem) for v in survivor_moves(state, g, rules)]

    def fail(path, reason):
        report.counterexample = [n[0] for n in path]
        report.reason = reason
        report.nodes = len(done)
        return report

    worst = 0
    for s0 in range(g.n):
        root = (initial_state(placement, s0, rules), mem0)
        if root[0].is_capture or root in done:
            worst = max(worst, done.get(root, 0))
            continue
        if check and (msg := check(None, root)):
            report.violations.append(msg)
        stack = [(root, None, 0)]
        path = [root]
        on_path.add(root)
        while stack:
            node, it, best = stack[-1]
            if it is None:
                try:
                    it = iter(successors(node))
                except (PolicyError, IllegalMove) as exc:
                    return fail(path, f"policy failed: {exc}")
                stack[-1] = (node, it, best)
            child = next(it, None)
            if child is None:
                stack.pop()
                path.pop()
                on_path.discard(node)
                done[node] = best
                if len(done) > budget:
                    raise BudgetExceeded(len(done), budget)
                if stack:
                    parent, pit, pbest = stack[-1]
                    stack[-1] = (parent, pit, max(pbest, best + 1))
                continue
            if check and (msg := check(node, child)):
                report.violations.append(msg)
            if child[0].is_capture:
                stack[-1] = (node, it, max(best, 1))
            elif child in on_path:
                return fail(path + [child], "survivor can evade forever")
            elif child in done:
                stack[-1] = (node, it, max(best, done[child] + 1))
            else:
                stack.append((child, None, 0))
                path.append(child)
                on_path.add(child)
        worst = max(worst, done[root])
    report.success = not report.violations
    report.worst_case_plies = worst
    report.nodes = len(done)
    if report.violations:
        report.reason = "invariant violations"
    return report


def verify_survivor_policy(g: Graph, rules: Rules, policy: Policy, k: int,
                           placements: Iterable | None = None, check: Check | None = None,
                           budget: int | None = None) -> SurvivorReport:
    """Does ``policy`` escape every placement of k pursuers and every pursuer choice?

    All reachable nodes are visited once (shared across placements); success
    means none of them is a capture, so every play eventually repeats.
    """
    budget = state_budget() if budget is None else budget
    report = SurvivorReport(False, k)
    if placements is None:
        placements = combinations_with_replacement(range(g.n), k)
    visited: set = set()

    for placement in placements:
        placement = tuple(placement)
        report.placements += 1
        try:
            start, smem = policy.initial(placement)
        except PolicyError as exc:
            report.reason = f"policy failed at placement {placement}: {exc}"
            return report
        root = (initial_state(placement, start, rules), smem)
        if check and (msg := check(None, root)):
            report.violations.append(msg)
        if root[0].is_capture:
            report.counterexample = [root[0]]
            report.reason = f"start {start} is occupied"
            return report
        if root in visited:
            continue
        visited.add(root)
        stack = [(root, None)]
        while stack:
            node, it = stack[-1]
            if it is None:
                state, mem = node
                try:
                    if state.to_move is Side.PURSUERS:
                        moves = pursuer_moves(state, g, rules)
                        report.max_pursuer_branching = max(report.max_pursuer_branching, len(moves))
                        children = [(apply(state, mv, g, rules), mem) for mv in moves]
                    else:
                        v, mem2 = policy.step(state, mem)
                        children = [(apply(state, v, g, rules), mem2)]
                except (PolicyError, IllegalMove) as exc:
                    report.counterexample = [n[0] for n, _ in stack]
                    report.reason = f"policy failed: {exc}"
                    return report
                it = iter(children)
                stack[-1] = (node, it)
            child = next(it, None)
            if child is None:
                stack.pop()
                continue
            if check and (msg := check(node, child)):
                report.violations.append(msg)
            if child[0].is_capture:
                report.counterexample = [n[0] for n, _ in stack] + [child[0]]
                report.reason = f"captured from placement {placement}"
                report.nodes = len(visited)
                return report
            if child not in visited:
                visited.add(child)
                if len(visited) > budget:
                    raise BudgetExceeded(len(visited), budget)
                stack.append((child, None))
    report.nodes = len(visited)
    report.success = not report.violations
    if report.violations:
        report.reason = "invariant violations"
    return report
