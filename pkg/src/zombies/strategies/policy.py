"""Procedural strategies with explicit, hashable memory.

A policy plays one side.  ``initial`` returns the opening (a placement for
pursuers, a start vertex for the survivor) together with the first memory
value; ``step`` maps ``(state, memory)`` to ``(move, memory')``.  Keeping the
memory explicit lets the verifiers treat ``(state, memory)`` pairs as the
nodes of a finite graph.
"""
from __future__ import annotations

from ..graph import Graph
from ..rules import GameState, Side
from ..solver import PositionalStrategy, SolveResult, extract_strategies


class PolicyError(RuntimeError):
    """A policy has no valid move for the position it was handed."""


class Policy:
    side: Side

    def initial(self, placement=None):
        raise NotImplementedError

    def step(self, state: GameState, memory):
        raise NotImplementedError


class PositionalPursuerPolicy(Policy):
    side = Side.PURSUERS

    def __init__(self, strategy: PositionalStrategy):
        if strategy.side is not Side.PURSUERS or strategy.placement is None:
            raise ValueError("need a pursuer strategy with a winning placement")
        self.strategy = strategy

    @property
    def k(self) -> int:
        return len(self.strategy.placement)

    def initial(self, placement=None):
        return tuple(self.strategy.placement), None

    def step(self, state, memory):
        try:
            return self.strategy.choice[state], memory
        except KeyError:
            raise PolicyError(f"pursuer strategy undefined at {state}") from None


class PositionalSurvivorPolicy(Policy):
    side = Side.SURVIVOR

    def __init__(self, strategy: PositionalStrategy, result: SolveResult):
        self.strategy = strategy
        self.result = result

    def initial(self, placement=None):
        return self.result.best_survivor_start(placement), None

    def step(self, state, memory):
        try:
            return self.strategy.choice[state], memory
        except KeyError:
            raise PolicyError(f"survivor strategy undefined at {state}") from None


def solver_policies(result: SolveResult, strategies=None) -> tuple[PositionalPursuerPolicy | None,
                                                                     PositionalSurvivorPolicy]:
    """Wrap a solve result; the pursuer policy is ``None`` when no placement wins."""
    pursuer, survivor = strategies or extract_strategies(result)
    p = PositionalPursuerPolicy(pursuer) if result.placement is not None else None
    return p, PositionalSurvivorPolicy(survivor, result)


class GreedyZombiePolicy(Policy):
    """Fixed placement; every zombie takes its smallest geodesic successor."""

    side = Side.PURSUERS

    def __init__(self, g: Graph, placement):
        self.g = g
        self.placement = tuple(sorted(placement))

    def initial(self, placement=None):
        return self.placement, None

    def step(self, state, memory):
        return tuple(self.g.geodesic_successors(z, state.survivor)[0] for z in state.pursuers), memory


class PassingSurvivorPolicy(Policy):
    """Starts at a fixed vertex (or the first free one) and never moves."""

    side = Side.SURVIVOR

    def __init__(self, g: Graph, start: int | None = None):
        self.g = g
        self.start = start

    def initial(self, placement=None):
        if self.start is not None:
            return self.start, None
        taken = set(placement or ())
        return next((v for v in range(self.g.n) if v not in taken), 0), None

    def step(self, state, memory):
        return state.survivor, memory

