"""Survivor strategy on petal graphs against at most k - 1 zombies.

The survivor settles in a copy whose cycles hold no zombie off the hub and
works through stages i = 1..k.  At stage i it keeps walking the cycle of
length 2^(i+2) - 3 clockwise, one full circuit at a time, for as long as the
i-th closest zombie is at distance at least 2^(i+2) - 1; otherwise it moves
on to the next stage.  Missing zombies count as infinitely far, so the last
stage is never left.

Distances are always taken with the zombies about to move: at placement
they are measured to the start vertex, and afterwards the stage test runs
at the instant the survivor steps onto the hub, before the zombies reply.
With either choice made one ply later the bounds are off by the survivor's
lead and a close zombie can end up more than half a cycle behind.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..graph import Graph, PetalDescriptor
from ..rules import ZOMBIE_RULES, GameState, Rules, Side
from .policy import Policy, PolicyError


def stay_threshold(i: int) -> int:
    """Stage i continues while the i-th closest zombie is at least this far."""
    return 2 ** (i + 2) - 1


def close_threshold(i: int) -> int:
    """On entering stage i the closer zombies are at most this far."""
    return 2 ** (i + 1) - 2


@dataclass(frozen=True)
class PetalMemory:
    chosen_copy: int
    stage: int
    started: bool
    position: int  # index into the stage cycle's clockwise vertex list; 0 = on the hub


class PetalSurvivorPolicy(Policy):
    side = Side.SURVIVOR

    def __init__(self, g: Graph, descriptor: PetalDescriptor, k: int | None = None, start_offset: int = 2,
                 rules: Rules = ZOMBIE_RULES):
        self.g = g
        self.desc = descriptor
        self.k = descriptor.k if k is None else k
        if start_offset not in (1, 2):
            raise ValueError("start_offset must be 1 or 2")
        self.start_offset = start_offset
        # survivor's lead over the hub when the zombies first move
        self.start_lead = start_offset + (1 if rules.first_to_move is Side.SURVIVOR else 0)
        self._pos = descriptor.position

    def _sorted_distances(self, zombies, target: int) -> list[float]:
        d = self.g.distances
        return sorted(float(d[z, target]) for z in zombies)

    def _ith(self, dists, i: int) -> float:
        return dists[i - 1] if i <= len(dists) else math.inf

    def choose_stage(self, dists, stage: int) -> int:
        while stage < self.k and self._ith(dists, stage) < stay_threshold(stage):
            stage += 1
        return stage

    def choose_copy(self, placement) -> int:
        occupied = {self._pos[z][0] for z in placement if z != self.desc.hub}
        for c in range(1, self.k + 1):
            if c not in occupied:
                return c
        raise PolicyError("every copy holds a zombie")

    def initial(self, placement=()):
        placement = tuple(placement or ())
        if len(placement) > self.k - 1:
            raise ValueError(f"strategy covers at most {self.k - 1} zombies, got {len(placement)}")
        copy = self.choose_copy(placement)
        # every start candidate lies in a zombie-free copy, start_lead past the hub
        dists = [d + self.start_lead for d in self._sorted_distances(placement, self.desc.hub)]
        stage = self.choose_stage(dists, 1)
        cycle = self.desc.cycle(copy, stage)
        return cycle.vertices[self.start_offset], PetalMemory(copy, stage, True, self.start_offset)

    def step(self, state: GameState, m: PetalMemory):
        if m.position == 0:
            cycle = self.desc.cycle(m.chosen_copy, m.stage)
            return cycle.vertices[1], PetalMemory(m.chosen_copy, m.stage, True, 1)
        cycle = self.desc.cycle(m.chosen_copy, m.stage)
        nxt = m.position + 1
        if nxt == cycle.length:
            stage = self.choose_stage(self._sorted_distances(state.pursuers, self.desc.hub), m.stage)
            return self.desc.hub, PetalMemory(m.chosen_copy, stage, True, 0)
        return cycle.vertices[nxt], PetalMemory(m.chosen_copy, m.stage, True, nxt)

    def entry_distances_ok(self, zombies, target: int, stage: int) -> bool:
        d = self.g.distances
        lo, hi = close_threshold(stage), stay_threshold(stage)
        return all(d[z, target] <= lo or d[z, target] >= hi for z in zombies)

    def transition_check(self, node, nxt):
        """Safety of each cycle entry: every zombie is close behind or far away."""
        if node is None:
            state, m = nxt
            lead = self.start_lead - self.start_offset
            d = self.g.distances
            lo, hi = close_threshold(m.stage), stay_threshold(m.stage)
            if not all(d[z, state.survivor] + lead <= lo or d[z, state.survivor] + lead >= hi
                       for z in state.pursuers):
                return f"unsafe start at stage {m.stage} against {state.pursuers}"
            return None
        (state, m), (state2, m2) = node, nxt
        if state.to_move is Side.SURVIVOR and m2.position == 0 and m.position != 0:
            if not self.entry_distances_ok(state2.pursuers, state2.survivor, m2.stage):
                return f"unsafe entry into stage {m2.stage} with zombies at {state2.pursuers}"
        return None


def petal_survivor_policy(g: Graph, descriptor: PetalDescriptor, k: int | None = None,
                          start_offset: int = 2, rules: Rules = ZOMBIE_RULES) -> PetalSurvivorPolicy:
    return PetalSurvivorPolicy(g, descriptor, k, start_offset, rules)
