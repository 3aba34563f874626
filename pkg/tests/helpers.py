"""Deterministic scripted policies and graph corpora shared by the tests."""
import random

from zombies import graph as gc
from zombies.rules import Side, pursuer_moves, survivor_moves
from zombies.strategies import Policy


class ScriptedSurvivor(Policy):
    """Picks ``legal[script[t] % len(legal)]``; memory is the script index."""

    side = Side.SURVIVOR

    def __init__(self, g, rules, start_pick, script):
        self.g, self.rules = g, rules
        self.start_pick = start_pick
        self.script = tuple(script) or (0,)

    def initial(self, placement=()):
        free = [v for v in range(self.g.n) if v not in set(placement)] or [0]
        return free[self.start_pick % len(free)], 0

    def step(self, state, t):
        legal = list(survivor_moves(state, self.g, self.rules))
        return legal[self.script[t] % len(legal)], (t + 1) % len(self.script)


class ScriptedZombies(Policy):
    """Fixed placement, tie-breaks chosen by a script over the legal joint moves."""

    side = Side.PURSUERS

    def __init__(self, g, rules, placement, script):
        self.g, self.rules = g, rules
        self.placement = tuple(sorted(placement))
        self.script = tuple(script) or (0,)

    def initial(self, placement=None):
        return self.placement, 0

    def step(self, state, t):
        moves = pursuer_moves(state, self.g, self.rules)
        return moves[self.script[t] % len(moves)], (t + 1) % len(self.script)


def random_graphs(count, n_max=8, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, n_max)
        out.append(gc.random_connected_graph(n, rng.random() * 0.7, rng))
    return out


def random_tree(n, seed):
    return gc.random_connected_graph(n, 0.0, random.Random(seed))


def zombie_identities(trace, g):
    """Per-zombie positions after every ply, following the aligned joint moves.

    Returns a list of (ply, positions) with positions indexed by zombie.
    """
    ids = list(trace.placement)
    out = [(trace.plies[0], list(ids))]
    for ply in trace.plies[1:]:
        if ply.phase == "pursuers":
            order = sorted(range(len(ids)), key=lambda i: ids[i])
            for slot, i in enumerate(order):
                ids[i] = ply.move[slot]
        out.append((ply, list(ids)))
    return out
