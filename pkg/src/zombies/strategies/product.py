"""Zombie strategy on G □ H composed from winning strategies on G and H.

Blue zombies start in one copy of G, placed as the G strategy places
them, and always share an H-coordinate.  While that coordinate differs
from the survivor's they walk towards it in H; once it matches they play
the G strategy on their G-coordinates.  Red zombies do the same with the
roles of G and H swapped.  A blue H-step at distance zero is exactly the
"survivor changed its H-coordinate" case.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph, cartesian_product
from ..rules import GameState, Side
from ..solver import PositionalStrategy
from .policy import Policy, PolicyError


@dataclass(frozen=True)
class ProductMemory:
    blue_g: tuple[int, ...]  # sorted G-coordinates of the blue zombies
    blue_h: int  # their common H-coordinate
    red_h: tuple[int, ...]  # sorted H-coordinates of the red zombies
    red_g: int  # their common G-coordinate
    last_survivor: tuple[int, int] | None = None  # (s_G, s_H) at the previous pursuer turn


class ProductZombiePolicy(Policy):
    side = Side.PURSUERS

    def __init__(self, g: Graph, h: Graph, s_g: PositionalStrategy, s_h: PositionalStrategy,
                 blue_copy: int = 0, red_copy: int = 0):
        for s in (s_g, s_h):
            if s.side is not Side.PURSUERS or s.placement is None:
                raise ValueError("factor strategies must be winning pursuer strategies")
        self.g, self.h = g, h
        self.s_g, self.s_h = s_g, s_h
        self.blue_copy, self.red_copy = blue_copy, red_copy
        self.product = cartesian_product(g, h)

    @property
    def k(self) -> int:
        return len(self.s_g.placement) + len(self.s_h.placement)

    def vertex(self, a: int, x: int) -> int:
        return a * self.h.n + x

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.h.n)

    def positions(self, m: ProductMemory) -> tuple[int, ...]:
        blue = [self.vertex(a, m.blue_h) for a in m.blue_g]
        red = [self.vertex(m.red_g, x) for x in m.red_h]
        return tuple(sorted(blue + red))

    def d_h(self, m: ProductMemory, survivor: int) -> int:
        return int(self.h.distances[m.blue_h, self.coords(survivor)[1]])

    def d_g(self, m: ProductMemory, survivor: int) -> int:
        return int(self.g.distances[m.red_g, self.coords(survivor)[0]])

    def initial(self, placement=None):
        m = ProductMemory(tuple(sorted(self.s_g.placement)), self.blue_copy,
                          tuple(sorted(self.s_h.placement)), self.red_copy)
        return self.positions(m), m

    @staticmethod
    def _factor_move(strategy: PositionalStrategy, coords, target: int, name: str):
        state = GameState(coords, target, Side.PURSUERS)
        try:
            return strategy.choice[state]
        except KeyError:
            raise PolicyError(f"{name} strategy undefined at projected state {state}") from None

    def step(self, state: GameState, m: ProductMemory):
        s_g, s_h = self.coords(state.survivor)
        pairs = []

        if self.h.distances[m.blue_h, s_h] > 0:
            new_bh = self.h.geodesic_successors(m.blue_h, s_h)[0]
            new_bg = m.blue_g
        else:
            new_bh = m.blue_h
            new_bg = self._factor_move(self.s_g, m.blue_g, s_g, "G")
        pairs += [(self.vertex(a, m.blue_h), self.vertex(b, new_bh)) for a, b in zip(m.blue_g, new_bg)]

        if self.g.distances[m.red_g, s_g] > 0:
            new_rg = self.g.geodesic_successors(m.red_g, s_g)[0]
            new_rh = m.red_h
        else:
            new_rg = m.red_g
            new_rh = self._factor_move(self.s_h, m.red_h, s_h, "H")
        pairs += [(self.vertex(m.red_g, x), self.vertex(new_rg, y)) for x, y in zip(m.red_h, new_rh)]

        pairs.sort()
        if tuple(p[0] for p in pairs) != state.pursuers:
            raise PolicyError(f"memory out of sync with {state}")
        move = tuple(p[1] for p in pairs)
        return move, ProductMemory(tuple(sorted(new_bg)), new_bh, tuple(sorted(new_rh)), new_rg,
                                   (s_g, s_h))

    def transition_check(self, node, nxt):
        """Per-move invariants for the verifier; returns an error message or ``None``.

        After each pursuer move the blue H-distance has dropped by one or
        is still zero (likewise red in G), so both distances measured after
        the pursuers' move never increase over a play.
        """
        if node is None:
            return None
        (state, m), (state2, m2) = node, nxt
        if state.to_move is not Side.PURSUERS or state2.is_capture:
            return None
        if self.positions(m2) != state2.pursuers:
            return "zombie colours no longer share their coordinate"
        dh, dh2 = self.d_h(m, state.survivor), self.d_h(m2, state2.survivor)
        dg, dg2 = self.d_g(m, state.survivor), self.d_g(m2, state2.survivor)
        if dh2 != max(dh - 1, 0) or dg2 != max(dg - 1, 0):
            return f"d_H {dh}->{dh2}, d_G {dg}->{dg2}"
        return None


def product_zombie_policy(g: Graph, h: Graph, s_g: PositionalStrategy, s_h: PositionalStrategy) -> ProductZombiePolicy:
    return ProductZombiePolicy(g, h, s_g, s_h)
