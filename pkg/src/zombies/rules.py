"""Game conventions, canonical states and legal-move generation."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from itertools import product
from typing import Iterable

from .graph import Graph


class PursuerKind(str, enum.Enum):
    ZOMBIE = "zombie"
    COP = "cop"


class TurnOrder(str, enum.Enum):
    PURSUERS_FIRST = "pursuers_first"
    SURVIVOR_FIRST = "survivor_first"


class Side(str, enum.Enum):
    PURSUERS = "pursuers"
    SURVIVOR = "survivor"

    @property
    def other(self) -> "Side":
        return Side.SURVIVOR if self is Side.PURSUERS else Side.PURSUERS


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Rules:
    """Convention record.

    Placement is always pursuers first, then the survivor with full
    knowledge.  ``turn_order`` fixes who moves first once everybody is placed.
    The survivor placing on, or (with ``capture_on_survivor_entry``)
    stepping onto, a pursuer is a capture.  Without entry capture such moves
    are simply not offered.
    """

    pursuer_kind: PursuerKind = PursuerKind.ZOMBIE
    turn_order: TurnOrder = TurnOrder.PURSUERS_FIRST
    capture_on_survivor_entry: bool = True
    survivor_may_pass: bool = True

    def __post_init__(self):
        object.__setattr__(self, "pursuer_kind", PursuerKind(self.pursuer_kind))
        object.__setattr__(self, "turn_order", TurnOrder(self.turn_order))

    @property
    def pursuers_must_move(self) -> bool:
        return self.pursuer_kind is PursuerKind.ZOMBIE

    @property
    def first_to_move(self) -> Side:
        return Side.PURSUERS if self.turn_order is TurnOrder.PURSUERS_FIRST else Side.SURVIVOR

    def with_kind(self, kind) -> "Rules":
        return replace(self, pursuer_kind=PursuerKind(kind))

    def describe(self) -> str:
        return (f"pursuer={self.pursuer_kind.value} turn_order={self.turn_order.value} "
                f"entry_capture={int(self.capture_on_survivor_entry)} "
                f"survivor_pass={int(self.survivor_may_pass)}")


ZOMBIE_RULES = Rules()
COP_RULES = Rules(pursuer_kind=PursuerKind.COP)


@dataclass(frozen=True, order=True)
class GameState:
    pursuers: tuple[int, ...]
    survivor: int
    to_move: Side

    def __post_init__(self):
        object.__setattr__(self, "pursuers", tuple(sorted(self.pursuers)))
        object.__setattr__(self, "to_move", Side(self.to_move))

    @property
    def is_capture(self) -> bool:
        return self.survivor in self.pursuers

    def __str__(self) -> str:
        zs = ",".join(map(str, self.pursuers))
        return f"Z[{zs}] s={self.survivor} {self.to_move.value}"


# A pursuer joint move is a tuple of destinations aligned with the sorted
# ``state.pursuers``; a survivor move is a single vertex.
JointMove = tuple


def initial_state(placement: Iterable[int], start: int, rules: Rules) -> GameState:
    return GameState(tuple(placement), start, rules.first_to_move)


def pursuer_options(g: Graph, pos: int, survivor: int, rules: Rules) -> tuple[int, ...]:
    """Legal destinations for one pursuer at ``pos`` (sorted)."""
    if rules.pursuer_kind is PursuerKind.ZOMBIE:
        return g.geodesic_successors(pos, survivor)
    return tuple(sorted((pos,) + g.neighbors(pos)))


def pursuer_moves(state: GameState, g: Graph, rules: Rules) -> list[JointMove]:
    """All joint moves, one representative per resulting multiset.

    Representatives are the lexicographically smallest aligned tuple
    reaching each multiset; the list is sorted.
    """
    if state.to_move is not Side.PURSUERS:
        raise IllegalMove("survivor to move")
    if state.is_capture:
        raise IllegalMove("game already over")
    options = [pursuer_options(g, p, state.survivor, rules) for p in state.pursuers]
    seen = set()
    moves = []
    for combo in product(*options):
        key = tuple(sorted(combo))
        if key not in seen:
            seen.add(key)
            moves.append(combo)
    return moves


def survivor_moves(state: GameState, g: Graph, rules: Rules) -> dict[int, bool]:
    """Legal survivor destinations mapped to whether the move is a capture."""
    if state.to_move is not Side.SURVIVOR:
        raise IllegalMove("pursuers to move")
    if state.is_capture:
        raise IllegalMove("game already over")
    out = {}
    candidates = set(g.neighbors(state.survivor))
    if rules.survivor_may_pass:
        candidates.add(state.survivor)
    occupied = set(state.pursuers)
    for v in sorted(candidates):
        if v in occupied:
            if rules.capture_on_survivor_entry:
                out[v] = True
        else:
            out[v] = False
    return out


def is_legal_pursuer_move(state: GameState, move, g: Graph, rules: Rules) -> bool:
    if len(move) != len(state.pursuers) or state.is_capture:
        return False
    return all(dest in pursuer_options(g, src, state.survivor, rules)
               for src, dest in zip(state.pursuers, move))


def apply(state: GameState, move, g: Graph, rules: Rules) -> GameState:
    """Play ``move`` and hand the turn over; illegal moves raise :class:`IllegalMove`."""
    if state.is_capture:
        raise IllegalMove("game already over")
    if state.to_move is Side.PURSUERS:
        move = tuple(move)
        if not is_legal_pursuer_move(state, move, g, rules):
            raise IllegalMove(f"illegal pursuer move {move} from {state}")
        return GameState(move, state.survivor, Side.SURVIVOR)
    if move not in survivor_moves(state, g, rules):
        raise IllegalMove(f"illegal survivor move {move} from {state}")
    return GameState(state.pursuers, move, Side.PURSUERS)
