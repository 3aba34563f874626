"""Round-by-round play between two policies, with replayable traces.

Trace text format, one ply per line after ``#`` header lines::

    # rules pursuer=zombie turn_order=pursuers_first entry_capture=1 survivor_pass=1
    # outcome captured 3
    <round>\t<phase>\t<pursuers comma separated>\t<survivor>

``phase`` is ``place`` for the opening (round 0), then ``pursuers`` or
``survivor`` naming the side that just moved.  The survivor column is ``-``
before the survivor has been placed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from ..graph import Graph
from ..rules import GameState, IllegalMove, PursuerKind, Rules, Side, TurnOrder, apply, initial_state
from .policy import Policy

CAPTURED = "captured"
SURVIVES_FOREVER = "survives_forever"
CUTOFF = "cutoff"


class SimulationError(RuntimeError):
    def __init__(self, message: str, round_index: int):
        super().__init__(f"round {round_index}: {message}")
        self.round_index = round_index


@dataclass(frozen=True)
class Ply:
    round: int
    phase: str  # "place", "pursuers" or "survivor"
    move: object
    state: GameState  # position after the ply


@dataclass
class SimulationTrace:
    rules: Rules
    placement: tuple[int, ...]
    start: int
    plies: list[Ply] = field(default_factory=list)
    outcome: str = CUTOFF
    outcome_round: int = 0

    @property
    def states(self) -> list[GameState]:
        return [p.state for p in self.plies]

    @property
    def final_state(self) -> GameState:
        return self.plies[-1].state

    @property
    def captured(self) -> bool:
        return self.outcome == CAPTURED

    def to_text(self) -> str:
        lines = [f"# rules {self.rules.describe()}", f"# outcome {self.outcome} {self.outcome_round}"]
        zs = ",".join(map(str, self.placement))
        lines.append(f"0\tplace\t{zs}\t-")
        for p in self.plies:
            zs = ",".join(map(str, p.state.pursuers))
            lines.append(f"{p.round}\t{p.phase}\t{zs}\t{p.state.survivor}")
        return "\n".join(lines) + "\n"


def _parse_rules(desc: str) -> Rules:
    fields = dict(item.split("=", 1) for item in desc.split())
    return Rules(pursuer_kind=PursuerKind(fields["pursuer"]),
                 turn_order=TurnOrder(fields["turn_order"]),
                 capture_on_survivor_entry=fields["entry_capture"] == "1",
                 survivor_may_pass=fields["survivor_pass"] == "1")


def trace_from_text(text: str) -> SimulationTrace:
    """Inverse of :meth:`SimulationTrace.to_text`; moves are rebuilt from consecutive states."""
    rules = outcome = None
    outcome_round = 0
    rows = []
    for line in text.splitlines():
        if line.startswith("# rules "):
            rules = _parse_rules(line[len("# rules "):])
        elif line.startswith("# outcome "):
            _, _, name, rnd = line.split()
            outcome, outcome_round = name, int(rnd)
        elif line.strip() and not line.startswith("#"):
            rnd, phase, zs, s = line.split("\t")
            pursuers = tuple(int(x) for x in zs.split(",")) if zs else ()
            rows.append((int(rnd), phase, pursuers, None if s == "-" else int(s)))
    if rules is None or not rows or rows[0][1] != "place":
        raise ValueError("not a trace")
    placement = rows[0][2]
    trace = SimulationTrace(rules, placement, rows[1][3] if len(rows) > 1 else -1,
                            outcome=outcome or CUTOFF, outcome_round=outcome_round)
    for rnd, phase, pursuers, s in rows[1:]:
        if phase == "place":
            to_move = rules.first_to_move
        else:
            to_move = Side.SURVIVOR if phase == "pursuers" else Side.PURSUERS
        state = GameState(pursuers, s, to_move)
        trace.plies.append(Ply(rnd, phase, None, state))
    return trace


def replay(trace: SimulationTrace, g: Graph) -> bool:
    """Check every ply is a legal move from the previous position.

    Pursuer moves are matched as multisets, so traces read back from text
    (which drop the aligned move) replay too.
    """
    plies = trace.plies
    if not plies:
        return True
    first = plies[0].state
    if first.pursuers != tuple(sorted(trace.placement)) or first.to_move is not trace.rules.first_to_move:
        return False
    prev = first
    for p in plies[1:]:
        if prev.is_capture:
            return False
        try:
            if prev.to_move is Side.SURVIVOR:
                nxt = apply(prev, p.state.survivor, g, trace.rules)
            elif p.move is not None:
                nxt = apply(prev, p.move, g, trace.rules)
            else:
                nxt = None
                for perm in set(permutations(p.state.pursuers)):
                    try:
                        nxt = apply(prev, perm, g, trace.rules)
                        break
                    except IllegalMove:
                        continue
                if nxt is None:
                    return False
        except IllegalMove:
            return False
        if nxt != p.state:
            return False
        prev = nxt
    return True


def simulate(g: Graph, rules: Rules, pursuer_policy: Policy, survivor_policy: Policy,
             max_rounds: int = 1000) -> SimulationTrace:
    """Play until capture, a repeated (state, memories) triple, or ``max_rounds``.

    Both policies are deterministic, so a repetition proves the survivor
    lives forever.
    """
    if pursuer_policy.side is not Side.PURSUERS or survivor_policy.side is not Side.SURVIVOR:
        raise ValueError("policy sides do not match")
    placement, pmem = pursuer_policy.initial()
    placement = tuple(sorted(placement))
    start, smem = survivor_policy.initial(placement)
    state = initial_state(placement, start, rules)
    trace = SimulationTrace(rules, placement, start)
    trace.plies.append(Ply(0, "place", start, state))
    if state.is_capture:
        trace.outcome, trace.outcome_round = CAPTURED, 0
        return trace

    seen = {}
    rnd = 0
    while True:
        if state.to_move is rules.first_to_move:
            rnd += 1
        key = (state, pmem, smem)
        if key in seen:
            trace.outcome, trace.outcome_round = SURVIVES_FOREVER, rnd
            return trace
        seen[key] = rnd
        if rnd > max_rounds:
            trace.outcome, trace.outcome_round = CUTOFF, max_rounds
            return trace
        if state.to_move is Side.PURSUERS:
            move, pmem = pursuer_policy.step(state, pmem)
            phase = "pursuers"
        else:
            move, smem = survivor_policy.step(state, smem)
            phase = "survivor"
        try:
            state = apply(state, move, g, rules)
        except IllegalMove as exc:
            raise SimulationError(str(exc), rnd) from None
        trace.plies.append(Ply(rnd, phase, move, state))
        if state.is_capture:
            trace.outcome, trace.outcome_round = CAPTURED, rnd
            return trace
