"""Exact solution of the k-pursuer game by retrograde analysis.

The arena holds every (pursuer multiset, survivor vertex, side to move)
triple.  Multisets are indexed densely through the combinatorial number
system, so a state is the integer ``(multiset * n + survivor) * 2 + side``
with side 0 = pursuers to move and 1 = survivor to move.

Pursuer-won states are found layer by layer from the capture states.  A
pursuer-to-move state joins layer r+1 when some successor is in layer r; a
survivor-to-move state joins when its last unresolved successor does.  The
layer number is therefore the optimal number of plies to capture with the
pursuers hurrying and the survivor stalling.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb

import numpy as np

from .graph import Graph
from .rules import GameState, PursuerKind, Rules, Side, ZOMBIE_RULES, COP_RULES

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20_000_000
_CHUNK_ENTRIES = 1 << 21


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"arena needs {required} states, budget is {budget}")
        self.required = required
        self.budget = budget


def state_budget() -> int:
    return int(os.environ.get("ZP_MEM_BUDGET", DEFAULT_BUDGET))


def arena_size(n: int, k: int) -> int:
    return comb(n + k - 1, k) * n * 2


class MultisetIndex:
    """Bijection between sorted k-multisets over ``range(n)`` and ``range(C(n+k-1, k))``."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.size = comb(n + k - 1, k)
        top = n + k
        self._binom = np.array([[comb(a, b) for b in range(k + 1)] for a in range(top)], dtype=np.int64)
        lex = np.array(list(combinations_with_replacement(range(n), k)), dtype=np.int64).reshape(-1, k)
        self.table = np.empty_like(lex)
        self.table[self.rank(lex)] = lex

    def rank(self, sorted_rows: np.ndarray) -> np.ndarray:
        """Ranks of rows that are already sorted ascending (last axis = k)."""
        shifted = sorted_rows + np.arange(self.k)
        return self._binom[shifted, np.arange(1, self.k + 1)].sum(axis=-1)

    def rank_one(self, ms) -> int:
        return int(sum(comb(a + i, i + 1) for i, a in enumerate(sorted(ms))))

    def unrank(self, idx: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.table[idx])


def _option_table(g: Graph, rules: Rules) -> np.ndarray:
    """opts[v, s, :] = sorted legal destinations of a pursuer at v, padded with -1."""
    n = g.n
    if rules.pursuer_kind is PursuerKind.ZOMBIE:
        lists = [[g.geodesic_successors(v, s) if v != s else () for s in range(n)] for v in range(n)]
    else:
        lists = [[tuple(sorted((v,) + g.neighbors(v)))] * n for v in range(n)]
    width = max(1, max(len(o) for row in lists for o in row))
    opts = np.full((n, n, width), -1, dtype=np.int64)
    for v in range(n):
        for s in range(n):
            o = lists[v][s]
            opts[v, s, :len(o)] = o
    return opts


def _survivor_table(g: Graph, rules: Rules) -> np.ndarray:
    lists = [sorted(set(g.neighbors(s)) | ({s} if rules.survivor_may_pass else set())) for s in range(g.n)]
    width = max(1, max(len(o) for o in lists))
    table = np.full((g.n, width), -1, dtype=np.int64)
    for s, o in enumerate(lists):
        table[s, :len(o)] = o
    return table


class _Arena:
    """Forward move structure of the full state space, built in chunks."""

    def __init__(self, g: Graph, k: int, rules: Rules):
        self.g, self.k, self.rules = g, k, rules
        self.n = g.n
        self.ms = MultisetIndex(self.n, k)
        self.num_states = self.ms.size * self.n * 2
        self.opts = _option_table(g, rules)
        self.sopts = _survivor_table(g, rules)
        width = self.opts.shape[2]
        # lexicographic order over option slots == lexicographic order of aligned moves
        self.combos = np.array(list(product(range(width), repeat=k)), dtype=np.int64).reshape(-1, k)
        pos = self.ms.table  # (m, k)
        surv = np.arange(self.n)
        self.capture = (pos[:, :, None] == surv[None, None, :]).any(axis=1)  # (m, n)

    def pursuer_chunks(self):
        """Yield (multiset rows, destinations (r, n, C, k), successor ids (r, n, C) or -1)."""
        n, k = self.n, self.k
        ncombo = len(self.combos)
        step = max(1, _CHUNK_ENTRIES // max(1, n * ncombo * k))
        for lo in range(0, self.ms.size, step):
            rows = np.arange(lo, min(lo + step, self.ms.size))
            pos = self.ms.table[rows]  # (r, k)
            # opts[pos[r, j], s, combos[c, j]] -> (r, n, C, k)
            dest = self.opts[pos[:, None, None, :],
                             np.arange(n)[None, :, None, None],
                             self.combos[None, None, :, :]]
            valid = (dest >= 0).all(axis=-1) & ~self.capture[rows][:, :, None]
            succ_ms = self.ms.rank(np.sort(np.where(dest >= 0, dest, 0), axis=-1))
            succ = (succ_ms * n + np.arange(n)[None, :, None]) * 2 + 1
            succ = np.where(valid, succ, -1)
            yield rows, dest, succ

    def survivor_chunks(self):
        """Yield (multiset rows, destinations (n, D), successor ids (r, n, D) or -1)."""
        n = self.n
        width = self.sopts.shape[1]
        step = max(1, _CHUNK_ENTRIES // max(1, n * width * self.k))
        dest = self.sopts  # (n, D)
        for lo in range(0, self.ms.size, step):
            rows = np.arange(lo, min(lo + step, self.ms.size))
            pos = self.ms.table[rows]
            occupied = (pos[:, None, None, :] == dest[None, :, :, None]).any(axis=-1)  # (r, n, D)
            valid = (dest >= 0)[None] & ~self.capture[rows][:, :, None]
            if not self.rules.capture_on_survivor_entry:
                valid &= ~occupied
            succ = (rows[:, None, None] * n + np.where(dest >= 0, dest, 0)[None]) * 2
            yield rows, dest, np.where(valid, succ, -1)

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        srcs, dsts = [], []
        for rows, _, succ in self.pursuer_chunks():
            src = np.broadcast_to(((rows[:, None] * n + np.arange(n)[None]) * 2)[:, :, None], succ.shape)
            keep = succ >= 0
            srcs.append(src[keep])
            dsts.append(succ[keep])
        for rows, _, succ in self.survivor_chunks():
            src = np.broadcast_to(((rows[:, None] * n + np.arange(n)[None]) * 2 + 1)[:, :, None], succ.shape)
            keep = succ >= 0
            srcs.append(src[keep])
            dsts.append(succ[keep])
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        key = np.unique(src * self.num_states + dst)
        return key // self.num_states, key % self.num_states


@dataclass(eq=False)
class SolveResult:
    graph: Graph
    k: int
    rules: Rules
    multisets: MultisetIndex = field(repr=False)
    winner: np.ndarray = field(repr=False)  # bool per state: pursuers win
    rank: np.ndarray = field(repr=False)  # plies to capture, -1 where survivor wins
    pursuer_wins_game: bool
    placement: tuple[int, ...] | None  # best winning placement, if any
    capture_plies: int | None  # worst case over survivor starts from ``placement``
    _arena: _Arena = field(repr=False)

    @property
    def num_states(self) -> int:
        return len(self.winner)

    def index(self, state: GameState) -> int:
        if len(state.pursuers) != self.k:
            raise ValueError(f"state has {len(state.pursuers)} pursuers, arena has {self.k}")
        side = 0 if state.to_move is Side.PURSUERS else 1
        return (self.multisets.rank_one(state.pursuers) * self.graph.n + state.survivor) * 2 + side

    def state(self, idx: int) -> GameState:
        side, rest = idx % 2, idx // 2
        mi, s = divmod(rest, self.graph.n)
        return GameState(self.multisets.unrank(mi), s, Side.PURSUERS if side == 0 else Side.SURVIVOR)

    def pursuer_wins(self, state: GameState) -> bool:
        return bool(self.winner[self.index(state)])

    def rank_of(self, state: GameState) -> int:
        return int(self.rank[self.index(state)])

    def start_state(self, placement, start: int) -> GameState:
        return GameState(tuple(placement), start, self.rules.first_to_move)

    def best_survivor_start(self, placement) -> int:
        """Smallest start escaping ``placement`` outright, else the one delaying capture most."""
        best, best_rank = None, -2
        for s in range(self.graph.n):
            st = self.start_state(placement, s)
            if st.is_capture:
                r = 0
            elif not self.pursuer_wins(st):
                return s
            else:
                r = self.rank_of(st)
            if r > best_rank:
                best, best_rank = s, r
        return best

    def summary(self) -> str:
        verdict = "pursuer wins" if self.pursuer_wins_game else "survivor wins"
        return f"k={self.k} {verdict} states={self.num_states}"


def _gather(indptr: np.ndarray, indices: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    starts = indptr[frontier]
    lens = indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offsets = np.repeat(starts - np.concatenate(([0], np.cumsum(lens)[:-1])), lens)
    return indices[np.arange(total) + offsets]


def solve_fixed(g: Graph, k: int, rules: Rules = ZOMBIE_RULES, budget: int | None = None) -> SolveResult:
    """Classify every state of the k-pursuer arena on ``g``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = state_budget() if budget is None else budget
    required = arena_size(g.n, k)
    if required > budget:
        raise BudgetExceeded(required, budget)
    arena = _Arena(g, k, rules)
    N = arena.num_states
    src, dst = arena.edges()
    log.debug("arena n=%d k=%d states=%d edges=%d", g.n, k, N, len(src))

    order = np.argsort(dst, kind="stable")
    pred = src[order]
    indptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(np.bincount(dst, minlength=N), out=indptr[1:])
    outdeg = np.bincount(src, minlength=N)

    winner = np.zeros(N, dtype=bool)
    rank = np.full(N, -1, dtype=np.int64)
    capture = np.repeat(arena.capture.reshape(-1), 2)
    frontier = np.flatnonzero(capture)
    winner[frontier] = True
    rank[frontier] = 0
    remaining = outdeg.copy()
    is_survivor_side = (np.arange(N) % 2) == 1
    # survivor states with no legal move at all lose on the spot
    stuck = np.flatnonzero(is_survivor_side & (outdeg == 0) & ~capture)

    layer = 0
    while len(frontier) or (layer == 0 and len(stuck)):
        preds = _gather(indptr, pred, frontier)
        cand = preds[~winner[preds]]
        p_side = np.unique(cand[~is_survivor_side[cand]])
        s_cand, counts = np.unique(cand[is_survivor_side[cand]], return_counts=True)
        remaining[s_cand] -= counts
        s_side = s_cand[remaining[s_cand] == 0]
        nxt = np.union1d(p_side, s_side)
        if layer == 0:
            nxt = np.union1d(nxt, stuck)
        layer += 1
        winner[nxt] = True
        rank[nxt] = layer
        frontier = nxt

    # placement phase: a placement is good if every survivor start loses
    side = 0 if rules.first_to_move is Side.PURSUERS else 1
    m = arena.ms.size
    per_start = rank.reshape(m, g.n, 2)[:, :, side].copy()
    per_start[arena.capture] = 0
    good = (per_start >= 0).all(axis=1)
    placement = capture_plies = None
    if good.any():
        worst = np.where(good, per_start.max(axis=1), np.iinfo(np.int64).max)
        cands = np.flatnonzero(worst == worst.min())
        tuples = sorted(arena.ms.unrank(int(i)) for i in cands)
        placement = tuples[0]
        capture_plies = int(worst.min())
    winner.setflags(write=False)
    rank.setflags(write=False)
    return SolveResult(g, k, rules, arena.ms, winner, rank, bool(good.any()),
                       placement, capture_plies, arena)


def pursuit_number(g: Graph, rules: Rules = ZOMBIE_RULES, k_max: int | None = None,
                   budget: int | None = None) -> int | None:
    """Least k <= k_max for which pursuers win; ``None`` means unknown (> k_max)."""
    k_max = g.n if k_max is None else k_max
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        if solve_fixed(g, k, rules, budget).pursuer_wins_game:
            return k
    return None


def zombie_number(g: Graph, k_max: int | None = None, rules: Rules = ZOMBIE_RULES) -> int | None:
    return pursuit_number(g, rules.with_kind(PursuerKind.ZOMBIE), k_max)


def cop_number(g: Graph, k_max: int | None = None, rules: Rules = COP_RULES) -> int | None:
    return pursuit_number(g, rules.with_kind(PursuerKind.COP), k_max)


@dataclass
class PositionalStrategy:
    side: Side
    choice: dict  # GameState -> JointMove (pursuers) or vertex (survivor)
    placement: tuple[int, ...] | None = None
    rules: Rules | None = None

    def __call__(self, state: GameState):
        return self.choice[state]

    def __contains__(self, state) -> bool:
        return state in self.choice


def extract_strategies(result: SolveResult) -> tuple[PositionalStrategy, PositionalStrategy]:
    """Optimal positional strategies for both sides.

    Pursuers: the lexicographically smallest joint move into rank - 1, on
    every pursuer-won, pursuer-to-move, non-capture state.  Survivor: on
    survivor-won states the smallest move staying out of the pursuer
    attractor; on lost states the smallest move into rank - 1 (stalling).
    """
    arena = result._arena
    n = arena.n
    winner, rank = result.winner, result.rank
    unrank = arena.ms.unrank
    pursuer_choice = {}
    for rows, dest, succ in arena.pursuer_chunks():
        src = (rows[:, None] * n + np.arange(n)[None]) * 2
        need = np.where(winner[src] & (rank[src] > 0), rank[src] - 1, -5)
        ok = (succ >= 0) & (rank[np.maximum(succ, 0)] == need[:, :, None])
        has = ok.any(axis=-1)
        first = ok.argmax(axis=-1)
        for r, s in zip(*np.nonzero(has)):
            move = tuple(int(x) for x in dest[r, s, first[r, s]])
            pursuer_choice[GameState(unrank(int(rows[r])), int(s), Side.PURSUERS)] = move

    survivor_choice = {}
    for rows, dest, succ in arena.survivor_chunks():
        src = (rows[:, None] * n + np.arange(n)[None]) * 2 + 1
        legal = succ >= 0
        safe_succ = np.maximum(succ, 0)
        escape = legal & ~winner[safe_succ]
        stall = legal & (rank[safe_succ] == (rank[src] - 1)[:, :, None])
        pick = np.where(winner[src][:, :, None], stall, escape)
        has = pick.any(axis=-1) & legal.any(axis=-1)
        first = pick.argmax(axis=-1)
        for r, s in zip(*np.nonzero(has)):
            v = int(dest[s, first[r, s]])
            survivor_choice[GameState(unrank(int(rows[r])), int(s), Side.SURVIVOR)] = v
    return (PositionalStrategy(Side.PURSUERS, pursuer_choice, result.placement, result.rules),
            PositionalStrategy(Side.SURVIVOR, survivor_choice, None, result.rules))


def is_dismantlable(g: Graph) -> bool:
    """Cop-win test: strip dominated vertices until one is left."""
    alive = set(range(g.n))
    closed = {v: set(g.neighbors(v)) | {v} for v in alive}
    changed = True
    while len(alive) > 1 and changed:
        changed = False
        for v in sorted(alive):
            nv = closed[v] & alive
            if any(w != v and nv <= (closed[w] & alive) for w in nv):
                alive.remove(v)
                changed = True
                break
    return len(alive) == 1
