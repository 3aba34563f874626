"""Acceptance criteria, one test per criterion; see the summary section of the run."""
import itertools
import random
import time

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import oracle
from helpers import ScriptedSurvivor, ScriptedZombies, random_graphs, random_tree, zombie_identities
from zombies import graph as gc
from zombies.rules import ZOMBIE_RULES, Rules, TurnOrder
from zombies.solver import cop_number, extract_strategies, is_dismantlable, pursuit_number, solve_fixed, zombie_number
from zombies.strategies import PetalSurvivorPolicy, ProductZombiePolicy, simulate, verify_pursuer_policy, verify_survivor_policy

MIN_CHECKS = 10_000
FAST = settings(max_examples=400, deadline=None, database=None, derandomize=True,
                suppress_health_check=list(HealthCheck))


@pytest.mark.acceptance("1 hypercube zombie numbers z(Q3)=2, z(Q4)=3")
def test_hypercubes(record_property):
    t0 = time.perf_counter()
    z3 = zombie_number(gc.hypercube(3))
    t3 = time.perf_counter() - t0
    t0 = time.perf_counter()
    z4 = zombie_number(gc.hypercube(4))
    t4 = time.perf_counter() - t0
    record_property("detail", f"z(Q3)={z3} in {t3:.2f}s, z(Q4)={z4} in {t4:.2f}s")
    assert (z3, z4) == (2, 3)
    assert t3 < 10 and t4 < 120


@pytest.mark.acceptance("2 petal 2 has no one-zombie win")
def test_petal2_lower_bound(record_property):
    g, _ = gc.petal(2)
    t0 = time.perf_counter()
    r = solve_fixed(g, 1)
    elapsed = time.perf_counter() - t0
    escapes = [any(not r.pursuer_wins(r.start_state((z,), s)) and s != z for s in range(g.n)) for z in range(g.n)]
    record_property("detail", f"{sum(escapes)}/{g.n} placements escaped, {elapsed:.3f}s")
    assert not r.pursuer_wins_game and all(escapes)
    assert elapsed < 1.0


@pytest.mark.acceptance("3 petal survivor policy escapes on petal 2 and petal 3")
def test_petal_policy(record_property):
    t0 = time.perf_counter()
    details = []
    for k, expect in ((2, 33), (3, 8911)):
        g, desc = gc.petal(k)
        pol = PetalSurvivorPolicy(g, desc)
        rep = verify_survivor_policy(g, ZOMBIE_RULES, pol, k - 1, check=pol.transition_check)
        details.append(f"petal {k}: {'pass' if rep.success else 'FAIL ' + rep.reason}, "
                       f"{rep.placements} placements, {rep.nodes} nodes")
        assert rep.success and not rep.violations, rep.reason
        assert rep.placements == expect
    elapsed = time.perf_counter() - t0
    record_property("detail", "; ".join(details) + f"; {elapsed:.1f}s")
    assert elapsed < 300


def _product_policy(g, h):
    parts = []
    for f in (g, h):
        r = solve_fixed(f, zombie_number(f))
        parts.append(extract_strategies(r)[0])
    return ProductZombiePolicy(g, h, *parts)


@pytest.mark.acceptance("4 product policy captures on C3xC3 and C5xC4")
def test_product_policy(record_property):
    details = []
    for g, h, k in ((gc.cycle_graph(3), gc.cycle_graph(3), 2), (gc.cycle_graph(5), gc.cycle_graph(4), 4)):
        pol = _product_policy(g, h)
        assert pol.k == k
        rep = verify_pursuer_policy(pol.product, ZOMBIE_RULES, pol, k, check=pol.transition_check)
        details.append(f"C{g.n}xC{h.n}: {k} zombies, worst {rep.worst_case_rounds} rounds")
        assert rep.success, (rep.reason, rep.violations[:3])
    direct = solve_fixed(gc.cartesian_product(gc.cycle_graph(3), gc.cycle_graph(3)), 2)
    details.append(f"solver k=2 on C3xC3: {'pursuer' if direct.pursuer_wins_game else 'survivor'} wins")
    record_property("detail", "; ".join(details))
    assert direct.pursuer_wins_game


def ordering_corpus():
    corpus = [(f"P{n}", gc.path_graph(n)) for n in range(1, 7)]
    corpus += [(f"C{n}", gc.cycle_graph(n)) for n in range(3, 10)]
    corpus += [("Q3", gc.hypercube(3)), ("petal2", gc.petal(2)[0])]
    corpus += [(f"tree{n}", random_tree(n, seed=n)) for n in (5, 6, 7, 8)]
    corpus += [(f"rand{i}", g) for i, g in enumerate(random_graphs(6, n_max=8, seed=11))]
    return corpus


@pytest.mark.acceptance("5 z(G) >= c(G) on a fixed corpus")
def test_ordering(record_property):
    corpus = ordering_corpus()
    bad = []
    for name, g in corpus:
        z, c = zombie_number(g, k_max=4), cop_number(g, k_max=4)
        assert z is not None and c is not None, name
        if z < c:
            bad.append(name)
    record_property("detail", f"{len(corpus)} graphs, {len(bad)} violations")
    assert len(corpus) >= 20 and not bad


@pytest.mark.acceptance("6 dismantlable iff one cop wins")
def test_dismantlable_oracle(record_property):
    graphs = random_graphs(250, n_max=8, seed=6)
    mismatches = [g for g in graphs if is_dismantlable(g) != (pursuit_number(g, Rules(pursuer_kind="cop"), k_max=1) == 1)]
    record_property("detail", f"{len(graphs)} graphs, {len(mismatches)} mismatches")
    assert len(graphs) >= 200 and not mismatches


def _graph(n, seed, p):
    return gc.random_connected_graph(n, p, random.Random(seed))


def product_metric_checks():
    count = 0

    @FAST
    @given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**31), st.floats(0, 1), st.floats(0, 1))
    def prop(n1, n2, seed, p1, p2):
        nonlocal count
        g, h = _graph(n1, seed, p1), _graph(n2, seed + 1, p2)
        p = gc.cartesian_product(g, h)
        dg, dh, dp = g.distances, h.distances, p.distances
        for (a, x), (b, y) in itertools.product(itertools.product(range(g.n), range(h.n)), repeat=2):
            assert dp[a * h.n + x, b * h.n + y] == dg[a, b] + dh[x, y]
            count += 1

    prop()
    return count


def _check_trace(g, rules, trace):
    """Per-zombie checks along one play; returns (move checks, boundary checks)."""
    d = g.distances
    moves = boundaries = 0
    prev = last_boundary = None
    for ply, ids in zombie_identities(trace, g):
        s = ply.state.survivor
        if ply.phase == "pursuers":
            for before, after in zip(prev, ids):
                assert d[after, s] == d[before, s] - 1
                moves += 1
        # round boundary: the first mover is about to play
        if ply.state.to_move is rules.first_to_move and not ply.state.is_capture:
            cur = [int(d[z, s]) for z in ids]
            if last_boundary is not None:
                for a, b in zip(last_boundary, cur):
                    assert b <= a
                    boundaries += 1
            last_boundary = cur
        prev = ids
    return moves, boundaries


def zombie_move_checks():
    moves = boundaries = 0

    @settings(FAST, max_examples=1000)
    @given(st.integers(2, 40), st.integers(0, 2**31), st.floats(0, 0.15), st.integers(1, 4),
           st.lists(st.integers(0, 39), min_size=1, max_size=4), st.integers(0, 39),
           st.lists(st.integers(0, 5), min_size=1, max_size=6),
           st.lists(st.integers(0, 5), min_size=1, max_size=4), st.sampled_from(list(TurnOrder)))
    def prop(n, seed, p, k, placement, start, sscript, zscript, order):
        nonlocal moves, boundaries
        g = _graph(n, seed, p)
        rules = Rules(turn_order=order)
        placement = [v % n for v in placement][:k]
        zs = ScriptedZombies(g, rules, placement, zscript)
        for shift in range(0, n, max(1, n // 8)):
            sv = ScriptedSurvivor(g, rules, start + shift, sscript)
            moves_, boundaries_ = _check_trace(g, rules, simulate(g, rules, zs, sv, max_rounds=40))
            moves += moves_
            boundaries += boundaries_

    prop()
    return moves, boundaries


@pytest.mark.acceptance("7 metric and legality invariants")
def test_invariants(record_property):
    metric = product_metric_checks()
    moves, boundaries = zombie_move_checks()
    record_property("detail", f"{metric} product-distance, {moves} zombie-move, {boundaries} round-boundary checks")
    assert min(metric, moves, boundaries) >= MIN_CHECKS


@pytest.mark.acceptance("8 cycle zombie numbers against the oracle")
def test_cycles(record_property):
    got = {n: zombie_number(gc.cycle_graph(n)) for n in range(3, 10)}
    ref = {n: oracle.pursuit_number(oracle.cycle_adj(n), zombie=True) for n in range(3, 10)}
    record_property("detail", " ".join(f"C{n}={z}" for n, z in got.items()))
    assert got == ref == {3: 1, **{n: 2 for n in range(4, 10)}}


@pytest.mark.acceptance("9 petal vertex-count formula for k <= 6")
def test_petal_counts(record_property):
    counts = {k: gc.petal(k)[0].n for k in range(1, 7)}
    record_property("detail", " ".join(f"k={k}:{n}" for k, n in counts.items()))
    assert all(n == 1 + k * sum(2 ** (i + 2) - 4 for i in range(1, k + 1)) for k, n in counts.items())
