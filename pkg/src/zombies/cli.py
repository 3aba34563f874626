"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 state budget exceeded.
"""
from __future__ import annotations

import argparse
import shlex
import sys
import time
from pathlib import Path

from . import graph as gc
from .rules import PursuerKind, Rules, TurnOrder
from .solver import BudgetExceeded, extract_strategies, is_dismantlable, pursuit_number, solve_fixed
from .strategies import (GreedyZombiePolicy, PassingSurvivorPolicy, petal_survivor_policy,
                         product_zombie_policy, simulate, solver_policies, verify_pursuer_policy,
                         verify_survivor_policy)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_graph(source: str) -> gc.Graph:
    """An edge-list file path, or a family name like ``c5`` / ``petal2``."""
    path = Path(source)
    if path.is_file():
        return gc.from_edge_list(path.read_text())
    try:
        return gc.resolve(source)
    except gc.GraphError:
        raise UsageError(f"{source}: no such file and not a graph name") from None


def rules_from(args) -> Rules:
    return Rules(pursuer_kind=PursuerKind(getattr(args, "pursuer", "zombie")),
                 turn_order=TurnOrder(args.turn_order),
                 capture_on_survivor_entry=not args.no_entry_capture,
                 survivor_may_pass=not args.no_survivor_pass)


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(ms) -> str:
    return ",".join(map(str, ms)) if ms else "-"


def cmd_gen(args, header):
    fam = args.family
    if fam in ("path", "cycle", "complete", "hypercube"):
        if args.n is None:
            raise UsageError(f"--family {fam} needs --n")
        g = gc.generate(fam, args.n)
    elif fam == "petal":
        if args.k is None:
            raise UsageError("--family petal needs --k")
        g = gc.petal(args.k)[0]
    elif fam == "pendant":
        if not args.base:
            raise UsageError("--family pendant needs --base")
        attach = [int(x) for x in args.attach.split(",")] if args.attach else []
        g = gc.add_pendants(load_graph(args.base), attach)
    elif fam == "subdivide-keep":
        if not args.base or args.k is None:
            raise UsageError("--family subdivide-keep needs --base and --k")
        g = gc.subdivide_and_keep(load_graph(args.base), args.k)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(fam)
    emit(header + gc.to_edge_list(g), args.output)
    return EXIT_OK


def cmd_product(args, header):
    g = gc.cartesian_product(load_graph(args.g), load_graph(args.h))
    emit(header + gc.to_edge_list(g), args.output)
    return EXIT_OK


def cmd_export(args, header):
    emit(header + gc.to_dot(load_graph(args.graph)), args.output)
    return EXIT_OK


def cmd_info(args, header):
    g = load_graph(args.graph)
    degs = [g.degree(v) for v in range(g.n)]
    d = g.distances
    lines = [
        f"vertices: {g.n}",
        f"edges: {g.num_edges}",
        f"degree: min {min(degs)} max {max(degs)} mean {sum(degs) / g.n:.3f}",
        f"diameter: {int(d.max())}",
        f"dismantlable: {'yes' if is_dismantlable(g) else 'no'}",
    ]
    sys.stdout.write(header + "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_solve(args, header):
    g = load_graph(args.graph)
    rules = rules_from(args)
    letter = "z" if rules.pursuer_kind is PursuerKind.ZOMBIE else "c"
    noun = "zombies" if letter == "z" else "cops"
    t0 = time.perf_counter()
    if args.min:
        kmax = args.kmax or g.n
        number = pursuit_number(g, rules, kmax, args.budget)
        result = solve_fixed(g, number, rules, args.budget) if number else None
        verdict = f"{letter} = {number}" if number else f"{letter} > {kmax} (unknown)"
        lines = [verdict]
    else:
        result = solve_fixed(g, args.k, rules, args.budget)
        number = None
        verdict = "pursuer wins" if result.pursuer_wins_game else "survivor wins"
        lines = [f"k = {args.k} {noun}: {verdict}"]
    if result is not None:
        if result.placement is not None:
            lines.append(f"placement: {_fmt(result.placement)}")
            lines.append(f"worst-case capture: {result.capture_plies} plies")
        lines.append(f"states: {result.num_states}")
        lines.append(f"pursuer-won states: {int(result.winner.sum())}")
    print(f"time: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if args.tsv:
        k = number if args.min else args.k
        row = [args.graph, rules.pursuer_kind.value, str(k if k else "-"),
               "pursuer" if result is not None and result.pursuer_wins_game else "survivor",
               str(result.num_states if result else "-"),
               _fmt(result.placement) if result is not None and result.placement else "-"]
        sys.stdout.write("\t".join(row) + "\n")
    else:
        sys.stdout.write(header + "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simulate(args, header):
    if args.survivor == "petal":
        try:
            g, desc = gc.petal(int(args.graph.lower().removeprefix("petal")))
        except ValueError:
            raise UsageError("--survivor petal needs a graph named petalK") from None
    else:
        g = load_graph(args.graph)
    rules = rules_from(args)
    result = solve_fixed(g, args.k, rules, args.budget)
    strategies = extract_strategies(result)
    pursuer, survivor = solver_policies(result, strategies)
    if args.placement:
        placement = [int(x) for x in args.placement.split(",")]
        if rules.pursuer_kind is not PursuerKind.ZOMBIE:
            raise UsageError("--placement is only supported for zombies")
        pursuer = GreedyZombiePolicy(g, placement)
    elif pursuer is None:
        if rules.pursuer_kind is not PursuerKind.ZOMBIE:
            raise UsageError(f"{args.k} cops have no winning placement; give --placement")
        pursuer = GreedyZombiePolicy(g, [0] * args.k)
    if args.survivor == "petal":
        survivor = petal_survivor_policy(g, desc, desc.k, args.start_offset, rules)
    elif args.survivor == "pass":
        survivor = PassingSurvivorPolicy(g)
    trace = simulate(g, rules, pursuer, survivor, args.max_rounds)
    emit(header + trace.to_text(), args.output)
    return EXIT_OK


def cmd_verify(args, header):
    rules = rules_from(args)
    if rules.pursuer_kind is not PursuerKind.ZOMBIE:
        raise UsageError("verify only applies to zombies")
    if args.thm1:
        g, h = (load_graph(x) for x in args.thm1)
        factors = []
        for f in (g, h):
            z = pursuit_number(f, rules, args.kmax, args.budget)
            if z is None:
                raise UsageError(f"factor zombie number exceeds --kmax {args.kmax}")
            factors.append((z, extract_strategies(solve_fixed(f, z, rules, args.budget))[0]))
        policy = product_zombie_policy(g, h, factors[0][1], factors[1][1])
        rep = verify_pursuer_policy(policy.product, rules, policy, policy.k,
                                    check=policy.transition_check, budget=args.budget)
        name = f"{args.thm1[0]} x {args.thm1[1]}"
        if rep.success:
            line = (f"thm1 {name}: pass, {policy.k} zombies (z(G)={factors[0][0]}, z(H)={factors[1][0]}), "
                    f"worst case {rep.worst_case_rounds} rounds, {rep.nodes} nodes")
        else:
            line = f"thm1 {name}: FAIL, {rep.reason}; counterexample: " + \
                   " | ".join(str(s) for s in rep.counterexample)
    else:
        k = args.thm2
        if not 1 <= k <= args.max_k:
            raise UsageError(f"--thm2 k must be in 1..{args.max_k}")
        g, desc = gc.petal(k)
        policy = petal_survivor_policy(g, desc, k, args.start_offset, rules)
        rep = verify_survivor_policy(g, rules, policy, k - 1, check=policy.transition_check,
                                     budget=args.budget)
        if rep.success:
            line = (f"thm2 k={k}: pass, {rep.placements} placements survived against {k - 1} zombies, "
                    f"{rep.nodes} nodes")
        else:
            line = f"thm2 k={k}: FAIL, {rep.reason}; counterexample: " + \
                   " | ".join(str(s) for s in rep.counterexample)
    if rep.violations:
        line += f"; {len(rep.violations)} invariant violations, first: {rep.violations[0]}"
    sys.stdout.write(header + line + "\n")
    return EXIT_OK if rep.success else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--turn-order", choices=[t.value for t in TurnOrder], default="pursuers_first")
    common.add_argument("--no-entry-capture", action="store_true",
                        help="survivor may not step onto a pursuer (instead of being captured)")
    common.add_argument("--no-survivor-pass", action="store_true")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; runs single-threaded")
    common.add_argument("--budget", type=int, default=None, help="state budget (default $ZP_MEM_BUDGET)")

    p = argparse.ArgumentParser(prog="zombies", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    s.add_argument("--family", required=True,
                   choices=["path", "cycle", "complete", "hypercube", "petal", "pendant", "subdivide-keep"])
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--base", help="input graph for pendant / subdivide-keep")
    s.add_argument("--attach", help="comma-separated vertices receiving a pendant")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("product", parents=[common], help="write G □ H as an edge list")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("export", parents=[common], help="write a graph as DOT")
    s.add_argument("graph")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("info", parents=[common], help="print basic graph statistics")
    s.add_argument("graph")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("solve", parents=[common], help="decide the game for k pursuers or find the minimum k")
    s.add_argument("graph")
    s.add_argument("--pursuer", choices=["zombie", "cop"], default="zombie")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--min", action="store_true")
    s.add_argument("--kmax", type=int)
    s.add_argument("--tsv", action="store_true", help="one machine-readable summary line")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("simulate", parents=[common], help="play one game and write its trace")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--pursuer", choices=["zombie", "cop"], default="zombie")
    s.add_argument("--survivor", choices=["solver", "petal", "pass"], default="solver")
    s.add_argument("--placement", help="comma-separated start vertices for greedy zombies")
    s.add_argument("--start-offset", type=int, default=2, choices=[1, 2])
    s.add_argument("--max-rounds", type=int, default=1000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify", parents=[common], help="exhaustively check the constructive strategies")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--thm1", nargs=2, metavar=("G", "H"), help="product zombie strategy on G □ H")
    g.add_argument("--thm2", type=int, metavar="K", help="petal survivor strategy on petal(K)")
    s.add_argument("--kmax", type=int, default=4, help="search limit for factor zombie numbers")
    s.add_argument("--max-k", type=int, default=3, help="largest petal size accepted")
    s.add_argument("--start-offset", type=int, default=2, choices=[1, 2])
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    header = f"# zombies {shlex.join(argv)}\n"
    try:
        return args.func(args, header)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, gc.GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
