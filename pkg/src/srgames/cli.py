"""Command line interface.  Exit status: 0 success, 1 error, 2 verification failure."""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import io
from .bench import bench, nlogn_slope, write_csv
from .core import Srg, normalize
from .errors import SrgError
from .generators import gen_random_network, gen_random_srg, gen_sorting_network_srg
from .interdiction import (
    reduce_srg_to_interdiction,
    solve_strong_capacities,
    solve_weak_logstar_capacities,
    solve_weak_loglog_capacities,
)
from .ledger import ComparisonLedger
from .network import Network, validate_network
from .oracle import enumerate_values, enumerate_widths, verify_solution
from .recovery import recover_weak
from .retrograde import solve_signs, sorting_method
from .weak import SOLVERS

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def _emit(doc, out=None) -> None:
    text = json.dumps(doc, indent=1, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _vertex(game_or_net, raw):
    """Command line vertex ids arrive as strings; match them against the instance ids."""
    if raw is None:
        return None
    ids = game_or_net.owner if isinstance(game_or_net, Srg) else game_or_net.vertices
    if raw in ids:
        return raw
    try:
        as_int = int(raw)
    except ValueError:
        return raw
    return as_int if as_int in ids else raw


def _width_list(width: dict) -> list:
    return [{"id": v, "width": io._jsonable(w)} for v, w in width.items()]


def cmd_solve_srg(args) -> int:
    game = io.load_game(args.file)
    normalize(game)  # structural checks only; ids stay as in the file
    ledger = ComparisonLedger()
    doc: dict = {"mode": args.mode}
    if args.mode == "sign":
        signs, sol = solve_signs(game)
        doc.update(io.solution_to_dict(sol))
    elif args.mode == "strong":
        if args.algo != "sort":
            raise ValueError("solve-srg: strong mode only supports --algo sort")
        doc.update(io.solution_to_dict(sorting_method(game, ledger)))
    else:
        start = _vertex(game, args.start)
        start = game.start if start is None else start
        if start is None:
            raise ValueError("solve-srg: weak mode needs --start or a start vertex in the file")
        doc["start"] = start
        if args.algo == "sort":
            value = sorting_method(game, ledger).value[start]
        else:
            run = SOLVERS[args.algo](game, start, ledger)
            value = run.value
            doc["iterations"] = run.iterations
        doc["value"] = value
        doc.update(io.solution_to_dict(recover_weak(game, start, value, ledger)))
    if args.ledger:
        doc["comparisons"] = ledger.count
    _emit(doc, args.output)
    return EXIT_OK


def cmd_solve_net(args) -> int:
    net = validate_network(io.load_network(args.file))
    ledger = ComparisonLedger()
    if args.mode == "strong":
        if args.algo != "sorted":
            raise ValueError("solve-net: strong mode only supports --algo sorted")
        sol = solve_strong_capacities(net, ledger)
        doc = {"mode": "strong", "widths": _width_list(sol.width), "removed": sorted(sol.removed)}
    else:
        if args.algo == "sorted":
            sol = solve_strong_capacities(net, ledger)
            doc = {"width": io._jsonable(sol.width[net.source]), "removed": sorted(sol.removed)}
        else:
            solver = solve_weak_loglog_capacities if args.algo == "loglog" else solve_weak_logstar_capacities
            run = solver(net, ledger)
            doc = {"width": io._jsonable(run.width), "removed": sorted(run.removed), "iterations": run.iterations}
        doc = {"mode": "weak", "source": net.source, **doc}
    if args.ledger:
        doc["comparisons"] = ledger.count
    _emit(doc, args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    obj = io.load(args.file)
    if isinstance(obj, Network):
        _emit({"widths": _width_list(enumerate_widths(obj, args.cap))}, args.output)
    else:
        normalize(obj)
        values = enumerate_values(obj, args.cap)
        _emit({"values": [{"id": v, "value": x} for v, x in values.items()]}, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    game = io.load_game(args.game)
    normalize(game)
    with open(args.solution) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise io.ParseError(exc.msg, exc.lineno, exc.colno) from None
    sol = io.solution_from_dict(doc, game)
    start = _vertex(game, args.start)
    if start is None and args.mode == "weak":
        start = doc.get("start", game.start)
    verdict = verify_solution(game, sol, args.mode, start=start, cap=args.cap)
    _emit({"ok": verdict.ok, "witness": verdict.witness})
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.kind == "srg":
        obj = gen_random_srg(
            args.n_max, args.n_min, args.n_term, tuple(args.out_degree), tuple(args.payoffs), args.seed,
            distinct=not args.ties, acyclic=args.acyclic, cover_terminals=args.cover,
        )
    elif args.kind == "net":
        obj = gen_random_network(args.vertices, args.arcs, tuple(args.budget), args.seed, allow_small=args.allow_small)
    else:
        pays = random.Random(args.seed).sample(range(1, 10 * args.width + 1), args.width)
        obj, wires = gen_sorting_network_srg(args.width, pays)
        if args.output:
            print(json.dumps({"outputs": wires}))
    if args.dot:
        text = io.to_dot(obj)
    else:
        text = io.dumps(obj)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_reduce(args) -> int:
    game = io.load_game(args.file)
    normalize(game)
    net, _ = reduce_srg_to_interdiction(game)
    if args.output:
        io.save(net, args.output)
    else:
        print(io.dumps(net))
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(io.to_dot(io.load(args.file)))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite:
        with open(args.suite) as fh:
            suite = json.load(fh)
    else:
        suite = {"kind": args.kind, "sizes": args.sizes, "seeds": args.seeds}
        if args.algos:
            suite["algorithms"] = args.algos
    rows = bench(suite)
    if args.output:
        with open(args.output, "w") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.slope:
        print(f"slope of log(comparisons) vs log(n log n) for sort: {nlogn_slope(rows):.3f}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="srgames", description="Solve simple recursive games and interdiction networks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-srg", help="solve a game file")
    s.add_argument("file")
    s.add_argument("--mode", choices=("strong", "weak", "sign"), default="strong")
    s.add_argument("--algo", choices=("sort", "paterson", "loglog", "logstar"), default="sort")
    s.add_argument("--start", help="start vertex for weak mode (default: the file's start)")
    s.add_argument("--ledger", action="store_true", help="report the number of payoff comparisons")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve_srg)

    s = sub.add_parser("solve-net", help="solve an interdiction network file")
    s.add_argument("file")
    s.add_argument("--mode", choices=("strong", "weak"), default="strong")
    s.add_argument("--algo", choices=("sorted", "loglog", "logstar"), default="sorted")
    s.add_argument("--ledger", action="store_true", help="report the number of capacity comparisons")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve_net)

    s = sub.add_parser("oracle", help="brute-force values or widths of a small instance")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=10**6)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="check a solution file against a game")
    s.add_argument("game")
    s.add_argument("solution")
    s.add_argument("--mode", choices=("strong", "weak"), default="strong")
    s.add_argument("--start")
    s.add_argument("--cap", type=int, default=10**6)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument("--kind", choices=("srg", "net", "sortnet"), default="srg")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--n-min", type=int, default=3)
    s.add_argument("--n-term", type=int, default=4)
    s.add_argument("--out-degree", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    s.add_argument("--payoffs", type=int, nargs=2, default=(-10, 10), metavar=("LO", "HI"))
    s.add_argument("--ties", action="store_true", help="allow repeated payoffs")
    s.add_argument("--acyclic", action="store_true")
    s.add_argument("--cover", action="store_true", help="give every terminal an incoming arc")
    s.add_argument("--vertices", type=int, default=6)
    s.add_argument("--arcs", type=int, default=8)
    s.add_argument("--budget", type=int, nargs=2, default=(0, 1), metavar=("LO", "HI"))
    s.add_argument("--allow-small", action="store_true", help="allow fewer arcs than vertices")
    s.add_argument("--width", type=int, default=8, help="wires of the sorting network")
    s.add_argument("--dot", action="store_true", help="write DOT instead of JSON")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("reduce", help="turn a positive-payoff game into an interdiction network")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("dot", help="print an instance file as DOT")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("bench", help="run a benchmark suite and write CSV")
    s.add_argument("suite", nargs="?", help="JSON suite file; otherwise use the options below")
    s.add_argument("--kind", choices=("srg", "net"), default="srg")
    s.add_argument("--sizes", type=int, nargs="+", default=[1024, 4096])
    s.add_argument("--seeds", type=int, nargs="+", default=[0])
    s.add_argument("--algos", nargs="+")
    s.add_argument("--slope", action="store_true", help="also print the n log n fit for the sort rows")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SrgError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
