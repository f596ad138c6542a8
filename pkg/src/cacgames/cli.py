"""Command-line front end.

Commands read a game from a file, from standard input ("-"), or from the
built-in fixture corpus by name, and write JSON (or DOT) to standard
output.  All output is deterministic for a fixed seed; exit codes are
0 success, 1 input error, 2 size cap, 3 precondition failure, 4 internal
guarantee violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings

from .dynamics import (
    construct_consensus_path,
    global_reachability,
    reachability_from,
    simulate,
    SCHEDULERS,
)
from .errors import (
    GameInputError,
    GuaranteeViolationError,
    PreconditionError,
    SizeCapError,
)
from .fixtures import FIXTURES, fixture, fixture_names
from .game import Game, consensus_equilibria, enumerate_nash
from .gamefile import load_game, serialize_game, to_dot
from .generate import random_game
from .rationals import as_rational, format_rational
from .structure import game_cohesiveness, game_indecomposability

SCHEMA_PREFIX = "cacgames"

TRAP_LIST_CAP = 256


def _resolve_game(source: str, r=None) -> Game:
    if r is not None:
        r = as_rational(r, what="--r")
    if source in FIXTURES:
        return fixture(source, r=r)
    game = load_game(source)
    if r is not None:
        game = game.replace_thresholds(r)
    return game


def _threshold_summary(game: Game) -> dict:
    values = set(game.thresholds.values())
    if len(values) == 1:
        return {"uniform": format_rational(next(iter(values)))}
    return {
        "per_node": {str(v): format_rational(game.thresholds[v]) for v in game.nodes}
    }


def _witness_json(witness) -> dict:
    if witness is None:
        return None
    out = {"part0": sorted(witness.part0), "part1": sorted(witness.part1)}
    if witness.certifying_player is not None:
        out["certifying_player"] = witness.certifying_player
        out["condition"] = witness.condition
    return out


def _cohesiveness_json(report) -> dict:
    return {
        "holds": report.holds,
        "violators": [
            {"node": v, "inside": format_rational(w), "required": format_rational(req)}
            for v, w, req in report.violators
        ],
    }


def _path_json(game: Game, path, mode=None) -> dict:
    out = {
        "schema": f"{SCHEMA_PREFIX}-path/1",
        "start": game.format_bits(path.start),
        "end": game.format_bits(path.end),
        "length": len(path),
        "steps": [{"player": node, "action": action} for node, action in path.steps],
        "configs": [game.format_bits(x) for x in path.configs],
    }
    if mode is not None:
        out["mode"] = mode
    return out


def _reach_json(game: Game, report, target_name: str, target_size: int) -> dict:
    traps = sorted(report.trap_states)
    return {
        "schema": f"{SCHEMA_PREFIX}-reach/1",
        "source": report.source if report.source == "all" else game.format_bits(report.source),
        "target": target_name,
        "target_size": target_size,
        "reached": report.reached,
        "reachable_count": report.reachable_count,
        "trap_count": len(traps),
        "trap_states": [game.format_bits(x) for x in traps[:TRAP_LIST_CAP]],
        "trap_states_truncated": len(traps) > TRAP_LIST_CAP,
        "witness_path": None if report.witness is None else _path_json(game, report.witness),
    }


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


def _parse_pattern(game: Game, pattern: str) -> list:
    """Expand a 0/1/* configuration pattern into masks, ascending."""
    if len(pattern) != game.n or any(c not in "01*" for c in pattern):
        raise GameInputError(
            f"pattern must be {game.n} characters of 0, 1 or *, got {pattern!r}"
        )
    stars = [k for k, c in enumerate(pattern) if c == "*"]
    if len(stars) > 16:
        raise GameInputError("too many wildcards (limit 16)")
    base = 0
    for k, c in enumerate(pattern):
        if c == "1":
            base |= 1 << k
    masks = []
    for combo in range(1 << len(stars)):
        x = base
        for t, k in enumerate(stars):
            if combo >> t & 1:
                x |= 1 << k
        masks.append(x)
    return sorted(masks)


def _nash_target(game: Game, which: str, cap: int) -> list:
    if which == "nash":
        return enumerate_nash(game, cap=cap)
    return consensus_equilibria(game, cap=cap)


# -- subcommands ---------------------------------------------------------


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    game = _resolve_game(args.game, r=args.r)
    report = {
        "schema": f"{SCHEMA_PREFIX}-analysis/1",
        "game": {
            "source": args.game,
            "nodes": game.n,
            "edges": len(game.graph.edges()),
            "coordinating": sorted(game.coordinating),
            "anticoordinating": sorted(game.anticoordinating),
        },
        "thresholds": _threshold_summary(game),
    }
    report["cohesiveness"] = {
        "consensus_one": _cohesiveness_json(game_cohesiveness(game, toward=1)),
        "consensus_zero": _cohesiveness_json(game_cohesiveness(game, toward=0)),
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        indec = {
            mode: game_indecomposability(game, mode=mode, jobs=args.jobs)
            for mode in ("strict", "weak")
        }
    report["indecomposability"] = {
        mode: {"holds": rep.holds, "witness": _witness_json(rep.witness)}
        for mode, rep in indec.items()
    }
    code = 0
    try:
        nash = enumerate_nash(game, cap=args.cap)
        ones = consensus_equilibria(game, action=1, cap=args.cap)
        zeros = consensus_equilibria(game, action=0, cap=args.cap)
        report["nash_count"] = len(nash)
        report["nash"] = [game.format_bits(x) for x in nash]
        report["consensus_equilibria"] = {
            "ones": [game.format_bits(x) for x in ones],
            "zeros": [game.format_bits(x) for x in zeros],
        }
        consensus = sorted(set(ones) | set(zeros))
        if consensus:
            target, target_name = consensus, "consensus"
        elif nash:
            target, target_name = nash, "nash"
        else:
            target, target_name = None, None
        if target is None:
            report["reachability"] = {"status": "not-applicable"}
        else:
            reach = global_reachability(game, target, cap=args.cap)
            report["reachability"] = {
                "status": "ok",
                "target": target_name,
                "reached": reach.reached,
                "reachable_count": reach.reachable_count,
                "trap_count": len(reach.trap_states),
            }
    except SizeCapError as exc:
        report["enumeration"] = {"status": "skipped-size-cap", "detail": str(exc)}
        code = 2
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - started}
    _emit(report)
    return code


def cmd_reach(args) -> int:
    game = _resolve_game(args.game, r=args.r)
    target = _nash_target(game, args.target, args.cap)
    if args.all:
        report = global_reachability(game, target, cap=args.cap)
        _emit(_reach_json(game, report, args.target, len(target)))
        return 0
    sources = _parse_pattern(game, args.from_)
    reports = [
        _reach_json(game, reachability_from(game, x0, target, cap=args.cap), args.target, len(target))
        for x0 in sources
    ]
    _emit(reports[0] if len(reports) == 1 else reports)
    return 0


def cmd_simulate(args) -> int:
    game = _resolve_game(args.game, r=args.r)
    if args.from_ is not None:
        starts = _parse_pattern(game, args.from_)
    else:
        starts = None
    for run in range(args.runs):
        seed = args.seed + run
        if starts is None:
            x0 = random.Random(seed).getrandbits(game.n) if game.n else 0
        else:
            x0 = starts[run % len(starts)]
        traj = simulate(
            game,
            x0,
            scheduler=args.scheduler,
            seed=seed,
            max_steps=args.max_steps,
        )
        print(
            json.dumps(
                {
                    "schema": f"{SCHEMA_PREFIX}-trajectory/1",
                    "run": run,
                    "seed": seed,
                    "scheduler": traj.scheduler,
                    "start": game.format_bits(traj.start),
                    "final": game.format_bits(traj.configs[-1]),
                    "status": traj.status,
                    "activations": traj.activations,
                    "changes": len(traj.configs) - 1,
                }
            )
        )
    return 0


def cmd_path(args) -> int:
    game = _resolve_game(args.game, r=args.r)
    x0 = game.parse_bits(args.from_)
    path = construct_consensus_path(game, x0, mode=args.mode)
    _emit(_path_json(game, path, mode=args.mode))
    return 0


def cmd_gen(args) -> int:
    game = random_game(
        args.seed,
        args.nodes,
        edge_prob=as_rational(args.edge_prob, what="--edge-prob"),
        coord_frac=as_rational(args.coord_frac, what="--coord-frac"),
        threshold=args.threshold,
        max_weight=args.max_weight,
    )
    sys.stdout.write(serialize_game(game))
    return 0


def cmd_export(args) -> int:
    game = _resolve_game(args.game, r=args.r)
    config = game.parse_bits(args.config) if args.config is not None else None
    sys.stdout.write(to_dot(game, config))
    return 0


# -- argument parsing ------------------------------------------------------


def _add_game_argument(parser) -> None:
    parser.add_argument(
        "game",
        help=f"game file path, '-' for stdin, or a fixture name ({', '.join(fixture_names())})",
    )
    parser.add_argument(
        "--r",
        default=None,
        help="override every threshold with this rational, e.g. 1/2",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cacgames",
        description="Exact analysis of coordination/anti-coordination games on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural predicates, equilibria, reachability")
    _add_game_argument(p)
    p.add_argument("--cap", type=int, default=20, help="player cap for exhaustive scans")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for the partition scan")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing (non-deterministic)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reach", help="best-response reachability of an equilibrium set")
    _add_game_argument(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--from", dest="from_", metavar="BITS", help="source configuration (0/1/*, ascending node id)")
    group.add_argument("--all", action="store_true", help="check every configuration")
    p.add_argument("--target", choices=("nash", "consensus"), default="nash")
    p.add_argument("--cap", type=int, default=20)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("simulate", help="asynchronous best-response runs")
    _add_game_argument(p)
    p.add_argument("--from", dest="from_", metavar="BITS", default=None,
                   help="start pattern (0/1/*); omitted means a seeded random start per run")
    p.add_argument("--scheduler", choices=SCHEDULERS, default="uniform-random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--runs", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("path", help="construct a best-response path to a consensus equilibrium")
    _add_game_argument(p)
    p.add_argument("--from", dest="from_", metavar="BITS", required=True)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("gen", help="emit a random game file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edge-prob", default="1/2")
    p.add_argument("--coord-frac", default="1/2")
    p.add_argument("--threshold", default="random", help="'random' or a rational like 1/2")
    p.add_argument("--max-weight", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export", help="emit Graphviz DOT")
    _add_game_argument(p)
    p.add_argument("--config", default=None, help="overlay a configuration (0/1 string)")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GameInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GuaranteeViolationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
