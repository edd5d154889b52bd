"""``mcts-bench``: timing, convergence export, tournaments and the GridWorld oracle."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..domains import DOMAINS
from ..domains.heuristic import HeuristicWeightTable
from ..errors import ConfigError
from ..solver import SOLVERS
from .config import BenchmarkConfig

log = logging.getLogger("mcts_toolkit.bench")


def _add_common(p: argparse.ArgumentParser, seed_required: bool) -> None:
    p.add_argument("--domain", choices=sorted(DOMAINS), default=None)
    p.add_argument("--solver", choices=sorted(SOLVERS), default=None,
                   help="tree representation (default: the domain's usual choice)")
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--depth-limit", type=int, default=1000)
    p.add_argument("--exploration-c", type=float, default=None, help="default: per-domain")
    p.add_argument("--discount", type=float, default=None, help="default: per-domain")
    p.add_argument("--seed", type=int, required=seed_required, default=None if seed_required else 0)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--noise", type=float, default=0.2, help="GridWorld slip probability")
    p.add_argument("--layout", type=Path, default=None, help="GridWorld layout file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcts-bench", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{time,converge,tournament,oracle}")

    p = sub.add_parser("time", help="mean wall-clock time per decision")
    _add_common(p, seed_required=False)
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("converge", help="export root-child statistics after every iteration")
    _add_common(p, seed_required=True)

    p = sub.add_parser("tournament", help="heuristic vs vanilla solver matches")
    _add_common(p, seed_required=True)
    p.add_argument("--games", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixed-colors", action="store_true",
                   help="heuristic side always moves first instead of alternating")
    p.add_argument("--heuristic-table", type=Path, default=None)

    p = sub.add_parser("oracle", help="value iteration on GridWorld")
    _add_common(p, seed_required=False)
    p.add_argument("--epsilon", type=float, default=1e-9)
    return parser


def _config(args, default_domain: str = "gridworld", **extra) -> BenchmarkConfig:
    return BenchmarkConfig(
        domain=args.domain or default_domain,
        solver=args.solver, iterations=args.iterations, depth_limit=args.depth_limit,
        exploration_c=args.exploration_c, discount=args.discount, seed=args.seed, out=args.out,
        noise=args.noise, layout=args.layout, **extra)


def cmd_time(args) -> int:
    from .timing import measure_decision_time, summary, write_timings

    cfg = _config(args, trials=args.trials)
    result = measure_decision_time(cfg)
    if cfg.out is not None:
        write_timings(result, cfg.out)
    print(summary(result, cfg.out))
    return 0


def cmd_converge(args) -> int:
    from .convergence import collect_convergence, final_snapshot, write_convergence

    cfg = _config(args)
    records = collect_convergence(cfg)
    if cfg.out is not None:
        write_convergence(records, cfg.out)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["iteration", "action", "exploration_term", "mean_reward", "visits"])
        for r in records:
            writer.writerow([r.iteration, r.action, repr(r.exploration_term), repr(r.mean_reward), r.visits])
        return 0
    print(f"wrote {len(records)} rows to {cfg.out}")
    for action, r in final_snapshot(records).items():
        print(f"{action:>8}  mean={r.mean_reward:.4f}  visits={r.visits}  exploration={r.exploration_term:.4f}")
    return 0


def cmd_tournament(args) -> int:
    from .tournament import SideConfig, run_tournament, write_matches

    cfg = _config(args, default_domain="reversi", games=args.games, workers=args.workers,
                  fixed_colors=args.fixed_colors, heuristic_table=args.heuristic_table)
    table = HeuristicWeightTable.load(cfg.heuristic_table) if cfg.heuristic_table else None
    common = dict(iterations=cfg.iterations, depth_limit=cfg.depth_limit, solver=cfg.solver,
                  exploration_c=cfg.exploration_c, discount=cfg.discount)
    side_a = SideConfig("heuristic", heuristic=True, table=table, **common)
    side_b = SideConfig("vanilla", **common)

    def progress(rec):
        log.info("game %d: %s in %d moves", rec.game, rec.winner, rec.moves)

    result = run_tournament(cfg.games, side_a, side_b, cfg.seed, domain=cfg.domain,
                            workers=cfg.workers, fixed_colors=cfg.fixed_colors, progress=progress)
    if cfg.out is not None:
        write_matches(result, cfg.out)
    print(f"games={result.games} wins={result.wins} losses={result.losses} ties={result.ties} "
          f"win_rate={result.win_rate:.3f}")
    return 0


def cmd_oracle(args) -> int:
    from ..domains.gridworld import GridWorldConfig, load_layout
    from ..oracle import format_gridworld, gridworld_model, policy_rows, value_iteration

    if args.domain not in (None, "gridworld"):
        raise ConfigError("the oracle only supports the gridworld domain")
    discount = 0.9 if args.discount is None else args.discount
    gw = load_layout(args.layout, noise=args.noise) if args.layout else GridWorldConfig(noise=args.noise)
    vf = value_iteration(gridworld_model(gw), discount, epsilon=args.epsilon)
    print(format_gridworld(gw, vf))
    sx, sy = gw.start
    from ..domains.gridworld import GridWorldState

    start = GridWorldState(sx, sy)
    if start in vf.policy:
        tied = "".join(m.symbol for m in vf.greedy[start])
        print(f"start ({sx},{sy}): V={vf.values[start]:.6f} policy={vf.policy[start].symbol} optimal={tied}")
    if args.out is not None:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y", "value", "policy", "optimal"])
            for row in policy_rows(gw, vf):
                writer.writerow([row[0], row[1], repr(row[2]), row[3], row[4]])
    return 0


COMMANDS = {"time": cmd_time, "converge": cmd_converge, "tournament": cmd_tournament, "oracle": cmd_oracle}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"mcts-bench: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
