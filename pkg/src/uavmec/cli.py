"""Command-line entry point.

Subcommands:
    run <config.json>                       train all configured algorithms
    sweep <config.json> --axis <name>       sweep one scenario axis
    trajectory <checkpoint> <config.json>   export one greedy rollout
    baseline <config.json>                  print greedy-baseline returns

Output root defaults to the config's output_dir and may be overridden with
the UAVMEC_OUTPUT_ROOT environment variable. Exit code 0 on success; on
failure a machine-readable ``ERROR {json}`` line goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .baseline import greedy_baseline
from .config import ConfigError, load_experiment
from .td3 import load_actor


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uavmec",
                                description="UAV-assisted D2D offloading experiments")
    sub = p.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="train configured algorithms and seeds")
    run_p.add_argument("config")
    run_p.add_argument("--name", default="run")

    sweep_p = sub.add_parser("sweep", help="sweep one scenario axis")
    sweep_p.add_argument("config")
    sweep_p.add_argument("--axis", required=True, choices=harness.AXES)
    sweep_p.add_argument("--name", default=None)

    traj_p = sub.add_parser("trajectory", help="export a greedy rollout")
    traj_p.add_argument("checkpoint")
    traj_p.add_argument("config")
    traj_p.add_argument("--seed", type=int, default=0)
    traj_p.add_argument("--out", default="trajectory.csv")

    base_p = sub.add_parser("baseline", help="greedy-baseline episode returns")
    base_p.add_argument("config")
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            art = harness.run(load_experiment(args.config), name=args.name)
            print(f"convergence CSV: {art.convergence_csv}")
        elif args.command == "sweep":
            cfg = load_experiment(args.config)
            art = harness.sweep(cfg, args.axis, name=args.name)
            print(f"sweep summary CSV: {art.sweep_csv}")
        elif args.command == "trajectory":
            cfg = load_experiment(args.config)
            actor = load_actor(args.checkpoint)
            harness.export_trajectory(actor, cfg.sim, args.seed, args.out)
            print(f"trajectory CSV: {args.out}")
        elif args.command == "baseline":
            cfg = load_experiment(args.config)
            for seed in cfg.seeds:
                ret = greedy_baseline(cfg.sim, seed)
                print(f"seed={seed} return={ret!r}")
    except (ConfigError, OSError, ValueError) as exc:
        print("ERROR " + json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
