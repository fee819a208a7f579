"""Command-line interface: run one scenario, sweep a grid, verify suites."""

from __future__ import annotations

import argparse
import sys

from .agents import ALGORITHMS, ORIENTED_ALGORITHMS, URT
from .deadlines import deadline_for
from .engine import Scenario, run
from .sweep import load_spec, resolve_delta, run_sweep, write_csv
from .tree import (
    OrientedTree,
    SEEDED,
    SYMMETRIC,
    UnorientedRegularTree,
    parse_degree_gen,
)
from .verify import SUITES, verify


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treemeet",
        description="Round-exact two-agent rendezvous simulator on infinite trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    p_run.add_argument("--model", choices=["unoriented-regular", "oriented"],
                       default="unoriented-regular")
    p_run.add_argument("--d", type=int, help="degree of the unoriented regular tree")
    p_run.add_argument("--degree-gen", help="oriented child generator, e.g. 'regular(2)' or 'random(1,3)'")
    p_run.add_argument("--labeling", choices=[SEEDED, SYMMETRIC], default=SEEDED)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--D", type=int, help="initial distance (unoriented placement)")
    p_run.add_argument("--k1", type=int, help="agent 1 depth below the common ancestor")
    p_run.add_argument("--k2", type=int, help="agent 2 depth below the common ancestor")
    p_run.add_argument("--h", type=int, help="depth of the common ancestor")
    p_run.add_argument("--l1", type=int, required=True)
    p_run.add_argument("--l2", type=int, required=True)
    p_run.add_argument("--delta", default="0",
                       help="delay in rounds, or a marker: a*, 3a*+1, 8a*+1, alpha+3a*+5")
    p_run.add_argument("--algo", choices=list(ALGORITHMS), required=True)
    p_run.add_argument("--lstar", type=int, help="label-space bound (kbl)")
    p_run.add_argument("--dstar", type=int, help="distance bound (kbd)")
    p_run.add_argument("--label-space", type=int, help="label space size for the nek deadline")
    p_run.add_argument("--horizon", type=int)
    p_run.add_argument("--trace", metavar="FILE", help="write a per-round trace (JSON lines)")
    p_run.add_argument("--delay-probe", action="store_true",
                       help="allow a nonzero delay with oriented algorithms")

    p_sweep = sub.add_parser("sweep", help="run a scenario grid from a config file")
    p_sweep.add_argument("--config", required=True, help="YAML sweep spec")
    p_sweep.add_argument("--out", required=True, help="CSV output path")

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", choices=list(SUITES), required=True)
    return parser


def _scenario_from_args(args) -> Scenario:
    if args.model == "unoriented-regular":
        if args.d is None or args.D is None:
            raise SystemExit("unoriented scenarios need --d and --D")
        tree = UnorientedRegularTree(args.d, labeling=args.labeling, seed=args.seed)
        v1, v2 = tree.place(args.D, placement_seed=args.seed)
        try:
            delta = int(args.delta)
        except ValueError:
            delta = resolve_delta(args.delta, args.d, args.D, args.l1)
    else:
        if args.degree_gen is None or args.k1 is None or args.k2 is None or args.h is None:
            raise SystemExit("oriented scenarios need --degree-gen, --k1, --k2 and --h")
        tree = OrientedTree(parse_degree_gen(args.degree_gen), seed=args.seed)
        v1, v2 = tree.place(args.k1, args.k2, args.h, placement_seed=args.seed)
        delta = int(args.delta)
    return Scenario(
        tree=tree,
        v1=v1,
        v2=v2,
        label1=args.l1,
        label2=args.l2,
        algorithm=args.algo,
        lstar=args.lstar,
        dstar=args.dstar,
        delay=delta,
        horizon=args.horizon,
        label_space=args.label_space,
        delay_probe=args.delay_probe,
    )


def _cmd_run(args) -> int:
    scenario = _scenario_from_args(args)
    deadline = deadline_for(scenario)
    trace_sink = open(args.trace, "w") if args.trace else None
    try:
        outcome = run(scenario, trace_sink=trace_sink)
    finally:
        if trace_sink is not None:
            trace_sink.close()
    print(f"scenario: algo={scenario.algorithm} D={scenario.initial_distance} "
          f"l1={scenario.label1} l2={scenario.label2} delta={scenario.delay}")
    print(f"deadline: {deadline} rounds (horizon {outcome.horizon})")
    if outcome.met:
        ok = outcome.meeting_round <= deadline
        print(f"met: yes, round {outcome.meeting_round} at node {outcome.meeting_node} "
              f"[{'within' if ok else 'AFTER'} deadline]")
        print(f"moves: agent1={outcome.moves[0]} agent2={outcome.moves[1]}")
        return 0 if ok else 2
    print("met: no (horizon exhausted)")
    return 1


def _cmd_sweep(args) -> int:
    spec = load_spec(args.config)
    reports = run_sweep(spec)
    with open(args.out, "w") as fh:
        write_csv(reports, fh)
    failures = [r for r in reports if not r.passed]
    print(f"{len(reports)} scenarios, {len(failures)} failures -> {args.out}")
    for r in failures[:10]:
        print(f"  FAIL {r.scenario_id}: met={r.met} round={r.meeting_round} deadline={r.deadline}")
    return 1 if failures else 0


def _cmd_verify(args) -> int:
    results = verify(args.suite)
    bad = 0
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        line = f"{status} {res.name}"
        if res.detail and not res.ok:
            line += f" ({res.detail})"
        print(line)
        bad += not res.ok
    print(f"{len(results) - bad}/{len(results)} checks passed")
    return 1 if bad else 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
