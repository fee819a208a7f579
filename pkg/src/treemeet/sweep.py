"""Scenario grids, parameter sweeps, and CSV reporting.

A sweep enumerates a deterministic grid of scenarios, runs each one,
compares the observed meeting round against the analytic deadline, and
emits one report row per grid point. Symbolic delay markers (``a*``,
``3a*+1``, ``8a*+1``, ``alpha+3a*+5``) and distance-bound markers (``D``,
``D+3``, ``2D``) are resolved per scenario from the schedule algebra.

Grid enumeration order is fixed, so repeated sweeps produce byte-identical
CSV output.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from typing import IO, Iterable

import yaml

from .agents import KBD, KBL, NEK, URT
from .codec import activity_code
from .deadlines import deadline_for
from .engine import Scenario, SimContext, run
from .schedule import critical_stage, dfs_cost, pre_critical_time, stage_radius
from .tree import (
    OrientedTree,
    PlacementError,
    SEEDED,
    SYMMETRIC,
    UnorientedRegularTree,
    parse_degree_gen,
)

UNORIENTED = "unoriented-regular"
ORIENTED = "oriented"

DELTA_MARKERS = ("a*", "3a*+1", "8a*+1", "alpha+3a*+5")
DSTAR_MARKERS = ("D", "D+3", "2D")


def resolve_delta(marker: int | str, d: int, distance: int, label1: int) -> int:
    """Resolve a delay value or symbolic marker for one scenario.

    Markers use the critical stage of the scenario's distance and the
    activity-code length of the earlier agent.
    """
    if isinstance(marker, int):
        return marker
    i_star = critical_stage(d, distance)
    a_star = dfs_cost(d, stage_radius(d, i_star))
    if marker == "a*":
        return a_star
    if marker == "3a*+1":
        return 3 * a_star + 1
    if marker == "8a*+1":
        return 8 * a_star + 1
    if marker == "alpha+3a*+5":
        alpha = pre_critical_time(d, i_star, len(activity_code(label1)))
        return alpha + 3 * a_star + 5
    raise ValueError(f"unknown delay marker {marker!r}")


def resolve_dstar(marker: int | str, distance: int) -> int:
    if isinstance(marker, int):
        return marker
    if marker == "D":
        return distance
    if marker == "D+3":
        return distance + 3
    if marker == "2D":
        return 2 * distance
    raise ValueError(f"unknown distance-bound marker {marker!r}")


@dataclass
class SweepSpec:
    """Declarative grid over scenarios for one algorithm."""

    algorithm: str
    model: str = UNORIENTED
    degrees: tuple[int, ...] = ()
    distances: tuple[int, ...] = ()
    degree_gens: tuple[str, ...] = ()
    starts: tuple[tuple[int, int, int], ...] = ()  # (k1, k2, h)
    labels: tuple[int, ...] = ()
    label_pairs: tuple[tuple[int, int], ...] = ()
    deltas: tuple[int | str, ...] = (0,)
    seeds: tuple[int, ...] = (0,)
    labeling_modes: tuple[str, ...] = (SEEDED,)
    lstars: tuple[int, ...] = ()
    dstars: tuple[int | str, ...] = ()
    label_space: int | None = None
    horizon_factor: int = 4

    def pairs(self, bound: int | None = None) -> list[tuple[int, int]]:
        if self.label_pairs:
            explicit = [tuple(p) for p in self.label_pairs]
        else:
            pool = sorted(set(self.labels))
            explicit = [
                (a, b) for i, a in enumerate(pool) for b in pool[i + 1 :]
            ]
        if bound is not None:
            explicit = [p for p in explicit if max(p) <= bound]
        return explicit


@dataclass(frozen=True)
class GridPoint:
    index: int
    scenario_id: str
    scenario: Scenario
    deadline: int
    d_label: str
    distance: int
    delta: int
    seed: int


@dataclass
class DeadlineReport:
    """One sweep row: observation against prediction."""

    scenario_id: str
    algo: str
    d: str
    distance: int
    label1: int
    label2: int
    delta: int
    seed: int
    met: bool
    meeting_round: int | None
    deadline: int
    passed: bool
    moves: tuple[int, int]

    @property
    def margin(self) -> float | None:
        return None if self.meeting_round is None else self.meeting_round / self.deadline


def _place_oriented(gen_spec: str, seed: int, k1: int, k2: int, h: int):
    """Build an oriented tree and place agents, retrying the placement seed
    (then the tree seed) when the tree does not branch at the chosen site."""
    gen = parse_degree_gen(gen_spec)
    last: PlacementError | None = None
    for bump in range(16):
        tree_seed = seed if bump < 8 else seed + 9973 * (bump - 7)
        tree = OrientedTree(gen, seed=tree_seed)
        try:
            v1, v2 = tree.place(k1, k2, h, placement_seed=seed + 101 * bump)
            return tree, v1, v2
        except PlacementError as exc:
            last = exc
    raise PlacementError(
        f"no placement for {gen_spec} seed {seed} (k1={k1}, k2={k2}, h={h})"
    ) from last


def build_grid(spec: SweepSpec) -> list[GridPoint]:
    """Expand a sweep spec into concrete scenarios, deterministically."""
    points: list[GridPoint] = []
    if spec.algorithm == URT:
        if spec.model != UNORIENTED:
            raise ValueError("urt sweeps run on unoriented regular trees")
        for mode in spec.labeling_modes:
            for seed in spec.seeds:
                for d in spec.degrees:
                    tree = UnorientedRegularTree(d, labeling=mode, seed=seed)
                    for dist in spec.distances:
                        v1, v2 = tree.place(dist, placement_seed=seed)
                        for l1, l2 in spec.pairs():
                            for marker in spec.deltas:
                                delta = resolve_delta(marker, d, dist, l1)
                                scenario = Scenario(
                                    tree=tree,
                                    v1=v1,
                                    v2=v2,
                                    label1=l1,
                                    label2=l2,
                                    algorithm=URT,
                                    delay=delta,
                                    label_space=spec.label_space,
                                )
                                sid = (
                                    f"urt-{mode}-s{seed}-d{d}-D{dist}"
                                    f"-l{l1}.{l2}-delta[{marker}]={delta}"
                                )
                                points.append(
                                    _finish_point(points, sid, scenario, spec, str(d), dist, delta, seed)
                                )
        return points

    if spec.model != ORIENTED:
        raise ValueError(f"{spec.algorithm} sweeps run on oriented trees")
    lstars: tuple[int | None, ...] = spec.lstars or (None,)
    dstars: tuple[int | str, ...] = spec.dstars or (None,)
    for gen_spec in spec.degree_gens:
        for seed in spec.seeds:
            for k1, k2, h in spec.starts:
                tree, v1, v2 = _place_oriented(gen_spec, seed, k1, k2, h)
                dist = k1 + k2
                for lstar in lstars:
                    for dmark in dstars:
                        dstar = None if dmark is None else resolve_dstar(dmark, dist)
                        bound = lstar if spec.algorithm == KBL else None
                        for l1, l2 in spec.pairs(bound):
                            scenario = Scenario(
                                tree=tree,
                                v1=v1,
                                v2=v2,
                                label1=l1,
                                label2=l2,
                                algorithm=spec.algorithm,
                                lstar=lstar,
                                dstar=dstar,
                                label_space=spec.label_space,
                            )
                            sid = f"{spec.algorithm}-{gen_spec}-s{seed}-k{k1}.{k2}.h{h}"
                            if lstar is not None:
                                sid += f"-L{lstar}"
                            if dstar is not None:
                                sid += f"-R[{dmark}]={dstar}"
                            sid += f"-l{l1}.{l2}"
                            points.append(
                                _finish_point(points, sid, scenario, spec, gen_spec, dist, 0, seed)
                            )
    return points


def _finish_point(
    points: list,
    sid: str,
    scenario: Scenario,
    spec: SweepSpec,
    d_label: str,
    dist: int,
    delta: int,
    seed: int,
) -> GridPoint:
    deadline = deadline_for(scenario)
    scenario = replace(scenario, horizon=spec.horizon_factor * deadline)
    return GridPoint(
        index=len(points),
        scenario_id=sid,
        scenario=scenario,
        deadline=deadline,
        d_label=d_label,
        distance=dist,
        delta=delta,
        seed=seed,
    )


def run_grid(points: Iterable[GridPoint], *, engine: str = "auto") -> list[DeadlineReport]:
    """Run every grid point, sharing one context per distinct tree."""
    contexts: dict[object, SimContext] = {}
    reports = []
    for point in points:
        tree = point.scenario.tree
        context = contexts.get(tree)
        if context is None:
            context = contexts[tree] = SimContext(tree)
        outcome = run(point.scenario, context=context, engine=engine)
        passed = outcome.met and outcome.meeting_round <= point.deadline
        reports.append(
            DeadlineReport(
                scenario_id=point.scenario_id,
                algo=point.scenario.algorithm,
                d=point.d_label,
                distance=point.distance,
                label1=point.scenario.label1,
                label2=point.scenario.label2,
                delta=point.delta,
                seed=point.seed,
                met=outcome.met,
                meeting_round=outcome.meeting_round,
                deadline=point.deadline,
                passed=passed,
                moves=outcome.moves,
            )
        )
    return reports


def run_sweep(spec: SweepSpec, *, engine: str = "auto") -> list[DeadlineReport]:
    return run_grid(build_grid(spec), engine=engine)


CSV_COLUMNS = (
    "scenario_id",
    "algo",
    "d",
    "D",
    "l1",
    "l2",
    "delta",
    "seed",
    "met",
    "meeting_round",
    "deadline",
    "pass",
    "moves_a1",
    "moves_a2",
)


def write_csv(reports: Iterable[DeadlineReport], sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(
            [
                r.scenario_id,
                r.algo,
                r.d,
                r.distance,
                r.label1,
                r.label2,
                r.delta,
                r.seed,
                int(r.met),
                "" if r.meeting_round is None else r.meeting_round,
                r.deadline,
                int(r.passed),
                r.moves[0],
                r.moves[1],
            ]
        )


def load_spec(path: str) -> SweepSpec:
    """Read a sweep spec from a YAML config file."""
    with open(path) as fh:
        raw = yaml.safe_load(fh) or {}
    known = {f: raw[f] for f in raw if f in SweepSpec.__dataclass_fields__}
    unknown = set(raw) - set(known)
    if unknown:
        raise ValueError(f"unknown sweep config keys: {sorted(unknown)}")
    for key in ("degrees", "distances", "degree_gens", "labels", "deltas",
                "seeds", "labeling_modes", "lstars", "dstars"):
        if key in known:
            known[key] = tuple(known[key])
    if "starts" in known:
        known["starts"] = tuple(tuple(s) for s in known["starts"])
    if "label_pairs" in known:
        known["label_pairs"] = tuple(tuple(p) for p in known["label_pairs"])
    return SweepSpec(**known)


# ---------------------------------------------------------------------------
# Acceptance grids. The oriented start list covers same-branch (k1 == 0),
# split (k1, k2 > 0), and shallow-root (h <= 2) cases, plus deep starts
# where the root plays no role within any deadline.
# ---------------------------------------------------------------------------

URT_LABELS = (1, 2, 3, 5, 9, 16)
URT_DELTAS = (0, 1, "a*", "3a*+1", "8a*+1", "alpha+3a*+5")
ACCEPT_SEEDS = (0, 1, 2)

# Same-branch starts appear in both role orders (k1 = 0 and k2 = 0) so each
# label of a pair gets to play the deeper agent.
ORIENTED_STARTS = (
    (0, 1, 2),
    (1, 0, 2),
    (0, 3, 1),
    (3, 0, 1),
    (0, 8, 2),
    (1, 1, 0),
    (2, 3, 1),
    (4, 4, 0),
    (1, 7, 2),
    (3, 3, 2),
    (2, 2, 12),
    (1, 3, 600),
    (0, 5, 600),
    (5, 0, 600),
)

ORIENTED_STARTS_WIDE = ORIENTED_STARTS + (
    (0, 10, 2),
    (5, 5, 1),
    (0, 10, 600),
    (10, 0, 600),
    (4, 6, 40),
)

ORIENTED_GENS = ("regular(2)", "regular(3)", "random(1,3)")


def urt_acceptance_specs() -> list[SweepSpec]:
    common = dict(
        algorithm=URT,
        labels=URT_LABELS,
        deltas=URT_DELTAS,
        seeds=ACCEPT_SEEDS,
        labeling_modes=(SEEDED, SYMMETRIC),
    )
    return [
        SweepSpec(degrees=(2,), distances=tuple(range(1, 11)), **common),
        SweepSpec(degrees=(3, 4), distances=tuple(range(1, 6)), **common),
    ]


def kbl_acceptance_spec() -> SweepSpec:
    return SweepSpec(
        algorithm=KBL,
        model=ORIENTED,
        degree_gens=ORIENTED_GENS,
        starts=ORIENTED_STARTS,
        labels=tuple(range(1, 17)),
        lstars=(4, 16),
        seeds=(0,),
    )


def kbd_acceptance_spec() -> SweepSpec:
    return SweepSpec(
        algorithm=KBD,
        model=ORIENTED,
        degree_gens=ORIENTED_GENS,
        starts=ORIENTED_STARTS,
        labels=tuple(range(1, 17)),
        dstars=DSTAR_MARKERS,
        seeds=(0,),
    )


def nek_acceptance_spec() -> SweepSpec:
    return SweepSpec(
        algorithm=NEK,
        model=ORIENTED,
        degree_gens=ORIENTED_GENS,
        starts=ORIENTED_STARTS_WIDE,
        labels=tuple(range(1, 33)),
        label_space=32,
        seeds=(0,),
    )
