"""Named verification suites behind the ``verify`` CLI subcommand.

Each suite runs a bundle of invariant checks at desk scale and reports one
line per check. These are quick smoke harnesses; the full acceptance grids
live in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .agents import KBD, KBL, NEK, URT
from .codec import (
    activity_code,
    distinguishing_offset,
    manchester_code,
    padded_code,
    prefix_free_code,
    width_for_bound,
)
from .engine import Scenario, SimContext, run
from .schedule import (
    ball_size,
    bit_duration,
    critical_stage,
    dfs_cost,
    pre_critical_time,
    stage_duration,
    stage_radius,
    telescoping_check,
)
from .sweep import SweepSpec, run_sweep
from .tree import (
    NodeRef,
    OrientedTree,
    RandomChildren,
    RegularChildren,
    SEEDED,
    SYMMETRIC,
    UnorientedRegularTree,
    distance,
)

SUITES = ("codecs", "schedule", "tree", "urt-bounds", "oriented-bounds", "all")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, ok, detail)


# -- codecs -----------------------------------------------------------------


def _codecs_suite() -> list[CheckResult]:
    results = []

    bad = [l for l in range(1, 4097) if "000" in activity_code(l)]
    results.append(_check("activity-code-no-000 (labels 1..4096)", not bad, f"violations={bad[:5]}"))

    ok = all(
        activity_code(l).startswith("01")
        and activity_code(l)[-2:].count("1") == 1
        for l in range(1, 4097)
    )
    results.append(_check("activity-code-endpoints (labels 1..4096)", ok))

    prefix_bad = [
        (a, b)
        for a in range(1, 257)
        for b in range(1, 257)
        if a != b and prefix_free_code(b).startswith(prefix_free_code(a))
    ]
    results.append(
        _check("prefix-freeness (labels 1..256)", not prefix_bad, f"violations={prefix_bad[:5]}")
    )

    bound = 256
    width = 2 * width_for_bound(bound)
    pad_bad = []
    for a, b in combinations(range(1, bound + 1), 2):
        for l1, l2 in ((a, b), (b, a)):
            c1, c2 = padded_code(l1, bound), padded_code(l2, bound)
            if not any(
                c1[j] == "1" and c2[j] == "0" for j in range(width)
            ):
                pad_bad.append((l1, l2))
    results.append(
        _check(
            "padded-distinguishing-index (labels 1..256, both orders)",
            not pad_bad,
            f"violations={pad_bad[:5]}",
        )
    )

    limit = 4 * math.log2(64)
    worst = 0
    worst_at = None
    for a in range(1, 65):
        for b in range(1, 65):
            if a == b:
                continue
            for j in range(4, 101):
                y = distinguishing_offset(a, b, j)
                if y > worst:
                    worst, worst_at = y, (a, b, j)
    results.append(
        _check(
            "repeating-code-offset <= 4*log2(64) (labels 1..64, j 4..100)",
            worst <= limit,
            f"max offset {worst} at {worst_at}, bound {limit:g}",
        )
    )
    return results


# -- schedule ---------------------------------------------------------------


def _closed_form_duration(d: int, i: int, y: int) -> int:
    if d == 2:
        return 4**i * 8 * y
    return 4 * y * d * ((d - 1) ** (2 * i) - 1) // (d - 2)


def _schedule_suite() -> list[CheckResult]:
    results = []
    grid = [
        (d, i, y)
        for d in (2, 3, 4, 5)
        for i in range(6)
        for y in (6, 12, 18)
    ]
    ok = all(
        stage_duration(d, i, y) == _closed_form_duration(d, i, y) for d, i, y in grid
    )
    results.append(_check("stage-duration-closed-form (d<=5, i<=5)", ok))

    ok = True
    for d in (2, 3, 4, 5):
        for i in range(5):
            for q in range(5):
                lhs = stage_duration(d, i + q, 6)
                if d == 2:
                    rhs = 4**q * stage_duration(d, i, 6)
                else:
                    rhs = (d - 1) ** (2 * q) * stage_duration(d, i, 6) + stage_duration(d, q, 6)
                ok = ok and lhs == rhs
    results.append(_check("stage-duration-shift-identity", ok))

    ok = all(
        telescoping_check(d, i)
        for d in (2, 3, 4, 5)
        for i in range(2 if d > 2 else 1, 7)
    )
    results.append(_check("bit-duration-telescoping (ratio in [4,5])", ok))

    ok = True
    for d in (2, 3, 4, 5):
        for i_star in range(1, 6):
            for y in (6, 12, 18):
                alpha = pre_critical_time(d, i_star, y)
                ok = ok and 3 * alpha <= stage_duration(d, i_star, y)
                if d == 2:
                    r = stage_radius(d, i_star)
                    ok = ok and alpha == (8 * y * r - 8 * y) // 3
                else:
                    s = stage_duration(d, i_star, y)
                    ok = ok and alpha * ((d - 1) ** 2 - 1) <= s
    results.append(_check("pre-critical-time-bounds", ok))

    ok = all(
        dfs_cost(d, r) == 2 * (ball_size(d, r) - 1)
        for d in (2, 3, 4, 5)
        for r in range(9)
    )
    results.append(_check("dfs-cost-definition", ok))
    return results


# -- tree -------------------------------------------------------------------


def _sample_nodes(tree, depth: int, seed: int) -> list[NodeRef]:
    nodes = [NodeRef()]
    node = NodeRef()
    for level in range(depth):
        deg = tree.degree(node)
        slots = deg if node.is_origin and not tree.oriented else max(deg - 1, 1)
        if tree.oriented:
            slots = tree.children(node)
            if slots == 0:
                break
        node = node.child((seed + level) % slots)
        nodes.append(node)
    return nodes


def _tree_suite() -> list[CheckResult]:
    results = []
    trees = [
        UnorientedRegularTree(2, SEEDED, 7),
        UnorientedRegularTree(3, SEEDED, 7),
        UnorientedRegularTree(4, SYMMETRIC, 7),
        UnorientedRegularTree(3, SYMMETRIC, 7),
        OrientedTree(RegularChildren(2), 7),
        OrientedTree(RandomChildren(1, 3), 7),
    ]
    sym_ok = True
    bij_ok = True
    for tree in trees:
        for node in _sample_nodes(tree, 6, 3):
            deg = tree.degree(node)
            seen = set()
            for port in range(deg):
                nbr, entry = tree.neighbor(node, port)
                seen.add(nbr)
                back, back_port = tree.neighbor(nbr, entry)
                sym_ok = sym_ok and back == node and back_port == port
            bij_ok = bij_ok and len(seen) == deg
    results.append(_check("edge-symmetry (sampled)", sym_ok))
    results.append(_check("port-bijectivity (sampled)", bij_ok))

    t1 = UnorientedRegularTree(3, SEEDED, 99)
    t2 = UnorientedRegularTree(3, SEEDED, 99)
    node = NodeRef((1, 0, 1))
    ok = all(t1.neighbor(node, p) == t2.neighbor(node, p) for p in range(3))
    results.append(_check("determinism (equal params, equal answers)", ok))

    sym = UnorientedRegularTree(4, SYMMETRIC, 0)
    ok = True
    for node in _sample_nodes(sym, 6, 1):
        for port in range(4):
            _, entry = sym.neighbor(node, port)
            ok = ok and entry == port
    results.append(_check("symmetric-mode entry==exit", ok))

    otree = OrientedTree(RandomChildren(1, 3), 5)
    node = _sample_nodes(otree, 8, 2)[-1]
    here = node
    for _ in range(node.depth):
        here, _ = otree.neighbor(here, 0)
    results.append(_check("oriented-ascent via port 0", here == NodeRef()))

    tree = UnorientedRegularTree(3, SEEDED, 11)
    ok = True
    for span in (1, 2, 5, 9):
        v1, v2 = tree.place(span, placement_seed=21)
        ok = ok and distance(v1, v2) == span and v1 == NodeRef()
    results.append(_check("unoriented-placement distance oracle", ok))

    ok = True
    for k1, k2, h in ((0, 3, 2), (2, 2, 0), (1, 4, 3)):
        v1, v2 = OrientedTree(RegularChildren(3), 1).place(k1, k2, h, 9)
        ok = ok and distance(v1, v2) == k1 + k2
    results.append(_check("oriented-placement distance oracle", ok))
    return results


# -- bounds -----------------------------------------------------------------


def _bounds_results(name: str, specs: list[SweepSpec]) -> list[CheckResult]:
    results = []
    for spec in specs:
        reports = run_sweep(spec)
        failures = [r for r in reports if not r.passed]
        results.append(
            _check(
                f"{name}: {spec.algorithm} grid ({len(reports)} runs)",
                not failures,
                f"failures={[f.scenario_id for f in failures[:3]]}",
            )
        )
    return results


def _urt_bounds_suite() -> list[CheckResult]:
    spec = SweepSpec(
        algorithm=URT,
        degrees=(2, 3),
        distances=(1, 2, 3),
        labels=(1, 2, 5),
        deltas=(0, 1, "a*", "alpha+3a*+5"),
        seeds=(0,),
        labeling_modes=(SEEDED, SYMMETRIC),
    )
    return _bounds_results("urt-bounds", [spec])


def _oriented_bounds_suite() -> list[CheckResult]:
    starts = ((0, 2, 1), (1, 2, 0), (2, 2, 2), (1, 3, 12))
    specs = [
        SweepSpec(
            algorithm=KBL,
            model="oriented",
            degree_gens=("regular(2)", "random(1,3)"),
            starts=starts,
            labels=(1, 2, 3, 4),
            lstars=(4,),
        ),
        SweepSpec(
            algorithm=KBD,
            model="oriented",
            degree_gens=("regular(2)", "random(1,3)"),
            starts=starts,
            labels=(1, 2, 3, 4),
            dstars=("D", "2D"),
        ),
        SweepSpec(
            algorithm=NEK,
            model="oriented",
            degree_gens=("regular(2)", "random(1,3)"),
            starts=starts,
            labels=(1, 2, 3, 4),
            label_space=4,
        ),
    ]
    return _bounds_results("oriented-bounds", specs)


_SUITE_FUNCS: dict[str, Callable[[], list[CheckResult]]] = {
    "codecs": _codecs_suite,
    "schedule": _schedule_suite,
    "tree": _tree_suite,
    "urt-bounds": _urt_bounds_suite,
    "oriented-bounds": _oriented_bounds_suite,
}


def verify(suite: str) -> list[CheckResult]:
    """Run one named suite (or ``all``) and return its check results."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    results = []
    for name in names:
        results.extend(_SUITE_FUNCS[name]())
    return results
