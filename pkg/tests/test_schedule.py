from collections import deque

import pytest

from treemeet.schedule import (
    ball_size,
    bit_duration,
    critical_stage,
    dfs_cost,
    pre_critical_time,
    schedule_profile,
    stage_duration,
    stage_radius,
    telescoping_check,
)
from treemeet.tree import NodeRef, UnorientedRegularTree


def bfs_ball_count(tree, center: NodeRef, radius: int) -> int:
    """Breadth-first node count, independent of the closed form."""
    seen = {center}
    frontier = deque([(center, 0)])
    while frontier:
        node, dist = frontier.popleft()
        if dist == radius:
            continue
        for port in range(tree.degree(node)):
            nbr, _ = tree.neighbor(node, port)
            if nbr not in seen:
                seen.add(nbr)
                frontier.append((nbr, dist + 1))
    return len(seen)


def test_ball_size_examples():
    assert ball_size(2, 0) == 1
    assert ball_size(7, 0) == 1
    assert ball_size(2, 4) == 9
    assert ball_size(3, 2) == 10


def test_ball_size_matches_bfs_enumeration():
    for d in (2, 3, 4):
        tree = UnorientedRegularTree(d, seed=3)
        for r in range(5):
            assert ball_size(d, r) == bfs_ball_count(tree, NodeRef(), r)


def test_ball_size_rejects_bad_args():
    with pytest.raises(ValueError):
        ball_size(1, 2)
    with pytest.raises(ValueError):
        ball_size(3, -1)


def test_dfs_cost_examples():
    assert dfs_cost(5, 0) == 0
    assert dfs_cost(2, 1) == 4
    assert dfs_cost(3, 2) == 18


def test_stage_radius_examples():
    assert stage_radius(2, 2) == 16
    assert stage_radius(3, 1) == 2
    assert stage_radius(5, 0) == 0


def test_bit_duration_examples():
    assert bit_duration(2, 0) == 8
    assert bit_duration(3, 1) == 36
    assert bit_duration(3, 0) == 0


def test_stage_duration_examples():
    assert stage_duration(2, 1, 6) == 192
    assert stage_duration(3, 1, 6) == 216
    assert stage_duration(3, 0, 18) == 0


def _closed_form(d, i, y):
    if d == 2:
        return 4**i * 8 * y
    return 4 * y * d * ((d - 1) ** (2 * i) - 1) // (d - 2)


def test_stage_duration_closed_form_grid():
    for d in (2, 3, 4, 5):
        for i in range(6):
            for y in (6, 12, 18):
                assert stage_duration(d, i, y) == _closed_form(d, i, y)


def test_stage_duration_shift_identity():
    for d in (2, 3, 4, 5):
        for i in range(5):
            for q in range(5):
                if d == 2:
                    expected = 4**q * stage_duration(d, i, 6)
                else:
                    expected = (d - 1) ** (2 * q) * stage_duration(d, i, 6) + stage_duration(d, q, 6)
                assert stage_duration(d, i + q, 6) == expected


def test_critical_stage_examples():
    assert critical_stage(2, 1) == 0
    assert critical_stage(2, 5) == 2
    assert critical_stage(3, 5) == 3


def test_critical_stage_is_smallest():
    for d in (2, 3, 4):
        for dist in range(1, 40):
            i = critical_stage(d, dist)
            assert stage_radius(d, i) >= dist
            assert i == 0 or stage_radius(d, i - 1) < dist


def test_pre_critical_time_examples():
    assert pre_critical_time(2, 1, 6) == 48
    assert pre_critical_time(3, 1, 6) == 0
    assert pre_critical_time(3, 2, 6) == 216


def test_pre_critical_time_bounds():
    for d in (2, 3, 4, 5):
        for i_star in range(1, 6):
            for y in (6, 12, 18):
                alpha = pre_critical_time(d, i_star, y)
                assert 3 * alpha <= stage_duration(d, i_star, y)
                if d == 2:
                    r = stage_radius(d, i_star)
                    assert alpha == (8 * y * r - 8 * y) // 3
                else:
                    assert alpha * ((d - 1) ** 2 - 1) <= stage_duration(d, i_star, y)


def test_telescoping_examples():
    assert telescoping_check(2, 3)
    assert telescoping_check(3, 2)
    assert telescoping_check(4, 3)


def test_schedule_profile_cumulative_starts():
    prof = schedule_profile(3, 12, wake=7, stages=4)
    assert prof.starts[0] == 7
    for i in range(4):
        assert prof.starts[i + 1] == prof.starts[i] + prof.durations[i]
    assert prof.radii == (0, 2, 4, 6, 8)
    assert prof.durations == tuple(stage_duration(3, i, 12) for i in range(5))
