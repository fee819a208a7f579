"""Closed-form round accounting for the unoriented search schedule.

Stage ``i`` of the unoriented algorithm explores balls of radius ``r_i``
(doubling-squared on the line, linear otherwise); every bit of the agent's
activity code costs ``pi_i = 2 * dfs_cost(r_i)`` rounds whether it is spent
exploring or idling. All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass


def ball_size(d: int, r: int) -> int:
    """Number of nodes within distance ``r`` of any node of a d-regular tree."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    if d == 2:
        return 2 * r + 1
    return 1 + d * ((d - 1) ** r - 1) // (d - 2)


def dfs_cost(d: int, r: int) -> int:
    """Edge traversals of a depth-first exploration of a radius-``r`` ball,
    starting and finishing at its center: ``2 * (ball_size - 1)``."""
    return 2 * (ball_size(d, r) - 1)


def stage_radius(d: int, i: int) -> int:
    """Ball radius explored in stage ``i``: ``4**i`` on the line, else ``2i``."""
    if i < 0:
        raise ValueError(f"stage index must be >= 0, got {i}")
    return 4**i if d == 2 else 2 * i


def bit_duration(d: int, i: int) -> int:
    """Rounds spent per code bit in stage ``i``: two ball explorations."""
    return 2 * dfs_cost(d, stage_radius(d, i))


def stage_duration(d: int, i: int, y: int) -> int:
    """Rounds spent in stage ``i`` by an agent whose activity code has
    length ``y``."""
    if y < 6:
        raise ValueError(f"activity codes have length >= 6, got {y}")
    return y * bit_duration(d, i)


def critical_stage(d: int, distance: int) -> int:
    """First stage whose radius reaches the initial distance between agents."""
    if distance < 1:
        raise ValueError(f"distance must be >= 1, got {distance}")
    i = 0
    while stage_radius(d, i) < distance:
        i += 1
    return i


def pre_critical_time(d: int, i_star: int, y: int) -> int:
    """Rounds elapsed before stage ``i_star`` begins: the exact sum of all
    earlier stage durations."""
    return sum(stage_duration(d, i, y) for i in range(i_star))


def telescoping_check(d: int, i: int) -> bool:
    """Whether consecutive bit durations telescope by a factor in [4, 5].

    Meaningful for ``i >= 1`` on the line and ``i >= 2`` otherwise (both
    durations nonzero).
    """
    prev, cur = bit_duration(d, i - 1), bit_duration(d, i)
    return 4 * prev <= cur <= 5 * prev


@dataclass(frozen=True)
class ScheduleProfile:
    """Per-agent schedule: wake round, stage start rounds, and stage data."""

    d: int
    y: int
    wake: int
    radii: tuple[int, ...]
    bit_durations: tuple[int, ...]
    durations: tuple[int, ...]
    starts: tuple[int, ...]

    def start_of(self, i: int) -> int:
        return self.starts[i]


def schedule_profile(d: int, y: int, wake: int, stages: int) -> ScheduleProfile:
    """Schedule data for stages ``0 .. stages`` of one agent.

    ``starts[i + 1] == starts[i] + durations[i]`` and ``starts[0] == wake``.
    """
    radii = tuple(stage_radius(d, i) for i in range(stages + 1))
    pis = tuple(bit_duration(d, i) for i in range(stages + 1))
    durations = tuple(y * pi for pi in pis)
    starts = [wake]
    for s in durations[:-1]:
        starts.append(starts[-1] + s)
    return ScheduleProfile(d, y, wake, radii, pis, durations, tuple(starts))
