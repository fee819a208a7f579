"""Analytic meeting deadlines, one per algorithm.

These are predictions computed purely from the schedule algebra and code
lengths -- no simulation feedback -- and every simulated run is asserted
against them. Each formula dominates all case splits of the corresponding
correctness argument, so a single expression serves as the bound.
"""

from __future__ import annotations

from .agents import KBD, KBL, NEK, URT
from .codec import activity_code, manchester_code, width_for_bound
from .engine import Scenario
from .schedule import critical_stage, stage_duration


def urt_deadline(d: int, distance: int, label1: int, label2: int, delay: int) -> int:
    """Latest meeting round for the unoriented search: the slower agent
    finishing stage ``i* + 2``, offset by its wake round.

    Dominates every case split (equal or different code lengths, every
    delay regime), which keeps the bound independent of the case analysis.
    """
    i_star = critical_stage(d, distance)

    def completion(label: int) -> int:
        y = len(activity_code(label))
        return sum(stage_duration(d, i, y) for i in range(i_star + 3))

    return max(completion(label1), delay + completion(label2))


def kbl_deadline(distance: int, space_bound: int) -> int:
    """Cumulative duration through stage ``i* + 1`` of the bounded-label
    search: ``(4*width + 1) * (2**(i* + 2) - 1)``."""
    if distance < 1:
        raise ValueError("distance must be >= 1")
    i_star = (distance - 1).bit_length()  # smallest i with distance <= 2**i
    width = width_for_bound(space_bound)
    return (4 * width + 1) * (2 ** (i_star + 2) - 1)


def kbd_deadline(reach: int, label1: int, label2: int) -> int:
    """Whole-schedule duration of the bounded-distance search:
    ``reach * (2k + 2)`` for the longer code length ``k``."""
    k = max(len(manchester_code(label1)), len(manchester_code(label2)))
    return reach * (2 * k + 2)


def _ceil_4log2(space: int) -> int:
    """Exact ceil(4 * log2(space)) via integer arithmetic."""
    if space < 2:
        raise ValueError("label space must be >= 2")
    return (space**4 - 1).bit_length()


def nek_deadline(distance: int, label_space: int) -> int:
    """Deadline for the no-knowledge search: all bits through
    ``t = max(distance, 4) + ceil(4*log2(label_space))`` at 3 rounds per
    bit index, plus ``distance`` to cover the root-stop case."""
    if distance < 1:
        raise ValueError("distance must be >= 1")
    t = max(distance, 4) + _ceil_4log2(label_space)
    return 3 * t * (t + 1) // 2 + distance


def deadline_for(scenario: Scenario) -> int:
    """The matching deadline for a scenario."""
    d_init = scenario.initial_distance
    if scenario.algorithm == URT:
        return urt_deadline(
            scenario.tree.d,
            d_init,
            scenario.label1,
            scenario.label2,
            scenario.delay,
        )
    if scenario.algorithm == KBL:
        return kbl_deadline(d_init, scenario.lstar)
    if scenario.algorithm == KBD:
        return kbd_deadline(scenario.dstar, scenario.label1, scenario.label2)
    if scenario.algorithm == NEK:
        space = scenario.label_space or max(scenario.label1, scenario.label2)
        return nek_deadline(d_init, max(space, 2))
    raise ValueError(f"unknown algorithm {scenario.algorithm!r}")
