"""Round-exact simulator and verification harness for two-agent rendezvous
on infinite trees."""

from .agents import (
    ALGORITHMS,
    Action,
    AgentProgram,
    IDLE,
    Observation,
    kbd_program,
    kbl_program,
    nek_program,
    urt_program,
)
from .codec import (
    activity_code,
    binary_rep,
    distinguishing_offset,
    manchester_code,
    padded_code,
    prefix_free_code,
    repeating_bit,
    width_for_bound,
)
from .deadlines import (
    deadline_for,
    kbd_deadline,
    kbl_deadline,
    nek_deadline,
    urt_deadline,
)
from .engine import Scenario, SimContext, SimOutcome, replay, run
from .schedule import (
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
from .sweep import DeadlineReport, SweepSpec, build_grid, run_sweep, write_csv
from .tree import (
    NodeRef,
    OrientedTree,
    RandomChildren,
    RegularChildren,
    UnorientedRegularTree,
    distance,
    parse_degree_gen,
)

__version__ = "0.1.0"
