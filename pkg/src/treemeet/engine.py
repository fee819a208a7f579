"""Synchronous round scheduler: wake, step, observe, meet.

Round semantics: at every global round ``t >= 0`` each awake, non-halted
agent consumes exactly one action; an asleep agent occupies its start
node. Positions are compared after both agents have acted, so two agents
crossing the same edge in opposite directions do not meet. The first round
with equal end-of-round positions is the meeting round.

Two execution paths produce identical outcomes:

* a straightforward step loop driving the agent programs one observation
  at a time (always available, used for traces and position histories);
* a segment-compressed path for the unoriented algorithm, which expands
  each agent's schedule into constant and walk segments and compares
  positions with vectorized scans. The walk arrays are generated by the
  very same DFS program the step loop runs, so only the scheduling differs.

Runs are pure functions of the scenario; independent runs may share a
:class:`SimContext` for the same tree to reuse interned nodes and walks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import IO, Iterator

import numpy as np

from .agents import (
    ALGORITHMS,
    IDLE,
    KBD,
    KBL,
    NEK,
    ORIENTED_ALGORITHMS,
    URT,
    Action,
    AgentProgram,
    Observation,
    act_dfs,
    kbd_program,
    kbl_program,
    nek_program,
    urt_program,
)
from .codec import activity_code, manchester_code, padded_code, repeating_bit
from .schedule import bit_duration, stage_radius
from .tree import NodeRef, OrientedTree, TreeModel, UnorientedRegularTree, distance


class ScenarioError(ValueError):
    """A scenario violating the model's preconditions."""


@dataclass(frozen=True)
class Scenario:
    """Complete description of one rendezvous experiment.

    Agent 1 wakes at round 0, agent 2 at round ``delay``. ``horizon`` is
    the last simulated round (inclusive); when None, four times the
    analytic deadline is used. ``label_space`` is the size of the label
    space the scenario was drawn from (defaults to the larger label).
    ``delay_probe`` permits a nonzero delay with the oriented algorithms,
    which their guarantees do not cover.
    """

    tree: TreeModel
    v1: NodeRef
    v2: NodeRef
    label1: int
    label2: int
    algorithm: str
    lstar: int | None = None
    dstar: int | None = None
    delay: int = 0
    horizon: int | None = None
    label_space: int | None = None
    delay_probe: bool = False

    def validate(self, check_nodes: bool = True) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ScenarioError(f"unknown algorithm {self.algorithm!r}")
        if self.label1 < 1 or self.label2 < 1:
            raise ScenarioError("labels must be >= 1")
        if self.label1 == self.label2:
            raise ScenarioError("agents must carry distinct labels")
        if self.v1 == self.v2:
            raise ScenarioError("agents must start at distinct nodes")
        if self.delay < 0:
            raise ScenarioError("delay must be >= 0")
        if check_nodes:
            self.tree.validate(self.v1)
            self.tree.validate(self.v2)
        oriented = isinstance(self.tree, OrientedTree)
        if self.algorithm == URT and oriented:
            raise ScenarioError("urt runs on unoriented regular trees")
        if self.algorithm in ORIENTED_ALGORITHMS:
            if not oriented:
                raise ScenarioError(f"{self.algorithm} needs an oriented tree")
            if self.delay and not self.delay_probe:
                raise ScenarioError(
                    f"{self.algorithm} assumes simultaneous start; "
                    "set delay_probe to override"
                )
        if self.algorithm == KBL:
            if self.lstar is None:
                raise ScenarioError("kbl needs lstar")
            if max(self.label1, self.label2) > self.lstar:
                raise ScenarioError("labels exceed the declared space bound")
        if self.algorithm == KBD and (self.dstar is None or self.dstar < 1):
            raise ScenarioError("kbd needs dstar >= 1")

    @property
    def initial_distance(self) -> int:
        return distance(self.v1, self.v2)

    def build_programs(self) -> tuple[AgentProgram, AgentProgram]:
        def build(label: int) -> AgentProgram:
            if self.algorithm == URT:
                return urt_program(self.tree.d, label)
            if self.algorithm == KBL:
                return kbl_program(label, self.lstar)
            if self.algorithm == KBD:
                return kbd_program(label, self.dstar)
            return nek_program(label)

        return build(self.label1), build(self.label2)


@dataclass
class SimOutcome:
    """Result of one run: meeting data, per-agent accounting, horizon."""

    met: bool
    meeting_round: int | None
    meeting_node: NodeRef | None
    moves: tuple[int, int]
    stage_starts: tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]
    horizon: int
    history: tuple[tuple[NodeRef, NodeRef], ...] | None = None


class TreeCache:
    """Interns visited nodes as dense integers with cached port tables.

    Purely an engine-side accelerator: agents still only receive the
    degree / entry-port / root-flag observations.
    """

    def __init__(self, tree: TreeModel):
        self.tree = tree
        self._ids: dict[tuple[int, ...], int] = {}
        self._nodes: list[NodeRef] = []
        self._tables: list[list[tuple[int, int]] | None] = []
        self._obs: dict[tuple[int, int | None], Observation] = {}

    def intern(self, node: NodeRef, trusted: bool = False) -> int:
        """Id for a node, validating it on first sight.

        ``trusted`` skips validation for nodes the engine derived from
        already-validated ones (neighbors, path prefixes)."""
        nid = self._ids.get(node.path)
        if nid is None:
            if not trusted:
                self.tree.validate(node)
            nid = len(self._nodes)
            self._ids[node.path] = nid
            self._nodes.append(node)
            self._tables.append(None)
        return nid

    def node(self, nid: int) -> NodeRef:
        return self._nodes[nid]

    def table(self, nid: int) -> list[tuple[int, int]]:
        tbl = self._tables[nid]
        if tbl is None:
            node = self._nodes[nid]
            deg = self.tree._degree_unchecked(node)
            tbl = []
            for port in range(deg):
                nbr, entry = self.tree._neighbor_unchecked(node, port)
                tbl.append((self.intern(nbr, trusted=True), entry))
            self._tables[nid] = tbl
        return tbl

    def step(self, nid: int, port: int) -> tuple[int, int]:
        tbl = self.table(nid)
        if not 0 <= port < len(tbl):
            raise ScenarioError(
                f"program chose port {port} at a node of degree {len(tbl)}"
            )
        return tbl[port]

    def observation(self, nid: int, entry_port: int | None) -> Observation:
        key = (nid, entry_port)
        obs = self._obs.get(key)
        if obs is None:
            node = self._nodes[nid]
            obs = Observation(
                len(self.table(nid)), entry_port, self.tree.is_root(node)
            )
            self._obs[key] = obs
        return obs


class SimContext:
    """Shared per-tree state for a batch of independent runs."""

    def __init__(self, tree: TreeModel):
        self.cache = TreeCache(tree)
        self._walks: dict[tuple[int, int], np.ndarray] = {}
        self._ancestors: dict[int, np.ndarray] = {}

    def dfs_walk(self, start: int, radius: int) -> np.ndarray:
        """Node ids visited per round by one DFS exploration from ``start``.

        Generated by driving the same DFS program the step engine runs.
        """
        key = (start, radius)
        walk = self._walks.get(key)
        if walk is None:
            cache = self.cache
            out: list[int] = []
            nid = start
            gen = act_dfs(cache.observation(nid, None), radius)
            try:
                action = next(gen)
                while True:
                    nid, entry = cache.step(nid, action.port)
                    out.append(nid)
                    action = gen.send(cache.observation(nid, entry))
            except StopIteration:
                pass
            walk = np.asarray(out, dtype=np.int64)
            self._walks[key] = walk
        return walk

    def ancestors(self, start: int) -> np.ndarray:
        """Node ids along the path from ``start`` up to the root."""
        anc = self._ancestors.get(start)
        if anc is None:
            cache = self.cache
            path = cache.node(start).path
            # Prefixes of a validated path are valid nodes themselves.
            ids = [
                cache.intern(NodeRef(path[:k]), trusted=True)
                for k in range(len(path), -1, -1)
            ]
            anc = np.asarray(ids, dtype=np.int64)
            self._ancestors[start] = anc
        return anc


def _trace_row(
    sink: IO[str],
    t: int,
    agent: int,
    node: NodeRef,
    action: Action,
    prog: AgentProgram,
) -> None:
    sink.write(
        json.dumps(
            {
                "round": t,
                "agent": agent,
                "node": str(node),
                "action": str(action),
                "stage": prog.stage,
                "bit": prog.bit,
                "proc": prog.proc,
            }
        )
        + "\n"
    )


def _run_steps(
    scenario: Scenario,
    context: SimContext,
    horizon: int,
    stop_at_meeting: bool = True,
    record_history: bool = False,
    trace_sink: IO[str] | None = None,
) -> SimOutcome:
    cache = context.cache
    progs = scenario.build_programs()
    wake = (0, scenario.delay)
    pos = [cache.intern(scenario.v1), cache.intern(scenario.v2)]
    obs: list[Observation | None] = [None, None]
    moves = [0, 0]
    stage_starts: tuple[list, list] = ([], [])
    last_stage: list[int | None] = [None, None]
    history: list[tuple[NodeRef, NodeRef]] | None = [] if record_history else None
    met = False
    meeting_round: int | None = None

    cache_step = cache.step
    cache_obs = cache.observation
    for t in range(horizon + 1):
        for a in (0, 1):
            if t < wake[a]:
                continue
            prog = progs[a]
            if prog.halted:
                if trace_sink is not None:
                    _trace_row(trace_sink, t, a + 1, cache.node(pos[a]), IDLE, prog)
                continue
            o = obs[a]
            if o is None:
                o = cache_obs(pos[a], None)
            action = prog.step(o)
            port = action.port
            if port is not None:
                nid, entry = cache_step(pos[a], port)
                pos[a] = nid
                obs[a] = cache_obs(nid, entry)
                moves[a] += 1
            else:
                obs[a] = cache_obs(pos[a], None)
            if prog.stage != last_stage[a]:
                last_stage[a] = prog.stage
                if prog.stage is not None:
                    stage_starts[a].append((prog.stage, t))
            if trace_sink is not None:
                _trace_row(trace_sink, t, a + 1, cache.node(pos[a]), action, prog)
        if history is not None:
            history.append((cache.node(pos[0]), cache.node(pos[1])))
        if stop_at_meeting and pos[0] == pos[1]:
            met = True
            meeting_round = t
            break

    return SimOutcome(
        met=met,
        meeting_round=meeting_round,
        meeting_node=cache.node(pos[0]) if met else None,
        moves=(moves[0], moves[1]),
        stage_starts=(tuple(stage_starts[0]), tuple(stage_starts[1])),
        horizon=horizon,
        history=tuple(history) if history is not None else None,
    )


# Fast-path segments: (walk_array, None, length) for rounds spent moving
# along precomputed node ids, (None, node_id, length) for rounds parked.
_Segment = tuple[np.ndarray | None, int | None, int]
_FOREVER = 1 << 40


def _urt_segments(
    context: SimContext, d: int, label: int, start: int, sleep: int
) -> Iterator[_Segment]:
    """Position segments of one unoriented-search agent: parked while asleep
    and during passivity cycles, DFS walk arrays during activity cycles."""
    if sleep:
        yield None, start, sleep
    bits = [int(b) for b in activity_code(label)]
    i = 0
    while True:
        pi = bit_duration(d, i)
        if pi:
            radius = stage_radius(d, i)
            walk: np.ndarray | None = None
            for b in bits:
                if b:
                    if walk is None:
                        walk = context.dfs_walk(start, radius)
                    yield walk, None, len(walk)
                    yield walk, None, len(walk)
                else:
                    yield None, start, pi
        i += 1


class _Ascent:
    """Position of one oriented agent along its ancestor chain."""

    def __init__(self, ancestors: np.ndarray):
        self.anc = ancestors
        self.depth = len(ancestors) - 1
        self.pos = 0  # ascent: 0 = start node, depth = root
        self.halted = False

    @property
    def node(self) -> int:
        return int(self.anc[self.pos])

    def up(self, x: int) -> list[_Segment]:
        """Climb ``x`` steps; stops (permanently) at the root."""
        if self.pos == self.depth:
            self.halted = True
            return []
        steps = min(x, self.depth - self.pos)
        seg = (self.anc[self.pos + 1 : self.pos + 1 + steps], None, steps)
        self.pos += steps
        if self.pos == self.depth:
            self.halted = True
        return [seg]

    def up_down(self, x: int) -> list[_Segment]:
        segs = self.up(x)
        if self.halted:
            return segs
        lo = self.pos - x
        down = self.anc[lo : self.pos][::-1]
        self.pos = lo
        segs.append((down, None, x))
        return segs

    def hold(self, rounds: int) -> _Segment:
        return (None, self.node, rounds)


def _oriented_segments(
    context: SimContext,
    scenario: Scenario,
    label: int,
    start: int,
    sleep: int,
    stage_log: list[tuple[int, int]],
) -> Iterator[_Segment]:
    """Position segments of one oriented agent; appends (stage, round)
    records to ``stage_log`` as the bounded-label search enters stages."""
    state = _Ascent(context.ancestors(start))
    t = sleep
    if sleep:
        yield None, start, sleep
    algo = scenario.algorithm

    if algo == KBL:
        bits = [int(b) for b in padded_code(label, scenario.lstar)]
        i = 0
        while not state.halted:
            stage_log.append((i, t))
            x = 2**i
            for seg in state.up(x):
                t += seg[2]
                yield seg
            for b in bits:
                if state.halted:
                    break
                if b:
                    for seg in state.up_down(x):
                        t += seg[2]
                        yield seg
                else:
                    t += 2 * x
                    yield state.hold(2 * x)
            i += 1
    elif algo == KBD:
        reach = scenario.dstar
        bits = [int(b) for b in manchester_code(label)]
        for seg in state.up(reach):
            yield seg
        for b in bits:
            if state.halted:
                break
            if b:
                yield from state.up_down(reach)
            else:
                yield state.hold(2 * reach)
        if not state.halted and state.pos != state.depth:
            for seg in state.up(reach):
                yield seg
    else:  # NEK
        j = 0
        while not state.halted:
            j += 1
            b = repeating_bit(label, j)
            for seg in state.up(j):
                yield seg
            if state.halted:
                break
            if b:
                yield from state.up_down(j)
            else:
                yield state.hold(2 * j)

    while True:
        yield state.hold(_FOREVER)


def _scan_timelines(
    streams: tuple[Iterator[_Segment], Iterator[_Segment]], horizon: int
) -> tuple[bool, int | None, int | None, tuple[int, int]]:
    """Advance two position timelines and find the first co-location.

    Compares exactly the same end-of-round positions the step loop would
    produce, interval by interval."""
    arr: list[np.ndarray | None] = [None, None]
    nid = [-1, -1]
    start = [0, 0]
    end = [0, 0]
    moves = [0, 0]
    t = 0
    while t <= horizon:
        for a in (0, 1):
            while end[a] <= t:
                w, n, length = next(streams[a])
                arr[a] = w
                nid[a] = n
                start[a] = end[a]
                end[a] += length
        stop = min(end[0], end[1], horizon + 1)
        span = stop - t
        w0, w1 = arr
        hit = -1
        meet_id = None
        if w0 is None and w1 is None:
            if nid[0] == nid[1]:
                hit = 0
                meet_id = nid[0]
        elif w1 is None:
            o = t - start[0]
            eq = w0[o : o + span] == nid[1]
            k = int(eq.argmax())
            if eq[k]:
                hit, meet_id = k, nid[1]
        elif w0 is None:
            o = t - start[1]
            eq = w1[o : o + span] == nid[0]
            k = int(eq.argmax())
            if eq[k]:
                hit, meet_id = k, nid[0]
        else:
            o0 = t - start[0]
            o1 = t - start[1]
            eq = w0[o0 : o0 + span] == w1[o1 : o1 + span]
            k = int(eq.argmax())
            if eq[k]:
                hit, meet_id = k, int(w0[o0 + k])
        if hit >= 0:
            for a in (0, 1):
                if arr[a] is not None:
                    moves[a] += hit + 1
            return True, t + hit, meet_id, (moves[0], moves[1])
        for a in (0, 1):
            if arr[a] is not None:
                moves[a] += span
        t = stop
    return False, None, None, (moves[0], moves[1])


def _urt_stage_starts(
    d: int, label: int, wake: int, end_round: int
) -> tuple[tuple[int, int], ...]:
    """Stages whose first round occurred by ``end_round`` (analytic form of
    what the step loop records)."""
    y = len(activity_code(label))
    starts = []
    t = wake
    i = 0
    while t <= end_round:
        pi = bit_duration(d, i)
        if pi:
            starts.append((i, t))
        t += y * pi
        i += 1
    return tuple(starts)


def _run_fast(scenario: Scenario, context: SimContext, horizon: int) -> SimOutcome:
    cache = context.cache
    ids = (cache.intern(scenario.v1), cache.intern(scenario.v2))
    wakes = (0, scenario.delay)
    labels = (scenario.label1, scenario.label2)
    stage_logs: tuple[list, list] = ([], [])
    if scenario.algorithm == URT:
        d = scenario.tree.d
        streams = tuple(
            _urt_segments(context, d, label, nid, sleep)
            for label, nid, sleep in zip(labels, ids, wakes)
        )
    else:
        streams = tuple(
            _oriented_segments(context, scenario, label, nid, sleep, log)
            for label, nid, sleep, log in zip(labels, ids, wakes, stage_logs)
        )
    met, meeting_round, meeting_id, moves = _scan_timelines(streams, horizon)
    end_round = meeting_round if met else horizon
    if scenario.algorithm == URT:
        stage_starts = tuple(
            _urt_stage_starts(scenario.tree.d, label, wake, end_round)
            for label, wake in zip(labels, wakes)
        )
    else:
        stage_starts = tuple(
            tuple((i, r) for i, r in log if r <= end_round) for log in stage_logs
        )
    return SimOutcome(
        met=met,
        meeting_round=meeting_round,
        meeting_node=cache.node(meeting_id) if met else None,
        moves=moves,
        stage_starts=stage_starts,
        horizon=horizon,
    )


def default_horizon(scenario: Scenario) -> int:
    """Four times the analytic deadline, so a bound violation shows up as a
    late meeting rather than a timeout whenever possible."""
    from .deadlines import deadline_for

    return 4 * deadline_for(scenario)


def run(
    scenario: Scenario,
    *,
    context: SimContext | None = None,
    record_history: bool = False,
    trace_sink: IO[str] | None = None,
    engine: str = "auto",
) -> SimOutcome:
    """Simulate the scenario until the agents meet or the horizon passes.

    ``engine`` selects the execution path: ``"steps"`` for the program-
    driving loop, ``"fast"`` for the segment-compressed unoriented path,
    ``"auto"`` to pick the fast path when it applies. All paths return
    identical outcomes.
    """
    # Node validity is checked by the cache on first interning, so repeated
    # runs over a shared context do not revalidate deep paths.
    scenario.validate(check_nodes=False)
    if context is None:
        context = SimContext(scenario.tree)
    elif context.cache.tree != scenario.tree:
        raise ScenarioError("shared context was built for a different tree")
    horizon = scenario.horizon if scenario.horizon is not None else default_horizon(scenario)
    if engine == "auto":
        engine = "steps" if record_history or trace_sink is not None else "fast"
    if engine == "fast":
        if record_history or trace_sink is not None:
            raise ScenarioError("histories and traces need the step engine")
        return _run_fast(scenario, context, horizon)
    if engine != "steps":
        raise ScenarioError(f"unknown engine {engine!r}")
    return _run_steps(
        scenario,
        context,
        horizon,
        record_history=record_history,
        trace_sink=trace_sink,
    )


def replay(
    scenario: Scenario,
    round_limit: int,
    *,
    context: SimContext | None = None,
) -> tuple[tuple[NodeRef, NodeRef], ...]:
    """Both trajectories for rounds ``0 .. round_limit``, never stopping at
    a meeting. A prefix-preserving extension of ``run``'s history."""
    scenario.validate()
    if context is None:
        context = SimContext(scenario.tree)
    outcome = _run_steps(
        scenario,
        context,
        round_limit,
        stop_at_meeting=False,
        record_history=True,
    )
    return outcome.history


def probe_scenario(scenario: Scenario, delay: int) -> Scenario:
    """The same scenario with an adversarial delay, marked as a probe."""
    return replace(scenario, delay=delay, delay_probe=True)
