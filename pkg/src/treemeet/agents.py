"""Deterministic per-round action machines for the four rendezvous programs.

A program consumes one observation per round (degree of the current node,
entry port of the last move, root flag) and emits one action (move through
a port, or stay idle). Programs are written as generators: sub-procedures
compose with ``yield from`` and receive observations through ``send``, so
the code reads like the procedure structure it implements while remaining
strictly one-action-per-round.

Programs observe nothing else -- in particular no node identities -- and
are fully deterministic given the observation sequence.
"""

from __future__ import annotations

from itertools import count
from typing import Iterator, NamedTuple

from .codec import (
    activity_code,
    manchester_code,
    padded_code,
    repeating_bit,
)
from .schedule import bit_duration, stage_radius

URT = "urt"
KBL = "kbl"
KBD = "kbd"
NEK = "nek"
ALGORITHMS = (URT, KBL, KBD, NEK)
ORIENTED_ALGORITHMS = (KBL, KBD, NEK)


class Observation(NamedTuple):
    """What an agent senses in one round."""

    degree: int
    entry_port: int | None  # None on the wake round and after idling
    at_root: bool = False


class Action(NamedTuple):
    """One round's decision: move through ``port``, or stay idle (None)."""

    port: int | None

    @property
    def is_move(self) -> bool:
        return self.port is not None

    def __str__(self) -> str:
        return "idle" if self.port is None else f"move:{self.port}"


IDLE = Action(None)
_MOVE_CACHE = [Action(p) for p in range(64)]


def move(port: int) -> Action:
    return _MOVE_CACHE[port] if port < 64 else Action(port)


def stay(obs: Observation, rounds: int):
    """Remain idle for ``rounds`` rounds."""
    for _ in range(rounds):
        obs = yield IDLE
    return obs


def act_dfs(obs: Observation, r: int):
    """One depth-first exploration of the ball of radius ``r`` around the
    current node, taking ports in increasing order at every node.

    Visits every node within distance ``r``, traverses each ball edge
    exactly twice (``dfs_cost(d, r)`` moves for a d-regular tree), and
    finishes back at the start. The entry port is skipped while descending
    and used last for the backtrack; at depth ``r`` the agent backtracks
    immediately. ``r == 0`` emits nothing.
    """
    if r == 0:
        return obs
    # Frame: [entry port into this node, next port to try, levels left].
    stack = [[None, 0, r]]
    while stack:
        frame = stack[-1]
        entry, port, levels = frame
        if port == entry:
            port = frame[1] = port + 1
        if levels > 0 and port < obs.degree:
            frame[1] = port + 1
            obs = yield move(port)
            stack.append([obs.entry_port, 0, levels - 1])
        else:
            stack.pop()
            if stack:
                obs = yield move(entry)
    return obs


def exec_bit(obs: Observation, d: int, bit: int, i: int):
    """Execute one code bit in stage ``i``: two ball explorations for a 1,
    an equally long idle period for a 0. Always ``bit_duration(d, i)``
    rounds."""
    r = stage_radius(d, i)
    if bit:
        obs = yield from act_dfs(obs, r)
        obs = yield from act_dfs(obs, r)
    else:
        obs = yield from stay(obs, bit_duration(d, i))
    return obs


def up(obs: Observation, x: int):
    """Up to ``x`` port-0 moves toward the root.

    Returns ``(obs, True)`` as soon as the agent stands at the root
    (including before the first move); the caller must then halt forever.
    """
    for _ in range(x):
        if obs.at_root:
            return obs, True
        obs = yield move(0)
    return obs, obs.at_root


def up_and_down(obs: Observation, x: int):
    """Port-0 ascent of ``x`` moves followed by a backtrack to the start,
    replaying the recorded entry ports in reverse (2x rounds total).

    A root visit aborts the procedure without backtracking and returns
    ``(obs, True)``.
    """
    entries = []
    for _ in range(x):
        if obs.at_root:
            return obs, True
        obs = yield move(0)
        entries.append(obs.entry_port)
    if obs.at_root:
        return obs, True
    for port in reversed(entries):
        obs = yield move(port)
    return obs, False


class AgentProgram:
    """One agent executing one algorithm with one label.

    ``step`` maps the round's observation to the round's action. The
    ``stage`` / ``bit`` / ``proc`` attributes describe the structural unit
    the emitted action belongs to (for traces); ``halted`` reports the
    permanent root stop of the oriented programs.
    """

    def __init__(self, algorithm: str, label: int, body_factory):
        self.algorithm = algorithm
        self.label = label
        self.stage: int | None = None
        self.bit: int | None = None
        self.proc: str = "wake"
        self.halted = False
        self._body_factory = body_factory
        self._gen: Iterator[Action] | None = None

    def step(self, obs: Observation) -> Action:
        if self._gen is None:
            self._gen = self._body_factory(self, obs)
            return next(self._gen)
        return self._gen.send(obs)

    def _halt(self, obs: Observation):
        self.halted = True
        self.proc = "halt"
        while True:
            obs = yield IDLE


def urt_program(d: int, label: int) -> AgentProgram:
    """Unoriented-regular-tree search: stages of growing radius, each
    executing every bit of the activity code."""
    bits = [int(b) for b in activity_code(label)]

    def body(self: AgentProgram, obs: Observation):
        for i in count():
            self.stage = i
            for j, b in enumerate(bits, 1):
                self.bit = j
                self.proc = "act" if b else "pass"
                obs = yield from exec_bit(obs, d, b, i)

    return AgentProgram(URT, label, body)


def kbl_program(label: int, space_bound: int) -> AgentProgram:
    """Oriented search knowing a bound on the label space: stages of
    doubling range over the fixed-width padded code."""
    bits = [int(b) for b in padded_code(label, space_bound)]

    def body(self: AgentProgram, obs: Observation):
        for i in count():
            self.stage = i
            x = 2**i
            self.bit = None
            self.proc = "up"
            obs, at_root = yield from up(obs, x)
            if at_root:
                yield from self._halt(obs)
            for j, b in enumerate(bits, 1):
                self.bit = j
                if b:
                    self.proc = "updown"
                    obs, at_root = yield from up_and_down(obs, x)
                    if at_root:
                        yield from self._halt(obs)
                else:
                    self.proc = "idle"
                    obs = yield from stay(obs, 2 * x)

    return AgentProgram(KBL, label, body)


def kbd_program(label: int, reach: int) -> AgentProgram:
    """Oriented search knowing a bound ``reach`` on the initial distance:
    a single pass over the Manchester code, then a final ascent.

    Terminates after at most ``reach * (2k + 2)`` rounds for a code of
    length ``k`` and idles forever."""
    bits = [int(b) for b in manchester_code(label)]

    def body(self: AgentProgram, obs: Observation):
        self.proc = "up"
        obs, at_root = yield from up(obs, reach)
        if at_root:
            yield from self._halt(obs)
        for j, b in enumerate(bits, 1):
            self.bit = j
            if b:
                self.proc = "updown"
                obs, at_root = yield from up_and_down(obs, reach)
                if at_root:
                    yield from self._halt(obs)
            else:
                self.proc = "idle"
                obs = yield from stay(obs, 2 * reach)
        self.bit = None
        if not obs.at_root:
            self.proc = "up"
            obs, at_root = yield from up(obs, reach)
            if at_root:
                yield from self._halt(obs)
        self.proc = "done"
        while True:
            obs = yield IDLE

    return AgentProgram(KBD, label, body)


def nek_program(label: int) -> AgentProgram:
    """Oriented search with no extra knowledge: ranges grow by one per bit
    of the infinitely repeating Manchester code (3j rounds for bit j)."""

    def body(self: AgentProgram, obs: Observation):
        for j in count(1):
            self.bit = j
            b = repeating_bit(label, j)
            self.proc = "up"
            obs, at_root = yield from up(obs, j)
            if at_root:
                yield from self._halt(obs)
            if b:
                self.proc = "updown"
                obs, at_root = yield from up_and_down(obs, j)
                if at_root:
                    yield from self._halt(obs)
            else:
                self.proc = "idle"
                obs = yield from stay(obs, 2 * j)

    return AgentProgram(NEK, label, body)
