from __future__ import annotations

import pytest

from treemeet.agents import Observation
from treemeet.tree import NodeRef


class ProgramDriver:
    """Drives an agent program (or sub-program generator) on a tree,
    recording actions and end-of-round positions."""

    def __init__(self, tree, start: NodeRef):
        self.tree = tree
        self.pos = start
        self.actions = []
        self.positions = []

    def _observe(self, entry: int | None) -> Observation:
        return Observation(
            self.tree.degree(self.pos), entry, self.tree.is_root(self.pos)
        )

    def run_program(self, program, rounds: int) -> "ProgramDriver":
        obs = self._observe(None)
        for _ in range(rounds):
            action = program.step(obs)
            self.actions.append(action)
            if action.port is not None:
                self.pos, entry = self.tree.neighbor(self.pos, action.port)
                obs = self._observe(entry)
            else:
                obs = self._observe(None)
            self.positions.append(self.pos)
        return self

    def run_subprogram(self, gen) -> "ProgramDriver":
        """Run a sub-program generator to completion; returns the driver."""
        try:
            action = next(gen)
            while True:
                self.actions.append(action)
                if action.port is not None:
                    self.pos, entry = self.tree.neighbor(self.pos, action.port)
                    obs = self._observe(entry)
                else:
                    obs = self._observe(None)
                self.positions.append(self.pos)
                action = gen.send(obs)
        except StopIteration as stop:
            self.result = stop.value
        return self


@pytest.fixture
def driver():
    return ProgramDriver
