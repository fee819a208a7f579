"""Independent straightforward re-simulation used as a test oracle.

Deliberately shares nothing with the engine or the agent programs beyond
the tree queries: positions are produced by a direct recursive expansion of
the search schedule, and the meeting round is the first index where the two
position lists coincide. Slow and simple on purpose.
"""

from __future__ import annotations

from treemeet.codec import activity_code
from treemeet.schedule import bit_duration, stage_radius
from treemeet.tree import NodeRef


def dfs_positions(tree, start: NodeRef, radius: int) -> list[NodeRef]:
    """Positions after each move of one full DFS of the radius ball,
    ports in increasing order, entry port skipped then used to backtrack."""
    out: list[NodeRef] = []

    def explore(node: NodeRef, entry: int | None, levels: int) -> None:
        for port in range(tree.degree(node)):
            if port == entry:
                continue
            if levels == 0:
                continue
            nxt, entry_there = tree.neighbor(node, port)
            out.append(nxt)
            explore(nxt, entry_there, levels - 1)
            out.append(node)

    explore(start, None, radius)
    return out


def urt_positions(tree, start: NodeRef, label: int, rounds: int, sleep: int = 0) -> list[NodeRef]:
    """End-of-round positions of one unoriented-search agent for rounds
    0 .. rounds-1, including the asleep prefix."""
    pos: list[NodeRef] = [start] * min(sleep, rounds)
    bits = activity_code(label)
    d = tree.degree(start)
    i = 0
    while len(pos) < rounds:
        pi = bit_duration(d, i)
        r = stage_radius(d, i)
        if pi:
            for b in bits:
                if b == "1":
                    walk = dfs_positions(tree, start, r)
                    pos.extend(walk)
                    pos.extend(walk)
                else:
                    pos.extend([start] * pi)
                if len(pos) >= rounds:
                    break
        i += 1
    return pos[:rounds]


def urt_meeting(tree, v1: NodeRef, v2: NodeRef, l1: int, l2: int,
                delay: int, rounds: int) -> int | None:
    """First round with equal end-of-round positions, or None."""
    p1 = urt_positions(tree, v1, l1, rounds)
    p2 = urt_positions(tree, v2, l2, rounds, sleep=delay)
    for t, (a, b) in enumerate(zip(p1, p2)):
        if a == b:
            return t
    return None
