"""Lazily generated infinite trees with deterministic port labelings.

Nodes are identified by their child-slot path from the origin (unoriented
trees) or root (oriented trees); the trees themselves are never
materialized. All queries are pure functions of the tree parameters and the
node, so two trees built with equal parameters are observationally
identical and safe to query concurrently.

Agents never see these identities: the simulation engine translates them
into the degree / entry-port / root-flag observations that programs are
allowed to act on.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

SEEDED = "seeded"
SYMMETRIC = "symmetric"


class InvalidNodeError(ValueError):
    """A node path that does not exist in the tree (malformed scenario)."""


class PortError(ValueError):
    """A port number outside 0..degree-1."""


class PlacementError(RuntimeError):
    """The tree does not branch enough at the requested placement site."""


@dataclass(frozen=True)
class NodeRef:
    """Canonical node identity: the child-slot path from the origin/root."""

    path: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.path)

    @property
    def is_origin(self) -> bool:
        return not self.path

    def parent(self) -> "NodeRef":
        if not self.path:
            raise InvalidNodeError("the origin has no parent")
        return NodeRef(self.path[:-1])

    def child(self, slot: int) -> "NodeRef":
        return NodeRef(self.path + (slot,))

    def __str__(self) -> str:
        # "@" denotes the origin/root in traces and CSV output.
        return ".".join(str(s) for s in self.path) if self.path else "@"

    @classmethod
    def parse(cls, text: str) -> "NodeRef":
        if text == "@":
            return cls()
        try:
            return cls(tuple(int(part) for part in text.split(".")))
        except ValueError as exc:
            raise InvalidNodeError(f"bad node reference {text!r}") from exc


def distance(u: NodeRef, v: NodeRef) -> int:
    """Tree distance between two nodes: path lengths minus twice the
    longest common prefix."""
    lcp = 0
    for a, b in zip(u.path, v.path):
        if a != b:
            break
        lcp += 1
    return len(u.path) + len(v.path) - 2 * lcp


def _mix(*parts: int | str | bytes) -> int:
    """Deterministic 64-bit mix of the given parts (stable across runs)."""
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, int):
            h.update(struct.pack(">q", part & (2**63 - 1)))
        elif isinstance(part, str):
            h.update(part.encode())
        else:
            h.update(part)
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big")


def _path_bytes(path: tuple[int, ...]) -> bytes:
    # repr of an int tuple is deterministic and fast to build.
    return repr(path).encode()


def _unrank_permutation(rank: int, n: int) -> list[int]:
    """The ``rank``-th permutation of 0..n-1 in Lehmer-code order."""
    items = list(range(n))
    out = []
    for k in range(n, 0, -1):
        out.append(items.pop(rank % k))
        rank //= k
    return out


class _Rng:
    """Small deterministic integer stream derived from a seed."""

    def __init__(self, seed: int, tag: str):
        self._seed = seed
        self._tag = tag
        self._n = 0

    def below(self, bound: int) -> int:
        value = _mix(self._seed, self._tag, self._n)
        self._n += 1
        return value % bound


@dataclass(frozen=True)
class UnorientedRegularTree:
    """Infinite tree in which every node has degree ``d``.

    ``seeded`` labeling draws an independent pseudo-random port permutation
    at every node; ``symmetric`` labeling gives both endpoints of every
    edge the same port number (a proper d-edge-coloring), the worst-case
    construction for port-guided search.
    """

    d: int
    labeling: str = SEEDED
    seed: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"degree must be >= 2, got {self.d}")
        if self.labeling not in (SEEDED, SYMMETRIC):
            raise ValueError(f"unknown labeling mode {self.labeling!r}")

    @property
    def oriented(self) -> bool:
        return False

    def validate(self, node: NodeRef) -> None:
        # Origin has d child slots; every other node has d-1.
        for level, slot in enumerate(node.path):
            bound = self.d if level == 0 else self.d - 1
            if not 0 <= slot < bound:
                raise InvalidNodeError(
                    f"slot {slot} at level {level} out of range for degree {self.d}"
                )

    def degree(self, node: NodeRef) -> int:
        self.validate(node)
        return self.d

    def is_root(self, node: NodeRef) -> bool:
        return False

    def _ports(self, node: NodeRef) -> list[int]:
        """Port numbers of the incident edges, parent edge first then child
        slots in order (at the origin: child slots only)."""
        if self.labeling == SEEDED:
            rank = _mix(self.seed, "ports", _path_bytes(node.path))
            return _unrank_permutation(rank, self.d)
        # Symmetric labeling: the parent edge keeps the color it got at the
        # parent; child edges take the remaining colors in slot order.
        if node.is_origin:
            return list(range(self.d))
        c = self._edge_color(node)
        return [c] + sorted(set(range(self.d)) - {c})

    def _edge_color(self, node: NodeRef) -> int:
        """Symmetric-mode color of the edge between ``node`` and its parent."""
        colors = list(range(self.d))
        c = node.path[0]
        for slot in node.path[1:]:
            rest = [x for x in colors if x != c]
            c = rest[slot]
        return c

    def neighbor(self, node: NodeRef, port: int) -> tuple[NodeRef, int]:
        """Node across ``port`` and the port by which the mover enters it."""
        self.validate(node)
        return self._neighbor_unchecked(node, port)

    def _neighbor_unchecked(self, node: NodeRef, port: int) -> tuple[NodeRef, int]:
        # Trusted path for the engine: ``node`` was validated on first sight.
        if not 0 <= port < self.d:
            raise PortError(f"port {port} out of range for degree {self.d}")
        ports = self._ports(node)
        edge = ports.index(port)
        if node.is_origin:
            other = node.child(edge)
            return other, self._ports(other)[0]
        if edge == 0:
            parent = node.parent()
            slot = node.path[-1]
            pports = self._ports(parent)
            entry = pports[slot] if parent.is_origin else pports[slot + 1]
            return parent, entry
        other = node.child(edge - 1)
        return other, self._ports(other)[0]

    def _degree_unchecked(self, node: NodeRef) -> int:
        return self.d

    def place(self, span: int, placement_seed: int) -> tuple[NodeRef, NodeRef]:
        """Two nodes at exact distance ``span``: the origin and the end of a
        deterministic pseudo-random non-backtracking walk.

        In a tree a walk that never reverses an edge is a simple path, so
        the endpoint is at distance exactly ``span``.
        """
        if span < 1:
            raise ValueError(f"span must be >= 1, got {span}")
        rng = _Rng(placement_seed, "unoriented-walk")
        path = [rng.below(self.d)]
        for _ in range(span - 1):
            path.append(rng.below(self.d - 1))
        return NodeRef(), NodeRef(tuple(path))


@dataclass(frozen=True)
class RegularChildren:
    """Every node has exactly ``count`` children."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("child count must be >= 1")

    def children(self, tree_seed: int, node: NodeRef) -> int:
        return self.count

    def __str__(self) -> str:
        return f"regular({self.count})"


@dataclass(frozen=True)
class RandomChildren:
    """Child count drawn per node, deterministically from the tree seed."""

    lo: int
    hi: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise ValueError("need 1 <= lo <= hi")

    def children(self, tree_seed: int, node: NodeRef) -> int:
        span = self.hi - self.lo + 1
        return self.lo + _mix(tree_seed, "children", _path_bytes(node.path)) % span

    def __str__(self) -> str:
        return f"random({self.lo},{self.hi})"


def parse_degree_gen(text: str) -> RegularChildren | RandomChildren:
    """Parse ``regular(c)`` / ``random(lo,hi)`` degree generator specs."""
    text = text.strip().replace(" ", "")
    if text.startswith("regular(") and text.endswith(")"):
        return RegularChildren(int(text[8:-1]))
    if text.startswith("random(") and text.endswith(")"):
        lo, hi = text[7:-1].split(",")
        return RandomChildren(int(lo), int(hi))
    raise ValueError(f"bad degree generator spec {text!r}")


@dataclass(frozen=True)
class OrientedTree:
    """Rooted infinite tree whose port 0 always leads toward the root.

    The root is the unique observably labeled node. Port layout: at the
    root, ports 0..deg-1 map to children in slot order; elsewhere port 0 is
    the parent edge and ports 1..deg-1 map to children in slot order.
    """

    degree_gen: RegularChildren | RandomChildren
    seed: int = 0

    @property
    def oriented(self) -> bool:
        return True

    def children(self, node: NodeRef) -> int:
        return self.degree_gen.children(self.seed, node)

    def validate(self, node: NodeRef) -> None:
        here = NodeRef()
        for slot in node.path:
            bound = self.children(here)
            if not 0 <= slot < bound:
                raise InvalidNodeError(
                    f"slot {slot} out of range below {here} ({bound} children)"
                )
            here = here.child(slot)

    def degree(self, node: NodeRef) -> int:
        self.validate(node)
        return self._degree_unchecked(node)

    def is_root(self, node: NodeRef) -> bool:
        return node.is_origin

    def neighbor(self, node: NodeRef, port: int) -> tuple[NodeRef, int]:
        self.validate(node)
        return self._neighbor_unchecked(node, port)

    def _neighbor_unchecked(self, node: NodeRef, port: int) -> tuple[NodeRef, int]:
        deg = self._degree_unchecked(node)
        if not 0 <= port < deg:
            raise PortError(f"port {port} out of range for degree {deg}")
        if node.is_origin:
            return node.child(port), 0
        if port == 0:
            parent = node.parent()
            slot = node.path[-1]
            entry = slot if parent.is_origin else slot + 1
            return parent, entry
        return node.child(port - 1), 0

    def _degree_unchecked(self, node: NodeRef) -> int:
        c = self.children(node)
        return c if node.is_origin else c + 1

    def place(
        self, k1: int, k2: int, h: int, placement_seed: int
    ) -> tuple[NodeRef, NodeRef]:
        """Two nodes whose closest common ancestor sits at depth ``h``,
        with the nodes ``k1`` and ``k2`` below it (distance ``k1 + k2``).

        When both branches are nonempty they descend through distinct
        children of the ancestor; raises :class:`PlacementError` if the
        ancestor has fewer than two children there.
        """
        if k1 < 0 or k2 < 0 or k1 + k2 < 1:
            raise ValueError("need k1, k2 >= 0 and k1 + k2 >= 1")
        if h < 0:
            raise ValueError("ancestor depth must be >= 0")
        rng = _Rng(placement_seed, "oriented-walk")
        w = NodeRef()
        for _ in range(h):
            w = w.child(rng.below(self.children(w)))
        first: dict[int, int] = {}
        if k1 > 0 and k2 > 0:
            c = self.children(w)
            if c < 2:
                raise PlacementError(
                    f"ancestor {w} has {c} child(ren); need 2 to split"
                )
            first[0] = rng.below(c)
            first[1] = (first[0] + 1 + rng.below(c - 1)) % c
        nodes = []
        for idx, k in enumerate((k1, k2)):
            v = w
            for step in range(k):
                if step == 0 and idx in first:
                    slot = first[idx]
                else:
                    slot = rng.below(self.children(v))
                v = v.child(slot)
            nodes.append(v)
        return nodes[0], nodes[1]


TreeModel = UnorientedRegularTree | OrientedTree
