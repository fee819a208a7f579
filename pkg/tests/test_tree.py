import pytest
from hypothesis import given, strategies as st

from treemeet.tree import (
    InvalidNodeError,
    NodeRef,
    OrientedTree,
    PlacementError,
    PortError,
    RandomChildren,
    RegularChildren,
    SEEDED,
    SYMMETRIC,
    UnorientedRegularTree,
    distance,
    parse_degree_gen,
)


def test_noderef_identity_and_text():
    assert NodeRef((0, 1)) == NodeRef((0, 1))
    assert NodeRef((0, 1)) != NodeRef((1, 0))
    assert str(NodeRef()) == "@"
    assert str(NodeRef((2, 0, 3))) == "2.0.3"
    assert NodeRef.parse("2.0.3") == NodeRef((2, 0, 3))
    assert NodeRef.parse("@") == NodeRef()


def test_distance_examples():
    u = NodeRef((0, 1))
    assert distance(u, u) == 0
    assert distance(NodeRef(), NodeRef((0, 1))) == 2
    assert distance(NodeRef((0, 1)), NodeRef((0, 2, 3))) == 3


def test_unoriented_degree_is_constant():
    tree = UnorientedRegularTree(3, seed=5)
    for node in (NodeRef(), NodeRef((2,)), NodeRef((0, 1, 1))):
        assert tree.degree(node) == 3


def test_unoriented_rejects_bad_slots():
    tree = UnorientedRegularTree(3, seed=5)
    with pytest.raises(InvalidNodeError):
        tree.degree(NodeRef((3,)))  # origin has slots 0..2
    with pytest.raises(InvalidNodeError):
        tree.degree(NodeRef((0, 2)))  # non-origin nodes have slots 0..1
    with pytest.raises(PortError):
        tree.neighbor(NodeRef(), 3)


def test_oriented_degrees():
    tree = OrientedTree(RegularChildren(2), seed=0)
    assert tree.degree(NodeRef()) == 2  # root has no parent port
    assert tree.degree(NodeRef((0,))) == 3  # parent + 2 children


def test_oriented_parent_port_is_zero():
    tree = OrientedTree(RegularChildren(3), seed=0)
    node = NodeRef((1, 2))
    parent, entry = tree.neighbor(node, 0)
    assert parent == NodeRef((1,))
    assert entry == 1 + 2  # non-root parent: slot order offset by the parent port
    top, entry_top = tree.neighbor(NodeRef((1,)), 0)
    assert top == NodeRef()
    assert entry_top == 1  # at the root, children sit on ports 0..deg-1


def _sample_nodes(tree, oriented, depth, salt):
    nodes = [NodeRef()]
    node = NodeRef()
    for level in range(depth):
        if oriented:
            slots = tree.children(node)
        else:
            slots = tree.d if node.is_origin else tree.d - 1
        node = node.child((salt + level) % slots)
        nodes.append(node)
    return nodes


@pytest.mark.parametrize(
    "tree,oriented",
    [
        (UnorientedRegularTree(2, SEEDED, 1), False),
        (UnorientedRegularTree(3, SEEDED, 2), False),
        (UnorientedRegularTree(4, SYMMETRIC, 0), False),
        (UnorientedRegularTree(2, SYMMETRIC, 0), False),
        (OrientedTree(RegularChildren(2), 1), True),
        (OrientedTree(RandomChildren(1, 3), 4), True),
    ],
)
def test_edge_symmetry_and_port_bijectivity(tree, oriented):
    for salt in (0, 1, 2):
        for node in _sample_nodes(tree, oriented, 5, salt):
            deg = tree.degree(node)
            neighbors = set()
            for port in range(deg):
                nbr, entry = tree.neighbor(node, port)
                neighbors.add(nbr)
                back, back_port = tree.neighbor(nbr, entry)
                assert back == node
                assert back_port == port
            assert len(neighbors) == deg


def test_symmetric_mode_ports_match_at_both_ends():
    tree = UnorientedRegularTree(4, SYMMETRIC, 9)
    for salt in (0, 1, 2):
        for node in _sample_nodes(tree, False, 6, salt):
            for port in range(4):
                _, entry = tree.neighbor(node, port)
                assert entry == port


@given(st.integers(0, 2**63 - 1))
def test_seeded_ports_are_deterministic(seed):
    t1 = UnorientedRegularTree(3, SEEDED, seed)
    t2 = UnorientedRegularTree(3, SEEDED, seed)
    node = NodeRef((1, 0, 1))
    assert [t1.neighbor(node, p) for p in range(3)] == [
        t2.neighbor(node, p) for p in range(3)
    ]


def test_oriented_ascent_reaches_root():
    tree = OrientedTree(RandomChildren(1, 3), seed=6)
    node = _sample_nodes(tree, True, 9, 1)[-1]
    here = node
    for _ in range(node.depth):
        here, _ = tree.neighbor(here, 0)
    assert tree.is_root(here)


def test_place_unoriented():
    tree = UnorientedRegularTree(3, seed=11)
    v1, v2 = tree.place(1, placement_seed=4)
    assert v1 == NodeRef()
    assert distance(v1, v2) == 1
    v1, v2 = tree.place(5, placement_seed=4)
    assert distance(v1, v2) == 5
    assert tree.place(5, placement_seed=4) == (v1, v2)
    assert tree.place(5, placement_seed=5) != (v1, v2)


def test_place_oriented_same_branch():
    tree = OrientedTree(RegularChildren(2), seed=1)
    v1, v2 = tree.place(0, 3, 2, placement_seed=8)
    assert v1.depth == 2
    assert v2.depth == 5
    assert v2.path[:2] == v1.path
    assert distance(v1, v2) == 3


def test_place_oriented_split():
    tree = OrientedTree(RegularChildren(2), seed=1)
    v1, v2 = tree.place(2, 2, 0, placement_seed=3)
    assert v1.depth == 2 and v2.depth == 2
    assert v1.path[0] != v2.path[0]  # distinct children of the root
    assert distance(v1, v2) == 4


def test_place_oriented_needs_branching():
    tree = OrientedTree(RandomChildren(1, 1), seed=0)  # a single path
    with pytest.raises(PlacementError):
        tree.place(1, 1, 0, placement_seed=0)


def test_place_oriented_distance_oracle():
    tree = OrientedTree(RandomChildren(1, 3), seed=2)
    for k1, k2, h in ((0, 4, 1), (1, 2, 3), (3, 3, 0)):
        for attempt in range(10):
            try:
                v1, v2 = tree.place(k1, k2, h, placement_seed=attempt)
                break
            except PlacementError:
                continue
        assert distance(v1, v2) == k1 + k2


def test_parse_degree_gen():
    assert parse_degree_gen("regular(2)") == RegularChildren(2)
    assert parse_degree_gen("random(1, 3)") == RandomChildren(1, 3)
    with pytest.raises(ValueError):
        parse_degree_gen("fanout(2)")


def test_trees_with_equal_params_are_equal():
    assert UnorientedRegularTree(3, SEEDED, 5) == UnorientedRegularTree(3, SEEDED, 5)
    assert OrientedTree(RegularChildren(2), 1) == OrientedTree(RegularChildren(2), 1)
