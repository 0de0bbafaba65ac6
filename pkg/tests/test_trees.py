import json

import pytest

from bspace.trees import (TreeSpec, build_tree, cantor_pair, cantor_unpair,
                          class_members, enumerate_segments, load_tree,
                          node_class, save_tree, segments_incomparable,
                          tree_from_json, tree_to_json)


def test_cantor_pairing_bijection():
    seen = {}
    for a in range(30):
        for b in range(30):
            z = cantor_pair(a, b)
            assert z not in seen
            seen[z] = (a, b)
            assert cantor_unpair(z) == (a, b)
    # the first 30 diagonals enumerate 0..464 without gaps
    diag = sorted(z for z, (a, b) in seen.items() if a + b < 30)
    assert diag == list(range(465))


def test_partition_is_a_partition():
    n_max = 3000
    classes = [node_class(m) for m in range(1, n_max + 1)]
    # every class j collects exactly the nodes node_class maps to j
    for j in set(classes):
        assert class_members(j, n_max) == \
            [m for m in range(1, n_max + 1) if node_class(m) == j]
    # class 0 = the roots = powers of two with pair-index (0, b)
    roots = [m for m in range(1, n_max + 1) if node_class(m) == 0]
    assert roots == [1, 4, 32, 512]
    # classes are infinite in the limit: each class seen below a bound
    # grows when the bound doubles
    for j in range(5):
        assert len(class_members(j, 2 * n_max)) >= len(class_members(j, n_max))


def test_build_tree_chains():
    tree = build_tree(TreeSpec(xi=1, n_max=120))
    # root 1 is sterile (its S_1 budget is a single node)
    assert tree.max_chain_from(1) == [1]
    # root 4 carries the consecutive chain 4..7
    assert tree.max_chain_from(4) == [4, 5, 6, 7]
    # root 32 carries 32..63
    assert tree.max_chain_from(32) == list(range(32, 64))
    for c, p in tree.parent.items():
        assert tree.precedes(p, c)
    # each node's chain_set is strictly increasing and ends at the node
    for m in tree.nodes():
        ch = tree.chain_set(m)
        assert ch[-1] == m
        assert all(a < b for a, b in zip(ch, ch[1:]))


def test_segment_queries():
    tree = build_tree(TreeSpec(xi=1, n_max=120))
    assert tree.segment(33, 36) == (33, 34, 35, 36)
    assert tree.segment(40, 40) == (40,)
    with pytest.raises(ValueError):
        tree.segment(5, 40)  # different chains
    assert tree.comparable(32, 63)
    assert not tree.comparable(5, 33)
    segs = enumerate_segments(tree, [33, 34, 35])
    assert (33, 34, 35) in segs and (33, 35) not in segs


def test_segments_incomparable():
    tree = build_tree(TreeSpec(xi=1, n_max=120))
    assert segments_incomparable(tree, (4, 5), (33, 34))
    assert not segments_incomparable(tree, (33, 34), (35, 36))


def test_spec_validation():
    with pytest.raises(ValueError):
        TreeSpec(xi=-1, n_max=10)
    with pytest.raises(KeyError):
        tree = build_tree(TreeSpec(xi=1, n_max=50))
        tree.chain_set(51)


def test_serialization_roundtrip(tmp_path):
    tree = build_tree(TreeSpec(xi=1, n_max=90))
    data = tree_to_json(tree)
    back = tree_from_json(json.loads(json.dumps(data)))
    assert tree_to_json(back) == data
    path = tmp_path / "tree.json"
    save_tree(tree, str(path))
    assert tree_to_json(load_tree(str(path))) == data


def test_serialization_rejects_tampering():
    tree = build_tree(TreeSpec(xi=1, n_max=60))
    data = tree_to_json(tree)
    data["edges"] = data["edges"][:-1]
    with pytest.raises(ValueError):
        tree_from_json(data)
