import json
from collections import Counter

import pytest

from longcycle.bijection import (CactusTree, MalformedTree, avector_of, enumerate_cactus_trees, forward, inverse,
                                 runs_of_maxima, validate_tree)
from longcycle.budget import BudgetExceeded
from longcycle.cactus import Cactus, PartitionedCactus, edge_labels
from longcycle.formula import AVector, avectors_by_p, tree_count
from longcycle.oracle import enumerate_partitioned_cacti
from longcycle.perm import Permutation, long_cycle
from longcycle.verify import bijection_sweep

from conftest import cyc


def avec(r, *subsets):
    return AVector.from_subsets(r, dict(Counter(tuple(s) for s in subsets)))


def test_edge_labels_hand_example():
    c = Cactus((cyc(3, (1, 2)), cyc(3, (1, 3)), cyc(3, (1, 2)), cyc(3, (1, 3))))
    # sigma_4 = a4^-1 = (13); sigma_3 = (13)(12); sigma_2 = (13)(12)(13)
    assert edge_labels(c) == [[1, 2, 3], [1, 3, 2], [2, 3, 1], [3, 2, 1]]


def test_edge_label_rows_are_permutations(five_color_pc):
    rows = edge_labels(five_color_pc.cactus)
    assert rows[0] == list(range(1, 7))
    assert all(sorted(row) == list(range(1, 7)) for row in rows)


def test_cactus_rejects_wrong_product():
    with pytest.raises(ValueError):
        Cactus((cyc(3, (1, 2)), cyc(3, (1, 2))))


def test_partitioned_cactus_rejects_unstable_partition():
    with pytest.raises(ValueError):
        PartitionedCactus.build([Permutation.identity(2), long_cycle(2)], [[[1], [2]], [[1], [2]]])


def test_five_color_forward_avector(five_color_pc):
    tree = forward(five_color_pc)
    assert validate_tree(tree) == []
    assert avector_of(tree) == avec(5, [2], [1, 2], [2, 4], [1, 3, 4, 5], [1, 3, 4], [1, 2, 3, 4, 5])
    arities = Counter(p.arity for p in tree.polygons)
    assert arities == {1: 10, 2: 4, 3: 1, 4: 1, 5: 1}
    assert tree.n == 6
    assert Counter(v.color for v in tree.vertices) == dict(zip(range(1, 6), five_color_pc.p_vector()))


def test_five_color_roundtrip(five_color_pc):
    assert inverse(forward(five_color_pc)) == five_color_pc


def test_four_color_tree_inverts_to_four_cactus(four_color_tree, four_cactus_pc):
    assert validate_tree(four_color_tree) == []
    back = inverse(four_color_tree)
    assert back == four_cactus_pc
    assert [a.to_list() for a in back.alphas] == [[2, 1, 3], [3, 2, 1], [2, 1, 3], [3, 2, 1]]
    assert [sp.to_list() for sp in back.partitions] == [[[1, 2, 3]], [[1, 3], [2]], [[1, 2], [3]], [[1, 2, 3]]]


def test_four_cactus_forward_matches_tree_shape(four_color_tree, four_cactus_pc):
    tree = forward(four_cactus_pc)
    assert tree.shape_key() == four_color_tree.shape_key()
    assert avector_of(tree) == avec(4, [1, 4], [1, 4], [1, 2, 3])


def test_symbols_are_opaque(four_color_tree):
    d = four_color_tree.to_dict()
    for p in d["polygons"]:
        p["symbol"] = {7: 100, 8: -3, 9: 42}[p["symbol"]]
    assert inverse(CactusTree.from_dict(d)) == inverse(four_color_tree)


def test_n1_trivial_cactus():
    pc = PartitionedCactus.build([Permutation.identity(1)] * 3, [[[1]]] * 3)
    tree = forward(pc)
    assert validate_tree(tree) == []
    assert avector_of(tree) == avec(3, [1])
    # a single 3-gon carries the two non-root vertices
    assert len(tree.vertices) == 3 and [p.arity for p in tree.polygons] == [3]
    assert inverse(tree) == pc


def test_runs_of_maxima_bounded(five_color_pc):
    runs = runs_of_maxima(five_color_pc)
    assert all(len(run) <= 4 for rs in runs.values() for run in rs)


def test_validate_flags_root_color(four_color_tree):
    d = four_color_tree.to_dict()
    d["vertices"][0]["color"] = 2
    problems = validate_tree(CactusTree.from_dict(d))
    assert any(p.startswith("(i)") for p in problems)


def test_validate_flags_repeated_color(four_color_tree):
    d = four_color_tree.to_dict()
    # symbol 9 then covers color 1 twice and misses color 3
    d["polygons"][1]["symbol"] = 9
    problems = validate_tree(CactusTree.from_dict(d))
    assert any(p.startswith("(iii)") for p in problems)


def test_validate_flags_wrong_descendant_count(four_color_tree):
    d = four_color_tree.to_dict()
    d["polygons"][2]["arity"] = 3
    problems = validate_tree(CactusTree.from_dict(d))
    assert any(p.startswith("(ii)") for p in problems)


def test_malformed_trees_raise(four_color_tree):
    with pytest.raises(MalformedTree):
        CactusTree.from_dict({"r": 2})
    d = four_color_tree.to_dict()
    d["vertices"][1]["id"] = 9
    with pytest.raises(MalformedTree):
        CactusTree.from_dict(d)
    d = four_color_tree.to_dict()
    d["polygons"][1]["descendants"] = [0, 2]
    with pytest.raises(MalformedTree):
        inverse(CactusTree.from_dict(d))


def test_json_roundtrip(five_color_pc):
    tree = forward(five_color_pc)
    assert CactusTree.from_dict(json.loads(tree.to_json())) == tree
    assert PartitionedCactus.from_dict(json.loads(json.dumps(five_color_pc.to_dict()))) == five_color_pc


def test_canonical_is_idempotent(four_color_tree):
    c = four_color_tree.canonical(relabel_symbols=True)
    assert c.canonical(relabel_symbols=True) == c
    assert {p.symbol for p in c.polygons} == {1, 2, 3}
    assert inverse(c) == inverse(four_color_tree)


def test_dot_output(four_color_tree):
    dot = four_color_tree.to_dot()
    assert dot.startswith("graph cactus_tree {")
    assert dot.count(" -- ") == 7 + 6 - 1


def test_enumerate_trees_examples():
    assert len(enumerate_cactus_trees(avec(3, [1]))) == 1
    assert enumerate_cactus_trees(avec(3, [1, 2, 3])) == []
    assert len(enumerate_cactus_trees(avec(2, [1], [1]))) == 1
    trees = enumerate_cactus_trees(avec(3, [1, 3], [1, 2]))
    assert len(trees) == 2
    assert all(validate_tree(t) == [] for t in trees)
    assert len({t.shape_key() for t in trees}) == 2


def test_enumerate_trees_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_cactus_trees(avec(2, [1], [1], [1], [2]))


@pytest.mark.parametrize("n,r", [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_enumerated_trees_roundtrip_through_inverse(n, r):
    for avs in avectors_by_p(n, r).values():
        for a in avs:
            trees = enumerate_cactus_trees(a)
            assert len(trees) == tree_count(a)
            for t in trees:
                pc = inverse(t)
                assert forward(pc).shape_key() == t.shape_key()


@pytest.mark.parametrize("n,r", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (3, 4), (2, 5)])
def test_roundtrip_sweep(n, r):
    rep = bijection_sweep(n, r)
    assert rep["failures"] == 0 and rep["invalid_trees"] == 0
    assert rep["distinct_images"] == rep["checked"]
    assert rep["count_mismatches"] == []
    assert rep["max_run_length"] <= r - 1


def test_forward_preserves_p_vector():
    for pc in enumerate_partitioned_cacti(3, 3):
        assert avector_of(forward(pc)).p_vector() == pc.p_vector()
