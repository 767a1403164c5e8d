import json
import math

import pytest

from longcycle.budget import BudgetExceeded
from longcycle.formula import stirling2
from longcycle.oracle import (count_by_p, count_by_type, enumerate_factorizations, enumerate_partitioned_cacti,
                              partitioned_count_oracle, partitioned_counts_oracle)
from longcycle.perm import Permutation, compose_all, is_stable, long_cycle


def test_n1_has_single_identity_record():
    recs = list(enumerate_factorizations(1, 4))
    assert len(recs) == 1
    assert all(a == Permutation.identity(1) for a in recs[0].alphas)


def test_n2_r3_records():
    recs = list(enumerate_factorizations(2, 3))
    assert len(recs) == 4
    assert sorted(r.p_vector() for r in recs) == [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)]


def test_n3_r2_records_and_product():
    recs = list(enumerate_factorizations(3, 2))
    assert len(recs) == 6
    assert all(compose_all(r.alphas) == long_cycle(3) for r in recs)


def test_stream_is_lexicographic_in_first_factor():
    firsts = [r.alphas[0].images for r in enumerate_factorizations(3, 2)]
    assert firsts == sorted(firsts)


def test_count_by_p_examples():
    t = count_by_p(3, 2)
    assert t.entries == {(1, 1): 1, (1, 3): 1, (3, 1): 1, (2, 2): 3}
    assert count_by_p(2, 4)[(1, 1, 1, 1)] == 0
    assert count_by_p(1, 2)[(1, 1)] == 1


@pytest.mark.parametrize("n,r", [(1, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (3, 4), (2, 5)])
def test_totals_and_aggregation(n, r):
    by_p, by_type = count_by_p(n, r), count_by_type(n, r)
    assert by_p.total() == math.factorial(n) ** (r - 1)
    assert by_type.total() == math.factorial(n) ** (r - 1)
    agg = {}
    for lams, k in by_type.rows():
        key = tuple(len(lam) for lam in lams)
        agg[key] = agg.get(key, 0) + k
    assert agg == by_p.entries


def test_worker_count_does_not_change_result():
    assert count_by_p(4, 3, workers=2) == count_by_p(4, 3, workers=1)
    assert count_by_type(3, 3, workers=3) == count_by_type(3, 3)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        count_by_p(6, 3, budget=1000)
    with pytest.raises(BudgetExceeded):
        next(enumerate_factorizations(12, 2))
    assert count_by_p(3, 2, budget=10**6).total() == 6


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("LONGCYCLE_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        count_by_p(3, 2)


def test_bad_arguments():
    with pytest.raises(ValueError):
        count_by_p(0, 2)
    with pytest.raises(ValueError):
        count_by_p(3, 1)


def test_jsonl_record():
    rec = next(enumerate_factorizations(2, 2))
    assert json.loads(rec.to_json()) == {"n": 2, "r": 2, "alphas": [[1, 2], [2, 1]]}


def test_partitioned_cacti_small():
    assert len(list(enumerate_partitioned_cacti(1, 2))) == 1
    pcs = list(enumerate_partitioned_cacti(2, 2))
    assert len(pcs) == 4
    from_id = [pc for pc in pcs if pc.alphas[0] == Permutation.identity(2)]
    assert len(from_id) == 2
    assert all(pc.partitions[1].to_list() == [[1, 2]] for pc in from_id)
    for pc in pcs:
        assert all(is_stable(sp, a) for sp, a in zip(pc.partitions, pc.alphas))


def test_partitioned_cacti_unique():
    pcs = list(enumerate_partitioned_cacti(3, 3))
    assert len(set(pcs)) == len(pcs)


def test_partitioned_count_oracle_examples():
    assert partitioned_count_oracle(1, 3, (1, 1, 1)) == 1
    assert partitioned_count_oracle(2, 4, (1, 1, 1, 1)) == 8
    k = count_by_p(3, 2)
    want = sum(v * stirling2(q[0], 2) * stirling2(q[1], 2) for q, v in k.rows())
    assert partitioned_count_oracle(3, 2, (2, 2)) == want


@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)])
def test_partitioned_table_matches_stream(n, r):
    streamed = {}
    for pc in enumerate_partitioned_cacti(n, r):
        streamed[pc.p_vector()] = streamed.get(pc.p_vector(), 0) + 1
    assert partitioned_counts_oracle(n, r).entries == streamed
