import pytest
from hypothesis import given
from hypothesis import strategies as st

from longcycle.perm import (Permutation, SetPartition, compose, compose_all, cycle_type, cycles, is_stable,
                            long_cycle, num_cycles, orbit_partition, set_partitions, stable_partitions)

from conftest import cyc

perms = st.integers(1, 8).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(
    lambda xs: Permutation(tuple(xs)))


def test_five_factor_example_multiplies_to_gamma6():
    alphas = [cyc(6, (1, 2)), cyc(6, (2, 4), (5, 6)), cyc(6), cyc(6, (2, 3), (4, 6)), cyc(6)]
    assert compose_all(alphas) == long_cycle(6)


def test_four_factor_example_multiplies_to_gamma3():
    alphas = [cyc(3, (1, 2)), cyc(3, (1, 3)), cyc(3, (1, 2)), cyc(3, (1, 3))]
    assert compose_all(alphas) == long_cycle(3)


def test_left_action_convention_would_fail():
    # reading the product left-to-right gives a different permutation
    alphas = [cyc(6, (1, 2)), cyc(6, (2, 4), (5, 6)), cyc(6), cyc(6, (2, 3), (4, 6)), cyc(6)]
    assert compose_all(alphas[::-1]) != long_cycle(6)


def test_compose_identity_and_mismatch():
    s = cyc(4, (1, 3, 2))
    assert compose(Permutation.identity(4), s) == s
    assert compose(s, Permutation.identity(4)) == s
    with pytest.raises(ValueError):
        compose(s, Permutation.identity(3))


def test_compose_is_right_to_left():
    s, t = cyc(3, (1, 2)), cyc(3, (2, 3))
    assert compose(s, t)(2) == s(t(2)) == 3


@pytest.mark.parametrize("n,images", [(1, [1]), (3, [2, 3, 1]), (6, [2, 3, 4, 5, 6, 1])])
def test_long_cycle(n, images):
    assert long_cycle(n).to_list() == images


def test_cycles_examples():
    assert cycles(Permutation.identity(3)) == [[1], [2], [3]]
    assert cycles(cyc(6, (2, 4), (5, 6))) == [[1], [2, 4], [3], [5, 6]]
    assert cycles(long_cycle(6)) == [[1, 2, 3, 4, 5, 6]]


def test_cycle_type_examples():
    assert cycle_type(cyc(3, (1, 2))) == (2, 1) and num_cycles(cyc(3, (1, 2))) == 2
    assert cycle_type(cyc(6, (2, 4), (5, 6))) == (2, 2, 1, 1)
    assert num_cycles(cyc(6, (2, 4), (5, 6))) == 4
    assert cycle_type(long_cycle(5)) == (5,) and num_cycles(long_cycle(5)) == 1


def test_is_stable_examples():
    pi = SetPartition(6, ((1, 2, 6), (3,), (4, 5)))
    assert is_stable(pi, cyc(6, (1, 2)))
    assert is_stable(SetPartition(3, ((1,), (2, 3))), Permutation.identity(3))
    assert not is_stable(SetPartition(3, ((1,), (2, 3))), cyc(3, (1, 2)))


def test_set_partition_canonical_form():
    sp = SetPartition(5, ((5, 3), (2,), (4, 1)))
    assert sp.to_list() == [[1, 4], [2], [3, 5]]
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2),))
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2), (2, 3)))


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation(())


@pytest.mark.parametrize("k,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
def test_set_partitions_bell_numbers(k, bell):
    parts = list(set_partitions(range(k)))
    assert len(parts) == bell
    assert len({tuple(map(tuple, p)) for p in parts}) == bell


def test_stable_partitions_count_is_bell_of_cycle_count():
    p = cyc(6, (1, 2), (3, 4, 5))
    sps = list(stable_partitions(p))
    assert len(sps) == 5  # three cycles
    assert all(is_stable(sp, p) for sp in sps)


@given(perms)
def test_inverse_composes_to_identity(p):
    assert compose(p, p.inverse()) == Permutation.identity(p.n)
    assert compose(p.inverse(), p) == Permutation.identity(p.n)


@given(perms)
def test_num_cycles_matches_type_length(p):
    assert num_cycles(p) == len(cycle_type(p))
    assert sum(cycle_type(p)) == p.n


@given(perms)
def test_orbit_partition_is_stable(p):
    assert is_stable(orbit_partition(p), p)


@given(perms)
def test_from_cycles_roundtrip(p):
    assert Permutation.from_cycles(p.n, cycles(p)) == p
