"""Brute-force ground truth: every factorization of the long cycle, counted.

Nothing here is clever on purpose.  The first ``r - 1`` factors run over
all of S_n in lexicographic order and the last factor is forced.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .budget import check_budget
from .cactus import Cactus, PartitionedCactus
from .perm import Permutation, cycle_type, num_cycles, stable_partitions
from .tables import CountTable


@dataclass(frozen=True)
class FactorizationRecord:
    n: int
    r: int
    alphas: tuple[Permutation, ...]

    def p_vector(self) -> tuple[int, ...]:
        return tuple(num_cycles(a) for a in self.alphas)

    def type_vector(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cycle_type(a) for a in self.alphas)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "r": self.r, "alphas": [a.to_list() for a in self.alphas]})


def enumeration_cost(n: int, r: int) -> int:
    return math.factorial(n) ** (r - 1) * n * r


def _check_args(n: int, r: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 2:
        raise ValueError("r must be >= 2")


@lru_cache(maxsize=None)
def _sym(n: int):
    perms = list(itertools.permutations(range(1, n + 1)))
    inv = []
    for p in perms:
        q = [0] * n
        for x, y in enumerate(p, start=1):
            q[y - 1] = x
        inv.append(tuple(q))
    return perms, inv


def _raw_factorizations(n: int, r: int, first: int | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield image tables ``(a1, ..., ar)``; ``first`` pins the index of a1 in S_n."""
    perms, inv = _sym(n)
    gamma = tuple(range(2, n + 1)) + (1,)
    idx = range(len(perms))
    heads = idx if first is None else [first]

    # rest_k = a_k^-1 o ... o a_1^-1 o gamma, so a_r = rest_{r-1}
    def rec(depth: int, rest: tuple[int, ...], chosen: list):
        if depth == r - 1:
            yield tuple(chosen) + (rest,)
            return
        choices = heads if depth == 0 else idx
        for k in choices:
            ik = inv[k]
            chosen.append(perms[k])
            yield from rec(depth + 1, tuple(ik[y - 1] for y in rest), chosen)
            chosen.pop()

    yield from rec(0, gamma, [])


def enumerate_factorizations(n: int, r: int, budget: int | None = None) -> Iterator[FactorizationRecord]:
    """Every ordered factorization ``a1 * ... * ar`` of (1 2 ... n), each once."""
    _check_args(n, r)
    check_budget(enumeration_cost(n, r), f"enumerating factorizations n={n} r={r}", budget)
    gamma = tuple(range(2, n + 1)) + (1,)
    for raw in _raw_factorizations(n, r):
        # product check: right-to-left composition must give gamma
        acc = raw[-1]
        for a in reversed(raw[:-1]):
            acc = tuple(a[y - 1] for y in acc)
        assert acc == gamma, raw
        yield FactorizationRecord(n, r, tuple(Permutation(a) for a in raw))


def _n_cycles(images: tuple[int, ...]) -> int:
    seen = [False] * (len(images) + 1)
    c = 0
    for s in range(1, len(images) + 1):
        if not seen[s]:
            c += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = images[x - 1]
    return c


def _type(images: tuple[int, ...]) -> tuple[int, ...]:
    return cycle_type(Permutation(images))


def _count_chunk(n: int, r: int, by: str, first: int) -> Counter:
    perms, _ = _sym(n)
    stat = _n_cycles if by == "p" else _type
    cache: dict = {}
    out: Counter = Counter()
    for raw in _raw_factorizations(n, r, first):
        key = []
        for a in raw:
            v = cache.get(a)
            if v is None:
                v = cache[a] = stat(a)
            key.append(v)
        out[tuple(key)] += 1
    return out


def _count(n: int, r: int, by: str, budget: int | None, workers: int) -> CountTable:
    _check_args(n, r)
    check_budget(enumeration_cost(n, r), f"counting factorizations n={n} r={r}", budget)
    heads = range(math.factorial(n))
    total: Counter = Counter()
    if workers <= 1:
        for h in heads:
            total.update(_count_chunk(n, r, by, h))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_count_chunk, *zip(*[(n, r, by, h) for h in heads])):
                total.update(part)
    table = CountTable(n=n, r=r, by=by)
    for key in sorted(total):
        table.add(key, total[key])
    return table


def count_by_p(n: int, r: int, budget: int | None = None, workers: int = 1) -> CountTable:
    """k^n_p for every p-vector, by exhaustive enumeration."""
    return _count(n, r, "p", budget, workers)


def count_by_type(n: int, r: int, budget: int | None = None, workers: int = 1) -> CountTable:
    """k^n_lambda for every tuple of cycle types, by exhaustive enumeration."""
    return _count(n, r, "type", budget, workers)


def enumerate_partitioned_cacti(n: int, r: int, budget: int | None = None) -> Iterator[PartitionedCactus]:
    """Each partitioned cactus exactly once, grouped by factorization."""
    for rec in enumerate_factorizations(n, r, budget):
        cactus = Cactus(rec.alphas)
        for parts in itertools.product(*(list(stable_partitions(a)) for a in rec.alphas)):
            yield PartitionedCactus(cactus, parts)


@lru_cache(maxsize=None)
def _block_histogram(images: tuple[int, ...]) -> dict[int, int]:
    # number of stable partitions of this permutation with each block count
    hist: Counter = Counter(len(sp) for sp in stable_partitions(Permutation(images)))
    return dict(hist)


def partitioned_counts_oracle(n: int, r: int, budget: int | None = None) -> CountTable:
    """|C^n(p)| for all p: per factorization, multiply the stable-partition counts."""
    _check_args(n, r)
    check_budget(enumeration_cost(n, r), f"counting partitioned cacti n={n} r={r}", budget)
    table = CountTable(n=n, r=r, by="p")
    acc: Counter = Counter()
    for raw in _raw_factorizations(n, r):
        hists = [_block_histogram(a) for a in raw]
        for combo in itertools.product(*(h.items() for h in hists)):
            acc[tuple(c[0] for c in combo)] += math.prod(c[1] for c in combo)
    for key in sorted(acc):
        table.add(key, acc[key])
    return table


def partitioned_count_oracle(n: int, r: int, p, budget: int | None = None) -> int:
    return partitioned_counts_oracle(n, r, budget)[tuple(p)]
