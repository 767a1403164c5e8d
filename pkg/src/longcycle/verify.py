"""Verification suites run by ``longcycle verify``.

Each suite returns a list of :class:`Check` results; grids default to the
desk-scale sizes and can be narrowed (or widened, subject to the budget)
with ``n_max`` / ``r_max``.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass

from . import bijection, formula, jackson, oracle, symfunc
from .budget import check_budget

FORMULA_GRID = {2: 6, 3: 5, 4: 4, 5: 3}
BIJECTION_GRID = {2: 4, 3: 4, 4: 3}
TREE_GRID = {2: 3, 3: 3}
THEOREM2_GRID = {2: 3, 3: 3}
DELTA_N_MAX = 8
SUITES = ("delta", "formula", "stirling", "jackson", "bijection", "trees", "theorem2")


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"[{mark}] {self.suite}: {self.name} ({self.seconds:.2f}s){tail}"


def grid(default: dict[int, int], n_max: int | None, r_max: int | None) -> list[tuple[int, int]]:
    out = []
    for r, top in sorted(default.items()):
        if r_max is not None and r > r_max:
            continue
        for n in range(1, (top if n_max is None else n_max) + 1):
            out.append((n, r))
    return out


def preflight(points, budget: int | None = None) -> None:
    for n, r in points:
        check_budget(oracle.enumeration_cost(n, r), f"verification at n={n} r={r}", budget)


def _timed(suite, name, fn) -> Check:
    t0 = time.perf_counter()
    ok, detail = fn()
    return Check(suite, name, ok, detail, time.perf_counter() - t0)


def suite_delta(n_max=None, r_max=None, budget=None) -> list[Check]:
    n_top = DELTA_N_MAX if n_max is None else n_max
    check_budget(math.comb(n_top + 6, 6), f"delta suite up to n={n_top}", budget)
    out = []
    for r in (2, 3):
        if r_max is not None and r > r_max:
            continue

        def run(r=r):
            count = 0
            for n in range(1, n_top + 1):
                for avs in formula.avectors_by_p(n, r).values():
                    for a in avs:
                        p = a.p_vector()
                        want = p[1] if r == 2 else p[1] * p[2] - a[0b100] * (p[2] - a[0b001])
                        got = formula.delta(a)
                        count += 1
                        if got != want:
                            return False, f"a={a}: det={got}, expected {want}"
            return True, f"{count} a-vectors"

        out.append(_timed("delta", f"closed form r={r} n<={n_top}", run))
    return out


def suite_formula(n_max=None, r_max=None, budget=None) -> list[Check]:
    points = grid(FORMULA_GRID, n_max, r_max)
    preflight(points, budget)
    out = []
    for n, r in points:
        def run(n=n, r=r):
            got, want = formula.k_from_formula(n, r), oracle.count_by_p(n, r, budget)
            if got == want:
                return True, f"{len(want.entries)} p-vectors, total {want.total()}"
            diff = sorted(set(got.entries) | set(want.entries))
            bad = next(p for p in diff if got[p] != want[p])
            return False, f"p={bad}: formula {got[bad]}, oracle {want[bad]}"
        out.append(_timed("formula", f"k formula == oracle n={n} r={r}", run))
    return out


def suite_stirling(n_max=None, r_max=None, budget=None) -> list[Check]:
    points = grid(FORMULA_GRID, n_max, r_max)
    preflight(points, budget)
    out = []
    for n, r in points:
        def run(n=n, r=r):
            f = formula.partitioned_counts_formula(n, r)
            o = oracle.partitioned_counts_oracle(n, r, budget)
            s = formula.stirling_transform(oracle.count_by_p(n, r, budget))
            if f == o == s:
                return True, f"total {o.total()}"
            return False, "partitioned-cactus counts disagree"
        out.append(_timed("stirling", f"|C(p)| formula == oracle == transform n={n} r={r}", run))
    return out


def suite_jackson(n_max=None, r_max=None, budget=None) -> list[Check]:
    points = grid(FORMULA_GRID, n_max, r_max)
    preflight(points, budget)
    out = []
    for n, r in points:
        def run(n=n, r=r):
            rep = jackson.check_equivalence(n, r)
            return rep.ok, f"{rep.checked} p-vectors" if rep.ok else str(rep.mismatches[0])
        out.append(_timed("jackson", f"forms and bridge n={n} r={r}", run))

    n_top = 10 if n_max is None else n_max

    def r2():
        count = 0
        for n in range(1, n_top + 1):
            for p1 in range(1, n + 1):
                for p2 in range(1, n + 2 - p1):
                    count += 1
                    if not jackson.r2_identity_holds(n, p1, p2):
                        return False, f"fails at n={n} p=({p1}, {p2})"
        return True, f"{count} admissible (n, p)"

    if r_max is None or r_max >= 2:
        out.append(_timed("jackson", f"r=2 closed identity n<={n_top}", r2))
    return out


def bijection_sweep(n: int, r: int, budget=None) -> dict:
    """Exhaustive forward/inverse sweep over every partitioned cactus of size (n, r)."""
    checked = failures = invalid = 0
    longest = 0
    per_a: Counter = Counter()
    images: set[str] = set()
    first_failure = None
    for pc in oracle.enumerate_partitioned_cacti(n, r, budget):
        checked += 1
        runs = bijection.runs_of_maxima(pc)
        longest = max([longest] + [len(run) for rs in runs.values() for run in rs])
        tree = bijection.forward(pc)
        if bijection.validate_tree(tree):
            invalid += 1
            first_failure = first_failure or pc.to_dict()
            continue
        images.add(tree.shape_key())
        per_a[bijection.avector_of(tree)] += 1
        try:
            back = bijection.inverse(tree)
        except bijection.MalformedTree:
            back = None
        if back != pc:
            failures += 1
            first_failure = first_failure or pc.to_dict()
    count_mismatch = [(a.to_dict(), c, formula.tree_count(a)) for a, c in per_a.items() if c != formula.tree_count(a)]
    return {"n": n, "r": r, "checked": checked, "failures": failures, "invalid_trees": invalid,
            "distinct_images": len(images), "max_run_length": longest,
            "count_mismatches": count_mismatch[:5], "first_failure": first_failure}


def suite_bijection(n_max=None, r_max=None, budget=None) -> list[Check]:
    points = grid(BIJECTION_GRID, n_max, r_max)
    preflight(points, budget)
    out = []
    for n, r in points:
        def run(n=n, r=r):
            rep = bijection_sweep(n, r, budget)
            ok = (rep["failures"] == 0 and rep["invalid_trees"] == 0 and not rep["count_mismatches"]
                  and rep["distinct_images"] == rep["checked"] and rep["max_run_length"] <= r - 1)
            return ok, (f"{rep['checked']} checked, {rep['failures']} failures, "
                        f"max run {rep['max_run_length']}")
        out.append(_timed("bijection", f"roundtrip n={n} r={r}", run))
    return out


def suite_trees(n_max=None, r_max=None, budget=None) -> list[Check]:
    out = []
    for n, r in grid(TREE_GRID, n_max, r_max):
        def run(n=n, r=r):
            count = 0
            for avs in formula.avectors_by_p(n, r).values():
                for a in avs:
                    got, want = len(bijection.enumerate_cactus_trees(a)), formula.tree_count(a)
                    count += 1
                    if got != want:
                        return False, f"a={a}: enumerated {got}, formula {want}"
            return True, f"{count} a-vectors"
        out.append(_timed("trees", f"enumerated trees == tree_count n={n} r={r}", run))
    return out


def suite_theorem2(n_max=None, r_max=None, budget=None) -> list[Check]:
    points = [(n, r) for n, r in grid(THEOREM2_GRID, n_max, r_max) if n >= 2]
    preflight(points, budget)
    out = []
    for n, r in points:
        def run(n=n, r=r):
            rep = symfunc.theorem2_check(n, r, n, "verified", budget)
            return rep["status"] == "pass", str(rep["first_mismatch"] or f"{rep['terms']} terms")
        out.append(_timed("theorem2", f"cycle-type identity n={n} r={r}", run))

    def printed():
        rep = symfunc.theorem2_check(2, 2, 2, "printed", budget)
        return rep["status"] == "fail", f"witness {rep['first_mismatch']}"

    if (r_max is None or r_max >= 2) and (n_max is None or n_max >= 2):
        out.append(_timed("theorem2", "printed orientation fails at n=2 r=2", printed))
    return out


RUNNERS = {
    "delta": suite_delta,
    "formula": suite_formula,
    "stirling": suite_stirling,
    "jackson": suite_jackson,
    "bijection": suite_bijection,
    "trees": suite_trees,
    "theorem2": suite_theorem2,
}


def run_suites(names, n_max=None, r_max=None, budget=None) -> list[Check]:
    names = SUITES if "all" in names else names
    # refuse oversized grids before doing any work
    for name in names:
        if name in ("formula", "stirling", "jackson"):
            preflight(grid(FORMULA_GRID, n_max, r_max), budget)
        elif name == "bijection":
            preflight(grid(BIJECTION_GRID, n_max, r_max), budget)
        elif name == "theorem2":
            preflight(grid(THEOREM2_GRID, n_max, r_max), budget)
    results = []
    for name in names:
        results.extend(RUNNERS[name](n_max, r_max, budget))
    return results
