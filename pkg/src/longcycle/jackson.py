"""Jackson's generating series for factorizations of the long cycle.

Both forms produce the coefficient J(p) of ``prod binom(x_i, p_i)``:

* product form: the monomial coefficient of ``prod x_i^p_i`` in
  ``prod x_i * (prod(1 + x_i) - prod x_i)^(n-1)``;
* multinomial form: a sum of ``multinomial(n-1; a)`` over counts ``a_S``
  indexed by the proper subsets S of {1..r} (the monomials of the
  bracket), with ``sum a_S = n - 1`` and ``sum_{S contains l} a_S = p_l - 1``.

The map sending ``prod x^p`` to ``prod binom(x, p)`` is linear and
injective on monomials, so it is never applied explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .budget import check_budget
from .formula import (as_integer_counts, weak_compositions, binomial_to_power_basis, multinomial,
                      series_coefficients)
from .polynomial import SparsePolynomial
from .tables import CountTable


def jackson_polynomial(n: int, r: int, budget: int | None = None) -> SparsePolynomial:
    if n < 1 or r < 2:
        raise ValueError("need n >= 1 and r >= 2")
    check_budget((n + 1) ** r * 2**r, f"expanding Jackson's product n={n} r={r}", budget)
    ones = SparsePolynomial.constant(r)
    xs = [SparsePolynomial.variable(r, k) for k in range(r)]
    prod_x = SparsePolynomial.monomial((1,) * r)
    prod_1px = ones
    for x in xs:
        prod_1px = prod_1px * (ones + x)
    return prod_x * (prod_1px - prod_x) ** (n - 1)


def jackson_coefficient(n: int, r: int, p: Sequence[int]) -> int:
    return jackson_polynomial(n, r).coefficient(p)


def jackson_table(n: int, r: int, form: str = "product") -> CountTable:
    """J(p) for all p with a nonzero value."""
    table = CountTable(n=n, r=r, by="p")
    if form == "product":
        for p, c in sorted(jackson_polynomial(n, r).terms.items()):
            table.add(p, c)
    elif form == "multinomial":
        for p, c in sorted(_multinomial_form(n, r).items()):
            table.add(p, c)
    else:
        raise ValueError(f"unknown form {form!r}")
    return table


def _multinomial_form(n: int, r: int) -> dict[tuple[int, ...], int]:
    full = (1 << r) - 1
    subsets = range(full)  # proper subsets, empty set included
    out: dict[tuple[int, ...], int] = {}
    for comp in weak_compositions(n - 1, len(subsets)):
        p = [1] * r
        for s, v in zip(subsets, comp):
            if v:
                for l in range(r):
                    if s >> l & 1:
                        p[l] += v
        out[tuple(p)] = out.get(tuple(p), 0) + multinomial(n - 1, comp)
    return out


def jackson_coefficient_multinomial(n: int, r: int, p: Sequence[int]) -> int:
    return _multinomial_form(n, r).get(tuple(p), 0)


@dataclass
class EquivalenceReport:
    n: int
    r: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "checked": self.checked,
                "status": "pass" if self.ok else "fail",
                "first_mismatch": self.mismatches[0] if self.mismatches else None}


def check_equivalence(n: int, r: int) -> EquivalenceReport:
    """Compare the two Jackson forms with each other and with C(p) = n^(r-1) J(p)."""
    product = jackson_table(n, r, "product")
    multi = jackson_table(n, r, "multinomial")
    series = series_coefficients(n, r)
    report = EquivalenceReport(n, r)
    scale = n ** (r - 1)
    keys = sorted(set(product.entries) | set(multi.entries) | set(series.entries))
    for p in keys:
        report.checked += 1
        jp, jm, c = product[p], multi[p], series[p]
        if jp != jm:
            report.mismatches.append({"p": list(p), "kind": "forms", "product": jp, "multinomial": jm})
        if c != scale * jp:
            report.mismatches.append({"p": list(p), "kind": "bridge", "C": c, "n^(r-1)*J": scale * jp})
    return report


def r2_identity_holds(n: int, p1: int, p2: int) -> bool:
    """(n-1)! p2 multinomial(n; p1-1, p2, rest) == n! multinomial(n-1; p1-1, p2-1, rest)."""
    rest = n + 1 - p1 - p2
    if min(p1 - 1, p2 - 1, rest) < 0:
        raise ValueError(f"p=({p1}, {p2}) is not admissible for n={n}")
    lhs = math.factorial(n - 1) * p2 * multinomial(n, (p1 - 1, p2, rest))
    rhs = math.factorial(n) * multinomial(n - 1, (p1 - 1, p2 - 1, rest))
    return lhs == rhs


def k_from_jackson(n: int, r: int) -> CountTable:
    """k^n_q recovered from the product form by a change of basis."""
    power = binomial_to_power_basis(jackson_table(n, r, "product"))
    return as_integer_counts(power, math.factorial(n) ** (r - 1), "k_from_jackson")
