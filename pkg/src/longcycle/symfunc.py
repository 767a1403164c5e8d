"""Cycle-type refinement checked by explicit evaluation of symmetric functions.

The k-weighted side is expanded in power sums and the closed-form side in
monomial symmetric functions (``orientation="verified"``).  The opposite
assignment (``orientation="printed"``) is kept so its failure can be shown.
Each of the r alphabets owns ``v`` consecutive variables of one polynomial
ring.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .formula import series_coefficient
from .oracle import count_by_type
from .polynomial import SparsePolynomial

ORIENTATIONS = ("verified", "printed")


@lru_cache(maxsize=None)
def integer_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of n, parts weakly decreasing, in reverse lexicographic order."""
    out = []

    def rec(left, cap, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for part in range(min(left, cap), 0, -1):
            acc.append(part)
            rec(left - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


@dataclass(frozen=True)
class Alphabet:
    """``v`` variables starting at ``offset`` inside a ring of ``nvars`` variables."""

    v: int
    offset: int = 0
    nvars: int | None = None

    @property
    def ring_size(self) -> int:
        return self.nvars if self.nvars is not None else self.offset + self.v

    def embed(self, local: Sequence[int]) -> tuple[int, ...]:
        exps = [0] * self.ring_size
        exps[self.offset:self.offset + self.v] = local
        return tuple(exps)


def monomial_sym(lam: Sequence[int], alph: Alphabet) -> SparsePolynomial:
    """m_lambda: every distinct monomial whose exponent multiset is lambda."""
    if len(lam) > alph.v:
        raise ValueError(f"m_{tuple(lam)} needs at least {len(lam)} variables, alphabet has {alph.v}")
    padded = tuple(lam) + (0,) * (alph.v - len(lam))
    terms = {alph.embed(e): 1 for e in set(itertools.permutations(padded))}
    return SparsePolynomial(alph.ring_size, terms)


def powersum_sym(lam: Sequence[int], alph: Alphabet) -> SparsePolynomial:
    """p_lambda: product over parts k of (sum_j x_j^k)."""
    out = SparsePolynomial.constant(alph.ring_size)
    for k in lam:
        single = {}
        for j in range(alph.v):
            local = [0] * alph.v
            local[j] = k
            single[alph.embed(local)] = 1
        out = out * SparsePolynomial(alph.ring_size, single)
    return out


def _alphabets(r: int, v: int) -> list[Alphabet]:
    return [Alphabet(v, i * v, r * v) for i in range(r)]


def _bases(orientation: str):
    if orientation == "verified":
        return powersum_sym, monomial_sym
    if orientation == "printed":
        return monomial_sym, powersum_sym
    raise ValueError(f"orientation must be one of {ORIENTATIONS}")


def _tensor(basis, lams, alphs) -> SparsePolynomial:
    out = SparsePolynomial.constant(alphs[0].ring_size)
    for lam, alph in zip(lams, alphs):
        out = out * basis(lam, alph)
    return out


def theorem2_lhs(n: int, r: int, v: int | None = None, orientation: str = "verified",
                 budget: int | None = None) -> SparsePolynomial:
    """(n-1)!^-(r-1) * sum over cycle-type tuples of k_lambda * prod basis(lambda^i)."""
    v = n if v is None else v
    basis, _ = _bases(orientation)
    alphs = _alphabets(r, v)
    scale = Fraction(1, math.factorial(n - 1) ** (r - 1))
    out = SparsePolynomial(r * v)
    for lams, k in count_by_type(n, r, budget).rows():
        out = out + _tensor(basis, lams, alphs) * (scale * k)
    return out


def theorem2_coefficient(n: int, r: int, lams: Sequence[Sequence[int]]) -> Fraction:
    p = tuple(len(lam) for lam in lams)
    den = math.prod(math.comb(n - 1, x - 1) for x in p)
    return Fraction(series_coefficient(n, r, p), den)


def theorem2_rhs(n: int, r: int, v: int | None = None, orientation: str = "verified") -> SparsePolynomial:
    """Sum over cycle-type tuples of the closed-form coefficient times prod basis(lambda^i)."""
    v = n if v is None else v
    _, basis = _bases(orientation)
    alphs = _alphabets(r, v)
    out = SparsePolynomial(r * v)
    for lams in itertools.product(integer_partitions(n), repeat=r):
        c = theorem2_coefficient(n, r, lams)
        if c:
            out = out + _tensor(basis, lams, alphs) * c
    return out


def format_monomial(exps: Sequence[int], r: int, v: int) -> str:
    names = []
    for idx, e in enumerate(exps):
        if e:
            name = f"x{idx // v + 1}_{idx % v + 1}"
            names.append(name if e == 1 else f"{name}^{e}")
    return "*".join(names) or "1"


def theorem2_check(n: int, r: int, v: int | None = None, orientation: str = "verified",
                   budget: int | None = None) -> dict:
    """Compare both sides monomial by monomial; report the first difference."""
    v = n if v is None else v
    if v < n:
        raise ValueError(f"need at least n={n} variables per alphabet, got {v}")
    lhs = theorem2_lhs(n, r, v, orientation, budget)
    rhs = theorem2_rhs(n, r, v, orientation)
    first = None
    for exps in sorted(set(lhs.terms) | set(rhs.terms)):
        a, b = lhs.coefficient(exps), rhs.coefficient(exps)
        if a != b:
            first = {"monomial": format_monomial(exps, r, v), "exponents": list(exps),
                     "lhs": str(Fraction(a)), "rhs": str(Fraction(b))}
            break
    return {"n": n, "r": r, "v": v, "orientation": orientation,
            "status": "pass" if first is None else "fail", "terms": len(lhs),
            "first_mismatch": first}
