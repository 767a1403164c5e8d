"""Closed-form side: a-vectors, the Delta_r determinant, multinomials, tree counts.

Subsets t of {1..r} are bitmasks (bit ``i - 1`` for color ``i``).  An
a-vector maps each nonempty t to a count; its p-vector is
``p_l = #{t : l not in t}`` weighted by ``a_t``, plus one for ``l = 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .tables import CountTable


def subset_members(mask: int, r: int) -> tuple[int, ...]:
    return tuple(i for i in range(1, r + 1) if mask >> (i - 1) & 1)


def subset_mask(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << (i - 1)
    return m


def subset_key(mask: int, r: int) -> str:
    """``"1,3,4"`` style name used in JSON."""
    return ",".join(map(str, subset_members(mask, r)))


def cyclic_gap(t: int, i: int, r: int) -> int:
    """Distance from color ``i`` to the next member of ``t`` going round 1..r.

    A singleton ``t == {i}`` has gap ``r``.
    """
    if not t >> (i - 1) & 1:
        raise ValueError(f"color {i} is not in {subset_members(t, r)}")
    for d in range(1, r + 1):
        if t >> ((i - 1 + d) % r) & 1:
            return d
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class AVector:
    """Counts ``a_t`` over nonempty subsets t of {1..r} (zeros omitted)."""

    r: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        items = dict(self.counts) if not isinstance(self.counts, dict) else self.counts
        clean = tuple(sorted((int(t), int(v)) for t, v in items.items() if v))
        for t, v in clean:
            if not 0 < t < 1 << self.r:
                raise ValueError(f"bad subset mask {t} for r={self.r}")
            if v < 0:
                raise ValueError("negative a_t")
        object.__setattr__(self, "counts", clean)

    @classmethod
    def from_subsets(cls, r: int, mapping: dict) -> AVector:
        """Build from ``{(1, 3): 2, ...}`` or ``{"1,3": 2}`` style keys."""
        counts = {}
        for key, v in mapping.items():
            members = [int(x) for x in key.split(",")] if isinstance(key, str) else list(key)
            counts[subset_mask(members)] = counts.get(subset_mask(members), 0) + v
        return cls(r, counts)

    def __getitem__(self, t: int) -> int:
        return dict(self.counts).get(t, 0)

    @property
    def n(self) -> int:
        return sum(v for _, v in self.counts)

    def p_vector(self) -> tuple[int, ...]:
        p = [0] * self.r
        p[0] = 1
        for t, v in self.counts:
            for l in range(self.r):
                if not t >> l & 1:
                    p[l] += v
        return tuple(p)

    def to_dict(self) -> dict[str, int]:
        return {subset_key(t, self.r): v for t, v in self.counts}

    def __repr__(self):
        inner = ", ".join(f"{{{subset_key(t, self.r)}}}: {v}" for t, v in self.counts)
        return f"AVector(r={self.r}, {inner})"


def weak_compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` non-negative parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def avectors_by_p(n: int, r: int) -> dict[tuple[int, ...], tuple[AVector, ...]]:
    """All a-vectors with sum n, grouped by their p-vector."""
    masks = range(1, 1 << r)
    groups: dict[tuple[int, ...], list[AVector]] = {}
    for comp in weak_compositions(n, len(masks)):
        a = AVector(r, dict(zip(masks, comp)))
        groups.setdefault(a.p_vector(), []).append(a)
    return {p: tuple(sorted(v, key=lambda a: a.counts)) for p, v in sorted(groups.items())}


def enumerate_avectors(n: int, r: int, p: Sequence[int]) -> list[AVector]:
    """Every a-vector with sum n whose p-vector is ``p`` (empty if none)."""
    return list(avectors_by_p(n, r).get(tuple(p), ()))


def delta_matrix(a: AVector) -> list[list[int]]:
    """The r x r matrix whose determinant weights a in the main formula.

    Off-diagonal entries away from the superdiagonal collect ``-a_t`` over
    subsets containing ``i`` whose gap after ``i`` clears ``i+1..j``.  The
    superdiagonal (and the corner ``(r, 1)``) then fix each column sum:
    0 for columns 2..r, 1 for column 1.
    """
    r = a.r
    p = a.p_vector()
    m = [[0] * r for _ in range(r)]
    for i in range(r):
        m[i][i] = p[i]
    for i in range(r):
        for j in range(r):
            if j == i or j == (i + 1) % r:
                continue
            width = (j - i) % r + 1
            m[i][j] = -sum(v for t, v in a.counts if t >> i & 1 and cyclic_gap(t, i + 1, r) >= width)
    for c in range(r):
        above = (c - 1) % r
        rest = sum(m[w][c] for w in range(r) if w not in (above, c))
        m[above][c] = (1 if c == 0 else 0) - p[c] - rest
    return m


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(row) for row in m]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("matrix is not square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for s in range(k + 1, size):
                if a[s][k] != 0:
                    a[k], a[s] = a[s], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def delta(a: AVector) -> int:
    return determinant(delta_matrix(a))


def multinomial(n: int, parts) -> int:
    """n! / prod(parts!); ``parts`` may be an :class:`AVector`."""
    parts = [v for _, v in parts.counts] if isinstance(parts, AVector) else list(parts)
    if any(x < 0 for x in parts) or sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = math.factorial(n)
    for x in parts:
        out //= math.factorial(x)
    return out


def avector_multinomial(a: AVector) -> int:
    return multinomial(a.n, (v for _, v in a.counts))


def series_coefficient(n: int, r: int, p: Sequence[int]) -> int:
    """Binomial-basis coefficient: sum over valid a of Delta(a) * multinomial(n; a)."""
    return sum(delta(a) * avector_multinomial(a) for a in enumerate_avectors(n, r, p))


def series_coefficients(n: int, r: int) -> CountTable:
    """The binomial-basis coefficients for every p reachable by some a."""
    table = CountTable(n=n, r=r, by="p")
    for p, avs in avectors_by_p(n, r).items():
        table.add(p, sum(delta(a) * avector_multinomial(a) for a in avs))
    return table


def tree_count(a: AVector) -> int:
    """Number of cactus trees with pattern counts ``a``."""
    n, r = a.n, a.r
    num = math.factorial(n - 1) ** (r - 1) * delta(a) * avector_multinomial(a)
    den = math.prod(math.factorial(x) for x in a.p_vector())
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"tree count for {a} is not an integer: {num}/{den}")
    return q


def partitioned_count_formula(n: int, r: int, p: Sequence[int]) -> int:
    """|C^n(p)| = (n-1)!^(r-1) * C(p) / prod p_i!."""
    num = math.factorial(n - 1) ** (r - 1) * series_coefficient(n, r, p)
    den = math.prod(math.factorial(x) for x in p)
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"|C^{n}({tuple(p)})| is not an integer: {num}/{den}")
    return q


def partitioned_counts_formula(n: int, r: int) -> CountTable:
    table = CountTable(n=n, r=r, by="p")
    for p, c in series_coefficients(n, r).rows():
        table.add(p, partitioned_count_formula(n, r, p))
    return table


@lru_cache(maxsize=None)
def stirling2(q: int, p: int) -> int:
    """Stirling numbers of the second kind S(q, p)."""
    if q == p:
        return 1
    if p == 0 or q == 0 or p > q:
        return 0
    return p * stirling2(q - 1, p) + stirling2(q - 1, p - 1)


@lru_cache(maxsize=None)
def stirling1_signed(p: int, q: int) -> int:
    """Signed Stirling numbers of the first kind: (x)_p = sum_q s(p, q) x^q."""
    if p == q:
        return 1
    if p == 0 or q == 0 or q > p:
        return 0
    return stirling1_signed(p - 1, q - 1) - (p - 1) * stirling1_signed(p - 1, q)


def binomial_to_power_basis(coeffs: CountTable) -> CountTable:
    """Rewrite sum_p c_p prod binom(x_i, p_i) as sum_q d_q prod x_i^q_i."""
    out: dict[tuple[int, ...], Fraction] = {}
    for p, c in coeffs.rows():
        den = math.prod(math.factorial(x) for x in p)
        factors = [[(q, stirling1_signed(pi, q)) for q in range(pi + 1) if stirling1_signed(pi, q)] for pi in p]
        for combo in itertools.product(*factors):
            q = tuple(f[0] for f in combo)
            out[q] = out.get(q, 0) + Fraction(c * math.prod(f[1] for f in combo), den)
    table = CountTable(n=coeffs.n, r=coeffs.r, by="p")
    for q in sorted(out):
        table.add(q, out[q])
    return table


def as_integer_counts(table: CountTable, scale: int, what: str) -> CountTable:
    out = CountTable(n=table.n, r=table.r, by="p")
    for q, v in table.rows():
        k = v * scale
        if Fraction(k).denominator != 1:
            raise ArithmeticError(f"{what}: non-integral coefficient {k} at {q}")
        k = int(k)
        if k and (min(q) < 1 or max(q) > table.n):
            raise ArithmeticError(f"{what}: nonzero count {k} at impossible cycle counts {q}")
        out.add(q, k)
    return out


def k_from_formula(n: int, r: int) -> CountTable:
    """k^n_q for every q, from the determinant formula alone."""
    power = binomial_to_power_basis(series_coefficients(n, r))
    return as_integer_counts(power, math.factorial(n - 1) ** (r - 1), "k_from_formula")


def stirling_transform(k: CountTable) -> CountTable:
    """|C^n(p)| = sum_q k_q prod S(q_i, p_i), from a table of k^n_q."""
    out: dict[tuple[int, ...], int] = {}
    for q, v in k.rows():
        for p in itertools.product(*(range(1, qi + 1) for qi in q)):
            out[p] = out.get(p, 0) + v * math.prod(stirling2(qi, pi) for qi, pi in zip(q, p))
    table = CountTable(n=k.n, r=k.r, by="p")
    for p in sorted(out):
        table.add(p, out[p])
    return table
