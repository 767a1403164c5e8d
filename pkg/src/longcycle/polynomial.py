"""Sparse multivariate polynomials with exact (int or Fraction) coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SparsePolynomial:
    """``terms`` maps exponent tuples of length ``nvars`` to nonzero coefficients."""

    nvars: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent vector {exps} has length != {self.nvars}")
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c=1) -> SparsePolynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> SparsePolynomial:
        exps = [0] * nvars
        exps[k] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps, c=1) -> SparsePolynomial:
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    def _check(self, other: SparsePolynomial):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} != {other.nvars}")

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePolynomial(self.nvars, out)

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def __mul__(self, other) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            return SparsePolynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePolynomial:
        if k < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self.terms)

    def permute_variables(self, perm) -> SparsePolynomial:
        """Rename variable ``k`` to ``perm[k]``."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for k, x in enumerate(e):
                new[perm[k]] = x
            out[tuple(new)] = c
        return SparsePolynomial(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{k + 1}^{x}" if x > 1 else f"x{k + 1}" for k, x in enumerate(e) if x)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def poly_add(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p + q


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    return p * q


def poly_pow(p: SparsePolynomial, k: int) -> SparsePolynomial:
    return p**k
