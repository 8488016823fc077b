"""Exact multivariate polynomials and their restrictions to lines.

Three representations share one interface, ``restrict(p, v, max_order)``,
returning the coefficient list of t -> F(p + t v):

* ``Polynomial``: sparse map exponent-vector -> Fraction
* ``DeterminantalForm``: det of a square matrix of linear forms
* ``ProductForm``: product of other forms
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .linalg import determinant
from .rational import RationalLike, as_fraction, format_rational

Univariate = list  # coefficients, lowest degree first


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def uni_mul(a: Sequence[Fraction], b: Sequence[Fraction], cap: int | None = None) -> list[Fraction]:
    if not a or not b:
        return []
    size = len(a) + len(b) - 1
    if cap is not None:
        size = min(size, cap)
    out = [Fraction(0)] * size
    for i, ai in enumerate(a):
        if not ai or i >= size:
            continue
        for j, bj in enumerate(b):
            if i + j >= size:
                break
            out[i + j] += ai * bj
    return _trim(out)


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    # Newton divided differences, then expand
    dd = [as_fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs: list[Fraction] = [dd[-1]]
    for i in range(n - 2, -1, -1):
        # coeffs * (t - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs
        for d in range(len(coeffs)):
            shifted[d] -= xs[i] * coeffs[d]
        shifted[0] += dd[i]
        coeffs = shifted
    return _trim(coeffs)


def lowest_order(coeffs: Sequence[Fraction]) -> int | float:
    for i, c in enumerate(coeffs):
        if c:
            return i
    return math.inf


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[tuple[int, ...], RationalLike]) -> "Polynomial":
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        return cls(nvars, tuple(sorted((e, c) for e, c in clean.items() if c)))

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        return cls.from_dict(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def constant(cls, nvars: int, c: RationalLike) -> "Polynomial":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence[RationalLike]) -> "Polynomial":
        nv = len(coeffs)
        return cls.from_dict(nv, {tuple(int(j == i) for j in range(nv)): c for i, c in enumerate(coeffs)})

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, Fraction(0)) + c
        return Polynomial.from_dict(self.nvars, d)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: RationalLike) -> "Polynomial":
        c = as_fraction(c)
        return Polynomial.from_dict(self.nvars, {e: c * v for e, v in self.terms})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return Polynomial.from_dict(self.nvars, d)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        pt = [as_fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total

    def restrict(self, p: Sequence[RationalLike], v: Sequence[RationalLike], max_order: int | None = None) -> list[Fraction]:
        p = [as_fraction(x) for x in p]
        v = [as_fraction(x) for x in v]
        cap = None if max_order is None else max_order + 1
        powers: dict[tuple[int, int], list[Fraction]] = {}

        def power(i: int, k: int) -> list[Fraction]:
            key = (i, k)
            if key not in powers:
                base = _trim([p[i], v[i]])
                powers[key] = [Fraction(1)] if k == 0 else uni_mul(power(i, k - 1), base, cap)
            return powers[key]

        out: list[Fraction] = []
        for e, c in self.terms:
            prod = [c]
            for i, k in enumerate(e):
                if k:
                    prod = uni_mul(prod, power(i, k), cap)
                    if not prod:
                        break
            for d, val in enumerate(prod):
                if d >= len(out):
                    out.extend([Fraction(0)] * (d + 1 - len(out)))
                out[d] += val
        return _trim(out)

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, e)): format_rational(c) for e, c in self.terms}

    @classmethod
    def from_json(cls, data: Mapping[str, str], nvars: int | None = None) -> "Polynomial":
        parsed = {tuple(int(x) for x in key.split(",")): as_fraction(c) for key, c in data.items()}
        if nvars is None:
            if not parsed:
                raise ValueError("cannot infer the number of variables of the zero polynomial")
            nvars = len(next(iter(parsed)))
        return cls.from_dict(nvars, parsed)


@dataclass(frozen=True)
class DeterminantalForm:
    """det(M) where every entry of M is a linear form given by its coefficient vector."""

    nvars: int
    matrix: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @classmethod
    def of(cls, nvars: int, matrix: Sequence[Sequence[Sequence[RationalLike]]]) -> "DeterminantalForm":
        rows = tuple(tuple(tuple(as_fraction(c) for c in entry) for entry in row) for row in matrix)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        if any(len(entry) != nvars for row in rows for entry in row):
            raise ValueError("linear form of the wrong length")
        return cls(nvars, rows)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def _eval_matrix(self, point: Sequence[Fraction]) -> list[list[Fraction]]:
        return [[sum((c * x for c, x in zip(entry, point)), Fraction(0)) for entry in row] for row in self.matrix]

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        return determinant(self._eval_matrix([as_fraction(x) for x in point]))

    def restrict(self, p: Sequence[RationalLike], v: Sequence[RationalLike], max_order: int | None = None) -> list[Fraction]:
        p = [as_fraction(x) for x in p]
        v = [as_fraction(x) for x in v]
        # det(A + tB) has degree <= size: sample size+1 values and interpolate
        ts = [Fraction(i) for i in range(self.size + 1)]
        ys = [self.evaluate([a + t * b for a, b in zip(p, v)]) for t in ts]
        coeffs = interpolate(ts, ys)
        if max_order is not None:
            coeffs = _trim(coeffs[: max_order + 1])
        return coeffs

    def expand(self) -> Polynomial:
        """Full sparse expansion by cofactors along the first row."""
        lin = [[Polynomial.linear(entry) for entry in row] for row in self.matrix]
        size = self.size

        @lru_cache(maxsize=None)
        def minor(row: int, cols: frozenset) -> Polynomial:
            if row == size:
                return Polynomial.constant(self.nvars, 1)
            total = Polynomial.from_dict(self.nvars, {})
            for pos, col in enumerate(sorted(cols)):
                entry = lin[row][col]
                if entry.is_zero():
                    continue
                term = entry * minor(row + 1, cols - {col})
                total = total - term if pos % 2 else total + term
            return total

        return minor(0, frozenset(range(size)))


@dataclass(frozen=True)
class ProductForm:
    factors: tuple

    @property
    def nvars(self) -> int:
        return self.factors[0].nvars

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        out = Fraction(1)
        for f in self.factors:
            out *= f.evaluate(point)
        return out

    def restrict(self, p: Sequence[RationalLike], v: Sequence[RationalLike], max_order: int | None = None) -> list[Fraction]:
        cap = None if max_order is None else max_order + 1
        out = [Fraction(1)]
        for f in self.factors:
            out = uni_mul(out, f.restrict(p, v, max_order), cap)
            if not out:
                break
        return out

    def order_along(self, p: Sequence[RationalLike], v: Sequence[RationalLike]) -> int | float:
        """Sum of the factor orders; agrees with ``lowest_order(restrict(...))``."""
        return sum(lowest_order(f.restrict(p, v)) for f in self.factors)


def hankel_matrix_forms(n: int, rows: int) -> list[list[list[Fraction]]]:
    """Linear forms of the catalecticant with entries x_{i+j}, rows x (n+2-rows)."""
    cols = n + 2 - rows
    return [[[Fraction(int(c == i + j)) for c in range(n + 1)] for j in range(cols)] for i in range(rows)]


def hankel_determinant_form(n: int) -> DeterminantalForm:
    if n % 2:
        raise ValueError("the square Hankel matrix needs n even")
    return DeterminantalForm.of(n + 1, hankel_matrix_forms(n, n // 2 + 1))


@lru_cache(maxsize=None)
def hankel_determinant_polynomial(n: int) -> Polynomial:
    """det M_h as an explicit sparse polynomial (n = 2h, kept to h <= 4)."""
    if n % 2 or n > 8:
        raise ValueError("explicit expansion offered for even n <= 8")
    return hankel_determinant_form(n).expand()
