"""Divisor and curve classes on X^n_k and the intersection pairing.

N^1 has basis {H, E_1..E_k}, N_1 has basis {L, R_1..R_k}, with
H.L = 1, E_i.R_i = -1 and every mixed product zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import RationalLike, as_fraction, format_rational, fractions_of


def _check_nk(n: int, k: int) -> None:
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if k < 0:
        raise ValueError(f"number of points k must be >= 0, got {k}")


@dataclass(frozen=True)
class DivisorClass:
    """``h_coeff*H + sum(e_coeffs[i]*E_i)`` with signed exceptional coefficients."""

    n: int
    k: int
    h_coeff: Fraction
    e_coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_nk(self.n, self.k)
        object.__setattr__(self, "h_coeff", as_fraction(self.h_coeff))
        object.__setattr__(self, "e_coeffs", fractions_of(self.e_coeffs))
        if len(self.e_coeffs) != self.k:
            raise ValueError(f"expected {self.k} exceptional coefficients, got {len(self.e_coeffs)}")

    @classmethod
    def uniform(cls, n: int, k: int, h: RationalLike, e: RationalLike) -> "DivisorClass":
        """``h*H + e*(E_1+...+E_k)``."""
        return cls(n, k, as_fraction(h), (as_fraction(e),) * k)

    @classmethod
    def hyperplane(cls, n: int, k: int) -> "DivisorClass":
        return cls.uniform(n, k, 1, 0)

    @classmethod
    def exceptional(cls, n: int, k: int, i: int) -> "DivisorClass":
        _check_index(i, k)
        return cls(n, k, Fraction(0), tuple(Fraction(int(j == i)) for j in range(1, k + 1)))

    @classmethod
    def zero(cls, n: int, k: int) -> "DivisorClass":
        return cls.uniform(n, k, 0, 0)

    def _same_space(self, other: "DivisorClass") -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError(f"classes live on different blow-ups: {(self.n, self.k)} vs {(other.n, other.k)}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_space(other)
        return DivisorClass(
            self.n, self.k, self.h_coeff + other.h_coeff,
            tuple(a + b for a, b in zip(self.e_coeffs, other.e_coeffs)),
        )

    def __neg__(self) -> "DivisorClass":
        return self.scale(-1)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def scale(self, c: RationalLike) -> "DivisorClass":
        c = as_fraction(c)
        return DivisorClass(self.n, self.k, c * self.h_coeff, tuple(c * x for x in self.e_coeffs))

    def __rmul__(self, c: RationalLike) -> "DivisorClass":
        return self.scale(c)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "h": format_rational(self.h_coeff),
            "e": [format_rational(x) for x in self.e_coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        e = data["e"]
        return cls(int(data["n"]), int(data["k"]), as_fraction(data["h"]), fractions_of(e))

    def __str__(self) -> str:
        def coeff(c: Fraction) -> str:
            return "" if c == 1 else format_rational(c)

        parts = [f"{format_rational(self.h_coeff)}H"]
        if self.k > 1 and len(set(self.e_coeffs)) == 1:
            e = self.e_coeffs[0]
            if e:
                parts.append(f"{'+' if e > 0 else '-'} {coeff(abs(e))}(E_1+...+E_{self.k})")
        else:
            for i, e in enumerate(self.e_coeffs, 1):
                if e:
                    parts.append(f"{'+' if e > 0 else '-'} {coeff(abs(e))}E_{i}")
        return " ".join(parts)


@dataclass(frozen=True)
class CurveClass:
    """``l_coeff*L + sum(r_coeffs[i]*R_i)``."""

    n: int
    k: int
    l_coeff: Fraction
    r_coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_nk(self.n, self.k)
        object.__setattr__(self, "l_coeff", as_fraction(self.l_coeff))
        object.__setattr__(self, "r_coeffs", fractions_of(self.r_coeffs))
        if len(self.r_coeffs) != self.k:
            raise ValueError(f"expected {self.k} R-coefficients, got {len(self.r_coeffs)}")

    def __add__(self, other: "CurveClass") -> "CurveClass":
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("curve classes live on different blow-ups")
        return CurveClass(
            self.n, self.k, self.l_coeff + other.l_coeff,
            tuple(a + b for a, b in zip(self.r_coeffs, other.r_coeffs)),
        )

    def __neg__(self) -> "CurveClass":
        return self.scale(-1)

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        return self + (-other)

    def scale(self, c: RationalLike) -> "CurveClass":
        c = as_fraction(c)
        return CurveClass(self.n, self.k, c * self.l_coeff, tuple(c * x for x in self.r_coeffs))

    def __rmul__(self, c: RationalLike) -> "CurveClass":
        return self.scale(c)

    @classmethod
    def zero(cls, n: int, k: int) -> "CurveClass":
        return cls(n, k, Fraction(0), (Fraction(0),) * k)


def _check_index(i: int, k: int) -> None:
    if not 1 <= i <= k:
        raise IndexError(f"point index {i} outside 1..{k}")


def anticanonical(n: int, k: int) -> DivisorClass:
    """-K = (n+1)H - (n-1)(E_1+...+E_k)."""
    _check_nk(n, k)
    return DivisorClass.uniform(n, k, n + 1, -(n - 1))


def standard_curve(kind: str, n: int, k: int, *indices: int) -> CurveClass:
    """The curves ``L``, ``R`` (i), ``L_single`` (i) and ``L_pair`` (i, j)."""
    _check_nk(n, k)
    for i in indices:
        _check_index(i, k)

    def unit(i: int) -> list[Fraction]:
        return [Fraction(int(j == i)) for j in range(1, k + 1)]

    if kind == "L":
        if indices:
            raise ValueError("L takes no indices")
        return CurveClass(n, k, Fraction(1), (Fraction(0),) * k)
    if kind == "R":
        (i,) = indices
        return CurveClass(n, k, Fraction(0), tuple(unit(i)))
    if kind == "L_single":
        (i,) = indices
        return CurveClass(n, k, Fraction(1), tuple(-x for x in unit(i)))
    if kind == "L_pair":
        i, j = indices
        if i == j:
            raise ValueError("L_pair needs two distinct points")
        return CurveClass(n, k, Fraction(1), tuple(-a - b for a, b in zip(unit(i), unit(j))))
    raise ValueError(f"unknown curve kind {kind!r}")


def pair(d: DivisorClass, c: CurveClass) -> Fraction:
    if (d.n, d.k) != (c.n, c.k):
        raise ValueError(f"dimension mismatch: divisor on {(d.n, d.k)}, curve on {(c.n, c.k)}")
    return d.h_coeff * c.l_coeff - sum((e * r for e, r in zip(d.e_coeffs, c.r_coeffs)), Fraction(0))


def divisor_from_coeffs(n: int, coeffs: Sequence[RationalLike]) -> DivisorClass:
    """Build from a flat list ``[h, e_1, ..., e_k]``."""
    h, *e = fractions_of(coeffs)
    return DivisorClass(n, len(e), h, tuple(e))


def curve_from_coeffs(n: int, coeffs: Sequence[RationalLike]) -> CurveClass:
    """Build from a flat list ``[l, r_1, ..., r_k]``."""
    l, *r = fractions_of(coeffs)
    return CurveClass(n, len(r), l, tuple(r))
