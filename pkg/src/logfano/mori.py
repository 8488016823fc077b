"""Mori cone generators, ampleness, epsilon-ranges and curve decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import CurveClass, DivisorClass, pair, standard_curve
from .rational import RationalLike, as_fraction, format_rational

HEURISTIC_TAG = "heuristic, cone description unproven"


# ---------------------------------------------------------------------------
# intervals

@dataclass(frozen=True)
class EpsilonInterval:
    """A real interval with exact rational endpoints; ``None`` marks an infinite end.

    Every empty interval normalizes to the open interval (0, 0) so that
    equality compares sets.
    """

    lower: Fraction | None = None
    upper: Fraction | None = None
    lower_open: bool = True
    upper_open: bool = True

    def __post_init__(self) -> None:
        lo = None if self.lower is None else as_fraction(self.lower)
        hi = None if self.upper is None else as_fraction(self.upper)
        lo_open = True if lo is None else bool(self.lower_open)
        hi_open = True if hi is None else bool(self.upper_open)
        empty = lo is not None and hi is not None and (lo > hi or (lo == hi and (lo_open or hi_open)))
        if empty:
            lo, hi, lo_open, hi_open = Fraction(0), Fraction(0), True, True
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "lower_open", lo_open)
        object.__setattr__(self, "upper_open", hi_open)

    @classmethod
    def open(cls, lower, upper) -> "EpsilonInterval":
        return cls(lower, upper, True, True)

    @classmethod
    def closed_open(cls, lower, upper) -> "EpsilonInterval":
        return cls(lower, upper, False, True)

    @classmethod
    def everything(cls) -> "EpsilonInterval":
        return cls(None, None)

    @classmethod
    def empty(cls) -> "EpsilonInterval":
        return cls(Fraction(0), Fraction(0), True, True)

    @property
    def is_empty(self) -> bool:
        return self.lower == 0 and self.upper == 0 and self.lower_open and self.upper_open

    def __bool__(self) -> bool:
        return not self.is_empty

    def __contains__(self, x: RationalLike) -> bool:
        if self.is_empty:
            return False
        x = as_fraction(x)
        if self.lower is not None and (x < self.lower or (x == self.lower and self.lower_open)):
            return False
        if self.upper is not None and (x > self.upper or (x == self.upper and self.upper_open)):
            return False
        return True

    def intersect(self, other: "EpsilonInterval") -> "EpsilonInterval":
        if self.is_empty or other.is_empty:
            return EpsilonInterval.empty()
        lo, lo_open = self.lower, self.lower_open
        if other.lower is not None and (lo is None or other.lower > lo):
            lo, lo_open = other.lower, other.lower_open
        elif other.lower is not None and other.lower == lo:
            lo_open = lo_open or other.lower_open
        hi, hi_open = self.upper, self.upper_open
        if other.upper is not None and (hi is None or other.upper < hi):
            hi, hi_open = other.upper, other.upper_open
        elif other.upper is not None and other.upper == hi:
            hi_open = hi_open or other.upper_open
        return EpsilonInterval(lo, hi, lo_open, hi_open)

    __and__ = intersect

    def witness(self) -> Fraction | None:
        """Some rational point of the interval (the midpoint when bounded)."""
        if self.is_empty:
            return None
        lo, hi = self.lower, self.upper
        if lo is not None and hi is not None:
            return (lo + hi) / 2
        if lo is not None:
            return lo + 1
        if hi is not None:
            return hi - 1
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "lower": "-inf" if self.lower is None else format_rational(self.lower),
            "upper": "+inf" if self.upper is None else format_rational(self.upper),
            "lower_open": self.lower_open,
            "upper_open": self.upper_open,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EpsilonInterval":
        lo = None if data["lower"] == "-inf" else as_fraction(data["lower"])
        hi = None if data["upper"] in ("+inf", "inf") else as_fraction(data["upper"])
        return cls(lo, hi, bool(data["lower_open"]), bool(data["upper_open"]))

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        lo = "-inf" if self.lower is None else format_rational(self.lower)
        hi = "+inf" if self.upper is None else format_rational(self.upper)
        return f"{'(' if self.lower_open else '['}{lo}, {hi}{')' if self.upper_open else ']'}"


def solve_linear(constraints: Iterable[tuple[RationalLike, RationalLike, bool]]) -> EpsilonInterval:
    """Solve ``a + b*eps > 0`` (strict) or ``>= 0`` for every ``(a, b, strict)``."""
    result = EpsilonInterval.everything()
    for a, b, strict in constraints:
        a, b = as_fraction(a), as_fraction(b)
        if b == 0:
            ok = a > 0 if strict else a >= 0
            piece = EpsilonInterval.everything() if ok else EpsilonInterval.empty()
        elif b > 0:
            piece = EpsilonInterval(-a / b, None, strict, True)
        else:
            piece = EpsilonInterval(None, -a / b, True, strict)
        result = result.intersect(piece)
    return result


# ---------------------------------------------------------------------------
# generators

def mori_valid(n: int, k: int) -> bool:
    return k <= 2 * n or (n == 3 and k <= 8)


@dataclass(frozen=True)
class MoriGenerators:
    n: int
    k: int
    generators: tuple[tuple[str, CurveClass], ...]
    validity: bool

    @property
    def count(self) -> int:
        return len(self.generators)

    @property
    def spanning(self) -> tuple[tuple[str, CurveClass], ...]:
        """Curves whose positivity decides ampleness.

        With no points only L spans; with a single point the lines through it
        (L_1) are extremal alongside R_1.
        """
        if self.k == 0:
            return (("L", standard_curve("L", self.n, 0)),)
        if self.k == 1:
            return self.generators + (("L_i_1", standard_curve("L_single", self.n, 1, 1)),)
        return self.generators


def mori_generators(n: int, k: int) -> MoriGenerators:
    gens: list[tuple[str, CurveClass]] = [(f"R_{i}", standard_curve("R", n, k, i)) for i in range(1, k + 1)]
    gens += [
        (f"L_{i}_{j}", standard_curve("L_pair", n, k, i, j))
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    ]
    return MoriGenerators(n, k, tuple(gens), mori_valid(n, k))


# ---------------------------------------------------------------------------
# positivity

@dataclass(frozen=True)
class PositivityReport:
    divisor: DivisorClass
    values: tuple[tuple[str, Fraction], ...]
    min_value: Fraction
    ample: bool
    nef: bool
    violating_generators: tuple[str, ...]
    certified: bool
    tag: str | None = None


def positivity_report(d: DivisorClass) -> PositivityReport:
    """Pair ``d`` against every spanning curve; ample iff all strictly positive.

    Outside the proven range the numbers are still computed but the report is
    uncertified and carries ``HEURISTIC_TAG``.
    """
    gens = mori_generators(d.n, d.k)
    values = tuple((name, pair(d, c)) for name, c in gens.spanning)
    min_value = min(v for _, v in values)
    violating = tuple(name for name, v in values if v <= 0)
    return PositivityReport(
        divisor=d,
        values=values,
        min_value=min_value,
        ample=not violating,
        nef=min_value >= 0,
        violating_generators=violating,
        certified=gens.validity,
        tag=None if gens.validity else HEURISTIC_TAG,
    )


@dataclass(frozen=True)
class PairingEvidence:
    """``value(eps) = base - eps*slope`` for one spanning curve."""

    generator: str
    base: Fraction
    slope: Fraction

    def at(self, eps: RationalLike) -> Fraction:
        return self.base - as_fraction(eps) * self.slope


def pairing_evidence(a: DivisorClass, d: DivisorClass) -> tuple[PairingEvidence, ...]:
    if (a.n, a.k) != (d.n, d.k):
        raise ValueError("divisors live on different blow-ups")
    gens = mori_generators(a.n, a.k)
    return tuple(PairingEvidence(name, pair(a, c), pair(d, c)) for name, c in gens.spanning)


def epsilon_interval(a: DivisorClass, d: DivisorClass, *, allow_heuristic: bool = False) -> EpsilonInterval:
    """All eps with ``a - eps*d`` ample."""
    if not mori_valid(a.n, a.k) and not allow_heuristic:
        raise ValueError(f"Mori cone of X^{a.n}_{a.k} is not known to be generated by R_i, L_ij ({HEURISTIC_TAG})")
    return solve_linear((ev.base, -ev.slope, True) for ev in pairing_evidence(a, d))


# ---------------------------------------------------------------------------
# curve decomposition

class DecompositionError(ValueError):
    pass


def curve_term(name: str, n: int, k: int) -> CurveClass:
    """Inverse of the generator naming scheme (``R_3``, ``L_1_2``, ``L``, ``L_i_5``)."""
    if name == "L":
        return standard_curve("L", n, k)
    parts = name.split("_")
    if parts[0] == "R" and len(parts) == 2:
        return standard_curve("R", n, k, int(parts[1]))
    if parts[0] == "L" and len(parts) == 3 and parts[1] == "i":
        return standard_curve("L_single", n, k, int(parts[2]))
    if parts[0] == "L" and len(parts) == 3:
        return standard_curve("L_pair", n, k, int(parts[1]), int(parts[2]))
    raise ValueError(f"unknown curve name {name!r}")


def recombine(terms: Sequence[tuple[str, RationalLike]], n: int, k: int) -> CurveClass:
    total = CurveClass.zero(n, k)
    for name, coeff in terms:
        total = total + curve_term(name, n, k).scale(coeff)
    return total


def _pair_name(i: int, j: int) -> str:
    a, b = sorted((i, j))
    return f"L_{a}_{b}"


class _Terms:
    def __init__(self) -> None:
        self.coeffs: dict[str, Fraction] = {}

    def add(self, name: str, c: RationalLike) -> None:
        c = as_fraction(c)
        if c:
            self.coeffs[name] = self.coeffs.get(name, Fraction(0)) + c

    def add_single(self, i: int, partner: int | None, c: RationalLike) -> None:
        # L_i = L_{i,partner} + R_partner
        if partner is None:
            self.add(f"L_i_{i}", c)
        else:
            self.add(_pair_name(i, partner), c)
            self.add(f"R_{partner}", c)

    def result(self) -> list[tuple[str, Fraction]]:
        return [(name, c) for name, c in self.coeffs.items() if c]


def _multiplicities(c: CurveClass) -> tuple[int, list[int]]:
    d = c.l_coeff
    ms = [-r for r in c.r_coeffs]
    if d.denominator != 1 or any(m.denominator != 1 for m in ms):
        raise DecompositionError("degree and multiplicities must be integers")
    if d <= 0:
        raise DecompositionError(f"degree must be positive, got {d}")
    if any(m < 0 for m in ms):
        raise DecompositionError("multiplicities m_i must be >= 0 (class dL - sum m_i R_i)")
    return int(d), [int(m) for m in ms]


def decompose_curve(c: CurveClass) -> list[tuple[str, Fraction]]:
    """Write ``dL - sum m_i R_i`` as a nonnegative combination of R_i, L_ij, L_i and L.

    Follows the pairing argument when k <= 2n and the inductive removal of
    L_{k-1,k} for n = 3, k <= 8. Single-point lines L_i are rewritten as
    L_{i,j} + R_j using the index they were paired with.
    """
    n, k = c.n, c.k
    d, m = _multiplicities(c)
    if k <= 2 * n:
        return _decompose_pairing(d, m)
    if n == 3 and k <= 8:
        return _decompose_p3(d, m)
    raise DecompositionError(f"X^{n}_{k} is outside the range k <= 2n or (n = 3, k <= 8)")


def _decompose_pairing(d: int, m: list[int]) -> list[tuple[str, Fraction]]:
    k = len(m)
    order = sorted(range(1, k + 1), key=lambda i: (m[i - 1], i))
    mult = lambda i: m[i - 1]  # noqa: E731
    terms = _Terms()
    used = 0
    for pos in range(0, k - 1, 2):
        a, b = order[pos], order[pos + 1]
        terms.add(_pair_name(a, b), mult(a))
        terms.add_single(b, a, mult(b) - mult(a))
        used += mult(b)
    if k % 2:
        last = order[-1]
        partner = order[-2] if k >= 2 else None
        terms.add_single(last, partner, mult(last))
        used += mult(last)
    residual = d - used
    if residual < 0:
        raise DecompositionError(
            f"d - (m_2 + m_4 + ...) = {residual} < 0: input violates the bound used for k <= 2n"
        )
    terms.add("L", residual)
    return terms.result()


def _decompose_p3(d: int, m: list[int]) -> list[tuple[str, Fraction]]:
    k = len(m)
    if any(mi > d for mi in m):
        raise DecompositionError("precondition m_i <= d failed")
    if sum(m) > 2 * d:
        raise DecompositionError(f"precondition m_1+...+m_k <= 2d failed ({sum(m)} > {2 * d})")
    m = list(m)
    terms = _Terms()
    while True:
        order = sorted(range(1, k + 1), key=lambda i: (m[i - 1], i))
        a, b = order[-2], order[-1]
        if m[a - 1] == 0:
            terms.add_single(b, a, m[b - 1])
            terms.add("L", d - m[b - 1])
            return terms.result()
        terms.add(_pair_name(a, b), 1)
        d -= 1
        m[a - 1] -= 1
        m[b - 1] -= 1


def decomposition_to_json(terms: Sequence[tuple[str, RationalLike]]) -> list[dict]:
    return [{"gen": name, "coeff": format_rational(c)} for name, c in terms]


def decomposition_from_json(data: Sequence[dict]) -> list[tuple[str, Fraction]]:
    return [(item["gen"], as_fraction(item["coeff"])) for item in data]
