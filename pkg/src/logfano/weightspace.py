"""Weight-hypercube picture of divisors on the blow-up of P^n at n+3 points.

A class yH + sum x_i E_i is sent to the point with coordinates
alpha_i = (y + x_i) / ((n+1)y + sum x).  Linear functionals H_I on that
hypercube cut out the effective, movable and nef polytopes and the wall
arrangement whose cells are the Mori chambers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .lattice import DivisorClass
from .rational import as_fraction, format_rational

MAX_N = 12


@dataclass(frozen=True, order=True)
class SubsetIndex:
    """Subset of {1, ..., size} stored as a bitmask (bit i-1 marks element i)."""

    size: int
    bits: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("negative ambient size")
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError(f"bitmask {self.bits:#x} does not fit in {self.size} elements")

    @classmethod
    def of(cls, size: int, elements: Iterable[int]) -> "SubsetIndex":
        bits = 0
        for e in elements:
            if not 1 <= e <= size:
                raise ValueError(f"element {e} outside 1..{size}")
            bits |= 1 << (e - 1)
        return cls(size, bits)

    @classmethod
    def empty(cls, size: int) -> "SubsetIndex":
        return cls(size, 0)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.size) if self.bits >> i & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.size and bool(self.bits >> (e - 1) & 1)

    def complement(self) -> "SubsetIndex":
        return SubsetIndex(self.size, ~self.bits & ((1 << self.size) - 1))

    def _check(self, other: "SubsetIndex") -> None:
        if self.size != other.size:
            raise ValueError("subsets of different ambient sets")

    def __or__(self, other: "SubsetIndex") -> "SubsetIndex":
        self._check(other)
        return SubsetIndex(self.size, self.bits | other.bits)

    def __and__(self, other: "SubsetIndex") -> "SubsetIndex":
        self._check(other)
        return SubsetIndex(self.size, self.bits & other.bits)

    def __sub__(self, other: "SubsetIndex") -> "SubsetIndex":
        self._check(other)
        return SubsetIndex(self.size, self.bits & ~other.bits)

    def issubset(self, other: "SubsetIndex") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def distance(self, other: "SubsetIndex") -> int:
        """Size of the symmetric difference."""
        self._check(other)
        return bin(self.bits ^ other.bits).count("1")

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def all_subsets(size: int) -> Iterator[SubsetIndex]:
    for bits in range(1 << size):
        yield SubsetIndex(size, bits)


@dataclass(frozen=True)
class WeightPoint:
    alphas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        alphas = tuple(as_fraction(a) for a in self.alphas)
        if len(alphas) < 5:
            raise ValueError("a weight point needs n+3 >= 5 coordinates")
        object.__setattr__(self, "alphas", alphas)

    @property
    def n(self) -> int:
        return len(self.alphas) - 3

    @classmethod
    def center(cls, n: int) -> "WeightPoint":
        return cls((Fraction(1, 2),) * (n + 3))

    @classmethod
    def vertex(cls, subset: SubsetIndex) -> "WeightPoint":
        """The hypercube vertex xi_J: 1 on J, 0 elsewhere."""
        return cls(tuple(Fraction(1 if i in subset else 0) for i in range(1, subset.size + 1)))

    def to_json(self) -> list[str]:
        return [format_rational(a) for a in self.alphas]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "WeightPoint":
        return cls(tuple(as_fraction(a) for a in data))

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(a) for a in self.alphas) + ")"


class ProjectionCenterError(ZeroDivisionError):
    """The class lies on the hyperplane (n+1)y + sum x = 0 and has no image."""


def phi(d: DivisorClass) -> WeightPoint:
    n = d.n
    if d.k != n + 3:
        raise ValueError(f"phi is defined on X^{n}_{n + 3}, got k = {d.k}")
    y, xs = d.h_coeff, d.e_coeffs
    denom = (n + 1) * y + sum(xs)
    if denom == 0:
        raise ProjectionCenterError(f"{d} lies on the projection center")
    return WeightPoint(tuple((y + x) / denom for x in xs))


def e_class(subset: SubsetIndex, n: int) -> DivisorClass:
    """E_I = kH - k sum_{I} E_i - (k-1) sum_{I^c} E_i where |I^c| = 2k+1."""
    if subset.size != n + 3:
        raise ValueError(f"subset must live in 1..{n + 3}")
    rest = n + 3 - len(subset)
    if rest % 2 == 0:
        raise ValueError(f"|I^c| = {rest} must be odd")
    k = (rest - 1) // 2
    e = [Fraction(-k if i in subset else -(k - 1)) for i in range(1, n + 4)]
    return DivisorClass(n, n + 3, Fraction(k), tuple(e))


def h_functional(subset: SubsetIndex, a: WeightPoint) -> Fraction:
    if subset.size != len(a.alphas):
        raise ValueError("subset and point have different sizes")
    return sum(
        ((1 - al) if i + 1 in subset else al for i, al in enumerate(a.alphas)),
        Fraction(0),
    )


def h_table(a: WeightPoint) -> list[Fraction]:
    """H_I(a) for every bitmask I, built by adding one element at a time."""
    size = len(a.alphas)
    table = [Fraction(0)] * (1 << size)
    table[0] = sum(a.alphas, Fraction(0))
    steps = [1 - 2 * al for al in a.alphas]
    for bits in range(1, 1 << size):
        low = (bits & -bits).bit_length() - 1
        table[bits] = table[bits & (bits - 1)] + steps[low]
    return table


def _popcount_parity(bits: int) -> int:
    return bin(bits).count("1") & 1


@dataclass(frozen=True)
class Membership:
    in_delta: bool
    in_mov: bool
    in_nef: bool


def _check_size(a: WeightPoint) -> None:
    if a.n > MAX_N:
        raise ValueError(f"brute-force subset scan limited to n <= {MAX_N}")


def region_membership(a: WeightPoint) -> Membership:
    _check_size(a)
    size = len(a.alphas)
    in_box = all(0 <= al <= 1 for al in a.alphas)
    table = h_table(a)
    even_ok = all(table[b] >= 1 for b in range(1 << size) if not _popcount_parity(b))
    odd_ok = all(table[b] >= 2 for b in range(1 << size) if _popcount_parity(b))
    singles = all(table[1 << i] >= 2 for i in range(size))
    pairs = all(table[(1 << i) | (1 << j)] <= 3 for i, j in combinations(range(size), 2))
    # for n = 2 the conic through the five points is a further (-1)-curve; D.Q >= 0 iff H_empty <= 3
    conic = a.n != 2 or table[0] <= 3
    return Membership(
        in_delta=in_box and even_ok,
        in_mov=in_box and odd_ok,
        # the box is implied for n >= 3; kept explicit so n = 2 cannot leak outside
        in_nef=in_box and singles and pairs and conic,
    )


def representative(a: WeightPoint) -> DivisorClass:
    """The class with (n+1)y + sum x = 1 that maps to ``a``."""
    n = a.n
    y = (sum(a.alphas, Fraction(0)) - 1) / 2
    return DivisorClass(n, n + 3, y, tuple(al - y for al in a.alphas))


def nef_via_generators(a: WeightPoint) -> bool:
    """Nefness of ``representative(a)`` tested against R_i and L_ij directly."""
    from .mori import positivity_report

    return positivity_report(representative(a)).nef


# ---------------------------------------------------------------------------
# walls and chambers

@dataclass(frozen=True, order=True)
class WallID:
    subset: SubsetIndex
    level: int

    def __post_init__(self) -> None:
        n = self.subset.size - 3
        if not 2 <= self.level or 2 * self.level > n + 3:
            raise ValueError(f"wall level {self.level} outside 2..(n+3)/2 for n = {n}")
        if len(self.subset) % 2 == self.level % 2:
            raise ValueError(f"|I| = {len(self.subset)} and level {self.level} must have different parity")

    @property
    def n(self) -> int:
        return self.subset.size - 3


def legal_walls(n: int) -> list[WallID]:
    size = n + 3
    walls = []
    for level in range(2, (n + 3) // 2 + 1):
        for bits in range(1 << size):
            if bin(bits).count("1") % 2 != level % 2:
                walls.append(WallID(SubsetIndex(size, bits), level))
    return walls


SIGNS = ("below", "on", "above")


@dataclass(frozen=True)
class ChamberSignature:
    n: int
    signs: dict  # WallID -> "below" | "on" | "above"

    def on_walls(self) -> list[WallID]:
        return [w for w, s in self.signs.items() if s == "on"]

    @property
    def is_open_cell(self) -> bool:
        return not self.on_walls()

    def differing(self, other: "ChamberSignature") -> list[WallID]:
        return [w for w in self.signs if self.signs[w] != other.signs[w]]

    def same_chamber(self, other: "ChamberSignature") -> bool:
        return self.is_open_cell and other.is_open_cell and not self.differing(other)

    def to_json(self) -> dict:
        return {
            "walls": [
                {"I": list(w.subset.elements), "k": w.level, "sign": s}
                for w, s in sorted(self.signs.items())
            ]
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "ChamberSignature":
        signs = {}
        for item in data["walls"]:
            if item["sign"] not in SIGNS:
                raise ValueError(f"bad sign {item['sign']!r}")
            signs[WallID(SubsetIndex.of(n + 3, item["I"]), int(item["k"]))] = item["sign"]
        return cls(n, signs)


def chamber_signature(a: WeightPoint) -> ChamberSignature:
    if not region_membership(a).in_delta:
        raise ValueError(f"{a} is outside the effective polytope")
    table = h_table(a)
    signs = {}
    for w in legal_walls(a.n):
        diff = table[w.subset.bits] - w.level
        signs[w] = "below" if diff < 0 else "above" if diff > 0 else "on"
    return ChamberSignature(a.n, signs)


@dataclass(frozen=True)
class Flip:
    contracted: int
    extracted: int

    def __str__(self) -> str:
        return f"flip of a P^{self.contracted} into a P^{self.extracted}"


@dataclass(frozen=True)
class P1Bundle:
    index: int
    value: int

    def __str__(self) -> str:
        return f"P^1-bundle (alpha_{self.index} = {self.value})"


@dataclass(frozen=True)
class BlowDownToPoint:
    subset: SubsetIndex
    exceptional: DivisorClass

    def __str__(self) -> str:
        return f"blow-down of E_{self.subset.complement()} = {self.exceptional} to a smooth point"


@dataclass(frozen=True)
class BoxBoundary:
    """The Mov-boundary facet alpha_index = value (value 0 or 1)."""

    n: int
    index: int
    value: int

    def __post_init__(self) -> None:
        if self.value not in (0, 1) or not 1 <= self.index <= self.n + 3:
            raise ValueError("box boundary needs value 0 or 1 and an index in 1..n+3")


def classify_wall(w: WallID | BoxBoundary):
    if isinstance(w, BoxBoundary):
        return P1Bundle(w.index, w.value)
    if w.level >= 3:
        return Flip(w.level - 2, w.n + 1 - w.level)
    # level 2 with |I| odd: H_I = 2 bounds Mov
    ic = w.subset.complement()
    return BlowDownToPoint(w.subset, e_class(ic, w.n))
