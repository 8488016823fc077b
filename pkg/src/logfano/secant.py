"""Secant varieties and joins of the rational normal curve nu(t) = (1, t, ..., t^n).

Y^d_I is the cone with vertex span(p_i : i in I) over sec_k of the curve
projected from those points, with d = 2k - 1 + |I|.  Combinatorial facts
(dimension, degree, singular locus, multiplicities, intersections) are given
in closed form; ``hankel_rank``, ``join_rank`` and ``vanishing_order`` give
independent exact checks on sampled points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .linalg import nullspace, rank
from .polynomial import (
    DeterminantalForm,
    Polynomial,
    ProductForm,
    hankel_matrix_forms,
    lowest_order,
)
from .rational import RationalLike, as_fraction, format_rational
from .weightspace import SubsetIndex

DEFAULT_SEED = 20240917


class NotAUnionOfJoins(ValueError):
    """The intersection has a component that is not itself a join over the points."""


@dataclass(frozen=True, order=True)
class JoinLabel:
    subset: SubsetIndex
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.subset.size != self.n + 3:
            raise ValueError(f"vertex set must index the n+3 = {self.n + 3} points")
        m = len(self.subset)
        if self.k < 0 or 2 * self.k > self.n - m:
            raise ValueError(f"secant index {self.k} outside 0..(n-|I|)/2 = {(self.n - m) // 2}")
        if self.k == 0 and m == 0:
            raise ValueError("Y with I empty and k = 0 is empty")

    @classmethod
    def of(cls, n: int, points: Iterable[int], k: int) -> "JoinLabel":
        return cls(SubsetIndex.of(n + 3, points), k, n)

    @classmethod
    def with_dim(cls, n: int, points: Iterable[int], d: int) -> "JoinLabel":
        subset = SubsetIndex.of(n + 3, points)
        twice = d + 1 - len(subset)
        if twice % 2:
            raise ValueError(f"no join Y^{d} over {len(subset)} vertex points (parity)")
        return cls(subset, twice // 2, n)

    @property
    def points(self) -> tuple[int, ...]:
        return self.subset.elements

    @property
    def dim(self) -> int:
        return 2 * self.k - 1 + len(self.subset)

    @property
    def degree(self) -> int:
        return comb(self.n - len(self.subset) - self.k + 1, self.k)

    @property
    def singular_locus(self) -> "JoinLabel | None":
        # only the curve itself and the linear spans are smooth
        if self.k == 0 or (self.k == 1 and not self.points):
            return None
        return JoinLabel(self.subset, self.k - 1, self.n)

    @property
    def is_hypersurface(self) -> bool:
        return self.dim == self.n - 1

    def __str__(self) -> str:
        if not self.points:
            return f"sec_{self.k}"
        return "Y_{" + ",".join(map(str, self.points)) + "}^" + str(self.dim)


@dataclass(frozen=True)
class JoinProfile:
    dim: int
    degree: int
    singular_locus: JoinLabel | None


def join_profile(y: JoinLabel) -> JoinProfile:
    return JoinProfile(y.dim, y.degree, y.singular_locus)


def join_multiplicity(bigger: JoinLabel, smaller: JoinLabel) -> int:
    if bigger.subset != smaller.subset or bigger.n != smaller.n:
        raise ValueError("joins over different vertex sets")
    if (bigger.n - len(bigger.subset)) % 2:
        raise ValueError("n - |I| must be even")
    d1, d2 = bigger.dim, smaller.dim
    if d1 <= d2:
        raise ValueError(f"need d1 > d2, got {d1} <= {d2}")
    return (d1 - d2) // 2 + 1


def contains(big: JoinLabel, small: JoinLabel) -> bool:
    """Y_J^{k_J} lies in Y_I^{k_I} iff k_J + |J \\ I| <= k_I.

    Each vertex point of J outside I must be absorbed as a point of the curve.
    """
    return small.k + len(small.subset - big.subset) <= big.k


def hypersurface_multiplicity(divisor: JoinLabel, center: JoinLabel) -> int:
    """Multiplicity of the hypersurface join ``divisor`` at a general point of ``center``."""
    if not divisor.is_hypersurface:
        raise ValueError(f"{divisor} is not a hypersurface")
    excess = center.k + len(center.subset - divisor.subset)
    return divisor.k - excess + 1 if excess <= divisor.k else 0


def _maximal(labels: Iterable[JoinLabel]) -> list[JoinLabel]:
    labels = sorted(set(labels), key=lambda y: (-y.dim, y.points, y.k))
    keep: list[JoinLabel] = []
    for y in labels:
        if not any(contains(z, y) for z in keep):
            keep.append(y)
    return sorted(keep, key=lambda y: (y.dim, len(y.points), y.points))


def intersect(a: JoinLabel, b: JoinLabel) -> list[JoinLabel]:
    """Irreducible components of Y_a cap Y_b as the maximal joins inside both.

    Only vertex sets inside I_a | I_b are considered, so this describes the
    set-theoretic intersection of two joins under the general position
    hypothesis and nothing about multiplicities.  Raises ``NotAUnionOfJoins``
    when the candidates cannot account for the expected dimension.
    """
    if a.n != b.n:
        raise ValueError("joins in different ambient spaces")
    union = a.subset | b.subset
    candidates = []
    for r in range(len(union) + 1):
        for js in combinations(union.elements, r):
            j = SubsetIndex.of(a.n + 3, js)
            kj = min(a.k - len(j - a.subset), b.k - len(j - b.subset))
            if kj < 0 or (kj == 0 and not js) or 2 * kj > a.n - len(js):
                continue
            candidates.append(JoinLabel(j, kj, a.n))
    comps = _maximal(candidates)
    floor = a.dim + b.dim - a.n
    for c in comps:
        if c.dim < floor:
            raise NotAUnionOfJoins(f"{a} cap {b}: component {c} below the expected dimension {floor}")
    return comps


def intersect_same_dim(i1: SubsetIndex, i2: SubsetIndex, d: int, n: int, *, allow_overlap: bool = False) -> list[JoinLabel]:
    """Y^d_{I1} cap Y^d_{I2} as the union of Y^{d-s}_J with d(I1,J) = d(I2,J) = s.

    With ``allow_overlap`` common vertex points are first projected away and
    then put back as vertex points of every component.
    """
    JoinLabel.with_dim(n, i1.elements, d)
    JoinLabel.with_dim(n, i2.elements, d)
    common = i1 & i2
    if len(common) and not allow_overlap:
        raise ValueError(f"vertex sets {i1} and {i2} must be disjoint")
    a, b = i1 - common, i2 - common
    if (len(a) + len(b)) % 2:
        raise ValueError("(|I1| + |I2|)/2 must be an integer")
    s = (len(a) + len(b)) // 2
    if d > n - s:
        raise ValueError(f"d = {d} exceeds n - s = {n - s}")
    out = []
    union = a | b
    for r in range(len(union) + 1):
        for js in combinations(union.elements, r):
            j = SubsetIndex.of(n + 3, js)
            if j.distance(a) != s or j.distance(b) != s:
                continue
            full = j | common
            twice = d - s + 1 - len(full)
            if twice < 0 or twice % 2:
                continue
            kj = twice // 2
            if (kj == 0 and not len(full)) or 2 * kj > n - len(full):
                continue
            out.append(JoinLabel(full, kj, n))
    return sorted(out, key=lambda y: (len(y.points), y.points))


def intersect_offset(i_div: SubsetIndex, i_sing: SubsetIndex, n: int) -> list[JoinLabel]:
    """Y^{n-1}_{i,j} cap Y^{n-3}_{r,s} for disjoint pairs {i,j}, {r,s}."""
    if len(i_div) != 2 or len(i_sing) != 2:
        raise ValueError("both index sets must have two elements")
    if len(i_div & i_sing):
        raise ValueError(f"{i_div} and {i_sing} overlap")
    if n % 2 or n < 6:
        raise ValueError("needs n even and at least 6")
    i, j = i_div.elements
    r, s = i_sing.elements
    out = [
        JoinLabel.with_dim(n, [r], n - 4),
        JoinLabel.with_dim(n, [s], n - 4),
        JoinLabel.with_dim(n, [i, r, s], n - 4),
        JoinLabel.with_dim(n, [j, r, s], n - 4),
    ]
    return sorted(out, key=lambda y: (len(y.points), y.points))


# ---------------------------------------------------------------------------
# point-level oracles

@dataclass(frozen=True)
class RationalPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(as_fraction(c) for c in self.coords)
        if not any(coords):
            raise ValueError("projective point with all coordinates zero")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "RationalPoint":
        return cls(tuple(as_fraction(c) for c in data))


def nu(t: RationalLike, n: int) -> tuple[Fraction, ...]:
    t = as_fraction(t)
    return tuple(t**i for i in range(n + 1))


def default_anchors(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in range(1, n + 4))


def _coords(p) -> tuple[Fraction, ...]:
    return p.coords if isinstance(p, RationalPoint) else tuple(as_fraction(x) for x in p)


def catalecticant(p, rows: int) -> list[list[Fraction]]:
    x = _coords(p)
    n = len(x) - 1
    return [[x[i + j] for j in range(n + 2 - rows)] for i in range(rows)]


def hankel_rank(p, n: int | None = None) -> int:
    x = _coords(p)
    if n is None:
        n = len(x) - 1
    if n % 2:
        raise ValueError("the square Hankel matrix needs n even")
    if len(x) != n + 1:
        raise ValueError(f"expected {n + 1} coordinates")
    return rank(catalecticant(x, n // 2 + 1))


def _vertex_polynomial(params: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of prod (T - t_i), lowest degree first."""
    g = [Fraction(1)]
    for t in params:
        g = [Fraction(0)] + g
        for i in range(len(g) - 1):
            g[i] -= t * g[i + 1]
    return g


def project_from(p, params: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image under the projection from nu(t_i) for the given parameters.

    x'_a = sum_b g_b x_{a+b} with g = prod (T - t_i); on the curve this sends
    nu(t) to g(t) * nu'(t), so the image is again a rational normal curve.
    """
    x = _coords(p)
    g = _vertex_polynomial(params)
    m = len(x) - len(params)
    return tuple(sum((g[b] * x[a + b] for b in range(len(g))), Fraction(0)) for a in range(m))


def join_rank(p, points: Iterable[int], anchors: Sequence[RationalLike] | None = None) -> int:
    """Least k with p in the join over the points (after projecting them away)."""
    x = _coords(p)
    n = len(x) - 1
    anchors = default_anchors(n) if anchors is None else tuple(as_fraction(a) for a in anchors)
    y = project_from(x, [anchors[i - 1] for i in points])
    big_n = len(y) - 1
    if not any(y):
        return 0
    return rank(catalecticant(y, big_n // 2 + 1))


def _random_rational(rng: random.Random, lo: int = -9, hi: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def _nonzero_rational(rng: random.Random) -> Fraction:
    # wide range: small ranges make coincidences like x_i = x_j likely
    while True:
        c = _random_rational(rng, -999, 999, 97)
        if c:
            return c


def sample_join_point(
    y: JoinLabel,
    anchors: Sequence[RationalLike] | None = None,
    seed: int | random.Random = DEFAULT_SEED,
    *,
    max_retries: int = 50,
) -> RationalPoint:
    """Random rational combination of the vertex points and k fresh curve points."""
    n = y.n
    anchors = default_anchors(n) if anchors is None else tuple(as_fraction(a) for a in anchors)
    if len(anchors) != n + 3 or len(set(anchors)) != n + 3:
        raise ValueError("anchors must be n+3 distinct parameters")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    vertices = [anchors[i - 1] for i in y.points]
    for _ in range(max_retries):
        fresh = [_random_rational(rng, -20, 20, 5) for _ in range(y.k)]
        params = vertices + fresh
        if len(set(params)) != len(params) or set(fresh) & set(anchors):
            continue
        coeffs = [_nonzero_rational(rng) for _ in params]
        coords = [sum((c * t**i for c, t in zip(coeffs, params)), Fraction(0)) for i in range(n + 1)]
        if y.k == 1 and not vertices:
            # a curve point itself
            coords = list(nu(fresh[0], n))
        if any(coords):
            return RationalPoint(tuple(coords))
    raise RuntimeError("no nondegenerate sample found")


def random_direction(n: int, seed: int | random.Random = DEFAULT_SEED) -> RationalPoint:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    # wide range so the line avoids special hyperplanes such as x_i = x_j or x_i = 0
    while True:
        v = tuple(_random_rational(rng, -999, 999, 97) for _ in range(n + 1))
        if len(set(v)) == len(v) and all(v):
            return RationalPoint(v)


def vanishing_order(f, p, v, max_order: int | None = None) -> int | float:
    """Order in t of f(p + t v); ``max_order`` caps the answer (inf if uncapped and zero)."""
    pc, vc = _coords(p), _coords(v)
    if len(pc) != f.nvars or len(vc) != f.nvars:
        raise ValueError("point/direction size does not match the form")
    if not any(vc) or rank([pc, vc]) < 2:
        raise ValueError("direction is zero or proportional to the base point")
    if isinstance(f, Polynomial) and not f.is_homogeneous():
        raise ValueError("form must be homogeneous")
    order = lowest_order(f.restrict(pc, vc, max_order))
    if max_order is not None:
        return min(order, max_order)
    return order


# ---------------------------------------------------------------------------
# explicit equations

def hyperplane_through(points: Sequence[Sequence[RationalLike]], rng: random.Random | None = None) -> Polynomial:
    """A linear form vanishing on the given points (random within the pencil if not unique)."""
    basis = nullspace([list(map(as_fraction, p)) for p in points], ncols=len(points[0]))
    if not basis:
        raise ValueError("points span the whole space")
    if len(basis) == 1 or rng is None:
        normal = basis[0]
    else:
        normal = [Fraction(0)] * len(basis[0])
        for vec in basis:
            c = _nonzero_rational(rng)
            normal = [a + c * b for a, b in zip(normal, vec)]
    return Polynomial.linear(normal)


def join_hypersurface_form(y: JoinLabel, anchors: Sequence[RationalLike] | None = None):
    """Defining equation of a hypersurface join: a projected Hankel determinant."""
    if not y.is_hypersurface:
        raise ValueError(f"{y} is not a hypersurface")
    n = y.n
    anchors = default_anchors(n) if anchors is None else tuple(as_fraction(a) for a in anchors)
    if y.k == 0:
        return hyperplane_through([nu(anchors[i - 1], n) for i in y.points])
    g = _vertex_polynomial([anchors[i - 1] for i in y.points])
    big_n = n - len(y.points)
    rows = big_n // 2 + 1
    base = hankel_matrix_forms(big_n, rows)

    def lift(form: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * (n + 1)
        for a, c in enumerate(form):
            if c:
                for b, gb in enumerate(g):
                    out[a + b] += c * gb
        return out

    return DeterminantalForm.of(n + 1, [[lift(entry) for entry in row] for row in base])


def cremona_form(n: int) -> Polynomial:
    """sum_i prod_{j != i} x_j: passes through the coordinate points e_0..e_n."""
    nv = n + 1
    total = Polynomial.from_dict(nv, {})
    for i in range(nv):
        total = total + Polynomial.from_dict(nv, {tuple(int(j != i) for j in range(nv)): 1})
    return total


def coordinate_stratum_point(n: int, indices: Sequence[int], seed: int | random.Random = DEFAULT_SEED) -> RationalPoint:
    """General point of the span of e_i for i in ``indices`` (0-based)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    coords = [Fraction(0)] * (n + 1)
    for i in indices:
        coords[i] = _nonzero_rational(rng)
    return RationalPoint(tuple(coords))


def hyperplane_configuration_points(n: int) -> list[tuple[Fraction, ...]]:
    """e_0, ..., e_n and (1, ..., 1): n+2 points in general position."""
    pts = [tuple(Fraction(int(i == j)) for j in range(n + 1)) for i in range(n + 1)]
    pts.append(tuple(Fraction(1) for _ in range(n + 1)))
    return pts


def hyperplane_product_form(n: int) -> ProductForm:
    """Product of the C(n+2, 2) hyperplanes spanned by n of the n+2 points."""
    pts = hyperplane_configuration_points(n)
    factors = tuple(hyperplane_through([pts[i] for i in chosen]) for chosen in combinations(range(n + 2), n))
    return ProductForm(factors)


def span_point(points: Sequence[Sequence[Fraction]], seed: int | random.Random = DEFAULT_SEED) -> RationalPoint:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        coeffs = [_nonzero_rational(rng) for _ in points]
        if len(set(coeffs)) != len(coeffs):
            # equal weights put the sample on extra special hyperplanes such as x_i = x_j
            continue
        coords = tuple(sum((c * p[i] for c, p in zip(coeffs, points)), Fraction(0)) for i in range(len(points[0])))
        if any(coords):
            return RationalPoint(coords)

