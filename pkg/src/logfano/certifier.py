"""Boundary divisors, discrepancy ledgers and log Fano certificates.

A certificate combines two exact intervals in epsilon: where -(K + eps D) is
ample (pairings with the Mori generators) and where (X, eps D) is klt or lc
(log-discrepancies k_coeff - eps * d_mult of a fixed log resolution).  The
ledgers are tabulated data; ``audit_ledger`` recomputes each multiplicity by
the join containment rule and by an explicit vanishing-order computation.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .lattice import DivisorClass, anticanonical
from .mori import EpsilonInterval, PairingEvidence, mori_valid, pairing_evidence, solve_linear
from .polynomial import ProductForm
from .rational import RationalLike, as_fraction, format_rational
from .secant import (
    DEFAULT_SEED,
    JoinLabel,
    cremona_form,
    default_anchors,
    hyperplane_configuration_points,
    hyperplane_product_form,
    hyperplane_through,
    hypersurface_multiplicity,
    join_hypersurface_form,
    nu,
    random_direction,
    sample_join_point,
    span_point,
    vanishing_order,
)


class Theorem(str, enum.Enum):
    CREMONA = "cremona"
    HYPERPLANES = "hyperplanes"
    ODD = "odd"
    EVEN = "even"
    P3_K4 = "p3-k4"
    P3_K5 = "p3-k5"
    P3_K6 = "p3-k6"
    P3_K7 = "p3-k7"
    HASSETT_A1 = "hassett-a1"
    HASSETT_A12 = "hassett-a12"


HASSETT = (Theorem.HASSETT_A1, Theorem.HASSETT_A12)
UNQUANTIFIED = "unquantified by source"


@dataclass(frozen=True)
class GeneralHyperplane:
    """A general hyperplane through the listed points (fewer than n of them)."""

    points: tuple[int, ...]
    n: int

    def __str__(self) -> str:
        return "H_{" + ",".join(map(str, self.points)) + "}"


@dataclass(frozen=True)
class LedgerEntry:
    center: str
    count: int
    k_coeff: int
    d_mult: Fraction
    centers: tuple = ()  # JoinLabels or tuples of point indices, when known

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_mult", as_fraction(self.d_mult))
        if self.count < 1 or self.k_coeff < 0 or self.d_mult < 0:
            raise ValueError(f"malformed ledger entry {self.center}")
        if self.centers and len(self.centers) != self.count:
            raise ValueError(f"{self.center}: {len(self.centers)} centers listed for count {self.count}")

    def discrepancy(self, eps: RationalLike) -> Fraction:
        return self.k_coeff - as_fraction(eps) * self.d_mult


@dataclass(frozen=True)
class CertConfig:
    theorem: Theorem
    n: int
    divisor: DivisorClass
    ledger: tuple[LedgerEntry, ...] | None
    target: str  # "klt" | "lc" | "ample_only"
    max_coefficient: Fraction = Fraction(1)
    boundary: tuple = ()

    @property
    def k(self) -> int:
        return self.divisor.k

    @property
    def space(self) -> tuple[int, int]:
        return self.divisor.n, self.divisor.k


@dataclass(frozen=True)
class Certificate:
    config: CertConfig
    ample: EpsilonInterval
    singular: EpsilonInterval | None
    joint: EpsilonInterval
    verdict: bool
    witness: Fraction | None
    pairings: tuple[PairingEvidence, ...]
    note: str | None = None

    def to_json(self) -> dict:
        cfg = self.config
        eps = self.witness
        ledger = []
        for e in cfg.ledger or ():
            row = {
                "center": e.center,
                "count": e.count,
                "k_coeff": e.k_coeff,
                "d_mult": format_rational(e.d_mult),
            }
            if eps is not None:
                row["discrepancy_at"] = {"eps": format_rational(eps), "value": format_rational(e.discrepancy(eps))}
            ledger.append(row)
        out = {
            "theorem": cfg.theorem.value,
            "n": cfg.n,
            "divisor": cfg.divisor.to_json(),
            "ample": self.ample.to_json(),
            "singular": None if self.singular is None else self.singular.to_json(),
            "joint": self.joint.to_json(),
            "verdict": self.verdict,
            "target": cfg.target,
            "witness": None if eps is None else format_rational(eps),
            "ledger": ledger,
        }
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        """Rebuild from ``to_json`` output; configuration and pairings are regenerated."""
        cfg = build_config(data["theorem"], int(data["n"]))
        if DivisorClass.from_json(data["divisor"]) != cfg.divisor:
            raise ValueError("divisor does not match the built-in configuration")
        singular = data["singular"]
        witness = data.get("witness")
        return cls(
            config=cfg,
            ample=EpsilonInterval.from_json(data["ample"]),
            singular=None if singular is None else EpsilonInterval.from_json(singular),
            joint=EpsilonInterval.from_json(data["joint"]),
            verdict=bool(data["verdict"]),
            witness=None if witness is None else as_fraction(witness),
            pairings=pairing_evidence(*_pairing_setup(cfg)),
            note=data.get("note"),
        )


# ---------------------------------------------------------------------------
# configurations

def _uniform(n: int, k: int, h: RationalLike, e: RationalLike) -> DivisorClass:
    return DivisorClass.uniform(n, k, as_fraction(h), -as_fraction(e))


def _plane_class(n: int, k: int, points: Sequence[int]) -> DivisorClass:
    return DivisorClass(n, k, Fraction(1), tuple(Fraction(-1 if i in points else 0) for i in range(1, k + 1)))


def _span_ledger(n: int, npoints: int, d_of_h) -> tuple[LedgerEntry, ...]:
    entries = []
    for h in range(1, n - 1):
        strata = tuple(combinations(range(1, npoints + 1), h + 1))
        entries.append(LedgerEntry(f"H^{h}", comb(npoints, h + 1), n - h - 1, d_of_h(h), strata))
    return tuple(entries)


def _labels(n: int, sets: Sequence[Sequence[int]], d: int) -> tuple[JoinLabel, ...]:
    return tuple(JoinLabel.with_dim(n, s, d) for s in sets)


def _odd(n: int) -> CertConfig:
    h = (n - 1) // 2
    trio = [1, 2, 3]
    pairs = list(combinations(trio, 2))
    entries = [
        LedgerEntry(f"sec_{k}", 1, n - 2 * k, 3 * (h - k + 1), (JoinLabel.of(n, [], k),))
        for k in range(1, h + 1)
    ]
    for k in range(1, h):
        entries.append(LedgerEntry(f"Y_ij^{2 * k - 1}", 3, n - 2 * k, 3 * (h - k) + 2, _labels(n, pairs, 2 * k - 1)))
        entries.append(LedgerEntry(f"Y_i^{2 * k}", 3, n - 2 * k - 1, 3 * h - 3 * k + 1, _labels(n, [[i] for i in trio], 2 * k)))
        entries.append(LedgerEntry(f"Y_123^{2 * k}", 1, n - 2 * k - 1, 3 * (h - k), _labels(n, [trio], 2 * k)))
    boundary = tuple(JoinLabel.with_dim(n, [i], n - 1) for i in trio) + (
        JoinLabel.with_dim(n, range(4, n + 4), n - 1),
    )
    return CertConfig(Theorem.ODD, n, _uniform(n, n + 3, 3 * h + 4, 3 * h + 1), tuple(entries), "klt", boundary=boundary)


def _even(n: int) -> CertConfig:
    h = n // 2
    four = [1, 2, 3, 4]
    entries = [
        LedgerEntry(f"sec_{k}", 1, n - 2 * k, 3 * h - 3 * k + 1, (JoinLabel.of(n, [], k),))
        for k in range(1, h)
    ]
    for k in range(1, h):
        pairs = list(combinations(four, 2)) if k <= h - 2 else [(1, 2), (3, 4)]
        entries.append(LedgerEntry(f"Y_ij^{2 * k - 1}", len(pairs), n - 2 * k, 3 * h - 3 * k, _labels(n, pairs, 2 * k - 1)))
    for k in range(1, h - 1):
        entries.append(LedgerEntry(f"Y_i^{2 * k}", 4, n - 2 * k - 1, 3 * h - 3 * k - 1, _labels(n, [[i] for i in four], 2 * k)))
        # tabulated value; the containment rule and the oracle both give 3h-3k-2 (see audit_ledger)
        entries.append(
            LedgerEntry(f"Y_ijr^{2 * k}", 4, n - 2 * k - 1, 3 * h - 3 * k - 3, _labels(n, list(combinations(four, 3)), 2 * k))
        )
    for k in range(2, h - 1):
        entries.append(LedgerEntry(f"Y_1234^{2 * k - 1}", 1, n - 2 * k, 3 * h - 3 * k - 1, _labels(n, [four], 2 * k - 1)))
    boundary = (
        JoinLabel.with_dim(n, [1, 2], n - 1),
        JoinLabel.with_dim(n, [3, 4], n - 1),
        JoinLabel.of(n, [], h),
        GeneralHyperplane(tuple(range(5, n + 4)), n),
    )
    return CertConfig(Theorem.EVEN, n, _uniform(n, n + 3, 3 * h + 2, 3 * h - 1), tuple(entries), "klt", boundary=boundary)


def _hassett_a1(n: int) -> CertConfig:
    dim, k = n - 3, n - 1
    alpha, beta = Fraction(2, n - 2), Fraction(2, 3)
    delta = DivisorClass.zero(dim, k)
    for pts in combinations(range(1, k + 1), dim):
        delta = delta + _plane_class(dim, k, pts).scale(alpha)
    for i in range(1, k + 1):
        delta = delta + DivisorClass.exceptional(dim, k, i).scale(beta)
    entries = tuple(
        LedgerEntry(f"E^{h}", comb(n - 1, h + 1), n - h - 4, alpha * comb(n - h - 2, 2)) for h in range(1, n - 4)
    )
    return CertConfig(Theorem.HASSETT_A1, n, delta, entries, "lc", max(alpha, beta))


def _hassett_a12(n: int) -> CertConfig:
    dim, k = n - 3, n - 2
    alpha, beta = Fraction(2, n - 2), Fraction(2, 3)
    delta = DivisorClass.zero(dim, k)
    # hyperplanes through n-3 of p_1..p_{n-2}, and through n-4 of them plus p_{n-1}
    for pts in combinations(range(1, k + 1), dim):
        delta = delta + _plane_class(dim, k, pts).scale(alpha)
    for pts in combinations(range(1, k + 1), dim - 1):
        delta = delta + _plane_class(dim, k, pts).scale(alpha)
    for i in range(1, k + 1):
        delta = delta + DivisorClass.exceptional(dim, k, i).scale(beta)
    entries = [LedgerEntry(f"E_{n - 1}", 1, n - 4, alpha * comb(n - 2, 2))]
    for h in range(1, n - 4):
        entries.append(LedgerEntry(f"E^{h}", comb(n - 2, h + 1), n - h - 4, alpha * (n - h - 3 + comb(n - h - 3, 2))))
        entries.append(LedgerEntry(f"Ebar^{h}", comb(n - 2, h), n - h - 4, alpha * comb(n - h - 2, 2)))
    return CertConfig(Theorem.HASSETT_A12, n, delta, tuple(entries), "lc", max(alpha, beta))


_P3 = {
    Theorem.P3_K4: (4, 3, 2),
    Theorem.P3_K5: (5, 10, 6),
    Theorem.P3_K6: (6, 7, 4),
    Theorem.P3_K7: (7, 105, 55),
}


def build_config(theorem: Theorem | str, n: int) -> CertConfig:
    theorem = Theorem(theorem)
    if theorem in (Theorem.CREMONA, Theorem.HYPERPLANES):
        if n < 2:
            raise ValueError(f"{theorem.value} needs n >= 2")
        if theorem is Theorem.CREMONA:
            d = _uniform(n, n + 1, n, n - 1)
            ledger = _span_ledger(n, n + 1, lambda h: n - h - 1)
        else:
            d = _uniform(n, n + 2, comb(n + 2, 2), comb(n + 1, 2))
            ledger = _span_ledger(n, n + 2, lambda h: comb(n - h + 1, 2))
        return CertConfig(theorem, n, d, ledger, "klt")
    if theorem is Theorem.ODD:
        if n < 5 or n % 2 == 0:
            raise ValueError(f"odd needs n = 2h+1 >= 5, got {n}")
        return _odd(n)
    if theorem is Theorem.EVEN:
        if n < 4 or n % 2:
            raise ValueError(f"even needs n = 2h >= 4, got {n}")
        return _even(n)
    if theorem in _P3:
        if n != 3:
            raise ValueError(f"{theorem.value} lives on P^3 (n = 3), got {n}")
        k, h, e = _P3[theorem]
        d = _uniform(3, k, h, e)
        if theorem is Theorem.P3_K4:
            # the nodal cubic's strict transform is smooth: nothing to resolve
            return CertConfig(theorem, 3, d, (), "klt")
        return CertConfig(theorem, 3, d, None, "ample_only")
    if n < 5:
        raise ValueError(f"{theorem.value} needs n >= 5 (moduli of n points, dimension n-3 >= 2)")
    return _hassett_a1(n) if theorem is Theorem.HASSETT_A1 else _hassett_a12(n)


# ---------------------------------------------------------------------------
# intervals

def discrepancies(ledger: Sequence[LedgerEntry], eps: RationalLike) -> list[Fraction]:
    return [e.discrepancy(eps) for e in ledger]


def singularity_interval(
    ledger: Sequence[LedgerEntry], target: str = "klt", max_coefficient: RationalLike = 1
) -> EpsilonInterval:
    if target not in ("klt", "lc"):
        raise ValueError(f"unknown singularity target {target!r}")
    strict = target == "klt"
    cons = [(Fraction(0), Fraction(1), False)]  # eps >= 0
    cons += [(e.k_coeff + 1, -e.d_mult, strict) for e in ledger]
    cons.append((Fraction(1), -as_fraction(max_coefficient), strict))
    return solve_linear(cons)


def _pairing_setup(config: CertConfig) -> tuple[DivisorClass, DivisorClass]:
    """(A, D) such that the positivity in question is ampleness of A - eps*D."""
    n, k = config.space
    if config.theorem in HASSETT:
        # K + eps*Delta, judged at the fixed coefficients eps = 1
        return anticanonical(n, k).scale(-1), config.divisor.scale(-1)
    return anticanonical(n, k), config.divisor


def certify(config: CertConfig) -> Certificate:
    n, k = config.space
    if not mori_valid(n, k):
        raise ValueError(f"cannot certify on X^{n}_{k}: Mori cone generators unproven there")
    hassett = config.theorem in HASSETT
    evidence = pairing_evidence(*_pairing_setup(config))
    ample = solve_linear((ev.base, -ev.slope, True) for ev in evidence)
    note = None
    if config.target == "ample_only":
        singular = None
        joint = ample
        note = UNQUANTIFIED
    else:
        singular = singularity_interval(config.ledger or (), config.target, config.max_coefficient)
        joint = ample & singular
    if hassett:
        witness = Fraction(1)
        verdict = witness in joint
    else:
        witness = joint.witness()
        verdict = not joint.is_empty
    return Certificate(config, ample, singular, joint, verdict, witness, evidence, note)


# ---------------------------------------------------------------------------
# classification

def classify_log_fano(n: int, k: int) -> bool:
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    if n == 2:
        return k <= 8
    if n == 3:
        return k <= 7
    if n == 4:
        return k <= 8
    return k <= n + 3


def log_fano_bound(n: int) -> int:
    """Largest k with X^n_k log Fano."""
    if n < 2:
        raise ValueError("need n >= 2")
    return {2: 8, 3: 7, 4: 8}.get(n, n + 3)


def classification_table(n_max: int, k_extra: int = 5) -> list[tuple[int, list[int]]]:
    """For each n, the k in 0..n+k_extra that are log Fano."""
    return [(n, [k for k in range(n + k_extra + 1) if classify_log_fano(n, k)]) for n in range(2, n_max + 1)]


def covering_config(n: int, k: int) -> tuple[Theorem, int] | None:
    """A built-in family on X^n_{k'} with k' >= k (drop exceptional classes to restrict)."""
    if n == 3:
        for theorem, (kk, _, _) in sorted(_P3.items(), key=lambda kv: kv[1][0]):
            if k <= kk:
                return theorem, 3
        return None
    if k <= n + 1:
        return Theorem.CREMONA, n
    if k == n + 2:
        return Theorem.HYPERPLANES, n
    if k == n + 3 and n >= 4:
        return (Theorem.EVEN if n % 2 == 0 else Theorem.ODD), n
    return None


def restrict_divisor(d: DivisorClass, k: int) -> DivisorClass:
    if not 0 <= k <= d.k:
        raise ValueError("can only drop exceptional classes")
    return DivisorClass(d.n, k, d.h_coeff, d.e_coeffs[:k])


# ---------------------------------------------------------------------------
# ledger audits

@dataclass(frozen=True)
class AuditRow:
    center: str
    label: object
    tabulated: Fraction
    rule: int | None
    oracle: int | float | None

    @property
    def agrees(self) -> bool:
        return all(x is None or x == self.tabulated for x in (self.rule, self.oracle))


def _rule_multiplicity(component, center: JoinLabel) -> int:
    if isinstance(component, GeneralHyperplane):
        return int(center.k == 0 and set(center.points) <= set(component.points))
    return hypersurface_multiplicity(component, center)


def _boundary_form(config: CertConfig, rng: random.Random):
    n = config.n
    if config.theorem is Theorem.CREMONA:
        return cremona_form(n)
    if config.theorem is Theorem.HYPERPLANES:
        return hyperplane_product_form(n)
    anchors = default_anchors(n)
    factors = []
    for comp in config.boundary:
        if isinstance(comp, GeneralHyperplane):
            factors.append(hyperplane_through([nu(anchors[i - 1], n) for i in comp.points], rng))
        else:
            factors.append(join_hypersurface_form(comp, anchors))
    return ProductForm(tuple(factors))


def _center_point(config: CertConfig, center, rng: random.Random):
    n = config.n
    if isinstance(center, JoinLabel):
        return sample_join_point(center, seed=rng)
    if config.theorem is Theorem.CREMONA:
        pts = [tuple(Fraction(int(i == j)) for j in range(n + 1)) for i in range(n + 1)]
    else:
        pts = hyperplane_configuration_points(n)
    return span_point([pts[i - 1] for i in center], rng)


def audit_ledger(
    config: CertConfig, *, oracle: bool = True, seed: int = DEFAULT_SEED, all_centers: bool = False, trials: int = 3
) -> list[AuditRow]:
    """Recompute every d_mult; ``rule`` needs join centers, ``oracle`` an explicit equation.

    The oracle takes the least order over ``trials`` sampled points and lines:
    a special sample can only raise the order, never lower it.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if config.theorem not in (Theorem.CREMONA, Theorem.HYPERPLANES, Theorem.ODD, Theorem.EVEN):
        raise ValueError(f"no explicit boundary equation for {config.theorem.value}")
    rng = random.Random(seed)
    form = _boundary_form(config, rng) if oracle else None
    rows = []
    for entry in config.ledger or ():
        for center in entry.centers if all_centers else entry.centers[:1]:
            rule = None
            if isinstance(center, JoinLabel):
                rule = sum(_rule_multiplicity(c, center) for c in config.boundary)
            found = None
            if form is not None:
                found = min(
                    vanishing_order(form, _center_point(config, center, rng), random_direction(config.n, rng),
                                    max_order=4 * config.n)
                    for _ in range(trials)
                )
            rows.append(AuditRow(entry.center, center, entry.d_mult, rule, found))
    return rows


def ledger_with(config: CertConfig, overrides: dict[str, RationalLike]) -> tuple[LedgerEntry, ...]:
    """The ledger with some d_mult values replaced (by center name)."""
    out = []
    for e in config.ledger or ():
        if e.center in overrides:
            e = LedgerEntry(e.center, e.count, e.k_coeff, overrides[e.center], e.centers)
        out.append(e)
    return tuple(out)
