from fractions import Fraction as F

import pytest

from logfano.certifier import (
    UNQUANTIFIED,
    Certificate,
    LedgerEntry,
    Theorem,
    audit_ledger,
    build_config,
    certify,
    classification_table,
    classify_log_fano,
    covering_config,
    discrepancies,
    ledger_with,
    log_fano_bound,
    restrict_divisor,
    singularity_interval,
)
from logfano.lattice import DivisorClass, anticanonical, pair, standard_curve
from logfano.mori import EpsilonInterval

VALID_N = {
    Theorem.CREMONA: range(2, 9),
    Theorem.HYPERPLANES: range(2, 9),
    Theorem.ODD: (5, 7, 9),
    Theorem.EVEN: (4, 6, 8),
    Theorem.P3_K4: (3,),
    Theorem.P3_K5: (3,),
    Theorem.P3_K6: (3,),
    Theorem.P3_K7: (3,),
    Theorem.HASSETT_A1: range(5, 10),
    Theorem.HASSETT_A12: range(5, 10),
}


def all_configs():
    return [build_config(t, n) for t, ns in VALID_N.items() for n in ns]


@pytest.mark.parametrize(("n", "k", "expected"), [
    (2, 8, True), (2, 9, False), (3, 7, True), (3, 8, False),
    (4, 8, True), (4, 9, False), (9, 12, True), (9, 13, False), (5, 0, True),
])
def test_classification_examples(n, k, expected):
    assert classify_log_fano(n, k) is expected


def test_classification_table_and_bound():
    table = dict(classification_table(10))
    for n, ks in table.items():
        assert ks == list(range(min(log_fano_bound(n), n + 5) + 1))
    assert dict(classification_table(2, k_extra=8))[2] == list(range(9))
    with pytest.raises(ValueError):
        classify_log_fano(1, 3)
    with pytest.raises(ValueError):
        log_fano_bound(1)


@pytest.mark.parametrize(("theorem", "n"), [
    ("odd", 6), ("odd", 3), ("even", 5), ("even", 2), ("p3-k5", 4), ("hassett-a1", 4), ("cremona", 1),
])
def test_build_config_rejects(theorem, n):
    with pytest.raises(ValueError):
        build_config(theorem, n)


def test_unknown_theorem():
    with pytest.raises(ValueError):
        build_config("quartic", 5)


def test_boundary_classes():
    assert build_config("cremona", 5).divisor == DivisorClass.uniform(5, 6, 5, -4)
    assert build_config("hyperplanes", 4).divisor == DivisorClass.uniform(4, 6, 15, -10)
    assert build_config("odd", 7).divisor == DivisorClass.uniform(7, 10, 13, -10)
    assert build_config("even", 6).divisor == DivisorClass.uniform(6, 9, 11, -8)
    assert build_config("p3-k7", 3).divisor == DivisorClass.uniform(3, 7, 105, -55)


@pytest.mark.parametrize("cfg", all_configs(), ids=lambda c: f"{c.theorem.value}-{c.n}")
def test_ledgers_nonnegative_at_zero(cfg):
    assert all(d >= 0 for d in discrepancies(cfg.ledger or (), 0))


@pytest.mark.parametrize("cfg", all_configs(), ids=lambda c: f"{c.theorem.value}-{c.n}")
def test_every_builtin_config_certifies(cfg):
    cert = certify(cfg)
    assert cert.verdict
    assert cert.witness in cert.joint
    assert cert.joint == (cert.ample if cert.singular is None else cert.ample & cert.singular)


@pytest.mark.parametrize("cfg", all_configs(), ids=lambda c: f"{c.theorem.value}-{c.n}")
def test_certificate_json_round_trip(cfg):
    cert = certify(cfg)
    data = cert.to_json()
    assert Certificate.from_json(data) == cert
    assert Certificate.from_json(data).to_json() == data


def test_certificate_json_shape():
    data = certify(build_config("odd", 7)).to_json()
    assert data["joint"] == {"lower": "4/7", "upper": "3/5", "lower_open": True, "upper_open": True}
    row = data["ledger"][0]
    assert set(row) == {"center", "count", "k_coeff", "d_mult", "discrepancy_at"}
    eps = F(row["discrepancy_at"]["eps"])
    assert F(row["discrepancy_at"]["value"]) == row["k_coeff"] - eps * F(row["d_mult"])


def test_from_json_rejects_foreign_divisor():
    data = certify(build_config("cremona", 5)).to_json()
    data["divisor"] = DivisorClass.uniform(5, 6, 1, 0).to_json()
    with pytest.raises(ValueError):
        Certificate.from_json(data)


def test_intervals_small_cases():
    cert = certify(build_config("cremona", 5))
    assert cert.ample == EpsilonInterval.open(F(2, 3), 1)
    assert cert.singular == EpsilonInterval.closed_open(0, 1)
    assert cert.joint == EpsilonInterval.open(F(2, 3), 1)
    even = certify(build_config("even", 4))
    assert even.ample == EpsilonInterval.open(F(1, 2), F(3, 5))
    assert not even.joint.is_empty


def test_ample_only_configs():
    for t, upper in (("p3-k5", F(1, 3)), ("p3-k6", F(1, 2)), ("p3-k7", F(2, 55))):
        cert = certify(build_config(t, 3))
        assert cert.singular is None and cert.note == UNQUANTIFIED
        assert cert.ample == EpsilonInterval.open(0, upper)
        assert cert.to_json()["note"] == UNQUANTIFIED


def test_singularity_interval_targets():
    ledger = (LedgerEntry("x", 1, 2, F(3)),)
    assert singularity_interval(ledger, "klt") == EpsilonInterval.closed_open(0, 1)
    assert singularity_interval(ledger, "klt", F(1, 2)) == EpsilonInterval.closed_open(0, 1)
    strict = (LedgerEntry("x", 1, 0, F(4)),)
    assert singularity_interval(strict, "klt") == EpsilonInterval.closed_open(0, F(1, 4))
    lc = singularity_interval(strict, "lc")
    assert F(1, 4) in lc and F(3, 10) not in lc
    with pytest.raises(ValueError):
        singularity_interval(ledger, "terminal")
    with pytest.raises(ValueError):
        LedgerEntry("bad", 0, 1, F(1))
    with pytest.raises(ValueError):
        LedgerEntry("bad", 2, 1, F(1), centers=((1,),))


def test_klt_needs_coefficient_below_one():
    # with no ledger at all the boundary coefficient still caps eps
    assert singularity_interval((), "klt") == EpsilonInterval.closed_open(0, 1)
    assert 1 in singularity_interval((), "lc")


@pytest.mark.parametrize("n", range(5, 10))
def test_hassett_a12_pairings_one_third(n):
    cfg = build_config("hassett-a12", n)
    dim, k = cfg.space
    kd = cfg.divisor - anticanonical(dim, k)
    assert kd == DivisorClass.uniform(dim, k, 1, F(-1, 3))
    for i in range(1, k + 1):
        assert pair(kd, standard_curve("R", dim, k, i)) == F(1, 3)
        for j in range(i + 1, k + 1):
            assert pair(kd, standard_curve("L_pair", dim, k, i, j)) == F(1, 3)
    assert all(d >= -1 for d in discrepancies(cfg.ledger, 1))


@pytest.mark.parametrize("t", ["hassett-a1", "hassett-a12"])
def test_hassett_verdict_is_at_full_coefficients(t):
    for n in range(5, 10):
        cert = certify(build_config(t, n))
        assert cert.witness == 1 and 1 in cert.joint


def test_covering_configs():
    gaps = []
    for n in range(2, 11):
        for k in range(0, min(log_fano_bound(n), n + 3) + 1):
            found = covering_config(n, k)
            if found is None:
                gaps.append((n, k))
                continue
            cfg = build_config(*found)
            assert cfg.n == n and cfg.k >= k
            d = restrict_divisor(cfg.divisor, k)
            assert d.k == k and d.h_coeff == cfg.divisor.h_coeff
    assert gaps == [(2, 5)]


def test_restrict_divisor_errors():
    with pytest.raises(ValueError):
        restrict_divisor(DivisorClass.uniform(3, 2, 1, 0), 3)


@pytest.mark.parametrize(("theorem", "n"), [("odd", 5), ("odd", 7), ("even", 4), ("even", 6), ("even", 8)])
def test_audit_flags_only_the_triple_join_entries(theorem, n):
    cfg = build_config(theorem, n)
    rows = audit_ledger(cfg, seed=n)
    for row in rows:
        assert row.rule == row.oracle, row.center
    bad = {row.center for row in rows if not row.agrees}
    if theorem == "odd":
        assert not bad
    else:
        h = n // 2
        assert bad == {f"Y_ijr^{2 * k}" for k in range(1, h - 1)}
        for row in rows:
            if row.center in bad:
                assert row.rule == row.tabulated + 1


@pytest.mark.parametrize("n", [4, 6, 8])
def test_corrected_ledger_keeps_even_klt_interval(n):
    cfg = build_config("even", n)
    rows = audit_ledger(cfg, oracle=False)
    fixed = ledger_with(cfg, {r.center: r.rule for r in rows if not r.agrees})
    assert singularity_interval(fixed) == singularity_interval(cfg.ledger)
    h = n // 2
    assert singularity_interval(fixed) == EpsilonInterval.closed_open(0, F(2 * h - 1, 3 * h - 2))


def test_audit_unavailable_for_hassett():
    with pytest.raises(ValueError):
        audit_ledger(build_config("hassett-a1", 6))
