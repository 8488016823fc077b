"""Command-line front end: ``logfano <verb> [options]``.

Exit status: 0 on success (or a true verdict), 1 on a false verdict or a
failed check, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from itertools import combinations
from typing import Sequence

from . import certifier, mori, secant, weightspace
from .lattice import DivisorClass, anticanonical, curve_from_coeffs, divisor_from_coeffs
from .polynomial import hankel_determinant_form
from .rational import format_rational, parse_csv_rationals

SEED_ENV = "LOGFANO_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return secant.DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False), flush=True)


def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> None:
    rows = [list(map(str, r)) for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    sys.stdout.flush()


def _parse_divisor(text: str, n: int | None, flag: str = "--divisor") -> DivisorClass:
    """A divisor as JSON {"n","k","h","e"} or as CSV h,e1,...,ek (needs --n)."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return DivisorClass.from_json(json.loads(text))
        if n is None:
            raise UsageError(f"{flag} given as coefficients needs --n")
        return divisor_from_coeffs(n, parse_csv_rationals(text))
    except UsageError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _check_k(d: DivisorClass, k: int | None, flag: str) -> None:
    if k is not None and d.k != k:
        raise UsageError(f"{flag} has {d.k} exceptional coefficients but --k is {k}")


# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    table = certifier.classification_table(args.n_max, args.k_extra)
    if args.json:
        _emit({"rows": [{"n": n, "k_max": certifier.log_fano_bound(n), "log_fano_k": ks} for n, ks in table]})
    else:
        rows = []
        for n, ks in table:
            top = n + args.k_extra
            marks = "".join("+" if k in ks else "." for k in range(top + 1))
            rows.append((n, f"k <= {certifier.log_fano_bound(n)}", f"{marks}  (k = 0..{top})"))
        _table(rows, ["n", "log Fano", "scan"])
    return 0


def cmd_ample_range(args) -> int:
    d = _parse_divisor(args.divisor, args.n)
    _check_k(d, args.k, "--divisor")
    base = anticanonical(d.n, d.k) if args.base is None else _parse_divisor(args.base, d.n, "--base")
    if (base.n, base.k) != (d.n, d.k):
        raise UsageError("--base and --divisor live on different blow-ups")
    valid = mori.mori_valid(d.n, d.k)
    if not valid and not args.heuristic:
        raise UsageError(f"X^{d.n}_{d.k} is outside the proven Mori cone range; pass --heuristic to compute anyway")
    interval = mori.epsilon_interval(base, d, allow_heuristic=True)
    evidence = mori.pairing_evidence(base, d)
    if args.json:
        out = {"interval": interval.to_json(), "certified": valid}
        out["pairings"] = [
            {"gen": ev.generator, "base": format_rational(ev.base), "slope": format_rational(ev.slope)} for ev in evidence
        ]
        if not valid:
            out["tag"] = mori.HEURISTIC_TAG
        _emit(out)
    else:
        print(f"eps with {base} - eps*({d}) ample: {interval}")
        if not valid:
            print(f"[{mori.HEURISTIC_TAG}]")
        _table([(ev.generator, format_rational(ev.base), format_rational(-ev.slope)) for ev in evidence],
               ["generator", "value at eps=0", "eps coefficient"])
    return 0


def cmd_certify(args) -> int:
    try:
        cfg = certifier.build_config(args.theorem, args.n)
    except ValueError as exc:
        raise UsageError(f"--n: {exc}") from None
    cert = certifier.certify(cfg)
    if args.json:
        _emit(cert.to_json())
    else:
        print(f"theorem   {cfg.theorem.value}  (n = {cfg.n}, k = {cfg.k})")
        print(f"divisor   {cfg.divisor}")
        print(f"ample     {cert.ample}")
        print(f"singular  {'not certified (' + cert.note + ')' if cert.singular is None else cert.singular}  [{cfg.target}]")
        print(f"joint     {cert.joint}")
        print(f"verdict   {'true' if cert.verdict else 'false'}")
        if cfg.ledger:
            eps = cert.witness
            print()
            _table(
                [
                    (e.center, e.count, e.k_coeff, format_rational(e.d_mult),
                     "" if eps is None else format_rational(e.discrepancy(eps)))
                    for e in cfg.ledger
                ],
                ["center", "count", "k_coeff", "d_mult", f"a(eps={format_rational(cert.witness) if eps is not None else '-'})"],
            )
    return 0 if cert.verdict else 1


def cmd_chamber(args) -> int:
    if (args.point is None) == (args.divisor is None):
        raise UsageError("give exactly one of --point or --divisor")
    if args.point is not None:
        try:
            alphas = parse_csv_rationals(args.point)
        except ValueError as exc:
            raise UsageError(f"--point: {exc}") from None
        if len(alphas) != args.n + 3:
            raise UsageError(f"--point needs n+3 = {args.n + 3} coordinates, got {len(alphas)}")
        a = weightspace.WeightPoint(alphas)
    else:
        d = _parse_divisor(args.divisor, args.n)
        try:
            a = weightspace.phi(d)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--divisor: {exc}") from None
    if a.n > 10:
        raise UsageError("--n above 10 makes the wall scan too large for the command line")
    member = weightspace.region_membership(a)
    if not member.in_delta:
        if args.json:
            _emit({"point": a.to_json(), "membership": vars(member), "walls": None})
        else:
            print(f"point {a} is outside the effective polytope")
        return 1
    sig = weightspace.chamber_signature(a)
    if args.json:
        out = sig.to_json()
        out["point"] = a.to_json()
        out["membership"] = vars(member)
        _emit(out)
        return 0
    print(f"point     {a}")
    print(f"in Delta  {member.in_delta}   in Mov  {member.in_mov}   in Nef  {member.in_nef}")
    counts: dict[tuple[int, str], int] = {}
    for w, s in sig.signs.items():
        counts[(w.level, s)] = counts.get((w.level, s), 0) + 1
    levels = sorted({lvl for lvl, _ in counts})
    _table([(lvl, *(counts.get((lvl, s), 0) for s in weightspace.SIGNS)) for lvl in levels],
           ["level", *weightspace.SIGNS])
    on = sig.on_walls()
    if on:
        print(f"\non {len(on)} walls" + (":" if args.all else " (use --all to list)"))
        if args.all:
            for w in sorted(on):
                print(f"  H_{w.subset} = {w.level}: {weightspace.classify_wall(w)}")
    else:
        print("\ninterior of a chamber")
    return 0


def cmd_cone_info(args) -> int:
    gens = mori.mori_generators(args.n, args.k)
    report = None
    if args.divisor is not None:
        d = _parse_divisor(args.divisor, args.n)
        _check_k(d, args.k, "--divisor")
        report = mori.positivity_report(d)
    if args.json:
        out = {
            "n": args.n,
            "k": args.k,
            "validity": gens.validity,
            "count": gens.count,
            "generators": [{"name": name, "curve": [format_rational(c.l_coeff), *map(format_rational, c.r_coeffs)]}
                           for name, c in gens.generators],
        }
        if report is not None:
            out["positivity"] = {
                "min_value": format_rational(report.min_value),
                "ample": report.ample,
                "nef": report.nef,
                "violating_generators": list(report.violating_generators),
                "certified": report.certified,
            }
            if report.tag:
                out["positivity"]["tag"] = report.tag
        _emit(out)
        return 0
    print(f"X^{args.n}_{args.k}: {gens.count} generators (R_i, L_i_j), "
          f"{'proven' if gens.validity else 'NOT proven'} to span the Mori cone")
    if report is not None:
        print(f"divisor {report.divisor}: min pairing {format_rational(report.min_value)}, "
              f"ample {report.ample}, nef {report.nef}")
        if report.violating_generators:
            shown = ", ".join(report.violating_generators[:12])
            more = len(report.violating_generators) - 12
            print(f"  non-positive on: {shown}" + (f" (+{more} more)" if more > 0 else ""))
        if report.tag:
            print(f"  [{report.tag}]")
    return 0


def _oracle_rows(check: str, n: int, trials: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    if check in ("rank", "mult") and n % 2:
        raise UsageError(f"--check {check} needs --n even")
    h = n // 2
    if check == "rank":
        for k in range(1, h + 1):
            label = secant.JoinLabel.of(n, [], k)
            ok = sum(secant.hankel_rank(secant.sample_join_point(label, seed=rng)) == k for _ in range(trials))
            rows.append({"case": f"rank sec_{k}", "expected": k, "passed": ok, "trials": trials})
    elif check == "mult":
        form = hankel_determinant_form(n)
        for t in range(1, h):
            label = secant.JoinLabel.of(n, [], h - t)
            ok = 0
            for _ in range(trials):
                p = secant.sample_join_point(label, seed=rng)
                v = secant.random_direction(n, rng)
                ok += secant.vanishing_order(form, p, v) == t + 1
            rows.append({"case": f"mult det M_{h} along sec_{h - t}", "expected": t + 1, "passed": ok, "trials": trials})
    elif check == "intersection":
        size = n + 3
        sub = lambda *e: weightspace.SubsetIndex.of(size, e)  # noqa: E731
        total = ok = 0
        for d in range(2, n):
            for i, j in combinations(range(1, size + 1), 2):
                try:
                    same = secant.intersect_same_dim(sub(i), sub(j), d, n)
                except ValueError:
                    continue
                general = secant.intersect(secant.JoinLabel.with_dim(n, [i], d), secant.JoinLabel.with_dim(n, [j], d))
                total += 1
                ok += same == general
        rows.append({"case": "Y_i cap Y_j, two routes", "expected": "equal", "passed": ok, "trials": total})
        if n % 2 == 0 and n >= 6:
            total = ok = 0
            for i, j, r, s in combinations(range(1, min(size, 7) + 1), 4):
                for a, b in (((i, j), (r, s)), ((r, s), (i, j)), ((i, r), (j, s))):
                    got = secant.intersect_offset(sub(*a), sub(*b), n)
                    general = secant.intersect(secant.JoinLabel.with_dim(n, a, n - 1), secant.JoinLabel.with_dim(n, b, n - 3))
                    total += 1
                    ok += got == general
            rows.append({"case": "Y_ij^(n-1) cap Y_rs^(n-3), two routes", "expected": "equal", "passed": ok, "trials": total})
    else:
        raise UsageError(f"--check must be mult, rank or intersection, got {check!r}")
    return rows


def cmd_secant_oracle(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    seed = default_seed() if args.seed is None else args.seed
    rows = _oracle_rows(args.check, args.n, args.trials, seed)
    good = all(r["passed"] == r["trials"] for r in rows)
    if args.json:
        _emit({"n": args.n, "check": args.check, "seed": seed, "rows": rows, "ok": good})
    else:
        _table([(r["case"], r["expected"], f"{r['passed']}/{r['trials']}", "PASS" if r["passed"] == r["trials"] else "FAIL")
                for r in rows], ["case", "expected", "passed", "status"])
        print(f"seed {seed}")
    return 0 if good else 1


def cmd_decompose(args) -> int:
    try:
        coeffs = parse_csv_rationals(args.curve)
    except ValueError as exc:
        raise UsageError(f"--curve: {exc}") from None
    if len(coeffs) != args.k + 1:
        raise UsageError(f"--curve needs 1 + k = {args.k + 1} coefficients (d, then R_1..R_k), got {len(coeffs)}")
    c = curve_from_coeffs(args.n, coeffs)
    try:
        terms = mori.decompose_curve(c)
    except mori.DecompositionError as exc:
        raise UsageError(f"--curve: {exc}") from None
    exact = mori.recombine(terms, args.n, args.k) == c
    if args.json:
        _emit({"decomposition": mori.decomposition_to_json(terms), "recombines": exact})
    else:
        print(" + ".join(f"{format_rational(co)}*{name}" if co != 1 else name for name, co in terms) or "0")
        print(f"recombines exactly: {exact}")
    return 0 if exact else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="logfano", description="Exact log Fano certificates for blow-ups of P^n at points.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[common], help="which X^n_k are log Fano")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-extra", type=int, default=5, help="scan k = 0..n+K (default 5)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ample-range", parents=[common], help="eps with base - eps*D ample")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--divisor", required=True, help='JSON {"n","k","h","e"} or CSV h,e1,...,ek')
    p.add_argument("--base", help="base class (default: anticanonical)")
    p.add_argument("--heuristic", action="store_true", help="allow (n,k) outside the proven Mori cone range")
    p.set_defaults(func=cmd_ample_range)

    p = sub.add_parser("certify", parents=[common], help="certificate for a built-in boundary divisor")
    p.add_argument("--theorem", required=True, choices=[t.value for t in certifier.Theorem])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("chamber", parents=[common], help="Mori chamber signature of a weight point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", help="alpha_1,...,alpha_{n+3}")
    p.add_argument("--divisor", help="class on X^n_{n+3}, mapped to the hypercube first")
    p.add_argument("--all", action="store_true", help="list every wall the point lies on")
    p.set_defaults(func=cmd_chamber)

    p = sub.add_parser("cone-info", parents=[common], help="Mori cone generators and positivity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--divisor")
    p.set_defaults(func=cmd_cone_info)

    p = sub.add_parser("secant-oracle", parents=[common], help="seeded exact checks on secant varieties")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", required=True, choices=["mult", "rank", "intersection"])
    p.add_argument("--seed", type=int, help=f"default {secant.DEFAULT_SEED}, or ${SEED_ENV}")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_secant_oracle)

    p = sub.add_parser("decompose", parents=[common], help="write dL - sum m_i R_i in Mori generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--curve", required=True, help="d,r_1,...,r_k for dL + sum r_i R_i")
    p.set_defaults(func=cmd_decompose)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for flag in ("n", "k"):
        val = getattr(args, flag, None)
        if val is not None and val < (2 if flag == "n" else 0):
            print(f"logfano: error: --{flag} = {val} is out of range", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"logfano: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    try:
        sys.stdout.reconfigure(line_buffering=True, encoding="utf-8")
    except AttributeError:
        pass
    try:
        status = run()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        status = 0
    sys.exit(status)


if __name__ == "__main__":
    main()
