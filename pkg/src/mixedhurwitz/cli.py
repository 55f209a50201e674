"""Command-line front end.

Exit codes: 0 success, 1 verification failure (with a machine-readable first
counterexample), 2 domain errors, 3 resource-limit errors.  Identical
invocations produce byte-identical documents: keys are emitted in fixed
order and rationals as canonical "num/den" strings.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from . import characters
from .characters import (
    CACHE_ENV,
    connected_hurwitz_qseries,
    default_cache_dir,
    hurwitz_by_characters,
    load_character_table,
    sector_value,
    save_character_table,
)
from .partitions import check_partition, enumerate_partitions, partition_count
from .quantum_curve import residual_max_abs
from .quasimodular import FitFailure, fit_quasimodular
from .series import QSeries
from .spectral import ceo_omega, cut_and_join_C, extract_C, oracle_C
from .symgroup import (
    DEFAULT_ORACLE_LIMIT,
    HurwitzSpec,
    count_triply_mixed,
    monotone_double_count,
    oracle_N,
)
from .double_recursion import N_value, double_hurwitz
from .tropical import (
    enumerate_elliptic_covers,
    tropical_double_sum,
    tropical_elliptic_sum,
)
from .util import rat_str

ORACLE_LIMIT_ENV = "MIXEDHURWITZ_ORACLE_DMAX"


def parse_partition(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(sorted((int(x) for x in text.split(",")), reverse=True))
    except ValueError as e:
        raise DomainError(f"bad partition {text!r}") from e
    return check_partition(parts)


def parse_profiles(text: str):
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_partition(p) for p in text.split(";") if p.strip())


def emit(doc, fmt: str, csv_rows=None):
    if fmt == "json":
        sys.stdout.write(json.dumps(doc) + "\n")
    elif fmt == "csv":
        rows = csv_rows or [[k, v] for k, v in doc.items()]
        for row in rows:
            sys.stdout.write(",".join(str(x) for x in row) + "\n")
    else:
        for k, v in doc.items():
            sys.stdout.write(f"{k}: {v}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"),
                        default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help=f"character-table cache directory (or ${CACHE_ENV})")
    common.add_argument("--oracle-dmax", type=int, default=argparse.SUPPRESS,
                        help="largest degree the brute-force oracle may attempt")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes for verification suites "
                        "(results are deterministic regardless)")
    p = argparse.ArgumentParser(
        prog="mixedhurwitz",
        description="Exact triply mixed Hurwitz numbers: character sums, "
        "brute-force oracles, quantum curves, topological recursion and "
        "tropical covers.",
        parents=[common],
    )
    # global flags keep SUPPRESS defaults (never set_defaults here: that
    # would mutate the shared parent actions and let the subparser clobber
    # values parsed before the subcommand); fallbacks resolve in main()
    sub = p.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[common], **kw)))

    c = sub.add_parser("compute", help="one triply mixed Hurwitz number")
    c.add_argument("--base-genus", type=int, required=True)
    c.add_argument("--source-genus", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--profiles", default="", help="e.g. '3;2,2' (semicolon-separated)")
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--l", type=int, default=0)
    c.add_argument("--m", type=int, default=0)
    c.add_argument("--connected", action="store_true")
    c.add_argument("--labeled", action="store_true")
    c.add_argument("--method", choices=("characters", "oracle"), default="characters")

    q = sub.add_parser("qseries", help="generating series over the degree")
    q.add_argument("--base-genus", type=int, required=True)
    q.add_argument("--source-genus", type=int, required=True)
    q.add_argument("--profiles", default="")
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--l", type=int, default=0)
    q.add_argument("--m", type=int, default=0)
    q.add_argument("--qmax", type=int, required=True)
    q.add_argument("--disconnected", action="store_true")
    q.add_argument("--bracket", action="store_true",
                   help="emit the q-bracket (disconnected / partition gf) "
                   "instead of the connected series")

    f = sub.add_parser("fit", help="fit a q-series into Q[P,Q,R]")
    f.add_argument("--base-genus", type=int, default=1)
    f.add_argument("--source-genus", type=int, required=True)
    f.add_argument("--profiles", default="")
    f.add_argument("--k", type=int, default=0)
    f.add_argument("--l", type=int, default=0)
    f.add_argument("--m", type=int, default=0)
    f.add_argument("--qmax", type=int, required=True)
    f.add_argument("--weight", type=int, required=True)
    f.add_argument("--bracket", action="store_true")

    t = sub.add_parser("toprec", help="topological-recursion correlator")
    t.add_argument("--g", type=int, required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--mu", required=True, help="comma-separated parts")
    t.add_argument("--skip-oracle", action="store_true")

    d = sub.add_parser("double", help="monotone/strict double Hurwitz number")
    d.add_argument("--variant", choices=("monotone", "strict"), required=True)
    d.add_argument("--mu", required=True)
    d.add_argument("--nu", required=True)
    d.add_argument("--genus", type=int, required=True, help="source genus")

    tr = sub.add_parser("tropical", help="elliptic tropical cover sums")
    tr.add_argument("--genus", type=int, required=True)
    tr.add_argument("--degree", type=int, required=True)
    tr.add_argument("--variant", choices=("monotone", "strict"), required=True)
    tr.add_argument("--list", action="store_true", dest="list_covers")

    qc = sub.add_parser("qc", help="quantum-curve operations")
    qcsub = qc.add_subparsers(dest="qc_command", required=True)
    qv = qcsub.add_parser("verify", help="apply the annihilating operator")
    qv.add_argument("--variant", choices=("monotone", "strict"), required=True)
    qv.add_argument("--genus", type=int, required=True)
    qv.add_argument("--dmax", type=int, default=8)
    qv.add_argument("--bmax", type=int, default=8)

    v = sub.add_parser("verify", help="cross-validation suites")
    v.add_argument("--suite", required=True,
                   choices=("oracle-vs-characters", "n-recursion", "quantum-curve",
                            "toprec", "tropical", "golden-series", "all"))
    v.add_argument("--dmax", type=int, default=4)
    v.add_argument("--deep", action="store_true",
                   help="extend the suite ranges beyond the desk-scale defaults")

    ca = sub.add_parser("cache", help="character-table cache lifecycle")
    casub = ca.add_subparsers(dest="cache_command", required=True)
    cb = casub.add_parser("build")
    cb.add_argument("--dmax", type=int, required=True)
    casub.add_parser("info")
    casub.add_parser("clear")
    return p


# ---------------------------------------------------------------------------
# command implementations


def cmd_compute(args):
    spec = HurwitzSpec(args.base_genus, args.source_genus, args.degree,
                       parse_profiles(args.profiles), args.k, args.l, args.m,
                       connected=args.connected, labeled=args.labeled)
    if args.method == "oracle":
        value = count_triply_mixed(spec, oracle_limit=args.oracle_dmax)
    elif spec.connected:
        if spec.labeled:
            raise DomainError("labeled connected numbers are not exposed; "
                              "drop --labeled or use --method oracle")
        series = connected_hurwitz_qseries(
            spec.base_genus, spec.k, spec.l, spec.m, spec.profiles, spec.degree)
        value = series.coefficient(spec.degree)
    else:
        value = hurwitz_by_characters(spec)
    return {"value": rat_str(value)}


def _qseries_for(args):
    profiles = parse_profiles(args.profiles)
    stripped = tuple(tuple(x for x in p if x != 1) for p in profiles)
    if args.bracket:
        num = QSeries([
            sector_value(args.base_genus, args.k, args.l, args.m, stripped, d)
            for d in range(args.qmax + 1)
        ])
        return num / QSeries([partition_count(d) for d in range(args.qmax + 1)])
    if getattr(args, "disconnected", False):
        return connected_hurwitz_qseries(args.base_genus, args.k, args.l, args.m,
                                         profiles, args.qmax, connected=False)
    return connected_hurwitz_qseries(args.base_genus, args.k, args.l, args.m,
                                     profiles, args.qmax)


def cmd_qseries(args):
    # the source genus pins b = k+l+m; validate it for the leading term
    series = _qseries_for(args)
    coeffs = [rat_str(series.coefficient(d)) for d in range(args.qmax + 1)]
    doc = {"var": "q", "coefficients": coeffs}
    rows = [["degree", "coefficient"]] + [[d, c] for d, c in enumerate(coeffs)]
    return doc, rows


def cmd_fit(args):
    series = _qseries_for(args)
    fit = fit_quasimodular(series, args.weight)
    if isinstance(fit, FitFailure):
        return {"fit_failed": True, "residual_index": fit.residual_index}
    return fit.to_json()


def cmd_toprec(args):
    mu = tuple(int(x) for x in args.mu.split(","))
    if len(mu) != args.n:
        raise DomainError("--mu must have exactly n parts")
    om = ceo_omega(args.g, args.n)
    c = extract_C(om, mu)
    cj = cut_and_join_C(args.g, args.n, mu)
    doc = {"C": rat_str(c), "checks": {"cut_and_join": rat_str(cj), "oracle": None}}
    if not args.skip_oracle and sum(mu) <= args.oracle_dmax:
        doc["checks"]["oracle"] = rat_str(oracle_C(args.g, args.n, mu,
                                                   limit=args.oracle_dmax))
    return doc


def cmd_double(args):
    mu, nu = parse_partition(args.mu), parse_partition(args.nu)
    value = double_hurwitz(args.variant, args.genus, mu, nu)
    return {"value": rat_str(value)}


def cmd_tropical(args):
    covers = enumerate_elliptic_covers(args.genus, args.degree)
    total = sum((c.multiplicity(args.variant) for c in covers), Fraction(0))
    doc = {"total": rat_str(total)}
    if args.list_covers:
        doc["covers"] = [
            {
                "vertices": [{"genus": gv, "local_invariant": lam}
                             for (gv, lam) in c.vertices],
                "edges": [{"src": a, "tgt": b, "weight": w, "windings": k}
                          for (a, b, w, k, kind) in c.edges],
                "aut": c.aut,
                "multiplicity": rat_str(c.multiplicity(args.variant)),
            }
            for c in covers
        ]
    return doc


def cmd_qc(args):
    worst = residual_max_abs(args.variant, args.genus, args.dmax, args.bmax)
    sys.stdout.write(rat_str(worst) + "\n")
    return None if worst == 0 else ("residual nonzero", {"max_abs": rat_str(worst)})


# ---------------------------------------------------------------------------
# verification suites


def _suite_oracle_vs_characters(dmax, oracle_limit):
    from .symgroup import source_genus_for

    checked, first_fail = 0, None
    profile_menu = [(), ((2,),), ((3,),), ((2,), (2,))]
    for g in (0, 1):
        for profiles in profile_menu:
            for d in range(1, dmax + 1):
                if any(sum(p) > d for p in profiles):
                    continue
                for b in range(0, 4):
                    try:
                        gp = source_genus_for(g, d, profiles, b)
                    except DomainError:
                        continue
                    if gp > 3:
                        continue
                    for k in range(b + 1):
                        for l in range(b - k + 1):
                            m = b - k - l
                            spec = HurwitzSpec(g, gp, d, profiles, k, l, m,
                                               connected=False)
                            lhs = count_triply_mixed(spec, oracle_limit)
                            rhs = hurwitz_by_characters(spec)
                            checked += 1
                            if lhs != rhs and first_fail is None:
                                first_fail = {
                                    "inputs": {"g": g, "gp": gp, "d": d,
                                               "profiles": [list(p) for p in profiles],
                                               "k": k, "l": l, "m": m,
                                               "connected": False},
                                    "oracle": rat_str(lhs),
                                    "characters": rat_str(rhs),
                                }
                            spec_c = HurwitzSpec(g, gp, d, profiles, k, l, m,
                                                 connected=True)
                            lhs_c = count_triply_mixed(spec_c, oracle_limit)
                            ser = connected_hurwitz_qseries(g, k, l, m, profiles, d)
                            rhs_c = ser.coefficient(d)
                            checked += 1
                            if lhs_c != rhs_c and first_fail is None:
                                first_fail = {
                                    "inputs": {"g": g, "gp": gp, "d": d,
                                               "profiles": [list(p) for p in profiles],
                                               "k": k, "l": l, "m": m,
                                               "connected": True},
                                    "oracle": rat_str(lhs_c),
                                    "characters": rat_str(rhs_c),
                                }
    return checked, first_fail


def _suite_n_recursion(dmax, oracle_limit):
    checked, first_fail = 0, None
    for d in range(1, dmax + 1):
        parts = enumerate_partitions(d)
        for mu in parts:
            for nu in parts:
                for g in range(0, 3):
                    b = 2 * g - 2 + len(mu) + len(nu)
                    if b < 0 or b > 3:
                        continue
                    for variant in ("monotone", "strict"):
                        for i in range(1, len(mu) + 1):
                            for l in range(1, nu[-1] + 1):
                                want = oracle_N(variant, g, mu, nu, l, i,
                                                limit=oracle_limit)
                                got = N_value(variant, g, mu[i - 1],
                                              mu[:i - 1] + mu[i:], nu, l)
                                checked += 1
                                if got != want and first_fail is None:
                                    first_fail = {
                                        "inputs": {"variant": variant, "g": g,
                                                   "mu": list(mu), "nu": list(nu),
                                                   "l": l, "i": i},
                                        "oracle": want, "recursion": got,
                                    }
                        got = double_hurwitz(variant, g, mu, nu)
                        want = monotone_double_count(
                            g, mu, nu, strict=(variant == "strict"),
                            limit=oracle_limit)
                        checked += 1
                        if got != want and first_fail is None:
                            first_fail = {
                                "inputs": {"variant": variant, "g": g,
                                           "mu": list(mu), "nu": list(nu)},
                                "oracle": rat_str(want), "recursion": rat_str(got),
                            }
    return checked, first_fail


def _suite_quantum_curve(dmax=8, bmax=8):
    checked, first_fail = 0, None
    for variant in ("monotone", "strict"):
        for g in (0, 1, 2):
            worst = residual_max_abs(variant, g, dmax, bmax)
            checked += 1
            if worst != 0 and first_fail is None:
                first_fail = {"inputs": {"variant": variant, "g": g},
                              "max_abs_residual": rat_str(worst)}
    return checked, first_fail


def _suite_toprec(mu_max=4):
    checked, first_fail = 0, None
    targets = [(g, n) for g in range(3) for n in range(1, 5)
               if 0 < 2 * g - 2 + n <= 4]

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for (g, n) in targets:
        om = ceo_omega(g, n)
        for tot in range(n, mu_max + 1):
            for mu in compositions(tot, n):
                a = extract_C(om, mu)
                b = cut_and_join_C(g, n, mu)
                c = oracle_C(g, n, mu)
                checked += 1
                if not (a == b == c) and first_fail is None:
                    first_fail = {"inputs": {"g": g, "n": n, "mu": list(mu)},
                                  "extract": rat_str(a),
                                  "cut_and_join": rat_str(b),
                                  "oracle": rat_str(c)}
    return checked, first_fail


def _suite_tropical(dmax=5):
    checked, first_fail = 0, None
    for variant in ("monotone", "strict"):
        for d in range(1, dmax + 1):
            got = tropical_elliptic_sum(variant, 2, d)
            kl = (0, 2, 0) if variant == "monotone" else (0, 0, 2)
            want = connected_hurwitz_qseries(1, kl[0], kl[1], kl[2], (), d).coefficient(d)
            checked += 1
            if got != want and first_fail is None:
                first_fail = {"inputs": {"variant": variant, "g": 2, "d": d},
                              "tropical": rat_str(got), "characters": rat_str(want)}
    return checked, first_fail


def _suite_golden_series():
    golden = [
        ((2, 0, 0, ()), 2, [2, 16, 60, 160, 360, 672, 1240]),
        ((0, 2, 0, ()), 2, [2, 13, 44, 109, 235, 422, 760]),
        ((0, 0, 2, ()), 2, [0, 3, 16, 51, 125, 250, 480]),
    ]
    checked, first_fail = 0, None
    for (k, l, m, profs), lo, expect in golden:
        ser = connected_hurwitz_qseries(1, k, l, m, profs, lo + len(expect) - 1)
        got = [ser.coefficient(d) for d in range(lo, lo + len(expect))]
        checked += 1
        if got != [Fraction(e) for e in expect] and first_fail is None:
            first_fail = {"inputs": {"k": k, "l": l, "m": m},
                          "got": [rat_str(x) for x in got], "expected": expect}
    # the mu=(3) series is the q-bracket of the sector functional
    num = QSeries([sector_value(1, 2, 0, 0, ((3,),), d) for d in range(7)])
    den = QSeries([partition_count(d) for d in range(7)])
    got = [(num / den).coefficient(d) for d in range(3, 7)]
    checked += 1
    if got != [36, 540, 3606, 15726] and first_fail is None:
        first_fail = {"inputs": {"profiles": [[3]], "k": 2},
                      "got": [rat_str(x) for x in got],
                      "expected": [36, 540, 3606, 15726]}
    return checked, first_fail


def cmd_verify(args):
    dmax = args.dmax + (2 if args.deep else 0)
    suites = {
        "oracle-vs-characters": lambda: _suite_oracle_vs_characters(
            min(dmax, args.oracle_dmax), args.oracle_dmax),
        "n-recursion": lambda: _suite_n_recursion(
            min(dmax + 1, args.oracle_dmax), args.oracle_dmax),
        "quantum-curve": lambda: _suite_quantum_curve(),
        "toprec": lambda: _suite_toprec(),
        "tropical": lambda: _suite_tropical(dmax=min(5 + (2 if args.deep else 0), 7)),
        "golden-series": lambda: _suite_golden_series(),
    }
    selected = list(suites) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(selected) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_suite_by_name,
                                  [(name, args.dmax, args.deep, args.oracle_dmax)
                                   for name in selected]))
    else:
        results = [suites[name]() for name in selected]
    checked = sum(r[0] for r in results)
    failures = [r[1] for r in results if r[1] is not None]
    sys.stdout.write(f"checked: {checked}, failures: {len(failures)}\n")
    if failures:
        sys.stdout.write(json.dumps({"first_counterexample": failures[0]}) + "\n")
        return 1
    return 0


def _run_suite_by_name(packed):
    name, dmax, deep, oracle_dmax = packed
    dmax_ = dmax + (2 if deep else 0)
    table = {
        "oracle-vs-characters": lambda: _suite_oracle_vs_characters(
            min(dmax_, oracle_dmax), oracle_dmax),
        "n-recursion": lambda: _suite_n_recursion(
            min(dmax_ + 1, oracle_dmax), oracle_dmax),
        "quantum-curve": lambda: _suite_quantum_curve(),
        "toprec": lambda: _suite_toprec(),
        "tropical": lambda: _suite_tropical(dmax=min(5 + (2 if deep else 0), 7)),
        "golden-series": lambda: _suite_golden_series(),
    }
    return table[name]()


def cmd_cache(args):
    cache_dir = args.cache_dir or default_cache_dir()
    if args.cache_command == "build":
        paths = [save_character_table(d, cache_dir) for d in range(1, args.dmax + 1)]
        return {"built": paths}
    if args.cache_command == "info":
        if not os.path.isdir(cache_dir):
            return {"cache_dir": cache_dir, "files": []}
        return {"cache_dir": cache_dir,
                "files": sorted(f for f in os.listdir(cache_dir)
                                if f.startswith("chartable-"))}
    if args.cache_command == "clear":
        removed = []
        if os.path.isdir(cache_dir):
            for f in sorted(os.listdir(cache_dir)):
                if f.startswith("chartable-") and f.endswith(".json"):
                    os.remove(os.path.join(cache_dir, f))
                    removed.append(f)
        return {"removed": removed}
    raise DomainError("unknown cache command")


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
        for d in range(1, 13):
            try:
                load_character_table(d, args.cache_dir)
            except DomainError:
                pass
    try:
        if args.command == "compute":
            emit(cmd_compute(args), args.format)
        elif args.command == "qseries":
            doc, rows = cmd_qseries(args)
            emit(doc, args.format, csv_rows=rows)
        elif args.command == "fit":
            emit(cmd_fit(args), args.format)
        elif args.command == "toprec":
            emit(cmd_toprec(args), args.format)
        elif args.command == "double":
            emit(cmd_double(args), args.format)
        elif args.command == "tropical":
            emit(cmd_tropical(args), args.format)
        elif args.command == "qc":
            bad = cmd_qc(args)
            if bad is not None:
                return 1
        elif args.command == "verify":
            return cmd_verify(args)
        elif args.command == "cache":
            emit(cmd_cache(args), args.format)
        return 0
    except DomainError as e:
        sys.stderr.write(f"domain error: {e}\n")
        return 2
    except ResourceLimitError as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
