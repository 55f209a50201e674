"""Irreducible characters of symmetric groups and the central-character route
to triply mixed Hurwitz numbers.

All arithmetic is exact rational; no floating point anywhere.  The in-memory
character cache only receives idempotent inserts and the lambda-sums are plain
reductions over independent terms, so concurrent use is safe.
"""

import json
import os
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError
from .partitions import (
    check_partition,
    class_size,
    contents,
    enumerate_partitions,
    hook_dim,
    pad_to,
    strip_ones,
    sym_eval,
)
from .symgroup import HurwitzSpec
from .series import QSeries
from .util import rat_str

# ---------------------------------------------------------------------------
# Murnaghan-Nakayama characters

_char_cache = {}


def character(lam, nu) -> int:
    """Character value chi^lam(nu) for |lam| = |nu|, by the MN border-strip rule."""
    lam, nu = check_partition(lam), check_partition(nu)
    if sum(lam) != sum(nu):
        raise DomainError(f"size mismatch: |{lam}| != |{nu}|")
    return _mn(lam, tuple(sorted(nu, reverse=True)))


def _mn(lam, nu) -> int:
    if not nu:
        return 1
    if nu[0] == 1:
        # remaining class is the identity: character value is the dimension
        return hook_dim(lam)
    key = (lam, nu)
    hit = _char_cache.get(key)
    if hit is not None:
        return hit
    t = nu[0]
    rest = nu[1:]
    total = 0
    # beta-set formulation: border strips of size t <-> b in B with b-t not in B
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]
    bset = set(beta)
    for idx, b in enumerate(beta):
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = sorted((bset - {b}) | {nb}, reverse=True)
        new_lam = tuple(x - (len(new_beta) - 1 - i) for i, x in enumerate(new_beta))
        new_lam = tuple(x for x in new_lam if x > 0)
        sign = -1 if height % 2 else 1
        total += sign * _mn(new_lam, rest)
    _char_cache[key] = total
    return total


def character_table(d: int):
    """Full table {(lam, nu): chi} for all partitions of d."""
    parts = enumerate_partitions(d)
    return {(lam, nu): character(lam, nu) for lam in parts for nu in parts}


# ---------------------------------------------------------------------------
# character-table disk cache (versioned JSON)

CACHE_ENV = "MIXEDHURWITZ_CACHE_DIR"


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "mixedhurwitz")


def cache_file(d: int, cache_dir=None):
    return os.path.join(cache_dir or default_cache_dir(), f"chartable-{d}.json")


def save_character_table(d: int, cache_dir=None) -> str:
    path = cache_file(d, cache_dir)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    entries = [
        {"lambda": list(lam), "nu": list(nu), "chi": str(v)}
        for (lam, nu), v in sorted(character_table(d).items())
    ]
    doc = {"version": 1, "degree": d, "entries": entries}
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return path


def load_character_table(d: int, cache_dir=None) -> bool:
    """Populate the in-memory cache from disk; returns True when found."""
    path = cache_file(d, cache_dir)
    if not os.path.exists(path):
        return False
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != 1 or doc.get("degree") != d:
        raise DomainError(f"unrecognized cache file {path}")
    for e in doc["entries"]:
        lam, nu = tuple(e["lambda"]), tuple(e["nu"])
        nu_sorted = tuple(sorted(nu, reverse=True))
        _char_cache[(lam, nu_sorted)] = int(e["chi"])
    return True


# ---------------------------------------------------------------------------
# central characters


def central_character_f(nu, lam) -> Fraction:
    """f_nu(lambda) = |C_nu in S_|lam|| * chi^lam(nu padded) / dim lam.

    nu must be free of 1-parts (callers canonicalize first); |nu| <= |lam|.
    """
    nu, lam = check_partition(nu), check_partition(lam)
    if any(x == 1 for x in nu):
        raise DomainError(f"nu must not contain 1-parts: {nu}")
    return central_character_extended(nu, lam)


def central_character_extended(nu, lam) -> Fraction:
    """binom(|lam|,|nu|) |C_nu| chi^lam(nu padded)/dim lam for arbitrary nu.

    For 1-free nu the prefactor equals the padded class size; with 1-parts it
    is the verbatim binomial extension (e.g. nu=(1) gives |lam|).
    """
    nu, lam = check_partition(nu), check_partition(lam)
    n, dd = sum(nu), sum(lam)
    if n > dd:
        raise DomainError(f"|nu|={n} exceeds |lam|={dd}")
    if not nu:
        return Fraction(1)
    pref = comb(dd, n) * class_size(nu, n)
    chi = character(lam, pad_to(nu, dd))
    return Fraction(pref * chi, hook_dim(lam))


# ---------------------------------------------------------------------------
# disconnected triply mixed numbers by the lambda-sum


def hurwitz_by_characters(spec: HurwitzSpec) -> Fraction:
    """Disconnected triply mixed Hurwitz number as a sum over partitions of d."""
    if spec.connected:
        raise DomainError("character formula computes the disconnected number; "
                          "use connected_series for connected ones")
    value = sector_value(
        spec.base_genus, spec.k, spec.l, spec.m,
        tuple(strip_ones(p) for p in spec.profiles), spec.degree,
    )
    if spec.labeled:
        from .partitions import aut_count

        for p in spec.profiles:
            value *= aut_count(p)
    return value


def sector_value(g: int, k: int, l: int, m: int, profiles, d: int) -> Fraction:
    """Lambda-sum for one (k,l,m,profiles,d) sector at base genus g.

    profiles must be 1-free.  The d = 0 convention: 1 for the empty sector,
    0 otherwise.
    """
    if d == 0:
        return Fraction(1) if (k == l == m == 0 and all(not p for p in profiles)) else Fraction(0)
    if any(sum(p) > d for p in profiles) or (k and d < 2):
        return Fraction(0)  # binomial prefactor vanishes when |nu| > d
    fact = factorial(d)
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        term = Fraction(hook_dim(lam), fact) ** (2 - 2 * g)
        for p in profiles:
            if p:
                term *= central_character_f(p, lam)
            if term == 0:
                break
        if term == 0:
            continue
        if k:
            f2 = central_character_f((2,), lam)
            term *= f2**k
        if l or m:
            cont = contents(lam)
            if l:
                term *= sym_eval("complete_homogeneous", l, cont)
            if m:
                term *= sym_eval("elementary", m, cont)
        total += term
    return total


# ---------------------------------------------------------------------------
# the potential: disconnected <-> connected bookkeeping
#
# A sector is (k, l, m, profiles, d) with profiles a tuple of 1-free
# partitions, one per profile slot.  The k transpositions carry divided-power
# grading (their positions interleave freely when components merge), the
# monotone and strict blocks merge in exactly one way, so l, m, the profile
# content and the degree are plain additive gradings.


def _sub_triples(k, l, m):
    for k1 in range(k + 1):
        for l1 in range(l + 1):
            for m1 in range(m + 1):
                yield k1, l1, m1


def _sub_multisets(parts):
    parts = tuple(parts)
    if not parts:
        yield ()
        return
    head, tail = parts[0], parts[1:]
    seen = set()
    for rest in _sub_multisets(tail):
        for take in (True, False):
            cand = tuple(sorted(((head,) if take else ()) + rest, reverse=True))
            if cand not in seen:
                seen.add(cand)
                yield cand


def _sub_profiles(profiles):
    if not profiles:
        yield ()
        return
    for first in _sub_multisets(profiles[0]):
        for rest in _sub_profiles(profiles[1:]):
            yield (first,) + rest


def _profile_diff(whole, part):
    out = []
    for w, p in zip(whole, part):
        avail = list(w)
        for x in p:
            avail.remove(x)
        out.append(tuple(sorted(avail, reverse=True)))
    return tuple(out)


def subsectors(sector):
    """All (k',l',m',profiles',d') componentwise inside the given sector."""
    k, l, m, profiles, d = sector
    for k1, l1, m1 in _sub_triples(k, l, m):
        for prof in _sub_profiles(profiles):
            for d1 in range(d + 1):
                yield (k1, l1, m1, prof, d1)


def _sector_product(s1, s2):
    k1, l1, m1, p1, d1 = s1
    k2, l2, m2, p2, d2 = s2
    prof = tuple(
        tuple(sorted(a + b, reverse=True)) for a, b in zip(p1, p2)
    )
    coeff = comb(k1 + k2, k1)
    return coeff, (k1 + k2, l1 + l2, m1 + m2, prof, d1 + d2)


def potential_log(disconnected, targets):
    """Connected sector values from disconnected ones: log(1 + P).

    disconnected maps sector -> value for every subsector of every target
    (degree-0 sectors are implied); returns {target: connected value}.
    """
    needed = set()
    for t in targets:
        needed.update(subsectors(t))
    vals = {}
    for s in needed:
        if s[4] == 0:
            continue  # the constant term of 1+P is the 1
        if s not in disconnected:
            raise DomainError(f"missing disconnected value for sector {s}")
        vals[s] = Fraction(disconnected[s])

    # log(1+P) = sum (-1)^{r+1} P^r / r; P has degree >= 1 so r <= max degree
    max_d = max((t[4] for t in targets), default=0)
    result = {s: Fraction(v) for s, v in vals.items()}
    power = dict(vals)  # P^r restricted to needed sectors
    sign = -1
    for r in range(2, max_d + 1):
        nxt = {}
        for s1, v1 in power.items():
            if v1 == 0:
                continue
            for s2, v2 in vals.items():
                if v2 == 0:
                    continue
                if s1[4] + s2[4] > max_d:
                    continue
                c, s = _sector_product(s1, s2)
                if s in needed:
                    nxt[s] = nxt.get(s, Fraction(0)) + c * v1 * v2
        power = nxt
        if not power:
            break
        for s, v in power.items():
            result[s] = result.get(s, Fraction(0)) + Fraction(sign ** (r + 1)) * v / r
        sign = -1
    out = {}
    for t in targets:
        out[t] = result.get(t, Fraction(0))
    return out


def connected_series(family):
    """Connected q-series from a family of disconnected ones.

    family maps (k, l, m, profiles) -> QSeries in q (coefficient of q^d = the
    disconnected number of degree d).  Profiles are tuples of 1-free
    partitions.  The returned map has the same keys with connected series.
    Raises DomainError when a needed subsector key/degree is missing.
    """
    family = {
        (k, l, m, tuple(tuple(p) for p in profiles)): series
        for (k, l, m, profiles), series in family.items()
    }
    if not family:
        return {}
    qmax = min(s.high for s in family.values())
    disconnected = {}
    targets = []
    for (k, l, m, profiles), series in family.items():
        for d in range(qmax + 1):
            targets.append((k, l, m, profiles, d))
    needed = set()
    for t in targets:
        needed.update(subsectors(t))
    for s in needed:
        k, l, m, profiles, d = s
        if d == 0:
            continue
        key = (k, l, m, profiles)
        if key in family:
            disconnected[s] = family[key].coefficient(d)
        else:
            raise DomainError(f"missing disconnected series for sub-spec {key}")
    conn = potential_log(disconnected, targets)
    out = {}
    for (k, l, m, profiles), series in family.items():
        coeffs = [conn[(k, l, m, profiles, d)] for d in range(qmax + 1)]
        out[(k, l, m, profiles)] = QSeries(coeffs, 0, series.var)
    return out


def connected_hurwitz_qseries(g: int, k: int, l: int, m: int, profiles, qmax: int,
                              connected: bool = True) -> QSeries:
    """Generating series over the degree for fixed (k,l,m,profiles), base genus g.

    Computes every needed disconnected subsector by the character formula and
    takes the potential log when connected=True.
    """
    profiles = tuple(tuple(strip_ones(check_partition(p))) for p in profiles)
    keys = set()
    for k1, l1, m1 in _sub_triples(k, l, m):
        for prof in _sub_profiles(profiles):
            keys.add((k1, l1, m1, prof))
    family = {}
    for key in keys:
        k1, l1, m1, prof = key
        coeffs = [sector_value(g, k1, l1, m1, prof, d) for d in range(qmax + 1)]
        family[key] = QSeries(coeffs, 0, "q")
    if not connected:
        return family[(k, l, m, profiles)]
    return connected_series(family)[(k, l, m, profiles)]


# ---------------------------------------------------------------------------
# commutator counts by characters


def commutator_count_by_characters(g: int, nu, d: int) -> int:
    """A_g(nu): 2g-tuples whose commutator product has padded cycle type nu.

    Frobenius evaluation: |C_nu^(d)| * sum_lam (d!/dim lam)^(2g-1) chi^lam(nu).
    """
    if g < 1:
        raise DomainError("g must be >= 1")
    nu = check_partition(nu)
    if sum(nu) > d:
        raise DomainError("|nu| > d")
    padded = pad_to(strip_ones(nu), d)
    fact = factorial(d)
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        total += Fraction(fact, hook_dim(lam)) ** (2 * g - 1) * character(lam, padded)
    total *= class_size(strip_ones(nu), d)
    if total.denominator != 1:
        raise AssertionError("commutator count must be an integer")
    return int(total)


def serialize_value(x) -> str:
    return rat_str(x)
