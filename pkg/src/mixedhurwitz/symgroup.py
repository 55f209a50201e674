"""Brute-force ground truth over symmetric groups.

Permutations are one-line tuples on 0..d-1.  Composition convention everywhere:
(s*t)(x) = s(t(x)), i.e. in a written product the rightmost factor acts first.
A product written sigma_1 ... sigma_n tau_1 ... tau_b is therefore evaluated by
left-folding compose().

Transpositions are pairs (s, t) with s < t; monotonicity is always on t.
Exponential in d; intended for d <= ~6 and guarded by an explicit limit.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations as iter_permutations
from math import factorial

from .errors import DomainError, ResourceLimitError
from .partitions import (
    aut_count,
    check_partition,
    pad_to,
    sort_composition,
    strip_ones,
)

DEFAULT_ORACLE_LIMIT = 6


# ---------------------------------------------------------------------------
# permutation primitives


def identity(d: int):
    return tuple(range(d))


def compose(a, b):
    """(a*b)(x) = a(b(x))."""
    return tuple(a[b[x]] for x in range(len(a)))


def inverse(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def cycle_type(p):
    """Full cycle type (with 1-parts), weakly decreasing."""
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lens.append(n)
    return tuple(sorted(lens, reverse=True))


def cycles_of(p):
    """Cycles as tuples, each starting at its minimal point, ordered by that point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def transposition(d: int, s: int, t: int):
    p = list(range(d))
    p[s], p[t] = t, s
    return tuple(p)


@cache
def all_transpositions(d: int):
    """All (s, t, perm) with s < t."""
    return tuple(
        (s, t, transposition(d, s, t)) for t in range(1, d) for s in range(t)
    )


@cache
def all_perms(d: int):
    return tuple(iter_permutations(range(d)))


@cache
def perms_of_type(d: int, padded_type):
    return tuple(p for p in all_perms(d) if cycle_type(p) == padded_type)


def canonical_of_type(nu, d: int):
    """The block permutation (0..nu_1-1)(nu_1..nu_1+nu_2-1)... padded to d.

    Cycle k occupies consecutive points and maps x -> x+1 cyclically inside
    its block; cycle labels are positional (k-th block has length nu_k).
    """
    nu = tuple(nu)
    if sum(nu) > d:
        raise DomainError("partition too large for degree")
    full = pad_to(nu, d)
    p = list(range(d))
    start = 0
    for part in full:
        for i in range(part):
            p[start + i] = start + (i + 1) % part
        start += part
    return tuple(p)


# ---------------------------------------------------------------------------
# orbit bookkeeping


def orbit_partition(d: int, gens):
    """Orbits of the group generated by gens, as a frozenset of frozensets."""
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for g in gens:
        for x in range(d):
            union(x, g[x])
    groups = {}
    for x in range(d):
        groups.setdefault(find(x), []).append(x)
    return frozenset(frozenset(v) for v in groups.values())


def join_is_transitive(d: int, part_a, part_b) -> bool:
    """Whether the join of two orbit partitions is the full set {0..d-1}."""
    if len(part_a) == 1 or len(part_b) == 1:
        return True
    parent = {}
    blocks = list(part_a) + list(part_b)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(d):
        parent[x] = x
    for blk in blocks:
        it = iter(blk)
        first = next(it)
        for other in it:
            ra, rb = find(first), find(other)
            if ra != rb:
                parent[ra] = rb
    root = find(0)
    return all(find(x) == root for x in range(d))


# ---------------------------------------------------------------------------
# commutator tables

_pair_tables = {}


def commutator_pair_table(d: int):
    """Aggregate (alpha, beta) in S_d^2 by (commutator, orbit partition of <alpha,beta>).

    Returns {kappa: {orbit_partition: count}} with kappa = [alpha,beta].
    """
    if d in _pair_tables:
        return _pair_tables[d]
    table = {}
    perms = all_perms(d)
    for a in perms:
        a_inv = inverse(a)
        for b in perms:
            # [a,b] = a b a^-1 b^-1
            kappa = compose(compose(a, b), compose(a_inv, inverse(b)))
            orb = orbit_partition(d, (a, b))
            table.setdefault(kappa, {})
            table[kappa][orb] = table[kappa].get(orb, 0) + 1
    _pair_tables[d] = table
    return table


def commutator_tuple_table(d: int, g: int):
    """Same aggregation for products [a_1,b_1]...[a_g,b_g] of g commutators."""
    if g < 1:
        raise DomainError("g must be >= 1")
    table = commutator_pair_table(d)
    if g == 1:
        return table
    prev = commutator_tuple_table(d, g - 1)
    out = {}
    for k1, orbs1 in prev.items():
        for k2, orbs2 in table.items():
            kappa = compose(k1, k2)
            dest = out.setdefault(kappa, {})
            for p1, c1 in orbs1.items():
                for p2, c2 in orbs2.items():
                    joined = _join_partitions(d, p1, p2)
                    dest[joined] = dest.get(joined, 0) + c1 * c2
    return out


def _join_partitions(d: int, part_a, part_b):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blk in list(part_a) + list(part_b):
        it = iter(blk)
        first = next(it)
        for other in it:
            ra, rb = find(first), find(other)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for x in range(d):
        groups.setdefault(find(x), []).append(x)
    return frozenset(frozenset(v) for v in groups.values())


# ---------------------------------------------------------------------------
# Hurwitz spec


@dataclass(frozen=True)
class HurwitzSpec:
    """One triply mixed enumeration.

    Profiles are kept exactly as given (1-parts included if the caller wrote
    them); the class condition is up to 1-padding, so only their 1-free parts
    matter for the count.  k unconstrained transpositions, l weakly monotone,
    m strictly monotone; k+l+m must equal
    b = 2g'-2 - d(2g-2) + sum_i (l(mu^i) - |mu^i|).
    """

    base_genus: int
    source_genus: int
    degree: int
    profiles: tuple = ()
    k: int = 0
    l: int = 0
    m: int = 0
    connected: bool = True
    labeled: bool = False

    def __post_init__(self):
        if min(self.base_genus, self.source_genus, self.k, self.l, self.m) < 0:
            raise DomainError("genera and k, l, m must be nonnegative")
        if self.degree < 1:
            raise DomainError("degree must be positive")
        object.__setattr__(
            self, "profiles", tuple(check_partition(p) for p in self.profiles)
        )
        for p in self.profiles:
            if sum(p) > self.degree:
                raise DomainError(f"profile {p} exceeds degree {self.degree}")
        if self.k + self.l + self.m != self.b:
            raise DomainError(
                f"k+l+m = {self.k + self.l + self.m} but b = {self.b} for this spec"
            )

    @property
    def b(self) -> int:
        g, gp, d = self.base_genus, self.source_genus, self.degree
        corr = sum(len(p) - sum(p) for p in self.profiles)
        b = 2 * gp - 2 - d * (2 * g - 2) + corr
        if b < 0:
            raise DomainError(f"negative transposition count b = {b}")
        return b

    def padded_profiles(self):
        return tuple(pad_to(p, self.degree) for p in self.profiles)


@dataclass(frozen=True)
class FactorizationTuple:
    """One explicit witness tuple for a HurwitzSpec.

    sigmas: the profile permutations; taus: the b transpositions as (s, t)
    pairs with s < t; alphas/betas: the g handle permutations.  validate()
    checks the product relation and the monotone blocks.
    """

    spec: HurwitzSpec
    sigmas: tuple
    taus: tuple
    alphas: tuple = ()
    betas: tuple = ()

    def validate(self) -> bool:
        d = self.spec.degree
        if len(self.sigmas) != len(self.spec.profiles):
            raise DomainError("wrong number of profile permutations")
        if len(self.taus) != self.spec.b:
            raise DomainError("wrong number of transpositions")
        g = self.spec.base_genus
        if len(self.alphas) != g or len(self.betas) != g:
            raise DomainError("wrong number of handle permutations")
        for sig, prof in zip(self.sigmas, self.spec.padded_profiles()):
            if cycle_type(sig) != prof:
                raise DomainError(f"permutation has type {cycle_type(sig)}, "
                                  f"profile wants {prof}")
        lhs = identity(d)
        for sig in self.sigmas:
            lhs = compose(lhs, sig)
        for (s, t) in self.taus:
            if not 0 <= s < t < d:
                raise DomainError(f"bad transposition ({s}, {t})")
            lhs = compose(lhs, transposition(d, s, t))
        rhs = identity(d)
        for a, bb in zip(self.alphas, self.betas):
            rhs = compose(rhs, compose(compose(a, bb),
                                       compose(inverse(a), inverse(bb))))
        if lhs != rhs:
            raise DomainError("product relation fails")
        k, l, m = self.spec.k, self.spec.l, self.spec.m
        ts = [t for (_, t) in self.taus]
        for i in range(k, k + l - 1):
            if ts[i] > ts[i + 1]:
                raise DomainError("weakly monotone block violated")
        for i in range(k + l, k + l + m - 1):
            if ts[i] >= ts[i + 1]:
                raise DomainError("strictly monotone block violated")
        if self.spec.connected:
            gens = self.sigmas + tuple(
                transposition(d, s, t) for (s, t) in self.taus
            ) + self.alphas + self.betas
            if len(orbit_partition(d, gens)) != 1:
                raise DomainError("tuple is not transitive")
        return True


def source_genus_for(base_genus: int, degree: int, profiles, b: int) -> int:
    """Source genus implied by b transpositions; errors if not a nonneg integer."""
    corr = sum(len(check_partition(p)) - sum(p) for p in profiles)
    num = b + degree * (2 * base_genus - 2) - corr + 2
    if num % 2 != 0 or num < 0:
        raise DomainError(
            f"no valid source genus for b={b}, degree={degree}, profiles={profiles}"
        )
    return num // 2


# ---------------------------------------------------------------------------
# tau-block enumeration


def _tau_tuples(d: int, k: int, l: int, m: int):
    """Yield (perm_product, orbit_gens) over all admissible transposition blocks.

    Product order is tau_1 ... tau_b left-to-right; monotone blocks compare
    the larger moved point t only.
    """
    trans = all_transpositions(d)

    def block_free(count):
        if count == 0:
            yield ()
            return
        for rest in block_free(count - 1):
            for item in trans:
                yield rest + (item,)

    def block_monotone(count, strict):
        def rec(prev_t, left):
            if left == 0:
                yield ()
                return
            for item in trans:
                t = item[1]
                if prev_t is not None and (t < prev_t or (strict and t == prev_t)):
                    continue
                for rest in rec(t, left - 1):
                    yield (item,) + rest

        yield from rec(None, count)

    for blk_k in block_free(k):
        for blk_l in block_monotone(l, strict=False):
            for blk_m in block_monotone(m, strict=True):
                yield blk_k + blk_l + blk_m


def count_triply_mixed(spec: HurwitzSpec, oracle_limit: int = DEFAULT_ORACLE_LIMIT):
    """Exact (1/d!) * number of triply mixed factorizations of the given type.

    Transitivity is enforced iff spec.connected; the labeled variant multiplies
    by Aut of the profiles as given.  Never consults any cache: every call
    re-enumerates.
    """
    if spec.degree > oracle_limit:
        raise ResourceLimitError(
            f"degree {spec.degree} above oracle limit {oracle_limit}"
        )
    d = spec.degree
    g = spec.base_genus
    padded = spec.padded_profiles()

    comm_table = commutator_tuple_table(d, g) if g >= 1 else None

    def sigma_tuples(idx, prefix, gens):
        if idx == len(padded):
            yield prefix, gens
            return
        for s in perms_of_type(d, padded[idx]):
            yield from sigma_tuples(idx + 1, compose(prefix, s), gens + (s,))

    ident = identity(d)
    # aggregate the enumeration leaves by (product, orbit partition) so the
    # expensive commutator joins run once per distinct pair
    leaves = {}
    for sigma_prod, sigma_gens in sigma_tuples(0, ident, ()):
        for taus in _tau_tuples(d, spec.k, spec.l, spec.m):
            prod = sigma_prod
            for (_, _, tp) in taus:
                prod = compose(prod, tp)
            if g == 0 and prod != ident:
                continue
            if g >= 1 and prod not in comm_table:
                continue
            if spec.connected:
                gens = sigma_gens + tuple(tp for (_, _, tp) in taus)
                q = orbit_partition(d, gens)
            else:
                q = None
            key = (prod, q)
            leaves[key] = leaves.get(key, 0) + 1

    total = 0
    for (prod, q), mult in leaves.items():
        if g == 0:
            if spec.connected and len(q) != 1:
                continue
            total += mult
        else:
            by_orbit = comm_table[prod]
            if spec.connected:
                total += mult * sum(
                    c for p, c in by_orbit.items() if join_is_transitive(d, q, p)
                )
            else:
                total += mult * sum(by_orbit.values())

    if spec.labeled:
        for p in spec.profiles:
            total *= aut_count(p)
    return Fraction(total, factorial(d))


# ---------------------------------------------------------------------------
# specialized enumerators (independent implementations used as cross-checks)


def classical_hurwitz_count(
    base_genus, source_genus, d, profiles, connected=True, limit=DEFAULT_ORACLE_LIMIT
):
    """Classical Hurwitz numbers (no transposition blocks beyond the profiles)."""
    spec = HurwitzSpec(
        base_genus, source_genus, d, tuple(profiles), 0, 0, 0, connected
    )
    if spec.b != 0:
        raise DomainError("classical count here means zero extra transpositions")
    return count_triply_mixed(spec, limit)


def monotone_double_count(source_genus, mu, nu, strict, connected=True,
                          limit=DEFAULT_ORACLE_LIMIT):
    """(Strictly) monotone double Hurwitz number, enumerated directly.

    Counts (1/d!) * tuples (sigma_1, sigma_2, tau_1..tau_b) with
    sigma_1 sigma_2 tau_1...tau_b = id, class conditions up to 1-padding and
    the (strictly) monotone condition on the tau block.
    """
    mu, nu = sort_composition(mu), sort_composition(nu)
    if sum(mu) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    d = sum(mu)
    if d > limit:
        raise ResourceLimitError(f"degree {d} above oracle limit {limit}")
    b = 2 * source_genus - 2 + len(mu) + len(nu)
    if b < 0:
        return Fraction(0)
    ident = identity(d)
    total = 0
    for s1 in perms_of_type(d, pad_to(mu, d)):
        for s2 in perms_of_type(d, pad_to(nu, d)):
            prefix = compose(s1, s2)
            for taus in _tau_tuples(d, 0, 0 if strict else b, b if strict else 0):
                prod = prefix
                for (_, _, tp) in taus:
                    prod = compose(prod, tp)
                if prod != ident:
                    continue
                if connected:
                    gens = (s1, s2) + tuple(tp for (_, _, tp) in taus)
                    if len(orbit_partition(d, gens)) != 1:
                        continue
                total += 1
    return Fraction(total, factorial(d))


# ---------------------------------------------------------------------------
# monotone factorizations of a fixed target (cut-and-join side)


def count_monotone_of_fixed_target(mu, b: int, strict: bool = False,
                                   limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Monotone (or strictly monotone) transposition sequences with product a
    fixed permutation of full cycle type mu, transitive together with it.

    mu contains all its parts (1-parts included); the fixed permutation is the
    canonical block permutation, whose cycle labels are positional.
    """
    mu = check_partition(mu)
    d = sum(mu)
    if d < 1:
        raise DomainError("mu must be nonempty")
    if d > limit:
        raise ResourceLimitError(f"degree {d} above oracle limit {limit}")
    n = len(mu)
    # b = 2g-2+n+|mu| for some integer g >= 0
    g2 = b - (n + d - 2)
    if b < 0 or g2 < 0 or g2 % 2 != 0:
        raise DomainError(f"b={b} infeasible for mu={mu}")
    target = canonical_of_type(mu, d)
    trans = all_transpositions(d)
    total = 0

    def rec(prev_t, left, prod, gens):
        nonlocal total
        if left == 0:
            if prod != target:
                return
            if len(orbit_partition(d, gens + (target,))) != 1:
                return
            total += 1
            return
        for (s, t, tp) in trans:
            if prev_t is not None and (t < prev_t or (strict and t == prev_t)):
                continue
            rec(t, left - 1, compose(prod, tp), gens + (tp,))

    rec(None, b, identity(d), ())
    return total


# ---------------------------------------------------------------------------
# refined N numbers (direct count per the tuple conditions)


def oracle_N(variant: str, g: int, mu, nu, l: int, i: int,
             limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Direct count of refined monotone/strict tuples.

    Counts tuples (sigma_1 = canonical of type nu, tau_1..tau_b, sigma_2) with
    tau_b...tau_1 sigma_1 = sigma_2, exact cycle types nu and mu, joint
    transitivity, the (strictly) monotone condition, t_b = offset+l in the
    last nu-block, labeled cycles on sigma_2 with the cycle containing t_b
    labeled i.  b = 2g-2+len(mu)+len(nu); for b=0 the count is 1 exactly when
    mu = nu is a single cycle, at the slot (l = last part, i = 1).
    """
    mu, nu = check_partition(mu), check_partition(nu)
    if sum(mu) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    if variant not in ("monotone", "strict"):
        raise DomainError(f"unknown variant {variant}")
    d = sum(nu)
    if not (1 <= i <= len(mu)):
        raise DomainError(f"index i={i} out of range for mu={mu}")
    if not (1 <= l <= nu[-1]):
        raise DomainError(f"counter l={l} out of range for nu={nu}")
    b = 2 * g - 2 + len(mu) + len(nu)
    if g < 0 or b < 0:
        raise DomainError("infeasible genus")
    return _oracle_N_content(variant, mu[i - 1],
                             mu[: i - 1] + mu[i:], nu, l, b, d, limit)


def _oracle_N_content(variant, dist, rest, nu, l, b, d, limit):
    rest = tuple(sorted(rest, reverse=True))
    mu_sorted = tuple(sorted((dist,) + rest, reverse=True))
    if b == 0:
        ok = (mu_sorted == nu and len(nu) == 1 and dist == nu[0]
              and l == nu[-1])
        return 1 if ok else 0
    if b >= 2 and d > limit:
        raise ResourceLimitError(f"degree {d} above oracle limit {limit}")
    strict = variant == "strict"
    sigma1 = canonical_of_type(nu, d)
    offset = d - nu[-1]
    t_last = offset + (l - 1)  # 0-based point
    total = 0
    trans = all_transpositions(d)

    def finish(taus):
        nonlocal total
        prod = sigma1
        for tp in taus:
            prod = compose(tp, prod)  # tau_b ... tau_1 sigma_1, built left-mult
        if cycle_type(prod) != mu_sorted:
            return
        if len(orbit_partition(d, (sigma1,) + taus)) != 1:
            return
        # labeling factor: cycle containing t_b gets the distinguished label
        cyc_len = _cycle_len_through(prod, t_last)
        if cyc_len != dist:
            return
        remaining = list(mu_sorted)
        remaining.remove(cyc_len)
        if tuple(sorted(remaining, reverse=True)) != rest:
            return
        total += aut_count(rest)

    def rec(pos, prev_t, taus):
        # positions 1..b-1 free below t_last bound; position b pinned to t_last
        if pos == b:
            for s in range(t_last):
                finish(taus + (transposition(d, s, t_last),))
            return
        for (s, t, tp) in trans:
            if t > t_last or (strict and t >= t_last):
                continue
            if prev_t is not None and (t < prev_t or (strict and t == prev_t)):
                continue
            rec(pos + 1, t, taus + (tp,))

    rec(1, None, ())
    return total


def _cycle_len_through(p, x):
    n, j = 0, x
    while True:
        j = p[j]
        n += 1
        if j == x:
            return n


def oracle_N_aggregate(variant, g, mu, nu, limit=DEFAULT_ORACLE_LIMIT):
    """Sum of oracle_N over all slots (l, i)."""
    mu, nu = check_partition(mu), check_partition(nu)
    total = 0
    for i in range(1, len(mu) + 1):
        for l in range(1, nu[-1] + 1):
            total += oracle_N(variant, g, mu, nu, l, i, limit)
    return total


# ---------------------------------------------------------------------------
# commutator cycle-type counts


def count_commutator_type(g: int, nu, d: int,
                          limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Number of 2g-tuples in S_d^2g whose commutator product has padded type nu."""
    if g < 1:
        raise DomainError("g must be >= 1")
    nu = check_partition(nu)
    if sum(nu) > d:
        raise DomainError("|nu| > d")
    if d > limit:
        raise ResourceLimitError(f"degree {d} above oracle limit {limit}")
    target = pad_to(strip_ones(nu), d)
    table = commutator_tuple_table(d, g)
    total = 0
    for kappa, orbs in table.items():
        if cycle_type(kappa) == target:
            total += sum(orbs.values())
    return total
