"""Refined monotone / strictly monotone double Hurwitz numbers: the N-number
recursion, aggregation to double Hurwitz numbers, and assembly of
arbitrary-base-genus numbers through commutator counts.

N-values are keyed by content: (variant, g, distinguished part, remaining
parts sorted, nu, counter l).  The recursion strictly decreases the
transposition count b = 2g-2+l(mu)+l(nu); b in {0,1} is anchored on the
direct enumeration in symgroup.oracle_N, the recursion runs for b >= 2.
"""

from fractions import Fraction
from math import factorial

from .errors import DomainError
from .partitions import aut_count, check_partition, class_size
from .symgroup import _oracle_N_content, DEFAULT_ORACLE_LIMIT
from .characters import commutator_count_by_characters, potential_log

# Theta(0) = 1 by convention.


def _theta(t: int) -> int:
    return 1 if t >= 0 else 0


_n_cache = {}

# Resolution of the strict inner-bound reading: "label" bounds the inner
# counter by the part at the largest label in J (the last part of nu_J);
# "part" uses the largest part of nu_J.  Both agree because N vanishes for
# counters beyond the last part; "label" is the frozen default.
STRICT_INNER_BOUND = "label"


def N_value(variant: str, g: int, dist: int, rest, nu, l: int,
            inner_bound: str = None) -> int:
    """Refined count N^{variant; l, i}_g(dist | rest, nu), content-keyed."""
    if variant not in ("monotone", "strict"):
        raise DomainError(f"unknown variant {variant}")
    nu = check_partition(nu)
    rest = tuple(sorted(rest, reverse=True))
    if dist < 1:
        raise DomainError("distinguished part must be >= 1")
    if dist + sum(rest) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    if inner_bound is None:
        inner_bound = STRICT_INNER_BOUND
    return _N(variant, g, dist, rest, nu, l, inner_bound)


def _N(variant, g, dist, rest, nu, l, inner_bound) -> int:
    if g < 0 or not nu:
        return 0
    if l < 1 or l > nu[-1]:
        return 0  # t_b = offset + l must stay inside the last block
    if dist < 1 or dist + sum(rest) != sum(nu):
        return 0
    n_mu = 1 + len(rest)
    b = 2 * g - 2 + n_mu + len(nu)
    if b < 0:
        return 0
    key = (variant, g, dist, rest, nu, l, inner_bound)
    hit = _n_cache.get(key)
    if hit is not None:
        return hit
    d = sum(nu)
    if b <= 1:
        val = _oracle_N_content(variant, dist, rest, nu, l, b, d,
                                limit=10**9)  # b<=1 direct count is polynomial
        _n_cache[key] = val
        return val

    strict = variant == "strict"
    p_hi = l - 1 if strict else l
    total = 0

    # cut: the last transposition merged the distinguished cycle with another
    if _theta(dist + l - nu[-1] - 1):
        for j, mj in enumerate(rest):
            sub_rest = rest[:j] + rest[j + 1:]
            for p in range(1, p_hi + 1):
                total += _N(variant, g, dist + mj, sub_rest, nu, p, inner_bound)

    # redundant join: the last transposition cut the distinguished cycle
    for alpha in range(1, dist):
        beta = dist - alpha
        new_rest = tuple(sorted(rest + (beta,), reverse=True))
        for p in range(1, p_hi + 1):
            total += beta * _N(variant, g - 1, alpha, new_rest, nu, p, inner_bound)

    # essential join: the factorization splits into two transitive pieces
    n = len(nu)
    for alpha in range(1, dist):
        beta = dist - alpha
        for g1 in range(0, g + 1):
            g2 = g - g1
            for imask in range(1 << len(rest)):
                I1 = tuple(rest[i] for i in range(len(rest)) if (imask >> i) & 1)
                I2 = tuple(rest[i] for i in range(len(rest)) if not (imask >> i) & 1)
                for jmask in range(1 << (n - 1)):
                    J = tuple(i for i in range(n - 1) if (jmask >> i) & 1)
                    Jc = tuple(i for i in range(n) if i not in J)
                    nu_J = tuple(nu[i] for i in J)
                    nu_Jc = tuple(nu[i] for i in Jc)
                    if alpha + sum(I1) != sum(nu_Jc):
                        continue
                    if beta + sum(I2) != sum(nu_J):
                        continue
                    if not nu_J:
                        continue
                    second = _second_factor(variant, g2, beta, I2, nu_J, inner_bound)
                    if second == 0:
                        continue
                    I1s = tuple(sorted(I1, reverse=True))
                    first_sum = sum(
                        _N(variant, g1, alpha, I1s, nu_Jc, p, inner_bound)
                        for p in range(1, p_hi + 1)
                    )
                    # a transposition-free first piece imposes no monotonicity
                    # constraint against tau_b; its conventional slot sits at
                    # p = last part of nu_Jc, which the p-bound may miss
                    b1 = 2 * g1 - 2 + 1 + len(I1s) + len(nu_Jc)
                    if b1 == 0 and nu_Jc[-1] > p_hi:
                        first_sum += _N(variant, g1, alpha, I1s, nu_Jc,
                                        nu_Jc[-1], inner_bound)
                    total += beta * first_sum * second

    _n_cache[key] = total
    return total


def _second_factor(variant, g2, beta, I2, nu_J, inner_bound) -> int:
    """Full (l, i)-aggregate over the second piece.

    The second piece carries no tail condition: its final transposition may
    sit in any of its cycles, so every labeling position is summed, not just
    the beta slot.  The counter bound is the last part of nu_J under the
    "label" reading of nu_max(J), the largest part under the "part" reading;
    both agree because the refined counts vanish beyond the last part.
    """
    if variant == "monotone" or inner_bound == "label":
        hi = nu_J[-1]
    else:  # strict with the "largest part" reading
        hi = max(nu_J)
    parts = tuple(sorted(I2 + (beta,), reverse=True))
    total = 0
    for i in range(len(parts)):
        rest2 = parts[:i] + parts[i + 1:]
        for p in range(1, hi + 1):
            total += _N(variant, g2, parts[i], rest2, nu_J, p, inner_bound)
    return total


def N_aggregate(variant: str, g: int, mu, nu) -> int:
    """Sum of N_value over all (l, i) slots."""
    mu, nu = check_partition(mu), check_partition(nu)
    total = 0
    for i in range(len(mu)):
        rest = mu[:i] + mu[i + 1:]
        for l in range(1, nu[-1] + 1):
            total += N_value(variant, g, mu[i], rest, nu, l)
    return total


def double_hurwitz(variant: str, g: int, mu, nu) -> Fraction:
    """Connected (strictly) monotone double Hurwitz number for source genus g.

    h = (|C_nu| / d!) * sum_{l,i} N / Aut(mu): the unlabeled normalization,
    matching the g = 0 base specialization of the triply mixed counts.
    """
    mu, nu = check_partition(mu), check_partition(nu)
    if sum(mu) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    d = sum(mu)
    agg = N_aggregate(variant, g, mu, nu)
    return Fraction(class_size(nu, d) * agg, factorial(d) * aut_count(mu))


def disconnected_double(variant: str, mu, nu, b: int, qmax_unused=None) -> Fraction:
    """Disconnected double Hurwitz number with b transpositions, by the
    exponential formula over connected pieces."""
    mu, nu = check_partition(mu), check_partition(nu)
    if sum(mu) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    d = sum(mu)
    mu1, nu1 = _strip(mu), _strip(nu)
    kl = (0, b, 0) if variant == "monotone" else (0, 0, b)
    target = (kl[0], kl[1], kl[2], (mu1, nu1), d)
    disconnected = {}
    from .characters import subsectors

    for s in subsectors(target):
        k1, l1, m1, (pmu, pnu), d1 = s
        if d1 == 0:
            continue
        b1 = l1 + m1
        disconnected[s] = _connected_sector(variant, pmu, pnu, b1, d1)
    # potential_log wants disconnected inputs; build them from connected by exp
    # instead, assemble the disconnected target directly
    return _exp_at(disconnected, target)


def _strip(p):
    return tuple(x for x in p if x != 1)


def _connected_sector(variant, pmu, pnu, b, d) -> Fraction:
    """Connected double number for 1-free profile parts on degree d."""
    if d == 0 or sum(pmu) > d or sum(pnu) > d:
        return Fraction(0)
    mu_full = tuple(sorted(pmu, reverse=True)) + (1,) * (d - sum(pmu))
    nu_full = tuple(sorted(pnu, reverse=True)) + (1,) * (d - sum(pnu))
    two_g = b + 2 - len(mu_full) - len(nu_full)
    if two_g < 0 or two_g % 2:
        return Fraction(0)
    return double_hurwitz(variant, two_g // 2, mu_full, nu_full)


def _exp_at(connected, target) -> Fraction:
    """Disconnected value at `target` from connected sector values (exp)."""
    from .characters import _sector_product

    max_d = target[4]
    total = Fraction(0)
    power = {k: Fraction(v) for k, v in connected.items() if v}
    r = 1
    fact = 1
    while power and r <= max_d:
        total += power.get(target, Fraction(0)) / fact
        nxt = {}
        for s1, v1 in power.items():
            if s1[4] >= max_d:
                continue
            for s2, v2 in connected.items():
                if v2 == 0 or s1[4] + s2[4] > max_d:
                    continue
                c, s = _sector_product(s1, s2)
                if _fits(s, target):
                    nxt[s] = nxt.get(s, Fraction(0)) + c * v1 * v2
        power = nxt
        r += 1
        fact *= r
    return total


def _fits(s, t):
    if s[4] > t[4] or s[0] > t[0] or s[1] > t[1] or s[2] > t[2]:
        return False
    for a, b in zip(s[3], t[3]):
        ca = {}
        for x in a:
            ca[x] = ca.get(x, 0) + 1
        cb = {}
        for x in b:
            cb[x] = cb.get(x, 0) + 1
        if any(ca[x] > cb.get(x, 0) for x in ca):
            return False
    return True


def base_g_assembly(variant: str, base_genus: int, source_genus: int, mu, d: int) -> Fraction:
    """Disconnected (strictly) monotone base-g Hurwitz number of degree d.

    H^{bullet,g} = sum_nu h^bullet(mu, nu) A_g(nu) / |C_nu| with the
    commutator counts A_g from the character formula and h^bullet assembled
    from the N-recursion's connected double numbers.
    """
    if base_genus < 1:
        raise DomainError("base genus must be >= 1 here")
    mu = check_partition(mu)
    if sum(mu) > d:
        raise DomainError("|mu| > d")
    mu_full = mu + (1,) * (d - sum(mu))
    corr = len(mu_full) - d
    b = 2 * source_genus - 2 - d * (2 * base_genus - 2) + corr
    if b < 0:
        raise DomainError("negative transposition count")
    from .partitions import enumerate_partitions

    total = Fraction(0)
    for nu in enumerate_partitions(d):
        h = disconnected_double(variant, mu_full, nu, b)
        if h == 0:
            continue
        a = commutator_count_by_characters(base_genus, nu, d)
        total += h * Fraction(a, class_size(nu, d))
    return total
