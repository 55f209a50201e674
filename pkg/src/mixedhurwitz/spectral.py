"""CEO topological recursion on the curve x = (z-1)^2/z, y = z/(z-1)^3.

Multidifferentials are stored with the dz's stripped as TensorSum values; the
deck involution is sigma(z) = 1/z, and every sigma-pullback goes through the
single helper RF1.sigma_pullback(), which carries the d(1/z)/dz = -1/z^2
chain factor.  Residues are taken at z = -1 only (the z = 1 residue does not
contribute for this curve); they are computed by exact local expansion
z = -1 + t with coefficients in a ring of per-variable rational functions.

Conventions: x = (z-1)^2/z (the normalization fixed by x(1/z) = x(z));
extraction at infinity uses u = 1/z, where x = (1-u)^2/u.
"""

from fractions import Fraction
from functools import cache
from math import comb

from .errors import DomainError
from .partitions import check_partition
from .ratfun import RF1, Poly1, MultiPoly, TensorSum, laurent_at_zero
from .symgroup import count_monotone_of_fixed_target

# ---------------------------------------------------------------------------
# spectral data


def curve_x() -> RF1:
    return RF1(Poly1([1, -2, 1]), Poly1([0, 1]))  # (z-1)^2/z


def curve_y() -> RF1:
    return RF1(Poly1([0, 1]), Poly1([-1, 3, -3, 1]))  # z/(z-1)^3


def curve_dx() -> RF1:
    return RF1(Poly1([-1, 0, 1]), Poly1([0, 0, 1]))  # (z^2-1)/z^2


def kernel_z_part() -> RF1:
    """z(z-1)^3 / (2(z+1)): the part of the recursion kernel depending on z only."""
    num = Poly1([0, 1]) * Poly1([-1, 1]) * Poly1([-1, 1]) * Poly1([-1, 1])
    den = Poly1([2, 2])
    return RF1(num, den)


def spectral_data():
    """(x, y, kernel z-part, sigma) with sigma the reciprocal involution."""
    return curve_x(), curve_y(), kernel_z_part(), "reciprocal"


def omega01() -> TensorSum:
    """omega_{0,1} = y dx, stripped: (z+1)/(z(z-1)^2)."""
    f = curve_y() * curve_dx()
    t = TensorSum(1)
    t.add_term(1, (f,))
    return t


# omega_{0,2} = B = dz1 dz2/(z1-z2)^2 is kept symbolic (not a TensorSum);
# the recursion and the extraction treat it through dedicated code paths.
OMEGA02 = "bergman"


# ---------------------------------------------------------------------------
# local expansion at z = -1 with per-variable rational coefficients
#
# Series coefficients are dicts {key: Fraction} where a key is a sorted tuple
# of (slot, RF1) pairs, at most one per slot (a pure tensor).  Slot numbers
# refer to the final variable positions of the omega being built.

_EMPTY = ()


def _key_mul(k1, k2):
    if not k1:
        return k2
    if not k2:
        return k1
    d = dict(k1)
    for slot, f in k2:
        if slot in d:
            d[slot] = d[slot] * f
        else:
            d[slot] = f
    return tuple(sorted(d.items()))


def _coef_mul(c1, c2):
    out = {}
    for k1, v1 in c1.items():
        for k2, v2 in c2.items():
            k = _key_mul(k1, k2)
            nv = out.get(k, Fraction(0)) + v1 * v2
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


class LocalSeries:
    """Finite Laurent slice sum_{i>=val} coeffs[i-val] t^i with dict coefficients."""

    __slots__ = ("val", "coeffs")

    def __init__(self, val, coeffs):
        self.val = val
        self.coeffs = coeffs  # list of {key: Fraction}

    def mul(self, other, keep):
        """Product keeping `keep` terms from the combined valuation."""
        val = self.val + other.val
        out = [dict() for _ in range(keep)]
        for i, c1 in enumerate(self.coeffs):
            if i >= keep:
                break
            for j, c2 in enumerate(other.coeffs):
                if i + j >= keep:
                    break
                prod = _coef_mul(c1, c2)
                dest = out[i + j]
                for k, v in prod.items():
                    nv = dest.get(k, Fraction(0)) + v
                    if nv:
                        dest[k] = nv
                    else:
                        dest.pop(k, None)
        return LocalSeries(val, out)

    def coefficient(self, power):
        idx = power - self.val
        if idx < 0 or idx >= len(self.coeffs):
            return {}
        return self.coeffs[idx]


def expand_rf_at(rf: RF1, center, nterms) -> LocalSeries:
    """Expansion of a scalar rational function about z = center."""
    num = rf.num.taylor_shift(center)
    den = rf.den.taylor_shift(center)
    vn = num.valuation()
    if vn is None:
        return LocalSeries(0, [dict() for _ in range(nterms)])
    vd = den.valuation()
    val = vn - vd
    unit = Poly1(den.c[vd:])
    inv = [Fraction(0)] * nterms
    inv[0] = Fraction(1) / unit.c[0]
    for i in range(1, nterms):
        acc = Fraction(0)
        for j in range(1, i + 1):
            if j < len(unit.c):
                acc += unit.c[j] * inv[i - j]
        inv[i] = -acc / unit.c[0]
    a = num.c[vn:]
    coeffs = []
    for i in range(nterms):
        tot = Fraction(0)
        for j in range(min(i + 1, len(a))):
            tot += a[j] * inv[i - j]
        coeffs.append({_EMPTY: tot} if tot else {})
    return LocalSeries(val, coeffs)


def expand_linear_power(slot, a: RF1, b: RF1, p: int, scalar, nterms) -> LocalSeries:
    """Expansion of scalar / (a + b t)^p where a, b are RF1 in the slot variable.

    (a + bt)^-p = sum_k (-1)^k C(p+k-1, k) b^k a^{-p-k} t^k.
    """
    coeffs = []
    a_inv = a.inverse()
    a_pow = a_inv
    for _ in range(p - 1):
        a_pow = a_pow * a_inv
    b_pow = RF1.const(1)
    for k in range(nterms):
        c = Fraction(scalar) * (-1) ** k * comb(p + k - 1, k)
        f = b_pow * a_pow
        coeffs.append({((slot, f),): c} if not f.is_zero() and c else {})
        b_pow = b_pow * b
        a_pow = a_pow * a_inv
    return LocalSeries(0, coeffs)


# the four bifactor shapes that occur, all expanded at z = -1 + t


def factor_kernel_z1(slot, nterms):
    """1/((z1 - z)(z1 z - 1)) at z = -1+t, slot = the z1 position."""
    w = RF1(Poly1([0, 1]), Poly1([1]))  # z1
    one = RF1.const(1)
    # 1/(z1 - z): a = z1+1, b = -1
    f1 = expand_linear_power(slot, w + one, RF1.const(-1), 1, 1, nterms)
    # 1/(z1 z - 1): a = -(z1+1), b = z1
    f2 = expand_linear_power(slot, (w + one) * Fraction(-1), w, 1, 1, nterms)
    return f1.mul(f2, nterms)


def factor_b_direct(slot, nterms):
    """omega_{0,2}(z, z_j) stripped: 1/(z - z_j)^2 at z = -1+t."""
    w = RF1(Poly1([0, 1]), Poly1([1]))
    a = (w + RF1.const(1)) * Fraction(-1)  # -(1+z_j)
    return expand_linear_power(slot, a, RF1.const(1), 2, 1, nterms)


def factor_b_sigma(slot, nterms):
    """omega_{0,2}(sigma(z), z_j) stripped incl. the chain factor: -1/(1 - z z_j)^2."""
    w = RF1(Poly1([0, 1]), Poly1([1]))
    a = w + RF1.const(1)  # (1+z_j)
    return expand_linear_power(slot, a, -w, 2, -1, nterms)


def b_self_sigma() -> RF1:
    """omega_{0,2}(z, sigma(z)) with the chain factor: -1/((z-1)^2 (z+1)^2)."""
    den = Poly1([-1, 1]) * Poly1([-1, 1]) * Poly1([1, 1]) * Poly1([1, 1])
    return RF1(Poly1([-1]), den)


# ---------------------------------------------------------------------------
# the recursion

_omega_cache = {}


def ceo_omega(g: int, n: int) -> TensorSum:
    """The multidifferential omega_{g,n} (dz's stripped) for 2g-2+n > 0."""
    if n < 1 or g < 0:
        raise DomainError("need n >= 1, g >= 0")
    if 2 * g - 2 + n <= 0:
        raise DomainError("(0,1) and (0,2) are initial data, not recursion output")
    key = (g, n)
    if key in _omega_cache:
        return _omega_cache[key]
    out = TensorSum(n)
    _accumulate_bracket(out, g, n)
    out.compact()
    _omega_cache[key] = out
    return out


def _omega_or_special(g, n):
    """Stored tensor for stable (g,n); OMEGA02 sentinel for (0,2); None for (0,1)."""
    if (g, n) == (0, 1):
        return None
    if (g, n) == (0, 2):
        return OMEGA02
    return ceo_omega(g, n)


def _tensor_terms_z_sigma(om: TensorSum, z_slots, ext_map):
    """Split a tensor omega into (z-factor RF1, external key) pieces.

    z_slots: list of (slot index in om, apply_sigma) to fold into the z factor;
    ext_map: {slot in om: final slot} for the rest.
    """
    out = []
    for factors, coef in om.terms.items():
        zf = RF1.const(1)
        for idx, sig in z_slots:
            f = factors[idx]
            zf = zf * (f.sigma_pullback() if sig else f)
        key = []
        for idx, dest in ext_map.items():
            key.append((dest, factors[idx]))
        out.append((coef, zf, tuple(sorted(key))))
    return out


def _accumulate_bracket(out: TensorSum, g: int, n: int):
    """Res_{z->-1} K(z1, z) [ omega_{g-1,n+1}(z, sigma z, rest) + primed sum ]."""
    kz = kernel_z_part()
    ext = list(range(1, n))  # final slots for z_2..z_n (0-based final slots 1..n-1)

    # each bracket contribution is a list of "pieces"; a piece is either
    # ("rf", RF1 in z) or ("pre", LocalSeriesFactory) plus an external key
    contributions = []

    # genus-reduction term
    if g >= 1:
        sub = _omega_or_special(g - 1, n + 1)
        if sub == OMEGA02:
            # only for (g,n) = (1,1): B(z, sigma z) with chain factor
            contributions.append(([("rf", b_self_sigma())], (), Fraction(1)))
        elif sub is not None:
            # om slots: 0 -> z, 1 -> sigma(z), 2..n -> final slots 1..n-1
            pieces = _tensor_terms_z_sigma(
                sub, [(0, False), (1, True)],
                {i: i - 1 for i in range(2, n + 1)},
            )
            for coef, zf, key in pieces:
                contributions.append(([("rf", zf)], key, coef))

    # primed splitting sum
    for g1 in range(0, g + 1):
        g2 = g - g1
        for subset in _subsets(ext):
            I = subset
            J = tuple(s for s in ext if s not in subset)
            n1, n2 = len(I) + 1, len(J) + 1
            if (g1, n1) == (0, 1) or (g2, n2) == (0, 1):
                continue
            om1 = _omega_or_special(g1, n1)
            om2 = _omega_or_special(g2, n2)
            piece_sets_1 = _half_pieces(om1, I, sigma=False)
            piece_sets_2 = _half_pieces(om2, J, sigma=True)
            for c1, p1, k1 in piece_sets_1:
                for c2, p2, k2 in piece_sets_2:
                    contributions.append((p1 + p2, _key_mul(k1, k2), c1 * c2))

    # now take residues
    for pieces, ext_key, coef in contributions:
        res = _residue_with_kernel(pieces)
        for key, val in res.items():
            total_key = _key_mul(key, ext_key)
            _emit(out, n, total_key, coef * val)


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield tuple(items[i] for i in range(len(items)) if (mask >> i) & 1)


def _half_pieces(om, ext_slots, sigma: bool):
    """Pieces for omega_{gx,|ext|+1}(z or sigma z, z_ext)."""
    if om == OMEGA02:
        slot = ext_slots[0]
        factory = ("b_sigma", slot) if sigma else ("b_direct", slot)
        return [(Fraction(1), [factory], ())]
    pieces = []
    ext_map = {i + 1: ext_slots[i] for i in range(len(ext_slots))}
    for coef, zf, key in _tensor_terms_z_sigma(om, [(0, sigma)], ext_map):
        pieces.append((coef, [("rf", zf)], key))
    return pieces


def _residue_with_kernel(pieces):
    """[t^{-1}] of kernel_z * (-1 for nothing) * prod(pieces) with the z1 kernel
    bifactor; the sigma chain factors already live in the pieces."""
    # assemble factor list: kernel scalar part, kernel z1 bifactor, pieces
    rf_product = kernel_z_part()
    specials = []
    for p in pieces:
        if p[0] == "rf":
            rf_product = rf_product * p[1]
        else:
            specials.append(p)
    # valuation accounting to choose expansion length
    numv = _order_at_minus1(rf_product.num)
    denv = _order_at_minus1(rf_product.den)
    val = numv - denv
    keep = max(0, -val) + 1  # specials have valuation 0
    series = expand_rf_at(rf_product, Fraction(-1), keep)
    series = LocalSeries(series.val, series.coeffs)
    for sp in specials:
        kind, slot = sp
        fac = factor_b_sigma(slot, keep) if kind == "b_sigma" else factor_b_direct(slot, keep)
        series = series.mul(fac, keep)
    kz1 = factor_kernel_z1(0, keep)
    series = series.mul(kz1, keep)
    return series.coefficient(-1)


def _order_at_minus1(poly: Poly1) -> int:
    shifted = poly.taylor_shift(Fraction(-1))
    v = shifted.valuation()
    return 0 if v is None else v


def _emit(out: TensorSum, n, key, coef):
    """Key (slot, RF1) pairs -> full factor tuple with constant 1 elsewhere."""
    factors = [RF1.const(1)] * n
    for slot, f in key:
        factors[slot] = factors[slot] * f
    out.add_term(coef, factors)


# ---------------------------------------------------------------------------
# extraction of the correlators


def _extract_one(f: RF1, mu_i: int) -> Fraction:
    """Res_{z->inf} x(z)^mu f(z) dz via u = 1/z: coefficient of u^(mu+1) in
    (1-u)^(2 mu) u^(-mu) f(1/u) -- i.e. [u^(1+2mu... ] handled exactly."""
    g = f.subs_reciprocal()
    pw = Poly1([1, -1])  # (1-u)
    acc = Poly1([1])
    for _ in range(2 * mu_i):
        acc = acc * pw
    h = RF1(g.num * acc, g.den)
    return laurent_at_zero(h.num, h.den, mu_i + 1)


def extract_C(omega, mu) -> Fraction:
    """C_{g,n}(mu) = residues at infinity of prod x(z_i)^{mu_i} omega.

    omega is a TensorSum, omega01(), or the OMEGA02 sentinel (Bergman kernel,
    whose double-pole part extracts to zero).
    """
    mu = tuple(mu)
    if any(m < 1 for m in mu):
        raise DomainError("all mu_i must be >= 1")
    if omega == OMEGA02:
        if len(mu) != 2:
            raise DomainError("Bergman kernel has two slots")
        return _extract_bergman(mu[0], mu[1])
    if omega.n != len(mu):
        raise DomainError(f"omega has {omega.n} slots, mu has {len(mu)}")
    total = Fraction(0)
    for factors, coef in omega.terms.items():
        prod = coef
        for f, m in zip(factors, mu):
            prod *= _extract_one(f, m)
            if prod == 0:
                break
        total += prod
    return total


def _extract_bergman(mu1: int, mu2: int) -> Fraction:
    """Iterated extraction of 1/(z1-z2)^2 (= omega_{0,2} with dz's stripped)."""
    # inner residue in z1: coefficient of u^(mu1+1) in (1-u)^(2mu1) u^(-mu1) *
    # 1/((1/u) - z2)^2 = u^2/(1 - u z2)^2; expansion has Poly1-in-z2 coeffs
    keep = mu1 + 2 + 1
    # (1-u)^(2 mu1) * u^(2 - mu1) * sum_k (k+1) z2^k u^k ; need coeff of u^(mu1+1)
    pw = Poly1([1, -1])
    acc = Poly1([1])
    for _ in range(2 * mu1):
        acc = acc * pw
    # coefficient of u^(mu1+1) of acc(u) * u^(2-mu1) * sum (k+1) (z2 u)^k:
    # sum over k: acc[mu1+1 - (2-mu1) - k] * (k+1) z2^k
    poly_z2 = {}
    base = mu1 - 1  # [u^(1+mu1)] of (1-u)^(2mu1) u^2 sum_k (k+1)(z2 u)^k
    for k in range(0, base + 1):
        idx = base - k
        if 0 <= idx < len(acc.c) and acc.c[idx]:
            poly_z2[k] = acc.c[idx] * (k + 1)
    inner = Poly1([poly_z2.get(e, 0) for e in range(max(poly_z2, default=0) + 1)])
    outer = RF1(inner, Poly1([1]))
    return _extract_one(outer, mu2)


# ---------------------------------------------------------------------------
# cut-and-join recursion and closed forms


@cache
def cut_and_join_C(g: int, n: int, mu) -> Fraction:
    """C_{g,n}(mu) by the cut-and-join recursion with C_{0,1}(1) = 1."""
    mu = tuple(mu)
    if len(mu) != n or any(m < 1 for m in mu):
        raise DomainError("mu must have n positive parts")
    if g < 0:
        return Fraction(0)
    b = 2 * g - 2 + n + sum(mu)
    if b < 0:
        return Fraction(0)
    if (g, n, mu) == (0, 1, (1,)):
        return Fraction(1)
    if b == 0:
        return Fraction(0)
    mu1, rest = mu[0], mu[1:]
    total = Fraction(0)
    # join terms
    for j in range(len(rest)):
        merged = (mu1 + rest[j],) + rest[:j] + rest[j + 1:]
        total += rest[j] * cut_and_join_C(g, n - 1, merged)
    # genus reduction
    for alpha in range(1, mu1):
        beta = mu1 - alpha
        total += cut_and_join_C(g - 1, n + 1, (alpha, beta) + rest)
    # splitting
    for alpha in range(1, mu1):
        beta = mu1 - alpha
        for g1 in range(0, g + 1):
            g2 = g - g1
            for subset in _subsets(range(len(rest))):
                I = tuple(rest[i] for i in subset)
                J = tuple(rest[i] for i in range(len(rest)) if i not in subset)
                total += cut_and_join_C(g1, 1 + len(I), (alpha,) + I) * \
                    cut_and_join_C(g2, 1 + len(J), (beta,) + J)
    return -total


def closed_form_C(level, mu) -> Fraction:
    """The (0,1), (0,2), (0,3) closed forms."""
    mu = tuple(mu)
    if level == (0, 1):
        (m,) = mu
        return Fraction((-1) ** (m - 1), m) * comb(2 * m - 2, m - 1)
    if level == (0, 2):
        m1, m2 = mu
        return (Fraction((-1) ** (m1 + m2)) * 2 * m1 * m2 * comb(2 * m1 - 1, m1)
                * comb(2 * m2 - 1, m2)) / (m1 + m2)
    if level == (0, 3):
        sign = (-1) ** (sum(mu) - 1)
        out = Fraction(8 * sign)
        for m in mu:
            out *= m * comb(2 * m - 1, m)
        return out
    raise DomainError(f"no closed form for level {level}")


def oracle_C(g: int, n: int, mu, limit=6) -> Fraction:
    """(-1)^(n+|mu|) times the brute-force monotone factorization count."""
    mu = tuple(sorted(mu, reverse=True))
    b = 2 * g - 2 + n + sum(mu)
    m = count_monotone_of_fixed_target(check_partition(mu), b, strict=False, limit=limit)
    return Fraction((-1) ** (n + sum(mu)) * m)


# ---------------------------------------------------------------------------
# invariant helpers


def sigma_antisymmetry_defect(om: TensorSum) -> TensorSum:
    """om(1/z1, rest)*d(1/z1)/dz1 + om(z1, rest): zero for stable (g,n)."""
    pulled = om.apply_slot(0, lambda f: f.sigma_pullback())
    return pulled + om


def pole_structure(om: TensorSum):
    """Per-variable denominator factorization over {z, z-1, z+1}.

    Returns a list of dicts {"z":a, "z-1":b, "z+1":c} after reducing the
    combined fraction; raises DomainError if any other factor survives.
    """
    num, dens = om.combine()
    out = []
    for i, d in enumerate(dens):
        facs = {"z": 0, "z-1": 0, "z+1": 0}
        for label, root in (("z", Fraction(0)), ("z-1", Fraction(1)), ("z+1", Fraction(-1))):
            while True:
                q, r = d.divmod(Poly1([-root, 1]))
                if r.is_zero() and not d.is_zero() and d.degree() >= 1:
                    # cancel against the numerator when possible
                    cancelled = num.divide_linear(i, root)
                    if cancelled is not None:
                        num = cancelled
                        d = q
                        continue
                    facs[label] += 1
                    d = q
                    continue
                break
        if d.degree() > 0:
            raise DomainError(f"unexpected denominator factor {d} in variable {i}")
        out.append(facs)
    return out
