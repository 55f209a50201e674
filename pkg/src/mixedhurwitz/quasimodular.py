"""Eisenstein series, q-brackets, shifted-symmetric generators and exact
fitting of q-series into the ring Q[P,Q,R] of level-1 quasimodular forms.

Conventions: P, Q, R are the weight 2, 4, 6 normalized Eisenstein series with
constant term 1 (P = 1 - 24 sum sigma_1(n) q^n, etc.).  The Laurent expansion
of 1/(2 sinh(z/2)) is indexed from k = 0: c_0 = 1 is the z^{-1} coefficient,
so c_1 = 0, c_2 = -1/24, c_3 = 0, c_4 = 7/5760.  That normalization makes
<Q_2>_q = -P/24 and is pinned independently by the tropical correspondence
tests.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError
from .partitions import check_partition, enumerate_partitions, partition_count
from .series import QSeries, sinh_reciprocal, two_sinh_half, exp_az
from .util import rat_str

# ---------------------------------------------------------------------------
# Eisenstein series

_BERNOULLI = {2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42)}
_EISEN_SCALE = {2: -24, 4: 240, 6: -504}


def _sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k: int, order: int) -> QSeries:
    """q-expansion of P (k=2), Q (k=4) or R (k=6) to the given order."""
    if k not in _EISEN_SCALE:
        raise DomainError(f"unsupported Eisenstein weight {k}")
    scale = _EISEN_SCALE[k]
    const = -_BERNOULLI[k] / (2 * k) * scale
    assert const == 1
    coeffs = [Fraction(1)] + [Fraction(scale * _sigma(k - 1, n)) for n in range(1, order + 1)]
    return QSeries(coeffs, 0, "q")


# ---------------------------------------------------------------------------
# q-brackets and shifted symmetric generators


def partition_gf(order: int) -> QSeries:
    return QSeries([partition_count(n) for n in range(order + 1)], 0, "q")


def q_bracket(f, order: int) -> QSeries:
    """<f>_q = (sum_lam f(lam) q^|lam|) / (sum_lam q^|lam|), exact to the order."""
    num = []
    for n in range(order + 1):
        num.append(sum((Fraction(f(lam)) for lam in enumerate_partitions(n)), Fraction(0)))
    return QSeries(num, 0, "q") / partition_gf(order)


def c_coefficient(k: int) -> Fraction:
    """c_k = coefficient of z^(k-1) in 1/(2 sinh(z/2)); c_0 = 1."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return sinh_reciprocal(k + 2).coefficient(k - 1)


def Q_k_eval(k: int, lam) -> Fraction:
    """Renormalized shifted symmetric power sum Q_k evaluated at a partition.

    Q_0 = 1; Q_k = c_k + (1/(k-1)!) sum_i (lam_i - i + 1/2)^(k-1) - (-i + 1/2)^(k-1);
    the tail beyond the length of lam cancels exactly.
    """
    lam = check_partition(lam)
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return Fraction(1)
    total = c_coefficient(k)
    half = Fraction(1, 2)
    acc = Fraction(0)
    for i in range(1, len(lam) + 1):
        acc += (lam[i - 1] - i + half) ** (k - 1) - (-i + half) ** (k - 1)
    return total + acc / factorial(k - 1)


def completion_coefficients(nu, k_max: int):
    """q_{k,nu} for k = 0..k_max from the sinh product generating function.

    sum_{k>=1} q_{k+1,nu} z^k = (1/|nu|!) (2 sinh(z/2))^(|nu|-1) prod_i 2 sinh(nu_i z/2);
    for nu = () the right side is the Laurent series 1/(2 sinh(z/2)).
    q_{k,nu} = 0 once |nu| + l(nu) > k.
    """
    nu = check_partition(nu)
    if k_max < 2:
        raise DomainError("k_max must be >= 2")
    order = k_max + 2
    if not nu:
        rhs = sinh_reciprocal(order)
    else:
        base = two_sinh_half(order)
        prod = QSeries([1] + [0] * order, 0, "z")
        for _ in range(sum(nu) - 1):
            prod = prod * base
        for part in nu:
            scaled = exp_az(Fraction(part, 2), order, "z") - exp_az(Fraction(-part, 2), order, "z")
            prod = prod * scaled
        rhs = prod / factorial(sum(nu))
    return [rhs.coefficient(k - 1) if k - 1 >= rhs.low else Fraction(0) for k in range(k_max + 1)]


# ---------------------------------------------------------------------------
# quasimodular fitting


@dataclass(frozen=True)
class QuasimodularPoly:
    """Polynomial in P, Q, R with exact coefficients and a mixed-weight bound."""

    weight_bound: int
    terms: tuple  # ((a, b, c), Fraction) sorted by (weight, (a,b,c))

    def coefficient(self, a, b, c) -> Fraction:
        for (mono, coef) in self.terms:
            if mono == (a, b, c):
                return coef
        return Fraction(0)

    def weight_component(self, w: int):
        return tuple(
            (mono, coef) for mono, coef in self.terms
            if 2 * mono[0] + 4 * mono[1] + 6 * mono[2] == w
        )

    def expand(self, order: int) -> QSeries:
        P = eisenstein(2, order)
        Q = eisenstein(4, order)
        R = eisenstein(6, order)
        out = QSeries.zero(order, "q")
        for (a, b, c), coef in self.terms:
            term = QSeries([coef] + [0] * order, 0, "q")
            for _ in range(a):
                term = term * P
            for _ in range(b):
                term = term * Q
            for _ in range(c):
                term = term * R
            out = out + term
        return out

    def is_zero(self) -> bool:
        return all(coef == 0 for _, coef in self.terms)

    def to_json(self):
        return {
            "weight_bound": self.weight_bound,
            "terms": [
                {"P": a, "Q": b, "R": c, "coeff": rat_str(coef)}
                for (a, b, c), coef in self.terms
                if coef != 0
            ],
        }


@dataclass(frozen=True)
class FitFailure:
    """Inconsistent linear system: the q-exponent where the residual first appears."""

    residual_index: int

    def to_json(self):
        return {"fit_failed": True, "residual_index": self.residual_index}


def monomial_basis(weight_bound: int):
    """Monomials P^a Q^b R^c with 2a+4b+6c <= bound, ordered by (weight, (a,b,c))."""
    out = []
    for a in range(weight_bound // 2 + 1):
        for b in range(weight_bound // 4 + 1):
            for c in range(weight_bound // 6 + 1):
                w = 2 * a + 4 * b + 6 * c
                if w <= weight_bound:
                    out.append((w, (a, b, c)))
    out.sort()
    return [m for _, m in out]


FIT_SAFETY_MARGIN = 5


def fit_quasimodular(s: QSeries, weight_bound: int, margin: int = FIT_SAFETY_MARGIN):
    """The unique mixed-weight <= bound polynomial matching s on all its
    coefficients, by exact Gaussian elimination.

    Over-determination is mandatory: s must supply at least dim + margin
    coefficients, and every supplied coefficient is used as an equation.
    Returns FitFailure (with the first inconsistent q-exponent) rather than a
    least-squares answer when no exact match exists.
    """
    if s.low < 0:
        raise DomainError("cannot fit a Laurent series with negative exponents")
    basis = monomial_basis(weight_bound)
    dim = len(basis)
    order = s.high
    n_eq = order + 1
    if n_eq < dim + margin:
        raise DomainError(
            f"need at least {dim + margin} coefficients to fit at weight {weight_bound}, "
            f"got {n_eq}"
        )
    expansions = []
    P = eisenstein(2, order)
    Q = eisenstein(4, order)
    R = eisenstein(6, order)
    pow_cache = {}

    def power(series, label, k):
        key = (label, k)
        if key not in pow_cache:
            if k == 0:
                pow_cache[key] = QSeries([1] + [0] * order, 0, "q")
            else:
                pow_cache[key] = power(series, label, k - 1) * series
        return pow_cache[key]

    for (a, b, c) in basis:
        expansions.append(power(P, "P", a) * power(Q, "Q", b) * power(R, "R", c))

    # rows: one equation per q-exponent 0..order
    rows = []
    for e in range(n_eq):
        rows.append([exp.coefficient(e) for exp in expansions] + [s.coefficient(e)])

    # exact Gaussian elimination with column pivoting over the fractions
    pivot_rows = []
    pivot_cols = []
    for col in range(dim):
        sel = None
        for ri, row in enumerate(rows):
            if ri in pivot_rows:
                continue
            if row[col] != 0:
                sel = ri
                break
        if sel is None:
            continue
        pivot_rows.append(sel)
        pivot_cols.append(col)
        pv = rows[sel][col]
        rows[sel] = [x / pv for x in rows[sel]]
        for ri, row in enumerate(rows):
            if ri != sel and row[col] != 0:
                f = row[col]
                rows[ri] = [x - f * y for x, y in zip(row, rows[sel])]

    sol = [Fraction(0)] * dim
    for ri, col in zip(pivot_rows, pivot_cols):
        sol[col] = rows[ri][dim]
    # consistency: every non-pivot row must be fully zero
    for ri, row in enumerate(rows):
        if ri in pivot_rows:
            continue
        if any(x != 0 for x in row[: dim + 1]):
            return FitFailure(residual_index=ri)
    terms = tuple((mono, sol[i]) for i, mono in enumerate(basis) if sol[i] != 0)
    if not terms:
        terms = ()
    return QuasimodularPoly(weight_bound=weight_bound, terms=terms)
