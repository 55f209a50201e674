"""Partitions, conjugacy-class combinatorics, contents, symmetric-polynomial
evaluation and Stirling numbers.

Partitions are plain tuples of positive ints, weakly decreasing.  Compositions
are tuples of positive ints in arbitrary order.  All functions are pure and
memo tables only ever receive idempotent inserts, so everything here is safe
to call concurrently.
"""

from fractions import Fraction
from functools import cache
from math import factorial

from .errors import DomainError

Partition = tuple  # weakly decreasing tuple of positive ints
Composition = tuple


def check_partition(p) -> Partition:
    """Validate and return p as a partition tuple."""
    t = tuple(p)
    for i, x in enumerate(t):
        if not isinstance(x, int) or x < 1:
            raise DomainError(f"partition parts must be positive integers: {t}")
        if i and t[i - 1] < x:
            raise DomainError(f"partition parts must be weakly decreasing: {t}")
    return t


def sort_composition(c) -> Partition:
    """Partition obtained by sorting a composition."""
    t = tuple(sorted(c, reverse=True))
    return check_partition(t)


@cache
def enumerate_partitions(d: int):
    """All partitions of d, in reverse lexicographic order.

    The order is fixed and documented so cached tables are stable: (d) comes
    first, (1,...,1) last.  d=0 yields the single empty partition.
    """
    if d < 0:
        raise DomainError("d must be >= 0")

    def gen(n, maxpart):
        if n == 0:
            yield ()
            return
        for first in range(min(n, maxpart), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(gen(d, d if d else 1))


def partitions_upto(d: int):
    """All partitions of every size 0..d (reverse lex within each size)."""
    out = []
    for n in range(d + 1):
        out.extend(enumerate_partitions(n))
    return out


def strip_ones(p) -> Partition:
    """Drop all parts equal to 1."""
    return tuple(x for x in p if x != 1)


def pad_to(p, d: int) -> Partition:
    """Pad with 1-parts up to total size d."""
    s = sum(p)
    if s > d:
        raise DomainError(f"partition {p} does not fit degree {d}")
    return tuple(p) + (1,) * (d - s)


def aut_count(mu) -> int:
    """|Aut mu| = product over part values of (multiplicity!)."""
    mult = {}
    for x in mu:
        mult[x] = mult.get(x, 0) + 1
    out = 1
    for c in mult.values():
        out *= factorial(c)
    return out


def z_weight(p) -> int:
    """Order of the centralizer of a permutation of cycle type p: prod m^r_m r_m!."""
    mult = {}
    for x in p:
        mult[x] = mult.get(x, 0) + 1
    out = 1
    for m, r in mult.items():
        out *= m**r * factorial(r)
    return out


def class_size(nu, d: int) -> int:
    """Number of permutations in S_d whose cycle type is nu padded with fixed points.

    nu may contain 1-parts; they simply merge into the padding.
    """
    nu = tuple(nu)
    if sum(nu) > d:
        raise DomainError(f"|nu|={sum(nu)} exceeds degree {d}")
    return factorial(d) // z_weight(pad_to(nu, d))


@cache
def hook_dim(lam) -> int:
    """Dimension of the irreducible S_n representation of shape lam (hook lengths)."""
    lam = check_partition(lam)
    n = sum(lam)
    conj = conjugate(lam)
    denom = 1
    for i, row in enumerate(lam):
        for j in range(row):
            denom *= (row - j) + (conj[j] - i) - 1
    q, r = divmod(factorial(n), denom)
    assert r == 0
    return q


def conjugate(lam) -> Partition:
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def contents(lam):
    """Multiset of contents j-i over the cells (i,j) of lam, as a sorted tuple."""
    lam = check_partition(lam)
    vals = [j - i for i, row in enumerate(lam) for j in range(row)]
    return tuple(sorted(vals))


def sym_eval(kind: str, degree: int, values) -> int:
    """Evaluate h_degree or e_degree at a finite multiset of integers.

    kind is "complete_homogeneous" or "elementary".  Degree 0 is always 1;
    e_k vanishes once k exceeds the multiset cardinality.
    """
    if degree < 0:
        raise DomainError("degree must be >= 0")
    vals = tuple(values)
    if kind == "elementary":
        # coefficients of prod (1 + v t)
        coeffs = [1] + [0] * degree
        for v in vals:
            for k in range(min(degree, len(coeffs) - 1), 0, -1):
                coeffs[k] += v * coeffs[k - 1]
        return coeffs[degree]
    if kind == "complete_homogeneous":
        # coefficients of prod 1/(1 - v t), accumulated value by value
        coeffs = [1] + [0] * degree
        for v in vals:
            for k in range(1, degree + 1):
                coeffs[k] += v * coeffs[k - 1]
        return coeffs[degree]
    raise DomainError(f"unknown symmetric polynomial kind: {kind}")


@cache
def stirling(kind: str, n: int, k: int) -> int:
    """Stirling numbers by their defining recurrences.

    kind "first_unsigned": [n+1,k] = n[n,k] + [n,k-1];
    kind "second":         {n+1,k} = k{n,k} + {n,k-1};
    boundary: [0,0]={0,0}=1 and [n,0]=[0,n]=0 for n>0.
    """
    if n < 0 or k < 0:
        raise DomainError("Stirling indices must be >= 0")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    if k > n:
        return 0
    if kind == "first_unsigned":
        return (n - 1) * stirling(kind, n - 1, k) + stirling(kind, n - 1, k - 1)
    if kind == "second":
        return k * stirling(kind, n - 1, k) + stirling(kind, n - 1, k - 1)
    raise DomainError(f"unknown Stirling kind: {kind}")


def partition_count(n: int) -> int:
    """p(n) via the Euler pentagonal recurrence (used as an independent oracle)."""
    return _pcount(n)


@cache
def _pcount(n: int) -> int:
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * (_pcount(n - g1) + _pcount(n - g2))
        k += 1
    return total


def falling_factorial(x, k: int):
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out
