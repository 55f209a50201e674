"""Tropical covers of the line and of the circle, with Gromov-Witten vertex
multiplicities, for the monotone / strictly monotone correspondence sums.

Line covers (target R with b marked points): vertices v_1..v_n sit over the
first n marked points, edges travel rightward, left/right ends carry the two
ramification profiles, and vertex-free strands run straight through.  Circle
covers (target a circle with base point p_0 and marked points p_1..p_{2g-2}):
same picture wrapped around, edges canonicalized as rightward paths recorded
with their p_0-crossing counts; no vertices over p_0.

Every vertex satisfies the balancing condition, carries a genus, and has
local invariant lam_i = val(v_i) + 2 g(v_i) - 2 >= 1 (flattened 2-valent
genus-0 points are suppressed into the edges).  Multiplicities follow the
correspondence weights: 1/|Aut|, 1/l(lam)!, product of vertex multiplicities
and of internal edge weights, with (-1)^(1+val(v)) factors in the strict
case.  A vertex-free strand of weight w contributes a deck factor w to |Aut|.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from .errors import DomainError, ResourceLimitError
from .partitions import aut_count, check_partition
from .series import QSeries, sinh_normalized
from .quasimodular import c_coefficient


# ---------------------------------------------------------------------------
# vertex multiplicity


@cache
def _s_series(order: int):
    return sinh_normalized(order)


def _s_product_coeff(x_all, order: int) -> Fraction:
    """[z^order] of prod_i S(x_i z) / S(z)."""
    n = max(order, 0) + 2
    prod = QSeries([1] + [0] * n, 0, "z")
    for x in x_all:
        prod = prod * _s_series(n).compose_scale(x)
    prod = prod / _s_series(n)
    return prod.coefficient(order)


def gw_vertex_multiplicity(x_plus, x_minus, vertex_genus: int, lam_i: int) -> Fraction:
    """Local vertex weight (lam_i-1)! sum_{g1+g2=g(v)} c_{2g2} [z^{2g1}] prod S(x z)/S(z).

    The symmetry factors of the two edge multisets cancel between the vertex
    normalization and the one-point invariants, so they do not appear.
    """
    x_plus, x_minus = tuple(x_plus), tuple(x_minus)
    if lam_i != 2 * vertex_genus - 2 + len(x_plus) + len(x_minus):
        raise DomainError("lam_i inconsistent with valence and genus")
    if lam_i < 1:
        raise DomainError("local invariant must be >= 1")
    total = Fraction(0)
    for g1 in range(vertex_genus + 1):
        g2 = vertex_genus - g1
        total += c_coefficient(2 * g2) * _s_product_coeff(x_plus + x_minus, 2 * g1)
    return factorial(lam_i - 1) * total


# ---------------------------------------------------------------------------
# tropical covers as decorated graphs


@dataclass(frozen=True)
class TropicalCover:
    """One isomorphism class of covers.

    vertices: tuple of (genus, lam_i) in marked-point order.
    edges: sorted tuple of (src, tgt, weight, crossings, kind) with src/tgt in
      {-1: left infinity / cut, n: right infinity / cut} and vertex indices
      0..n-1; kind "end", "internal" or "strand"; crossings counts p_0
      passages in the circle case (0 on the line).
    aut: |Aut| of the cover;  degree: the covering degree.
    """

    vertices: tuple
    edges: tuple
    aut: int
    degree: int

    def valence(self, i):
        return sum(1 for e in self.edges for end in (e[0], e[1]) if end == i)

    def x_sides(self, i):
        """(incoming weights, outgoing weights) at vertex i: x^-, x^+."""
        xm, xp = [], []
        for (a, b, w, k, kind) in self.edges:
            if a == i:
                xp.append(w)
            if b == i:
                xm.append(w)
        return tuple(sorted(xm)), tuple(sorted(xp))

    def multiplicity(self, variant: str) -> Fraction:
        n = len(self.vertices)
        mult = Fraction(1, self.aut) / factorial(n)
        for i, (gv, lam) in enumerate(self.vertices):
            xm, xp = self.x_sides(i)
            mv = gw_vertex_multiplicity(xp, xm, gv, lam)
            if variant == "strict":
                mv *= (-1) ** (1 + len(xm) + len(xp))
            mult *= mv
            if mult == 0:
                return mult
        for (a, b, w, k, kind) in self.edges:
            if kind == "internal":
                mult *= w
        return mult


# ---------------------------------------------------------------------------
# line covers


def _lambda_compositions(total, n):
    if n == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - n + 2):
        for rest in _lambda_compositions(total - first, n - 1):
            yield (first,) + rest


def enumerate_line_covers(g: int, mu, nu, max_vertices=None):
    """All (possibly disconnected) covers of the line: left profile mu, right
    profile nu, b = 2g-2+l(mu)+l(nu) marked points, Sum lam_i = b."""
    mu, nu = check_partition(mu), check_partition(nu)
    if sum(mu) != sum(nu):
        raise DomainError("|mu| must equal |nu|")
    b = 2 * g - 2 + len(mu) + len(nu)
    if b < 0:
        return []
    out = []
    if b == 0:
        if mu == nu:
            out.append(_strands_only_cover(mu))
        return out
    hi = min(b, max_vertices or b)
    for n in range(1, hi + 1):
        for lam in _lambda_compositions(b, n):
            out.extend(_line_covers_for(lam, mu, nu))
    return out


def _strands_only_cover(mu):
    edges = []
    aut = 1
    mult = {}
    for w in mu:
        mult[w] = mult.get(w, 0) + 1
    for w, c in mult.items():
        aut *= factorial(c) * w**c  # deck factor w per strand
        for _ in range(c):
            edges.append((-1, 0, w, 0, "strand"))
    return TropicalCover(vertices=(), edges=tuple(sorted(edges)), aut=aut,
                         degree=sum(mu))


def _line_covers_for(lam, mu, nu):
    """Sweep enumeration for a fixed lambda composition (one vertex per point)."""
    n = len(lam)
    d = sum(mu)
    results = []

    # open strands: dict (weight, source) -> count; sources: -1 = left end
    start = {}
    for w in mu:
        start[(w, -1)] = start.get((w, -1), 0) + 1

    def vertex_options(open_strands, i):
        """Choices at vertex i: absorb a sub-multiset, emit a new multiset."""
        items = sorted(open_strands.items())
        subs = []

        def pick(idx, chosen):
            if idx == len(items):
                subs.append(tuple(chosen))
                return
            (key, cnt) = items[idx]
            for take in range(cnt + 1):
                pick(idx + 1, chosen + [(key, take)])

        pick(0, [])
        for sub in subs:
            x_in = []
            for (key, take) in sub:
                x_in.extend([key] * take)
            win = sum(k[0] for k in x_in)
            if win == 0:
                continue  # every vertex needs incoming weight on a line sweep?
            yield x_in, win

    def emissions(win, parts_left_bound):
        """Multisets of outgoing weights with total win."""
        def rec(remaining, maxw):
            if remaining == 0:
                yield ()
                return
            for w in range(min(remaining, maxw), 0, -1):
                for rest in rec(remaining - w, w):
                    yield (w,) + rest

        yield from rec(win, win)

    def sweep(i, open_strands, vertices, edges):
        if i == n:
            # remaining strands exit right; weights must match nu
            weights = []
            for (w, src), c in open_strands.items():
                weights.extend([w] * c)
            if tuple(sorted(weights, reverse=True)) != nu:
                return
            final_edges = list(edges)
            for (w, src), c in open_strands.items():
                kind = "strand" if src == -1 else "end"
                for _ in range(c):
                    final_edges.append((src, n, w, 0, kind))
            results.append(_finish_line(vertices, final_edges, n, d))
            return
        gi_max = (lam[i] + 2) // 2
        for x_in, win in vertex_options(open_strands, i):
            # remove absorbed strands
            nopen = dict(open_strands)
            in_counts = {}
            for key in x_in:
                in_counts[key] = in_counts.get(key, 0) + 1
            for key, c in in_counts.items():
                nopen[key] -= c
                if nopen[key] == 0:
                    del nopen[key]
            for x_out in emissions(win, None):
                val = len(x_in) + len(x_out)
                two_gv = lam[i] + 2 - val
                if two_gv < 0 or two_gv % 2:
                    continue
                gv = two_gv // 2
                nopen2 = dict(nopen)
                for w in x_out:
                    nopen2[(w, i)] = nopen2.get((w, i), 0) + 1
                nedges = list(edges)
                for (w, src) in x_in:
                    kind = "end" if src == -1 else "internal"
                    nedges.append((src, i, w, 0, kind))
                sweep(i + 1, nopen2, vertices + ((gv, lam[i]),), nedges)

    sweep(0, start, (), [])
    return results


def _finish_line(vertices, edges, n, d):
    aut = _aut_from_edges(edges)
    return TropicalCover(vertices=tuple(vertices), edges=tuple(sorted(edges)),
                         aut=aut, degree=d)


def _aut_from_edges(edges):
    classes = {}
    for e in edges:
        classes[e] = classes.get(e, 0) + 1
    aut = 1
    for e, c in classes.items():
        aut *= factorial(c)
        if e[4] == "strand":
            aut *= e[2] ** c  # deck transformations of a free strand
    return aut


def tropical_double_sum(variant: str, g: int, mu, nu) -> Fraction:
    """Disconnected (strictly) monotone double Hurwitz number as a tropical sum."""
    if variant not in ("monotone", "strict"):
        raise DomainError(f"unknown variant {variant}")
    total = Fraction(0)
    for cover in enumerate_line_covers(g, check_partition(mu), check_partition(nu)):
        total += cover.multiplicity(variant)
    return total


# ---------------------------------------------------------------------------
# elliptic covers


def enumerate_elliptic_covers(g: int, d: int, max_degree: int = 24):
    """All connected monotone elliptic tropical covers of type (g, d).

    Vertices sit over the first n marked points (n <= 2g-2), no vertices over
    the base point; edges are rightward paths with crossing counts; every
    vertex has lam_i >= 1 and Sum lam_i = 2g-2.
    """
    if g < 2:
        raise DomainError("elliptic enumeration needs g >= 2")
    if d < 1 or d > max_degree:
        raise ResourceLimitError(f"degree {d} outside configured bound")
    out = []
    for n in range(1, 2 * g - 1):
        for lam in _lambda_compositions(2 * g - 2, n):
            out.extend(_elliptic_covers_for(lam, d))
    return out


def _elliptic_covers_for(lam, d):
    """Enumerate edge multisets for one lambda composition on the circle."""
    n = len(lam)
    # edge types: (src, tgt, weight, crossings); arcs: A_m between p_m,p_(m+1)
    # for m=1..n-1 plus the p_0 arc; coverage of each must equal d.
    types = []
    for a in range(n):
        for t in range(n):
            min_k = 1 if t <= a else 0
            for w in range(1, d + 1):
                for k in range(min_k, d // w + 1):
                    if k == 0 and a == t:
                        continue
                    # coverage on p_0 arc is k*w <= d
                    if k * w > d:
                        continue
                    types.append((a, t, w, k))
    results = []

    def coverage_vec(edge):
        a, t, w, k = edge
        cov = [0] * n  # arc m = between p_(m+1) and p_(m+2); index n-1 = p_0 arc
        # path: from p_(a+1) rightward, crossing p_0 k times, to p_(t+1)
        # crossings of inner arcs A_m (between vertex m and m+1, 0-indexed
        # m=0..n-2) and the outer arc (index n-1)
        # one rightward pass from a to t directly (if k=0, a<t): arcs a..t-1
        # with k>=1: arcs a..n-2 + outer, then (k-1) full loops, then 0..t-1
        if k == 0:
            for m in range(a, t):
                cov[m] += w
        else:
            for m in range(a, n - 1):
                cov[m] += w
            cov[n - 1] += w
            for _ in range(k - 1):
                for m in range(n):
                    cov[m] += w
            for m in range(0, t):
                cov[m] += w
        return cov

    type_cov = [coverage_vec(e) for e in types]

    def rec(idx, counts, cov, germs):
        if idx == len(types):
            if any(c != d for c in cov):
                return
            _try_build(lam, d, types, counts, results)
            return
        # prune: remaining types can only add coverage; if any arc exceeds d, stop
        if any(c > d for c in cov):
            return
        e = types[idx]
        cv = type_cov[idx]
        maxmult = d
        for m in range(n):
            if cv[m]:
                maxmult = min(maxmult, (d - cov[m]) // cv[m])
        for c in range(0, maxmult + 1):
            ncov = [cov[m] + c * cv[m] for m in range(n)] if c else cov
            ngerms = list(germs)
            if c:
                ngerms[e[0]] += c
                ngerms[e[1]] += c
            # valence at vertex i is at most lam_i + 2 (genus >= 0)
            if any(ngerms[i] > lam[i] + 2 for i in range(n)):
                continue
            rec(idx + 1, counts + ((e, c),) if c else counts, ncov, ngerms)

    rec(0, (), [0] * n, [0] * n)
    return results


def _try_build(lam, d, types, counts, results):
    n = len(lam)
    edges = []
    for (e, c) in counts:
        a, t, w, k = e
        for _ in range(c):
            edges.append((a, t, w, k, "internal"))
    # valences and balancing
    val = [0] * n
    out_w = [0] * n
    in_w = [0] * n
    for (a, t, w, k, kind) in edges:
        val[a] += 1
        val[t] += 1
        out_w[a] += w
        in_w[t] += w
    genera = []
    for i in range(n):
        if out_w[i] != in_w[i] or val[i] == 0:
            return
        two_gv = lam[i] + 2 - val[i]
        if two_gv < 0 or two_gv % 2:
            return
        genera.append(two_gv // 2)
    # connectivity over vertices through edges
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, t, w, k, kind) in edges:
        ra, rt = find(a), find(t)
        if ra != rt:
            parent[ra] = rt
    if len({find(i) for i in range(n)}) != 1:
        return
    aut = _aut_from_edges(edges)
    results.append(
        TropicalCover(
            vertices=tuple((genera[i], lam[i]) for i in range(n)),
            edges=tuple(sorted(edges)),
            aut=aut,
            degree=d,
        )
    )


def tropical_elliptic_sum(variant: str, g: int, d: int) -> Fraction:
    """H^d for the (strictly) monotone elliptic correspondence."""
    if variant not in ("monotone", "strict"):
        raise DomainError(f"unknown variant {variant}")
    total = Fraction(0)
    for cover in enumerate_elliptic_covers(g, d):
        total += cover.multiplicity(variant)
    return total


# ---------------------------------------------------------------------------
# combinatorial types and per-type series


def combinatorial_type(cover: TropicalCover):
    """(edge multiset as vertex pairs, genus tuple): the (G, Omega, g') key."""
    pairs = tuple(sorted((min(a, b), max(a, b)) for (a, b, w, k, kind) in cover.edges))
    genera = tuple(gv for (gv, lam) in cover.vertices)
    return (pairs, genera)


def per_type_series(ctype, variant: str, g: int, d_max: int) -> QSeries:
    """Generating series of covers of one combinatorial type."""
    coeffs = [Fraction(0)] * (d_max + 1)
    for d in range(1, d_max + 1):
        for cover in enumerate_elliptic_covers(g, d):
            if combinatorial_type(cover) == ctype:
                coeffs[d] += cover.multiplicity(variant)
    return QSeries(coeffs, 0, "q")


def all_types(g: int, d_max: int):
    seen = set()
    for d in range(1, d_max + 1):
        for cover in enumerate_elliptic_covers(g, d):
            seen.add(combinatorial_type(cover))
    return sorted(seen)
