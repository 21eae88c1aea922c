"""Newton log-polygons: the lower convex hull of the points (log i, nu_p(a_i))
over the support of a Dirichlet polynomial, with exact predicates only.

A point (log k, y) is on or above the line through (log i, y_i), (log j, y_j)
iff  j^(y - y_i) >= k^(y_j - y_i) * i^(y - y_j);  all hull, slope, and
collinearity decisions below reduce to such integer power comparisons, so the
polygon never sees a floating-point number and never consumes a log base.

Edges split into segments at the intermediate log-integral points: for a
sloped edge with endpoints (x1, y1), (x2, y2) their number is
delta = gcd(y2 - y1, nu_q(x2) - nu_q(x1) over primes q | x1*x2), while a
horizontal edge passes through every integer abscissa in range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .core import DirichletPoly, factor_integer, gcd_list, valuation, valuation_q
from .degrees import relative_degree_sets
from . import report
from .report import CriterionReport, inconclusive, irreducible


def nu(coeff, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational coefficient."""
    if isinstance(coeff, Fraction):
        return valuation_q(coeff, p)
    return valuation(coeff, p)


def slope_cmp(p1, p2, p3) -> int:
    """Compare slope(p1->p2) with slope(p1->p3) for points (index, y) with
    p1.index < p2.index, p1.index < p3.index.  Returns -1, 0, or 1."""
    (i1, y1), (i2, y2), (i3, y3) = p1, p2, p3
    lhs = Fraction(i3, i1) ** (y2 - y1)
    rhs = Fraction(i2, i1) ** (y3 - y1)
    return (lhs > rhs) - (lhs < rhs)


def on_or_above(i: int, yi: int, j: int, yj: int, k: int, yk: int) -> bool:
    """Exact test that (log k, yk) lies on or above the line through
    (log i, yi) and (log j, yj)."""
    return Fraction(j) ** (yk - yi) >= Fraction(k) ** (yj - yi) * Fraction(i) ** (yk - yj)


def _segment_data(x1: int, y1: int, x2: int, y2: int):
    """delta, the log-integral points, and the per-segment relative degrees
    of the edge (log x1, y1)-(log x2, y2).

    A horizontal edge passes through (log x, y) for every integer x in
    range, so it carries x2 - x1 segments with relative degrees (x+1)/x;
    treating it like a sloped edge would undercount the ways factors can
    split it and break the counting bound and the candidate engine.
    """
    if x1 >= x2:
        raise ValueError("need x1 < x2")
    if y1 == y2:
        pts = [(x, y1) for x in range(x1, x2 + 1)]
        ratios = tuple(Fraction(x + 1, x) for x in range(x1, x2))
        return x2 - x1, pts, ratios
    primes = sorted({p for p, _ in factor_integer(x1)} | {p for p, _ in factor_integer(x2)})
    diffs = [valuation(x2, p) - valuation(x1, p) for p in primes]
    delta = gcd_list([y2 - y1] + diffs)
    pts = []
    for i in range(delta + 1):
        x = 1
        for p, d in zip(primes, diffs):
            x *= p ** (valuation(x1, p) + i * d // delta)
        y = y1 + i * (y2 - y1) // delta
        pts.append((x, y))
    ratio = Fraction(1)
    for p, d in zip(primes, diffs):
        ratio *= Fraction(p) ** (d // delta)
    return delta, pts, (ratio,) * delta


def segment_point_count(x1: int, y1: int, x2: int, y2: int):
    """Number of segments delta and all log-integral points on the segment
    from (log x1, y1) to (log x2, y2); requires y1 != y2."""
    if y1 == y2:
        raise ValueError("endpoints must have distinct heights; horizontal "
                         "edges are handled inside the polygon builder")
    delta, pts, _ = _segment_data(x1, y1, x2, y2)
    return delta, pts


@dataclass(frozen=True)
class Edge:
    i1: int
    y1: int
    i2: int
    y2: int
    delta: int                      # number of segments on this edge
    points: tuple[tuple[int, int], ...]  # all log-integral points, endpoints included
    segment_ratios: tuple[Fraction, ...]  # relative degree of each segment

    @property
    def rise(self) -> int:
        return self.y2 - self.y1

    @property
    def width_ratio(self) -> Fraction:
        return Fraction(self.i2, self.i1)

    @property
    def segment_ratio(self) -> Fraction | None:
        """Common relative degree of the segments (sloped edges); None when
        a horizontal edge mixes ratios."""
        distinct = set(self.segment_ratios)
        return next(iter(distinct)) if len(distinct) == 1 else None

    def interior_points(self):
        return self.points[1:-1]


@dataclass(frozen=True)
class LogPolygon:
    prime: int
    vertices: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...]
    shift: int            # algebraic shift divided out before building, 1 if none
    plotted: tuple[tuple[int, int], ...]  # (index, valuation) for every support point

    def segment_profile(self) -> list[Fraction]:
        """Relative degrees of all segments, with multiplicity; their
        product is deg/deg_min."""
        out: list[Fraction] = []
        for e in self.edges:
            out.extend(e.segment_ratios)
        return out

    def total_segments(self) -> int:
        return sum(e.delta for e in self.edges)

    def single_edge(self) -> bool:
        return len(self.edges) == 1

    def validate(self) -> bool:
        """Every plotted point lies on or above every edge line."""
        for e in self.edges:
            for k, yk in self.plotted:
                if not on_or_above(e.i1, e.y1, e.i2, e.y2, k, yk):
                    return False
        return True

    def rightmost_slope_below(self, r: Fraction) -> bool:
        """Exact test: slope of the rightmost edge < 1 / log r  (r > 1).

        Equivalent to r^(y_n - y_i) < n/i for every plotted i < n with
        y_i < y_n."""
        n, yn = self.vertices[-1]
        ok = True
        for i, yi in self.plotted:
            if i < n and yi < yn:
                if r ** (yn - yi) >= Fraction(n, i):
                    ok = False
                    break
        return ok

    def leftmost_slope_above(self, r: Fraction) -> bool:
        """Exact test: slope of the leftmost edge > -1 / log r  (r > 1)."""
        m, ym = self.vertices[0]
        ok = True
        for i, yi in self.plotted:
            if i > m and yi < ym:
                if r ** (ym - yi) >= Fraction(i, m):
                    ok = False
                    break
        return ok


def build_polygon(f: DirichletPoly, p: int, shift_t: int = 0) -> LogPolygon:
    """Newton log-polygon of f with respect to the prime p.

    Rational coefficients are replaced by the integer primitive part.  If f
    is not algebraically primitive, the polygon of its algebraically
    primitive part is built and the divided-out index gcd recorded as shift.
    Coefficients may be twisted by i^shift_t (the change of indeterminate
    s -> s - t), which only alters valuations.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no polygon")
    if f.ring.kind == "Q":
        f = f.z_primitive_part()
    elif f.ring.kind != "Z":
        raise ValueError("polygon needs integer or rational coefficients")
    shift = f.algebraic_shift()
    if shift > 1:
        f = DirichletPoly({i // shift: c for i, c in f.items()}, f.ring)
    plotted = tuple((i, nu(c * i**shift_t if shift_t else c, p)) for i, c in f.items())

    hull: list[tuple[int, int]] = []
    for pt in plotted:
        while len(hull) >= 2 and slope_cmp(hull[-2], hull[-1], pt) >= 0:
            hull.pop()
        while len(hull) == 1 and hull[0][0] == pt[0]:
            # same index cannot occur; defensive
            hull.pop()
        hull.append(pt)
    edges = []
    for a, b in zip(hull, hull[1:]):
        delta, pts, ratios = _segment_data(a[0], a[1], b[0], b[1])
        edges.append(Edge(a[0], a[1], b[0], b[1], delta, tuple(pts), tuple(ratios)))
    return LogPolygon(p, tuple(hull), tuple(edges), shift, plotted)


def total_factor_bound(f: DirichletPoly, p: int) -> int:
    """Upper bound on the number of irreducible factors of f (with
    multiplicity): the total segment count of the polygon at p."""
    return build_polygon(f, p).total_segments()


# ---------------------------------------------------------------------------
# vector systems and the merge arithmetic (used by the product invariant)


def vector_system(poly: LogPolygon) -> list[tuple[Fraction, int]]:
    """Edge vectors as (width ratio > 1, integer rise), left to right."""
    return [(e.width_ratio, e.rise) for e in poly.edges]


def _slope_key_cmp(v1: tuple[Fraction, int], v2: tuple[Fraction, int]) -> int:
    """Compare slopes rise/log(ratio) exactly."""
    (r1, d1), (r2, d2) = v1, v2
    lhs, rhs = r2**d1, r1**d2
    return (lhs > rhs) - (lhs < rhs)


def merge_vector_systems(a, b) -> list[tuple[Fraction, int]]:
    """Union of two vector systems with equal-slope vectors summed
    (ratios multiply, rises add), sorted by increasing slope."""
    vecs = list(a) + list(b)
    merged: list[tuple[Fraction, int]] = []
    for v in vecs:
        for idx, w in enumerate(merged):
            if _slope_key_cmp(v, w) == 0:
                merged[idx] = (w[0] * v[0], w[1] + v[1])
                break
        else:
            merged.append(v)
    out = merged[:]
    out.sort(key=_SlopeKey)
    return out


class _SlopeKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return _slope_key_cmp(self.v, other.v) < 0


# ---------------------------------------------------------------------------
# Dumas-style tests


def dumas_test(f: DirichletPoly, p: int, shift_t: int = 0) -> CriterionReport:
    """Single-edge single-segment criterion at the prime p, on the
    coefficients a_i * i^shift_t.

    Fires when the twisted endpoint valuations differ, every interior
    support point lies strictly above the endpoint chord, and the segment
    count of the chord is 1.  The classical two-sided Eisenstein patterns
    are the simplest instances and are named in the certificate.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("needs a nonconstant polynomial")
    if not f.is_algebraically_primitive():
        raise ValueError("input must be algebraically primitive")
    if f.ring.kind == "Q":
        f = f.z_primitive_part()
    m, n = f.deg_min, f.degree
    tw = {i: nu(c, p) + shift_t * valuation(i, p) for i, c in f.items()}
    vm, vn = tw[m], tw[n]
    if vm == vn:
        return inconclusive("dumas", f"equal endpoint valuations at p={p}, t={shift_t}")
    for i, vi in tw.items():
        if m < i < n:
            if Fraction(n, i) ** (vi - vm) <= Fraction(m, i) ** (vi - vn):
                return inconclusive(
                    "dumas", f"support point {i} not above the endpoint chord (p={p})")
    idx_diffs = [valuation(n, q) - valuation(m, q) for q in
                 sorted({q for q, _ in factor_integer(m * n)})]
    g = gcd_list([vn - vm] + idx_diffs)
    if g != 1:
        return inconclusive(
            "dumas", f"endpoint chord carries {g} segments (p={p}, t={shift_t})")
    style = ""
    if shift_t == 0:
        if vm == 1 and vn == 0 and all(v >= 1 for i, v in tw.items() if i < n):
            style = "eisenstein-low"
        elif vn == 1 and vm == 0 and all(v >= 1 for i, v in tw.items() if i > m):
            style = "eisenstein-high"
    return irreducible(
        "dumas",
        f"single-segment polygon chord at p={p}"
        + (f", twist t={shift_t}" if shift_t else "")
        + (f" ({style})" if style else ""),
        p=p, t=shift_t, endpoint_valuations=(vm, vn), style=style or None,
    )


def dumas_equal_height_test(f: DirichletPoly, p: int | None = None) -> CriterionReport:
    """The |a_m| = |a_n| twist: test with t = 1 at a prime p | mn with
    nu_p(m) < nu_p(n); sufficient conditions per the twisted single-segment
    criterion with the simpler interior inequality nu_p(i a_i) >= nu_p(n a_n)."""
    if f.ring.kind == "Q":
        f = f.z_primitive_part()
    m, n = f.deg_min, f.degree
    if abs(f.min_coeff()) != abs(f.leading_coeff()):
        return inconclusive("dumas-equal-height", "|a_m| != |a_n|")
    candidates = [p] if p is not None else [
        q for q, _ in factor_integer(m * n) if valuation(m, q) < valuation(n, q)]
    for q in candidates:
        rep = dumas_test(f, q, shift_t=1)
        if rep.verdict == report.IRREDUCIBLE:
            return irreducible(
                "dumas-equal-height", f"twisted chord fires at p={q}, t=1", p=q)
    return inconclusive("dumas-equal-height", "no prime certifies the twisted chord")


# ---------------------------------------------------------------------------
# multi-prime engine


SUBSET_PRODUCT_CAP = 1 << 20


def candidate_relative_degrees(f: DirichletPoly, p: int):
    """Candidate relative degrees of a minimal factor per the polygon at p:
    subset products of the segment profile intersected with the ratios
    d/c <= sqrt(n/m).  Returns (candidates, profile, capped)."""
    if not f.is_algebraically_primitive():
        raise ValueError("input must be algebraically primitive")
    poly = build_polygon(f, p)
    profile = poly.segment_profile()
    prods = {Fraction(1)}
    capped = False
    for r in profile:
        prods |= {x * r for x in prods}
        if len(prods) > SUBSET_PRODUCT_CAP:
            capped = True
            break
    m, n = f.deg_min, f.degree
    sets = relative_degree_sets(m, n)
    s1 = set(sets.s_rd_k)  # k = 1: ratios in (1, sqrt(n/m)]
    cands = (s1 & prods) if not capped else s1
    return cands, profile, capped


def multi_prime_test(f: DirichletPoly, primes: list[int]) -> CriterionReport:
    """Combine polygons at several primes.

    Fires when (a) the per-prime candidate relative-degree sets have empty
    intersection, (b) the lcm of the per-prime gcds of segment-ratio
    numerators equals deg f, or (c) for coprime endpoint degrees every
    polygon is a single edge and their segment counts are coprime.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("needs a nonconstant polynomial")
    if not f.is_algebraically_primitive():
        raise ValueError("input must be algebraically primitive")
    if f.ring.kind == "Q":
        f = f.z_primitive_part()
    if not primes:
        raise ValueError("need at least one prime")
    m, n = f.deg_min, f.degree

    inter = None
    profiles = {}
    any_capped = False
    for p in primes:
        cands, profile, capped = candidate_relative_degrees(f, p)
        profiles[p] = profile
        any_capped = any_capped or capped
        inter = cands if inter is None else (inter & cands)
        if not inter:
            return irreducible(
                "segment-candidate-intersection",
                f"no relative degree <= sqrt(n/m) survives the polygons at "
                f"{{{', '.join(str(q) for q in primes[:primes.index(p) + 1])}}}",
                primes=tuple(primes), empty_at=p,
            )

    dvals = []
    for p in primes:
        nums = [r.numerator for r in profiles[p]]
        dvals.append(gcd_list(nums))
    if dvals and lcm(*dvals) == n:
        return irreducible(
            "segment-numerator-lcm",
            f"lcm of per-prime segment-numerator gcds is deg f = {n}",
            primes=tuple(primes), gcds=tuple(dvals),
        )

    if gcd(m, n) == 1:
        polys = [build_polygon(f, p) for p in primes]
        if all(pl.single_edge() for pl in polys):
            deltas = [pl.edges[0].delta for pl in polys]
            if gcd_list(deltas) == 1:
                return irreducible(
                    "single-edge-coprime-segments",
                    f"coprime endpoint degrees, single-edge polygons with "
                    f"coprime segment counts {deltas}",
                    primes=tuple(primes), deltas=tuple(deltas),
                )

    detail = "candidate intersection " + (
        "not computed (profile too large)" if any_capped else f"nonempty: {sorted(inter)}")
    return inconclusive("multi-prime", detail, candidates=sorted(inter), capped=any_capped)


def shape_label(f: DirichletPoly, p: int, q: int) -> str:
    """Readability label for two-prime firings: the slope signature of the
    two polygons (d = down, u = up, f = flat per edge)."""
    def sig(poly):
        out = ""
        for e in poly.edges:
            out += "d" if e.rise < 0 else ("u" if e.rise > 0 else "f")
        return out
    return f"{sig(build_polygon(f, p))}|{sig(build_polygon(f, q))}"


# ---------------------------------------------------------------------------
# linear combinations f + p^k g


def lone_slope_combination_test(f: DirichletPoly, g: DirichletPoly, p: int, k: int) -> CriterionReport:
    """Irreducibility of f + p^k g from a lone extreme-slope segment.

    Two variants: coprime top degrees deg f < deg g with p dividing neither
    leading coefficient, or coprime min-degrees deg_min f > deg_min g > 1
    with max(deg f, deg g) <= 2 deg_min g and p dividing neither min-degree
    coefficient.  Both need gcd(k, valuation differences of the two special
    degrees) = 1.
    """
    if f.ring != g.ring or f.ring.kind != "Z":
        raise ValueError("both polynomials must share integer coefficients")
    if f.is_zero() or g.is_zero():
        raise ValueError("nonzero inputs required")
    if not is_prime_int(p) or k < 1:
        raise ValueError("p must be prime and k >= 1")
    h = f + g.scale(p**k)

    def seg_gcd_ok(a: int, b: int) -> bool:
        qs = sorted({q for q, _ in factor_integer(a * b)})
        diffs = [valuation(b, q) - valuation(a, q) for q in qs]
        return gcd_list([k] + diffs) == 1

    m, n = f.degree, g.degree
    if m < n and gcd(m, n) == 1 and f.leading_coeff() % p != 0 and \
            g.leading_coeff() % p != 0 and seg_gcd_ok(m, n):
        return CriterionReport(
            report.IRREDUCIBLE, "lone-positive-slope",
            f"deg f = {m}, deg g = {n} coprime; the rightmost chord of "
            f"f + {p}^{k} g is a single segment",
            certificate={"variant": "positive", "combined": h.text(), "p": p, "k": k},
        )

    if not f.is_constant() and not g.is_constant():
        mm, nn = f.deg_min, g.deg_min
        if mm > nn > 1 and gcd(mm, nn) == 1 and max(f.degree, g.degree) <= 2 * nn \
                and f.min_coeff() % p != 0 and g.min_coeff() % p != 0 \
                and seg_gcd_ok(mm, nn):
            return CriterionReport(
                report.IRREDUCIBLE, "lone-negative-slope",
                f"min-degrees {mm} > {nn} coprime, degrees within 2*{nn}; the "
                f"leftmost chord of f + {p}^{k} g is a single segment",
                certificate={"variant": "negative", "combined": h.text(), "p": p, "k": k},
            )

    return inconclusive("linear-combination-slope",
                        "neither extreme-slope variant applies", combined=h.text())


def is_prime_int(p: int) -> bool:
    from .core import is_prime
    return is_prime(p)


# ---------------------------------------------------------------------------
# excluded relative-degree intervals (slope versus divisor ratios)


@dataclass(frozen=True)
class ExclusionInterval:
    lo: Fraction
    hi: Fraction
    side: str           # "right" or "left" (which extreme edge was bounded)
    anchors: tuple      # indices whose coefficients pin the polygon


def slope_exclusions(f: DirichletPoly, p: int):
    """Relative-degree intervals no factor of f can occupy, from the slope
    of an extreme edge of the polygon at p combined with a run of
    p-divisible coefficients.

    Returns (intervals, CriterionReport); the verdict is irreducible when
    the full window [delta(m,n), rho(m,n)] is excluded.  The anchors (the
    non-divisible pivot index and the relevant endpoint) tolerate coefficient
    multipliers coprime to p, which the certificate records.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("needs a nonconstant polynomial")
    if not f.is_algebraically_primitive():
        raise ValueError("input must be algebraically primitive")
    if f.ring.kind == "Q":
        f = f.z_primitive_part()
    m, n = f.deg_min, f.degree
    sets = relative_degree_sets(m, n)
    nm = Fraction(n, m)
    ratios = sorted(sets.s_rd)
    vals = {i: nu(c, p) for i, c in f.items()}
    nondiv = [i for i, v in vals.items() if v == 0]
    poly = build_polygon(f, p)
    intervals: list[ExclusionInterval] = []

    boundary = []
    if ratios and nondiv:
        # right variant: divisible tail up to n, rightmost slope small
        if vals[n] > 0:
            jmax = max(nondiv)
            cands = [r for r in ratios if m * r > jmax]
            boundary += [r for r in ratios if m * r == jmax]
            if cands:
                r1 = min(cands)
                good = [r for r in ratios if r >= r1 and poly.rightmost_slope_below(r)]
                if good:
                    r2 = max(good)
                    intervals.append(ExclusionInterval(r1, r2, "right", (jmax, n)))
                    intervals.append(
                        ExclusionInterval(nm / r2, nm / r1, "right", (jmax, n)))
        # left variant: divisible head down to m, leftmost slope shallow
        if vals[m] > 0:
            jmin = min(nondiv)
            cands = [r for r in ratios if Fraction(n, 1) / r < jmin]
            if cands:
                r1 = min(cands)
                good = [r for r in ratios if r >= r1 and poly.leftmost_slope_above(r)]
                if good:
                    r2 = max(good)
                    intervals.append(ExclusionInterval(r1, r2, "left", (jmin, m)))
                    intervals.append(
                        ExclusionInterval(nm / r2, nm / r1, "left", (jmin, m)))

    delta, rho = sets.delta, sets.rho
    covered = any(iv.lo <= delta and rho <= iv.hi for iv in intervals)
    note = {}
    if boundary:
        # a run of divisible coefficients ends exactly at m * d1/c1 for these
        # ratios; the strict form of the hypothesis leaves them out
        note["boundary_ratios"] = sorted(set(boundary))
    if rho == 1:
        rep = irreducible("arithmetic-rho", f"rho({m},{n}) = 1")
    elif covered:
        iv = next(iv for iv in intervals if iv.lo <= delta and rho <= iv.hi)
        rep = irreducible(
            f"{iv.side}-slope-exclusion",
            f"excluded [{iv.lo}, {iv.hi}] covers the factor window "
            f"[{delta}, {rho}] at p={p}",
            p=p, window=(delta, rho),
            intervals=[(iv.lo, iv.hi, iv.side) for iv in intervals],
            anchors=iv.anchors, **note,
        )
    else:
        rep = inconclusive(
            "slope-exclusion",
            f"excluded intervals do not cover [{delta}, {rho}] at p={p}",
            intervals=[(iv.lo, iv.hi, iv.side) for iv in intervals], **note,
        )
    return intervals, rep


def combination_degree_exclusions(f: DirichletPoly, g: DirichletPoly, p: int, k: int):
    """Degree exclusions for f + p^k g when the combination has a constant
    term: delegates to the slope exclusions of the combined polynomial.

    In the classical shape (f of degree t with nonzero constant term, g of
    degree n > t, p dividing none of the anchor coefficients, and D the
    largest divisor of n at most sqrt(n)) this excludes factor degrees in
    [d, D] u [n/D, n/d] whenever D^k < n/t.
    """
    h = f + g.scale(p**k)
    return slope_exclusions(h, p)
