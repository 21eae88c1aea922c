"""Irreducibility from prime or prime-power values of f(-t).

The height bound for factors comes from the product inequality on heights
of multivariate factors, applied through the prime-exponent encoding of the
support.  Threshold inequalities mixing integers with logarithms are decided
by certified interval arithmetic with precision escalation; the criterion
itself is exact once the value decomposition |f(-t)| = P^ell * q has been
re-verified in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .core import DirichletPoly, factor_integer, is_prime, valuation
from .certlog import IV, ln_bounds, precision_cap_bits, PRECISION_START_BITS
from . import report
from .report import CriterionReport, inconclusive


MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class GelfondContext:
    relevant_primes: tuple[int, ...]
    max_multiplicities: tuple[int, ...]  # aligned with relevant_primes
    effective_variables: int
    height: int


def gelfond_context(f: DirichletPoly) -> GelfondContext:
    if f.ring.kind != "Z":
        raise ValueError("needs integer coefficients")
    if f.is_zero():
        raise ValueError("zero polynomial")
    mult: dict[int, int] = {}
    for i in f.support():
        for p, e in factor_integer(i):
            mult[p] = max(mult.get(p, 0), e)
    ps = tuple(sorted(mult))
    return GelfondContext(ps, tuple(mult[p] for p in ps), len(ps), f.height())


def gelfond_factor_height_bound(f: DirichletPoly) -> int:
    """Ceiling of 2^(sum m_i - k) * sqrt(prod (m_i + 1)) * H(f): an upper
    bound for the height of any factor of f (and for the product of the
    heights of all factors)."""
    ctx = gelfond_context(f)
    e = sum(ctx.max_multiplicities) - ctx.effective_variables
    a = (1 << e) * ctx.height if ctx.max_multiplicities else ctx.height
    prod = 1
    for m in ctx.max_multiplicities:
        prod *= m + 1
    r = isqrt(a * a * prod)
    return r if r * r == a * a * prod else r + 1


# ---------------------------------------------------------------------------
# certified threshold comparisons


def _iv_div(a: IV, b: IV) -> IV:
    if b.lo <= 0:
        raise ValueError("division by an interval touching zero")
    return IV(min(a.lo / b.lo, a.lo / b.hi), max(a.hi / b.lo, a.hi / b.hi))


def _ln_iv(x: IV, prec: int) -> IV:
    if x.lo <= 0:
        raise ValueError("log of nonpositive interval")
    return IV(ln_bounds(x.lo, prec).lo, ln_bounds(x.hi, prec).hi)


def _exceeds(t: int, rhs_at, cap_bits: int | None = None) -> str:
    """Certified comparison t > rhs, where rhs_at(prec) returns an IV.
    Returns 'yes' | 'no' | 'undecidable'."""
    cap = cap_bits if cap_bits is not None else precision_cap_bits()
    prec = PRECISION_START_BITS
    while True:
        rhs = rhs_at(prec)
        if t > rhs.hi:
            return "yes"
        if t <= rhs.lo:
            return "no"
        if prec >= cap:
            return "undecidable"
        prec = min(2 * prec, cap)


def _tail_exponent(prec: int) -> IV:
    """1 + log_3(log_2 12) / 2 as a certified interval."""
    ln2 = ln_bounds(Fraction(2), prec)
    ln3 = ln_bounds(Fraction(3), prec)
    ln12 = ln_bounds(Fraction(12), prec)
    log2_12 = _iv_div(ln12, ln2)
    return IV(1) + _iv_div(_ln_iv(log2_12, prec), ln3) * IV(Fraction(1, 2))


def threshold_rhs(n: int, p: int, k: int, q: int, height: int):
    """The sharp lower bound on t: (n/p) * ln((n q H / p) * (n/2)^(k*c))
    with c the tail exponent; returns a prec -> IV evaluator."""

    def at(prec: int) -> IV:
        c = _tail_exponent(prec)
        ln_n2 = ln_bounds(Fraction(n, 2), prec)
        ln_main = ln_bounds(Fraction(n * q * height, p), prec)
        return IV(Fraction(n, p)) * (ln_main + IV(k) * c * ln_n2)

    return at


def simple_rhs(n: int, q: int, height: int):
    """The closed-form bound n^2 + (n/2) * ln(q H)."""

    def at(prec: int) -> IV:
        return IV(n * n) + IV(Fraction(n, 2)) * ln_bounds(Fraction(q * height), prec)

    return at


# ---------------------------------------------------------------------------
# the tests


def pth_root_is_irrational(f: DirichletPoly, t: int, P: int) -> bool:
    """Whether the principal P-th root of prod_i i^(a_i * i^t) is irrational:
    true iff some relevant prime r has exponent sum not divisible by P."""
    if f.ring.kind != "Z":
        raise ValueError("needs integer coefficients")
    if t < 0:
        raise ValueError("t must be >= 0")
    for r in f.relevant_primes():
        e = 0
        for i, a in f.items():
            v = valuation(i, r) if i % r == 0 else 0
            if v:
                e = (e + a % P * pow(i, t, P) % P * v) % P
        if e % P != 0:
            return True
    return False


def prime_value_test(
    f: DirichletPoly,
    t: int,
    P: int,
    ell: int = 1,
    q: int = 1,
    cap_bits: int | None = None,
) -> CriterionReport:
    """Irreducibility from |f(-t)| = P^ell * q with P prime, P not dividing q.

    The decomposition is re-verified exactly.  Fires when t clears either
    the sharp support-aware threshold (composite degree) or the closed-form
    t > n^2 + (n/2) ln(qH) bound; for ell >= 2 the principal P-th root of
    prod i^(a_i i^t) must additionally be irrational.
    """
    if f.ring.kind != "Z":
        raise ValueError("needs integer coefficients")
    if t < 1 or ell < 1 or q < 1:
        raise ValueError("need t, ell, q >= 1")
    value = f.evaluate_at_negative(t)
    if abs(value) != P**ell * q:
        raise ValueError(f"|f(-{t})| = {abs(value)} != {P}^{ell} * {q}")
    if q % P == 0:
        raise ValueError("P must not divide q")
    assumptions = []
    if not is_prime(P):
        return inconclusive("prime-value", f"{P} is not prime")
    if P >= MR_DETERMINISTIC_LIMIT:
        assumptions.append("miller-rabin-beyond-deterministic-range")

    n = f.degree
    if n < 2:
        return inconclusive("prime-value", "degree below 2")
    d = f.algebraic_shift()
    if d > 1 and len(f.support()) > 1:
        g = DirichletPoly({d: 1}, f.ring)
        h = DirichletPoly({i // d: c for i, c in f.items()}, f.ring)
        return CriterionReport(
            report.REDUCIBLE, "prime-value",
            f"not algebraically primitive: single-term factor 1/{d}^s",
            certificate={"witness": (g.text(), h.text())},
        )
    if is_prime(n):
        return CriterionReport(
            report.IRREDUCIBLE, "prime-degree", f"degree {n} is prime",
            tuple(assumptions), {"n": n},
        )

    if ell >= 2 and not pth_root_is_irrational(f, t, P):
        return inconclusive(
            "prime-power-value",
            f"principal {P}th root of the exponent product is rational",
        )

    ctx = gelfond_context(f)
    p = factor_integer(n)[0][0]
    routes = []
    sharp = _exceeds(t, threshold_rhs(n, p, ctx.effective_variables, q, ctx.height), cap_bits)
    routes.append(("support-aware", sharp))
    if sharp != "yes":
        if ctx.height <= 1 and q == 1 and t > n * n:
            routes.append(("unit-coefficients", "yes"))
        else:
            routes.append(
                ("closed-form", _exceeds(t, simple_rhs(n, q, ctx.height), cap_bits)))

    fired = [name for name, res in routes if res == "yes"]
    if fired:
        rule = "prime-value-threshold" if ell == 1 else "prime-power-value-threshold"
        return CriterionReport(
            report.IRREDUCIBLE, rule,
            f"|f(-{t})| = {P}^{ell} * {q} and t clears the {fired[0]} threshold",
            tuple(assumptions),
            {"t": t, "P": P, "ell": ell, "q": q, "route": fired[0]},
        )
    if all(res == "undecidable" for _, res in routes):
        return CriterionReport(
            report.UNDECIDABLE, "prime-value",
            "threshold comparison hit the precision cap",
        )
    return inconclusive(
        "prime-value", f"t = {t} does not clear the thresholds",
        routes=routes,
    )


def scan_t(
    f: DirichletPoly,
    t_from: int,
    t_to: int,
    q_cap: int = 64,
) -> tuple[int, CriterionReport] | None:
    """Convenience sweep: look for t in [t_from, t_to] whose value |f(-t)|
    has the shape P^ell * q with q <= q_cap, and run the test there.  The
    shape search uses exact root extraction plus a primality check that is
    heuristic for huge P; the fired criterion itself stays exact."""
    for t in range(t_from, t_to + 1):
        v = abs(f.evaluate_at_negative(t))
        if v < 2:
            continue
        for q in range(1, q_cap + 1):
            if v % q:
                continue
            w = v // q
            if w < 2:
                continue
            ell = 1
            while True:
                P = _int_root(w, ell)
                if P is None:
                    ell += 1
                    if 1 << ell > w:
                        break
                    continue
                if P >= 2 and is_prime(P) and (q % P or q == 1):
                    try:
                        rep = prime_value_test(f, t, P, ell, q)
                    except ValueError:
                        break
                    if rep.verdict == report.IRREDUCIBLE:
                        return t, rep
                break
    return None


def _int_root(w: int, ell: int) -> int | None:
    if ell == 1:
        return w
    lo, hi = 1, 1 << (w.bit_length() // ell + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**ell < w:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**ell == w else None
