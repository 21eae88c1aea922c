"""Criterion pipeline: run the applicable tests on one input in a fixed
order and aggregate the reports.

Order: quick support battery, polygon chords (with and without the index
twist), multi-prime candidate intersection, slope exclusions, prime-value
scan (opt-in), rank tests, polytope and upper-polygon criteria for
multivariate inputs, then the oracle on request.  The first definitive
verdict stops the run unless all reports are requested.  Conditional
verdicts count as definitive only when the caller assumes the independence
of the logarithms of primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import DirichletPoly, factor_integer, UnfactoredResidueError
from .degrees import multiplicity_report, quick_irreducibility
from .multivariate import MultiDirichletPoly
from .polygon import dumas_test, slope_exclusions, multi_prime_test
from .polytope import polytope_irreducibility
from .upperpoly import HullUndecidable, stepanov_schmidt_test
from . import report
from .report import CriterionReport, inconclusive


@dataclass
class Analysis:
    input_text: str
    verdict: str
    reports: list[CriterionReport] = field(default_factory=list)

    def exit_code(self) -> int:
        if self.verdict in report.DEFINITIVE:
            return 0
        if self.verdict == report.UNDECIDABLE:
            return 3
        return 2


def coefficient_primes(f: DirichletPoly, cap: int = 10**6, max_primes: int = 10) -> list[int]:
    """Primes dividing at least one coefficient (the ones that can shape a
    polygon), smallest first."""
    ps: set[int] = set()
    for c in f.terms.values():
        c = abs(int(c)) if not hasattr(c, "denominator") else abs(c.numerator * c.denominator)
        if c in (0, 1):
            continue
        try:
            ps.update(p for p, _ in factor_integer(c, cap))
        except UnfactoredResidueError:
            ps.update(p for p in (2, 3, 5, 7) if c % p == 0)
    return sorted(ps)[:max_primes]


def analyze_univariate(
    f: DirichletPoly,
    run_all: bool = False,
    use_oracle: bool = False,
    assume_log_independence: bool = False,
    scan_t: tuple[int, int] | None = None,
) -> Analysis:
    text = f.text()
    reports: list[CriterionReport] = []

    def push(rep: CriterionReport) -> bool:
        rep = rep.gated(assume_log_independence)
        reports.append(rep)
        return rep.definitive and not run_all

    if f.is_zero() or f.is_constant():
        rep = inconclusive("input", "constant polynomial: nothing to decide")
        return Analysis(text, rep.verdict, [rep])

    work = f
    shift_note = None
    if not f.is_algebraically_primitive():
        _, _, d, work = f.normalize()
        shift_note = CriterionReport(
            report.REDUCIBLE, "algebraic-shift",
            f"support gcd {d} > 1: single-term factor 1/{d}^s; criteria run "
            "on the algebraically primitive part",
            certificate={"shift": d, "primitive_part": work.text()},
        )
        if not run_all and not work.is_constant():
            return Analysis(text, report.REDUCIBLE, [shift_note])
        reports.append(shift_note)
        if work.is_constant():
            return Analysis(text, report.REDUCIBLE, reports)

    if push(quick_irreducibility(work)):
        return Analysis(text, reports[-1].verdict, reports)

    if work.ring.kind in ("Z", "Q"):
        zwork = work.z_primitive_part() if work.ring.kind == "Q" else work
        primes = coefficient_primes(zwork)
        index_primes = [p for p, _ in factor_integer(zwork.deg_min * zwork.degree)]
        twist_primes = sorted(set(primes) | set(index_primes))
        for p, t in [(p, 0) for p in primes] + [(p, 1) for p in twist_primes]:
            rep = dumas_test(zwork, p, shift_t=t)
            if rep.verdict == report.IRREDUCIBLE:
                if push(rep):
                    return Analysis(text, reports[-1].verdict, reports)
            elif t == 0:
                reports.append(rep)

        if primes:
            if push(multi_prime_test(zwork, primes)):
                return Analysis(text, reports[-1].verdict, reports)
        for p in primes:
            _, rep = slope_exclusions(zwork, p)
            if push(rep):
                return Analysis(text, reports[-1].verdict, reports)

        if scan_t is not None:
            from .primevalue import scan_t as scan

            hit = scan(zwork, scan_t[0], scan_t[1])
            if hit is not None and push(hit[1]):
                return Analysis(text, reports[-1].verdict, reports)
            if hit is None:
                reports.append(inconclusive(
                    "prime-value-scan", f"no witness in t range {scan_t}"))

        if push(multiplicity_report(zwork)):
            return Analysis(text, reports[-1].verdict, reports)

        if run_all and zwork.deg_min == 1 and zwork.degree <= 16:
            from .ranktests import derivative_rank_test

            if push(derivative_rank_test(zwork)):
                return Analysis(text, reports[-1].verdict, reports)

    if work.ring.kind == "Fp" and work.ring.p >= 2:
        from .ranktests import k_power_free_charp
        from .degrees import max_multiplicity

        if max_multiplicity(work.degree) >= 2:
            if push(k_power_free_charp(work, 2)):
                return Analysis(text, reports[-1].verdict, reports)

    if use_oracle:
        from .oracle import brute_force_factor, FACTORED, IRREDUCIBLE_CERTIFIED

        res = brute_force_factor(work)
        if res.status == FACTORED:
            g, h = res.factors
            rep = CriterionReport(
                report.REDUCIBLE, "oracle",
                f"factorization found: ({g.text()}) * ({h.text()})",
                certificate={"g": g.text(), "h": h.text()},
            )
        elif res.status == IRREDUCIBLE_CERTIFIED:
            rep = CriterionReport(
                report.IRREDUCIBLE, "oracle",
                "exhaustive search certifies irreducibility",
                certificate={"bound": res.bound, "nodes": res.nodes},
            )
        else:
            rep = inconclusive("oracle", f"search exhausted budget (bound {res.bound})")
        if push(rep):
            return Analysis(text, rep.verdict, reports)

    verdict = _aggregate(reports)
    return Analysis(text, verdict, reports)


def analyze_multivariate(
    f: MultiDirichletPoly,
    run_all: bool = False,
    assume_log_independence: bool = False,
) -> Analysis:
    text = f.text()
    reports: list[CriterionReport] = []

    def push(rep: CriterionReport) -> bool:
        rep = rep.gated(assume_log_independence)
        reports.append(rep)
        return rep.definitive and not run_all

    if f.is_zero() or f.is_constant():
        rep = inconclusive("input", "constant polynomial: nothing to decide")
        return Analysis(text, rep.verdict, [rep])

    from .core import is_prime

    if is_prime(f.total_degree()) and f.is_algebraically_primitive():
        rep = CriterionReport(
            report.ABSOLUTELY_IRREDUCIBLE, "prime-degree",
            f"total degree {f.total_degree()} is prime")
        if push(rep):
            return Analysis(text, rep.verdict, reports)

    if push(polytope_irreducibility(f)):
        return Analysis(text, reports[-1].verdict, reports)

    for outer in f.vars:
        for inner in f.vars:
            if inner == outer:
                continue
            try:
                rep = stepanov_schmidt_test(f, outer, inner)
            except (HullUndecidable, ValueError):
                continue
            if push(rep):
                return Analysis(text, reports[-1].verdict, reports)

    return Analysis(text, _aggregate(reports), reports)


_PRIMARY_VERDICTS = (report.IRREDUCIBLE, report.ABSOLUTELY_IRREDUCIBLE, report.REDUCIBLE)


def _aggregate(reports: list[CriterionReport]) -> str:
    for rep in reports:
        if rep.verdict in _PRIMARY_VERDICTS:
            return rep.verdict
    for rep in reports:
        if rep.definitive:
            return rep.verdict
    if any(r.verdict == report.UNDECIDABLE for r in reports):
        return report.UNDECIDABLE
    return report.INCONCLUSIVE
