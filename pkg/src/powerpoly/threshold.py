"""Unbiasedness thresholds and UMPU power polynomials at the threshold.

The sum-of-squares route: a reduced Groebner basis of the vanishing ideal
under a graded order gives the minimum degree of a nonzero ideal element
(hence the NTUB bound 2*min deg) and the cut-out degree d, the smallest
degree at which the low-degree basis elements already carve out the null
set (SUB bound 2d).  Membership of the discarded elements in the radical
of the low-degree ideal certifies d; the criterion works over the complex
variety, so it is conservative and flagged as such in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from powerpoly.groebner import GroebnerBasis, StepCounter, radical_membership
from powerpoly.hypotheses import NullHypothesis
from powerpoly.polynomial import Polynomial
from powerpoly.power import PowerPolynomial, box_check, count_vectors, multinomial

EXACT = "exact_under_theorem"
SOS_ONLY = "sos_upper_bound_only"


@dataclass(frozen=True)
class ThresholdReport:
    ntub_bound: int
    sub_bound: int
    cut_out_degree: int
    ntub_witness: Polynomial
    sub_witness: Polynomial
    exactness: str
    theorem: str | None = None
    notes: tuple[str, ...] = ()


def sos_bounds(
    gb: GroebnerBasis,
    hypothesis: NullHypothesis | None = None,
    weights: Sequence[Fraction] | None = None,
    assert_nonvanishing_gradient: bool = False,
    counter: StepCounter | None = None,
) -> ThresholdReport:
    """Threshold bounds from a reduced graded Groebner basis of I(P0).

    `weights` are positive multipliers for the squared terms of the SUB
    witness (power tuning); they do not affect the bounds.
    """
    elements = list(gb.elements)
    if not elements:
        raise ValueError("empty Groebner basis")
    degrees = sorted({g.total_degree() for g in elements})
    min_deg = degrees[0]
    g_min = min(elements, key=lambda g: (g.total_degree(), gb.order.key(g.leading_monomial(gb.order))))
    notes: list[str] = []

    cut_out = degrees[-1]
    for d in degrees:
        lower = [g for g in elements if g.total_degree() <= d]
        rest = [g for g in elements if g.total_degree() > d]
        if all(radical_membership(g, lower, counter) for g in rest):
            cut_out = d
            if rest:
                notes.append(
                    f"elements of degree > {d} certified redundant by complex "
                    "radical membership (conservative for the real simplex cut-out)"
                )
            break

    if weights is None:
        weights = [Fraction(1)] * len(elements)
    else:
        weights = [Fraction(w) for w in weights]
        if len(weights) != len(elements):
            raise ValueError("one weight per basis element required")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")

    sub_witness = Polynomial.zero(elements[0].nvars)
    for w, g in zip(weights, elements):
        if g.total_degree() <= cut_out:
            sub_witness = sub_witness + w * (g * g)

    exactness, theorem = SOS_ONLY, None
    if hypothesis is not None and hypothesis.family in ("independence", "rank_lt"):
        exactness, theorem = EXACT, "bounded-rank threshold"
    elif len(elements) == 1 and assert_nonvanishing_gradient:
        exactness, theorem = EXACT, "principal ideal threshold"
    elif len({g.total_degree() for g in elements}) == 1:
        exactness, theorem = EXACT, "equal-degree graded representation"
    if exactness == SOS_ONLY:
        notes.append("bounds are SOS upper bounds; no lower-bound theorem applied")

    return ThresholdReport(
        ntub_bound=2 * min_deg,
        sub_bound=2 * cut_out,
        cut_out_degree=cut_out,
        ntub_witness=g_min * g_min,
        sub_witness=sub_witness,
        exactness=exactness,
        theorem=theorem,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class UMPUPower:
    """Power polynomial of the UMPU test at the threshold sample size."""

    alpha: Fraction
    c_alpha: Fraction
    beta: PowerPolynomial
    form: str  # "principal_square" | "semialgebraic_linear"


def _max_scale(shape: Polynomial, n: int, k: int, alpha: Fraction) -> Fraction:
    """Largest c with c*shape + alpha*(sum pi)^n inside the coefficient box."""
    c_alpha: Fraction | None = None
    for x in count_vectors(n, k):
        coeff = shape.coefficient(x)
        if not coeff:
            continue
        bound = multinomial(n, x)
        cap = (1 - alpha) * bound / coeff if coeff > 0 else alpha * bound / (-coeff)
        c_alpha = cap if c_alpha is None else min(c_alpha, cap)
    if c_alpha is None:
        raise ValueError("zero separating polynomial")
    return c_alpha


def principal_umpu(f: Polynomial, n: int, alpha: Fraction) -> UMPUPower:
    """beta = c_alpha * f~^2 + alpha for a principal vanishing ideal <f>.

    At n = 2*deg(f) (and under the nonvanishing-gradient hypothesis) this
    is the unique UMPU power polynomial; c_alpha is the largest constant
    keeping beta inside the coefficient box.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    deg = f.total_degree()
    if deg < 1:
        raise ValueError("generator must be nonconstant")
    if n < 2 * deg:
        raise ValueError(f"sample size {n} below threshold {2 * deg}")
    k = f.nvars
    shape = (f * f).homogenize(n)
    c_alpha = _max_scale(shape, n, k, alpha)
    beta = c_alpha * shape + alpha * Polynomial.simplex_sum(k) ** n
    check = box_check(beta, n, k)
    if not check:
        raise AssertionError(f"internal: beta violates the box: {check.reason}")
    return UMPUPower(alpha, c_alpha, PowerPolynomial(n, k, beta), "principal_square")


def semialgebraic_umpu(f: Polynomial, n: int, alpha: Fraction) -> UMPUPower:
    """beta = c_alpha * f~ + alpha for the one-sided hypothesis {f <= 0}."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    deg = f.total_degree()
    if deg < 1:
        raise ValueError("boundary polynomial must be nonconstant")
    if n < deg:
        raise ValueError(f"sample size {n} below threshold {deg}")
    k = f.nvars
    shape = f.homogenize(n)
    c_alpha = _max_scale(shape, n, k, alpha)
    beta = c_alpha * shape + alpha * Polynomial.simplex_sum(k) ** n
    check = box_check(beta, n, k)
    if not check:
        raise AssertionError(f"internal: beta violates the box: {check.reason}")
    return UMPUPower(alpha, c_alpha, PowerPolynomial(n, k, beta), "semialgebraic_linear")


def union_separating(witnesses: Sequence[Polynomial], kind: str = "SUB") -> Polynomial:
    """Product of component separating polynomials; degree adds up.

    A product of NTUB (resp. SUB) separating polynomials separates the
    union hypothesis the same way.
    """
    if kind not in ("NTUB", "SUB"):
        raise ValueError("kind must be 'NTUB' or 'SUB'")
    ws = list(witnesses)
    if not ws:
        raise ValueError("need at least one witness")
    out = ws[0]
    for w in ws[1:]:
        out = out * w
    return out


def rank_threshold(p: int, q: int, r: int) -> ThresholdReport:
    """Thresholds for the bounded-rank table hypothesis: both equal 2r."""
    from powerpoly.hypotheses import rank_lt

    hyp = rank_lt(p, q, r)
    witness = Polynomial.zero(hyp.k)
    first = None
    for g in hyp.generators:
        if first is None:
            first = g
        witness = witness + g * g
    return ThresholdReport(
        ntub_bound=2 * r,
        sub_bound=2 * r,
        cut_out_degree=r,
        ntub_witness=first * first,
        sub_witness=witness,
        exactness=EXACT,
        theorem="bounded-rank threshold",
        notes=(f"{len(hyp.generators)} squared {r}x{r} minors in the SUB witness",),
    )
