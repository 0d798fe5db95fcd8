"""Multivariate division, Buchberger's algorithm, and ideal membership.

Reduced Groebner bases are computed with the normal selection strategy
(smallest lcm degree first) plus Buchberger's coprime and chain criteria.
The output is the unique reduced basis for the order, so it is independent
of generator order and of any internal parallelism.

Radical membership uses the Rabinowitsch trick: f vanishes on the complex
variety of `gens` iff 1 lies in <gens, 1 - y*f> in a ring with one extra
variable y (appended last, graded reverse lex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from powerpoly import _kernels as K
from powerpoly.polynomial import DEFAULT_ORDER, MonomialOrder, Polynomial


class StepLimitExceeded(RuntimeError):
    """Raised when a computation exceeds the caller's step budget."""


class StepCounter:
    """Counts units of work; `None` limit means unlimited."""

    def __init__(self, limit: int | None = None, label: str = "computation"):
        if limit is not None and limit < 1:
            raise ValueError("step limit must be >= 1")
        self.limit = limit
        self.steps = 0
        self.label = label

    def tick(self, amount: int = 1):
        self.steps += amount
        if self.limit is not None and self.steps > self.limit:
            raise StepLimitExceeded(
                f"{self.label} exceeded step limit {self.limit}"
            )


def reduce(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
    counter: StepCounter | None = None,
) -> tuple[list[Polynomial], Polynomial]:
    """Divide f by the basis: f = sum(q_i g_i) + r.

    No monomial of r is divisible by any leading monomial of the basis,
    and lt(q_i g_i) <= lt(f), so degrees never grow under a graded order.
    """
    for g in basis:
        if g.nvars != f.nvars:
            raise ValueError("variable count mismatch in division")
        if g.is_zero():
            raise ValueError("cannot divide by the zero polynomial")
    key = order.key
    lead = [(g.leading_monomial(order), g.leading_coefficient(order)) for g in basis]
    quotients: list[dict] = [{} for _ in basis]
    remainder: dict = {}
    work = dict(f.terms)
    while work:
        if counter is not None:
            counter.tick()
        mono = max(work, key=key)
        coeff = work.pop(mono)
        for i, (lm, lc) in enumerate(lead):
            quot = K.mono_div(mono, lm)
            if quot is not None:
                scale = coeff / lc
                q = quotients[i].get(quot)
                quotients[i][quot] = (q + scale) if q is not None else scale
                # work -= scale * x^quot * g_i, minus the cancelled lead
                rest = dict(basis[i].terms)
                del rest[lm]
                K.poly_addmul(work, -scale, quot, rest)
                break
        else:
            remainder[mono] = coeff
    return (
        [Polynomial(f.nvars, q) for q in quotients],
        Polynomial(f.nvars, remainder),
    )


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = K.mono_lcm(lf, lg)
    mf = Polynomial.monomial(f.nvars, K.mono_div(lcm, lf), 1 / f.leading_coefficient(order))
    mg = Polynomial.monomial(g.nvars, K.mono_div(lcm, lg), 1 / g.leading_coefficient(order))
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, mutually reduced elements."""

    order: MonomialOrder
    elements: tuple[Polynomial, ...]

    @property
    def nvars(self) -> int:
        return self.elements[0].nvars

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def min_degree(self) -> int:
        return min(g.total_degree() for g in self.elements)

    def max_degree(self) -> int:
        return max(g.total_degree() for g in self.elements)

    def contains_constant(self) -> bool:
        return any(g.total_degree() == 0 for g in self.elements)


def buchberger_reduced(
    gens: Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
    counter: StepCounter | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`."""
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        raise ValueError("need at least one nonzero generator")
    nvars = basis[0].nvars
    for g in basis:
        if g.nvars != nvars:
            raise ValueError("variable count mismatch among generators")
    # Dedupe identical generators up to scaling.
    unique: list[Polynomial] = []
    for g in basis:
        if g not in unique:
            unique.append(g)
    basis = unique

    lead = [g.leading_monomial(order) for g in basis]
    pairs: set[tuple[int, int]] = set()

    def lcm_deg(i: int, j: int) -> int:
        return K.mono_deg(K.mono_lcm(lead[i], lead[j]))

    def add_pairs(j: int):
        for i in range(j):
            pairs.add((i, j))

    for j in range(len(basis)):
        add_pairs(j)

    while pairs:
        if counter is not None:
            counter.tick()
        i, j = min(pairs, key=lambda p: (lcm_deg(*p), p))
        pairs.discard((i, j))
        lcm = K.mono_lcm(lead[i], lead[j])
        # Coprime criterion: lcm equal to the product means S reduces to 0.
        if lcm == K.mono_mul(lead[i], lead[j]):
            continue
        # Chain criterion: a third element dividing the lcm whose pairs with
        # i and j are both settled makes this pair redundant.
        skip = False
        for m in range(len(basis)):
            if m in (i, j):
                continue
            if K.mono_divides(lead[m], lcm):
                pim = (min(i, m), max(i, m))
                pjm = (min(j, m), max(j, m))
                if pim not in pairs and pjm not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero():
            continue
        _, r = reduce(s, basis, order, counter)
        if not r.is_zero():
            basis.append(r.monic(order))
            lead.append(basis[-1].leading_monomial(order))
            add_pairs(len(basis) - 1)

    # Minimalize: drop elements whose leading monomial another one divides
    # (ties broken by keeping the earliest).
    keep: list[Polynomial] = []
    for i, g in enumerate(basis):
        lm = lead[i]
        redundant = False
        for j in range(len(basis)):
            if j == i or not K.mono_divides(lead[j], lm):
                continue
            if lead[j] != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # Interreduce until stable: every element fully reduced by the others.
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1 :]
            if not others:
                continue
            _, r = reduce(keep[i], others, order, counter)
            r = r.monic(order)
            if r != keep[i]:
                if r.is_zero():
                    del keep[i]
                else:
                    keep[i] = r
                changed = True
                break
    keep.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return GroebnerBasis(order=order, elements=tuple(keep))


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    """True iff f reduces to zero modulo the basis."""
    if f.is_zero():
        return True
    _, r = reduce(f, gb.elements, gb.order)
    return r.is_zero()


def radical_membership(
    f: Polynomial,
    gens: Sequence[Polynomial],
    counter: StepCounter | None = None,
) -> bool:
    """True iff f vanishes on the complex variety of <gens>."""
    if not gens:
        raise ValueError("need at least one generator")
    if f.is_zero():
        return True
    nvars = f.nvars
    ext = nvars + 1

    def extend(p: Polynomial) -> Polynomial:
        return Polynomial(ext, {m + (0,): c for m, c in p.terms.items()})

    y = Polynomial.variable(ext, nvars)
    system = [extend(g) for g in gens if not g.is_zero()]
    system.append(Polynomial.constant(ext, 1) - y * extend(f))
    gb = buchberger_reduced(system, MonomialOrder.GREVLEX, counter)
    return gb.contains_constant()
