"""Tests as power polynomials and back.

A randomized test on multinomial counts is a map from count vectors to
rejection probabilities; its power function is the homogeneous degree-n
polynomial whose pi^x coefficient is phi(x) * multinomial(n, x).  The
box constraints 0 <= c_x <= multinomial(n, x) characterize exactly the
polynomials arising this way, which makes the translation invertible.

Everything here is exact except `monte_carlo_power`, the one
deliberately float-based validation path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from powerpoly.polynomial import Polynomial, monomials_of_degree


def multinomial(n: int, counts: Sequence[int]) -> int:
    if sum(counts) != n or any(c < 0 for c in counts):
        raise ValueError(f"{counts} is not a composition of {n}")
    out = factorial(n)
    for c in counts:
        out //= factorial(c)
    return out


def count_vectors(n: int, k: int) -> list[tuple[int, ...]]:
    """All count vectors of size n over k categories, descending lex."""
    return monomials_of_degree(k, n)


class TestFunction:
    """Randomized test: count vector -> rejection probability in [0, 1]."""

    __test__ = False  # the name is statistics jargon, not a pytest class

    __slots__ = ("n", "k", "values")

    def __init__(self, n: int, k: int, values: Mapping[tuple[int, ...], Fraction]):
        if n < 1 or k < 2:
            raise ValueError("need n >= 1 and k >= 2")
        domain = count_vectors(n, k)
        domain_set = set(domain)
        table: dict[tuple[int, ...], Fraction] = {x: Fraction(0) for x in domain}
        for x, phi in values.items():
            x = tuple(int(v) for v in x)
            if x not in domain_set:
                raise ValueError(f"{x} is not a count vector for n={n}, k={k}")
            phi = Fraction(phi)
            if not 0 <= phi <= 1:
                raise ValueError(f"phi({x}) = {phi} outside [0, 1]")
            table[x] = phi
        self.n = n
        self.k = k
        self.values = table

    def __call__(self, x: Sequence[int]) -> Fraction:
        return self.values[tuple(x)]

    def __eq__(self, other):
        return (
            isinstance(other, TestFunction)
            and (self.n, self.k) == (other.n, other.k)
            and self.values == other.values
        )

    def items(self):
        """(count vector, phi) pairs in the canonical descending-lex order."""
        return [(x, self.values[x]) for x in count_vectors(self.n, self.k)]

    @staticmethod
    def constant(n: int, k: int, level) -> "TestFunction":
        phi = Fraction(level)
        return TestFunction(n, k, {x: phi for x in count_vectors(n, k)})


@dataclass(frozen=True)
class BoxCheckResult:
    ok: bool
    reason: str = ""
    index: tuple[int, ...] | None = None
    coefficient: Fraction | None = None
    bound: int | None = None

    def __bool__(self):
        return self.ok


def box_check(p: Polynomial, n: int, k: int) -> BoxCheckResult:
    """Is p a valid power polynomial (homogeneous degree n, boxed coefficients)?"""
    if p.nvars != k:
        return BoxCheckResult(False, f"polynomial has {p.nvars} variables, expected {k}")
    if p.is_zero():
        return BoxCheckResult(True)
    if not p.is_homogeneous(n):
        return BoxCheckResult(False, f"not homogeneous of degree {n}")
    for x in count_vectors(n, k):
        c = p.coefficient(x)
        bound = multinomial(n, x)
        if not 0 <= c <= bound:
            return BoxCheckResult(
                False,
                f"coefficient of index {x} is {c}, outside [0, {bound}]",
                index=x,
                coefficient=c,
                bound=bound,
            )
    return BoxCheckResult(True)


@dataclass(frozen=True)
class PowerPolynomial:
    """Homogeneous degree-n polynomial satisfying the box constraints."""

    n: int
    k: int
    poly: Polynomial

    def __post_init__(self):
        check = box_check(self.poly, self.n, self.k)
        if not check:
            raise ValueError(f"not a power polynomial: {check.reason}")


def test_to_power(phi: TestFunction) -> PowerPolynomial:
    terms = {}
    for x, value in phi.values.items():
        if value:
            terms[x] = value * multinomial(phi.n, x)
    return PowerPolynomial(phi.n, phi.k, Polynomial(phi.k, terms))


def recover_test(beta: PowerPolynomial) -> TestFunction:
    """Invert test_to_power by coefficientwise division."""
    values = {}
    for x in count_vectors(beta.n, beta.k):
        c = beta.poly.coefficient(x)
        if c:
            values[x] = c / multinomial(beta.n, x)
    return TestFunction(beta.n, beta.k, values)


def normalize_to_power(beta_tilde: Polynomial, n: int, k: int):
    """Rescale a separating polynomial into a power polynomial.

    Homogenize to degree n, add b*(sum pi)^n with the smallest b >= 0
    making every coefficient nonnegative, then scale by the largest a > 0
    respecting the upper box bounds.  Returns (power, a, b); on a null set
    where beta_tilde <= 0 with supremum 0 the induced test has size a*b.
    """
    if beta_tilde.nvars != k:
        raise ValueError(f"expected {k} variables, got {beta_tilde.nvars}")
    if beta_tilde.total_degree() > n:
        raise ValueError("degree exceeds the sample size")
    hom = beta_tilde.homogenize(n)
    xs = count_vectors(n, k)
    bounds = {x: multinomial(n, x) for x in xs}
    if not hom.terms or all(
        hom.coefficient(x) * bounds[xs[0]] == hom.coefficient(xs[0]) * bounds[x]
        for x in xs
    ):
        raise ValueError("polynomial is constant on the simplex")
    b = max(Fraction(0), max(-hom.coefficient(x) / bounds[x] for x in xs))
    a = None
    for x in xs:
        shifted = hom.coefficient(x) + b * bounds[x]
        if shifted > 0:
            cap = bounds[x] / shifted
            a = cap if a is None else min(a, cap)
    if a is None:
        raise ValueError("polynomial is constant on the simplex")
    scaled = a * (hom + b * Polynomial.simplex_sum(k) ** n)
    return PowerPolynomial(n, k, scaled), a, b


def exact_power(phi: TestFunction, point: Sequence) -> Fraction:
    """E_pi(phi) = sum phi(x) multinomial(n, x) pi^x, exactly."""
    pt = [Fraction(v) for v in point]
    if len(pt) != phi.k:
        raise ValueError(f"point has {len(pt)} coordinates, expected {phi.k}")
    if any(v < 0 for v in pt) or sum(pt) != 1:
        raise ValueError("point is not on the probability simplex")
    total = Fraction(0)
    for x, value in phi.values.items():
        if not value:
            continue
        term = value * multinomial(phi.n, x)
        for v, e in zip(pt, x):
            if e:
                term *= v**e
        total += term
    return total


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    std_error: float
    reps: int
    seed: int


def monte_carlo_power(
    phi: TestFunction, point: Sequence[float], reps: int, seed: int
) -> MonteCarloEstimate:
    """Empirical rejection rate under Multinomial(point, n).

    Uses numpy's seeded PCG64 generator (stable across platforms); counts
    are drawn per replication and the randomized rejection is aggregated
    binomially per distinct count vector, which has the same law as
    flipping the phi(x) coin per draw.
    """
    import numpy as np

    if reps < 1:
        raise ValueError("reps must be >= 1")
    p = np.asarray([float(v) for v in point], dtype=float)
    if len(p) != phi.k:
        raise ValueError(f"point has {len(p)} coordinates, expected {phi.k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.multinomial(phi.n, p / p.sum(), size=reps)
    uniq, counts = np.unique(draws, axis=0, return_counts=True)
    rejected = 0
    for row, m in zip(uniq, counts):
        pr = float(phi.values[tuple(int(v) for v in row)])
        if pr <= 0.0:
            continue
        if pr >= 1.0:
            rejected += int(m)
        else:
            rejected += int(rng.binomial(int(m), pr))
    est = rejected / reps
    se = (est * (1.0 - est) / reps) ** 0.5
    return MonteCarloEstimate(est, se, reps, seed)


def symmetrize(beta: Polynomial, perms: Sequence[Sequence[int]]) -> Polynomial:
    """Average of beta over the listed variable-index permutations."""
    if not perms:
        raise ValueError("need at least one permutation")
    total = Polynomial.zero(beta.nvars)
    for perm in perms:
        total = total + beta.permute_variables(list(perm))
    return total * Fraction(1, len(perms))


def max_statistic_test(n: int, c: Fraction, threshold_center=Fraction(1, 4)) -> TestFunction:
    """Non-randomized test rejecting when max(x1, x2) > n*t + sqrt(n)*c.

    k = 3; the irrational sqrt(n) comparison is decided exactly on integer
    counts: m > n t + sqrt(n) c  iff  m - n t > 0 and (m - n t)^2 > n c^2.
    """
    t = Fraction(threshold_center)
    c = Fraction(c)
    if c < 0:
        raise ValueError("calibration constant must be nonnegative")
    values = {}
    for x in count_vectors(n, 3):
        m = max(x[0], x[1])
        lhs = Fraction(m) - n * t
        if lhs > 0 and lhs * lhs > n * c * c:
            values[x] = Fraction(1)
    return TestFunction(n, 3, values)
