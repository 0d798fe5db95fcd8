"""Exact sparse multivariate polynomials over the rationals.

Variables are positional (index 0..nvars-1); display names are a
presentation concern handled by the parser/formatter.  Coefficients are
`fractions.Fraction` throughout, terms with zero coefficient are never
stored, and all operations return new objects, so polynomials can be
shared freely across threads.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from powerpoly import _kernels as K

Exponents = tuple[int, ...]


class MonomialOrder(enum.Enum):
    """Graded monomial orders (total degree first, stated tie-break)."""

    GRLEX = "grlex"
    GREVLEX = "grevlex"

    def key(self, exponents: Exponents):
        """Sort key: key(a) > key(b) iff monomial a > monomial b."""
        if self is MonomialOrder.GRLEX:
            return K.grlex_key(exponents)
        return K.grevlex_key(exponents)


#: Order used everywhere a caller does not say otherwise (matches the
#: graded reverse lexicographic order of the worked contingency examples).
DEFAULT_ORDER = MonomialOrder.GREVLEX


class Polynomial:
    """Immutable sparse polynomial: dict from exponent tuple to Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars:
                    raise ValueError(
                        f"exponent vector {mono} has length {len(mono)}, expected {nvars}"
                    )
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = Fraction(coeff)
                if c:
                    clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def constant(nvars: int, value) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return Polynomial(nvars, {mono: Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exponents: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(nvars, {tuple(exponents): Fraction(coeff)})

    @staticmethod
    def simplex_sum(nvars: int) -> "Polynomial":
        """The linear form x_1 + ... + x_nvars."""
        terms = {}
        for i in range(nvars):
            terms[tuple(1 if j == i else 0 for j in range(nvars))] = Fraction(1)
        return Polynomial(nvars, terms)

    # -- ring operations ---------------------------------------------------

    def _check_same_ring(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        self._check_same_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono)
            if c is None:
                out[mono] = coeff
            else:
                c = c + coeff
                if c:
                    out[mono] = c
                else:
                    del out[mono]
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})
        self._check_same_ring(other)
        return Polynomial(self.nvars, K.poly_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from powerpoly.parser import format_polynomial

        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def leading_monomial(self, order: MonomialOrder = DEFAULT_ORDER) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEFAULT_ORDER) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER):
        """Terms in descending monomial order (canonical storage order)."""
        return [(m, self.terms[m]) for m in sorted(self.terms, key=order.key, reverse=True)]

    def monic(self, order: MonomialOrder = DEFAULT_ORDER) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self * (Fraction(1) / lc)

    # -- evaluation and reparameterization ---------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for x, e in zip(pt, mono):
                if e:
                    value *= x**e
            total += value
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0.0
        for mono, coeff in self.terms.items():
            value = float(coeff)
            for x, e in zip(point, mono):
                if e:
                    value *= x**e
            total += value
        return total

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for mono, coeff in self.terms.items():
            parts.setdefault(sum(mono), {})[mono] = coeff
        return {d: Polynomial(self.nvars, t) for d, t in parts.items()}

    def homogenize(self, n: int) -> "Polynomial":
        """Degree-n homogenization: each degree-i part times (sum x)^(n-i).

        Agrees with the original polynomial at every point whose
        coordinates sum to one.
        """
        deg = self.total_degree()
        if deg > n:
            raise ValueError(f"cannot homogenize degree-{deg} polynomial to degree {n}")
        if not self.terms:
            return self
        s = Polynomial.simplex_sum(self.nvars)
        spow: dict[int, Polynomial] = {0: Polynomial.constant(self.nvars, 1)}
        out: dict[Exponents, Fraction] = {}
        for d, part in self.homogeneous_components().items():
            k = n - d
            if k not in spow:
                spow[k] = s**k
            for mono, coeff in part.terms.items():
                K.poly_addmul(out, coeff, mono, spow[k].terms)
        return Polynomial(self.nvars, out)

    def substitute_last(self) -> "Polynomial":
        """Eliminate the last variable via x_k -> 1 - (x_1 + ... + x_{k-1})."""
        if self.nvars < 1:
            raise ValueError("no variable to substitute")
        m = self.nvars - 1
        one_minus = Polynomial.constant(m, 1) - Polynomial.simplex_sum(m)
        powers: dict[int, Polynomial] = {0: Polynomial.constant(m, 1)}
        out: dict[Exponents, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[-1]
            if e not in powers:
                powers[e] = one_minus**e
            K.poly_addmul(out, coeff, mono[:-1], powers[e].terms)
        return Polynomial(m, out)

    def derivative(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable `index`."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        out: dict[Exponents, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            if e:
                lowered = tuple(
                    x - 1 if i == index else x for i, x in enumerate(mono)
                )
                out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return Polynomial(self.nvars, out)

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Relabel variables: new exponent of position perm[i] is old position i."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"not a permutation of 0..{self.nvars - 1}: {perm}")
        out = {}
        for mono, coeff in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(mono):
                new[perm[i]] = e
            out[tuple(new)] = coeff
        return Polynomial(self.nvars, out)


def monomials_of_degree(nvars: int, degree: int) -> list[Exponents]:
    """All exponent vectors of the given total degree, descending lex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[Exponents] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, nvars)
    return out


def default_names(nvars: int, prefix: str = "p") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(nvars)]


def table_names(p: int, q: int, prefix: str = "p") -> list[str]:
    """Row-major names p11, p12, ..., ppq for a p-by-q contingency table."""
    return [f"{prefix}{i + 1}{j + 1}" for i in range(p) for j in range(q)]


def table_index(i: int, j: int, q: int) -> int:
    """Row-major flat index of table cell (i, j), zero-based."""
    return i * q + j
