"""Null-hypothesis families on the probability simplex.

Builders produce the canonical generator sets (2x2 minors for
independence, r x r minors for bounded rank, the centered sphere
quadric, transposition differences for symmetry, ...), existence checks
for polytope hypotheses run exact LPs, log-odds hypotheses reduce to
binomials, and every built-in family carries a rational parameterization
used to sample points lying exactly in the null set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from powerpoly.linalg import nullspace
from powerpoly.linprog import EQ, GE, LE, solve_lp
from powerpoly.parser import parse_polynomial, parse_rational
from powerpoly.polynomial import (
    Polynomial,
    default_names,
    table_index,
    table_names,
)

ALGEBRAIC = "algebraic"
SEMIALGEBRAIC = "semialgebraic"
POLYTOPE = "polytope"
LOGODDS = "logodds"


class UnsupportedSampling(ValueError):
    """The hypothesis has no built-in rational parameterization."""


@dataclass(frozen=True)
class ContingencyShape:
    """Rows x columns with the row-major flattening convention."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError("contingency tables need at least 2 rows and 2 columns")

    @property
    def k(self) -> int:
        return self.p * self.q

    def flat(self, i: int, j: int) -> int:
        return table_index(i, j, self.q)


@dataclass(frozen=True)
class NullHypothesis:
    """A description of the null set P0 inside the (k-1)-simplex."""

    k: int
    kind: str
    family: str
    names: tuple[str, ...]
    generators: tuple[Polynomial, ...] = ()
    inequality: Polynomial | None = None
    polytope_a: tuple[tuple[Fraction, ...], ...] = ()
    polytope_b: tuple[Fraction, ...] = ()
    params: dict = field(default_factory=dict)
    generators_substituted: bool = False

    def substituted_generators(self) -> list[Polynomial]:
        """Generators in the first k-1 coordinates (pi_k eliminated)."""
        if self.generators_substituted:
            return list(self.generators)
        return [g.substitute_last() for g in self.generators]

    def substituted_names(self) -> list[str]:
        if self.generators_substituted:
            return list(self.names)
        return list(self.names[:-1])


def _outer_flat(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [ai * bj for ai in a for bj in b]


def _minor(nvars: int, shape: ContingencyShape, rows, cols) -> Polynomial:
    """Determinant of the square submatrix on the given row/col indices."""
    r = len(rows)
    det = Polynomial.zero(nvars)
    for perm in itertools.permutations(range(r)):
        sign = 1
        seen = list(perm)
        for i in range(r):
            for j in range(i + 1, r):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Polynomial.constant(nvars, sign)
        for i in range(r):
            term = term * Polynomial.variable(nvars, shape.flat(rows[i], cols[perm[i]]))
        det = det + term
    return det


def independence(p: int, q: int) -> NullHypothesis:
    """All 2x2 minors of the p x q probability table vanish."""
    shape = ContingencyShape(p, q)
    k = shape.k
    gens = []
    for rows in itertools.combinations(range(p), 2):
        for cols in itertools.combinations(range(q), 2):
            gens.append(_minor(k, shape, rows, cols))
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="independence",
        names=tuple(table_names(p, q)),
        generators=tuple(gens),
        params={"p": p, "q": q},
    )


def rank_lt(p: int, q: int, r: int) -> NullHypothesis:
    """The table has rank < r: all r x r minors vanish."""
    if not 2 <= r <= min(p, q):
        raise ValueError(f"need 2 <= r <= min(p, q), got r={r}, p={p}, q={q}")
    shape = ContingencyShape(p, q)
    k = shape.k
    gens = []
    for rows in itertools.combinations(range(p), r):
        for cols in itertools.combinations(range(q), r):
            gens.append(_minor(k, shape, rows, cols))
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="rank_lt",
        names=tuple(table_names(p, q)),
        generators=tuple(gens),
        params={"p": p, "q": q, "r": r},
    )


def sphere(k: int, delta=None, delta_sq=None) -> NullHypothesis:
    """Probability vectors at exact squared distance delta^2 from uniform.

    Accepts either a rational radius `delta` or a rational squared radius
    `delta_sq` (the latter covers radii like sqrt(1/6) whose square is
    rational).
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if (delta is None) == (delta_sq is None):
        raise ValueError("give exactly one of delta, delta_sq")
    if delta is not None:
        d = Fraction(delta)
        if d <= 0:
            raise ValueError("delta must be positive")
        dsq = d * d
    else:
        dsq = Fraction(delta_sq)
        if dsq <= 0:
            raise ValueError("delta_sq must be positive")
    limit = (1 - Fraction(1, k)) ** 2
    if dsq >= limit:
        raise ValueError(f"delta^2 must be below (1 - 1/k)^2 = {limit}")
    g = Polynomial.zero(k)
    for i in range(k):
        v = Polynomial.variable(k, i) - Polynomial.constant(k, Fraction(1, k))
        g = g + v * v
    g = g - Polynomial.constant(k, dsq)
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="sphere",
        names=tuple(default_names(k)),
        generators=(g,),
        params={"k": k, "delta_sq": dsq},
    )


def symmetry(p: int) -> NullHypothesis:
    """Square-table symmetry: pi_ij = pi_ji for all i < j."""
    shape = ContingencyShape(p, p)
    k = shape.k
    gens = []
    for i in range(p):
        for j in range(i + 1, p):
            gens.append(
                Polynomial.variable(k, shape.flat(i, j))
                - Polynomial.variable(k, shape.flat(j, i))
            )
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="symmetry",
        names=tuple(table_names(p, p)),
        generators=tuple(gens),
        params={"p": p},
    )


def motzkin() -> NullHypothesis:
    """Zero set of the Motzkin polynomial in the first three coordinates (k=4)."""
    k = 4
    names = default_names(k)
    g = parse_polynomial(
        "p3^6 + p1^2*p2^4 + p2^2*p1^4 - 3*p1^2*p2^2*p3^2", names
    )
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="motzkin",
        names=tuple(names),
        generators=(g,),
        params={},
    )


def affine(c_rows: Sequence[Sequence], d: Sequence, k: int) -> NullHypothesis:
    """Affine constraints c_i . pi = d_i on the simplex (ambient coordinates)."""
    rows = [[Fraction(v) for v in row] for row in c_rows]
    rhs = [Fraction(v) for v in d]
    if len(rows) != len(rhs) or any(len(r) != k for r in rows):
        raise ValueError("affine constraint dimensions do not match k")
    if not rows:
        raise ValueError("need at least one affine constraint")
    gens = []
    for row, b in zip(rows, rhs):
        g = Polynomial.constant(k, -b)
        for i, coeff in enumerate(row):
            if coeff:
                g = g + coeff * Polynomial.variable(k, i)
        if g.is_zero():
            raise ValueError("zero affine constraint")
        gens.append(g)
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="affine",
        names=tuple(default_names(k)),
        generators=tuple(gens),
        params={"C": rows, "d": rhs, "k": k},
    )


def polytope_hypothesis(a_rows: Sequence[Sequence], b: Sequence, k: int) -> NullHypothesis:
    """P0 = {pi in projected simplex : A pi >= b}; rows in k-1 coordinates."""
    rows = tuple(tuple(Fraction(v) for v in row) for row in a_rows)
    rhs = tuple(Fraction(v) for v in b)
    if len(rows) != len(rhs) or any(len(r) != k - 1 for r in rows):
        raise ValueError("polytope rows must have k-1 columns")
    return NullHypothesis(
        k=k,
        kind=POLYTOPE,
        family="polytope",
        names=tuple(default_names(k)),
        polytope_a=rows,
        polytope_b=rhs,
        params={"k": k},
    )


def semialgebraic(f: Polynomial, k: int) -> NullHypothesis:
    """P0 = {pi in simplex : f(pi) <= 0} for a single polynomial."""
    if f.nvars != k:
        raise ValueError("inequality polynomial must use ambient coordinates")
    return NullHypothesis(
        k=k,
        kind=SEMIALGEBRAIC,
        family="semialgebraic",
        names=tuple(default_names(k)),
        inequality=f,
        params={"k": k},
    )


def log_odds(a: Sequence, c, k: int) -> NullHypothesis:
    """Rational log-odds hypothesis sum a_i log(pi_i / pi_k) = log(c).

    Only rational coefficient vectors are accepted: with an irrational
    coefficient no non-trivial unbiased test exists, so there is nothing
    to compute.
    """
    coeffs = []
    for v in a:
        if isinstance(v, float):
            raise ValueError(
                "log-odds coefficients must be exact rationals; irrational "
                "coefficient vectors admit no non-trivial unbiased test"
            )
        coeffs.append(Fraction(v))
    target = Fraction(c)
    binom = log_odds_to_binomial(coeffs, target, k)
    return NullHypothesis(
        k=k,
        kind=LOGODDS,
        family="logodds",
        names=tuple(default_names(k)),
        generators=(binom,),
        params={"a": coeffs, "c": target, "k": k},
    )


def custom(generators: Sequence[Polynomial], k: int, names=None, substituted=False) -> NullHypothesis:
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    expected = k - 1 if substituted else k
    for g in gens:
        if g.nvars != expected:
            raise ValueError(f"generator has {g.nvars} variables, expected {expected}")
        if g.total_degree() < 1:
            raise ValueError("generators must be nonconstant")
    if names is None:
        names = default_names(expected)
    return NullHypothesis(
        k=k,
        kind=ALGEBRAIC,
        family="custom",
        names=tuple(names),
        generators=gens,
        params={"k": k},
        generators_substituted=substituted,
    )


def _exact(value) -> Fraction:
    """Exact rational from JSON payloads; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational (p/q string), got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return parse_rational(str(value))


def build_hypothesis(spec: dict) -> NullHypothesis:
    """Construct from the JSON form {"kind": ..., "params": {...}}."""
    kind = spec.get("kind")
    params = spec.get("params", {})
    if kind == "independence":
        return independence(int(params["p"]), int(params["q"]))
    if kind == "rank_lt":
        return rank_lt(int(params["p"]), int(params["q"]), int(params["r"]))
    if kind == "sphere":
        delta = params.get("delta")
        delta_sq = params.get("delta_sq")
        return sphere(
            int(params["k"]),
            delta=None if delta is None else _exact(delta),
            delta_sq=None if delta_sq is None else _exact(delta_sq),
        )
    if kind == "symmetry":
        return symmetry(int(params["p"]))
    if kind == "motzkin":
        return motzkin()
    if kind == "affine":
        rows = [[_exact(v) for v in row] for row in params["C"]]
        rhs = [_exact(v) for v in params["d"]]
        return affine(rows, rhs, int(params["k"]))
    if kind == "polytope":
        rows = [[_exact(v) for v in row] for row in params["A"]]
        rhs = [_exact(v) for v in params["b"]]
        return polytope_hypothesis(rows, rhs, int(params["k"]))
    if kind == "logodds":
        try:
            coeffs = [_exact(v) for v in params["a"]]
        except ValueError as exc:
            raise ValueError(
                f"{exc}; irrational log-odds coefficients admit no "
                "non-trivial unbiased test"
            ) from exc
        return log_odds(coeffs, _exact(params["c"]), int(params["k"]))
    if kind == "custom":
        k = int(params["k"])
        substituted = bool(params.get("substituted", False))
        names = params.get("vars")
        if names is None:
            names = default_names(k - 1 if substituted else k)
        gens = [parse_polynomial(text, names) for text in params["generators"]]
        return custom(gens, k, names=names, substituted=substituted)
    raise ValueError(f"unknown hypothesis kind {kind!r}")


# -- log-odds reduction ------------------------------------------------------


def log_odds_to_binomial(a: Sequence[Fraction], c: Fraction, k: int) -> Polynomial:
    """Clear denominators in prod (pi_i/pi_k)^(a_i) = c to pi^I - c' pi^J.

    I and J have disjoint supports and equal total degree, so the binomial
    is homogeneous; its square is an NTUB separating polynomial.
    """
    coeffs = [Fraction(v) for v in a]
    if len(coeffs) != k - 1:
        raise ValueError(f"need k-1 = {k - 1} coefficients, got {len(coeffs)}")
    if all(v == 0 for v in coeffs):
        raise ValueError("log-odds coefficient vector must be nonzero")
    c = Fraction(c)
    if c <= 0:
        raise ValueError("odds target must be positive")
    denom_lcm = 1
    for v in coeffs:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in coeffs]
    target = c**denom_lcm
    ext = ints + [-sum(ints)]
    g = 0
    for v in ext:
        g = gcd(g, v)
    if g > 1:
        root = _nth_root(target, g)
        if root is not None:
            ext = [v // g for v in ext]
            target = root
    left = tuple(max(v, 0) for v in ext)
    right = tuple(max(-v, 0) for v in ext)
    return Polynomial(k, {left: Fraction(1)}) - target * Polynomial(k, {right: Fraction(1)})


def _nth_root(value: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root, or None."""

    def iroot(x: int) -> int | None:
        if x == 0:
            return 0
        r = round(x ** (1 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**n == x:
                return cand
        return None

    num = iroot(value.numerator)
    den = iroot(value.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


# -- polytope hypothesis existence -------------------------------------------


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    witness: Polynomial | None = None  # separating polynomial (k-1 variables)
    failing_pair: tuple[int, int] | None = None
    witness_point: tuple[Fraction, ...] | None = None


def polytope_existence(a_rows, b, k: int) -> ExistenceVerdict:
    """Decide NTUB/SUB existence for a full-dimensional polytope hypothesis.

    P0 = {pi in projected simplex : A pi >= b}.  Existence holds iff every
    pairwise facet intersection H_i and H_j meets P0 only on the simplex
    boundary; the verdict carries either the product separating polynomial
    or an interior witness point for a violating pair.
    """
    rows = [[Fraction(v) for v in row] for row in a_rows]
    rhs = [Fraction(v) for v in b]
    d = k - 1
    if any(len(r) != d for r in rows):
        raise ValueError(f"rows must have k-1 = {d} columns")
    if not rows:
        raise ValueError("need at least one halfspace row")

    # Simplex rows pi_i >= 0 and 1 - sum(pi) >= 0 as LP constraints.
    def simplex_constraints(slack_var: bool):
        cons = []
        n = d + (1 if slack_var else 0)
        for i in range(d):
            row = [Fraction(0)] * n
            row[i] = Fraction(1)
            if slack_var:
                row[-1] = Fraction(-1)
            cons.append((row, GE, 0))
        row = [Fraction(-1)] * d + ([Fraction(-1)] if slack_var else [])
        cons.append((row, GE, -1))
        return cons

    def hypothesis_constraints(slack_var: bool, skip: int | None = None):
        cons = []
        for i, (row, bound) in enumerate(zip(rows, rhs)):
            if i == skip:
                continue
            r = list(row) + ([Fraction(0)] if slack_var else [])
            cons.append((r, GE, bound))
        return cons

    # Non-empty check.
    feas = solve_lp(d, [0] * d, simplex_constraints(False) + hypothesis_constraints(False))
    if not feas.is_optimal:
        raise ValueError("empty polytope hypothesis: P0 has no point")

    # Full dimension: all constraints simultaneously strictly satisfiable.
    obj = [Fraction(0)] * d + [Fraction(1)]
    strict = []
    for row, bound in zip(rows, rhs):
        strict.append((list(row) + [Fraction(-1)], GE, bound))
    strict += simplex_constraints(True)
    res = solve_lp(d + 1, obj, strict)
    if not res.is_optimal or res.value <= 0:
        raise ValueError("polytope hypothesis is not full-dimensional in the simplex")

    # Per-row validation: irredundant, and H_i meets the open simplex.
    for i, (row, bound) in enumerate(zip(rows, rhs)):
        others = hypothesis_constraints(False, skip=i) + simplex_constraints(False)
        res = solve_lp(d, [-v for v in row], others)
        if res.is_optimal and -res.value >= bound:
            raise ValueError(
                f"halfspace row {i} is redundant: it does not cut P0"
            )
        cons = [(list(row) + [Fraction(0)], EQ, bound)] + simplex_constraints(True)
        res = solve_lp(d + 1, obj, cons)
        if not res.is_optimal or res.value <= 0:
            raise ValueError(
                f"facet hyperplane {i} does not intersect the open projected simplex"
            )

    # Pairwise condition: H_i and H_j and P0 inside the simplex boundary.
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            cons = [
                (list(rows[i]) + [Fraction(0)], EQ, rhs[i]),
                (list(rows[j]) + [Fraction(0)], EQ, rhs[j]),
            ]
            cons += hypothesis_constraints(True)
            cons += simplex_constraints(True)
            res = solve_lp(d + 1, obj, cons)
            if res.is_optimal and res.value > 0:
                point = tuple(res.point[:d])
                return ExistenceVerdict(
                    exists=False, failing_pair=(i, j), witness_point=point
                )

    witness = Polynomial.constant(d, -1)
    for row, bound in zip(rows, rhs):
        g = Polynomial.constant(d, -bound)
        for idx, coeff in enumerate(row):
            if coeff:
                g = g + coeff * Polynomial.variable(d, idx)
        witness = witness * g
    return ExistenceVerdict(exists=True, witness=witness)


# -- exact null-point sampling ----------------------------------------------

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]


def _vdc(index: int, base: int) -> Fraction:
    """Van der Corput radical inverse: a low-discrepancy rational in (0,1)."""
    num, den = 0, 1
    i = index
    while i > 0:
        num = num * base + (i % base)
        den *= base
        i //= base
    return Fraction(num, den) if num else Fraction(1, 2 * base)


def _halton(index: int, dim: int) -> list[Fraction]:
    return [_vdc(index, _PRIMES[t % len(_PRIMES)]) for t in range(dim)]


def _simplex_point(raw: Sequence[Fraction]) -> list[Fraction]:
    total = sum(raw, Fraction(0))
    return [v / total for v in raw]


def sample_null_points(h: NullHypothesis, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """`count` rational points lying exactly in P0 and on the simplex.

    Deterministic: the points come from a low-discrepancy rational
    sequence offset by `seed`.
    """
    if count < 1:
        raise ValueError("count must be positive")
    base = seed * 7919 + 1
    if h.family in ("independence", "rank_lt"):
        p, q = h.params["p"], h.params["q"]
        r = h.params.get("r", 2)
        out = []
        for t in range(count):
            u = _halton(base + t, (r - 1) * (p + q) + (r - 1))
            pos = 0
            mats = []
            weights = _simplex_point(u[pos : pos + (r - 1)]) if r > 2 else [Fraction(1)]
            if r > 2:
                pos += r - 1
            for _ in range(r - 1):
                a = _simplex_point(u[pos : pos + p]); pos += p
                bb = _simplex_point(u[pos : pos + q]); pos += q
                mats.append(_outer_flat(a, bb))
            point = [Fraction(0)] * (p * q)
            for w, m in zip(weights, mats):
                for idx in range(p * q):
                    point[idx] += w * m[idx]
            out.append(tuple(point))
        return out
    if h.family == "symmetry":
        p = h.params["p"]
        out = []
        for t in range(count):
            u = _halton(base + t, p * (p + 1) // 2)
            table = [[Fraction(0)] * p for _ in range(p)]
            pos = 0
            for i in range(p):
                for j in range(i, p):
                    table[i][j] = table[j][i] = u[pos]
                    pos += 1
            flat = [table[i][j] for i in range(p) for j in range(p)]
            total = sum(flat, Fraction(0))
            out.append(tuple(v / total for v in flat))
        return out
    if h.family == "affine":
        return _sample_affine(h, count, base)
    if h.family == "sphere":
        return _sample_sphere(h, count, base)
    if h.family == "polytope":
        return _sample_polytope(h, count, base)
    if h.family == "logodds":
        return _sample_logodds(h, count, base)
    raise UnsupportedSampling(
        f"no rational parameterization for hypothesis family {h.family!r}"
    )


def _sample_affine(h: NullHypothesis, count: int, base: int):
    k = h.k
    rows = [list(r) for r in h.params["C"]]
    rhs = list(h.params["d"])
    # Relative-interior point via max-slack LP over the simplex.
    cons = [(row + [0], EQ, b) for row, b in zip(rows, rhs)]
    cons.append(([1] * k + [0], EQ, 1))
    for i in range(k):
        r = [Fraction(0)] * (k + 1)
        r[i] = Fraction(1)
        r[-1] = Fraction(-1)
        cons.append((r, GE, 0))
    res = solve_lp(k + 1, [0] * k + [1], cons)
    if not res.is_optimal or res.value <= 0:
        raise ValueError("affine hypothesis has no relative-interior simplex point")
    center = res.point[:k]
    dirs = nullspace([row for row in rows] + [[1] * k])
    out = []
    for t in range(count):
        if not dirs:
            out.append(tuple(center))
            continue
        u = _halton(base + t, len(dirs))
        step = [Fraction(0)] * k
        for w, v in zip(u, dirs):
            for i in range(k):
                step[i] += (w - Fraction(1, 2)) * v[i]
        # Largest feasible move keeping all coordinates nonnegative.
        limit = None
        for ci, si in zip(center, step):
            if si < 0:
                bound = -ci / si
                limit = bound if limit is None else min(limit, bound)
            if si > 0:
                bound = (1 - ci) / si
                limit = bound if limit is None else min(limit, bound)
        scale = Fraction(1) if limit is None else limit * _vdc(base + t, 2)
        out.append(tuple(ci + scale * si for ci, si in zip(center, step)))
    return out


def _zero_sum_patterns(k: int):
    """Deterministic zero-sum integer direction vectors."""
    pats = []
    for i in range(k):
        for j in range(k):
            if i != j:
                v = [0] * k
                v[i], v[j] = 1, -1
                pats.append(tuple(v))
    for i in range(k):
        for j, l in itertools.combinations([x for x in range(k) if x != i], 2):
            v = [0] * k
            v[j] = v[l] = 1
            v[i] = -2
            pats.append(tuple(v))
    return pats


def _sphere_base_point(k: int, dsq: Fraction) -> list[Fraction] | None:
    """A rational point u with sum(u) = 0 and |u|^2 = dsq, if one is found.

    Searches scaled integer zero-sum vectors v with dsq/|v|^2 a rational
    square.  Some radii admit no rational points at all (local
    obstructions), in which case sampling is refused.
    """
    seen = set()
    candidates = []
    for v in _zero_sum_patterns(k):
        key = tuple(sorted(v))
        if key not in seen:
            seen.add(key)
            candidates.append(v)
    if k <= 6:
        rng = range(-3, 4)
        for v in itertools.product(rng, repeat=k - 1):
            vec = list(v) + [-sum(v)]
            if all(x == 0 for x in vec):
                continue
            key = tuple(sorted(vec))
            if key not in seen:
                seen.add(key)
                candidates.append(tuple(vec))
    for v in candidates:
        norm = sum(x * x for x in v)
        ratio = dsq / norm
        root = _nth_root(ratio, 2)
        if root is not None:
            return [root * x for x in v]
    return None


def _sample_sphere(h: NullHypothesis, count: int, base: int):
    k = h.k
    dsq = h.params["delta_sq"]
    u0 = _sphere_base_point(k, dsq)
    if u0 is None:
        raise UnsupportedSampling(
            f"found no rational point on the radius^2 = {dsq} sphere; "
            "this radius may admit none"
        )
    out = []
    seen = set()
    t = 0
    attempts = 0
    max_attempts = 200 * count + 200
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        u = _halton(base + t, k - 1)
        t += 1
        d = [w - Fraction(1, 2) for w in u]
        d.append(-sum(d, Fraction(0)))
        dd = sum(x * x for x in d)
        if dd == 0:
            continue
        ud = sum(a * b for a, b in zip(u0, d))
        # Second intersection of the line u0 + t d with the sphere.
        point = [a - 2 * ud / dd * b for a, b in zip(u0, d)]
        pi = [Fraction(1, k) + x for x in point]
        if all(x >= 0 for x in pi):
            tup = tuple(pi)
            if tup not in seen:
                seen.add(tup)
                out.append(tup)
    if len(out) < count:
        raise UnsupportedSampling(
            f"exhausted the search budget with {len(out)} of {count} simplex "
            f"points on the radius^2 = {dsq} sphere"
        )
    return out


def _sample_polytope(h: NullHypothesis, count: int, base: int):
    from powerpoly.polytope import enumerate_vertices_dd

    k = h.k
    d = k - 1
    rows = [[-v for v in row] for row in h.polytope_a]  # A pi >= b as -A pi <= -b
    rhs = [-v for v in h.polytope_b]
    for i in range(d):
        row = [Fraction(0)] * d
        row[i] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * d)
    rhs.append(Fraction(1))
    vertices = enumerate_vertices_dd(rows, rhs)
    if not vertices:
        raise ValueError("empty polytope hypothesis")
    out = []
    for t in range(count):
        u = _halton(base + t, len(vertices))
        weights = _simplex_point(u)
        point = [Fraction(0)] * d
        for w, v in zip(weights, vertices):
            for i in range(d):
                point[i] += w * v[i]
        out.append(tuple(point) + (1 - sum(point, Fraction(0)),))
    return out


def _sample_logodds(h: NullHypothesis, count: int, base: int):
    k = h.k
    binom = h.generators[0]
    monos = sorted(binom.terms)
    if len(monos) != 2:
        raise UnsupportedSampling("degenerate log-odds binomial")
    # pi^I = c pi^J with exponent difference e = I - J.
    if binom.terms[monos[0]] == 1:
        left, right = monos[0], monos[1]
    else:
        left, right = monos[1], monos[0]
    c = -binom.terms[right]
    e = [l - r for l, r in zip(left, right)]
    g = 0
    for v in e:
        g = gcd(g, v)
    # Integer solution of e . x = g, scaled when c admits a g-th root.
    if g > 1:
        root = _nth_root(c, g)
        if root is None:
            raise UnsupportedSampling(
                "log-odds binomial exponents share a factor whose root of c is irrational"
            )
        c = root
        e = [v // g for v in e]
    x = _solve_unimodular(e)
    kernel = []
    nz = [i for i, v in enumerate(e) if v]
    for i in range(k):
        if i == nz[0]:
            continue
        w = [0] * k
        w[i] = e[nz[0]]
        w[nz[0]] = -e[i]
        kernel.append(w)
    out = []
    for t in range(count):
        u = _halton(base + t, len(kernel))
        point = [c**xi for xi in x]
        for w, vec in zip(u, kernel):
            s = Fraction(1) + w  # in (1, 2): positive rational multiplier
            for i in range(k):
                if vec[i]:
                    point[i] *= s ** vec[i]
        total = sum(point, Fraction(0))
        out.append(tuple(v / total for v in point))
    return out


def _solve_unimodular(e: Sequence[int]) -> list[int]:
    """Integer x with e . x = gcd(e) = 1 via iterated extended Euclid."""
    coef: list[int] = []
    g = 0
    for v in e:
        if v == 0:
            coef.append(0)
            continue
        if g == 0:
            coef.append(1 if v > 0 else -1)
            g = abs(v)
            continue
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            qq = old_r // r
            old_r, r = r, old_r - qq * r
            old_s, s = s, old_s - qq * s
            old_t, t = t, old_t - qq * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coef = [ci * old_s for ci in coef] + [old_t]
        g = old_r
    if g != 1:
        raise ValueError("exponent vector is not primitive")
    return coef
