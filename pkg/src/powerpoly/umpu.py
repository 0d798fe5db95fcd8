"""UMPU existence via the coefficient polytope.

For a principal hypothesis I(P0) = <f> and sample size n, the candidate
power polynomials are f~^2 h + alpha with h homogeneous of degree
n' = n - 2 deg(f).  The feasible h-coefficients form a polytope cut out
by one two-sided box constraint per degree-n multiindex.  A vertex that
dominates all others componentwise yields the UMPU test; otherwise a
layer-by-layer recursion over the convex peeling of the h-exponent
lattice checks the necessary conditions and either refutes existence or
produces the unique remaining candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from powerpoly.groebner import StepCounter
from powerpoly.linprog import EQ, GE, LE, solve_lp
from powerpoly.polynomial import MonomialOrder, Polynomial, monomials_of_degree
from powerpoly.polytope import (
    _in_convex_hull,
    enumerate_vertices_dd,
    irredundant_rows,
)
from powerpoly.power import PowerPolynomial, box_check, multinomial

GREVLEX = MonomialOrder.GREVLEX


def _grevlex_desc(monos):
    return sorted(monos, key=GREVLEX.key, reverse=True)


@dataclass(frozen=True)
class HRow:
    """Two-sided constraint: lower <= coeffs . h <= upper, for multiindex L."""

    index: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    lower: Fraction
    upper: Fraction

    def is_trivial(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class CoefficientPolytope:
    f: Polynomial
    n: int
    k: int
    alpha: Fraction
    nprime: int
    h_index: tuple[tuple[int, ...], ...]  # grevlex-descending degree-n' multiindices
    rows: tuple[HRow, ...]  # one per degree-n multiindex L
    vertices: tuple[tuple[Fraction, ...], ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.h_index)

    def nonzero_rows(self) -> list[HRow]:
        return [r for r in self.rows if not r.is_trivial()]

    def one_sided(self):
        """(A, b) with the polytope as {h : A h <= b}, uppers then lowers per row."""
        a, b = [], []
        for row in self.nonzero_rows():
            a.append(list(row.coeffs))
            b.append(row.upper)
            a.append([-c for c in row.coeffs])
            b.append(-row.lower)
        return a, b

    def halfspace_count(self) -> int:
        return 2 * len(self.nonzero_rows())

    def facet_count(self) -> int:
        """Number of irredundant halfspaces (0 is strictly interior)."""
        a, b = self.one_sided()
        return len(irredundant_rows(a, b))

    def lp_constraints(self):
        cons = []
        for row in self.nonzero_rows():
            cons.append((list(row.coeffs), LE, row.upper))
            cons.append((list(row.coeffs), GE, row.lower))
        return cons

    def h_polynomial(self, coeffs: Sequence[Fraction]) -> Polynomial:
        return Polynomial(self.k, dict(zip(self.h_index, map(Fraction, coeffs))))


def coefficient_polytope(f: Polynomial, n: int, alpha: Fraction) -> CoefficientPolytope:
    """H-representation of the feasible h-coefficients for f~^2 h + alpha."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    deg = f.total_degree()
    if deg < 1:
        raise ValueError("generator must be nonconstant")
    if n < 2 * deg:
        raise ValueError(f"sample size {n} below 2 deg(f) = {2 * deg}")
    k = f.nvars
    nprime = n - 2 * deg
    fsq = (f.homogenize(deg)) ** 2
    h_index = tuple(_grevlex_desc(monomials_of_degree(k, nprime)))
    rows = []
    for L in _grevlex_desc(monomials_of_degree(k, n)):
        coeffs = []
        for J in h_index:
            diff = tuple(l - j for l, j in zip(L, J))
            coeffs.append(fsq.coefficient(diff) if all(d >= 0 for d in diff) else Fraction(0))
        bound = multinomial(n, L)
        rows.append(
            HRow(
                index=L,
                coeffs=tuple(coeffs),
                lower=-alpha * bound,
                upper=(1 - alpha) * bound,
            )
        )
    return CoefficientPolytope(
        f=f, n=n, k=k, alpha=alpha, nprime=nprime, h_index=h_index, rows=tuple(rows)
    )


def enumerate_vertices(
    p: CoefficientPolytope, counter: StepCounter | None = None
) -> CoefficientPolytope:
    """Attach the exact vertex list (deduplicated, lexicographic order)."""
    a, b = p.one_sided()
    vertices = enumerate_vertices_dd(a, b, counter)
    return replace(p, vertices=tuple(vertices))


@dataclass(frozen=True)
class ComponentwiseMax:
    vertex: tuple[Fraction, ...] | None
    certificate: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None = None


def componentwise_max(vertices: Sequence[Sequence[Fraction]]) -> ComponentwiseMax:
    """The vertex dominating all others coordinatewise, if it exists.

    Otherwise a certificate pair of vertices each beating the other in
    some coordinate.
    """
    vs = [tuple(v) for v in vertices]
    if not vs:
        raise ValueError("empty vertex list")
    dim = len(vs[0])
    peak = tuple(max(v[i] for v in vs) for i in range(dim))
    for v in vs:
        if v == peak:
            return ComponentwiseMax(vertex=v)
    # No maximum: exhibit two maximal incomparable vertices.
    def dominates(x, y):
        return all(a >= b for a, b in zip(x, y))

    maximal = []
    for v in vs:
        if not any(dominates(w, v) and w != v for w in vs):
            maximal.append(v)
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            if not dominates(maximal[i], maximal[j]) and not dominates(maximal[j], maximal[i]):
                return ComponentwiseMax(vertex=None, certificate=(maximal[i], maximal[j]))
    raise AssertionError("internal: no maximum vertex yet no incomparable pair")


@dataclass(frozen=True)
class PeelingLayers:
    """Vertex layers of the iterated convex peeling of the lattice simplex."""

    k: int
    nprime: int
    layers: tuple[tuple[tuple[int, ...], ...], ...]
    residuals: tuple[tuple[tuple[int, ...], ...], ...]


def convex_peeling(k: int, nprime: int) -> PeelingLayers:
    """Iteratively strip the convex-hull vertices of the remaining lattice points."""
    if k < 2 or nprime < 0:
        raise ValueError("need k >= 2 and nprime >= 0")
    remaining = _grevlex_desc(monomials_of_degree(k, nprime))
    layers = []
    residuals = []
    while remaining:
        residuals.append(tuple(remaining))
        pts = [tuple(Fraction(e) for e in m) for m in remaining]
        layer = []
        for i, m in enumerate(remaining):
            others = pts[:i] + pts[i + 1 :]
            if not _in_convex_hull(pts[i], others):
                layer.append(m)
        if not layer:
            raise AssertionError("internal: finite point set with no hull vertices")
        layers.append(tuple(layer))
        layer_set = set(layer)
        remaining = [m for m in remaining if m not in layer_set]
    return PeelingLayers(k=k, nprime=nprime, layers=tuple(layers), residuals=tuple(residuals))


EXISTS = "exists"
NOT_EXISTS = "not_exists"
CANDIDATE = "candidate"


@dataclass(frozen=True)
class UMPUVerdict:
    status: str
    h_star: Polynomial | None = None
    beta: PowerPolynomial | None = None
    c_vertices: tuple[tuple[Fraction, ...], ...] = ()
    failing_layer: int | None = None
    certificate: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None = None
    reason: str = ""


def umpu_search(
    f: Polynomial,
    n: int,
    alpha: Fraction,
    counter: StepCounter | None = None,
) -> UMPUVerdict:
    """Decide UMPU existence for the principal hypothesis I(P0) = <f>.

    A componentwise-maximum vertex is sufficient (Exists).  Failing that,
    the necessary layer conditions are checked by exact LPs along the
    convex peeling; any failing layer refutes existence, while passing
    all layers leaves the unique candidate h* (sufficiency beyond the
    vertex criterion is not decided).
    """
    poly = enumerate_vertices(coefficient_polytope(f, n, alpha), counter)
    assert poly.vertices is not None
    cw = componentwise_max(poly.vertices)
    if cw.vertex is not None:
        h = poly.h_polynomial(cw.vertex)
        beta = _beta_from_h(poly, h)
        return UMPUVerdict(
            status=EXISTS,
            h_star=h,
            beta=beta,
            c_vertices=poly.vertices,
            reason="componentwise maximum vertex",
        )

    peeling = convex_peeling(poly.k, poly.nprime)
    base = poly.lp_constraints()
    dim = poly.dim
    position = {J: i for i, J in enumerate(poly.h_index)}
    fixed: dict[int, Fraction] = {}
    for layer_no, layer in enumerate(peeling.layers):
        if counter is not None:
            counter.tick()
        cons = list(base)
        for pos, val in fixed.items():
            row = [Fraction(0)] * dim
            row[pos] = Fraction(1)
            cons.append((row, EQ, val))
        maxima: dict[int, Fraction] = {}
        argmax: dict[int, tuple[Fraction, ...]] = {}
        for J in layer:
            pos = position[J]
            obj = [Fraction(0)] * dim
            obj[pos] = Fraction(1)
            res = solve_lp(dim, obj, cons)
            if not res.is_optimal:
                raise AssertionError("internal: coefficient polytope LP failed")
            maxima[pos] = res.value
            argmax[pos] = tuple(res.point)
        combined = list(cons)
        for pos, val in maxima.items():
            row = [Fraction(0)] * dim
            row[pos] = Fraction(1)
            combined.append((row, EQ, val))
        feas = solve_lp(dim, [Fraction(0)] * dim, combined)
        if not feas.is_optimal:
            layer_pos = sorted(maxima)
            proj = {
                pos: tuple(argmax[pos][q] for q in layer_pos) for pos in layer_pos
            }
            cert = _incomparable_pair(list(proj.values()))
            return UMPUVerdict(
                status=NOT_EXISTS,
                c_vertices=poly.vertices,
                failing_layer=layer_no,
                certificate=cert,
                reason=(
                    f"projected layer {layer_no} has no componentwise maximum: "
                    "per-coordinate maxima are jointly infeasible"
                ),
            )
        fixed.update(maxima)

    h = poly.h_polynomial([fixed[i] for i in range(dim)])
    beta = _beta_from_h(poly, h)
    return UMPUVerdict(
        status=CANDIDATE,
        h_star=h,
        beta=beta,
        c_vertices=poly.vertices,
        reason="necessary layer conditions hold; sufficiency undecided",
    )


def _incomparable_pair(points):
    def dominates(x, y):
        return all(a >= b for a, b in zip(x, y))

    maximal = [p for p in points if not any(dominates(q, p) and q != p for q in points)]
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            if not dominates(maximal[i], maximal[j]) and not dominates(
                maximal[j], maximal[i]
            ):
                return (maximal[i], maximal[j])
    return None


def _beta_from_h(poly: CoefficientPolytope, h: Polynomial) -> PowerPolynomial:
    f = poly.f
    ftilde = f.homogenize(f.total_degree())
    beta = ftilde * ftilde * h + poly.alpha * Polynomial.simplex_sum(poly.k) ** poly.n
    check = box_check(beta, poly.n, poly.k)
    if not check:
        raise AssertionError(f"internal: candidate beta violates the box: {check.reason}")
    return PowerPolynomial(poly.n, poly.k, beta)
