"""Acceptance suite: one test per criterion, exact tolerances throughout.

Each criterion prints a single PASS line on success (run with -s to see
them).  Known-red: the stated 72-halfspace count for the sphere
coefficient polytope at n = 8 contradicts its own H-rep definition (one
two-sided row per degree-n multiindex gives 45 rows = 90 halfspaces at
n = 8; the count 72 matches n = 7 exactly).  That sub-check is kept
faithful and fails; see notes/decisions.md in the working tree for the
analysis.
"""

import itertools
import json
import os
import random
import time
from fractions import Fraction

import pytest

import powerpoly as pp
from powerpoly import (
    MonomialOrder,
    Polynomial,
    TestFunction,
    box_check,
    buchberger_reduced,
    build_hypothesis,
    coefficient_polytope,
    componentwise_max,
    enumerate_vertices,
    exact_power,
    ideal_membership,
    monte_carlo_power,
    normalize_to_power,
    parse_polynomial,
    polytope_existence,
    principal_umpu,
    radical_membership,
    rank_threshold,
    recover_test,
    sample_null_points,
    sos_bounds,
    umpu_search,
    union_separating,
)
from powerpoly import test_to_power as to_power
from powerpoly.groebner import StepCounter, s_polynomial
from powerpoly.groebner import reduce as poly_reduce
from powerpoly.polytope import enumerate_vertices_brute_force
from powerpoly.power import count_vectors, max_statistic_test
from powerpoly.umpu import CANDIDATE, EXISTS, NOT_EXISTS

from conftest import (
    EXAMPLE5_BASIS,
    EXAMPLE5_VARS,
    PRINTED_VERTICES_SUM,
    PRINTED_VERTICES_WEIGHTED,
    printed_to_exact,
)

F = Fraction
VARS3 = ["p1", "p2", "p3"]


def P(text, names=VARS3):
    return parse_polynomial(text, names)


def sphere3_generator():
    hyp = build_hypothesis({"kind": "sphere", "params": {"k": 3, "delta_sq": "1/6"}})
    return hyp.generators[0]


def test_criterion_1_umpu_golden_linear():
    started = time.monotonic()
    f = P("p1 + p2 - p3")
    poly = enumerate_vertices(coefficient_polytope(f, 3, F(1, 20)))
    # Printed table coordinates are (h_{p3}, h_{p2}, h_{p1}).
    printed = {tuple(reversed(v)) for v in printed_to_exact(PRINTED_VERTICES_SUM)}
    assert set(poly.vertices) == printed
    assert len(poly.vertices) == 8

    verdict = umpu_search(f, 3, F(1, 20))
    assert verdict.status == EXISTS
    s = Polynomial.simplex_sum(3)
    assert verdict.beta.poly == F(3, 20) * f * f * s + F(1, 20) * s**3
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"[criterion 1] PASS: 8 exact vertices and the UMPU power polynomial "
          f"match the published table ({elapsed:.3f}s)")


def test_criterion_2_umpu_golden_no_max():
    f = P("2*p1 + p2 - p3")
    poly = enumerate_vertices(coefficient_polytope(f, 3, F(1, 20)))
    assert len(poly.vertices) == 13
    # Recomputed values: the DD output must match the independent
    # subset-enumeration oracle exactly.
    a, b = poly.one_sided()
    assert list(poly.vertices) == enumerate_vertices_brute_force(a, b)

    cw = componentwise_max(poly.vertices)
    assert cw.vertex is None
    assert cw.certificate is not None

    verdict = umpu_search(f, 3, F(1, 20))
    assert verdict.status == NOT_EXISTS

    # Compare against the printed table; mismatches are reported, not failed.
    printed = [tuple(reversed(v)) for v in printed_to_exact(PRINTED_VERTICES_WEIGHTED)]
    computed = set(poly.vertices)
    # The table prints <= 5 decimals (0.03438 stands for 11/320), so a
    # printed row matches when a computed vertex agrees to print precision.
    def matches_printed(cand):
        return any(
            all(abs(float(c) - float(v)) < 5e-6 for c, v in zip(cand, vert))
            for vert in computed
        )

    mismatches = [
        (row_no, PRINTED_VERTICES_WEIGHTED[row_no])
        for row_no, cand in enumerate(printed)
        if not matches_printed(cand)
    ]
    report = "; ".join(f"row {i}: {row}" for i, row in mismatches)
    print(f"[criterion 2] PASS: 13 recomputed vertices, no componentwise max, "
          f"verdict not-exists; printed rows differing from exact values: {report}")
    # The known misprint rows (0-based 4 and 8); everything else matches.
    assert {i for i, _ in mismatches} <= {4, 8}


def test_criterion_3_sphere_suite_n5_n6():
    f = sphere3_generator()
    v5 = umpu_search(f, 5, F(1, 20))
    assert v5.status == EXISTS
    poly5 = enumerate_vertices(coefficient_polytope(f, 5, F(1, 20)))
    assert len(poly5.vertices) == 8
    cw = componentwise_max(poly5.vertices)
    assert cw.vertex == (F(1, 3), F(1, 3), F(1, 3))

    v6 = umpu_search(f, 6, F(1, 20))
    assert v6.status == CANDIDATE
    expected_h = parse_polynomial(
        "3/5*p1^2 + 3/5*p2^2 + 3/5*p3^2 + 6/5*p1*p2 + 6/5*p1*p3 + 6/5*p2*p3",
        VARS3,
    )
    assert v6.h_star == expected_h
    print("[criterion 3a] PASS: sphere n=5 exists with max (1/3,1/3,1/3); "
          "n=6 candidate with h = 3/5*sum(p_i^2) + 6/5*sum(p_i p_j)")


def test_criterion_3_sphere_n8_halfspace_rows():
    """Stated: the n = 8 H-rep has 72 halfspace rows.

    Faithfully asserted and expected to fail: Eq.-15-style construction
    (one two-sided row per degree-8 multiindex in 3 variables) yields 45
    nonzero rows = 90 one-sided halfspaces, of which 45 are facets.  The
    count 72 is exactly the n = 7 H-rep (36 rows).  See the decisions
    ledger for the full analysis.
    """
    f = sphere3_generator()
    poly8 = coefficient_polytope(f, 8, F(1, 20))
    # Verified substance, for the record:
    assert poly8.halfspace_count() == 90
    poly7 = coefficient_polytope(f, 7, F(1, 20))
    assert poly7.halfspace_count() == 72
    # The criterion as stated (known red):
    assert poly8.halfspace_count() == 72, (
        "spec/paper defect: n=8 yields 90 one-sided halfspaces (45 facets); "
        "72 is the n=7 count"
    )
    print("[criterion 3b] PASS")


@pytest.mark.skipif(
    not os.environ.get("POWERPOLY_STRETCH"),
    reason="stretch goal: set POWERPOLY_STRETCH=1 to enumerate the n=8 polytope",
)
def test_criterion_3_sphere_n8_vertex_stretch():
    f = sphere3_generator()
    poly = enumerate_vertices(
        coefficient_polytope(f, 8, F(1, 20)),
        StepCounter(int(os.environ.get("POWERPOLY_STEP_LIMIT", "100000000"))),
    )
    print(f"[criterion 3 stretch] n=8 vertex count: {len(poly.vertices)}")
    assert len(poly.vertices) == 17267


def test_criterion_4_c_alpha_golden():
    started = time.monotonic()
    hyp = build_hypothesis({"kind": "sphere", "params": {"k": 4, "delta_sq": "1/4"}})
    f = hyp.generators[0]
    for alpha in (F(1, 20), F(1, 10), F(1, 4), F(1, 2)):
        res = principal_umpu(f, 4, alpha)
        assert res.c_alpha == 4 * alpha

    alpha = F(1, 20)
    phi = recover_test(principal_umpu(f, 4, alpha).beta)
    expected = {
        (4,): 2 * alpha,
        (3, 1): F(0),
        (2, 2): 2 * alpha,
        (2, 1, 1): F(4, 3) * alpha,
        (1, 1, 1, 1): 2 * alpha,
    }
    for x, value in phi.items():
        pattern = tuple(sorted((c for c in x if c), reverse=True))
        assert value == expected[pattern]
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"[criterion 4] PASS: c_alpha = 4*alpha and the five-case test table "
          f"match exactly ({elapsed:.3f}s)")


def test_criterion_5_threshold_goldens(example5_polys):
    hyp = build_hypothesis({"kind": "independence", "params": {"p": 2, "q": 2}})
    gb = buchberger_reduced(hyp.substituted_generators(), MonomialOrder.GREVLEX)
    report = sos_bounds(gb, hypothesis=hyp)
    assert (report.ntub_bound, report.sub_bound) == (4, 4)

    gb5 = buchberger_reduced(example5_polys, MonomialOrder.GREVLEX)
    assert sorted(g.total_degree() for g in gb5.elements) == [1, 2, 2, 3]
    report5 = sos_bounds(gb5)
    assert report5.ntub_bound == 2
    assert report5.cut_out_degree == 2
    assert report5.sub_bound == 4
    lower = [g for g in gb5.elements if g.total_degree() <= 2]
    degree3 = [g for g in gb5.elements if g.total_degree() == 3]
    assert degree3 and all(radical_membership(g, lower) for g in degree3)

    for pqr, expect in [((2, 2, 2), 4), ((3, 3, 2), 4), ((3, 3, 3), 6)]:
        rep = rank_threshold(*pqr)
        assert rep.ntub_bound == rep.sub_bound == expect

    pairwise = [P("p1 - p2") ** 2, P("p1 - p3") ** 2, P("p2 - p3") ** 2]
    assert union_separating(pairwise, "SUB").total_degree() == 6
    print("[criterion 5] PASS: independence 4/4, constrained-table d=2 with "
          "certified degree-3 redundancy, rank thresholds 2r, union degree 6")


def test_criterion_6_polytope_existence_goldens():
    t = F(3, 4)
    verdict = polytope_existence([[-1, 0], [0, -1]], [-t, -t], 3)
    assert verdict.exists
    names = ["p1", "p2"]
    expect = -1 * (parse_polynomial("p1", names) - t) * (parse_polynomial("p2", names) - t)
    assert verdict.witness == expect

    verdict = polytope_existence([[-1, 0], [0, -1]], [F(-1, 4), F(-1, 4)], 3)
    assert not verdict.exists
    assert verdict.witness_point == (F(1, 4), F(1, 4))

    verdict = polytope_existence([[-1, 1], [-1, -2]], [0, -1], 3)
    assert not verdict.exists
    assert verdict.witness_point == (F(1, 3), F(1, 3))
    print("[criterion 6] PASS: square t=3/4 separating product, t=1/4 interior "
          "corner witness, ordering hypothesis barycenter witness")


def _random_test_function(rng, n, k):
    values = {}
    for x in count_vectors(n, k):
        values[x] = F(rng.randrange(0, 17), 16)
    return TestFunction(n, k, values)


def test_criterion_7_correspondence_properties():
    rng = random.Random(20250811)
    # Round trips, >= 500 cases.
    for _ in range(500):
        n = rng.randrange(1, 5)
        k = rng.randrange(2, 4)
        phi = _random_test_function(rng, n, k)
        beta = to_power(phi)
        assert recover_test(beta) == phi
        assert to_power(recover_test(beta)).poly == beta.poly

    # Box preservation under normalize_to_power, >= 500 cases.
    from powerpoly.polynomial import monomials_of_degree

    done = 0
    while done < 500:
        k = rng.randrange(2, 4)
        n = rng.randrange(2, 5)
        terms = {}
        for _ in range(rng.randrange(1, 5)):
            d = rng.randrange(0, n + 1)
            mono = rng.choice(monomials_of_degree(k, d))
            terms[mono] = F(rng.randrange(-12, 13), rng.randrange(1, 7))
        cand = Polynomial(k, terms)
        try:
            beta, a, b = normalize_to_power(cand, n, k)
        except ValueError:
            continue  # constant on the simplex
        assert box_check(beta.poly, n, k)
        assert a > 0 and b >= 0
        # Sign structure preserved relative to the size a*b.
        point = [F(1), F(2)] + ([F(1)] if k == 3 else [])
        total = sum(point)
        point = [v / total for v in point]
        lhs = beta.poly.evaluate(point) - a * b
        rhs = cand.evaluate(point)
        assert (lhs > 0) == (rhs > 0) and (lhs < 0) == (rhs < 0)
        done += 1

    # Similarity on the boundary: separating polynomials vanish exactly at
    # >= 50 sampled null points per family.
    families = [
        {"kind": "independence", "params": {"p": 2, "q": 2}},
        {"kind": "rank_lt", "params": {"p": 3, "q": 3, "r": 2}},
        {"kind": "sphere", "params": {"k": 3, "delta_sq": "1/6"}},
        {"kind": "symmetry", "params": {"p": 2}},
        {"kind": "affine", "params": {"C": [["1", "-1", "0"]], "d": ["0"], "k": 3}},
        {"kind": "logodds", "params": {"a": ["1", "1"], "c": "1", "k": 3}},
    ]
    for spec in families:
        hyp = build_hypothesis(spec)
        # Ambient separating polynomials: squares of the generators and
        # their sum (NTUB and SUB witnesses).
        ntub = hyp.generators[0] * hyp.generators[0]
        sub = sum((g * g for g in hyp.generators), Polynomial.zero(hyp.k))
        for point in sample_null_points(hyp, 50, seed=13):
            assert ntub.evaluate(point) == 0
            assert sub.evaluate(point) == 0
    print("[criterion 7] PASS: 500 exact round trips, 500 normalized "
          "separating polynomials inside the box, exact similarity at 50 "
          "null points for 6 families")


def test_criterion_8_groebner_properties(example5_polys):
    generator_sets = [
        [P("p1*p2 - p3^2"), P("p1 - p3")],
        [P("p1^2 - p2"), P("p2^2 - p3"), P("p1*p3 - p2^2")],
        example5_polys,
        build_hypothesis(
            {"kind": "independence", "params": {"p": 2, "q": 3}}
        ).substituted_generators(),
    ]
    for gens in generator_sets:
        gb = buchberger_reduced(gens, MonomialOrder.GREVLEX)
        for a, b in itertools.combinations(gb.elements, 2):
            s = s_polynomial(a, b, gb.order)
            if not s.is_zero():
                _, r = poly_reduce(s, list(gb.elements), gb.order)
                assert r.is_zero()
        for g in gens:
            assert ideal_membership(g, gb)
        for perm in itertools.islice(itertools.permutations(gens), 6):
            assert buchberger_reduced(list(perm), gb.order).elements == gb.elements

    gb5 = buchberger_reduced(example5_polys, MonomialOrder.GREVLEX)
    expected = sorted(
        (g.monic() for g in example5_polys),
        key=lambda g: MonomialOrder.GREVLEX.key(g.leading_monomial()),
    )
    assert list(gb5.elements) == expected
    print("[criterion 8] PASS: all S-polynomials reduce to zero, generator "
          "permutations give identical bases, published basis is a fixed point")


def test_criterion_9_monte_carlo_consistency():
    started = time.monotonic()
    rng = random.Random(99)
    pairs = []
    for i in range(20):
        n = rng.randrange(2, 6)
        k = rng.randrange(2, 4)
        phi = _random_test_function(rng, n, k)
        raw = [F(rng.randrange(1, 8)) for _ in range(k)]
        total = sum(raw)
        point = [v / total for v in raw]
        pairs.append((phi, point))
    failures = 0
    for seed, (phi, point) in enumerate(pairs):
        est = monte_carlo_power(phi, [float(v) for v in point], 100000, seed)
        exact = exact_power(phi, point)
        if abs(est.estimate - float(exact)) > 4 * est.std_error + 1e-12:
            failures += 1
    elapsed = time.monotonic() - started
    assert failures == 0
    assert elapsed < 30.0
    print(f"[criterion 9] PASS: 20 runs of 100000 replications inside 4 "
          f"standard errors ({elapsed:.1f}s)")


def test_criterion_10_power_grid_contour_tightening(tmp_path):
    from powerpoly.cli import main as cli_main

    c = F(17, 20)  # asymptotic bivariate-normal calibration ~ 0.8485
    boundary = []
    for s in range(5):
        boundary.append((F(1, 4), F(s, 16)))
        boundary.append((F(s, 16), F(1, 4)))
    deviations = {}
    for n in (15, 40):
        phi = max_statistic_test(n, c)
        # Produce the CSV artifact through the CLI.
        test_path = tmp_path / f"maxstat_{n}.json"
        from powerpoly.cli import test_to_json

        test_path.write_text(json.dumps(test_to_json(phi)))
        out_csv = tmp_path / f"grid_{n}.csv"
        code = cli_main(
            ["power-grid", "--test", str(test_path), "--res", "41",
             "--max", "1/2", "--out", str(out_csv)]
        )
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "pi_1,pi_2,power"
        assert len(lines) == 1 + 41 * 41
        deviations[n] = max(
            abs(exact_power(phi, [a, b, 1 - a - b]) - F(1, 20))
            for a, b in boundary
        )
    assert deviations[40] < deviations[15]
    print(f"[criterion 10] PASS: boundary deviation from level 0.05 shrinks "
          f"{float(deviations[15]):.4f} -> {float(deviations[40]):.4f} as n grows")
