"""Batch command-line front end.

Subcommands: gb, threshold, separating, umpu, polytope-exists,
power-grid, recover-test, mc-validate.  JSON artifacts are versioned and
deterministic; exit codes separate mathematical verdicts from failures:

    0  success
    1  error (bad input, violated precondition)
    2  analysis verdict "does not exist"
    3  step limit exceeded
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from powerpoly import __version__
from powerpoly.groebner import (
    StepCounter,
    StepLimitExceeded,
    buchberger_reduced,
)
from powerpoly.hypotheses import (
    ALGEBRAIC,
    LOGODDS,
    POLYTOPE,
    NullHypothesis,
    build_hypothesis,
    polytope_existence,
    sample_null_points,
)
from powerpoly.parser import format_polynomial, parse_polynomial, parse_rational
from powerpoly.polynomial import MonomialOrder, Polynomial, default_names
from powerpoly.power import (
    TestFunction,
    box_check,
    exact_power,
    monte_carlo_power,
    recover_test,
    test_to_power,
)
from powerpoly.threshold import rank_threshold, sos_bounds
from powerpoly.umpu import EXISTS, NOT_EXISTS, coefficient_polytope, enumerate_vertices, umpu_search

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_EXISTS = 2
EXIT_STEP_LIMIT = 3


class CliError(Exception):
    pass


def _emit(payload: dict, out_path: str | None):
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rat(value: Fraction) -> str:
    return str(Fraction(value))


def _point(values) -> list[str]:
    return [_rat(v) for v in values]


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read JSON from {path}: {exc}") from exc


def _load_hypothesis(path: str) -> NullHypothesis:
    return build_hypothesis(_load_json(path))


def _order(name: str) -> MonomialOrder:
    try:
        return MonomialOrder(name)
    except ValueError:
        raise CliError(f"unknown monomial order {name!r} (use grevlex or grlex)")


def _counter(args) -> StepCounter | None:
    limit = getattr(args, "step_limit", None)
    return StepCounter(limit) if limit else None


def _parse_test_json(payload: dict) -> TestFunction:
    try:
        n, k = int(payload["n"]), int(payload["k"])
        values = {
            tuple(int(v) for v in entry["x"]): parse_rational(str(entry["phi"]))
            for entry in payload["values"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed test-function JSON: {exc}") from exc
    return TestFunction(n, k, values)


def test_to_json(phi: TestFunction) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": phi.n,
        "k": phi.k,
        "values": [{"x": list(x), "phi": _rat(v)} for x, v in phi.items()],
    }


# -- subcommands --------------------------------------------------------------


def cmd_gb(args) -> int:
    names = args.vars.split(",")
    gens = [parse_polynomial(text, names) for text in args.gens]
    gb = buchberger_reduced(gens, _order(args.order), _counter(args))
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "order": gb.order.value,
            "vars": names,
            "basis": [format_polynomial(g, names, gb.order) for g in gb.elements],
            "degrees": [g.total_degree() for g in gb.elements],
        },
        args.out,
    )
    return EXIT_OK


def _threshold_payload(hyp: NullHypothesis, args) -> dict:
    names = hyp.substituted_names()
    if hyp.family == "rank_lt":
        report = rank_threshold(hyp.params["p"], hyp.params["q"], hyp.params["r"])
        witness_names = list(hyp.names)
    else:
        if hyp.kind not in (ALGEBRAIC, LOGODDS):
            raise CliError(
                "threshold bounds need an algebraic hypothesis; "
                "use polytope-exists for polytope hypotheses"
            )
        weights = None
        if args.weights:
            weights = [parse_rational(w) for w in args.weights.split(",")]
        gb = buchberger_reduced(
            hyp.substituted_generators(), MonomialOrder.GREVLEX, _counter(args)
        )
        report = sos_bounds(
            gb,
            hypothesis=hyp,
            weights=weights,
            assert_nonvanishing_gradient=args.assert_gradient,
            counter=_counter(args),
        )
        witness_names = names
    payload = {
        "schema_version": SCHEMA_VERSION,
        "family": hyp.family,
        "ntub_bound": report.ntub_bound,
        "sub_bound": report.sub_bound,
        "cut_out_degree": report.cut_out_degree,
        "ntub_witness": format_polynomial(report.ntub_witness, witness_names),
        "sub_witness": format_polynomial(report.sub_witness, witness_names),
        "exactness": report.exactness,
        "theorem": report.theorem,
        "notes": list(report.notes),
    }
    payload["gradient_evidence"] = _gradient_evidence(hyp)
    return payload


def _gradient_evidence(hyp: NullHypothesis, points: int = 10) -> dict:
    """Spot-check that generator gradients do not vanish on sampled nulls."""
    try:
        samples = sample_null_points(hyp, points, seed=7)
    except (ValueError, NotImplementedError):
        return {"checked_points": 0, "nonvanishing_at_all_points": None}
    gens = list(hyp.generators)
    if not gens:
        return {"checked_points": 0, "nonvanishing_at_all_points": None}
    ok = True
    for point in samples:
        for g in gens:
            grad = [g.derivative(i).evaluate(point) for i in range(g.nvars)]
            if not any(grad):
                ok = False
    return {"checked_points": len(samples), "nonvanishing_at_all_points": ok}


def cmd_threshold(args) -> int:
    hyp = _load_hypothesis(args.hypothesis)
    _emit(_threshold_payload(hyp, args), args.out)
    return EXIT_OK


def cmd_separating(args) -> int:
    hyp = _load_hypothesis(args.hypothesis)
    if hyp.kind == POLYTOPE:
        verdict = polytope_existence(hyp.polytope_a, hyp.polytope_b, hyp.k)
        names = list(hyp.names[: hyp.k - 1])
        if not verdict.exists:
            _emit(
                {
                    "schema_version": SCHEMA_VERSION,
                    "exists": False,
                    "failing_pair": list(verdict.failing_pair),
                    "witness_point": _point(verdict.witness_point),
                },
                args.out,
            )
            return EXIT_NOT_EXISTS
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "exists": True,
                "separating": format_polynomial(verdict.witness, names),
                "kind": "SUB",
            },
            args.out,
        )
        return EXIT_OK
    payload = _threshold_payload(hyp, args)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "family": payload["family"],
            "ntub_separating": payload["ntub_witness"],
            "sub_separating": payload["sub_witness"],
            "ntub_degree": payload["ntub_bound"],
            "sub_degree": payload["sub_bound"],
        },
        args.out,
    )
    return EXIT_OK


def cmd_polytope_exists(args) -> int:
    hyp = _load_hypothesis(args.hypothesis)
    if hyp.kind != POLYTOPE:
        raise CliError("polytope-exists requires a polytope hypothesis")
    verdict = polytope_existence(hyp.polytope_a, hyp.polytope_b, hyp.k)
    names = list(hyp.names[: hyp.k - 1])
    payload = {"schema_version": SCHEMA_VERSION, "exists": verdict.exists}
    if verdict.exists:
        payload["separating"] = format_polynomial(verdict.witness, names)
    else:
        payload["failing_pair"] = list(verdict.failing_pair)
        payload["witness_point"] = _point(verdict.witness_point)
    _emit(payload, args.out)
    return EXIT_OK if verdict.exists else EXIT_NOT_EXISTS


def cmd_umpu(args) -> int:
    names = args.vars.split(",") if args.vars else None
    if names is None:
        raise CliError("--vars is required (comma-separated variable names)")
    f = parse_polynomial(args.f, names)
    alpha = parse_rational(args.alpha)
    verdict = umpu_search(f, args.n, alpha, _counter(args))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "status": verdict.status,
        "alpha": _rat(alpha),
        "n": args.n,
        "reason": verdict.reason,
    }
    if verdict.h_star is not None:
        payload["h_star"] = format_polynomial(verdict.h_star, names)
    if verdict.beta is not None:
        payload["beta"] = format_polynomial(verdict.beta.poly, names)
        payload["test"] = test_to_json(recover_test(verdict.beta))
    if verdict.certificate is not None:
        payload["failing_layer"] = verdict.failing_layer
        payload["certificate"] = [_point(p) for p in verdict.certificate]
    if args.emit_vertices:
        payload["vertices"] = [_point(v) for v in verdict.c_vertices]
    _emit(payload, args.out)
    return EXIT_OK if verdict.status != NOT_EXISTS else EXIT_NOT_EXISTS


def cmd_polytope(args) -> int:
    names = args.vars.split(",")
    f = parse_polynomial(args.f, names)
    alpha = parse_rational(args.alpha)
    poly = coefficient_polytope(f, args.n, alpha)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "dim": poly.dim,
        "h_index": [list(j) for j in poly.h_index],
        "rows": [
            {
                "L": list(row.index),
                "coeffs": _point(row.coeffs),
                "lower": _rat(row.lower),
                "upper": _rat(row.upper),
            }
            for row in poly.rows
        ],
        "halfspace_count": poly.halfspace_count(),
    }
    if args.enumerate:
        poly = enumerate_vertices(poly, _counter(args))
        payload["vertices"] = [_point(v) for v in poly.vertices]
        payload["vertex_count"] = len(poly.vertices)
    _emit(payload, args.out)
    return EXIT_OK


def cmd_power_grid(args) -> int:
    phi = _parse_test_json(_load_json(args.test))
    beta = test_to_power(phi).poly
    res = args.res
    if res < 2:
        raise CliError("resolution must be >= 2")
    top = parse_rational(args.max)
    if not 0 < top <= 1:
        raise CliError("--max must lie in (0, 1]")
    k = phi.k
    names = default_names(k)
    header = ",".join(f"pi_{i + 1}" for i in range(k - 1)) + ",power"
    lines = [header]
    grid = [Fraction(i, res - 1) * top for i in range(res)]
    points = []
    for combo in _row_major(grid, k - 1):
        if sum(combo) <= 1:
            points.append(combo)
    values = _grid_values(beta, points)
    for combo, value in zip(points, values):
        coords = ",".join(repr(float(c)) for c in combo)
        lines.append(f"{coords},{value!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _row_major(grid, dims):
    if dims == 0:
        yield ()
        return
    for head in grid:
        for rest in _row_major(grid, dims - 1):
            yield (head,) + rest


def _grid_values(beta: Polynomial, points) -> list[float]:
    jobs = [[float(c) for c in combo] + [float(1 - sum(combo))] for combo in points]
    threads = int(os.environ.get("POWERPOLY_THREADS", "1"))
    if threads > 1 and len(jobs) > 64:
        from concurrent.futures import ProcessPoolExecutor

        terms = [(mono, float(c)) for mono, c in beta.terms.items()]
        chunk = max(1, len(jobs) // (threads * 4))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            batches = [jobs[i : i + chunk] for i in range(0, len(jobs), chunk)]
            out: list[float] = []
            for part in pool.map(_eval_batch, [(terms, b) for b in batches]):
                out.extend(part)
            return out
    return [beta.evaluate_float(job) for job in jobs]


def _eval_batch(payload):
    terms, jobs = payload
    out = []
    for point in jobs:
        total = 0.0
        for mono, coeff in terms:
            value = coeff
            for x, e in zip(point, mono):
                if e:
                    value *= x**e
            total += value
        out.append(total)
    return out


def cmd_recover_test(args) -> int:
    names = args.vars.split(",")
    beta = parse_polynomial(args.beta, names)
    check = box_check(beta, args.n, len(names))
    if not check:
        raise CliError(f"not a power polynomial: {check.reason}")
    from powerpoly.power import PowerPolynomial

    phi = recover_test(PowerPolynomial(args.n, len(names), beta))
    _emit(test_to_json(phi), args.out)
    return EXIT_OK


def cmd_mc_validate(args) -> int:
    phi = _parse_test_json(_load_json(args.test))
    point = [parse_rational(v) for v in args.pi.split(",")]
    est = monte_carlo_power(phi, [float(v) for v in point], args.reps, args.seed)
    exact = exact_power(phi, point)
    diff = abs(est.estimate - float(exact))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "estimate": est.estimate,
        "std_error": est.std_error,
        "reps": est.reps,
        "seed": est.seed,
        "exact": _rat(exact),
        "exact_float": float(exact),
        "abs_diff": diff,
        "within_4_se": bool(diff <= 4 * est.std_error + 1e-12),
    }
    _emit(payload, args.out)
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerpoly",
        description="Exact unbiased-test existence, thresholds, and UMPU search "
        "for multinomial null hypotheses.",
    )
    parser.add_argument("--version", action="version", version=f"powerpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", help="reduced Groebner basis of generators")
    p.add_argument("--gens", action="append", required=True, help="polynomial (repeatable)")
    p.add_argument("--vars", required=True, help="comma-separated variable names")
    p.add_argument("--order", default="grevlex", choices=["grevlex", "grlex"])
    p.add_argument("--step-limit", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("threshold", help="NTUB/SUB threshold report for a hypothesis")
    p.add_argument("--hypothesis", required=True, help="hypothesis JSON path")
    p.add_argument("--weights", default=None, help="comma-separated positive rationals")
    p.add_argument("--assert-gradient", action="store_true",
                   help="assert the generator gradient is nonvanishing on P0")
    p.add_argument("--step-limit", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("separating", help="separating polynomials for a hypothesis")
    p.add_argument("--hypothesis", required=True)
    p.add_argument("--weights", default=None)
    p.add_argument("--assert-gradient", action="store_true")
    p.add_argument("--step-limit", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_separating)

    p = sub.add_parser("umpu", help="UMPU existence search for a principal hypothesis")
    p.add_argument("--f", required=True, help="ideal generator polynomial")
    p.add_argument("--vars", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True, help="exact rational, e.g. 1/20")
    p.add_argument("--emit-vertices", action="store_true")
    p.add_argument("--step-limit", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_umpu)

    p = sub.add_parser("coeff-polytope", help="coefficient polytope H-rep (and V-rep)")
    p.add_argument("--f", required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--enumerate", action="store_true", help="also enumerate vertices")
    p.add_argument("--step-limit", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("polytope-exists", help="UB existence for a polytope hypothesis")
    p.add_argument("--hypothesis", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polytope_exists)

    p = sub.add_parser("power-grid", help="CSV grid of exact power values")
    p.add_argument("--test", required=True, help="test-function JSON path")
    p.add_argument("--res", type=int, required=True, help="points per axis (>= 2)")
    p.add_argument("--max", default="1", help="grid upper bound per axis (rational)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_power_grid)

    p = sub.add_parser("recover-test", help="test function from a power polynomial")
    p.add_argument("--beta", required=True, help="power polynomial text")
    p.add_argument("--vars", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_recover_test)

    p = sub.add_parser("mc-validate", help="Monte-Carlo check of exact power")
    p.add_argument("--test", required=True)
    p.add_argument("--pi", required=True, help="comma-separated rational simplex point")
    p.add_argument("--reps", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mc_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StepLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STEP_LIMIT
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
