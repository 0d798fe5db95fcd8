"""Shared test data: worked examples frozen from the reference tables."""

from fractions import Fraction

import pytest

from powerpoly import parse_polynomial

VARS3 = ["p1", "p2", "p3"]

# Reduced Groebner basis of the constrained 2x3 independence model
# (graded reverse lex on p11 > p12 > p13 > p21 > p22).
EXAMPLE5_VARS = ["p11", "p12", "p13", "p21", "p22"]
EXAMPLE5_BASIS = [
    "p11 - p12 - p13 + 2*p21",
    "p12*p21 - p12*p22 - p13*p22 + 2*p21*p22",
    "2*p12^2 + 4*p12*p13 + 2*p13^2 - 4*p13*p21 + 2*p21^2"
    " - 4*p12*p22 - 4*p13*p22 + 8*p21*p22 - p12 - p13 + 2*p21",
    "2*p13^2*p21 - 4*p13*p21^2 + 2*p21^3 + 2*p12*p13*p22 + 2*p13^2*p22"
    " - 8*p13*p21*p22 + 6*p21^2*p22 - 4*p12*p22^2 - 4*p13*p22^2"
    " + 8*p21*p22^2 - p13*p21 + 2*p21^2",
]

# Published coefficient-polytope vertex tables for n = 3, alpha = 1/20.
# Coordinates as printed; the printed order lists h_{p3}, h_{p2}, h_{p1}.
PRINTED_VERTICES_SUM = [
    ("-0.05", "0.05", "-0.05"),
    ("0.05", "0.1", "-0.05"),
    ("-0.05", "-0.05", "-0.05"),
    ("0.05", "-0.05", "-0.05"),
    ("-0.05", "-0.05", "0.05"),
    ("0.05", "-0.05", "0.1"),
    ("-0.05", "0.05", "0.05"),
    ("0.15", "0.15", "0.15"),
]

PRINTED_VERTICES_WEIGHTED = [
    ("-0.05", "-0.025", "-0.0125"),
    ("0.0625", "-0.025", "0.1"),
    ("-0.0375", "-0.0375", "0"),
    ("0.0125", "-0.05", "0.05"),
    ("0.05", "-0.5", "0.0875"),  # first coordinate suspected misprint of -0.05
    ("0.0375", "-0.0375", "0"),
    ("0.03438", "-0.025", "-0.0125"),
    ("0.05", "-0.05", "0.05"),
    ("-0.03438", "0.09219", "-0.0125"),  # sign of first coordinate suspect
    ("-0.0125", "0.06875", "-0.0125"),
    ("0.05", "0.1", "0.05"),
    ("0.0625", "0.0875", "0.1"),
    ("-0.05", "0.03125", "-0.0125"),
]


@pytest.fixture
def example5_polys():
    return [parse_polynomial(s, EXAMPLE5_VARS) for s in EXAMPLE5_BASIS]


def printed_to_exact(table):
    """Decimal strings to Fractions (exact: the decimals terminate)."""
    return [tuple(Fraction(x) for x in row) for row in table]


def simplex_points_3():
    """A few exact rational points on the 2-simplex."""
    return [
        (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
        (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
        (Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)),
        (Fraction(7, 10), Fraction(1, 10), Fraction(1, 5)),
        (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
    ]
