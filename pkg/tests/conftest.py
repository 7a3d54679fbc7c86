"""Shared fixtures: sympy conversions used as an independent oracle."""
from fractions import Fraction

import pytest
import sympy

from folres.algebra import Poly2
from folres.corpus import corpus
from folres.reduction import reduce

sx, sy, st = sympy.symbols("x y t")


def to_sympy(p: Poly2):
    return sum((sympy.Rational(c.numerator, c.denominator) * sx**i * sy**j for (i, j), c in p.terms),
               sympy.Integer(0))


def from_sympy(e) -> Poly2:
    poly = sympy.Poly(sympy.expand(e), sx, sy)
    return Poly2({m: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})


@pytest.fixture(scope="session")
def corpus_entries():
    return corpus()


@pytest.fixture(scope="session")
def reduced_corpus(corpus_entries):
    return [(e, reduce(e.omega)) for e in corpus_entries]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
