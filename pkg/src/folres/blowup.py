"""Point blow-ups in the two standard charts.

Chart 1 is ``(x, y) = (u, u*s)`` with exceptional divisor ``{u=0}``; chart 2
is ``(x, y) = (u*v, v)`` with divisor ``{v=0}``. Points of a new component
are addressed by the chart-1 coordinate ``s`` (translated to the origin),
except for the single point at infinity which is the origin of chart 2.

Curvettes and multiplicity bookkeeping work on a finished or partial
:class:`~folres.reduction.ResolutionTree` and only need its patch chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .algebra import X, Y, Poly2, substitute
from .foliation import OneForm, multiplicity, pullback

CHART1 = "1"
CHART2 = "2"


def chart_map(chart: str, s0: Fraction = Fraction(0)) -> Tuple[Poly2, Poly2]:
    """Map from local coordinates of a point of the new divisor to the centre."""
    if chart == CHART1:
        return X, X * (Y + s0)
    if chart == CHART2:
        return X * Y, Y
    raise ValueError(f"unknown chart {chart!r}")


def pullback_form(w: OneForm) -> Tuple[OneForm, OneForm]:
    """Total pullback of ``w`` to both charts (no division)."""
    return pullback(w, *chart_map(CHART1)), pullback(w, *chart_map(CHART2))


def is_dicritical_center(w: OneForm) -> bool:
    """Tangent-cone test ``x*a_nu + y*b_nu == 0``.

    A regular point (``nu = 0``) is never dicritical.
    """
    nu = multiplicity(w)
    if nu == 0:
        return False
    return (X * w.a.homogeneous_part(nu) + Y * w.b.homogeneous_part(nu)).is_zero()


@dataclass(frozen=True)
class DividedTransform:
    chart1: OneForm
    chart2: OneForm
    exponent: int
    center_multiplicity: int
    dicritical: bool


def divided_transform(w: OneForm) -> DividedTransform:
    """Pull back and divide by the exceptional coordinate to the power ``nu + eps``."""
    nu = multiplicity(w)
    dic = is_dicritical_center(w)
    m = nu + (1 if dic else 0)
    w1, w2 = pullback_form(w)
    d1 = OneForm(w1.a.div_monomial(m, 0), w1.b.div_monomial(m, 0))
    d2 = OneForm(w2.a.div_monomial(0, m), w2.b.div_monomial(0, m))
    # the exponent is exact: the divided form is not divisible by the divisor
    assert min(d1.a.order_in_x(), d1.b.order_in_x()) == 0
    assert min(d2.a.order_in_y(), d2.b.order_in_y()) == 0
    return DividedTransform(d1, d2, m, nu, dic)


def strict_transform(f: Poly2) -> Tuple[Poly2, Poly2, int]:
    """Strict transforms of ``{f=0}`` in both charts and the order of ``f``."""
    nu = int(f.order())
    f1 = substitute(f, *chart_map(CHART1)).div_monomial(nu, 0)
    f2 = substitute(f, *chart_map(CHART2)).div_monomial(0, nu)
    return f1, f2, nu


def strict_transform_at(f: Poly2, chart: str, s0: Fraction = Fraction(0)) -> Poly2:
    """Strict transform localized at one point of the new divisor."""
    nu = int(f.order())
    g = substitute(f, *chart_map(chart, s0))
    return g.div_monomial(nu, 0) if chart == CHART1 else g.div_monomial(0, nu)


def component_multiplicity(branch_multiplicities, is_origin: bool) -> int:
    """``nu`` of a new component: 1 over the origin, else the sum over the
    components through the centre."""
    if is_origin:
        return 1
    return sum(branch_multiplicities)


@dataclass(frozen=True)
class Curvette:
    """Smooth disc ``{s = coordinate}`` transverse to a component in its chart 1."""

    component: int
    coordinate: Fraction

    def to_json(self) -> dict:
        from .algebra import format_rat

        return {"curvette": {"component": self.component, "coordinate": format_rat(self.coordinate)}}


def push_down(tree, patch_id: int, gx: Poly2, gy: Poly2) -> Dict[int, int]:
    """Push a parametrized germ at ``patch_id`` down to the origin.

    ``gx``, ``gy`` are univariate (in ``x``) polynomials giving the germ in
    the patch's local coordinates. Returns the multiplicity of the image at
    every centre on the chain from the patch down to the origin where the
    image passes (the patch itself included when it is a centre).
    """
    out: Dict[int, int] = {}
    p = tree.patches[patch_id]
    while True:
        if p.is_center:
            if gx.constant_term() == 0 and gy.constant_term() == 0:
                out[p.id] = int(min(gx.order(), gy.order()))
            else:
                out[p.id] = 0
        if p.parent is None:
            return out
        sx, sy = chart_map(p.chart, p.coordinate or Fraction(0))
        gx, gy = substitute(sx, gx, gy), substitute(sy, gx, gy)
        p = tree.patches[p.parent]


def curvette_parametrization(tree, c: Curvette) -> Tuple[int, Poly2, Poly2]:
    """Parametrization of a curvette in the coordinates of its component's
    birth centre."""
    comp = tree.components[c.component]
    return comp.birth, X, X * c.coordinate


def curvette_blowdown_multiplicities(tree, c: Curvette) -> Dict[int, int]:
    """Map centre patch id -> multiplicity of the blown-down curvette there.

    Centres off the chain below the component are omitted (value 0).
    """
    birth, gx, gy = curvette_parametrization(tree, c)
    return push_down(tree, birth, gx, gy)
