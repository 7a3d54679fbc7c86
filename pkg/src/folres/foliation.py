"""Germs of foliations ``a dx + b dy`` and their pointwise invariants.

A :class:`OneForm` is always read in local coordinates centred at the point
of interest, so every question here is asked at the origin. Reference curves
for :func:`ind` and :func:`tan` are either the axis ``{y=0}`` or a smooth
curve given by a polynomial parametrization ``t -> (X(t), Y(t))``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .algebra import ONE, Poly2, divides, gcd2, is_rational_square, substitute
from .errors import IsInvariant, NotInvariant

Direction = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class OneForm:
    """``a dx + b dy`` with polynomial coefficients.

    ``removed_unit`` is the common factor divided out by :meth:`primitivized`;
    forms produced internally by blow-ups keep the default ``1``.
    """

    a: Poly2
    b: Poly2
    removed_unit: Poly2 = field(default=ONE, compare=False)

    def __post_init__(self):
        if self.a.is_zero() and self.b.is_zero():
            raise ValueError("the zero 1-form does not define a foliation")

    @classmethod
    def primitivized(cls, a: Poly2, b: Poly2) -> "OneForm":
        g = gcd2(a, b)
        if g.is_constant():
            return cls(a, b)
        qa = a if a.is_zero() else _div(a, g)
        qb = b if b.is_zero() else _div(b, g)
        return cls(qa, qb, g)

    def raw(self) -> Tuple[Poly2, Poly2]:
        """Coefficients before primitivization."""
        return self.a * self.removed_unit, self.b * self.removed_unit

    def scale(self, u: Poly2) -> "OneForm":
        return OneForm(self.a * u, self.b * u)

    def translate(self, x0, y0) -> "OneForm":
        return OneForm(self.a.translate(x0, y0), self.b.translate(x0, y0))

    def swap(self) -> "OneForm":
        """Exchange the roles of the two coordinates."""
        return OneForm(self.b.swap(), self.a.swap())

    def is_singular(self) -> bool:
        return self.a.constant_term() == 0 and self.b.constant_term() == 0

    def __str__(self):
        return format_form(self)


def _div(p: Poly2, g: Poly2) -> Poly2:
    from .algebra import exact_quotient

    q = exact_quotient(p, g)
    assert q is not None
    return q


def format_form(w: OneForm) -> str:
    parts = []
    for c, d in ((w.a, "dx"), (w.b, "dy")):
        if not c.is_zero():
            parts.append(f"({c}) {d}")
    return " + ".join(parts)


def pullback(w: OneForm, sx: Poly2, sy: Poly2) -> OneForm:
    """Pull ``w`` back along ``(x, y) = (sx(u, v), sy(u, v))``.

    The result is expressed in the new coordinates, again named ``x``, ``y``.
    """
    a = substitute(w.a, sx, sy)
    b = substitute(w.b, sx, sy)
    return OneForm(a * sx.diff_x() + b * sy.diff_x(), a * sx.diff_y() + b * sy.diff_y())


def multiplicity(w: OneForm) -> int:
    return min(w.a.order(), w.b.order())


def is_separatrix(f: Poly2, w: OneForm) -> bool:
    """``f`` divides ``df ^ w``."""
    if f.is_zero():
        raise ValueError("zero curve")
    return divides(f, f.diff_x() * w.b - f.diff_y() * w.a)


class Kind(str, enum.Enum):
    REGULAR = "Regular"
    REDUCED = "Reduced"
    SADDLE_NODE = "SaddleNode"
    NON_REDUCED = "NonReduced"


@dataclass(frozen=True)
class SingClass:
    """Classification of the linear part of the dual field ``-b d/dx + a d/dy``.

    For a saddle-node ``strong`` and ``weak`` are projective tangent
    directions ``(dx, dy)``, normalized so the first nonzero entry is 1.
    """

    kind: Kind
    trace: Fraction = Fraction(0)
    det: Fraction = Fraction(0)
    ratio: Optional[Fraction] = None
    strong: Optional[Direction] = None
    weak: Optional[Direction] = None

    def to_json(self) -> dict:
        from .algebra import format_rat

        d = {"kind": self.kind.value, "trace": format_rat(self.trace), "det": format_rat(self.det)}
        if self.ratio is not None:
            d["ratio"] = format_rat(self.ratio)
        if self.strong is not None:
            d["strong"] = [format_rat(c) for c in self.strong]
            d["weak"] = [format_rat(c) for c in self.weak]
        return d


def _normdir(p: Fraction, q: Fraction) -> Direction:
    if p:
        return (Fraction(1), q / p)
    return (Fraction(0), Fraction(1))


def linear_part(w: OneForm):
    """Matrix of the linear part of ``-b d/dx + a d/dy`` at the origin."""
    bx, by = w.b.coeff(1, 0), w.b.coeff(0, 1)
    ax, ay = w.a.coeff(1, 0), w.a.coeff(0, 1)
    return ((-bx, -by), (ax, ay))


def _kernel(m) -> Direction:
    (p, q), (r, s) = m
    if p or q:
        return _normdir(-q, p)
    if r or s:
        return _normdir(-s, r)
    raise ValueError("zero matrix has no one-dimensional kernel")


def classify_at_origin(w: OneForm) -> SingClass:
    if not w.is_singular():
        return SingClass(Kind.REGULAR)
    m = linear_part(w)
    (p, q), (r, s) = m
    tr = p + s
    det = p * s - q * r
    if det:
        disc = tr * tr - 4 * det
        root = is_rational_square(disc)
        if root is None:
            # irrational (or non-real) eigenvalue ratio
            return SingClass(Kind.REDUCED, tr, det)
        l1, l2 = (tr + root) / 2, (tr - root) / 2
        ratio = l1 / l2
        kind = Kind.NON_REDUCED if ratio > 0 else Kind.REDUCED
        return SingClass(kind, tr, det, ratio)
    if tr:
        weak = _kernel(m)
        # eigenvector of the eigenvalue tr: kernel of m - tr*I
        strong = _kernel(((p - tr, q), (r, s - tr)))
        return SingClass(Kind.SADDLE_NODE, tr, det, Fraction(0), strong, weak)
    return SingClass(Kind.NON_REDUCED, tr, det)


# ---------------------------------------------------------------------------
# index and tangency order


def _param_values(w: OneForm, gx: Poly2, gy: Poly2):
    return substitute(w.a, gx, gy), substitute(w.b, gx, gy)


def is_invariant_param(w: OneForm, gx: Poly2, gy: Poly2) -> bool:
    """Whether the parametrized curve ``t -> (gx(t), gy(t))`` is a leaf."""
    a, b = _param_values(w, gx, gy)
    return (a * gx.diff_x() + b * gy.diff_x()).is_zero()


def ind_along(w: OneForm, gx: Poly2, gy: Poly2) -> int:
    """Index of ``w`` at ``t=0`` along a smooth invariant parametrized curve.

    Parametrizations are polynomials in the variable ``x`` of :class:`Poly2`,
    passing through the origin with nonzero velocity. The index is the order
    of vanishing of the dual vector field restricted to the curve.
    """
    _check_smooth(gx, gy)
    a, b = _param_values(w, gx, gy)
    if not (a * gx.diff_x() + b * gy.diff_x()).is_zero():
        raise NotInvariant("reference curve is not invariant")
    return int(min(a.order(), b.order()))


def tan_along(w: OneForm, gx: Poly2, gy: Poly2) -> int:
    """Tangency order of ``w`` with a smooth non-invariant parametrized curve."""
    _check_smooth(gx, gy)
    a, b = _param_values(w, gx, gy)
    val = a * gx.diff_x() + b * gy.diff_x()
    if val.is_zero():
        raise IsInvariant("reference curve is invariant")
    return int(val.order())


def _check_smooth(gx: Poly2, gy: Poly2):
    if not (gx.is_univariate_in_x() and gy.is_univariate_in_x()):
        raise ValueError("parametrization must depend on one variable")
    if gx.constant_term() or gy.constant_term():
        raise ValueError("parametrized curve must pass through the origin")
    if not (gx.coeff(1, 0) or gy.coeff(1, 0)):
        raise ValueError("parametrized curve must be smooth at the origin")


_T = Poly2.x()
_ZERO = Poly2()


def ind(w: OneForm) -> int:
    """``Ind`` along ``{y=0}``: order in ``x`` of ``b(x, 0)``."""
    if not w.a.at_y0().is_zero():
        raise NotInvariant("{y=0} is not invariant")
    return int(w.b.at_y0().order())


def tan(w: OneForm) -> int:
    """``Tan`` along ``{y=0}``: order in ``x`` of ``a(x, 0)``."""
    a0 = w.a.at_y0()
    if a0.is_zero():
        raise IsInvariant("{y=0} is invariant")
    return int(a0.order())


def ind_axis(w: OneForm, axis: int) -> int:
    """Index along ``{x=0}`` (``axis=0``) or ``{y=0}`` (``axis=1``)."""
    return ind(w.swap() if axis == 0 else w)


def tan_axis(w: OneForm, axis: int) -> int:
    return tan(w.swap() if axis == 0 else w)


def axis_invariant(w: OneForm, axis: int) -> bool:
    v = w.swap() if axis == 0 else w
    return v.a.at_y0().is_zero()


def axis_direction(axis: int) -> Direction:
    """Tangent direction of the axis ``{x=0}`` (0) or ``{y=0}`` (1)."""
    return (Fraction(0), Fraction(1)) if axis == 0 else (Fraction(1), Fraction(0))


def straighten(f: Poly2):
    """Parametrize a smooth germ ``{f=0}`` through the origin if it is a graph.

    Returns ``(gx, gy)`` when ``f`` is linear in one variable with a unit
    coefficient, e.g. ``y - g(x)`` or ``x - g(y)``; otherwise ``None``.
    """
    if f.constant_term():
        raise ValueError("curve does not pass through the origin")
    for var in (1, 0):
        g = f if var == 1 else f.swap()
        # g = c*y + h(x) with c constant nonzero
        lin = {e: c for e, c in g.as_dict().items() if e[1] == 1}
        if all(e[1] <= 1 for e in g.as_dict()) and list(lin) == [(0, 1)]:
            c = lin[(0, 1)]
            h = Poly2({e: v for e, v in g.as_dict().items() if e[1] == 0})
            gy = h * (-1 / c)
            return (_T, gy) if var == 1 else (gy, _T)
    return None


@dataclass(frozen=True)
class CurveGerm:
    """Reduced equation of a curve germ, written in the local coordinates of
    the patch at ``at`` (the empty address is the origin of the plane).

    Germs living on the divisor rather than at the origin need ``param``, a
    polynomial parametrization ``(X(t), Y(t))`` (in the variable ``x``) used
    to push them down; the equation alone is used above the patch.
    """

    f: Poly2
    at: tuple = ()
    param: Optional[Tuple[Poly2, Poly2]] = None

    def __post_init__(self):
        if self.f.is_zero():
            raise ValueError("zero curve")
        if self.f.constant_term():
            raise ValueError(f"{self.f} does not pass through the point")
        if self.at and self.param is None:
            raise ValueError("a germ away from the origin needs a parametrization")

    def to_json(self) -> dict:
        from .algebra import format_rat

        d = {"f": str(self.f)}
        if self.at:
            d["at"] = [[c, None if s is None else format_rat(s)] for c, s in self.at]
            d["param"] = [format_poly_t(p) for p in self.param]
        return d


def format_poly_t(p: Poly2) -> str:
    from .algebra import format_poly

    return format_poly(p, ("t", "_"))
