"""Exact arithmetic over the rationals.

Sparse bivariate polynomials (:class:`Poly2`), dense univariate polynomials
(:class:`Poly1`) and the handful of algorithms the blow-up machinery needs:
exact division, gcd, substitution and rational root isolation.

Coefficients are :class:`fractions.Fraction` throughout; nothing in this
module ever touches a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple, Union

Rat = Fraction
Scalar = Union[int, Fraction]
Exp = Tuple[int, int]

INFINITY = math.inf


def _rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _grlex_key(e: Exp):
    # higher total degree first, then higher power of x
    return (-(e[0] + e[1]), -e[0])


class Poly2:
    """Polynomial in two variables ``x``, ``y`` with rational coefficients.

    Stored as a mapping ``{(i, j): c}`` meaning ``c * x**i * y**j`` with no
    zero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Optional[Dict[Exp, Scalar]] = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _rat(c)
                if c:
                    i, j = e
                    if i < 0 or j < 0:
                        raise ValueError(f"negative exponent {e}")
                    t[(int(i), int(j))] = c
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: Dict[Exp, Fraction]) -> "Poly2":
        p = cls.__new__(cls)
        p._t = t
        p._h = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "Poly2":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def coerce(cls, other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        return cls.const(_rat(other))

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> List[Tuple[Exp, Fraction]]:
        """Terms in graded lexicographic order (highest degree first)."""
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]))

    def as_dict(self) -> Dict[Exp, Fraction]:
        return dict(self._t)

    def coeff(self, i: int, j: int) -> Fraction:
        return self._t.get((i, j), Fraction(0))

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == Poly2.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __repr__(self):
        return f"Poly2({self})"

    def __str__(self):
        return format_poly(self)

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        other = Poly2.coerce(other)
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Poly2._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-Poly2.coerce(other))

    def __rsub__(self, other):
        return Poly2.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _rat(other)
            if not c:
                return Poly2()
            return Poly2._raw({e: v * c for e, v in self._t.items()})
        other = Poly2.coerce(other)
        t: Dict[Exp, Fraction] = {}
        for (i1, j1), c1 in self._t.items():
            for (i2, j2), c2 in other._t.items():
                e = (i1 + i2, j1 + j2)
                t[e] = t.get(e, 0) + c1 * c2
        return Poly2._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly2.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Poly2":
        return self * _rat(c)

    # structure ----------------------------------------------------------
    def order(self):
        """Order at the origin; ``math.inf`` for the zero polynomial."""
        if not self._t:
            return INFINITY
        return min(i + j for i, j in self._t)

    def degree(self) -> int:
        if not self._t:
            return -1
        return max(i + j for i, j in self._t)

    def order_in_x(self):
        """Largest ``k`` with ``x**k`` dividing ``self`` (order along ``{x=0}``)."""
        if not self._t:
            return INFINITY
        return min(i for i, _ in self._t)

    def order_in_y(self):
        if not self._t:
            return INFINITY
        return min(j for _, j in self._t)

    def degree_in_x(self) -> int:
        return max((i for i, _ in self._t), default=-1)

    def degree_in_y(self) -> int:
        return max((j for _, j in self._t), default=-1)

    def homogeneous_part(self, k: int) -> "Poly2":
        return Poly2._raw({e: c for e, c in self._t.items() if e[0] + e[1] == k})

    def constant_term(self) -> Fraction:
        return self._t.get((0, 0), Fraction(0))

    def leading_term(self) -> Tuple[Exp, Fraction]:
        """Leading term for the lexicographic order with ``x > y``."""
        e = max(self._t)
        return e, self._t[e]

    def diff_x(self) -> "Poly2":
        return Poly2._raw({(i - 1, j): c * i for (i, j), c in self._t.items() if i})

    def diff_y(self) -> "Poly2":
        return Poly2._raw({(i, j - 1): c * j for (i, j), c in self._t.items() if j})

    def div_monomial(self, i: int, j: int) -> "Poly2":
        """Exact division by ``x**i * y**j``; raises if not divisible."""
        t = {}
        for (a, b), c in self._t.items():
            if a < i or b < j:
                raise ArithmeticError(f"x^{i} y^{j} does not divide {self}")
            t[(a - i, b - j)] = c
        return Poly2._raw(t)

    def evaluate(self, x: Scalar, y: Scalar) -> Fraction:
        x, y = _rat(x), _rat(y)
        return sum((c * x**i * y**j for (i, j), c in self._t.items()), Fraction(0))

    def at_x0(self) -> "Poly1":
        """Restriction to ``{x=0}`` as a univariate polynomial in ``y``."""
        d = {}
        for (i, j), c in self._t.items():
            if i == 0:
                d[j] = c
        return Poly1.from_dict(d)

    def at_y0(self) -> "Poly1":
        """Restriction to ``{y=0}`` as a univariate polynomial in ``x``."""
        d = {}
        for (i, j), c in self._t.items():
            if j == 0:
                d[i] = c
        return Poly1.from_dict(d)

    def swap(self) -> "Poly2":
        return Poly2._raw({(j, i): c for (i, j), c in self._t.items()})

    def translate(self, x0: Scalar, y0: Scalar) -> "Poly2":
        """``p(x + x0, y + y0)``."""
        x0, y0 = _rat(x0), _rat(y0)
        if not x0 and not y0:
            return self
        return substitute(self, Poly2({(1, 0): 1, (0, 0): x0}), Poly2({(0, 1): 1, (0, 0): y0}))

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self._t:
            return Fraction(0)
        nums = [c.numerator for c in self._t.values()]
        dens = [c.denominator for c in self._t.values()]
        return Fraction(reduce(math.gcd, nums), reduce(_lcm, dens))

    def primitive(self) -> "Poly2":
        """Content 1 and first term (graded lex) positive."""
        if not self._t:
            return self
        c = self.content()
        if self.terms[0][1] < 0:
            c = -c
        return self * (1 / c)

    def is_univariate_in_x(self) -> bool:
        return all(j == 0 for _, j in self._t)

    def to_poly1_x(self) -> "Poly1":
        if not self.is_univariate_in_x():
            raise ValueError(f"{self} depends on y")
        return self.at_y0()


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


X = Poly2.x()
Y = Poly2.y()
ONE = Poly2.const(1)
ZERO = Poly2()


def _fmt_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_rat(c: Scalar) -> str:
    """Canonical ``p/q`` (or ``p``) printing with ``q > 0``."""
    return _fmt_rat(_rat(c))


def _fmt_mono(i: int, j: int, names: Tuple[str, str]) -> str:
    parts = []
    for k, v in ((i, names[0]), (j, names[1])):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: Poly2, names: Tuple[str, str] = ("x", "y")) -> str:
    if p.is_zero():
        return "0"
    out = []
    for n, ((i, j), c) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _fmt_mono(i, j, names)
        if not mono:
            body = _fmt_rat(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_rat(a)}*{mono}"
        if n == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def order_at_origin(p: Poly2):
    return p.order()


def homogeneous_part(p: Poly2, k: int) -> Poly2:
    return p.homogeneous_part(k)


def substitute(p: Poly2, sx: Poly2, sy: Poly2) -> Poly2:
    """Expand ``p(sx, sy)`` exactly."""
    sx, sy = Poly2.coerce(sx), Poly2.coerce(sy)
    if p.is_zero():
        return Poly2()
    mi = p.degree_in_x()
    mj = p.degree_in_y()
    px = [ONE]
    for _ in range(mi):
        px.append(px[-1] * sx)
    py = [ONE]
    for _ in range(mj):
        py.append(py[-1] * sy)
    # group by power of y to share products
    by_j: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), c in p.as_dict().items():
        by_j.setdefault(j, {})[i] = c
    acc: Dict[Exp, Fraction] = {}
    for j, row in by_j.items():
        inner: Dict[Exp, Fraction] = {}
        for i, c in row.items():
            for e, v in px[i].as_dict().items():
                inner[e] = inner.get(e, 0) + c * v
        prod = Poly2._raw({e: v for e, v in inner.items() if v}) * py[j]
        for e, v in prod.as_dict().items():
            acc[e] = acc.get(e, 0) + v
    return Poly2._raw({e: v for e, v in acc.items() if v})


def exact_quotient(g: Poly2, f: Poly2) -> Optional[Poly2]:
    """Return ``h`` with ``g = f*h`` or ``None`` when ``f`` does not divide ``g``.

    Division by a single polynomial with the lex order; since ``{f}`` is a
    Groebner basis of ``(f)`` a nonzero remainder means non-divisibility.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (fi, fj), fc = f.leading_term()
    r = dict(g.as_dict())
    q: Dict[Exp, Fraction] = {}
    ft = f.as_dict()
    while r:
        (ri, rj) = max(r)
        rc = r[(ri, rj)]
        if ri < fi or rj < fj:
            return None
        e = (ri - fi, rj - fj)
        c = rc / fc
        q[e] = q.get(e, 0) + c
        for (a, b), v in ft.items():
            k = (a + e[0], b + e[1])
            s = r.get(k, 0) - c * v
            if s:
                r[k] = s
            else:
                r.pop(k, None)
    return Poly2({e: c for e, c in q.items() if c})


def divides(f: Poly2, g: Poly2) -> bool:
    return exact_quotient(g, f) is not None


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly1:
    """Dense univariate polynomial, ``coeffs[k]`` is the coefficient of ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_dict(cls, d: Dict[int, Scalar]) -> "Poly1":
        if not d:
            return cls()
        n = max(d)
        return cls([d.get(k, 0) for k in range(n + 1)])

    @classmethod
    def from_roots(cls, roots: Iterable[Tuple[Scalar, int]], lead: Scalar = 1) -> "Poly1":
        p = cls([lead])
        for r, m in roots:
            for _ in range(m):
                p = p * cls([-_rat(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def order(self):
        """Order of vanishing at ``t = 0``; ``math.inf`` for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return INFINITY

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1({format_poly(self.to_poly2(), ('t', '_'))})"

    def __call__(self, t: Scalar) -> Fraction:
        t = _rat(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly1([u + v for u, v in zip(a, b)])

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other: "Poly1") -> "Poly1":
        return self + (-other)

    def __mul__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            return Poly1([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly1") -> Tuple["Poly1", "Poly1"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly1(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.lead()
        for k in range(dq, -1, -1):
            c = r[k + other.degree] / lc
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[k + i] -= c * b
        return Poly1(q), Poly1(r[: other.degree])

    def monic(self) -> "Poly1":
        if not self.coeffs:
            return self
        return self * (1 / self.lead())

    def derivative(self) -> "Poly1":
        return Poly1([k * c for k, c in enumerate(self.coeffs)][1:])

    def integral(self) -> "Poly1":
        """Antiderivative vanishing at 0."""
        return Poly1([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, t0: Scalar) -> "Poly1":
        """``q(t + t0)``."""
        t0 = _rat(t0)
        out = Poly1()
        lin = Poly1([t0, 1])
        for c in reversed(self.coeffs):
            out = out * lin + Poly1([c])
        return out

    def to_poly2(self, var: str = "x") -> Poly2:
        if var == "x":
            return Poly2({(k, 0): c for k, c in enumerate(self.coeffs)})
        return Poly2({(0, k): c for k, c in enumerate(self.coeffs)})


def poly1_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(q: Poly1) -> Tuple[List[Tuple[Fraction, int]], Poly1]:
    """All rational roots of ``q`` with multiplicities and the root-free cofactor.

    The residual is returned with the leading coefficient of ``q`` so that
    ``prod (t - r)**m * residual == q`` exactly.
    """
    if q.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    roots: List[Tuple[Fraction, int]] = []
    rest = q
    k = rest.order()
    if k:
        roots.append((Fraction(0), k))
        rest = Poly1(rest.coeffs[k:])
    if rest.degree >= 1:
        den = reduce(_lcm, (c.denominator for c in rest.coeffs))
        ints = [int(c * den) for c in rest.coeffs]
        g = reduce(math.gcd, ints)
        ints = [c // g for c in ints]
        cands = set()
        for p in _divisors(ints[0]):
            for s in _divisors(ints[-1]):
                cands.add(Fraction(p, s))
                cands.add(Fraction(-p, s))
        for r in sorted(cands):
            if rest.degree < 1:
                break
            m = 0
            lin = Poly1([-r, 1])
            while rest.degree >= 1 and rest(r) == 0:
                rest = rest.divmod(lin)[0]
                m += 1
            if m:
                roots.append((r, m))
    roots.sort()
    return roots, rest


def is_rational_square(r: Scalar) -> Optional[Fraction]:
    r = _rat(r)
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


# ---------------------------------------------------------------------------
# gcd in Q[x, y]: recursive primitive PRS with y as main variable


def _ycoeffs(p: Poly2) -> List[Poly1]:
    rows: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), c in p.as_dict().items():
        rows.setdefault(j, {})[i] = c
    n = p.degree_in_y()
    return [Poly1.from_dict(rows.get(j, {})) for j in range(n + 1)]


def _from_ycoeffs(cs: List[Poly1]) -> Poly2:
    t = {}
    for j, c in enumerate(cs):
        for i, v in enumerate(c.coeffs):
            if v:
                t[(i, j)] = v
    return Poly2(t)


def _trim(cs: List[Poly1]) -> List[Poly1]:
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _ycontent(cs: List[Poly1]) -> Poly1:
    g = Poly1()
    for c in cs:
        g = poly1_gcd(g, c)
        if g.degree == 0:
            break
    return g


def _ydiv(cs: List[Poly1], c: Poly1) -> List[Poly1]:
    out = []
    for a in cs:
        q, r = a.divmod(c)
        assert r.is_zero()
        out.append(q)
    return out


def _prem(a: List[Poly1], b: List[Poly1]) -> List[Poly1]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - c * la
        a = _trim(a)
    return a


def gcd2(f: Poly2, g: Poly2) -> Poly2:
    """Greatest common divisor, content 1 and first (graded lex) term positive."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd2 of two zero polynomials")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = _ycoeffs(f), _ycoeffs(g)
    ca, cb = _ycontent(a), _ycontent(b)
    c = poly1_gcd(ca, cb)
    a, b = _ydiv(a, ca), _ydiv(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            a = b
            break
        r = _ydiv(r, _ycontent(r))
        a, b = b, r
    else:
        # b has y-degree 0: the primitive parts are coprime in y
        a = [Poly1([1])]
    if len(a) > 1:
        a = _ydiv(a, _ycontent(a))
    else:
        a = [Poly1([1])]
    return (_from_ycoeffs(a) * c.to_poly2("x")).primitive()
