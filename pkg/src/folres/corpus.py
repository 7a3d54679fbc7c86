"""A dicritical family with n tangent separatrices and the fixed verification corpus."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import X, Y, Poly1, Poly2
from .blowup import CHART1
from .errors import InvalidParams
from .foliation import CurveGerm, OneForm


@dataclass(frozen=True)
class FamilyParams:
    n: int
    r: Tuple[int, ...]
    t: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParams("n must be at least 2")
        if len(self.r) != self.n or len(self.t) != self.n:
            raise InvalidParams("r and t must have n entries")
        if any(int(k) != k or k < 1 for k in self.r):
            raise InvalidParams("orders r_j must be positive integers")
        if len(set(self.t)) != self.n:
            raise InvalidParams("tangency points t_j must be pairwise distinct")

    @classmethod
    def make(cls, n: int, r: Sequence[int], t: Sequence) -> "FamilyParams":
        return cls(n, tuple(int(k) for k in r), tuple(Fraction(s) for s in t))

    @property
    def total(self) -> int:
        return sum(self.r)

    def derivative_q(self) -> Poly1:
        """``Q'(s) = prod (s - t_j)^{r_j}``."""
        return Poly1.from_roots(zip(self.t, self.r))

    def q(self) -> Poly1:
        """``Q`` with ``Q(0) = 0``."""
        return self.derivative_q().integral()


@dataclass(frozen=True)
class DicriticalFamily:
    params: FamilyParams
    omega: OneForm
    first_integral: Tuple[Poly2, Poly2]
    separatrices: List[CurveGerm]


def _homogenize(q: Poly1, degree: int) -> Poly2:
    """``x^degree * q(y/x)``."""
    return Poly2({(degree - k, k): c for k, c in enumerate(q.coeffs)})


def dicritical_family(params: FamilyParams) -> DicriticalFamily:
    """The form ``x^{r+2} d(x - Q(y/x))`` with its first integral and separatrices.

    The first integral is returned as numerator and denominator
    ``(x^{r+2} - sum q_j x^{r+1-j} y^j, x^{r+1})``. The ``n`` isolated
    separatrices are the leaves through the tangency points; each is a germ
    at the point ``s = t_j`` of the first exceptional component, written in
    that chart where it is the graph ``u = Q(t_j + v) - Q(t_j)``.
    """
    r = params.total
    dq = params.derivative_q()
    q = params.q()
    p = _homogenize(dq, r)
    omega = OneForm(X ** (r + 2) + Y * p, -X * p)
    num = X ** (r + 2) - _homogenize(q, r + 1)
    den = X ** (r + 1)
    seps = []
    for tj in params.t:
        g = q.shift(tj) - Poly1([q(tj)])
        gx = g.to_poly2("x")
        seps.append(CurveGerm(X - g.to_poly2("y"), ((CHART1, tj),), (gx, X)))
    return DicriticalFamily(params, omega, (num, den), seps)


# ---------------------------------------------------------------------------
# corpus


@dataclass
class CorpusEntry:
    name: str
    omega: OneForm
    separatrices: List[CurveGerm]
    first_integral: Optional[Tuple[Poly2, Poly2]] = None
    expected: Dict[str, object] = field(default_factory=dict)
    provenance: Dict[str, str] = field(default_factory=dict)


def blown_down_saddle_node(p: int, zeta) -> OneForm:
    """Germ whose first blow-up carries a saddle-node with weak curve the divisor.

    In chart 1 the divided form is ``s^{p+1} dx + (zeta s^p - p) x ds``;
    substituting ``s = y/x`` and clearing denominators gives the germ.
    """
    zeta = Fraction(zeta)
    a = (1 - zeta) * Y ** (p + 1) + p * X**p * Y
    b = zeta * X * Y**p - p * X ** (p + 1)
    return OneForm(a, b)


def saddle_node_normal_form(p: int, zeta) -> OneForm:
    """``(zeta x^p - p) y dx + x^{p+1} dy``."""
    zeta = Fraction(zeta)
    return OneForm((zeta * X**p - p) * Y, X ** (p + 1))


def hamiltonian(f: Poly2) -> OneForm:
    return OneForm(f.diff_x(), f.diff_y())


FAMILY_GRID: List[Tuple[int, Tuple[int, ...], Tuple[Fraction, ...]]] = [
    (2, (1, 1), (0, 1)),
    (2, (2, 3), (0, -1)),
    (2, (3, 1), (Fraction(1, 2), 2)),
    (3, (1, 1, 1), (0, 1, 2)),
    (3, (1, 2, 3), (-1, 0, 1)),
    (4, (1, 1, 1, 1), (0, 1, 2, 3)),
    (4, (2, 1, 1, 2), (0, 1, -1, Fraction(1, 3))),
    (5, (1, 1, 1, 1, 1), (0, 1, 2, 3, 4)),
    (5, (1, 2, 1, 1, 1), (-2, -1, 0, 1, 2)),
]


def family_entry(n, r, t, name=None) -> CorpusEntry:
    k = dicritical_family(FamilyParams.make(n, r, t))
    total = sum(r)
    if name is None:
        canonical = tuple(r) == (1,) * n and tuple(Fraction(s) for s in t) == tuple(map(Fraction, range(n)))
        name = f"family-{n}" if canonical else f"family-{n}-" + ".".join(map(str, r))
    return CorpusEntry(
        name,
        k.omega,
        k.separatrices,
        k.first_integral,
        {"nu0": total + 1, "nu0_balanced": total + 2, "second_kind": True,
         "obstruction_dim": (n - 2) * (n - 3) // 2, "first_dicritical": True},
        {"nu0": "published", "nu0_balanced": "published", "obstruction_dim": "published", "second_kind": "published"},
    )


def corpus() -> List[CorpusEntry]:
    F = Fraction
    x, y = X, Y
    out = [
        CorpusEntry("radial", OneForm(-y, x), [],
                    expected={"second_kind": True, "nu": [1], "nu0_balanced": 2, "obstruction_dim": 0, "blowups": 1},
                    provenance={"second_kind": "derived", "nu": "trivial"}),
        CorpusEntry("saddle-1", OneForm(y, x), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": True, "nu": [1], "nu0_balanced": 2}, provenance={"nu": "trivial"}),
        CorpusEntry("saddle-2", OneForm(y, 2 * x), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": True, "nu": [1], "nu0_balanced": 2}, provenance={"nu": "trivial"}),
        CorpusEntry("saddle-neg-half", OneForm(y, F(-1, 2) * x), [CurveGerm(x)],
                    expected={"second_kind": True, "nu": [1, 1], "dicritical": [False, True], "nu0_balanced": 2},
                    provenance={"nu": "derived"}),
        CorpusEntry("node-2", OneForm(-2 * y, x), [CurveGerm(x)],
                    expected={"second_kind": True, "nu": [1, 1], "dicritical": [False, True], "nu0_balanced": 2},
                    provenance={"nu": "derived"}),
        CorpusEntry("cusp", hamiltonian(y**2 - x**3), [CurveGerm(y**2 - x**3)],
                    expected={"second_kind": True, "nu": [1, 1, 2], "nu0_balanced": 2, "blowups": 3,
                              "curve_orders": [2, 3, 6]},
                    provenance={"nu": "derived", "curve_orders": "derived"}),
        CorpusEntry("cusp-2-5", hamiltonian(y**2 - x**5), [CurveGerm(y**2 - x**5)],
                    expected={"second_kind": True, "nu0_balanced": 2}, provenance={}),
        CorpusEntry("three-lines", hamiltonian(x * y * (x + y)), [CurveGerm(x), CurveGerm(y), CurveGerm(x + y)],
                    expected={"second_kind": True, "nu": [1], "nu0_balanced": 3}, provenance={}),
        CorpusEntry("tangent-parabola", hamiltonian(y * (y - x**2)), [CurveGerm(y), CurveGerm(y - x**2)],
                    expected={"second_kind": True, "nu0_balanced": 2}, provenance={}),
        CorpusEntry("saddle-node-1", saddle_node_normal_form(1, 0), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": True, "nu0_balanced": 2}, provenance={"second_kind": "derived"}),
        CorpusEntry("saddle-node-2", saddle_node_normal_form(2, 1), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": True, "nu0_balanced": 2}, provenance={"second_kind": "derived"}),
        CorpusEntry("snt-1", blown_down_saddle_node(1, 0), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": False, "nu0": 2, "nu0_balanced": 2, "correction": 1},
                    provenance={"second_kind": "derived", "correction": "derived"}),
        CorpusEntry("snt-2", blown_down_saddle_node(2, -1), [CurveGerm(x), CurveGerm(y)],
                    expected={"second_kind": False, "nu0": 3, "nu0_balanced": 2, "correction": 2},
                    provenance={"second_kind": "derived", "correction": "derived"}),
    ]
    for n, r, t in FAMILY_GRID:
        out.append(family_entry(n, r, t))
    return out


def corpus_by_name() -> Dict[str, CorpusEntry]:
    return {e.name: e for e in corpus()}


# ---------------------------------------------------------------------------
# serialization to the command-line input format


def germ_from_json(d: dict) -> CurveGerm:
    from .parsing import parse_poly

    f = parse_poly(d["f"])
    if not d.get("at"):
        return CurveGerm(f)
    at = tuple((c, None if s is None else Fraction(s)) for c, s in d["at"])
    param = tuple(parse_poly(p, ("t", "_")) for p in d["param"])
    return CurveGerm(f, at, param)


def entry_to_json(e: CorpusEntry) -> dict:
    return {
        "schema": "folres/1",
        "name": e.name,
        "form": str(e.omega),
        "separatrices": [g.to_json() for g in e.separatrices],
        "separatrices_complete": True,
        "expected": e.expected,
        "provenance": e.provenance,
    }


def entry_from_json(d: dict) -> CorpusEntry:
    from .parsing import parse_form

    return CorpusEntry(
        d.get("name", "input"),
        parse_form(d["form"]),
        [germ_from_json(g) for g in d.get("separatrices", [])],
        expected=dict(d.get("expected", {})),
        provenance=dict(d.get("provenance", {})),
    )
