"""Reduction of singularities of a foliation germ by repeated point blow-ups.

The process is recorded as a tree of *patches*: local coordinate systems
centred at points of the exceptional divisor, each carrying the divided
1-form in those coordinates and the divisor branches through the point
(``{x=0}`` is axis 0, ``{y=0}`` axis 1). Some patches become blow-up
centres; the remaining ones are the special points of the final divisor.

Dicritical components are read as the non-invariant ones; a germ with a
dicritical component in its reduction has infinitely many separatrices.
"""
from __future__ import annotations

import heapq
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import X, Y, Poly2, format_rat, rational_roots, substitute
from .blowup import CHART1, CHART2, chart_map, component_multiplicity, divided_transform
from .errors import DepthExceeded, NonRationalSingularity
from .foliation import (
    Kind,
    OneForm,
    SingClass,
    axis_direction,
    axis_invariant,
    classify_at_origin,
    ind_axis,
    multiplicity,
    pullback,
    tan_axis,
)

DEFAULT_MAX_DEPTH = 50


def default_max_depth() -> int:
    return int(os.environ.get("FOLRES_MAX_DEPTH", DEFAULT_MAX_DEPTH))


Address = Tuple[Tuple[str, Optional[Fraction]], ...]


@dataclass
class Patch:
    id: int
    address: Address
    form: OneForm
    branches: Dict[int, int]
    parent: Optional[int] = None
    chart: Optional[str] = None
    coordinate: Optional[Fraction] = None
    component: Optional[int] = None
    depth: int = 0
    classification: SingClass = None
    center_index: Optional[int] = None
    child: Optional[int] = None

    @property
    def is_center(self) -> bool:
        return self.center_index is not None

    @property
    def is_corner(self) -> bool:
        return len(self.branches) == 2

    def label(self) -> str:
        if not self.address:
            return "O"
        return "/".join(f"{c}:{format_rat(s)}" if c == CHART1 else c for c, s in self.address)


@dataclass
class Component:
    id: int
    nu: int
    dicritical: bool
    birth: int
    chart1: OneForm
    center_multiplicity: int
    exponent: int
    home: List[int] = field(default_factory=list)
    chart2_patch: Optional[int] = None


@dataclass(frozen=True)
class ChartPoint:
    """A current point of the divisor lying on ``component``."""

    patch: int
    component: int
    axis: int


class ResolutionTree:
    def __init__(self, omega: OneForm):
        self.omega = omega
        self.patches: Dict[int, Patch] = {}
        self.components: List[Component] = []
        self.centers: List[int] = []
        self.by_address: Dict[Address, int] = {}
        root = self._new_patch((), omega, {}, None, None, None, None, 0)
        self.root = root.id

    # construction -------------------------------------------------------
    def _new_patch(self, address, form, branches, parent, chart, coord, comp, depth) -> Patch:
        p = Patch(len(self.patches), address, form, branches, parent, chart, coord, comp, depth)
        p.classification = classify_at_origin(form)
        self.patches[p.id] = p
        self.by_address[address] = p.id
        return p

    def blow_up(self, pid: int) -> Component:
        """Blow up the patch ``pid`` and register the special points of the new component."""
        c = self.patches[pid]
        if c.is_center:
            raise ValueError(f"patch {c.label()} is already blown up")
        dt = divided_transform(c.form)
        nu = component_multiplicity(
            [self.components[d].nu for d in c.branches.values()], c.parent is None
        )
        comp = Component(len(self.components), nu, dt.dicritical, pid, dt.chart1, dt.center_multiplicity, dt.exponent)
        self.components.append(comp)
        c.center_index = len(self.centers)
        c.child = comp.id
        self.centers.append(pid)

        w1 = dt.chart1
        if not dt.dicritical:
            assert w1.b.order_in_x() >= 1, "non-dicritical component must be invariant"
            q = w1.a.at_x0()
        else:
            q = w1.b.at_x0()
        coords = set()
        if not q.is_zero():
            roots, residual = rational_roots(q)
            if residual.degree >= 1:
                raise NonRationalSingularity(
                    f"irrational special point on D{comp.id} over {c.label()}: residual {residual!r}",
                    residual,
                    c.label(),
                )
            coords.update(r for r, _ in roots)
        if 1 in c.branches:
            coords.add(Fraction(0))
        for s0 in sorted(coords):
            branches = {0: comp.id}
            if s0 == 0 and 1 in c.branches:
                branches[1] = c.branches[1]
            p = self._new_patch(
                c.address + ((CHART1, s0),), w1.translate(0, s0), branches, pid, CHART1, s0, comp.id, c.depth + 1
            )
            comp.home.append(p.id)
        branches = {1: comp.id}
        if 0 in c.branches:
            branches[0] = c.branches[0]
        p2 = self._new_patch(c.address + ((CHART2, None),), dt.chart2, branches, pid, CHART2, None, comp.id, c.depth + 1)
        comp.home.append(p2.id)
        comp.chart2_patch = p2.id
        return comp

    # queries ------------------------------------------------------------
    @property
    def depth(self) -> int:
        return max((self.patches[c].depth + 1 for c in self.centers), default=0)

    def patch_at(self, address) -> Optional[Patch]:
        pid = self.by_address.get(tuple(address))
        return None if pid is None else self.patches[pid]

    def stage(self, k: Optional[int] = None) -> "Stage":
        return Stage(self, len(self.centers) if k is None else k)

    @property
    def final(self) -> "Stage":
        return self.stage()

    def composite_map(self, pid: int) -> Tuple[Poly2, Poly2]:
        """Root coordinates as polynomials in the local coordinates of ``pid``."""
        p = self.patches[pid]
        sx, sy = X, Y
        while p.parent is not None:
            mx, my = chart_map(p.chart, p.coordinate or Fraction(0))
            sx, sy = substitute(mx, sx, sy), substitute(my, sx, sy)
            p = self.patches[p.parent]
        return sx, sy

    def component_chart_map(self, d: int) -> Tuple[Poly2, Poly2]:
        """Root coordinates on chart 1 of component ``d`` (divisor ``{x=0}``)."""
        bx, by = self.composite_map(self.components[d].birth)
        mx, my = chart_map(CHART1)
        return substitute(bx, mx, my), substitute(by, mx, my)

    def ancestors(self, pid: int) -> List[int]:
        out = []
        p = self.patches[pid]
        while p.parent is not None:
            out.append(p.parent)
            p = self.patches[p.parent]
        return out

    def branch_components(self, pid: int) -> List[int]:
        return sorted(self.patches[pid].branches.values())

    def copy(self) -> "ResolutionTree":
        import copy

        return copy.deepcopy(self)

    def refine(self, pid: int) -> "ResolutionTree":
        """A copy of the tree with one extra blow-up at the patch ``pid``."""
        t = self.copy()
        t.blow_up(pid)
        return t

    def free_point(self, d: int, coordinate: Fraction) -> int:
        """Register a regular non-special point of component ``d`` as a patch."""
        comp = self.components[d]
        c = self.patches[comp.birth]
        addr = c.address + ((CHART1, Fraction(coordinate)),)
        if addr in self.by_address:
            raise ValueError(f"point {coordinate} of D{d} is already special")
        p = self._new_patch(addr, comp.chart1.translate(0, coordinate), {0: d}, c.id, CHART1, Fraction(coordinate), d, c.depth + 1)
        comp.home.append(p.id)
        return p.id


class Stage:
    """The divisor after the first ``k`` blow-ups of a tree."""

    def __init__(self, tree: ResolutionTree, k: int):
        self.tree = tree
        self.k = k

    @property
    def components(self) -> List[Component]:
        return [self.tree.components[self.tree.patches[c].child] for c in self.tree.centers[: self.k]]

    def blown(self, p: Patch) -> bool:
        return p.center_index is not None and p.center_index < self.k

    def _follow(self, pid: int, d: int) -> ChartPoint:
        p = self.tree.patches[pid]
        while self.blown(p):
            axis = _axis_of(p, d)
            n = self.tree.components[p.child]
            nxt = n.chart2_patch if axis == 0 else _chart1_patch(self.tree, n, Fraction(0))
            p = self.tree.patches[nxt]
        return ChartPoint(p.id, d, _axis_of(p, d))

    def points_on(self, d: int) -> List[ChartPoint]:
        """Current special points of component ``d``."""
        return [self._follow(pid, d) for pid in self.tree.components[d].home]

    def leaf_patches(self) -> List[Patch]:
        seen = {}
        for comp in self.components:
            for cp in self.points_on(comp.id):
                seen[cp.patch] = self.tree.patches[cp.patch]
        return [seen[k] for k in sorted(seen)]

    def neighbors(self, d: int) -> List[int]:
        out = set()
        for cp in self.points_on(d):
            for other in self.tree.patches[cp.patch].branches.values():
                if other != d:
                    out.add(other)
        return sorted(out)

    def valence(self, d: int) -> int:
        return len(self.neighbors(d))

    def nondicritical_valence(self, d: int) -> int:
        return sum(1 for e in self.neighbors(d) if not self.tree.components[e].dicritical)

    def point_value(self, cp: ChartPoint) -> int:
        """``Ind`` (invariant component) or ``Tan`` (dicritical) at a point."""
        p = self.tree.patches[cp.patch]
        if self.tree.components[cp.component].dicritical:
            return tan_axis(p.form, cp.axis)
        return ind_axis(p.form, cp.axis)

    def singular_points(self) -> List[Patch]:
        return [p for p in self.leaf_patches() if p.classification.kind != Kind.REGULAR]


def _axis_of(p: Patch, d: int) -> int:
    for axis, comp in p.branches.items():
        if comp == d:
            return axis
    raise KeyError(f"D{d} does not pass through {p.label()}")


def _chart1_patch(tree: ResolutionTree, comp: Component, s0: Fraction) -> int:
    c = tree.patches[comp.birth]
    return tree.by_address[c.address + ((CHART1, s0),)]


# ---------------------------------------------------------------------------
# reducedness predicate


def failure_reasons(tree: ResolutionTree, p: Patch) -> List[str]:
    """Why the point ``p`` is not yet reduced (empty when it is)."""
    reasons = []
    cls = p.classification
    if cls.kind == Kind.NON_REDUCED:
        reasons.append("non-reduced singularity")
    dic_axes = [a for a, d in p.branches.items() if tree.components[d].dicritical]
    if dic_axes:
        if cls.kind != Kind.REGULAR:
            reasons.append("singular point on a dicritical component")
        else:
            for a in dic_axes:
                if tan_axis(p.form, a) > 0:
                    reasons.append(f"tangency with dicritical D{p.branches[a]}")
        if len(dic_axes) == 2:
            reasons.append("corner of two dicritical components")
    for a, d in p.branches.items():
        if not tree.components[d].dicritical and not axis_invariant(p.form, a):
            reasons.append(f"invariant D{d} not invariant in its chart")
    return reasons


def _order_key(tree: ResolutionTree, p: Patch):
    coord = (1, 0) if p.chart == CHART2 else (0, p.coordinate)
    return (p.depth, -1 if p.component is None else p.component, coord, p.id)


def reduce(omega: OneForm, max_depth: Optional[int] = None, rng: Optional[random.Random] = None) -> ResolutionTree:
    """Reduce the singularity of ``omega`` at the origin.

    The origin is always blown up once, even when already reduced, so the
    divisor is never empty. Failing points are blown up breadth-first by
    depth, then component id, then coordinate; with ``rng`` the order is
    shuffled instead (the resulting tree is the same up to relabelling).
    """
    if max_depth is None:
        max_depth = default_max_depth()
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if multiplicity(omega) < 1:
        raise ValueError("the form is regular at the origin")
    tree = ResolutionTree(omega)
    pending: List = []
    counter = 0

    def push(pids):
        nonlocal counter
        for pid in pids:
            p = tree.patches[pid]
            key = (rng.random(),) if rng is not None else _order_key(tree, p)
            heapq.heappush(pending, (key, counter, pid))
            counter += 1

    comp = tree.blow_up(tree.root)
    push(comp.home)
    while pending:
        _, _, pid = heapq.heappop(pending)
        p = tree.patches[pid]
        if failure_reasons(tree, p):
            if p.depth + 1 > max_depth:
                offending = [
                    {"point": q.label(), "reasons": failure_reasons(tree, q)}
                    for q in [p] + [tree.patches[e[2]] for e in pending]
                    if failure_reasons(tree, q)
                ]
                raise DepthExceeded(f"reduction exceeded depth {max_depth}", offending)
            comp = tree.blow_up(pid)
            push(comp.home)
    return tree


def audit(tree: ResolutionTree) -> List[str]:
    """Re-check the final state independently of the driver.

    Every special point of every component is re-classified from its local
    form, and every rational root of a component's special-point polynomial
    must be a tracked point.
    """
    problems = []
    st = tree.final
    for p in st.leaf_patches():
        cls = classify_at_origin(p.form)
        if cls.kind == Kind.NON_REDUCED:
            problems.append(f"{p.label()}: non-reduced")
        for a, d in p.branches.items():
            comp = tree.components[d]
            if comp.dicritical:
                if cls.kind != Kind.REGULAR:
                    problems.append(f"{p.label()}: singular on dicritical D{d}")
                elif tan_axis(p.form, a):
                    problems.append(f"{p.label()}: tangent to dicritical D{d}")
        if len(p.branches) == 2 and all(tree.components[d].dicritical for d in p.branches.values()):
            problems.append(f"{p.label()}: dicritical corner")
    for comp in st.components:
        w1 = comp.chart1
        if comp.dicritical:
            q = w1.b.at_x0()
        else:
            q = w1.a.at_x0()
            if not axis_invariant(w1, 0):
                problems.append(f"D{comp.id}: not invariant")
        if not q.is_zero():
            roots, _ = rational_roots(q)
            special = {tree.patches[h].coordinate for h in comp.home if tree.patches[h].chart == CHART1}
            for r, _m in roots:
                if r not in special:
                    problems.append(f"D{comp.id}: special point {r} not tracked")
    return problems


def snt_set(tree: ResolutionTree) -> List[dict]:
    """Tangent saddle-nodes of the final stage.

    Each entry records the patch, the divisor component carrying the weak
    direction and the index along it.
    """
    out = []
    for p in tree.final.singular_points():
        cls = p.classification
        if cls.kind != Kind.SADDLE_NODE:
            continue
        for a, d in sorted(p.branches.items()):
            if cls.weak == axis_direction(a):
                out.append({"patch": p.id, "point": p.label(), "component": d, "ind": ind_axis(p.form, a)})
    return out


def is_second_kind(tree: ResolutionTree) -> bool:
    return not snt_set(tree)


# ---------------------------------------------------------------------------
# orders along components


def _order_along_x0(w: OneForm) -> int:
    return int(min(w.a.order_in_x(), w.b.order_in_x()))


def nu_form_along(tree: ResolutionTree) -> Dict[int, int]:
    """Order of the total pullback of the foliation along each component.

    Computed by the recursion ``nu_D = nu_c + sum_{D_c through c} nu_{D_c} + eps(D)``.
    """
    out: Dict[int, int] = {}
    for comp in tree.components:
        c = tree.patches[comp.birth]
        out[comp.id] = comp.center_multiplicity + int(comp.dicritical) + sum(out[d] for d in c.branches.values())
    return out


def nu_form_along_direct(tree: ResolutionTree, d: int) -> int:
    """Same quantity, pulling the original form back through the composite chart."""
    sx, sy = tree.component_chart_map(d)
    return _order_along_x0(pullback(tree.omega, sx, sy))


def nu_poly_along_direct(tree: ResolutionTree, f: Poly2, d: int) -> int:
    sx, sy = tree.component_chart_map(d)
    return int(substitute(f, sx, sy).order_in_x())


def nu_along_recursive(tree: ResolutionTree, v: Dict[int, int]) -> Dict[int, int]:
    """Orders of a total transform along components from centre multiplicities.

    ``v`` maps centre patch ids to the multiplicity of the strict transform
    at that centre (missing ids count as 0).
    """
    out: Dict[int, int] = {}
    for comp in tree.components:
        c = tree.patches[comp.birth]
        out[comp.id] = v.get(c.id, 0) + sum(out[d] for d in c.branches.values())
    return out


# ---------------------------------------------------------------------------
# serialization


def tree_to_json(tree: ResolutionTree) -> dict:
    st = tree.final
    comps = []
    for comp in st.components:
        pts = []
        for cp in st.points_on(comp.id):
            p = tree.patches[cp.patch]
            entry = {
                "point": p.label(),
                "corner_with": [e for e in p.branches.values() if e != comp.id],
                "classification": p.classification.to_json(),
            }
            entry["tan" if comp.dicritical else "ind"] = st.point_value(cp)
            pts.append(entry)
        comps.append(
            {
                "id": comp.id,
                "nu": comp.nu,
                "dicritical": comp.dicritical,
                "center": tree.patches[comp.birth].label(),
                "neighbors": st.neighbors(comp.id),
                "valence": st.valence(comp.id),
                "nondicritical_valence": st.nondicritical_valence(comp.id),
                "chart1_form": str(comp.chart1),
                "points": pts,
            }
        )
    return {
        "schema": "folres/1",
        "form": str(tree.omega),
        "blowups": len(tree.centers),
        "depth": tree.depth,
        "centers": [tree.patches[c].label() for c in tree.centers],
        "components": comps,
        "snt": [{k: v for k, v in s.items() if k != "patch"} for s in snt_set(tree)],
    }


def tree_to_dot(tree: ResolutionTree) -> str:
    st = tree.final
    lines = ["graph dual_tree {"]
    for comp in st.components:
        kind = "dic" if comp.dicritical else "inv"
        lines.append(f'  D{comp.id} [label="D{comp.id} ν={comp.nu} {kind}"];')
    for comp in st.components:
        for e in st.neighbors(comp.id):
            if comp.id < e:
                lines.append(f"  D{comp.id} -- D{e};")
    lines.append("}")
    return "\n".join(lines) + "\n"
