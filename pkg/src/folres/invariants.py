"""Multiplicity identities, balanced equations and the obstruction dimension.

Everything is evaluated on a :class:`~folres.reduction.ResolutionTree` (or a
prefix :class:`~folres.reduction.Stage` of it) with exact integer and
rational arithmetic, so every identity check is a literal equality.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from .algebra import Poly2, rational_roots
from .blowup import CHART1, CHART2, Curvette, curvette_blowdown_multiplicities, push_down, strict_transform_at
from .errors import AttachmentConflict, NonRationalSingularity, NotASeparatrix
from .foliation import CurveGerm, ind_axis, is_separatrix, multiplicity
from .reduction import (
    ResolutionTree,
    Stage,
    nu_along_recursive,
    nu_form_along,
    snt_set,
)

Member = Union[CurveGerm, Curvette]


# ---------------------------------------------------------------------------
# multiplicity of the foliation from the rho weights


def rho(stage: Stage, d: int) -> int:
    """Contribution ``rho(D)`` of component ``d`` at a stage.

    Invariant ``D``: ``-v_nd(D) + sum Ind``; dicritical ``D``:
    ``2 - v_nd(D) + sum Tan``, sums over the special points of ``D``
    (other points contribute 0).
    """
    comp = stage.tree.components[d]
    total = sum(stage.point_value(cp) for cp in stage.points_on(d))
    base = 2 if comp.dicritical else 0
    return base - stage.nondicritical_valence(d) + total


def rho_by_degree(tree: ResolutionTree, d: int) -> int:
    """``rho(D)`` just after ``D`` is created, summing over all complex points.

    The chart-1 sum of ``Ind`` (resp. ``Tan``) over every point of ``D``
    equals the degree of the restricted coefficient, so this needs no root
    finding. Used as an independent check of :func:`rho`.
    """
    comp = tree.components[d]
    k = tree.patches[comp.birth].center_index + 1
    st = tree.stage(k)
    p2 = tree.patches[comp.chart2_patch]
    if comp.dicritical:
        q = comp.chart1.b.at_x0()
        base = 2
        inf = st.point_value(_cp(st, p2.id, d))
    else:
        q = comp.chart1.a.at_x0()
        base = 0
        inf = st.point_value(_cp(st, p2.id, d))
    return base - st.nondicritical_valence(d) + max(q.degree, 0) + inf


def _cp(st: Stage, pid: int, d: int):
    from .reduction import ChartPoint, _axis_of

    return ChartPoint(pid, d, _axis_of(st.tree.patches[pid], d))


def check_rho_formula(stage: Stage) -> dict:
    tree = stage.tree
    nu0 = multiplicity(tree.omega)
    rhos = {c.id: rho(stage, c.id) for c in stage.components}
    rhs = sum(tree.components[d].nu * r for d, r in rhos.items())
    return {"lhs": nu0 + 1, "rhs": rhs, "ok": nu0 + 1 == rhs, "rho": rhos, "stage": stage.k}


def rho_formula_all_stages(tree: ResolutionTree) -> List[dict]:
    return [check_rho_formula(tree.stage(k)) for k in range(1, len(tree.centers) + 1)]


# ---------------------------------------------------------------------------
# curve germs on the tree


def _base_patch(tree: ResolutionTree, curve: CurveGerm):
    p = tree.patch_at(curve.at)
    if p is None:
        raise ValueError(f"no patch at address {curve.at!r}")
    return p


def curve_local_equations(tree: ResolutionTree, curve: CurveGerm) -> Dict[int, Poly2]:
    """Local equation of the strict transform at every patch it passes through,
    for patches at or above the curve's own patch."""
    base = _base_patch(tree, curve)
    out = {base.id: curve.f}
    order = sorted(tree.patches.values(), key=lambda p: p.depth)
    for p in order:
        if p.parent is None or p.parent not in out or p.id in out:
            continue
        g = strict_transform_at(out[p.parent], p.chart, p.coordinate or Fraction(0))
        if g.constant_term() == 0:
            out[p.id] = g
    return out


def curve_center_multiplicities(tree: ResolutionTree, curve: CurveGerm) -> Dict[int, int]:
    """Multiplicity of the curve's strict transform at every centre it meets."""
    base = _base_patch(tree, curve)
    local = curve_local_equations(tree, curve)
    out = {}
    for c in tree.centers:
        if c in local:
            out[c] = int(local[c].order())
    if base.parent is not None:
        below = push_down(tree, base.parent, *_param_below(tree, base, curve))
        for c, v in below.items():
            if v:
                out[c] = v
        if base.is_center:
            assert out.get(base.id, 0) == int(curve.f.order())
    return out


def _param_below(tree, base, curve):
    from .algebra import substitute
    from .blowup import chart_map

    sx, sy = chart_map(base.chart, base.coordinate or Fraction(0))
    gx, gy = curve.param
    return substitute(sx, gx, gy), substitute(sy, gx, gy)


def curve_nu0(tree: ResolutionTree, curve: CurveGerm) -> int:
    if not curve.at:
        return int(curve.f.order())
    return curve_center_multiplicities(tree, curve).get(tree.root, 0)


def curve_attachment(tree: ResolutionTree, curve: CurveGerm) -> List[int]:
    """Components met by the final strict transform of the germ."""
    p = _base_patch(tree, curve)
    f = curve.f
    while p.is_center:
        n = tree.components[p.child]
        m = int(f.order())
        q = strict_transform_at(f, CHART1).at_x0()
        pts = []
        if not q.is_zero():
            roots, residual = rational_roots(q)
            if residual.degree >= 1:
                raise NonRationalSingularity(f"curve {curve.f} meets D{n.id} at an irrational point", residual)
            pts += [(CHART1, r) for r, _ in roots]
        if max(q.degree, 0) < m:
            pts.append((CHART2, None))
        if len(pts) != 1:
            raise ValueError(f"curve {curve.f} is not an irreducible germ ({len(pts)} points on D{n.id})")
        chart, s0 = pts[0]
        f = strict_transform_at(f, chart, s0 or Fraction(0))
        nxt = tree.patch_at(p.address + ((chart, s0),))
        if nxt is None:
            return [n.id]
        p = nxt
    return sorted(p.branches.values())


def is_separatrix_germ(tree: ResolutionTree, curve: CurveGerm) -> bool:
    return is_separatrix(curve.f, _base_patch(tree, curve).form)


# ---------------------------------------------------------------------------
# balanced equations


@dataclass
class BalancedEquation:
    zeros: List[Member]
    poles: List[Member]
    attachments: Dict[int, List[int]] = field(default_factory=dict)
    nu0: int = 0

    def to_json(self) -> dict:
        def enc(m):
            return m.to_json() if isinstance(m, Curvette) else {"curve": m.to_json()}

        return {"zeros": [enc(m) for m in self.zeros], "poles": [enc(m) for m in self.poles], "nu0": self.nu0}


def member_center_multiplicities(tree: ResolutionTree, m: Member) -> Dict[int, int]:
    if isinstance(m, Curvette):
        return {c: v for c, v in curvette_blowdown_multiplicities(tree, m).items() if v}
    return curve_center_multiplicities(tree, m)


def member_nu0(tree: ResolutionTree, m: Member) -> int:
    return member_center_multiplicities(tree, m).get(tree.root, 0)


def pencil_coordinates(tree: ResolutionTree, d: int, count: int, strategy: Union[str, int] = "sequential",
                       taken: Sequence[Fraction] = ()) -> List[Fraction]:
    """Pick ``count`` chart-1 coordinates at generic points of component ``d``.

    Special points are avoided; on a dicritical component the leaf through
    the point must also be transverse to it.

    ``strategy`` is ``"sequential"`` (1, 2, 3, ...) or an integer seed for a
    reproducible random choice among small rationals.
    """
    forbidden = set(taken) | {tree.patches[h].coordinate for h in tree.components[d].home
                              if tree.patches[h].chart == CHART1}
    rng = random.Random(strategy) if not isinstance(strategy, str) else None
    out: List[Fraction] = []
    k = 0
    while len(out) < count:
        k += 1
        if rng is None:
            s = Fraction(k)
        else:
            s = Fraction(rng.randint(-60, 60), rng.randint(1, 7))
        if s in forbidden or s in out:
            continue
        if tree.components[d].dicritical and not _generic_on(tree, d, s):
            continue
        out.append(s)
    return out


def _generic_on(tree: ResolutionTree, d: int, s: Fraction) -> bool:
    w = tree.components[d].chart1.translate(0, s)
    return w.b.constant_term() != 0


def build_balanced_equation(tree: ResolutionTree, isolated: Sequence[CurveGerm],
                            pencil_strategy: Union[str, int] = "sequential",
                            coordinates: Optional[Dict[int, List[Fraction]]] = None) -> BalancedEquation:
    """Assemble zeros and poles of a balanced equation on the final tree.

    ``isolated`` must be the complete list of isolated separatrices (this is
    asserted by the caller, not checked). Pencil members are curvettes; their
    coordinates come from ``coordinates`` when given, else from
    :func:`pencil_coordinates`.
    """
    st = tree.final
    zeros: List[Member] = []
    poles: List[Member] = []
    attachments: Dict[int, List[int]] = {}
    for i, g in enumerate(isolated):
        if not is_separatrix_germ(tree, g):
            raise NotASeparatrix(f"{g.f} is not invariant")
        att = curve_attachment(tree, g)
        if any(tree.components[d].dicritical for d in att):
            raise NotASeparatrix(f"{g.f} is attached to a dicritical component, not an isolated separatrix")
        attachments[i] = att
        zeros.append(g)
    for comp in st.components:
        if not comp.dicritical:
            continue
        v = st.valence(comp.id)
        need = abs(2 - v)
        if not need:
            continue
        if coordinates and comp.id in coordinates:
            coords = [Fraction(c) for c in coordinates[comp.id]]
            if len(coords) != need or len(set(coords)) != need:
                raise AttachmentConflict(f"D{comp.id} needs {need} distinct pencil coordinates")
            special = {tree.patches[h].coordinate for h in comp.home if tree.patches[h].chart == CHART1}
            for s in coords:
                if s in special or not _generic_on(tree, comp.id, s):
                    raise AttachmentConflict(f"coordinate {s} on D{comp.id} is not a generic point")
        else:
            coords = pencil_coordinates(tree, comp.id, need, pencil_strategy)
        members = [Curvette(comp.id, s) for s in coords]
        (zeros if v < 2 else poles).extend(members)
    nu0 = sum(member_nu0(tree, m) for m in zeros) - sum(member_nu0(tree, m) for m in poles)
    return BalancedEquation(zeros, poles, attachments, nu0)


def nu_balanced_along(tree: ResolutionTree, F: BalancedEquation) -> Dict[int, int]:
    """Order of the blown-up balanced equation along each component."""
    out = {c.id: 0 for c in tree.components}
    for sign, members in ((1, F.zeros), (-1, F.poles)):
        for m in members:
            for d, v in nu_along_recursive(tree, member_center_multiplicities(tree, m)).items():
                out[d] += sign * v
    return out


# ---------------------------------------------------------------------------
# second kind, correction identity, per-component orders


def snt_corrections(tree: ResolutionTree) -> List[dict]:
    """Per tangent saddle-node and component through it: ``nu(D)`` and ``Ind``."""
    out = []
    seen = set()
    for s in snt_set(tree):
        if s["patch"] in seen:
            continue
        seen.add(s["patch"])
        p = tree.patches[s["patch"]]
        for axis, d in sorted(p.branches.items()):
            out.append({"point": p.label(), "component": d, "nu": tree.components[d].nu,
                        "ind": ind_axis(p.form, axis)})
    return out


def check_second_kind_criterion(tree: ResolutionTree, F: BalancedEquation) -> dict:
    nu0 = multiplicity(tree.omega)
    snt_empty = not snt_set(tree)
    mult = F.nu0 == nu0 + 1
    return {"snt_empty": snt_empty, "mult_identity": mult, "ok": snt_empty == mult}


def check_balanced_relation(tree: ResolutionTree, F: BalancedEquation) -> dict:
    """``nu0(F) = nu0(foliation) + 1 - sum nu(D) (Ind(D, s) - 1)`` over tangent saddle-nodes."""
    nu0 = multiplicity(tree.omega)
    corr = snt_corrections(tree)
    excess = sum(c["nu"] * (c["ind"] - 1) for c in corr)
    rhs = nu0 + 1 - excess
    return {"lhs": F.nu0, "rhs": rhs, "ok": F.nu0 == rhs, "correction": excess, "corrections": corr}


def check_component_orders(tree: ResolutionTree, F: BalancedEquation) -> dict:
    """Per component: order of ``F`` along ``D`` against the foliation's order."""
    nf = nu_form_along(tree)
    nb = nu_balanced_along(tree, F)
    rows = []
    for comp in tree.components:
        expected = nf[comp.id] + (0 if comp.dicritical else 1)
        rows.append({"component": comp.id, "dicritical": comp.dicritical, "nu_balanced": nb[comp.id],
                     "nu_foliation": nf[comp.id], "ok": nb[comp.id] == expected})
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}


# ---------------------------------------------------------------------------
# obstruction dimension


def obstruction_dimension(tree: ResolutionTree, poles: Sequence[Member]) -> dict:
    """``sum_c v_c (v_c - 1) / 2`` over all centres, ``v_c`` the multiplicity of
    the strict transform of the pole curve at ``c``."""
    per = {c: 0 for c in tree.centers}
    for m in poles:
        for c, v in member_center_multiplicities(tree, m).items():
            per[c] += v
    rows = [{"center": tree.patches[c].label(), "v_c": v, "contribution": v * (v - 1) // 2}
            for c, v in per.items()]
    return {"per_center": rows, "dim": sum(r["contribution"] for r in rows)}


# ---------------------------------------------------------------------------
# report


@dataclass
class InvariantReport:
    tree: ResolutionTree
    balanced: BalancedEquation
    rho_formula: dict
    second_kind: dict
    relation: dict
    component_orders: dict
    obstruction: dict

    @property
    def ok(self) -> bool:
        return bool(self.rho_formula["ok"] and self.second_kind["ok"] and self.relation["ok"])

    def to_json(self) -> dict:
        tree = self.tree
        st = tree.final
        return {
            "schema": "folres/1",
            "form": str(tree.omega),
            "nu0_foliation": multiplicity(tree.omega),
            "nu0_balanced": self.balanced.nu0,
            "components": [
                {"id": c.id, "nu": c.nu, "dicritical": c.dicritical, "valence": st.valence(c.id),
                 "nondicritical_valence": st.nondicritical_valence(c.id), "rho": self.rho_formula["rho"][c.id]}
                for c in st.components
            ],
            "rho_formula": {k: self.rho_formula[k] for k in ("lhs", "rhs", "ok")},
            "rho_formula_stages": [h["ok"] for h in rho_formula_all_stages(tree)],
            "second_kind": self.second_kind,
            "balanced_relation": {k: self.relation[k] for k in ("lhs", "rhs", "ok", "corrections")},
            "component_orders": self.component_orders,
            "balanced": self.balanced.to_json(),
            "obstruction": self.obstruction,
        }


def invariant_report(tree: ResolutionTree, isolated: Sequence[CurveGerm],
                     pencil_strategy: Union[str, int] = "sequential") -> InvariantReport:
    F = build_balanced_equation(tree, isolated, pencil_strategy)
    return InvariantReport(
        tree,
        F,
        check_rho_formula(tree.final),
        check_second_kind_criterion(tree, F),
        check_balanced_relation(tree, F),
        check_component_orders(tree, F),
        obstruction_dimension(tree, F.poles),
    )

