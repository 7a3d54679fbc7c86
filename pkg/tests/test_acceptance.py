"""Acceptance criteria, one test per criterion, all with exact equality.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see conftest.py).
"""
import json
import pytest

from folres.algebra import X, Y
from folres.blowup import Curvette, curvette_blowdown_multiplicities
from folres.cli import main
from folres.corpus import FAMILY_GRID, corpus, family_entry
from folres.foliation import CurveGerm, multiplicity
from folres.invariants import (
    build_balanced_equation,
    check_balanced_relation,
    check_component_orders,
    check_second_kind_criterion,
    obstruction_dimension,
    pencil_coordinates,
    rho_formula_all_stages,
)
from folres.parsing import parse_form
from folres.reduction import audit, nu_poly_along_direct, reduce

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


@pytest.fixture(scope="module")
def pipeline():
    out = []
    for e in corpus():
        tree = reduce(e.omega)
        out.append((e, tree, build_balanced_equation(tree, e.separatrices)))
    return out


def test_criterion_1_family_grid():
    rows = []
    for n, r, t in FAMILY_GRID:
        e = family_entry(n, r, t)
        tree = reduce(e.omega)
        F = build_balanced_equation(tree, e.separatrices)
        total = sum(r)
        crit = check_second_kind_criterion(tree, F)
        dim = obstruction_dimension(tree, F.poles)["dim"]
        rows.append((multiplicity(e.omega) == total + 1, F.nu0 == total + 2,
                     crit["snt_empty"] and crit["mult_identity"], dim == (n - 2) * (n - 3) // 2))
    dims = []
    for n in (2, 3, 4, 5):
        e = family_entry(n, (1,) * n, range(n))
        tree = reduce(e.omega)
        dims.append(obstruction_dimension(tree, build_balanced_equation(tree, e.separatrices).poles)["dim"])
    ok = all(all(r) for r in rows) and dims == [0, 0, 1, 3]
    assert record(1, ok, f"{len(rows)} family members; obstruction dims n=2..5: {dims}")


def test_criterion_2_rho_formula_prefixes(pipeline):
    stages = 0
    bad = []
    for e, tree, _ in pipeline:
        for h in rho_formula_all_stages(tree):
            stages += 1
            if not h["ok"]:
                bad.append((e.name, h["stage"]))
    ok = not bad and len(pipeline) >= 10
    assert record(2, ok, f"{len(pipeline)} germs, {stages} stages, failures: {bad}")


def _component_order_failures(pipeline):
    return [e.name for e, tree, F in pipeline if not check_component_orders(tree, F)["ok"]]


@pytest.mark.xfail(strict=True, reason="per-component equalities fail on germs that are not of second kind; "
                                       "see the decisions ledger")
def test_criterion_3_component_orders(pipeline):
    bad = _component_order_failures(pipeline)
    assert record(3, not bad, f"{len(pipeline)} members with a balanced equation; failing: {bad}")


def test_criterion_3_holds_on_second_kind_members(pipeline):
    sk = [(e, t, F) for e, t, F in pipeline if check_second_kind_criterion(t, F)["snt_empty"]]
    assert not _component_order_failures(sk)
    assert set(_component_order_failures(pipeline)) == {"snt-1", "snt-2"}


def test_criterion_4_balanced_relation(pipeline):
    bad = []
    truth = set()
    positive = {}
    printed_sign = []
    for e, tree, F in pipeline:
        rel = check_balanced_relation(tree, F)
        # the relation with a plus in front of the correction, for the record
        printed_sign.append(F.nu0 == multiplicity(e.omega) + 1 + rel["correction"])
        crit = check_second_kind_criterion(tree, F)
        truth.add(crit["snt_empty"])
        if not (rel["ok"] and crit["ok"]):
            bad.append(e.name)
        if crit["snt_empty"] and rel["correction"] != 0:
            bad.append(e.name)
        if not crit["snt_empty"]:
            positive[e.name] = rel["correction"]
    ok = not bad and truth == {True, False} and positive and all(v > 0 for v in positive.values())
    assert record(4, ok, f"minus-sign relation; corrections on tangent saddle-node members: {positive}; "
                         f"plus-sign variant holds on {sum(printed_sign)}/{len(printed_sign)}; failures: {bad}")


def test_criterion_5_curvette_law(pipeline):
    bad = []
    checked = 0
    for e, tree, _ in pipeline:
        for c in tree.components:
            s = pencil_coordinates(tree, c.id, 1)[0]
            m = curvette_blowdown_multiplicities(tree, Curvette(c.id, s)).get(tree.root, 0)
            checked += 1
            if m != c.nu:
                bad.append((e.name, c.id))
    cusp = reduce(parse_form("2y dy - 3x^2 dx"))
    nus = [c.nu for c in cusp.components]
    orders = [nu_poly_along_direct(cusp, Y**2 - X**3, c.id) for c in cusp.components]
    ok = not bad and nus == [1, 1, 2] and orders == [2, 3, 6]
    assert record(5, ok, f"{checked} components; cusp nu={nus}, curve orders={orders}; failures: {bad}")


def test_criterion_6_obstruction_invariance():
    e = family_entry(5, (1, 2, 1, 1, 1), (-2, -1, 0, 1, 2))
    tree = reduce(e.omega)
    F = build_balanced_equation(tree, e.separatrices)
    base = obstruction_dimension(tree, F.poles)["dim"]
    rechoices = [obstruction_dimension(tree, build_balanced_equation(tree, e.separatrices, seed).poles)["dim"]
                 for seed in (101, 202, 303)]
    t2 = tree.copy()
    s = pencil_coordinates(tree, 0, 1, taken=[m.coordinate for m in F.poles])[0]
    t2.blow_up(t2.free_point(0, s))
    extra = obstruction_dimension(t2, F.poles)["dim"]
    cusp = reduce(parse_form("2y dy - 3x^2 dx"))
    trivial = [obstruction_dimension(cusp, [])["dim"], obstruction_dimension(cusp, [CurveGerm(Y)])["dim"]]
    ok = rechoices == [base] * 3 and extra == base and trivial == [0, 0]
    assert record(6, ok, f"base={base}, re-choices={rechoices}, extra blow-up={extra}, trivial={trivial}")


def _cli(argv):
    import io
    import sys

    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = main(argv)
    finally:
        sys.stdout = old
    return code, out.getvalue()


def test_criterion_7_infrastructure(pipeline):
    terminated = all(tree.depth <= 50 and not audit(tree) for _, tree, _ in pipeline)
    roundtrip = all(parse_form(str(e.omega)) == e.omega for e, _, _ in pipeline)
    a = _cli(["corpus-check"])
    b = _cli(["corpus-check"])
    deterministic = a == b and a[0] == 0 and json.loads(a[1])["ok"]
    ok = terminated and roundtrip and deterministic
    assert record(7, ok, f"terminated+audited={terminated}, parser round-trip={roundtrip}, "
                         f"byte-identical corpus-check={deterministic}")
