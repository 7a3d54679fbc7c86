from fractions import Fraction

import pytest

from folres.algebra import X, Y
from folres.blowup import Curvette
from folres.corpus import FamilyParams, corpus_by_name, dicritical_family, family_entry, hamiltonian
from folres.errors import AttachmentConflict, NotASeparatrix
from folres.foliation import CurveGerm, OneForm, multiplicity
from folres.invariants import (
    build_balanced_equation,
    check_balanced_relation,
    check_component_orders,
    check_second_kind_criterion,
    curve_nu0,
    invariant_report,
    nu_balanced_along,
    obstruction_dimension,
    pencil_coordinates,
    rho,
    rho_by_degree,
    rho_formula_all_stages,
)
from folres.reduction import nu_form_along, reduce

F = Fraction


def test_rho_formula_every_prefix(reduced_corpus):
    for e, tree in reduced_corpus:
        for h in rho_formula_all_stages(tree):
            assert h["ok"], (e.name, h)


def test_rho_by_degree_cross_check(reduced_corpus):
    for e, tree in reduced_corpus:
        for c in tree.components:
            k = tree.patches[c.birth].center_index + 1
            assert rho(tree.stage(k), c.id) == rho_by_degree(tree, c.id), e.name


def test_family_separatrices():
    params = FamilyParams.make(3, (1, 2, 3), (-1, 0, 1))
    fam = dicritical_family(params)
    tree = reduce(fam.omega)
    assert [curve_nu0(tree, g) for g in fam.separatrices] == [2, 3, 4]


def test_family_first_integral_is_constant_on_leaves():
    fam = dicritical_family(FamilyParams.make(2, (1, 3), (0, 2)))
    num, den = fam.first_integral
    # d(num/den) ^ omega = 0  <=>  (num_x den - num den_x) b - (num_y den - num den_y) a = 0
    hx = num.diff_x() * den - num * den.diff_x()
    hy = num.diff_y() * den - num * den.diff_y()
    assert (hx * fam.omega.b - hy * fam.omega.a).is_zero()


def test_family_balanced_equation():
    e = family_entry(4, (1, 1, 1, 1), (0, 1, 2, 3))
    tree = reduce(e.omega)
    F_ = build_balanced_equation(tree, e.separatrices)
    assert len(F_.zeros) == 4 and len(F_.poles) == 2
    assert F_.nu0 == multiplicity(e.omega) + 1
    # along the dicritical component the orders agree
    assert nu_balanced_along(tree, F_)[0] == nu_form_along(tree)[0]
    assert check_component_orders(tree, F_)["ok"]


def test_radial_pencil_zeros():
    tree = reduce(OneForm(-Y, X))
    F_ = build_balanced_equation(tree, [])
    assert len(F_.zeros) == 2 and not F_.poles and F_.nu0 == 2


def test_rejects_non_separatrix_and_bad_attachments():
    tree = reduce(OneForm(Y, 2 * X))
    with pytest.raises(NotASeparatrix):
        build_balanced_equation(tree, [CurveGerm(X + Y)])
    rtree = reduce(OneForm(-Y, X))
    with pytest.raises(NotASeparatrix):
        # a leaf of the radial foliation is not isolated
        build_balanced_equation(rtree, [CurveGerm(Y)])
    with pytest.raises(AttachmentConflict):
        build_balanced_equation(rtree, [], coordinates={0: [F(1)]})
    with pytest.raises(AttachmentConflict):
        build_balanced_equation(rtree, [], coordinates={0: [F(1), F(1)]})


def test_second_kind_both_truth_values():
    for name, expected in (("cusp", True), ("family-3", True), ("snt-1", False), ("snt-2", False)):
        e = corpus_by_name()[name]
        tree = reduce(e.omega)
        F_ = build_balanced_equation(tree, e.separatrices)
        crit = check_second_kind_criterion(tree, F_)
        assert crit["ok"] and crit["snt_empty"] is expected and crit["mult_identity"] is expected


def test_balanced_relation_and_correction_sign():
    for name, corr in (("snt-1", 1), ("snt-2", 2), ("cusp", 0), ("family-4", 0)):
        e = corpus_by_name()[name]
        tree = reduce(e.omega)
        rel = check_balanced_relation(tree, build_balanced_equation(tree, e.separatrices))
        assert rel["ok"] and rel["correction"] == corr, name


def test_component_orders_fail_without_second_kind():
    e = corpus_by_name()["snt-1"]
    tree = reduce(e.omega)
    assert not check_component_orders(tree, build_balanced_equation(tree, e.separatrices))["ok"]


@pytest.mark.parametrize("n,dim", [(2, 0), (3, 0), (4, 1), (5, 3)])
def test_obstruction_family(n, dim):
    e = family_entry(n, (1,) * n, tuple(range(n)))
    tree = reduce(e.omega)
    assert obstruction_dimension(tree, build_balanced_equation(tree, e.separatrices).poles)["dim"] == dim


@pytest.mark.parametrize("seed", [11, 23, 57])
def test_obstruction_pencil_rechoice(seed):
    e = family_entry(5, (1, 2, 1, 1, 1), (-2, -1, 0, 1, 2))
    tree = reduce(e.omega)
    base = build_balanced_equation(tree, e.separatrices)
    other = build_balanced_equation(tree, e.separatrices, seed)
    assert [m.coordinate for m in base.poles] != [m.coordinate for m in other.poles]
    assert obstruction_dimension(tree, other.poles)["dim"] == obstruction_dimension(tree, base.poles)["dim"] == 3
    assert other.nu0 == base.nu0


def test_obstruction_extra_free_blow_up():
    e = family_entry(5, (1,) * 5, tuple(range(5)))
    tree = reduce(e.omega)
    poles = build_balanced_equation(tree, e.separatrices).poles
    base = obstruction_dimension(tree, poles)["dim"]
    # free point of the dicritical component away from the poles
    s = pencil_coordinates(tree, 0, 1, taken=[m.coordinate for m in poles])[0]
    t2 = tree.copy()
    pid = t2.free_point(0, s)
    t2.blow_up(pid)
    assert obstruction_dimension(t2, poles)["dim"] == base
    # free point on an invariant component
    inv = next(c for c in tree.components if not c.dicritical)
    t3 = tree.copy()
    t3.blow_up(t3.free_point(inv.id, pencil_coordinates(tree, inv.id, 1)[0]))
    assert obstruction_dimension(t3, poles)["dim"] == base
    for h in rho_formula_all_stages(t3):
        assert h["ok"]


def test_obstruction_trivial_cases():
    tree = reduce(hamiltonian(Y**2 - X**3))
    assert obstruction_dimension(tree, [])["dim"] == 0
    assert obstruction_dimension(tree, [CurveGerm(Y)])["dim"] == 0
    assert obstruction_dimension(tree, [Curvette(0, F(3))])["dim"] == 0


def test_report_json_fields():
    e = corpus_by_name()["cusp"]
    j = invariant_report(reduce(e.omega), e.separatrices).to_json()
    assert j["schema"] == "folres/1"
    assert j["nu0_foliation"] == 1 and j["nu0_balanced"] == 2
    assert j["rho_formula"]["ok"] and all(j["rho_formula_stages"])
    assert {"balanced_relation", "component_orders", "obstruction", "second_kind"} <= set(j)
