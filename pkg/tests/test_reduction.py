import random
from fractions import Fraction

import pytest

from folres.algebra import X, Y
from folres.corpus import FamilyParams, corpus_by_name, dicritical_family, hamiltonian
from folres.errors import DepthExceeded, NonRationalSingularity
from folres.foliation import Kind, OneForm, multiplicity
from folres.invariants import rho
from folres.reduction import (
    audit,
    is_second_kind,
    nu_form_along,
    nu_form_along_direct,
    nu_poly_along_direct,
    reduce,
    snt_set,
    tree_to_dot,
    tree_to_json,
)

F = Fraction
CUSP = hamiltonian(Y**2 - X**3)


def test_radial():
    tree = reduce(OneForm(-Y, X))
    assert len(tree.centers) == 1
    (d0,) = tree.components
    assert d0.dicritical and d0.nu == 1
    assert tree.final.singular_points() == []
    assert rho(tree.final, 0) == 2
    assert nu_form_along(tree) == {0: 2}


def test_cusp_chain():
    tree = reduce(CUSP)
    assert len(tree.centers) == 3
    assert [c.nu for c in tree.components] == [1, 1, 2]
    st = tree.final
    last = tree.components[-1].id
    kinds = [tree.patches[cp.patch].classification.kind for cp in st.points_on(last)]
    assert kinds.count(Kind.REDUCED) == 3
    assert rho(st, last) == 1
    assert rho(st, 0) == 0
    assert snt_set(tree) == []
    f = Y**2 - X**3
    assert [nu_poly_along_direct(tree, f, c.id) for c in tree.components] == [2, 3, 6]


def test_family_blows_up_only_over_tangency_points():
    params = FamilyParams.make(3, (1, 2, 1), (F(-1), F(0), F(1, 2)))
    tree = reduce(dicritical_family(params).omega)
    assert tree.components[0].dicritical
    assert tree.final.valence(0) == 3
    for c in tree.centers[1:]:
        chart, s = tree.patches[c].address[0]
        assert chart == "1" and s in params.t


def test_snt_detection():
    for name in ("snt-1", "snt-2"):
        tree = reduce(corpus_by_name()[name].omega)
        assert len(snt_set(tree)) == 1
        assert not is_second_kind(tree)
    assert is_second_kind(reduce(OneForm(-Y, X)))


def test_corpus_terminates_and_audits(reduced_corpus):
    for e, tree in reduced_corpus:
        assert tree.depth <= 50
        assert audit(tree) == [], e.name


def test_multiplicity_grows_by_at_most_one(reduced_corpus):
    for e, tree in reduced_corpus:
        for c in tree.centers:
            p = tree.patches[c]
            if p.parent is not None:
                assert multiplicity(p.form) <= multiplicity(tree.patches[p.parent].form) + 1, e.name


def test_cusp_corner_multiplicity_goes_up():
    tree = reduce(CUSP)
    assert [multiplicity(tree.patches[c].form) for c in tree.centers] == [1, 1, 2]


def test_form_orders_recursive_vs_direct(reduced_corpus):
    for e, tree in reduced_corpus:
        rec = nu_form_along(tree)
        for c in tree.components:
            assert rec[c.id] == nu_form_along_direct(tree, c.id), e.name


def _signature(tree):
    st = tree.final
    comps = sorted(
        (c.nu, c.dicritical, st.valence(c.id), tree.patches[c.birth].label()) for c in tree.components
    )
    return comps


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_blow_up_order_does_not_matter(corpus_entries, seed):
    for e in corpus_entries:
        a = reduce(e.omega)
        b = reduce(e.omega, rng=random.Random(seed))
        assert _signature(a) == _signature(b), e.name


def test_depth_exceeded_lists_offending_points():
    with pytest.raises(DepthExceeded) as info:
        reduce(CUSP, max_depth=1)
    assert info.value.offending and info.value.offending[0]["reasons"]


def test_env_var_depth(monkeypatch):
    monkeypatch.setenv("FOLRES_MAX_DEPTH", "2")
    with pytest.raises(DepthExceeded):
        reduce(CUSP)
    monkeypatch.setenv("FOLRES_MAX_DEPTH", "3")
    assert len(reduce(CUSP).centers) == 3


def test_non_rational_point():
    with pytest.raises(NonRationalSingularity) as info:
        reduce(OneForm(-2 * X, Y))
    assert info.value.residual is not None


def test_regular_form_rejected():
    with pytest.raises(ValueError):
        reduce(OneForm(X + 1, Y))


def test_json_and_dot():
    tree = reduce(CUSP)
    j = tree_to_json(tree)
    assert j["schema"] == "folres/1"
    assert [c["nu"] for c in j["components"]] == [1, 1, 2]
    dot = tree_to_dot(tree)
    assert 'D2 [label="D2 ν=2 inv"]' in dot
    assert "D0 -- D2;" in dot and "D1 -- D2;" in dot
