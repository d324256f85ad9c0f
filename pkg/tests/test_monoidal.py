from __future__ import annotations

import itertools

import pytest

from fibrenrich import fibrations as F
from fibrenrich import kernel as K
from fibrenrich import monoidal as M
from fibrenrich.laws import MalformedError

from oracles import oracle_heyting, poset_order


def test_corpus_monoidal_structures_are_coherent(ws):
    for name in ws.names("monoidal"):
        assert M.validate_monoidal(ws.get("monoidal", name)) == [], name


def test_bool_meet_tensor_is_min(ws):
    m = ws.get("monoidal", "BoolMeet")
    for x, y in itertools.product("01", repeat=2):
        assert m.t(x, y) == min(x, y)
    assert m.unit == "1"


def test_product_monoidal_is_coherent(ws):
    b = ws.get("monoidal", "BoolMeet")
    c = ws.get("monoidal", "Chain3Min")
    p = M.product_monoidal("BoolChain3", b, c)
    assert M.validate_monoidal(p) == []
    assert p.unit == ("1", "2")


def test_thin_monoidal_refuses_an_operation_without_unitors(ws):
    C = ws.get("categories", "Chain3")
    with pytest.raises(MalformedError, match="no morphism 1 → 0"):
        M.thin_monoidal("Bad", C, lambda x, y: "1", "0")


def test_corpus_monoidal_functors(ws):
    for name in ws.names("monoidal_functors"):
        assert M.validate_monoidal_functor(ws.get("monoidal_functors", name)) == [], name


def test_composite_of_strict_functors_is_strict(ws):
    h = ws.get("monoidal_functors", "h.strict")
    g = ws.get("monoidal_functors", "G.strict")
    hg = M.compose_monoidal_functors(h, g)
    assert M.validate_monoidal_functor(hg) == []
    assert hg.functor.object_map == {"0": "0", "1": "1"}


def test_corpus_actions(ws):
    for name in ws.names("actions"):
        assert M.validate_action(ws.get("actions", name)) == [], name


def test_regular_action_is_the_tensor(ws):
    m = ws.get("monoidal", "Chain3Min")
    act = M.regular_action(m)
    assert act.star.object_map == m.tensor.object_map
    assert M.validate_action(act) == []


def test_monoidal_fibrations_and_closedness(ws):
    for name in ws.names("monoidal_fibrations"):
        cd = ws.get("monoidal_fibrations", name)
        assert M.check_monoidal_fibration(cd.data) == [], name
        assert M.validate_monoidal_functor(M.derived_strict_functor(cd.data)) == [], name
        assert M.check_closed_fibration(cd.data, cd.total_hom, cd.base_hom) == [], name


def test_monoidal_opfibrations_are_opfibrations(ws):
    for name in ("h.op", "id_Bool.op"):
        d = ws.get("monoidal_fibrations", name).data
        assert d.bundle.direction == F.OPFIBRATION


def test_corpus_representations(ws):
    for name in ws.names("representations"):
        assert M.validate_T_representation(ws.get("representations", name).rep) == [], name


def test_regular_representation_uses_both_tensors(ws):
    d = ws.get("monoidal_fibrations", "Pi").data
    r = M.regular_representation(d)
    assert r.total_action.star.object_map == d.total.tensor.object_map
    assert r.base_action.star.object_map == d.base.tensor.object_map
    assert M.validate_T_representation(r) == []


@pytest.mark.parametrize("cat,elements", [("Bool", "01"), ("Chain3", "012")])
def test_heyting_implication_matches_oracle(ws, cat, elements):
    V = ws.get("categories", cat)
    meet = {(x, y): min(x, y) for x in elements for y in elements}
    imp = M.heyting_implication(V, meet)
    expect = oracle_heyting(V.objects, poset_order(V), min)
    assert {k: imp(*k) for k in expect} == expect


def test_z2_group_is_symmetric_and_not_thin(ws):
    m = ws.get("monoidal", "Z2Group")
    assert m.symmetry is not None
    assert not m.category.is_thin()
    assert K.validate_functor(m.tensor) == []
