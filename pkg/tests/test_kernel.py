from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibrenrich import kernel as K
from fibrenrich.laws import Finding, MalformedError, verdict


def test_every_corpus_category_is_lawful(ws):
    for name in ws.names("categories"):
        assert K.validate_category(ws.get("categories", name)) == [], name


def test_every_corpus_functor_is_lawful(ws):
    for name in ws.names("functors"):
        assert K.validate_functor(ws.get("functors", name)) == [], name


def test_poset_has_one_morphism_per_relation():
    c = K.poset("P", ["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert len(c.morphisms) == 6
    assert c.is_thin()
    assert c.compose("lebc", "leab") == "leac"


def test_product_and_projections(ws):
    B = ws.get("categories", "Bool")
    T = ws.get("categories", "Two")
    P = K.product(B, T)
    assert len(P.objects) == 4 and len(P.morphisms) == 9
    assert K.validate_category(P) == []
    for i in (0, 1):
        assert K.validate_functor(K.projection(P, i)) == []


def test_opposite_is_an_involution(ws):
    for name in ws.names("categories"):
        c = ws.get("categories", name)
        op = K.opposite(c)
        assert K.validate_category(op) == []
        assert K.opposite(op) == c


def test_opposite_swaps_endpoints(ws):
    c = ws.get("categories", "Chain3")
    op = K.opposite(c)
    for m in c.morphisms:
        assert (op.dom[m], op.cod[m]) == (c.cod[m], c.dom[m])


def test_composition_with_identity_functors(ws):
    h = ws.get("functors", "h")
    left = K.compose_functors(K.identity_functor(h.target), h)
    right = K.compose_functors(h, K.identity_functor(h.source))
    assert left.object_map == h.object_map == right.object_map
    assert left.morphism_map == h.morphism_map == right.morphism_map


def test_h_after_g_is_identity_on_bool(ws):
    hg = K.compose_functors(ws.get("functors", "h"), ws.get("functors", "G"))
    assert hg.object_map == {"0": "0", "1": "1"}


def test_inverse_of_an_isomorphism(ws):
    c = ws.get("categories", "Iso2")
    swap = K.FinFunctor(
        "swap", c, c, {"a": "b", "b": "a"}, {"i": "j", "j": "i", "id_a": "id_b", "id_b": "id_a"}
    )
    assert K.validate_functor(swap) == []
    assert K.is_isomorphism(swap)
    inv = K.inverse_functor(swap)
    back = K.compose_functors(inv, swap)
    assert back.object_map == {"a": "a", "b": "b"}
    assert all(back.mor(m) == m for m in c.morphisms)
    assert not K.is_isomorphism(ws.get("functors", "h"))


def test_find_natural_iso_between_equal_functors(ws):
    h = ws.get("functors", "h")
    iso = K.find_natural_iso(h, h)
    assert iso is not None
    assert K.validate_nat_trans(iso, iso=True) == []


def test_find_natural_iso_rejects_distinct_thin_functors(ws):
    B = ws.get("categories", "Bool")
    zero = K.thin_functor("z", B, B, {"0": "0", "1": "0"})
    assert K.find_natural_iso(zero, K.identity_functor(B)) is None


def test_check_budget_reports_large_categories(ws):
    c = ws.get("categories", "Chain3Chain3")
    f = K.check_budget(c, 10, "search")
    assert f is not None and f.law == "budget.exceeded"
    assert verdict([f]) == "error"
    assert K.check_budget(c, 100, "search") is None


def test_unknown_morphism_is_malformed(ws):
    with pytest.raises(MalformedError):
        ws.get("functors", "h").mor("nope")


def test_unregistered_law_is_refused():
    with pytest.raises(KeyError):
        Finding("no.such.law")


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), pairs=st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4))))
def test_random_posets_are_categories(n, pairs):
    els = [f"x{i}" for i in range(n)]
    order = {(els[a], els[b]) for a, b in pairs if a < b < n}
    changed = True
    while changed:
        extra = {(a, d) for a, b in order for c, d in order if b == c} - order
        changed = bool(extra)
        order |= extra
    c = K.poset("R", els, sorted(order))
    assert K.validate_category(c) == []
    assert K.validate_category(K.opposite(c)) == []
