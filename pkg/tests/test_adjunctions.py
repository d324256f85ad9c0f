from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from fibrenrich import adjunctions as A
from fibrenrich import kernel as K
from fibrenrich.corpus import random_monotone_map, random_poset_spec

from oracles import oracle_galois, oracle_heyting, oracle_right_adjoint, poset_order
from support import closed_order, random_adjoint_pair


def test_hG_is_an_adjunction_and_a_galois_connection(ws):
    adj = ws.get("adjunctions", "hG")
    assert A.validate_adjunction(adj) == []
    C, B = adj.left.source, adj.left.target
    assert oracle_galois(C.objects, poset_order(C), B.objects, poset_order(B), adj.left.object_map, adj.right.object_map)


def test_find_right_adjoint_recovers_G(ws):
    h = ws.get("functors", "h")
    found = A.find_right_adjoint(h)
    assert found is not None
    assert found.right.object_map == ws.get("functors", "G").object_map


def test_G_has_its_own_right_adjoint(ws):
    found = A.find_right_adjoint(ws.get("functors", "G"))
    assert found is not None
    assert found.right.object_map == {"0": "0", "1": "0", "2": "1"}
    assert A.validate_adjunction(found) == []


def test_transpose_round_trip(ws):
    adj = ws.get("adjunctions", "hG")
    C, B = adj.left.source, adj.left.target
    for x in C.objects:
        for y in B.objects:
            for g in B.hom(adj.left.ob(x), y):
                k = A.transpose(adj, x, g)
                assert A.transpose_inverse(adj, y, k) == g


def test_corpus_families_are_valid(ws):
    for name in ws.names("families"):
        assert A.validate_family(ws.get("families", name)) == [], name


def test_bool_implication_matches_heyting_oracle(ws):
    fam = ws.get("families", "BoolImp")
    G = A.build_parameterized_adjoint(fam)
    B = fam.parameter_category
    expect = oracle_heyting(B.objects, poset_order(B), min)
    for (b, c), v in expect.items():
        assert G.ob((b, c)) == v


def test_chain3_implication_matches_heyting_oracle(ws):
    fam = ws.get("families", "Chain3Imp")
    G = A.build_parameterized_adjoint(fam)
    B = fam.parameter_category
    expect = oracle_heyting(B.objects, poset_order(B), min)
    assert {k: G.ob(k) for k in expect} == expect


def test_parameterized_adjoint_laws(ws):
    for name in ws.names("families"):
        fam = ws.get("families", name)
        G = A.build_parameterized_adjoint(fam)
        assert K.validate_functor(G) == [], name
        assert A.check_parameterized_naturality(fam, G) == [], name
        assert A.check_parameterized_uniqueness(fam, G, budget=100) == [], name


def test_search_and_explicit_families_agree(ws):
    explicit = ws.get("families", "BoolImp")
    searched = A.family_by_search("s", explicit.bifunctor)
    assert A.build_parameterized_adjoint(searched).object_map == A.build_parameterized_adjoint(explicit).object_map


def _random_map(seed):
    rng = random.Random(seed)
    src = random_poset_spec(rng, rng.randint(1, 4))
    tgt = random_poset_spec(rng, rng.randint(1, 4))
    image = random_monotone_map(rng, src, tgt)
    S = K.poset("S", src["poset"]["elements"], closed_order(src))
    T = K.poset("T", tgt["poset"]["elements"], closed_order(tgt))
    h = K.thin_functor("h", S, T, {f"p{a}": f"p{b}" for a, b in image.items()})
    return S, T, h


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_right_adjoint_search_matches_order_oracle(seed):
    S, T, h = _random_map(seed)
    found = A.find_right_adjoint(h)
    expect = oracle_right_adjoint(S.objects, poset_order(S), T.objects, poset_order(T), h.object_map)
    if expect is None:
        assert found is None
    else:
        assert found is not None and found.right.object_map == expect
        assert A.validate_adjunction(found) == []


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_adjoints_preserve_liftings_on_random_instances(seed):
    adj = random_adjoint_pair(seed)
    if adj is None:
        return
    P = K.identity_functor(adj.left.source)
    Q = K.identity_functor(adj.left.target)
    sa = A.SquareAdjunction("r", adj, adj, P, Q)
    assert A.validate_square_adjunction(sa) == []
    assert A.adjoint_liftings_report(sa) == []
