from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibrenrich.corpus import corpus_document, corpus_text, random_workspace
from fibrenrich.workspace import SECTIONS, WorkspaceError, emit_document, parse_workspace

POSET = '{"poset": {"elements": ["0", "1"], "order": [["0", "1"]]}}'


def _error(text):
    with pytest.raises(WorkspaceError) as info:
        parse_workspace(text)
    return info.value


def test_empty_document_is_an_empty_workspace():
    for text in ("", "   \n", "{}"):
        ws = parse_workspace(text)
        assert all(ws.names(s) == [] for s in SECTIONS)


def test_syntax_error_position():
    err = _error('{"categories": {\n  "A": ' + POSET + ",\n}")
    assert err.kind == "syntax"
    assert (err.line, err.col) == (3, 1)
    assert err.finding().law == "workspace.syntax"


def test_unresolved_reference_position():
    text = '{"categories": {"A": ' + POSET + '},\n "functors": {"F": {"source": "A", "target": "Z", "objects": [["0", "0"], ["1", "1"]]}}}'
    err = _error(text)
    assert err.kind == "unresolved-reference"
    assert err.line == 2
    assert "'Z'" in str(err)


def test_duplicate_name_within_a_section():
    err = _error('{"categories": {"A": ' + POSET + ',\n "A": ' + POSET + "}}")
    assert err.kind == "duplicate-name"
    assert (err.line, err.col) == (2, 2)


def test_same_name_in_two_sections_is_allowed():
    text = '{"categories": {"A": ' + POSET + '}, "functors": {"A": {"identity": "A"}}}'
    ws = parse_workspace(text)
    assert ws.get("functors", "A").source is ws.get("categories", "A")


def test_unknown_section_is_a_typing_error():
    err = _error('{"categories": {},\n "widgets": {}}')
    assert err.kind == "typing"
    assert (err.line, err.col) == (2, 2)


def test_non_monotone_functor_is_a_typing_error():
    text = (
        '{"categories": {"A": ' + POSET + "},\n"
        ' "functors": {"F": {"source": "A", "target": "A",\n'
        '   "objects": [["0", "1"], ["1", "0"]]}}}'
    )
    err = _error(text)
    assert err.kind == "typing"
    assert err.line >= 2


def test_cyclic_reference_is_a_typing_error():
    text = '{"functors": {"F": {"compose": ["G", "G"]}, "G": {"compose": ["F", "F"]}}}'
    err = _error(text)
    assert err.kind == "typing"
    assert "cyclic" in str(err)


def test_non_fibration_referenced_by_a_monoidal_fibration():
    doc = corpus_document()
    doc["monoidal_fibrations"]["Bad"] = {"fibration": "DiscToTwo", "total": "BoolMeet", "base": "BoolMeet"}
    err = _error(emit_document(doc))
    assert err.kind == "typing"


def test_corpus_round_trip_is_stable():
    text = corpus_text()
    ws = parse_workspace(text)
    assert ws.emit() == text
    again = parse_workspace(ws.emit())
    for s in SECTIONS:
        assert again.names(s) == ws.names(s)


def test_corpus_entries_resolve_to_the_same_tables():
    a = parse_workspace(corpus_text())
    b = parse_workspace(corpus_text())
    for n in a.names("categories"):
        assert a.get("categories", n) == b.get("categories", n)
    for n in a.names("functors"):
        fa, fb = a.get("functors", n), b.get("functors", n)
        assert (fa.object_map, fa.morphism_map) == (fb.object_map, fb.morphism_map)


def test_tuple_identifiers_are_json_arrays():
    doc = json.loads(corpus_text())
    ws = parse_workspace(corpus_text())
    c = ws.get("categories", "BoolTwo")
    assert all(isinstance(o, tuple) for o in c.objects)
    assert "BoolTwo" in doc["categories"]


def test_constructed_entries_are_lazy(fresh_ws):
    rec = fresh_ws.get("enrichments", "BoolSelf")
    assert rec._value is None
    first = rec.build()
    assert rec.build() is first


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 100_000), count=st.integers(1, 5))
def test_random_workspaces_round_trip(seed, count):
    text = emit_document(random_workspace(seed, count))
    ws = parse_workspace(text)
    assert ws.emit() == text
    assert len(ws.names("functors")) == count
