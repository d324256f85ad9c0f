"""Corpus mutations for the negative-path suite.

Each entry perturbs one built-in structure so that exactly one law breaks,
names the validator that must reject it, and records the law identifier and
witness derived by hand from the perturbation.  ``tests/MUTATIONS.md`` lists
the same catalogue in prose; ``test_mutations.py`` keeps the two in sync.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from fibrenrich import adjunctions as A
from fibrenrich import enrichment as E
from fibrenrich import fibrations as F
from fibrenrich import kernel as K
from fibrenrich import monoidal as M
from fibrenrich.laws import PreconditionError
from fibrenrich.workspace import Workspace, WorkspaceError, parse_workspace


@dataclass(frozen=True)
class Mutation:
    name: str
    validator: str
    law: str
    witness: tuple
    run: Callable[[Workspace], list]


CATALOGUE: list[Mutation] = []


def mutation(name: str, validator: str, law: str, witness: tuple):
    def deco(fn):
        CATALOGUE.append(Mutation(name, validator, law, witness, fn))
        return fn

    return deco


def _built(x):
    return x.build() if hasattr(x, "build") else x


def _with_composition(c: K.FinCategory, drop=(), put=None) -> K.FinCategory:
    comp = {k: v for k, v in c.composition.items() if k not in drop}
    comp.update(put or {})
    mors = {m: (c.dom[m], c.cod[m]) for m in c.morphisms}
    return K.FinCategory(c.name + "!", c.objects, mors, c.identities, comp, c.factors)


# --- kernel -------------------------------------------------------------------


@mutation("bool-drop-composite", "validate_category", "category.totality", ("le01", "id_0"))
def _(ws):
    return K.validate_category(_with_composition(ws.get("categories", "Bool"), drop=[("le01", "id_0")]))


@mutation("nonassociative-monoid", "validate_category", "category.associativity", ("b", "a", "a"))
def _(ws):
    mors = {"e": ("*", "*"), "a": ("*", "*"), "b": ("*", "*")}
    comp = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    for m in mors:
        comp[(m, "e")] = m
        comp[("e", m)] = m
    return K.validate_category(K.FinCategory("Bad", ["*"], mors, {"*": "e"}, comp))


@mutation("h-misplaced-image", "validate_functor", "functor.typing", ("le02", "id_1"))
def _(ws):
    h = ws.get("functors", "h")
    return K.validate_functor(K.FinFunctor("h!", h.source, h.target, h.object_map, {**h.morphism_map, "le02": "id_1"}))


@mutation("hG-unit-wrong-component", "validate_nat_trans", "nat.typing", ("1", "id_1"))
def _(ws):
    u = ws.get("adjunctions", "hG").unit_transformation()
    return K.validate_nat_trans(K.NatTransf("u!", u.source, u.target, {**u.components, "1": "id_1"}))


# --- adjunctions --------------------------------------------------------------


@mutation("z2-unit-twisted", "validate_adjunction", "adjunction.triangle_left", ("*",))
def _(ws):
    adj = ws.get("families", "Z2Hom").members["*"]
    return A.validate_adjunction(replace(adj, unit={"*": "s"}))


@mutation("boolimp-member-swapped", "validate_family", "family.partial_mismatch", ("1",))
def _(ws):
    fam = ws.get("families", "BoolImp")
    return A.validate_family(replace(fam, members={**fam.members, "1": fam.members["0"]}))


@mutation("z2hom-adjoint-twisted", "check_parameterized_naturality", "padj.naturality", ("id_*", "id_*", "s", "id_*"))
def _(ws):
    fam = ws.get("families", "Z2Hom")
    G = A.build_parameterized_adjoint(fam)
    flipped = {m: ("id_*" if v == "s" else "s") if m[1] == "s" else v for m, v in G.morphism_map.items()}
    return A.check_parameterized_naturality(fam, K.FinFunctor("G!", G.source, G.target, G.object_map, flipped))


@mutation("h-over-constant", "validate_square_cell", "square.commutes", ("0",))
def _(ws):
    h = ws.get("functors", "h")
    const = K.thin_functor("one", h.source, h.target, {x: "1" for x in h.source.objects})
    cell = A.SquareCell("sq!", h, const, ws.get("functors", "id_Chain3"), ws.get("functors", "id_Bool"))
    return A.validate_square_cell(cell)


@mutation("z2-square-unit-above", "validate_square_adjunction", "square_adjunction.unit_above", ("*",))
def _(ws):
    adj = ws.get("families", "Z2Hom").members["*"]
    twisted = replace(adj, unit={"*": "s"}, counit={"*": "s"})
    idz = K.identity_functor(adj.left.source)
    return A.validate_square_adjunction(A.SquareAdjunction("sa!", twisted, adj, idz, idz))


@mutation("hG-over-terminal", "adjoint_liftings_report", "adjoint_liftings.right_adjoint_cartesian", ("le01", "le02"))
def _(ws):
    hG = ws.get("adjunctions", "hG")
    P = ws.get("functors", "h").source
    one = ws.get("categories", "One")
    toone = K.thin_functor("!", P, one, {x: "*" for x in P.objects})
    return A.adjoint_liftings_report(A.SquareAdjunction("sa!", hG, hG, toone, ws.get("functors", "id_Bool")))


# --- fibrations ---------------------------------------------------------------


@mutation("disc-over-two", "check_fibration", "fibration.no_lift", ("f", "b"))
def _(ws):
    return [F.check_fibration(ws.get("functors", "DiscToTwo")).finding()]


@mutation("proj2-bad-cleavage", "validate_bundle", "cleavage.cartesian", ("f", ("1", "b"), ("le01", "f")))
def _(ws):
    b = ws.get("fibrations", "Proj2").check()
    return F.validate_bundle(replace(b, cleavage={**b.cleavage, ("f", ("1", "b")): ("le01", "f")}))


@mutation("mixed-reindex-wrong-fibre", "validate_presentation", "presentation.typing", ("f",))
def _(ws):
    ix = ws.get("presentations", "MixedTwo")
    return F.validate_presentation(replace(ix, reindex={**ix.reindex, "f": ws.get("functors", "id_Bool")}))


# --- monoidal -----------------------------------------------------------------


@mutation("z2-associator-twisted", "validate_monoidal", "monoidal.pentagon", ("*", "*", "*", "*"))
def _(ws):
    m = ws.get("monoidal", "Z2Group")
    return M.validate_monoidal(replace(m, associator={("*", "*", "*"): "s"}, symmetry=None))


@mutation("z2-symmetry-twisted", "validate_monoidal", "monoidal.hexagon", ("*", "*", "*"))
def _(ws):
    m = ws.get("monoidal", "Z2Group")
    return M.validate_monoidal(replace(m, symmetry={("*", "*"): "s"}))


@mutation("z2-lax-claimed-strict", "validate_monoidal_functor", "monoidal_functor.flavor", (("*", "*"), "s"))
def _(ws):
    m = ws.get("monoidal", "Z2Group")
    d = M.MonoidalFunctorData("id!", K.identity_functor(m.category), m, m, {("*", "*"): "s"}, "s", M.STRICT)
    return M.validate_monoidal_functor(d)


@mutation("h-join-over-meet", "check_monoidal_fibration", "monoidal_fibration.strict", ("tensor", "0", "1"))
def _(ws):
    d = ws.get("monoidal_fibrations", "h").data
    C = d.total.category
    join = M.thin_monoidal("Chain3Max", C, lambda x, y: max(x, y), "0")
    return M.check_monoidal_fibration(replace(d, total=join))


@mutation("z2-action-twisted", "validate_action", "action.unit_left", ("*", "*"))
def _(ws):
    act = ws.get("actions", "RegZ2")
    return M.validate_action(replace(act, chi={k: "s" for k in act.chi}))


@mutation("pi-missing-total-hom", "check_closed_fibration", "closed.missing_family", ("total",))
def _(ws):
    cd = ws.get("monoidal_fibrations", "Pi")
    return M.check_closed_fibration(cd.data, None, cd.base_hom)


@mutation("regh-trivial-base-action", "validate_T_representation", "representation.square", (("0", "1"),))
def _(ws):
    r = ws.get("representations", "RegH").rep
    base = r.base_action
    trivial = M.thin_action("Triv", base.acting, base.carrier, lambda x, d: d)
    return M.validate_T_representation(replace(r, base_action=trivial))


# --- enrichment ---------------------------------------------------------------


@mutation("z2self-identity-twisted", "validate_enriched_category", "enriched.unit_left", ("*", "*"))
def _(ws):
    e = _built(ws.get("enrichments", "Z2Self")).enriched
    return E.validate_enriched_category(replace(e, ident={"*": "s"}))


def _chaotic(e: E.EnrichedCategory) -> E.EnrichedCategory:
    top = "1"
    V = e.base.category
    return replace(
        e,
        name="chaotic",
        hom={k: top for k in e.hom},
        comp={k: V.id(top) for k in e.comp},
        ident={k: V.id(top) for k in e.ident},
    )


@mutation("selfh-wrong-total-objects", "validate_enriched_fibration", "enriched_fibration.objects", ("total",))
def _(ws):
    d = _built(ws.get("enriched_fibrations", "SelfH"))
    return E.validate_enriched_fibration(replace(d, total=replace(d.total, objects=d.total.objects[:-1])))


@mutation("selfh-chaotic-base", "as_enriched_functor", "enriched_functor.fully_faithful", ("1", "0"))
def _(ws):
    d = _built(ws.get("enriched_fibrations", "SelfH"))
    return E.as_enriched_functor(replace(d, base=_chaotic(d.base)))[0]


@mutation("boolonone-wrong-family", "enrich_from_action", "construction.precondition", ())
def _(ws):
    act = ws.get("actions", "BoolOnOne")
    try:
        E.enrich_from_action(act, ws.get("families", "BoolImp"))
    except PreconditionError as exc:
        from fibrenrich.report import finding_from_exception

        return finding_from_exception("construction.precondition", str(exc), exc.findings)
    return []


# --- workspace ----------------------------------------------------------------


def _ws_findings(text: str) -> list:
    try:
        ws = parse_workspace(text)
        for s in ("categories", "functors"):
            for n in ws.names(s):
                ws.get(s, n)
    except WorkspaceError as exc:
        return [exc.finding()]
    return []


@mutation("ws-truncated", "parse_workspace", "workspace.syntax", (2, 1))
def _(ws):
    return _ws_findings('{"categories": {\n')


@mutation("ws-dangling-source", "parse_workspace", "workspace.unresolved_reference", (3, 9))
def _(ws):
    return _ws_findings(
        '{"categories": {"B": {"poset": {"elements": ["0"], "order": []}}},\n'
        ' "functors": {\n'
        '   "F": {"source": "Nope", "target": "B", "objects": [["0", "0"]]}}}\n'
    )


@mutation("ws-duplicate-category", "parse_workspace", "workspace.duplicate_name", (2, 3))
def _(ws):
    return _ws_findings(
        '{"categories": {"B": {"poset": {"elements": ["0"], "order": []}},\n'
        '  "B": {"poset": {"elements": ["1"], "order": []}}}}\n'
    )


@mutation("ws-object-outside-target", "parse_workspace", "workspace.typing", (3, 51))
def _(ws):
    return _ws_findings(
        '{"categories": {"B": {"poset": {"elements": ["0"], "order": []}}},\n'
        ' "functors": {\n'
        '   "F": {"source": "B", "target": "B", "objects": [["0", "7"]]}}}\n'
    )
