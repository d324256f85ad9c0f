"""Enriched categories, enrichment induced by actions, change of base, and enriched (op)fibrations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .adjunctions import (
    ParameterizedSquare,
    PartialAdjointFamily,
    SquareCell,
    build_parameterized_adjoint,
    build_parameterized_adjoint_square,
    family_by_search,
    transpose,
    transpose_inverse,
    validate_family,
    validate_square_cell,
)
from .fibrations import (
    FIBRATION,
    OPFIBRATION,
    FibrationBundle,
    NotAFibration,
    check_fibration,
    dualize,
    lifting_test,
)
from .kernel import (
    FinCategory,
    FinFunctor,
    compose_functors,
    find_natural_iso,
    functor_product,
    idkey,
    inverse_functor,
    is_isomorphism,
    opposite,
    opposite_functor,
    product,
    validate_category,
    validate_functor,
)
from .laws import Finding, InternalError, MissingSymmetry, PreconditionError
from .monoidal import (
    ActionStructure,
    MonoidalFibrationData,
    MonoidalFunctorData,
    MonoidalStructure,
    TRepresentationData,
    check_closed_fibration,
    derived_strict_functor,
    regular_representation,
    validate_T_representation,
)


@dataclass(eq=False)
class EnrichedCategory:
    """``comp[(a,b,c)]: hom(b,c)⊗hom(a,b) → hom(a,c)`` and ``ident[a]: I → hom(a,a)``."""

    name: str
    base: MonoidalStructure
    objects: tuple
    hom: dict
    comp: dict
    ident: dict


def validate_enriched_category(e: EnrichedCategory) -> list[Finding]:
    m = e.base
    V = m.category
    out: list[Finding] = []
    obs = e.objects
    for a, b in itertools.product(obs, repeat=2):
        h = e.hom.get((a, b))
        if h is None:
            out.append(Finding("enriched.missing_component", ("hom", a, b), "no hom-object"))
        elif h not in V.identities:
            out.append(Finding("malformed.reference", ("hom", a, b, h), f"hom-object is not an object of {V.name}"))
    if out:
        return out

    def typed(kind, key, mor, dom, cod):
        if mor is None:
            out.append(Finding("enriched.missing_component", (kind,) + key, f"no {kind} component"))
        elif mor not in V.dom:
            out.append(Finding("malformed.reference", (kind,) + key + (mor,), "component is not a morphism"))
        elif V.dom[mor] != dom or V.cod[mor] != cod:
            out.append(
                Finding("enriched.typing", (kind,) + key + (mor,), f"component must go {idkey(dom)} → {idkey(cod)}")
            )

    hom = e.hom
    for a, b, c in itertools.product(obs, repeat=3):
        typed("M", (a, b, c), e.comp.get((a, b, c)), m.t(hom[(b, c)], hom[(a, b)]), hom[(a, c)])
    for a in obs:
        typed("j", (a,), e.ident.get(a), m.unit, hom[(a, a)])
    if out:
        return out
    M, j, cmp = e.comp, e.ident, V.compose
    for a, b, c, d in itertools.product(obs, repeat=4):
        lhs = cmp(M[(a, b, d)], m.tm(M[(b, c, d)], V.id(hom[(a, b)])))
        rhs = cmp(
            M[(a, c, d)],
            m.tm(V.id(hom[(c, d)]), M[(a, b, c)]),
            m.associator[(hom[(c, d)], hom[(b, c)], hom[(a, b)])],
        )
        if lhs != rhs:
            out.append(Finding("enriched.associativity", (a, b, c, d), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    for a, b in itertools.product(obs, repeat=2):
        h = hom[(a, b)]
        if cmp(M[(a, b, b)], m.tm(j[b], V.id(h))) != m.left_unitor[h]:
            out.append(Finding("enriched.unit_left", (a, b), "M∘(j⊗1) ≠ ℓ"))
        if cmp(M[(a, a, b)], m.tm(V.id(h), j[a])) != m.right_unitor[h]:
            out.append(Finding("enriched.unit_right", (a, b), "M∘(1⊗j) ≠ r"))
    return out


def underlying_category(e: EnrichedCategory, name: str | None = None) -> FinCategory:
    """Morphisms ``a → b`` are triples ``(a, b, x)`` with ``x: I → hom(a,b)``."""
    m = e.base
    V = m.category
    I = m.unit
    split = V.inverse(m.left_unitor[I])
    mors = {}
    for a, b in itertools.product(e.objects, repeat=2):
        for x in V.hom(I, e.hom[(a, b)]):
            mors[(a, b, x)] = (a, b)
    comp = {}
    for (b, c, y), (a, b2, x) in itertools.product(mors, repeat=2):
        if b != b2:
            continue
        comp[((b, c, y), (a, b, x))] = (a, c, V.compose(e.comp[(a, b, c)], m.tm(y, x), split))
    idents = {a: (a, a, e.ident[a]) for a in e.objects}
    return FinCategory(name or f"{e.name}₀", e.objects, mors, idents, comp)


def enriched_hom_functor(e: EnrichedCategory, underlying: FinCategory | None = None) -> FinFunctor:
    """``hom(-,-): A₀^op × A₀ → V``; pre-composition by ``f`` and post-composition by ``g`` go through ``M`` and the unitors."""
    m = e.base
    V = m.category
    A0 = underlying or underlying_category(e)
    src = product(opposite(A0), A0)
    hom, M = e.hom, e.comp
    obmap = {(a, b): hom[(a, b)] for a, b in src.objects}
    mormap = {}
    for f, g in src.morphisms:
        a2, a, xf = f
        b, b2, xg = g
        mid = hom[(a2, b)]
        mormap[(f, g)] = V.compose(
            M[(a2, b, b2)],
            m.tm(xg, V.id(mid)),
            V.inverse(m.left_unitor[mid]),
            M[(a2, a, b)],
            m.tm(V.id(hom[(a, b)]), xf),
            V.inverse(m.right_unitor[hom[(a, b)]]),
        )
    return FinFunctor(f"{e.name}(-,-)", src, V, obmap, mormap)


@dataclass(eq=False)
class ActionEnrichment:
    enriched: EnrichedCategory
    hom_functor: FinFunctor
    comparison: FinFunctor
    family: PartialAdjointFamily


def _transported_hom(e: EnrichedCategory, comparison: FinFunctor) -> FinFunctor:
    """The enriched hom-functor moved along ``comparison: A₀ ≅ A`` to ``A^op × A``."""
    inv = inverse_functor(comparison)
    H = enriched_hom_functor(e, comparison.source)
    return compose_functors(H, functor_product(opposite_functor(inv), inv), f"{e.name}(-,-)")


def enrich_from_action(act: ActionStructure, fam: PartialAdjointFamily | None = None, name: str | None = None) -> ActionEnrichment:
    """Enrichment of the carrier with ``hom(a,b) = F_a(b)`` for right adjoints ``F_a`` of ``- * a``.

    Composition is the adjunct of ``ε_c ∘ (1*ε_b) ∘ χ`` and identities are
    adjuncts of ``ν``.  The result is re-validated; a failure is an engine
    defect and raises :class:`InternalError`.
    """
    nm = name or f"enr[{act.name}]"
    if fam is None:
        fam = family_by_search(f"{nm}.F", act.star)
    if fam.bifunctor != act.star:
        raise PreconditionError(f"family {fam.name} is not indexed over the action {act.name}")
    bad = validate_family(fam)
    if bad:
        raise PreconditionError(f"family {fam.name} is not valid", bad)
    M_, D = act.acting, act.carrier
    V = M_.category
    mem = fam.members
    obs = D.objects
    hom = {(a, b): mem[a].right.ob(b) for a, b in itertools.product(obs, repeat=2)}
    comp = {}
    for a, b, c in itertools.product(obs, repeat=3):
        x, y = hom[(b, c)], hom[(a, b)]
        g = D.compose(mem[b].counit[c], act.sm(V.id(x), mem[a].counit[b]), act.chi[(x, y, a)])
        comp[(a, b, c)] = transpose(mem[a], M_.t(x, y), g)
    ident = {a: transpose(mem[a], M_.unit, act.nu[a]) for a in obs}
    e = EnrichedCategory(nm, M_, obs, hom, comp, ident)
    bad = validate_enriched_category(e)
    if bad:
        raise InternalError(f"{nm}: induced enrichment breaks the enriched-category laws", bad)
    A0 = underlying_category(e)
    bad = validate_category(A0)
    if bad:
        raise InternalError(f"{nm}: underlying category is malformed", bad)
    cmp_mor = {
        (a, b, x): D.compose(transpose_inverse(mem[a], b, x), D.inverse(act.nu[a]))
        for a, b, x in A0.morphisms
    }
    comparison = FinFunctor(f"{nm}₀≅{D.name}", A0, D, {a: a for a in obs}, cmp_mor)
    if not is_isomorphism(comparison):
        raise InternalError(
            f"{nm}: underlying category is not isomorphic to {D.name}",
            [Finding("enriched.underlying_iso", (nm,), "comparison functor is not invertible")],
        )
    R = build_parameterized_adjoint(fam)
    moved = _transported_hom(e, comparison)
    diffs = [m for m in moved.source.morphisms if moved.mor(m) != R.mor(m)]
    diffs += [o for o in moved.source.objects if moved.ob(o) != R.ob(o)]
    if diffs:
        raise InternalError(
            f"{nm}: enriched hom-functor differs from the parameterized adjoint",
            [Finding("enriched.hom_functor", (d,), "value differs") for d in diffs],
        )
    return ActionEnrichment(e, R, comparison, fam)


def change_of_base(e: EnrichedCategory, f: MonoidalFunctorData, name: str | None = None) -> EnrichedCategory:
    """Transport along a lax monoidal functor: ``hom' = F hom``, ``M' = F M ∘ φ``, ``j' = F j ∘ φ₀``."""
    if f.source.category != e.base.category:
        raise PreconditionError(f"{f.name} does not start at the base of {e.name}")
    F, W = f.functor, f.target.category
    hom = {k: F.ob(v) for k, v in e.hom.items()}
    comp = {
        (a, b, c): W.compose(F.mor(m), f.phi[(e.hom[(b, c)], e.hom[(a, b)])])
        for (a, b, c), m in e.comp.items()
    }
    ident = {a: W.compose(F.mor(m), f.phi0) for a, m in e.ident.items()}
    return EnrichedCategory(name or f"{f.name}_*{e.name}", f.target, e.objects, hom, comp, ident)


def opposite_enriched(e: EnrichedCategory, name: str | None = None) -> EnrichedCategory:
    """``hom'(a,b) = hom(b,a)`` with composition twisted by the symmetry."""
    m = e.base
    if m.symmetry is None:
        raise MissingSymmetry(f"{m.name} has no symmetry, so {e.name} has no opposite")
    V = m.category
    hom = {(a, b): e.hom[(b, a)] for a, b in e.hom}
    comp = {
        (a, b, c): V.compose(e.comp[(c, b, a)], m.symmetry[(e.hom[(c, b)], e.hom[(b, a)])])
        for a, b, c in e.comp
    }
    return EnrichedCategory(name or f"{e.name}^op", m, e.objects, hom, comp, dict(e.ident))


FIBRED, OPFIBRED, SYMMETRIC = "fibred", "opfibred", "symmetric"


@dataclass(eq=False)
class EnrichedFibrationData:
    """``total_iso: total₀ ≅ A`` and ``base_iso: base₀ ≅ X`` realize the enrichments of ``p``."""

    name: str
    t: MonoidalFibrationData
    p: FibrationBundle
    total: EnrichedCategory
    base: EnrichedCategory
    total_iso: FinFunctor
    base_iso: FinFunctor
    mode: str = FIBRED
    padj: ParameterizedSquare | None = None


def _iso_findings(label: str, e: EnrichedCategory, iso: FinFunctor, C: FinCategory) -> list[Finding]:
    if tuple(e.objects) != C.objects:
        return [Finding("enriched_fibration.objects", (label,), f"enrichment objects differ from {C.name}")]
    if iso.target != C or iso.source != underlying_category(e):
        return [Finding("enriched_fibration.iso", (label,), "comparison does not go from the underlying category")]
    if not is_isomorphism(iso) or any(iso.ob(a) != a for a in C.objects):
        return [Finding("enriched_fibration.iso", (label,), "comparison is not an identity-on-objects isomorphism")]
    return []


def validate_enriched_fibration(d: EnrichedFibrationData, require_partial_cartesian: bool = False) -> list[Finding]:
    T, P = d.t.T, d.p.p
    out = validate_enriched_category(d.total) + validate_enriched_category(d.base)
    if out:
        return out
    if d.total.base.category != T.source or d.base.base.category != T.target:
        return [Finding("malformed.reference", (d.name,), "enrichments are not over the monoidal fibration")]
    out = _iso_findings("total", d.total, d.total_iso, P.source) + _iso_findings("base", d.base, d.base_iso, P.target)
    if out:
        return out
    HA = _transported_hom(d.total, d.total_iso)
    HX = _transported_hom(d.base, d.base_iso)
    cell = SquareCell(f"{d.name}.hom", HA, HX, functor_product(opposite_functor(P), P), T)
    for f in validate_square_cell(cell):
        out.append(Finding("enriched_fibration.hom_square", tuple(f.witness), f.detail))
    if out:
        return out
    A = P.source
    for a, b, c in itertools.product(A.objects, repeat=3):
        if T.mor(d.total.comp[(a, b, c)]) != d.base.comp[(P.ob(a), P.ob(b), P.ob(c))]:
            out.append(Finding("enriched_fibration.composition", (a, b, c), "T(M) ≠ M at the image"))
    for a in A.objects:
        if T.mor(d.total.ident[a]) != d.base.ident[P.ob(a)]:
            out.append(Finding("enriched_fibration.identities", (a,), "T(j) ≠ j at the image"))
    if d.mode == SYMMETRIC:
        s, sw = d.t.total.symmetry, d.t.base.symmetry
        if s is None or sw is None:
            out.append(Finding("enriched_fibration.symmetry", (d.t.name,), "monoidal opfibration carries no symmetry"))
        else:
            for x, y in itertools.product(T.source.objects, repeat=2):
                if T.mor(s[(x, y)]) != sw[(T.ob(x), T.ob(y))]:
                    out.append(Finding("enriched_fibration.symmetry", (x, y), "T(s) ≠ s at the image"))
    if require_partial_cartesian:
        test = lifting_test(d.p.direction)
        for a in A.objects:
            for g in A.morphisms:
                if test(P, g) and not test(T, HA.mor((A.id(a), g))):
                    out.append(Finding("enriched_fibration.partial_cartesian", (a, g), "hom(a,-) loses the lifting"))
    return out


def enrich_fibration_from_action(
    r: TRepresentationData,
    total_family: PartialAdjointFamily | None = None,
    base_family: PartialAdjointFamily | None = None,
    name: str | None = None,
) -> EnrichedFibrationData:
    """Enrich ``P`` in ``T`` from a representation whose two actions have a parameterized adjoint square.

    Validation of the result is the content of the construction; any failure
    raises :class:`InternalError`.
    """
    nm = name or f"enr[{r.name}]"
    bad = validate_T_representation(r)
    if bad:
        raise PreconditionError(f"{r.name} is not a valid representation", bad)
    star, diamond = r.total_action, r.base_action
    total_family = total_family or family_by_search(f"{nm}.R", star.star)
    base_family = base_family or family_by_search(f"{nm}.S", diamond.star)
    T, P = r.t.T, r.p.p
    padj = build_parameterized_adjoint_square(total_family, base_family, T, P, P)
    top = enrich_from_action(star, total_family, f"{nm}.total")
    bottom = enrich_from_action(diamond, base_family, f"{nm}.base")
    mode = FIBRED if r.direction == FIBRATION else OPFIBRED
    d = EnrichedFibrationData(
        nm, r.t, r.p, top.enriched, bottom.enriched, top.comparison, bottom.comparison, mode, padj
    )
    bad = validate_enriched_fibration(d)
    if bad:
        raise InternalError(f"{nm}: constructed data is not an enriched fibration", bad)
    return d


def enrich_opfibration_from_action(
    r: TRepresentationData,
    total_family: PartialAdjointFamily | None = None,
    base_family: PartialAdjointFamily | None = None,
    name: str | None = None,
    symmetric_mode: bool = False,
) -> EnrichedFibrationData:
    """Opfibration case; with ``symmetric_mode`` the result enriches the fibration ``P`` whose opposite is ``r.p``.

    In symmetric mode both enrichments are replaced by their opposites, which
    needs a symmetry on both levels of ``T``.
    """
    if r.direction != OPFIBRATION:
        raise PreconditionError(f"{r.name} does not act on an opfibration")
    if symmetric_mode and (r.t.total.symmetry is None or r.t.base.symmetry is None):
        raise MissingSymmetry(
            f"{r.t.name} is not symmetric",
            [Finding("enriched_fibration.symmetry", (r.t.name,), "symmetry required to enrich the opposite fibration")],
        )
    d = enrich_fibration_from_action(r, total_family, base_family, name)
    if not symmetric_mode:
        return d
    total = opposite_enriched(d.total)
    base = opposite_enriched(d.base)
    bundle = dualize(r.p)
    A, X = bundle.total, bundle.base
    total_iso = _opposite_comparison(total, d.total_iso, A)
    base_iso = _opposite_comparison(base, d.base_iso, X)
    out = EnrichedFibrationData(f"{d.name}^op", r.t, bundle, total, base, total_iso, base_iso, SYMMETRIC, d.padj)
    bad = validate_enriched_fibration(out)
    if bad:
        raise InternalError(f"{out.name}: opposite enrichment is not an enriched fibration", bad)
    return out


def _opposite_comparison(e_op: EnrichedCategory, iso: FinFunctor, C: FinCategory) -> FinFunctor:
    """``(a, b, x) ↦ iso(b, a, x)``, read as a morphism of the opposite category ``C``."""
    U = underlying_category(e_op)
    return FinFunctor(
        f"{e_op.name}₀≅{C.name}",
        U,
        C,
        {a: a for a in U.objects},
        {(a, b, x): iso.mor((b, a, x)) for a, b, x in U.morphisms},
    )


EQUAL, ISOMORPHIC = "equal", "isomorphic"


def as_enriched_functor(d: EnrichedFibrationData) -> tuple[list[Finding], str | None]:
    """Read ``P`` as a ``W``-functor from the change-of-base image of the total enrichment.

    Returns the findings and whether the underlying functor coincides with
    ``p`` (``"equal"``) or is only naturally isomorphic to it.
    """
    T, P = d.t.T, d.p.p
    TA = change_of_base(d.total, derived_strict_functor(d.t))
    out: list[Finding] = []
    A = P.source
    for a, b in itertools.product(A.objects, repeat=2):
        if TA.hom[(a, b)] != d.base.hom[(P.ob(a), P.ob(b))]:
            out.append(Finding("enriched_functor.fully_faithful", (a, b), "T hom(a,b) ≠ hom(Pa,Pb)"))
    if out:
        return out, None
    for a, b, c in itertools.product(A.objects, repeat=3):
        if TA.comp[(a, b, c)] != d.base.comp[(P.ob(a), P.ob(b), P.ob(c))]:
            out.append(Finding("enriched_functor.composition", (a, b, c), "identity hom-maps do not respect M"))
    for a in A.objects:
        if TA.ident[a] != d.base.ident[P.ob(a)]:
            out.append(Finding("enriched_functor.identities", (a,), "identity hom-maps do not respect j"))
    if out:
        return out, None
    A0 = d.total_iso.source
    X0 = d.base_iso.source
    P0 = FinFunctor(
        f"{P.name}₀",
        A0,
        X0,
        {a: P.ob(a) for a in A0.objects},
        {(a, b, x): (P.ob(a), P.ob(b), T.mor(x)) for a, b, x in A0.morphisms},
    )
    bad = validate_functor(P0)
    if bad:
        return [Finding("enriched_functor.underlying", (f.law,) + tuple(f.witness), f.detail) for f in bad], None
    lhs = compose_functors(d.base_iso, P0)
    rhs = compose_functors(P, d.total_iso)
    if lhs == rhs:
        return [], EQUAL
    if find_natural_iso(lhs, rhs) is None:
        return [Finding("enriched_functor.underlying", (P.name,), "underlying functor is not isomorphic to p")], None
    moved = compose_functors(lhs, inverse_functor(d.total_iso))
    if isinstance(check_fibration(moved, d.p.direction), NotAFibration):
        return [Finding("enriched_functor.underlying", (P.name,), "underlying functor is not a fibration")], None
    return [], ISOMORPHIC


def self_enrich_closed_fibration(
    d: MonoidalFibrationData,
    total_hom: PartialAdjointFamily,
    base_hom: PartialAdjointFamily,
    name: str | None = None,
) -> EnrichedFibrationData:
    """Enrichment of a closed monoidal (op)fibration in itself through its regular representation."""
    bad = check_closed_fibration(d, total_hom, base_hom)
    if bad:
        raise PreconditionError(f"{d.name} is not a closed monoidal fibration", bad)
    r = regular_representation(d)
    return enrich_fibration_from_action(r, total_hom, base_hom, name or f"self[{d.name}]")
