"""Adjunctions given by unit/counit data, parameterized adjoints, and adjunctions of squares."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .kernel import (
    DEFAULT_BUDGET,
    FinCategory,
    FinFunctor,
    Id,
    NatTransf,
    check_budget,
    compose_functors,
    factors_of,
    functor_product,
    identity_functor,
    idkey,
    opposite,
    opposite_functor,
    partial_left,
    product,
    validate_functor,
    validate_nat_trans,
)
from .laws import Finding, InternalError, MalformedError, PreconditionError


@dataclass(eq=False)
class Adjunction:
    """``left ⊣ right`` with ``unit[a]: a → right(left(a))`` and ``counit[c]: left(right(c)) → c``."""

    name: str
    left: FinFunctor
    right: FinFunctor
    unit: dict
    counit: dict

    def unit_transformation(self) -> NatTransf:
        A = self.left.source
        return NatTransf(
            f"η[{self.name}]",
            identity_functor(A),
            compose_functors(self.right, self.left),
            self.unit,
        )

    def counit_transformation(self) -> NatTransf:
        C = self.left.target
        return NatTransf(
            f"ε[{self.name}]",
            compose_functors(self.left, self.right),
            identity_functor(C),
            self.counit,
        )


def validate_adjunction(adj: Adjunction) -> list[Finding]:
    F, G = adj.left, adj.right
    if F.source != G.target or F.target != G.source:
        return [Finding("adjunction.types", (F.name, G.name), "left and right functors are not opposed")]
    out = validate_functor(F) + validate_functor(G)
    if out:
        return out
    out += validate_nat_trans(adj.unit_transformation())
    out += validate_nat_trans(adj.counit_transformation())
    if out:
        return out
    A, C = F.source, F.target
    for a in A.objects:
        lhs = C.compose(adj.counit[F.ob(a)], F.mor(adj.unit[a]))
        if lhs != C.id(F.ob(a)):
            out.append(Finding("adjunction.triangle_left", (a,), f"ε_F∘Fη = {idkey(lhs)}"))
    for c in C.objects:
        lhs = A.compose(G.mor(adj.counit[c]), adj.unit[G.ob(c)])
        if lhs != A.id(G.ob(c)):
            out.append(Finding("adjunction.triangle_right", (c,), f"Gε∘η_G = {idkey(lhs)}"))
    return out


def transpose(adj: Adjunction, x: Id, g: Id) -> Id:
    """Send ``g: F x → y`` to its adjunct ``G g ∘ η_x: x → G y``."""
    C, A = adj.left.target, adj.left.source
    if C.dom.get(g) != adj.left.ob(x):
        raise MalformedError(f"{idkey(g)} does not start at {idkey(adj.left.ob(x))}")
    return A.compose(adj.right.mor(g), adj.unit[x])


def transpose_inverse(adj: Adjunction, y: Id, k: Id) -> Id:
    """Send ``k: x → G y`` to ``ε_y ∘ F k: F x → y``."""
    C, A = adj.left.target, adj.left.source
    if A.cod.get(k) != adj.right.ob(y):
        raise MalformedError(f"{idkey(k)} does not end at {idkey(adj.right.ob(y))}")
    return C.compose(adj.counit[y], adj.left.mor(k))


def find_right_adjoint(L: FinFunctor, name: str | None = None) -> Adjunction | None:
    """Right adjoint of ``L`` by universal arrows, or None when some comma category lacks a terminal object.

    For each ``d`` the lexicographically least terminal ``(c, e: L c → d)`` is
    chosen, so the result is deterministic.
    """
    A, C = L.source, L.target
    right_ob: dict = {}
    counit: dict = {}
    for d in C.objects:
        arrows = [(c, e) for c in A.objects for e in C.hom(L.ob(c), d)]
        found = None
        for c, e in arrows:
            if all(
                len([k for k in A.hom(c2, c) if C.compose(e, L.mor(k)) == e2]) == 1
                for c2, e2 in arrows
            ):
                found = (c, e)
                break
        if found is None:
            return None
        right_ob[d], counit[d] = found

    def factor(c2, e2, d):
        ks = [k for k in A.hom(c2, right_ob[d]) if C.compose(counit[d], L.mor(k)) == e2]
        return ks[0]

    right_mor = {
        u: factor(right_ob[C.dom[u]], C.compose(u, counit[C.dom[u]]), C.cod[u]) for u in C.morphisms
    }
    unit = {a: factor(a, C.id(L.ob(a)), L.ob(a)) for a in A.objects}
    nm = name or f"{L.name}⊣R"
    R = FinFunctor(f"R[{nm}]", C, A, right_ob, right_mor)
    return Adjunction(nm, L, R, unit, counit)


@dataclass(eq=False)
class PartialAdjointFamily:
    """A functor of two variables ``F: A×B → C`` with ``F(-,b) ⊣ G_b`` for every ``b``."""

    name: str
    bifunctor: FinFunctor
    members: dict

    @property
    def parameter_category(self) -> FinCategory:
        return factors_of(self.bifunctor)[1]


def validate_family(fam: PartialAdjointFamily) -> list[Finding]:
    try:
        A, B = factors_of(fam.bifunctor)
    except MalformedError as exc:
        return [Finding("family.not_bifunctor", (fam.bifunctor.name,), str(exc))]
    out = validate_functor(fam.bifunctor)
    if out:
        return out
    for b in B.objects:
        adj = fam.members.get(b)
        if adj is None:
            out.append(Finding("family.missing_member", (b,), "no adjunction for this parameter"))
            continue
        if adj.left != partial_left(fam.bifunctor, b):
            out.append(Finding("family.partial_mismatch", (b,), "member left adjoint differs from F(-,b)"))
            continue
        out += validate_adjunction(adj)
    return out


def family_by_search(name: str, bifunctor: FinFunctor) -> PartialAdjointFamily:
    """Family whose members are found by :func:`find_right_adjoint`."""
    _, B = factors_of(bifunctor)
    members = {}
    for b in B.objects:
        adj = find_right_adjoint(partial_left(bifunctor, b), f"{name}[{idkey(b)}]")
        if adj is None:
            raise PreconditionError(f"{bifunctor.name}(-,{idkey(b)}) has no right adjoint")
        adj.right = adj.right.renamed(f"{name}[{idkey(b)}].R")
        members[b] = adj
    return PartialAdjointFamily(name, bifunctor, members)


def build_parameterized_adjoint(fam: PartialAdjointFamily, name: str | None = None) -> FinFunctor:
    """The functor ``G: B^op×C → A`` with ``G(b, c) = G_b(c)``, natural in all three variables.

    For ``(h, k): (b', c) → (b, c')`` with ``h: b → b'`` in ``B``, ``G(h, k)``
    is the adjunct under member ``b`` of ``k ∘ ε'_c ∘ F(1, h)``, where ``ε'`` is
    the counit of member ``b'``.
    """
    findings = validate_family(fam)
    if findings:
        raise PreconditionError(f"family {fam.name} is not valid", findings)
    F = fam.bifunctor
    A, B = factors_of(F)
    C = F.target
    src = product(opposite(B), C)
    obmap = {(b, c): fam.members[b].right.ob(c) for b, c in src.objects}
    mormap = {}
    for h, k in src.morphisms:
        b, b2 = B.dom[h], B.cod[h]
        c = C.dom[k]
        x = fam.members[b2].right.ob(c)
        inner = C.compose(k, fam.members[b2].counit[c], F.mor((A.id(x), h)))
        mormap[(h, k)] = transpose(fam.members[b], x, inner)
    G = FinFunctor(name or f"padj[{fam.name}]", src, A, obmap, mormap)
    bad = validate_functor(G)
    if bad:
        raise InternalError(f"parameterized adjoint of {fam.name} is not a functor", bad)
    return G


def check_parameterized_naturality(fam: PartialAdjointFamily, G: FinFunctor) -> list[Finding]:
    """The transpose bijection ``C(F(a,b), c) ≅ A(a, G(b,c))`` is bijective and natural in ``a``, ``b``, ``c``."""
    F = fam.bifunctor
    A, B = factors_of(F)
    C = F.target
    out: list[Finding] = []
    for a in A.objects:
        for b in B.objects:
            adj = fam.members[b]
            for c in C.objects:
                lhs = C.hom(F.ob((a, b)), c)
                images = [transpose(adj, a, g) for g in lhs]
                if sorted(map(idkey, images)) != sorted(map(idkey, A.hom(a, G.ob((b, c))))):
                    out.append(Finding("padj.bijection", (a, b, c), "transpose is not a bijection of hom-sets"))
    # joint naturality: for u: a'→a, (h,k): (b',c)→(b,c') and g: F(a,b') → c
    for u in A.morphisms:
        a2, a = A.dom[u], A.cod[u]
        for h, k in G.source.morphisms:
            b, b2 = B.dom[h], B.cod[h]
            c = C.dom[k]
            for g in C.hom(F.ob((a, b2)), c):
                lhs = transpose(fam.members[b], a2, C.compose(k, g, F.mor((u, h))))
                rhs = A.compose(G.mor((h, k)), transpose(fam.members[b2], a, g), u)
                if lhs != rhs:
                    out.append(Finding("padj.naturality", (u, h, k, g), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    return out


def check_parameterized_uniqueness(
    fam: PartialAdjointFamily, G: FinFunctor, budget: int = DEFAULT_BUDGET
) -> list[Finding]:
    """Every morphism of ``B^op×C`` admits exactly one image making the bijection natural.

    Enumerates all candidate images in the relevant hom-set of ``A``; a
    bifunctor agreeing with ``G`` on objects and natural in all variables has to
    pick that candidate, so it equals ``G``.
    """
    F = fam.bifunctor
    A, B = factors_of(F)
    C = F.target
    for cat in (A, B, C):
        over = check_budget(cat, budget, "uniqueness of the parameterized adjoint")
        if over:
            return [over]
    out: list[Finding] = []
    for h, k in G.source.morphisms:
        b, b2 = B.dom[h], B.cod[h]
        c = C.dom[k]
        good = []
        for cand in A.hom(G.ob((b2, c)), G.ob((b, C.cod[k]))):
            ok = True
            for a in A.objects:
                for g in C.hom(F.ob((a, b2)), c):
                    lhs = transpose(fam.members[b], a, C.compose(k, g, F.mor((A.id(a), h))))
                    rhs = A.compose(cand, transpose(fam.members[b2], a, g))
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                good.append(cand)
        if good != [G.mor((h, k))]:
            out.append(Finding("padj.uniqueness", (h, k), f"admissible images {[idkey(x) for x in good]}"))
    return out


@dataclass(eq=False)
class SquareCell:
    """``right ∘ top = bottom ∘ left``."""

    name: str
    top: FinFunctor
    bottom: FinFunctor
    left: FinFunctor
    right: FinFunctor


def validate_square_cell(s: SquareCell, mode: str = "plain") -> list[Finding]:
    """Commutativity, plus preservation of (co)cartesian morphisms by ``top`` in the matching mode."""
    from .fibrations import is_cartesian, is_cocartesian

    if mode not in ("plain", "cartesian-top", "cocartesian-top"):
        raise MalformedError(f"unknown square mode {mode!r}")
    if (
        s.top.source != s.left.source
        or s.top.target != s.right.source
        or s.bottom.source != s.left.target
        or s.bottom.target != s.right.target
    ):
        return [Finding("malformed.reference", (s.name,), "square functors do not fit together")]
    out = []
    for fn in (s.top, s.bottom, s.left, s.right):
        out += validate_functor(fn)
    if out:
        return out
    for a in s.top.source.objects:
        if s.right.ob(s.top.ob(a)) != s.bottom.ob(s.left.ob(a)):
            out.append(Finding("square.commutes", (a,), "square does not commute on this object"))
    for m in s.top.source.morphisms:
        if s.right.mor(s.top.mor(m)) != s.bottom.mor(s.left.mor(m)):
            out.append(Finding("square.commutes", (m,), "square does not commute on this morphism"))
    if out or mode == "plain":
        return out
    test, law = (is_cartesian, "square.cartesian") if mode == "cartesian-top" else (
        is_cocartesian,
        "square.cocartesian",
    )
    for m in s.top.source.morphisms:
        if test(s.left, m) and not test(s.right, s.top.mor(m)):
            out.append(Finding(law, (m, s.top.mor(m)), "lifting not preserved by the top functor"))
    return out


@dataclass(eq=False)
class SquareAdjunction:
    """``(L,F) ⊣ (R,G)`` between ``P: A → X`` and ``Q: B → Y``."""

    name: str
    total: Adjunction
    base: Adjunction
    P: FinFunctor
    Q: FinFunctor

    def left_square(self) -> SquareCell:
        return SquareCell(f"{self.name}.left", self.total.left, self.base.left, self.P, self.Q)

    def right_square(self) -> SquareCell:
        return SquareCell(f"{self.name}.right", self.total.right, self.base.right, self.Q, self.P)


def validate_square_adjunction(sa: SquareAdjunction) -> list[Finding]:
    out = validate_adjunction(sa.total) + validate_adjunction(sa.base)
    if out:
        return out
    out += validate_square_cell(sa.left_square()) + validate_square_cell(sa.right_square())
    if out:
        return out
    X = sa.P.target
    Y = sa.Q.target
    for a in sa.P.source.objects:
        if sa.P.mor(sa.total.unit[a]) != sa.base.unit[sa.P.ob(a)]:
            out.append(Finding("square_adjunction.unit_above", (a,), f"P(ζ) ≠ η in {X.name}"))
    for b in sa.Q.source.objects:
        if sa.Q.mor(sa.total.counit[b]) != sa.base.counit[sa.Q.ob(b)]:
            out.append(Finding("square_adjunction.counit_above", (b,), f"Q(ξ) ≠ ε in {Y.name}"))
    return out


def adjoint_liftings_report(sa: SquareAdjunction) -> list[Finding]:
    """Right adjoint preserves cartesian morphisms; left adjoint preserves cocartesian ones."""
    from .fibrations import is_cartesian, is_cocartesian

    out = []
    R, L = sa.total.right, sa.total.left
    for m in R.source.morphisms:
        if is_cartesian(sa.Q, m) and not is_cartesian(sa.P, R.mor(m)):
            out.append(Finding("adjoint_liftings.right_adjoint_cartesian", (m, R.mor(m)), "cartesian image lost"))
    for m in L.source.morphisms:
        if is_cocartesian(sa.P, m) and not is_cocartesian(sa.Q, L.mor(m)):
            out.append(Finding("adjoint_liftings.left_adjoint_cocartesian", (m, L.mor(m)), "cocartesian image lost"))
    return out


@dataclass(eq=False)
class ParameterizedSquare:
    """Output of :func:`build_parameterized_adjoint_square`: the commuting square ``H∘R = S∘(J^op×K)``."""

    cell: SquareCell
    member_squares: dict = field(default_factory=dict)


def parameterized_square_findings(
    top: PartialAdjointFamily,
    bottom: PartialAdjointFamily,
    H: FinFunctor,
    J: FinFunctor,
    K: FinFunctor,
) -> tuple[list[Finding], dict]:
    """Hypotheses for the two-variable square: families valid, ``K∘F = G∘(H×J)``, and maps of adjunctions."""
    out = validate_family(top) + validate_family(bottom)
    if out:
        return out, {}
    cell = SquareCell("F-square", top.bifunctor, bottom.bifunctor, functor_product(H, J), K)
    out = validate_square_cell(cell)
    if out:
        return out, {}
    squares = {}
    for b in factors_of(top.bifunctor)[1].objects:
        sa = SquareAdjunction(f"{top.name}[{idkey(b)}]", top.members[b], bottom.members[J.ob(b)], H, K)
        squares[b] = sa
        out += validate_square_adjunction(sa)
    return out, squares


def build_parameterized_adjoint_square(
    top: PartialAdjointFamily,
    bottom: PartialAdjointFamily,
    H: FinFunctor,
    J: FinFunctor,
    K: FinFunctor,
) -> ParameterizedSquare:
    """Given ``K∘F = G∘(H×J)`` with matching partial adjunctions, build ``(R, S)`` with ``H∘R = S∘(J^op×K)``."""
    findings, squares = parameterized_square_findings(top, bottom, H, J, K)
    if findings:
        raise PreconditionError("hypotheses of the parameterized adjoint square fail", findings)
    R = build_parameterized_adjoint(top)
    S = build_parameterized_adjoint(bottom)
    cell = SquareCell(f"padj[{top.name},{bottom.name}]", R, S, functor_product(opposite_functor(J), K), H)
    bad = validate_square_cell(cell)
    if bad:
        raise InternalError("parameterized adjoints do not form a commuting square", bad)
    return ParameterizedSquare(cell, squares)


def thin_adjunction(name: str, left: FinFunctor, right: FinFunctor) -> Adjunction:
    """Unit and counit are forced when both categories are thin."""
    A, C = left.source, left.target
    unit, counit = {}, {}
    for a in A.objects:
        hs = A.hom(a, right.ob(left.ob(a)))
        if not hs:
            raise PreconditionError(f"{name}: no unit component at {idkey(a)}")
        unit[a] = hs[0]
    for c in C.objects:
        hs = C.hom(left.ob(right.ob(c)), c)
        if not hs:
            raise PreconditionError(f"{name}: no counit component at {idkey(c)}")
        counit[c] = hs[0]
    return Adjunction(name, left, right, unit, counit)


def family_from_rights(name: str, bifunctor: FinFunctor, rights: Mapping[Id, FinFunctor]) -> PartialAdjointFamily:
    """Family over thin categories from given right adjoints ``G_b``."""
    members = {
        b: thin_adjunction(f"{name}[{idkey(b)}]", partial_left(bifunctor, b), G) for b, G in rights.items()
    }
    return PartialAdjointFamily(name, bifunctor, members)
