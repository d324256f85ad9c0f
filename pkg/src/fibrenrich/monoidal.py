"""Monoidal categories, monoidal functors and fibrations, actions, and representations of monoidal fibrations.

Coherence is checked by enumerating every object tuple; no coherence theorem
is used to skip instances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .adjunctions import (
    PartialAdjointFamily,
    SquareCell,
    build_parameterized_adjoint,
    validate_family,
    validate_square_adjunction,
    SquareAdjunction,
    validate_square_cell,
)
from .fibrations import FIBRATION, FibrationBundle, lifting_test, validate_bundle
from .kernel import (
    FinCategory,
    FinFunctor,
    Id,
    functor_product,
    idkey,
    opposite_functor,
    product,
    thin_functor,
    validate_functor,
)
from .laws import Finding, MalformedError


@dataclass(eq=False)
class MonoidalStructure:
    """``associator[(x,y,z)]: (x⊗y)⊗z → x⊗(y⊗z)``, ``left_unitor[x]: I⊗x → x``, ``right_unitor[x]: x⊗I → x``."""

    name: str
    category: FinCategory
    tensor: FinFunctor
    unit: Id
    associator: dict
    left_unitor: dict
    right_unitor: dict
    symmetry: dict | None = None

    def t(self, x: Id, y: Id) -> Id:
        return self.tensor.ob((x, y))

    def tm(self, f: Id, g: Id) -> Id:
        return self.tensor.mor((f, g))


def _component_check(out, law_prefix, comps, key, dom, cod, V: FinCategory):
    m = comps.get(key)
    if m is None:
        out.append(Finding(f"{law_prefix}.missing_component", (key,), "missing component"))
        return False
    if m not in V.dom:
        out.append(Finding("malformed.reference", (key, m), "component is not a morphism"))
        return False
    if V.dom[m] != dom or V.cod[m] != cod:
        out.append(Finding(f"{law_prefix}.typing", (key, m), f"component must go {idkey(dom)} → {idkey(cod)}"))
        return False
    if not V.is_iso(m):
        out.append(Finding(f"{law_prefix}.iso", (key, m), "component is not invertible"))
        return False
    return True


def validate_monoidal(m: MonoidalStructure) -> list[Finding]:
    V = m.category
    if m.tensor.source != product(V, V) or m.tensor.target != V or m.unit not in V.identities:
        return [Finding("monoidal.types", (m.name,), "tensor must be V×V → V and the unit an object of V")]
    out = validate_functor(m.tensor)
    if out:
        return out
    I, t = m.unit, m.t
    obs = V.objects
    for x, y, z in itertools.product(obs, repeat=3):
        _component_check(out, "monoidal", m.associator, (x, y, z), t(t(x, y), z), t(x, t(y, z)), V)
    for x in obs:
        _component_check(out, "monoidal", m.left_unitor, x, t(I, x), x, V)
        _component_check(out, "monoidal", m.right_unitor, x, t(x, I), x, V)
    if m.symmetry is not None:
        for x, y in itertools.product(obs, repeat=2):
            _component_check(out, "monoidal", m.symmetry, (x, y), t(x, y), t(y, x), V)
    if out:
        return out
    a, l, r, tm = m.associator, m.left_unitor, m.right_unitor, m.tm
    c = V.compose
    mors = V.morphisms
    for f, g, h in itertools.product(mors, repeat=3):
        s = (V.dom[f], V.dom[g], V.dom[h])
        e = (V.cod[f], V.cod[g], V.cod[h])
        if c(a[e], tm(tm(f, g), h)) != c(tm(f, tm(g, h)), a[s]):
            out.append(Finding("monoidal.naturality", ("associator", f, g, h), "associator not natural"))
    for f in mors:
        x, y = V.dom[f], V.cod[f]
        if c(l[y], tm(V.id(I), f)) != c(f, l[x]):
            out.append(Finding("monoidal.naturality", ("left_unitor", f), "left unitor not natural"))
        if c(r[y], tm(f, V.id(I))) != c(f, r[x]):
            out.append(Finding("monoidal.naturality", ("right_unitor", f), "right unitor not natural"))
    ident = V.id
    for w, x, y, z in itertools.product(obs, repeat=4):
        lhs = c(a[(w, x, t(y, z))], a[(t(w, x), y, z)])
        rhs = c(tm(ident(w), a[(x, y, z)]), a[(w, t(x, y), z)], tm(a[(w, x, y)], ident(z)))
        if lhs != rhs:
            out.append(Finding("monoidal.pentagon", (w, x, y, z), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    for x, y in itertools.product(obs, repeat=2):
        if c(tm(ident(x), l[y]), a[(x, I, y)]) != tm(r[x], ident(y)):
            out.append(Finding("monoidal.triangle", (x, y), "triangle does not commute"))
    if m.symmetry is not None:
        s = m.symmetry
        for f, g in itertools.product(mors, repeat=2):
            if c(s[(V.cod[f], V.cod[g])], tm(f, g)) != c(tm(g, f), s[(V.dom[f], V.dom[g])]):
                out.append(Finding("monoidal.naturality", ("symmetry", f, g), "symmetry not natural"))
        for x, y in itertools.product(obs, repeat=2):
            if c(s[(y, x)], s[(x, y)]) != ident(t(x, y)):
                out.append(Finding("monoidal.symmetry_involution", (x, y), "s∘s ≠ 1"))
        for x, y, z in itertools.product(obs, repeat=3):
            lhs = c(a[(y, z, x)], s[(x, t(y, z))], a[(x, y, z)])
            rhs = c(tm(ident(y), s[(x, z)]), a[(y, x, z)], tm(s[(x, y)], ident(z)))
            if lhs != rhs:
                out.append(Finding("monoidal.hexagon", (x, y, z), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    return out


def thin_monoidal(
    name: str,
    V: FinCategory,
    op: Callable[[Id, Id], Id],
    unit: Id,
    symmetric: bool = True,
) -> MonoidalStructure:
    """Monoidal structure on a thin category from an object-level operation; all constraints are forced."""
    VV = product(V, V)
    tensor = thin_functor(f"⊗[{name}]", VV, V, {(x, y): op(x, y) for x, y in VV.objects})

    def only(a, b):
        hs = V.hom(a, b)
        if not hs:
            raise MalformedError(f"{name}: no morphism {idkey(a)} → {idkey(b)}")
        return hs[0]

    obs = V.objects
    t = lambda x, y: tensor.ob((x, y))  # noqa: E731
    assoc = {(x, y, z): only(t(t(x, y), z), t(x, t(y, z))) for x, y, z in itertools.product(obs, repeat=3)}
    left = {x: only(t(unit, x), x) for x in obs}
    right = {x: only(t(x, unit), x) for x in obs}
    sym = {(x, y): only(t(x, y), t(y, x)) for x, y in itertools.product(obs, repeat=2)} if symmetric else None
    return MonoidalStructure(name, V, tensor, unit, assoc, left, right, sym)


def product_monoidal(name: str, m1: MonoidalStructure, m2: MonoidalStructure) -> MonoidalStructure:
    """Componentwise structure on ``V1×V2``."""
    V = product(m1.category, m2.category)
    VV = product(V, V)
    tensor = FinFunctor(
        f"⊗[{name}]",
        VV,
        V,
        {((x1, x2), (y1, y2)): (m1.t(x1, y1), m2.t(x2, y2)) for (x1, x2), (y1, y2) in VV.objects},
        {((f1, f2), (g1, g2)): (m1.tm(f1, g1), m2.tm(f2, g2)) for (f1, f2), (g1, g2) in VV.morphisms},
    )
    obs = V.objects
    assoc = {
        (x, y, z): (m1.associator[(x[0], y[0], z[0])], m2.associator[(x[1], y[1], z[1])])
        for x, y, z in itertools.product(obs, repeat=3)
    }
    left = {x: (m1.left_unitor[x[0]], m2.left_unitor[x[1]]) for x in obs}
    right = {x: (m1.right_unitor[x[0]], m2.right_unitor[x[1]]) for x in obs}
    sym = None
    if m1.symmetry is not None and m2.symmetry is not None:
        sym = {(x, y): (m1.symmetry[(x[0], y[0])], m2.symmetry[(x[1], y[1])]) for x, y in itertools.product(obs, repeat=2)}
    return MonoidalStructure(name, V, tensor, (m1.unit, m2.unit), assoc, left, right, sym)


LAX, STRONG, STRICT = "lax", "strong", "strict"


@dataclass(eq=False)
class MonoidalFunctorData:
    """``phi[(x,y)]: Fx⊗Fy → F(x⊗y)`` and ``phi0: I → F I``."""

    name: str
    functor: FinFunctor
    source: MonoidalStructure
    target: MonoidalStructure
    phi: dict
    phi0: Id
    flavor: str = LAX


def validate_monoidal_functor(d: MonoidalFunctorData) -> list[Finding]:
    F, S, T = d.functor, d.source, d.target
    V, W = S.category, T.category
    if F.source != V or F.target != W:
        return [Finding("malformed.reference", (d.name,), "functor does not go between the monoidal categories")]
    out = validate_functor(F)
    if out:
        return out
    c = W.compose
    for x, y in itertools.product(V.objects, repeat=2):
        m = d.phi.get((x, y))
        if m is None or m not in W.dom or W.dom[m] != T.t(F.ob(x), F.ob(y)) or W.cod[m] != F.ob(S.t(x, y)):
            out.append(Finding("monoidal_functor.typing", (x, y), "φ component missing or mistyped"))
    if d.phi0 not in W.dom or W.dom[d.phi0] != T.unit or W.cod[d.phi0] != F.ob(S.unit):
        out.append(Finding("monoidal_functor.typing", ("φ0",), "φ0 must go I → F I"))
    if out:
        return out
    phi = d.phi
    for f, g in itertools.product(V.morphisms, repeat=2):
        lhs = c(F.mor(S.tm(f, g)), phi[(V.dom[f], V.dom[g])])
        rhs = c(phi[(V.cod[f], V.cod[g])], T.tm(F.mor(f), F.mor(g)))
        if lhs != rhs:
            out.append(Finding("monoidal_functor.naturality", (f, g), "φ not natural"))
    for x, y, z in itertools.product(V.objects, repeat=3):
        fx, fy, fz = F.ob(x), F.ob(y), F.ob(z)
        lhs = c(F.mor(S.associator[(x, y, z)]), phi[(S.t(x, y), z)], T.tm(phi[(x, y)], W.id(fz)))
        rhs = c(phi[(x, S.t(y, z))], T.tm(W.id(fx), phi[(y, z)]), T.associator[(fx, fy, fz)])
        if lhs != rhs:
            out.append(Finding("monoidal_functor.associativity", (x, y, z), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    for x in V.objects:
        fx = F.ob(x)
        if c(F.mor(S.left_unitor[x]), phi[(S.unit, x)], T.tm(d.phi0, W.id(fx))) != T.left_unitor[fx]:
            out.append(Finding("monoidal_functor.unitality", ("left", x), "left unit axiom fails"))
        if c(F.mor(S.right_unitor[x]), phi[(x, S.unit)], T.tm(W.id(fx), d.phi0)) != T.right_unitor[fx]:
            out.append(Finding("monoidal_functor.unitality", ("right", x), "right unit axiom fails"))
    comps = list(phi.items()) + [("φ0", d.phi0)]
    if d.flavor == STRONG:
        for k, m in comps:
            if not W.is_iso(m):
                out.append(Finding("monoidal_functor.flavor", (k, m), "claimed strong but component is not invertible"))
    elif d.flavor == STRICT:
        for k, m in comps:
            if not W.is_identity(m):
                out.append(Finding("monoidal_functor.flavor", (k, m), "claimed strict but component is not an identity"))
    elif d.flavor != LAX:
        raise MalformedError(f"unknown flavor {d.flavor!r}")
    return out


def identity_structure(name: str, F: FinFunctor, S: MonoidalStructure, T: MonoidalStructure, flavor=STRICT) -> MonoidalFunctorData:
    """Strength made of identities; only well-typed when ``F`` preserves ⊗ and I on the nose."""
    W = T.category
    phi = {(x, y): W.id(F.ob(S.t(x, y))) for x, y in itertools.product(S.category.objects, repeat=2)}
    return MonoidalFunctorData(name, F, S, T, phi, W.id(F.ob(S.unit)), flavor)


def compose_monoidal_functors(G: MonoidalFunctorData, F: MonoidalFunctorData, name: str | None = None) -> MonoidalFunctorData:
    from .kernel import compose_functors

    U = G.target.category
    phi = {
        (x, y): U.compose(G.functor.mor(F.phi[(x, y)]), G.phi[(F.functor.ob(x), F.functor.ob(y))])
        for (x, y) in F.phi
    }
    phi0 = U.compose(G.functor.mor(F.phi0), G.phi0)
    flavor = F.flavor if F.flavor == G.flavor else (STRONG if {F.flavor, G.flavor} <= {STRONG, STRICT} else LAX)
    return MonoidalFunctorData(name or f"{G.name}∘{F.name}", compose_functors(G.functor, F.functor), F.source, G.target, phi, phi0, flavor)


@dataclass(eq=False)
class MonoidalFibrationData:
    name: str
    bundle: FibrationBundle
    total: MonoidalStructure
    base: MonoidalStructure

    @property
    def T(self) -> FinFunctor:
        return self.bundle.p


def derived_strict_functor(d: MonoidalFibrationData) -> MonoidalFunctorData:
    return identity_structure(f"{d.name}.strict", d.T, d.total, d.base, STRICT)


def check_monoidal_fibration(d: MonoidalFibrationData) -> list[Finding]:
    T, Vm, Wm = d.T, d.total, d.base
    if T.source != Vm.category or T.target != Wm.category:
        return [Finding("malformed.reference", (d.name,), "monoidal structures are not on the total and base categories")]
    out = validate_bundle(d.bundle)
    if out:
        return out
    for f in validate_monoidal(Vm) + validate_monoidal(Wm):
        out.append(Finding("monoidal_fibration.monoidal", (f.law,) + tuple(f.witness), f.detail))
    if out:
        return out
    V = Vm.category
    for x, y in itertools.product(V.objects, repeat=2):
        if T.ob(Vm.t(x, y)) != Wm.t(T.ob(x), T.ob(y)):
            out.append(Finding("monoidal_fibration.strict", ("tensor", x, y), "T(x⊗y) ≠ Tx⊗Ty"))
    for f, g in itertools.product(V.morphisms, repeat=2):
        if T.mor(Vm.tm(f, g)) != Wm.tm(T.mor(f), T.mor(g)):
            out.append(Finding("monoidal_fibration.strict", ("tensor", f, g), "T(f⊗g) ≠ Tf⊗Tg"))
    if T.ob(Vm.unit) != Wm.unit:
        out.append(Finding("monoidal_fibration.strict", ("unit",), "T(I) ≠ I"))
    if out:
        return out
    for x, y, z in itertools.product(V.objects, repeat=3):
        if T.mor(Vm.associator[(x, y, z)]) != Wm.associator[(T.ob(x), T.ob(y), T.ob(z))]:
            out.append(Finding("monoidal_fibration.strict", ("associator", x, y, z), "T(a) ≠ a"))
    for x in V.objects:
        if T.mor(Vm.left_unitor[x]) != Wm.left_unitor[T.ob(x)]:
            out.append(Finding("monoidal_fibration.strict", ("left_unitor", x), "T(ℓ) ≠ ℓ"))
        if T.mor(Vm.right_unitor[x]) != Wm.right_unitor[T.ob(x)]:
            out.append(Finding("monoidal_fibration.strict", ("right_unitor", x), "T(r) ≠ r"))
    test = lifting_test(d.bundle.direction)
    TT = functor_product(T, T)
    for m in TT.source.morphisms:
        if test(TT, m) and not test(T, Vm.tensor.mor(m)):
            out.append(Finding("monoidal_fibration.tensor_cartesian", (m, Vm.tensor.mor(m)), "⊗ does not preserve the lifting"))
    return out


@dataclass(eq=False)
class ActionStructure:
    """``chi[(x,y,d)]: (x⊗y)*d → x*(y*d)`` and ``nu[d]: I*d → d``."""

    name: str
    acting: MonoidalStructure
    carrier: FinCategory
    star: FinFunctor
    chi: dict
    nu: dict

    def s(self, x: Id, d: Id) -> Id:
        return self.star.ob((x, d))

    def sm(self, f: Id, g: Id) -> Id:
        return self.star.mor((f, g))


def regular_action(m: MonoidalStructure, name: str | None = None) -> ActionStructure:
    return ActionStructure(name or f"reg[{m.name}]", m, m.category, m.tensor, dict(m.associator), dict(m.left_unitor))


def validate_action(act: ActionStructure) -> list[Finding]:
    M, D = act.acting, act.carrier
    V = M.category
    if act.star.source != product(V, D) or act.star.target != D:
        return [Finding("action.types", (act.name,), "action functor must be V×D → D")]
    out = validate_functor(act.star)
    if out:
        return out
    s, sm, I, c = act.s, act.sm, M.unit, D.compose
    for x, y, d in itertools.product(V.objects, V.objects, D.objects):
        _component_check(out, "action", act.chi, (x, y, d), s(M.t(x, y), d), s(x, s(y, d)), D)
    for d in D.objects:
        _component_check(out, "action", act.nu, d, s(I, d), d, D)
    if out:
        return out
    chi, nu = act.chi, act.nu
    for f, g, h in itertools.product(V.morphisms, V.morphisms, D.morphisms):
        src = (V.dom[f], V.dom[g], D.dom[h])
        tgt = (V.cod[f], V.cod[g], D.cod[h])
        if c(chi[tgt], sm(M.tm(f, g), h)) != c(sm(f, sm(g, h)), chi[src]):
            out.append(Finding("action.naturality", ("chi", f, g, h), "χ not natural"))
    for h in D.morphisms:
        if c(nu[D.cod[h]], sm(V.id(I), h)) != c(h, nu[D.dom[h]]):
            out.append(Finding("action.naturality", ("nu", h), "ν not natural"))
    iv, idd = V.id, D.id
    for x, y, z, d in itertools.product(V.objects, V.objects, V.objects, D.objects):
        lhs = c(chi[(x, y, s(z, d))], chi[(M.t(x, y), z, d)])
        rhs = c(sm(iv(x), chi[(y, z, d)]), chi[(x, M.t(y, z), d)], sm(M.associator[(x, y, z)], idd(d)))
        if lhs != rhs:
            out.append(Finding("action.associativity", (x, y, z, d), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    for x, d in itertools.product(V.objects, D.objects):
        if c(nu[s(x, d)], chi[(I, x, d)]) != sm(M.left_unitor[x], idd(d)):
            out.append(Finding("action.unit_left", (x, d), "ν∘χ ≠ ℓ*1"))
        if c(sm(iv(x), nu[d]), chi[(x, I, d)]) != sm(M.right_unitor[x], idd(d)):
            out.append(Finding("action.unit_right", (x, d), "(1*ν)∘χ ≠ r*1"))
    return out


def check_closed_fibration(
    d: MonoidalFibrationData,
    total_hom: PartialAdjointFamily | None,
    base_hom: PartialAdjointFamily | None,
) -> list[Finding]:
    """Both levels closed, ``T`` strict closed, and ``T`` carries units and counits of the hom adjunctions."""
    out: list[Finding] = []
    for label, fam in (("total", total_hom), ("base", base_hom)):
        if fam is None:
            out.append(Finding("closed.missing_family", (label,), "no internal-hom family given"))
    if out:
        return out
    assert total_hom is not None and base_hom is not None
    out = check_monoidal_fibration(d)
    if out:
        return out
    for label, fam, m in (("total", total_hom, d.total), ("base", base_hom, d.base)):
        if fam.bifunctor != m.tensor:
            out.append(Finding("closed.closed", (label,), "family is not indexed over the tensor"))
            continue
        for f in validate_family(fam):
            out.append(Finding("closed.closed", (label, f.law) + tuple(f.witness), f.detail))
    if out:
        return out
    T = d.T
    R = build_parameterized_adjoint(total_hom)
    S = build_parameterized_adjoint(base_hom)
    sq = SquareCell("closed", R, S, functor_product(opposite_functor(T), T), T)
    for f in validate_square_cell(sq):
        out.append(Finding("closed.strict_closed", tuple(f.witness), "T[x,y] ≠ [Tx,Ty]"))
    for x in d.total.category.objects:
        sa = SquareAdjunction(f"closed[{idkey(x)}]", total_hom.members[x], base_hom.members[T.ob(x)], T, T)
        for f in validate_square_adjunction(sa):
            out.append(Finding("closed.unit_counit", (x, f.law) + tuple(f.witness), f.detail))
    return out


@dataclass(eq=False)
class TRepresentationData:
    name: str
    t: MonoidalFibrationData
    p: FibrationBundle
    total_action: ActionStructure
    base_action: ActionStructure
    require_cartesian: bool = True

    @property
    def direction(self) -> str:
        return self.p.direction


def validate_T_representation(r: TRepresentationData) -> list[Finding]:
    T, P = r.t.T, r.p.p
    star, diamond = r.total_action, r.base_action
    if (
        star.acting is not r.t.total and star.acting.category != T.source
    ) or star.carrier != P.source or diamond.carrier != P.target or diamond.acting.category != T.target:
        return [Finding("malformed.reference", (r.name,), "actions do not match the fibrations")]
    if r.t.bundle.direction != r.p.direction:
        return [Finding("malformed.reference", (r.name,), "monoidal fibration and fibration have different directions")]
    out = []
    for f in validate_action(star) + validate_action(diamond) + check_monoidal_fibration(r.t) + validate_bundle(r.p):
        out.append(Finding("representation.actions", (f.law,) + tuple(f.witness), f.detail))
    if out:
        return out
    cell = SquareCell(r.name, star.star, diamond.star, functor_product(T, P), P)
    mode = "cartesian-top" if r.direction == FIBRATION else "cocartesian-top"
    for f in validate_square_cell(cell, mode if r.require_cartesian else "plain"):
        law = "representation.square" if f.law == "square.commutes" else "representation.cartesian"
        out.append(Finding(law, tuple(f.witness), f.detail))
    if out:
        return out
    V, A = T.source, P.source
    for x, y, a in itertools.product(V.objects, V.objects, A.objects):
        if P.mor(star.chi[(x, y, a)]) != diamond.chi[(T.ob(x), T.ob(y), P.ob(a))]:
            out.append(Finding("representation.chi", (x, y, a), "P(χ) ≠ χ at the image"))
    for a in A.objects:
        if P.mor(star.nu[a]) != diamond.nu[P.ob(a)]:
            out.append(Finding("representation.nu", (a,), "P(ν) ≠ ν at the image"))
        if P.ob(star.s(r.t.total.unit, a)) != diamond.s(r.t.base.unit, P.ob(a)):
            out.append(Finding("representation.square", ("unit", a), "P(I*a) ≠ I⋄Pa"))
    return out


def regular_representation(d: MonoidalFibrationData, name: str | None = None) -> TRepresentationData:
    return TRepresentationData(
        name or f"reg[{d.name}]", d, d.bundle, regular_action(d.total), regular_action(d.base)
    )


def heyting_implication(V: FinCategory, meet: Mapping[tuple, Id]) -> Callable[[Id, Id], Id]:
    """``x ⇒ y`` as the greatest ``z`` with ``z∧x ≤ y`` in a finite thin lattice."""

    def imp(x, y):
        cands = [z for z in V.objects if V.hom(meet[(z, x)], y)]
        tops = [z for z in cands if all(V.hom(w, z) for w in cands)]
        if len(tops) != 1:
            raise MalformedError(f"no implication {idkey(x)} ⇒ {idkey(y)} in {V.name}")
        return tops[0]

    return imp


def thin_action(name: str, m: MonoidalStructure, D: FinCategory, op: Callable[[Id, Id], Id]) -> ActionStructure:
    """Action on a thin category from an object-level operation; χ and ν are forced."""
    V = m.category
    VD = product(V, D)
    star = thin_functor(f"*[{name}]", VD, D, {(x, d): op(x, d) for x, d in VD.objects})

    def only(a, b):
        hs = D.hom(a, b)
        if not hs:
            raise MalformedError(f"{name}: no morphism {idkey(a)} → {idkey(b)}")
        return hs[0]

    s = lambda x, d: star.ob((x, d))  # noqa: E731
    chi = {
        (x, y, d): only(s(m.t(x, y), d), s(x, s(y, d)))
        for x, y, d in itertools.product(V.objects, V.objects, D.objects)
    }
    nu = {d: only(s(m.unit, d), d) for d in D.objects}
    return ActionStructure(name, m, D, star, chi, nu)
