"""Cartesian morphisms, cloven (op)fibrations, reindexing, the Grothendieck construction, and total adjoints."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .adjunctions import (
    Adjunction,
    SquareAdjunction,
    SquareCell,
    find_right_adjoint,
    transpose,
    validate_adjunction,
    validate_square_adjunction,
    validate_square_cell,
)
from .kernel import (
    DEFAULT_BUDGET,
    FinCategory,
    FinFunctor,
    Id,
    NatTransf,
    compose_functors,
    find_natural_iso,
    idkey,
    opposite_functor,
    sorted_ids,
    validate_functor,
    validate_nat_trans,
)
from .laws import Finding, InternalError, MalformedError, PreconditionError

FIBRATION = "fibration"
OPFIBRATION = "opfibration"


class Cartesianness(NamedTuple):
    ok: bool
    witness: tuple | None = None  # (g, θ) with zero or several factorizations
    candidates: tuple = ()

    def __bool__(self):
        return self.ok


def is_cartesian(p: FinFunctor, phi: Id) -> Cartesianness:
    """Decide whether ``phi`` is ``p``-cartesian by checking every factorization problem."""
    A, X = p.source, p.target
    a, b = A.dom[phi], A.cod[phi]
    f = p.mor(phi)
    x = X.dom[f]
    for theta in A.into(b):
        a1 = A.dom[theta]
        pt = p.mor(theta)
        for g in X.hom(X.dom[pt], x):
            if X.compose(f, g) != pt:
                continue
            cands = tuple(
                psi for psi in A.hom(a1, a) if p.mor(psi) == g and A.compose(phi, psi) == theta
            )
            if len(cands) != 1:
                return Cartesianness(False, (g, theta), cands)
    return Cartesianness(True)


def is_cocartesian(p: FinFunctor, phi: Id) -> Cartesianness:
    """Dual of :func:`is_cartesian`: unique factorization of every ``θ`` out of ``dom phi``."""
    A, X = p.source, p.target
    a, b = A.dom[phi], A.cod[phi]
    f = p.mor(phi)
    y = X.cod[f]
    for theta in A.out_of(a):
        b1 = A.cod[theta]
        pt = p.mor(theta)
        for g in X.hom(y, X.cod[pt]):
            if X.compose(g, f) != pt:
                continue
            cands = tuple(
                psi for psi in A.hom(b, b1) if p.mor(psi) == g and A.compose(psi, phi) == theta
            )
            if len(cands) != 1:
                return Cartesianness(False, (g, theta), cands)
    return Cartesianness(True)


def lifting_test(direction: str):
    return is_cartesian if direction == FIBRATION else is_cocartesian


@dataclass(eq=False)
class FibrationBundle:
    """A cloven (op)fibration.

    For a fibration, ``cleavage[(f, B)]`` is a cartesian morphism with codomain
    ``B`` over ``f``; for an opfibration, ``cleavage[(g, C)]`` is cocartesian
    with domain ``C`` over ``g``.  ``lifts`` caches every (co)cartesian morphism.
    """

    p: FinFunctor
    cleavage: dict
    direction: str
    lifts: frozenset

    @property
    def name(self) -> str:
        return self.p.name

    @property
    def total(self) -> FinCategory:
        return self.p.source

    @property
    def base(self) -> FinCategory:
        return self.p.target

    def lift(self, f: Id, obj: Id) -> Id:
        try:
            return self.cleavage[(f, obj)]
        except KeyError:
            raise MalformedError(f"no chosen lifting of {idkey(obj)} along {idkey(f)} in {self.name}") from None

    def is_lifting(self, m: Id) -> bool:
        return m in self.lifts


@dataclass(frozen=True)
class NotAFibration:
    f: Id
    obj: Id
    direction: str

    def finding(self) -> Finding:
        return Finding("fibration.no_lift", (self.f, self.obj), f"no {'co' if self.direction == OPFIBRATION else ''}cartesian lifting")


def _required_pairs(p: FinFunctor, direction: str):
    A, X = p.source, p.target
    for f in X.morphisms:
        end = X.cod[f] if direction == FIBRATION else X.dom[f]
        for obj in A.objects:
            if p.ob(obj) == end:
                yield f, obj


def check_fibration(p: FinFunctor, direction: str = FIBRATION, jobs: int = 1) -> FibrationBundle | NotAFibration:
    """Return a cloven bundle choosing the least lifting by identifier, or the first pair with no lifting.

    The opfibration case is computed as the fibration case for ``p^op``.
    """
    if direction == OPFIBRATION:
        res = check_fibration(opposite_functor(p), FIBRATION, jobs)
        if isinstance(res, NotAFibration):
            return NotAFibration(res.f, res.obj, OPFIBRATION)
        return FibrationBundle(p, res.cleavage, OPFIBRATION, res.lifts)
    if direction != FIBRATION:
        raise MalformedError(f"unknown direction {direction!r}")
    A = p.source
    morphisms = list(A.morphisms)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(lambda m: is_cartesian(p, m).ok, morphisms))
    else:
        flags = [is_cartesian(p, m).ok for m in morphisms]
    lifts = frozenset(m for m, ok in zip(morphisms, flags) if ok)
    cleavage = {}
    for f, b in _required_pairs(p, FIBRATION):
        cands = [m for m in A.into(b) if m in lifts and p.mor(m) == f]
        if not cands:
            return NotAFibration(f, b, FIBRATION)
        cleavage[(f, b)] = sorted_ids(cands)[0]
    return FibrationBundle(p, cleavage, FIBRATION, lifts)


def require_bundle(p: FinFunctor, direction: str = FIBRATION) -> FibrationBundle:
    res = check_fibration(p, direction)
    if isinstance(res, NotAFibration):
        raise PreconditionError(f"{p.name} is not an {direction}", [res.finding()])
    return res


def validate_bundle(bundle: FibrationBundle) -> list[Finding]:
    p = bundle.p
    out = validate_functor(p)
    if out:
        return out
    test = lifting_test(bundle.direction)
    A = p.source
    for f, obj in _required_pairs(p, bundle.direction):
        m = bundle.cleavage.get((f, obj))
        if m is None:
            out.append(Finding("cleavage.missing", (f, obj), "no chosen lifting"))
            continue
        end = A.cod[m] if bundle.direction == FIBRATION else A.dom[m]
        if m not in A.dom or end != obj or p.mor(m) != f:
            out.append(Finding("cleavage.typing", (f, obj, m), "chosen lifting has the wrong endpoint or image"))
        elif not test(p, m):
            out.append(Finding("cleavage.cartesian", (f, obj, m), "chosen lifting is not universal"))
    return out


def fibre(p: FinFunctor, x: Id) -> FinCategory:
    A, X = p.source, p.target
    ix = X.id(x)
    objs = [a for a in A.objects if p.ob(a) == x]
    mors = {m: (A.dom[m], A.cod[m]) for m in A.morphisms if p.mor(m) == ix}
    comp = {(g, f): A.composition[(g, f)] for g in mors for f in mors if (g, f) in A.composition}
    return FinCategory(f"{p.name}[{idkey(x)}]", objs, mors, {a: A.identities[a] for a in objs}, comp)


def _factor_through_cartesian(p: FinFunctor, phi: Id, theta: Id, g: Id) -> Id:
    A = p.source
    cands = [psi for psi in A.hom(A.dom[theta], A.dom[phi]) if p.mor(psi) == g and A.compose(phi, psi) == theta]
    if len(cands) != 1:
        raise InternalError(f"factorization of {idkey(theta)} through {idkey(phi)} is not unique")
    return cands[0]


def _factor_through_cocartesian(p: FinFunctor, phi: Id, theta: Id, g: Id) -> Id:
    A = p.source
    cands = [psi for psi in A.hom(A.cod[phi], A.cod[theta]) if p.mor(psi) == g and A.compose(psi, phi) == theta]
    if len(cands) != 1:
        raise InternalError(f"factorization of {idkey(theta)} through {idkey(phi)} is not unique")
    return cands[0]


def reindexing_functor(bundle: FibrationBundle, f: Id) -> FinFunctor:
    """``f^*: A_Y → A_X`` for a fibration, ``f_!: C_X → C_Y`` for an opfibration."""
    p = bundle.p
    X = p.target
    A = p.source
    x, y = X.dom[f], X.cod[f]
    if bundle.direction == FIBRATION:
        src, tgt = fibre(p, y), fibre(p, x)
        obmap = {b: A.dom[bundle.lift(f, b)] for b in src.objects}
        mormap = {}
        for u in src.morphisms:
            b, b2 = A.dom[u], A.cod[u]
            theta = A.compose(u, bundle.lift(f, b))
            mormap[u] = _factor_through_cartesian(p, bundle.lift(f, b2), theta, X.id(x))
        name = f"{idkey(f)}^*"
    else:
        src, tgt = fibre(p, x), fibre(p, y)
        obmap = {c: A.cod[bundle.lift(f, c)] for c in src.objects}
        mormap = {}
        for u in src.morphisms:
            c, c2 = A.dom[u], A.cod[u]
            theta = A.compose(bundle.lift(f, c2), u)
            mormap[u] = _factor_through_cocartesian(p, bundle.lift(f, c), theta, X.id(y))
        name = f"{idkey(f)}_!"
    F = FinFunctor(f"{bundle.name}:{name}", src, tgt, obmap, mormap)
    bad = validate_functor(F)
    if bad:
        raise InternalError(f"reindexing along {idkey(f)} is not a functor", bad)
    return F


def reindexing_pseudofunctoriality(
    bundle: FibrationBundle, g: Id, f: Id, budget: int = DEFAULT_BUDGET
) -> NatTransf | None:
    """Search a natural isomorphism between reindexing along ``g∘f`` and the composite of the two reindexings."""
    X = bundle.base
    gf = X.compose(g, f)
    whole = reindexing_functor(bundle, gf)
    if bundle.direction == FIBRATION:
        parts = compose_functors(reindexing_functor(bundle, f), reindexing_functor(bundle, g))
    else:
        parts = compose_functors(reindexing_functor(bundle, g), reindexing_functor(bundle, f))
    return find_natural_iso(parts, whole, budget, name=f"coh[{idkey(g)},{idkey(f)}]")


def dualize(bundle: FibrationBundle) -> FibrationBundle:
    flipped = OPFIBRATION if bundle.direction == FIBRATION else FIBRATION
    return FibrationBundle(opposite_functor(bundle.p), bundle.cleavage, flipped, bundle.lifts)


def validate_fibred_2cell(alpha: NatTransf, beta: NatTransf, P: FinFunctor, Q: FinFunctor) -> list[Finding]:
    """``alpha: S ⇒ T`` over ``beta: F ⇒ G`` for squares ``(S,F)``, ``(T,G)`` from ``P`` to ``Q``."""
    out = validate_nat_trans(alpha) + validate_nat_trans(beta)
    for S, F in ((alpha.source, beta.source), (alpha.target, beta.target)):
        out += validate_square_cell(SquareCell("2-cell boundary", S, F, P, Q))
    if out:
        return out
    for a in P.source.objects:
        if Q.mor(alpha[a]) != beta[P.ob(a)]:
            out.append(Finding("fibred_2cell.above", (a,), f"Q(α) = {idkey(Q.mor(alpha[a]))} ≠ β = {idkey(beta[P.ob(a)])}"))
    return out


@dataclass(eq=False)
class IndexedPresentation:
    """Strict contravariant assignment: ``reindex[f]`` goes from the fibre over ``cod f`` to the fibre over ``dom f``."""

    name: str
    base: FinCategory
    fibres: dict
    reindex: dict


def constant_presentation(name: str, base: FinCategory, fib: FinCategory) -> IndexedPresentation:
    from .kernel import identity_functor

    ident = identity_functor(fib)
    return IndexedPresentation(name, base, {x: fib for x in base.objects}, {f: ident for f in base.morphisms})


def validate_presentation(ix: IndexedPresentation) -> list[Finding]:
    X = ix.base
    out = []
    for x in X.objects:
        if x not in ix.fibres:
            out.append(Finding("presentation.missing", (x,), "no fibre"))
    for f in X.morphisms:
        if f not in ix.reindex:
            out.append(Finding("presentation.missing", (f,), "no reindexing functor"))
    if out:
        return out
    for f in X.morphisms:
        F = ix.reindex[f]
        if F.source != ix.fibres[X.cod[f]] or F.target != ix.fibres[X.dom[f]]:
            out.append(Finding("presentation.typing", (f,), "reindexing functor between the wrong fibres"))
        else:
            out += validate_functor(F)
    if out:
        return out
    for x in X.objects:
        F = ix.reindex[X.id(x)]
        if any(F.ob(a) != a for a in F.source.objects) or any(F.mor(m) != m for m in F.source.morphisms):
            out.append(Finding("presentation.functoriality", (X.id(x),), "identity does not reindex to the identity"))
    for (g, f), gf in X.composition.items():
        composite = compose_functors(ix.reindex[f], ix.reindex[g])
        if composite.object_map != ix.reindex[gf].object_map or composite.morphism_map != ix.reindex[gf].morphism_map:
            out.append(Finding("presentation.functoriality", (g, f), "reindexing is not strictly functorial"))
    return out


def grothendieck(ix: IndexedPresentation) -> FibrationBundle:
    """Total category of pairs ``(x, a)``; canonical cleavage ``(f, id, b)``.

    A morphism ``(x, a) → (y, b)`` is ``(f, φ, b)`` with ``f: x → y`` and
    ``φ: a → f^*(b)``.  Keeping ``b`` in the identifier keeps morphisms apart
    when ``f^*`` identifies objects.
    """
    bad = validate_presentation(ix)
    if bad:
        raise PreconditionError(f"presentation {ix.name} is not strictly functorial", bad)
    X = ix.base
    objects = [(x, a) for x in X.objects for a in ix.fibres[x].objects]
    mors = {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        Fx, Ff = ix.fibres[x], ix.reindex[f]
        for b in ix.fibres[y].objects:
            for phi in Fx.into(Ff.ob(b)):
                mors[(f, phi, b)] = ((x, Fx.dom[phi]), (y, b))
    ids = {(x, a): (X.id(x), ix.fibres[x].id(a), a) for x, a in objects}
    comp = {}
    for (f, phi, b) in mors:
        for (g, psi, c) in mors:
            if mors[(g, psi, c)][0] != mors[(f, phi, b)][1]:
                continue
            Fx = ix.fibres[X.dom[f]]
            comp[((g, psi, c), (f, phi, b))] = (X.compose(g, f), Fx.compose(ix.reindex[f].mor(psi), phi), c)
    total = FinCategory(f"∫{ix.name}", objects, mors, ids, comp)
    p = FinFunctor(f"∫{ix.name}→{X.name}", total, X, {o: o[0] for o in objects}, {m: m[0] for m in mors})
    cleavage = {}
    for f in X.morphisms:
        y = X.cod[f]
        for b in ix.fibres[y].objects:
            fb = ix.reindex[f].ob(b)
            cleavage[(f, (y, b))] = (f, ix.fibres[X.dom[f]].id(fb), b)
    lifts = frozenset(m for m in total.morphisms if is_cartesian(p, m))
    bundle = FibrationBundle(p, cleavage, FIBRATION, lifts)
    bad = validate_bundle(bundle)
    if bad:
        raise InternalError("canonical cleavage of the Grothendieck construction is not cartesian", bad)
    return bundle


def fibre_restriction(K: FinFunctor, U: FinFunctor, V: FinFunctor, F: FinFunctor, x: Id) -> FinFunctor:
    """``K_x: C_x → D_{Fx}`` for a commuting square ``V∘K = F∘U``."""
    src, tgt = fibre(U, x), fibre(V, F.ob(x))
    return FinFunctor(
        f"{K.name}_{idkey(x)}",
        src,
        tgt,
        {a: K.ob(a) for a in src.objects},
        {m: K.mor(m) for m in src.morphisms},
    )


def fibrewise_left(cell: SquareCell, target: FibrationBundle, base_adj: Adjunction, y: Id) -> FinFunctor:
    """``(ε_y)_! ∘ K_{Gy}: C_{Gy} → D_y``."""
    K, U, V, F = cell.top, cell.left, cell.right, cell.bottom
    gy = base_adj.right.ob(y)
    restricted = fibre_restriction(K, U, V, F, gy)
    return compose_functors(reindexing_functor(target, base_adj.counit[y]), restricted, name=f"L[{idkey(y)}]")


def build_total_right_adjoint(
    cell: SquareCell,
    source: FibrationBundle,
    target: FibrationBundle,
    base_adj: Adjunction,
    fibrewise: Mapping[Id, Adjunction] | None = None,
    name: str | None = None,
) -> SquareAdjunction:
    """Right adjoint ``R`` of the top functor ``K`` of an opfibred 1-cell ``(K, F)`` with ``F ⊣ G``.

    ``R(d) = R_y(d)`` for ``d`` over ``y``, using the fibrewise right adjoints
    ``R_y`` of ``(ε_y)_! ∘ K_{Gy}`` (found by search when not supplied).  On a
    morphism ``u: d → d'`` over ``v: y → y'``, ``R(u)`` is the transpose of the
    vertical factorization of ``u ∘ ξ_d`` through the cocartesian composite,
    precomposed with the chosen cocartesian lifting of ``R_y d`` along ``G v``.
    """
    K, U, V, F = cell.top, cell.left, cell.right, cell.bottom
    if source.direction != OPFIBRATION or target.direction != OPFIBRATION:
        raise PreconditionError("total adjoint needs opfibrations on both sides")
    if U != source.p or V != target.p or F != base_adj.left:
        raise PreconditionError("square legs do not match the opfibrations and base adjunction")
    pre = validate_square_cell(cell, "cocartesian-top") + validate_adjunction(base_adj)
    pre += validate_bundle(source) + validate_bundle(target)
    if pre:
        raise PreconditionError("total adjoint hypotheses fail", pre)
    C, D, Y = K.source, K.target, V.target
    G, eps, eta = base_adj.right, base_adj.counit, base_adj.unit
    fib: dict = {}
    for y in Y.objects:
        L = fibrewise_left(cell, target, base_adj, y)
        adj = (fibrewise or {}).get(y)
        if adj is None:
            adj = find_right_adjoint(L, f"fibrewise[{idkey(y)}]")
            if adj is None:
                raise PreconditionError(
                    f"fibrewise functor over {idkey(y)} has no right adjoint",
                    [Finding("total_adjoint.fibrewise", (y,), "missing fibrewise right adjoint")],
                )
        elif adj.left != L:
            raise PreconditionError(
                f"fibrewise adjunction over {idkey(y)} has the wrong left adjoint",
                [Finding("total_adjoint.fibrewise", (y,), "left adjoint is not (ε_y)_! ∘ K_Gy")],
            )
        else:
            bad = validate_adjunction(adj)
            if bad:
                raise PreconditionError(f"fibrewise adjunction over {idkey(y)} is not valid", bad)
        fib[y] = adj

    def counit_at(d):
        y = V.ob(d)
        rd = fib[y].right.ob(d)
        return D.compose(fib[y].counit[d], target.lift(eps[y], K.ob(rd)))

    R_ob = {d: fib[V.ob(d)].right.ob(d) for d in D.objects}
    R_mor = {}
    for u in D.morphisms:
        d = D.dom[u]
        v = V.mor(u)
        y2 = Y.cod[v]
        c1 = source.lift(G.mor(v), R_ob[d])
        e = C.cod[c1]
        lifted = D.compose(target.lift(eps[y2], K.ob(e)), K.mor(c1))
        theta = D.compose(u, counit_at(d))
        psi = _factor_through_cocartesian(V, lifted, theta, Y.id(y2))
        R_mor[u] = C.compose(transpose(fib[y2], e, psi), c1)
    R = FinFunctor(f"R[{K.name}]", D, C, R_ob, R_mor)
    unit = {}
    for c in C.objects:
        x = U.ob(c)
        c1 = source.lift(eta[x], c)
        e = C.cod[c1]
        lifted = D.compose(target.lift(eps[F.ob(x)], K.ob(e)), K.mor(c1))
        psi = _factor_through_cocartesian(V, lifted, D.id(K.ob(c)), Y.id(F.ob(x)))
        unit[c] = C.compose(transpose(fib[F.ob(x)], e, psi), c1)
    counit = {d: counit_at(d) for d in D.objects}
    total = Adjunction(f"{K.name}⊣{R.name}", K, R, unit, counit)
    result = SquareAdjunction(name or f"total[{K.name}]", total, base_adj, U, V)
    bad = validate_functor(R) + validate_square_adjunction(result)
    if bad:
        raise InternalError("assembled total right adjoint fails the adjunction laws", bad)
    return result
