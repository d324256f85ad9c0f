"""Finite categories, functors and natural transformations.

Categories are stored as total composition tables, so every equation is
decided by lookup.  Identifiers are strings or (nested) tuples of identifiers;
products use tuples.  All enumerations run in :func:`idkey` order.
"""
from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Iterator, Mapping, Union

from .laws import BudgetExceeded, Finding, MalformedError, MissingMorphism

Id = Union[str, tuple]

DEFAULT_BUDGET = 60


def idkey(x: Hashable) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(idkey(c) for c in x) + ")"
    return str(x)


def sorted_ids(xs: Iterable) -> list:
    return sorted(xs, key=idkey)


class FinCategory:
    """A finite category given by its full composition table.

    ``morphisms`` maps each morphism identifier to ``(dom, cod)``;
    ``composition`` maps ``(g, f)`` to ``g∘f`` for every composable pair.
    Nothing is validated here: use :func:`validate_category`.
    """

    def __init__(
        self,
        name: str,
        objects: Iterable[Id],
        morphisms: Mapping[Id, tuple[Id, Id]],
        identities: Mapping[Id, Id],
        composition: Mapping[tuple[Id, Id], Id],
        factors: tuple[FinCategory, ...] | None = None,
    ):
        self.name = name
        self.objects = tuple(sorted_ids(set(objects)))
        self.morphisms = tuple(sorted_ids(morphisms))
        self.dom = {m: dc[0] for m, dc in morphisms.items()}
        self.cod = {m: dc[1] for m, dc in morphisms.items()}
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.factors = tuple(factors) if factors else None
        self._op: FinCategory | None = None
        self._op_of: FinCategory | None = None
        hom: dict[tuple, list] = {}
        into: dict[Id, list] = {}
        out: dict[Id, list] = {}
        for m in self.morphisms:
            hom.setdefault((self.dom[m], self.cod[m]), []).append(m)
            into.setdefault(self.cod[m], []).append(m)
            out.setdefault(self.dom[m], []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._into = {k: tuple(v) for k, v in into.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._key = None

    @classmethod
    def build(
        cls,
        name: str,
        objects: Iterable[Id],
        morphisms: Iterable[tuple[Id, Id, Id]],
        composition: Iterable[tuple[Id, Id, Id]] = (),
        identities: Mapping[Id, Id] | None = None,
    ) -> FinCategory:
        """Build from non-identity morphisms and composition triples ``(g, f, g∘f)``.

        Identities default to ``id_<object>``; every entry that involves an
        identity is filled in automatically.
        """
        objects = list(objects)
        ids = {a: f"id_{idkey(a)}" for a in objects}
        if identities:
            ids.update(identities)
        mors = {i: (a, a) for a, i in ids.items()}
        for m, d, c in morphisms:
            mors[m] = (d, c)
        comp = {(g, f): gf for g, f, gf in composition}
        for m, (d, c) in mors.items():
            if d in ids:
                comp.setdefault((m, ids[d]), m)
            if c in ids:
                comp.setdefault((ids[c], m), m)
        return cls(name, objects, mors, ids, comp)

    # structure
    def id(self, a: Id) -> Id:
        try:
            return self.identities[a]
        except KeyError:
            raise MalformedError(f"unknown object {idkey(a)} in {self.name}") from None

    def compose(self, *ms: Id) -> Id:
        """``compose(h, g, f) = h∘g∘f``."""
        result = ms[-1]
        for g in reversed(ms[:-1]):
            try:
                result = self.composition[(g, result)]
            except KeyError:
                raise MalformedError(
                    f"{idkey(g)} ∘ {idkey(result)} undefined in {self.name}"
                ) from None
        return result

    def hom(self, a: Id, b: Id) -> tuple:
        return self._hom.get((a, b), ())

    def into(self, b: Id) -> tuple:
        return self._into.get(b, ())

    def out_of(self, a: Id) -> tuple:
        return self._out.get(a, ())

    def composable_pairs(self) -> Iterator[tuple[Id, Id]]:
        for f in self.morphisms:
            for g in self.out_of(self.cod[f]):
                yield g, f

    def is_identity(self, m: Id) -> bool:
        return self.identities.get(self.dom.get(m)) == m

    def inverse(self, m: Id) -> Id | None:
        a, b = self.dom[m], self.cod[m]
        for g in self.hom(b, a):
            if self.composition.get((g, m)) == self.identities[a] and self.composition.get(
                (m, g)
            ) == self.identities[b]:
                return g
        return None

    def is_iso(self, m: Id) -> bool:
        return self.inverse(m) is not None

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._hom.values())

    def key(self):
        if self._key is None:
            self._key = (
                self.objects,
                tuple((m, self.dom[m], self.cod[m]) for m in self.morphisms),
                tuple(sorted(self.identities.items(), key=idkey)),
                tuple(sorted(self.composition.items(), key=idkey)),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def renamed(self, name: str) -> FinCategory:
        c = FinCategory(
            name,
            self.objects,
            {m: (self.dom[m], self.cod[m]) for m in self.morphisms},
            self.identities,
            self.composition,
            self.factors,
        )
        c._op_of = self._op_of
        return c


def _witness_report(findings: list, law: str, witness: tuple, detail: str):
    findings.append(Finding(law, witness, detail))


def validate_category(c: FinCategory) -> list[Finding]:
    """Every violated category law with a witnessing tuple."""
    out: list[Finding] = []
    objs = set(c.objects)
    mors = set(c.morphisms)
    for m in c.morphisms:
        if c.dom[m] not in objs or c.cod[m] not in objs:
            _witness_report(out, "malformed.reference", (m,), "morphism endpoint is not an object")
    for a in c.objects:
        i = c.identities.get(a)
        if i is None or i not in mors:
            _witness_report(out, "malformed.reference", (a,), "missing identity")
    for (g, f), gf in c.composition.items():
        if g not in mors or f not in mors or gf not in mors:
            _witness_report(out, "malformed.reference", (g, f, gf), "composition entry names an unknown morphism")
    if out:
        return out
    for (g, f) in c.composition:
        if c.cod[f] != c.dom[g]:
            _witness_report(out, "category.typing", (g, f), "composition entry for a non-composable pair")
    for g, f in c.composable_pairs():
        if (g, f) not in c.composition:
            _witness_report(out, "category.totality", (g, f), "composable pair has no composite")
    if out:
        return out
    for a in c.objects:
        i = c.identities[a]
        if c.dom[i] != a or c.cod[i] != a:
            _witness_report(out, "category.identity_type", (a, i), "identity is not an endomorphism of its object")
    for m in c.morphisms:
        if c.composition.get((m, c.identities[c.dom[m]])) != m:
            _witness_report(out, "category.identity_law", (m, c.identities[c.dom[m]]), "g∘id ≠ g")
        if c.composition.get((c.identities[c.cod[m]], m)) != m:
            _witness_report(out, "category.identity_law", (c.identities[c.cod[m]], m), "id∘g ≠ g")
    for (g, f), gf in c.composition.items():
        if c.dom[gf] != c.dom[f] or c.cod[gf] != c.cod[g]:
            _witness_report(out, "category.closure", (g, f, gf), "composite has the wrong domain or codomain")
    if out:
        return out
    for g, f in c.composable_pairs():
        for h in c.out_of(c.cod[g]):
            left = c.composition[(h, c.composition[(g, f)])]
            right = c.composition[(c.composition[(h, g)], f)]
            if left != right:
                _witness_report(out, "category.associativity", (h, g, f), f"{idkey(left)} ≠ {idkey(right)}")
    return out


def hom_set(c: FinCategory, a: Id, b: Id) -> tuple:
    if a not in c.identities or b not in c.identities:
        raise MalformedError(f"unknown object in hom_set({idkey(a)}, {idkey(b)}) of {c.name}")
    return c.hom(a, b)


def _op_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else name + "^op"


def opposite(c: FinCategory) -> FinCategory:
    if c._op_of is not None:
        return c._op_of
    if c._op is None:
        op = FinCategory(
            _op_name(c.name),
            c.objects,
            {m: (c.cod[m], c.dom[m]) for m in c.morphisms},
            c.identities,
            {(f, g): gf for (g, f), gf in c.composition.items()},
            tuple(opposite(x) for x in c.factors) if c.factors else None,
        )
        op._op_of = c
        c._op = op
    return c._op


def product(c: FinCategory, d: FinCategory, name: str | None = None) -> FinCategory:
    objects = [(a, b) for a in c.objects for b in d.objects]
    mors = {
        (f, g): ((c.dom[f], d.dom[g]), (c.cod[f], d.cod[g]))
        for f in c.morphisms
        for g in d.morphisms
    }
    ids = {(a, b): (c.identities[a], d.identities[b]) for a, b in objects}
    comp = {
        ((g1, g2), (f1, f2)): (c1, c2)
        for (g1, f1), c1 in c.composition.items()
        for (g2, f2), c2 in d.composition.items()
    }
    return FinCategory(name or f"{c.name}×{d.name}", objects, mors, ids, comp, (c, d))


def poset(name: str, elements: Iterable[str], order: Iterable[tuple[str, str]]) -> FinCategory:
    """Thin category of a finite preorder generated by ``order`` pairs ``x ≤ y``."""
    elements = list(elements)
    leq = {(x, x) for x in elements} | set(order)
    changed = True
    while changed:
        changed = False
        for (x, y), (y2, z) in itertools.product(list(leq), list(leq)):
            if y == y2 and (x, z) not in leq:
                leq.add((x, z))
                changed = True
    short = all(len(x) == 1 for x in elements)

    def name_of(x, y):
        if x == y:
            return f"id_{x}"
        return f"le{x}{y}" if short else f"le_{x}_{y}"

    mors = {name_of(x, y): (x, y) for x, y in leq}
    ids = {x: name_of(x, x) for x in elements}
    comp = {
        (name_of(y, z), name_of(x, y)): name_of(x, z)
        for (x, y) in leq
        for (y2, z) in leq
        if y == y2
    }
    return FinCategory(name, elements, mors, ids, comp)


class FinFunctor:
    def __init__(
        self,
        name: str,
        source: FinCategory,
        target: FinCategory,
        object_map: Mapping[Id, Id],
        morphism_map: Mapping[Id, Id],
    ):
        self.name = name
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)

    def ob(self, a: Id) -> Id:
        try:
            return self.object_map[a]
        except KeyError:
            raise MalformedError(f"{self.name} is undefined on object {idkey(a)}") from None

    def mor(self, m: Id) -> Id:
        try:
            return self.morphism_map[m]
        except KeyError:
            raise MalformedError(f"{self.name} is undefined on morphism {idkey(m)}") from None

    def key(self):
        return (
            self.source.key(),
            self.target.key(),
            tuple(sorted(self.object_map.items(), key=idkey)),
            tuple(sorted(self.morphism_map.items(), key=idkey)),
        )

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinFunctor({self.name!r}: {self.source.name} → {self.target.name})"

    def renamed(self, name: str) -> FinFunctor:
        return FinFunctor(name, self.source, self.target, self.object_map, self.morphism_map)


def validate_functor(F: FinFunctor) -> list[Finding]:
    out: list[Finding] = []
    A, B = F.source, F.target
    for a in A.objects:
        if a not in F.object_map:
            out.append(Finding("functor.missing", (a,), "object not mapped"))
        elif F.object_map[a] not in B.identities:
            out.append(Finding("malformed.reference", (a, F.object_map[a]), "image is not an object of the target"))
    for m in A.morphisms:
        if m not in F.morphism_map:
            out.append(Finding("functor.missing", (m,), "morphism not mapped"))
        elif F.morphism_map[m] not in B.dom:
            out.append(Finding("malformed.reference", (m, F.morphism_map[m]), "image is not a morphism of the target"))
    if out:
        return out
    for m in A.morphisms:
        fm = F.morphism_map[m]
        if B.dom[fm] != F.object_map[A.dom[m]] or B.cod[fm] != F.object_map[A.cod[m]]:
            out.append(Finding("functor.typing", (m, fm), "image does not go between the images of the endpoints"))
    if out:
        return out
    for a in A.objects:
        if F.morphism_map[A.identities[a]] != B.identities[F.object_map[a]]:
            out.append(Finding("functor.identity", (a,), "identity not preserved"))
    for (g, f), gf in A.composition.items():
        if F.morphism_map[gf] != B.compose(F.morphism_map[g], F.morphism_map[f]):
            out.append(Finding("functor.composition", (g, f), "composite not preserved"))
    return out


def identity_functor(c: FinCategory, name: str | None = None) -> FinFunctor:
    return FinFunctor(
        name or f"id_{c.name}", c, c, {a: a for a in c.objects}, {m: m for m in c.morphisms}
    )


def compose_functors(G: FinFunctor, F: FinFunctor, name: str | None = None) -> FinFunctor:
    """``G∘F``."""
    if F.target != G.source:
        raise MalformedError(f"cannot compose {G.name} after {F.name}: {F.target.name} ≠ {G.source.name}")
    return FinFunctor(
        name or f"{G.name}∘{F.name}",
        F.source,
        G.target,
        {a: G.object_map[b] for a, b in F.object_map.items()},
        {m: G.morphism_map[n] for m, n in F.morphism_map.items()},
    )


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(
        _op_name(F.name), opposite(F.source), opposite(F.target), F.object_map, F.morphism_map
    )


def functor_product(F: FinFunctor, G: FinFunctor, name: str | None = None) -> FinFunctor:
    src = product(F.source, G.source)
    tgt = product(F.target, G.target)
    return FinFunctor(
        name or f"{F.name}×{G.name}",
        src,
        tgt,
        {(a, b): (F.object_map[a], G.object_map[b]) for a, b in src.objects},
        {(f, g): (F.morphism_map[f], G.morphism_map[g]) for f, g in src.morphisms},
    )


def projection(c: FinCategory, index: int, name: str | None = None) -> FinFunctor:
    if not c.factors:
        raise MalformedError(f"{c.name} is not a product category")
    return FinFunctor(
        name or f"π{index + 1}",
        c,
        c.factors[index],
        {a: a[index] for a in c.objects},
        {m: m[index] for m in c.morphisms},
    )


def factors_of(F: FinFunctor) -> tuple[FinCategory, FinCategory]:
    if not F.source.factors or len(F.source.factors) != 2:
        raise MalformedError(f"{F.name} is not a functor of two variables")
    return F.source.factors  # type: ignore[return-value]


def partial_left(F: FinFunctor, b: Id) -> FinFunctor:
    """``F(-, b)`` for ``F: A×B → C``."""
    A, B = factors_of(F)
    ib = B.id(b)
    return FinFunctor(
        f"{F.name}(-,{idkey(b)})",
        A,
        F.target,
        {a: F.ob((a, b)) for a in A.objects},
        {f: F.mor((f, ib)) for f in A.morphisms},
    )


def partial_right(F: FinFunctor, a: Id) -> FinFunctor:
    """``F(a, -)`` for ``F: A×B → C``."""
    A, B = factors_of(F)
    ia = A.id(a)
    return FinFunctor(
        f"{F.name}({idkey(a)},-)",
        B,
        F.target,
        {b: F.ob((a, b)) for b in B.objects},
        {g: F.mor((ia, g)) for g in B.morphisms},
    )


def thin_functor(name: str, source: FinCategory, target: FinCategory, object_map: Mapping[Id, Id]) -> FinFunctor:
    """Extend an object map to a functor into a thin category."""
    mors = {}
    for m in source.morphisms:
        hs = target.hom(object_map[source.dom[m]], object_map[source.cod[m]])
        if len(hs) != 1:
            raise MissingMorphism(
                f"{name}: no unique morphism {idkey(object_map[source.dom[m]])} → {idkey(object_map[source.cod[m]])}",
                (m,),
            )
        mors[m] = hs[0]
    return FinFunctor(name, source, target, object_map, mors)


def is_isomorphism(F: FinFunctor) -> bool:
    if validate_functor(F):
        return False
    obs = set(F.object_map.values())
    ms = set(F.morphism_map.values())
    return (
        len(obs) == len(F.source.objects) == len(F.target.objects)
        and len(ms) == len(F.source.morphisms) == len(F.target.morphisms)
    )


def inverse_functor(F: FinFunctor, name: str | None = None) -> FinFunctor:
    if not is_isomorphism(F):
        raise MalformedError(f"{F.name} is not an isomorphism of categories")
    return FinFunctor(
        name or f"{F.name}⁻¹",
        F.target,
        F.source,
        {v: k for k, v in F.object_map.items()},
        {v: k for k, v in F.morphism_map.items()},
    )


class NatTransf:
    def __init__(self, name: str, source: FinFunctor, target: FinFunctor, components: Mapping[Id, Id]):
        self.name = name
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, a: Id) -> Id:
        try:
            return self.components[a]
        except KeyError:
            raise MalformedError(f"{self.name} has no component at {idkey(a)}") from None

    def __repr__(self):
        return f"NatTransf({self.name!r}: {self.source.name} ⇒ {self.target.name})"


def validate_nat_trans(t: NatTransf, iso: bool = False) -> list[Finding]:
    F, G = t.source, t.target
    if F.source != G.source or F.target != G.target:
        return [Finding("nat.parallel", (F.name, G.name), "functors are not parallel")]
    A, B = F.source, F.target
    out: list[Finding] = []
    for a in A.objects:
        c = t.components.get(a)
        if c is None:
            out.append(Finding("nat.missing", (a,), "missing component"))
        elif c not in B.dom:
            out.append(Finding("malformed.reference", (a, c), "component is not a morphism of the target"))
        elif B.dom[c] != F.ob(a) or B.cod[c] != G.ob(a):
            out.append(Finding("nat.typing", (a, c), f"component must go {idkey(F.ob(a))} → {idkey(G.ob(a))}"))
    if out:
        return out
    for m in A.morphisms:
        a, b = A.dom[m], A.cod[m]
        lhs = B.compose(G.mor(m), t.components[a])
        rhs = B.compose(t.components[b], F.mor(m))
        if lhs != rhs:
            out.append(Finding("nat.naturality", (m,), f"{idkey(lhs)} ≠ {idkey(rhs)}"))
    if iso:
        for a in A.objects:
            if not B.is_iso(t.components[a]):
                out.append(Finding("nat.iso", (a, t.components[a]), "component is not invertible"))
    return out


def identity_transformation(F: FinFunctor, name: str | None = None) -> NatTransf:
    return NatTransf(name or f"1_{F.name}", F, F, {a: F.target.id(F.ob(a)) for a in F.source.objects})


def thin_nat_trans(name: str, F: FinFunctor, G: FinFunctor) -> NatTransf:
    """The unique transformation ``F ⇒ G`` into a thin category, if pointwise morphisms exist."""
    comps = {}
    for a in F.source.objects:
        hs = F.target.hom(F.ob(a), G.ob(a))
        if not hs:
            raise MissingMorphism(f"{name}: no morphism {idkey(F.ob(a))} → {idkey(G.ob(a))}", (a,))
        comps[a] = hs[0]
    return NatTransf(name, F, G, comps)


def check_budget(c: FinCategory, budget: int, what: str) -> Finding | None:
    if len(c.morphisms) > budget:
        return Finding("budget.exceeded", (c.name, len(c.morphisms), budget), f"{what}: category too large for the enumeration budget")
    return None


def find_natural_iso(F: FinFunctor, G: FinFunctor, budget: int = DEFAULT_BUDGET, name: str = "iso") -> NatTransf | None:
    """Search all invertible component assignments for a natural isomorphism ``F ⇒ G``."""
    A, B = F.source, F.target
    if len(A.morphisms) > budget:
        raise BudgetExceeded(f"{A.name} has {len(A.morphisms)} morphisms > budget {budget}")
    objs = list(A.objects)
    cands = [[m for m in B.hom(F.ob(a), G.ob(a)) if B.is_iso(m)] for a in objs]
    chosen: dict[Id, Id] = {}

    def consistent(a) -> bool:
        for m in itertools.chain(A.out_of(a), A.into(a)):
            x, y = A.dom[m], A.cod[m]
            if x in chosen and y in chosen:
                if B.compose(G.mor(m), chosen[x]) != B.compose(chosen[y], F.mor(m)):
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(objs):
            return True
        a = objs[i]
        for m in cands[i]:
            chosen[a] = m
            if consistent(a) and search(i + 1):
                return True
            del chosen[a]
        return False

    if search(0):
        return NatTransf(name, F, G, dict(chosen))
    return None
