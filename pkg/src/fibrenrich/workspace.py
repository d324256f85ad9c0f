"""Workspace documents: a JSON file of named structures with cross-references by name.

Identifiers are JSON strings or (nested) arrays; arrays become tuples, so the
objects of a product category are written ``["0", "a"]``.  Maps are lists of
``[key, value]`` pairs.  Constructions that can fail on valid input (an
enrichment from an action, say) are kept as recipes and built on demand.
"""
from __future__ import annotations

import json
import json.decoder
import json.scanner
from dataclasses import dataclass, field
from typing import Any, Callable

from . import adjunctions as adj_mod
from . import enrichment as enr_mod
from . import fibrations as fib_mod
from . import kernel as k
from . import monoidal as mon_mod
from .laws import Finding, MalformedError

SECTIONS = (
    "categories",
    "functors",
    "transformations",
    "adjunctions",
    "families",
    "presentations",
    "monoidal",
    "monoidal_functors",
    "actions",
    "fibrations",
    "monoidal_fibrations",
    "representations",
    "enrichments",
    "enriched_fibrations",
    "total_adjoints",
)


class WorkspaceError(MalformedError):
    """Parse or resolution failure, located by line and column (1-based)."""

    def __init__(self, kind: str, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {kind}: {message}")
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col

    def finding(self) -> Finding:
        return Finding(f"workspace.{self.kind.replace('-', '_')}", (self.line, self.col), self.message)


# --- position-tracking JSON -------------------------------------------------


class _PosDict(dict):
    pos = 0


class _PosList(list):
    pos = 0


def _pairs_hook(text: str):
    def hook(pairs):
        d = _PosDict()
        for key, value in pairs:
            if key in d:
                raise _Duplicate(key)
            d[key] = value
        return d

    return hook


class _Duplicate(Exception):
    def __init__(self, key):
        self.key = key


def _load(text: str):
    decoder = json.JSONDecoder(object_pairs_hook=_pairs_hook(text))

    def parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None):
        start = s_and_end[1] - 1
        try:
            obj, end = json.decoder.JSONObject(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo)
        except _Duplicate as dup:
            at = text.find(json.dumps(dup.key), start)
            at = text.find(json.dumps(dup.key), at + 1)
            raise WorkspaceError("duplicate-name", f"name {dup.key!r} is defined twice", *_line_col(text, at)) from None
        obj.pos = start
        return obj, end

    def parse_array(s_and_end, scan_once):
        start = s_and_end[1] - 1
        values, end = json.decoder.JSONArray(s_and_end, scan_once)
        out = _PosList(values)
        out.pos = start
        return out, end

    decoder.parse_object = parse_object
    decoder.parse_array = parse_array
    decoder.scan_once = json.scanner.py_make_scanner(decoder)
    try:
        return decoder.decode(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError("syntax", exc.msg, exc.lineno, exc.colno) from None


def _line_col(text: str, offset: int) -> tuple[int, int]:
    offset = max(offset, 0)
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _plain(v):
    if isinstance(v, dict):
        return {key: _plain(x) for key, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def to_json_id(x):
    """Inverse of identifier decoding: tuples become lists."""
    if isinstance(x, tuple):
        return [to_json_id(y) for y in x]
    return x


# --- recipes ------------------------------------------------------------------


@dataclass(eq=False)
class FibrationClaim:
    """A functor claimed to be a fibration (or opfibration), with an optional fixed cleavage."""

    name: str
    p: k.FinFunctor
    direction: str
    cleavage: dict | None = None
    bundle_value: fib_mod.FibrationBundle | None = None
    _cached: Any = field(default=None, repr=False)

    def check(self, jobs: int = 1) -> fib_mod.FibrationBundle | fib_mod.NotAFibration:
        if self.bundle_value is not None:
            return self.bundle_value
        if self._cached is None:
            if self.cleavage is not None:
                test = fib_mod.lifting_test(self.direction)
                lifts = frozenset(m for m in self.p.source.morphisms if test(self.p, m))
                self._cached = fib_mod.FibrationBundle(self.p, dict(self.cleavage), self.direction, lifts)
            else:
                self._cached = fib_mod.check_fibration(self.p, self.direction, jobs)
        return self._cached


@dataclass(eq=False)
class Recipe:
    """A deferred construction; ``build`` runs it, caching the result."""

    name: str
    kind: str
    inputs: dict
    builder: Callable[..., Any]
    _value: Any = field(default=None, repr=False)

    def build(self):
        if self._value is None:
            self._value = self.builder(**self.inputs)
        return self._value


@dataclass(eq=False)
class ClosedData:
    data: mon_mod.MonoidalFibrationData
    total_hom: adj_mod.PartialAdjointFamily | None
    base_hom: adj_mod.PartialAdjointFamily | None


@dataclass(eq=False)
class RepresentationEntry:
    rep: mon_mod.TRepresentationData
    total_family: adj_mod.PartialAdjointFamily | None = None
    base_family: adj_mod.PartialAdjointFamily | None = None


@dataclass(eq=False)
class TotalAdjointInput:
    cell: adj_mod.SquareCell
    source: FibrationClaim
    target: FibrationClaim
    base_adjunction: adj_mod.Adjunction
    fibrewise: dict | None = None


# --- workspace ----------------------------------------------------------------


@dataclass(eq=False)
class Workspace:
    document: dict
    entries: dict

    def names(self, section: str) -> list[str]:
        return sorted(self.entries.get(section, {}))

    def get(self, section: str, name: str):
        try:
            return self.entries[section][name]
        except KeyError:
            raise MalformedError(f"no {section[:-1] if section.endswith('s') else section} named {name!r}") from None

    def find(self, name: str, sections: tuple[str, ...]):
        for s in sections:
            if name in self.entries.get(s, {}):
                return s, self.entries[s][name]
        raise MalformedError(f"{name!r} is not defined in any of: {', '.join(sections)}")

    def emit(self) -> str:
        return emit_document(self.document)


def emit_document(doc: dict) -> str:
    return json.dumps(_plain(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_workspace(text: str) -> Workspace:
    """Parse and resolve every entry; raises :class:`WorkspaceError` on the first problem."""
    if not text.strip():
        return Workspace({}, {s: {} for s in SECTIONS})
    doc = _load(text)
    if not isinstance(doc, dict):
        raise WorkspaceError("typing", "workspace must be a JSON object", 1, 1)
    for key in doc:
        if key not in SECTIONS:
            at = text.find(json.dumps(key))
            raise WorkspaceError("typing", f"unknown section {key!r}", *_line_col(text, at))
        if not isinstance(doc[key], dict):
            raise WorkspaceError("typing", f"section {key!r} must map names to entries", *_line_col(text, getattr(doc[key], "pos", 0)))
    r = _Resolver(text, doc)
    for s in SECTIONS:
        for name in doc.get(s, {}):
            r.ref(s, name, doc[s])
    return Workspace(_plain(doc), r.done)


def load_workspace(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


class _Resolver:
    def __init__(self, text: str, doc: dict):
        self.text = text
        self.doc = doc
        self.done: dict = {s: {} for s in SECTIONS}
        self.active: set = set()

    # errors and locations
    def err(self, kind: str, message: str, at) -> WorkspaceError:
        return WorkspaceError(kind, message, *_line_col(self.text, getattr(at, "pos", 0)))

    def ref(self, section: str, name, at):
        if not isinstance(name, str):
            raise self.err("typing", f"expected a name from {section}, got {name!r}", at)
        if name in self.done[section]:
            return self.done[section][name]
        entries = self.doc.get(section, {})
        if name not in entries:
            raise self.err("unresolved-reference", f"{section} has no entry {name!r}", at)
        if (section, name) in self.active:
            raise self.err("typing", f"cyclic reference through {name!r}", entries[name])
        self.active.add((section, name))
        spec = entries[name]
        if not isinstance(spec, dict):
            raise self.err("typing", f"entry {name!r} must be an object", entries)
        try:
            value = getattr(self, "_" + section)(name, spec)
        except WorkspaceError:
            raise
        except MalformedError as exc:
            raise self.err("typing", f"{name}: {exc}", spec) from None
        self.active.discard((section, name))
        self.done[section][name] = value
        return value

    # shared value decoders
    def ident(self, v, at):
        if isinstance(v, str):
            return v
        if isinstance(v, list):
            return tuple(self.ident(x, v) for x in v)
        raise self.err("typing", f"identifier must be a string or an array, got {v!r}", at)

    def need(self, spec: dict, key: str):
        if key not in spec:
            raise self.err("typing", f"missing field {key!r}", spec)
        return spec[key]

    def pairs(self, v, at, key_decode=None, value_decode=None) -> dict:
        key_decode = key_decode or (lambda x, a: self.ident(x, a))
        value_decode = value_decode or (lambda x, a: self.ident(x, a))
        if not isinstance(v, list):
            raise self.err("typing", "expected a list of [key, value] pairs", at)
        out = {}
        for item in v:
            if not isinstance(item, list) or len(item) != 2:
                raise self.err("typing", "expected a [key, value] pair", item if isinstance(item, list) else v)
            key = key_decode(item[0], item)
            if key in out:
                raise self.err("duplicate-name", f"key {k.idkey(key)} appears twice", item)
            out[key] = value_decode(item[1], item)
        return out

    def triples(self, v, at) -> list:
        if not isinstance(v, list):
            raise self.err("typing", "expected a list of triples", at)
        out = []
        for item in v:
            if not isinstance(item, list) or len(item) != 3:
                raise self.err("typing", "expected a triple", item if isinstance(item, list) else v)
            out.append(tuple(self.ident(x, item) for x in item))
        return out

    def obj_in(self, C: k.FinCategory, x, at):
        if x not in C.identities:
            raise self.err("typing", f"{k.idkey(x)} is not an object of {C.name}", at)
        return x

    def mor_in(self, C: k.FinCategory, m, at):
        if m not in C.dom:
            raise self.err("typing", f"{k.idkey(m)} is not a morphism of {C.name}", at)
        return m

    def cat(self, v, at) -> k.FinCategory:
        return self.ref("categories", v, at)

    def fun(self, v, at) -> k.FinFunctor:
        return self.ref("functors", v, at)

    # sections
    def _categories(self, name, spec):
        if "poset" in spec:
            p = spec["poset"]
            els = [self.ident(x, p) for x in self.need(p, "elements")]
            order = [tuple(self.ident(x, pr) for x in pr) for pr in self.need(p, "order")]
            return k.poset(name, els, order)
        if "product" in spec:
            a, b = spec["product"]
            return k.product(self.cat(a, spec), self.cat(b, spec), name)
        if "opposite" in spec:
            return k.opposite(self.cat(spec["opposite"], spec))
        if "fibration_total" in spec:
            claim = self.ref("fibrations", spec["fibration_total"], spec)
            return claim.p.source
        objects = [self.ident(x, spec) for x in self.need(spec, "objects")]
        if len(set(objects)) != len(objects):
            raise self.err("duplicate-name", f"{name}: repeated object", spec)
        mors = self.triples(spec.get("morphisms", []), spec)
        ids = self.pairs(spec["identities"], spec) if "identities" in spec else None
        comp = self.triples(spec.get("composition", []), spec)
        for m, d, c in mors:
            if d not in objects or c not in objects:
                raise self.err("typing", f"{name}: morphism {k.idkey(m)} has an unknown endpoint", spec["morphisms"])
        C = k.FinCategory.build(name, objects, mors, comp, ids)
        if len(C.morphisms) != len(mors) + len(objects):
            raise self.err("duplicate-name", f"{name}: repeated morphism identifier", spec.get("morphisms", spec))
        for g, f, gf in comp:
            for m in (g, f, gf):
                if m not in C.dom:
                    raise self.err("typing", f"{name}: composition mentions unknown morphism {k.idkey(m)}", spec["composition"])
            if C.cod[f] != C.dom[g]:
                raise self.err("typing", f"{name}: composition entry for non-composable pair ({k.idkey(g)}, {k.idkey(f)})", spec["composition"])
            if (C.dom[gf], C.cod[gf]) != (C.dom[f], C.cod[g]):
                raise self.err("typing", f"{name}: composite {k.idkey(gf)} has the wrong type", spec["composition"])
        return C

    def _functors(self, name, spec):
        if "identity" in spec:
            return k.identity_functor(self.cat(spec["identity"], spec), name)
        if "projection" in spec:
            c, i = spec["projection"]
            return k.projection(self.cat(c, spec), int(i), name)
        if "compose" in spec:
            g, f = spec["compose"]
            return k.compose_functors(self.fun(g, spec), self.fun(f, spec), name)
        if "product" in spec:
            f, g = spec["product"]
            return k.functor_product(self.fun(f, spec), self.fun(g, spec), name)
        if "opposite" in spec:
            return k.opposite_functor(self.fun(spec["opposite"], spec))
        if "tensor" in spec:
            return self.ref("monoidal", spec["tensor"], spec).tensor
        if "action" in spec:
            return self.ref("actions", spec["action"], spec).star
        if "parameterized_adjoint" in spec:
            fam = self.ref("families", spec["parameterized_adjoint"], spec)
            return adj_mod.build_parameterized_adjoint(fam, name)
        if "fibration" in spec:
            return self.ref("fibrations", spec["fibration"], spec).p
        C = self.cat(self.need(spec, "source"), spec)
        D = self.cat(self.need(spec, "target"), spec)
        obmap = self.pairs(self.need(spec, "objects"), spec)
        for a, b in obmap.items():
            self.obj_in(C, a, spec["objects"])
            self.obj_in(D, b, spec["objects"])
        if "morphisms" not in spec:
            if any(a not in obmap for a in C.objects):
                raise self.err("typing", f"{name}: object map is not total", spec["objects"])
            return k.thin_functor(name, C, D, obmap)
        mormap = self.pairs(spec["morphisms"], spec)
        for m, n in mormap.items():
            self.mor_in(C, m, spec["morphisms"])
            self.mor_in(D, n, spec["morphisms"])
        for a in C.objects:
            if a in obmap:
                mormap.setdefault(C.id(a), D.id(obmap[a]))
        return k.FinFunctor(name, C, D, obmap, mormap)

    def _transformations(self, name, spec):
        F = self.fun(self.need(spec, "source"), spec)
        G = self.fun(self.need(spec, "target"), spec)
        if spec.get("thin"):
            return k.thin_nat_trans(name, F, G)
        comps = self.pairs(self.need(spec, "components"), spec)
        return k.NatTransf(name, F, G, comps)

    def _adjunctions(self, name, spec):
        L = self.fun(self.need(spec, "left"), spec)
        if spec.get("search"):
            found = adj_mod.find_right_adjoint(L, name)
            if found is None:
                raise self.err("typing", f"{name}: {L.name} has no right adjoint", spec)
            return found
        R = self.fun(self.need(spec, "right"), spec)
        if spec.get("thin"):
            return adj_mod.thin_adjunction(name, L, R)
        return adj_mod.Adjunction(
            name, L, R, self.pairs(self.need(spec, "unit"), spec), self.pairs(self.need(spec, "counit"), spec)
        )

    def _families(self, name, spec):
        F = self.fun(self.need(spec, "bifunctor"), spec)
        if spec.get("search"):
            return adj_mod.family_by_search(name, F)
        if "rights" in spec:
            rights = self.pairs(spec["rights"], spec, value_decode=lambda v, a: self.fun(v, a))
            return adj_mod.family_from_rights(name, F, rights)
        members = self.pairs(
            self.need(spec, "members"), spec, value_decode=lambda v, a: self.ref("adjunctions", v, a)
        )
        return adj_mod.PartialAdjointFamily(name, F, members)

    def _presentations(self, name, spec):
        X = self.cat(self.need(spec, "base"), spec)
        if "constant" in spec:
            return fib_mod.constant_presentation(name, X, self.cat(spec["constant"], spec))
        fibres = self.pairs(self.need(spec, "fibres"), spec, value_decode=lambda v, a: self.cat(v, a))
        reindex = self.pairs(self.need(spec, "reindex"), spec, value_decode=lambda v, a: self.fun(v, a))
        for x in X.objects:
            if x not in fibres:
                continue
            ident = k.identity_functor(fibres[x])
            reindex.setdefault(X.id(x), ident)
        return fib_mod.IndexedPresentation(name, X, fibres, reindex)

    def _monoidal(self, name, spec):
        if "thin" in spec:
            t = spec["thin"]
            V = self.cat(self.need(t, "category"), t)
            table = {(x, y): z for x, y, z in self.triples(self.need(t, "table"), t)}
            for x in V.objects:
                for y in V.objects:
                    if (x, y) not in table:
                        raise self.err("typing", f"{name}: tensor table misses ({k.idkey(x)}, {k.idkey(y)})", t["table"])
            unit = self.obj_in(V, self.ident(self.need(t, "unit"), t), t)
            return mon_mod.thin_monoidal(name, V, lambda x, y: table[(x, y)], unit, bool(t.get("symmetric", True)))
        if "product" in spec:
            a, b = spec["product"]
            return mon_mod.product_monoidal(name, self.ref("monoidal", a, spec), self.ref("monoidal", b, spec))
        V = self.cat(self.need(spec, "category"), spec)
        tensor = self.fun(self.need(spec, "tensor"), spec)
        unit = self.ident(self.need(spec, "unit"), spec)
        assoc = self.pairs(self.need(spec, "associator"), spec)
        left = self.pairs(self.need(spec, "left_unitor"), spec)
        right = self.pairs(self.need(spec, "right_unitor"), spec)
        sym = self.pairs(spec["symmetry"], spec) if "symmetry" in spec else None
        return mon_mod.MonoidalStructure(name, V, tensor, unit, assoc, left, right, sym)

    def _monoidal_functors(self, name, spec):
        F = self.fun(self.need(spec, "functor"), spec)
        S = self.ref("monoidal", self.need(spec, "source"), spec)
        T = self.ref("monoidal", self.need(spec, "target"), spec)
        flavor = spec.get("flavor", mon_mod.LAX)
        if flavor not in (mon_mod.LAX, mon_mod.STRONG, mon_mod.STRICT):
            raise self.err("typing", f"{name}: unknown flavor {flavor!r}", spec)
        if spec.get("identity_strength"):
            return mon_mod.identity_structure(name, F, S, T, flavor)
        phi = self.pairs(self.need(spec, "phi"), spec)
        phi0 = self.ident(self.need(spec, "phi0"), spec)
        return mon_mod.MonoidalFunctorData(name, F, S, T, phi, phi0, flavor)

    def _actions(self, name, spec):
        if "regular" in spec:
            return mon_mod.regular_action(self.ref("monoidal", spec["regular"], spec), name)
        if "thin" in spec:
            t = spec["thin"]
            m = self.ref("monoidal", self.need(t, "monoidal"), t)
            D = self.cat(self.need(t, "carrier"), t)
            table = {(x, d): e for x, d, e in self.triples(self.need(t, "table"), t)}
            for x in m.category.objects:
                for d in D.objects:
                    if (x, d) not in table:
                        raise self.err("typing", f"{name}: action table misses ({k.idkey(x)}, {k.idkey(d)})", t["table"])
            return mon_mod.thin_action(name, m, D, lambda x, d: table[(x, d)])
        m = self.ref("monoidal", self.need(spec, "monoidal"), spec)
        D = self.cat(self.need(spec, "carrier"), spec)
        star = self.fun(self.need(spec, "functor"), spec)
        chi = self.pairs(self.need(spec, "chi"), spec)
        nu = self.pairs(self.need(spec, "nu"), spec)
        return mon_mod.ActionStructure(name, m, D, star, chi, nu)

    def _fibrations(self, name, spec):
        if "grothendieck" in spec:
            ix = self.ref("presentations", spec["grothendieck"], spec)
            bundle = fib_mod.grothendieck(ix)
            return FibrationClaim(name, bundle.p, fib_mod.FIBRATION, bundle_value=bundle)
        if "dual" in spec:
            other = self.ref("fibrations", spec["dual"], spec)
            checked = other.check()
            if isinstance(checked, fib_mod.NotAFibration):
                raise self.err("typing", f"{name}: {other.name} is not a fibration, so it has no dual", spec)
            dual = fib_mod.dualize(checked)
            return FibrationClaim(name, dual.p, dual.direction, bundle_value=dual)
        p = self.fun(self.need(spec, "functor"), spec)
        direction = spec.get("direction", fib_mod.FIBRATION)
        if direction not in (fib_mod.FIBRATION, fib_mod.OPFIBRATION):
            raise self.err("typing", f"{name}: unknown direction {direction!r}", spec)
        cleavage = None
        if "cleavage" in spec:
            cleavage = self.pairs(spec["cleavage"], spec)
        return FibrationClaim(name, p, direction, cleavage)

    def bundle(self, v, at) -> fib_mod.FibrationBundle:
        claim = self.ref("fibrations", v, at)
        checked = claim.check()
        if isinstance(checked, fib_mod.NotAFibration):
            raise self.err("typing", f"{claim.name} is not a {claim.direction}", at)
        return checked

    def _monoidal_fibrations(self, name, spec):
        bundle = self.bundle(self.need(spec, "fibration"), spec)
        total = self.ref("monoidal", self.need(spec, "total"), spec)
        base = self.ref("monoidal", self.need(spec, "base"), spec)
        d = mon_mod.MonoidalFibrationData(name, bundle, total, base)
        closed = spec.get("closed")
        if closed is None:
            return ClosedData(d, None, None)
        th = self.ref("families", closed["total"], closed) if "total" in closed else None
        bh = self.ref("families", closed["base"], closed) if "base" in closed else None
        return ClosedData(d, th, bh)

    def _representations(self, name, spec):
        fams = spec.get("families", {})
        tf = self.ref("families", fams["total"], fams) if "total" in fams else None
        bf = self.ref("families", fams["base"], fams) if "base" in fams else None
        if "regular" in spec:
            cd = self.ref("monoidal_fibrations", spec["regular"], spec)
            r = mon_mod.regular_representation(cd.data, name)
            return RepresentationEntry(r, tf or cd.total_hom, bf or cd.base_hom)
        cd = self.ref("monoidal_fibrations", self.need(spec, "monoidal_fibration"), spec)
        p = self.bundle(self.need(spec, "fibration"), spec)
        ta = self.ref("actions", self.need(spec, "total_action"), spec)
        ba = self.ref("actions", self.need(spec, "base_action"), spec)
        r = mon_mod.TRepresentationData(name, cd.data, p, ta, ba, bool(spec.get("require_cartesian", True)))
        return RepresentationEntry(r, tf, bf)

    def _enrichments(self, name, spec):
        if "from_action" in spec:
            act = self.ref("actions", spec["from_action"], spec)
            fam = self.ref("families", spec["family"], spec) if "family" in spec else None
            return Recipe(name, "from_action", {"act": act, "fam": fam, "name": name}, enr_mod.enrich_from_action)
        if "change_of_base" in spec:
            src = self.ref("enrichments", spec["change_of_base"], spec)
            f = self.ref("monoidal_functors", self.need(spec, "along"), spec)

            def build(src, f, name):
                e = src.build().enriched if isinstance(src, Recipe) else src
                return enr_mod.change_of_base(e, f, name)

            return Recipe(name, "change_of_base", {"src": src, "f": f, "name": name}, build)
        m = self.ref("monoidal", self.need(spec, "monoidal"), spec)
        objects = tuple(k.sorted_ids(self.ident(x, spec) for x in self.need(spec, "objects")))
        hom = self.pairs(self.need(spec, "hom"), spec)
        comp = self.pairs(self.need(spec, "composition"), spec)
        ident = self.pairs(self.need(spec, "identities"), spec)
        return enr_mod.EnrichedCategory(name, m, objects, hom, comp, ident)

    def _enriched_fibrations(self, name, spec):
        if "self" in spec:
            cd = self.ref("monoidal_fibrations", spec["self"], spec)
            if cd.total_hom is None or cd.base_hom is None:
                raise self.err("typing", f"{name}: {cd.data.name} carries no internal-hom families", spec)
            return Recipe(
                name,
                "self",
                {"d": cd.data, "total_hom": cd.total_hom, "base_hom": cd.base_hom, "name": name},
                enr_mod.self_enrich_closed_fibration,
            )
        if "representation" in spec:
            entry = self.ref("representations", spec["representation"], spec)
            mode = spec.get("mode", enr_mod.FIBRED)
            if mode not in (enr_mod.FIBRED, enr_mod.OPFIBRED, enr_mod.SYMMETRIC):
                raise self.err("typing", f"{name}: unknown mode {mode!r}", spec)
            inputs = {"r": entry.rep, "total_family": entry.total_family, "base_family": entry.base_family, "name": name}
            if mode == enr_mod.FIBRED:
                return Recipe(name, "representation", inputs, enr_mod.enrich_fibration_from_action)
            inputs["symmetric_mode"] = mode == enr_mod.SYMMETRIC
            return Recipe(name, "representation", inputs, enr_mod.enrich_opfibration_from_action)
        cd = self.ref("monoidal_fibrations", self.need(spec, "monoidal_fibration"), spec)
        p = self.bundle(self.need(spec, "fibration"), spec)
        total = self._enrichment_value(self.need(spec, "total"), spec)
        base = self._enrichment_value(self.need(spec, "base"), spec)
        t_iso = self._iso(total, p.total, self.need(spec, "total_iso"), spec)
        b_iso = self._iso(base, p.base, self.need(spec, "base_iso"), spec)
        mode = spec.get("mode", enr_mod.FIBRED)
        return enr_mod.EnrichedFibrationData(name, cd.data, p, total, base, t_iso, b_iso, mode)

    def _enrichment_value(self, v, at):
        e = self.ref("enrichments", v, at)
        if isinstance(e, Recipe):
            built = e.build()
            return built.enriched if isinstance(built, enr_mod.ActionEnrichment) else built
        return e

    def _iso(self, e, C, v, at):
        U = enr_mod.underlying_category(e)
        mors = self.pairs(v, at)
        for m in U.morphisms:
            mors.setdefault(m, None)
        return k.FinFunctor(f"{e.name}₀≅{C.name}", U, C, {a: a for a in U.objects}, mors)

    def _total_adjoints(self, name, spec):
        cell = adj_mod.SquareCell(
            name,
            self.fun(self.need(spec, "top"), spec),
            self.fun(self.need(spec, "bottom"), spec),
            self.fun(self.need(spec, "left"), spec),
            self.fun(self.need(spec, "right"), spec),
        )
        src = self.ref("fibrations", self.need(spec, "source"), spec)
        tgt = self.ref("fibrations", self.need(spec, "target"), spec)
        base = self.ref("adjunctions", self.need(spec, "base_adjunction"), spec)
        fw = None
        if "fibrewise" in spec:
            fw = self.pairs(spec["fibrewise"], spec, value_decode=lambda v, a: self.ref("adjunctions", v, a))
        return TotalAdjointInput(cell, src, tgt, base, fw)
