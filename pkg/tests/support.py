"""Shared builders for the test suite: every square adjunction the suite constructs, and exhibited isomorphisms."""
from __future__ import annotations

import random

from fibrenrich import adjunctions as A
from fibrenrich import fibrations as F
from fibrenrich import kernel as K
from fibrenrich.corpus import random_monotone_map, random_poset_spec


def closed_order(spec: dict) -> list:
    order = {tuple(p) for p in spec["poset"]["order"]}
    changed = True
    while changed:
        extra = {(a, d) for a, b in order for c, d in order if b == c} - order
        changed = bool(extra)
        order |= extra
    return sorted(order)


def random_adjoint_pair(seed: int):
    """A random monotone map with its right adjoint, or ``None`` when no adjoint exists."""
    rng = random.Random(seed)
    src = random_poset_spec(rng, rng.randint(1, 4))
    tgt = random_poset_spec(rng, rng.randint(1, 4))
    image = random_monotone_map(rng, src, tgt)
    S = K.poset(f"S{seed}", src["poset"]["elements"], closed_order(src))
    T = K.poset(f"T{seed}", tgt["poset"]["elements"], closed_order(tgt))
    h = K.thin_functor(f"h{seed}", S, T, {f"p{a}": f"p{b}" for a, b in image.items()})
    return A.find_right_adjoint(h)


def total_adjoint(ws, name: str) -> A.SquareAdjunction:
    t = ws.get("total_adjoints", name)
    return F.build_total_right_adjoint(t.cell, t.source.check(), t.target.check(), t.base_adjunction, t.fibrewise)


def square_adjunctions(ws, seeds=range(40)) -> list[tuple[str, A.SquareAdjunction]]:
    """Every square adjunction the suite builds.

    Total right adjoints from the corpus, the per-object hom adjunctions of
    closed monoidal fibrations, and random order adjunctions viewed over
    identity fibrations.
    """
    out = [(n, total_adjoint(ws, n)) for n in ws.names("total_adjoints")]
    for n in ws.names("monoidal_fibrations"):
        cd = ws.get("monoidal_fibrations", n)
        if cd.total_hom is None:
            continue
        T = cd.data.T
        for x in T.source.objects:
            sa = A.SquareAdjunction(f"{n}[{K.idkey(x)}]", cd.total_hom.members[x], cd.base_hom.members[T.ob(x)], T, T)
            out.append((sa.name, sa))
    for s in seeds:
        adj = random_adjoint_pair(s)
        if adj is None:
            continue
        P = K.identity_functor(adj.left.source)
        Q = K.identity_functor(adj.left.target)
        out.append((f"random{s}", A.SquareAdjunction(f"random{s}", adj, adj, P, Q)))
    return out


def swap_from_grothendieck(bundle: F.FibrationBundle, product: K.FinCategory) -> K.FinFunctor:
    """``∫(const D) → D × X``: ``(x, a) ↦ (a, x)`` and ``(f, φ, b) ↦ (φ, f)``."""
    total = bundle.total
    return K.FinFunctor(
        "swap",
        total,
        product,
        {o: (o[1], o[0]) for o in total.objects},
        {m: (m[1], m[0]) for m in total.morphisms},
    )


def cli_suite(ws) -> list[list[str]]:
    """One command line per corpus entry and applicable command."""
    cmds: list[list[str]] = []
    for n in ws.names("fibrations"):
        cmds.append(["check-fibration", n])
        claim = ws.get("fibrations", n)
        if not isinstance(claim.check(), F.NotAFibration):
            cmds.append(["cleavage", n])
            for f in claim.p.target.morphisms:
                if not claim.p.target.is_identity(f):
                    cmds.append(["reindex", n, json_id(f)])
    simple = {
        "monoidal": "check-monoidal",
        "actions": "check-action",
        "representations": "check-representation",
        "families": "param-adjoint",
        "total_adjoints": "total-adjoint",
        "presentations": "grothendieck",
        "enrichments": "enrich",
    }
    for section, cmd in simple.items():
        cmds += [[cmd, n] for n in ws.names(section)]
    cmds += [["enrich", n] for n in ws.names("actions")]
    for n in ws.names("monoidal_fibrations"):
        cmds += [["check-monoidal-fibration", n], ["check-closed-fibration", n], ["enrich-fibration", n]]
    for n in ws.names("enriched_fibrations"):
        cmds += [["enrich-fibration", n], ["check-enriched-fibration", n], ["as-enriched-functor", n]]
        cmds.append(["check-enriched-fibration", n, "--partial-cartesian"])
    for section in ("categories", "functors", "adjunctions", "monoidal_functors"):
        cmds += [["validate", n, "--section", section] for n in ws.names(section)]
    return cmds


def json_id(x) -> str:
    import json

    from fibrenrich.workspace import to_json_id

    return x if isinstance(x, str) else json.dumps(to_json_id(x))
