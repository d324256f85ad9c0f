"""Independent brute-force oracles.

Everything here reads raw tables (``dom``/``cod``/``composition``/
``morphism_map`` dictionaries) and recomputes answers from definitions,
without calling engine helpers such as ``hom``, ``compose`` or ``into``.
"""
from __future__ import annotations

from itertools import product


def _comp(cat, g, f):
    return cat.composition.get((g, f))


def oracle_cartesian(p, phi) -> bool:
    """``phi`` is cartesian iff every lifting problem over a factorization has exactly one solution.

    Scans all morphisms of the total and base categories linearly instead of
    using hom-set indexes.
    """
    A, X = p.source, p.target
    pm = p.morphism_map
    a, b = A.dom[phi], A.cod[phi]
    f = pm[phi]
    for theta in A.dom:
        if A.cod[theta] != b:
            continue
        c = A.dom[theta]
        for g in X.dom:
            if X.dom[g] != X.dom[pm[theta]] or X.cod[g] != X.dom[f]:
                continue
            if _comp(X, f, g) != pm[theta]:
                continue
            sols = [
                psi
                for psi in A.dom
                if A.dom[psi] == c and A.cod[psi] == a and pm[psi] == g and _comp(A, phi, psi) == theta
            ]
            if len(sols) != 1:
                return False
    return True


def oracle_cocartesian(p, phi) -> bool:
    A, X = p.source, p.target
    pm = p.morphism_map
    a, b = A.dom[phi], A.cod[phi]
    f = pm[phi]
    for theta in A.dom:
        if A.dom[theta] != a:
            continue
        c = A.cod[theta]
        for g in X.dom:
            if X.dom[g] != X.cod[f] or X.cod[g] != X.cod[pm[theta]]:
                continue
            if _comp(X, g, f) != pm[theta]:
                continue
            sols = [
                psi
                for psi in A.dom
                if A.dom[psi] == b and A.cod[psi] == c and pm[psi] == g and _comp(A, psi, phi) == theta
            ]
            if len(sols) != 1:
                return False
    return True


def oracle_is_fibration(p) -> bool:
    """Every ``(f: x→y, B over y)`` has some cartesian morphism over ``f`` into ``B``."""
    A, X = p.source, p.target
    for f in X.dom:
        for B in A.objects:
            if p.object_map[B] != X.cod[f]:
                continue
            if not any(A.cod[m] == B and p.morphism_map[m] == f and oracle_cartesian(p, m) for m in A.dom):
                return False
    return True


def leq(order: set, x, y) -> bool:
    return x == y or (x, y) in order


def poset_order(cat) -> set:
    """The preorder of a thin category, read off its morphism table."""
    return {(cat.dom[m], cat.cod[m]) for m in cat.dom if cat.dom[m] != cat.cod[m]}


def oracle_heyting(elements, order: set, meet) -> dict:
    """``x ⇒ y`` as the greatest ``z`` with ``z ∧ x ≤ y``, found by scanning all ``z``."""
    out = {}
    for x, y in product(elements, repeat=2):
        cands = [z for z in elements if leq(order, meet(z, x), y)]
        tops = [z for z in cands if all(leq(order, w, z) for w in cands)]
        assert len(tops) == 1, (x, y, cands)
        out[(x, y)] = tops[0]
    return out


def oracle_right_adjoint(src_elems, src_order, tgt_elems, tgt_order, h: dict) -> dict | None:
    """Right adjoint of a monotone ``h`` by ``G(y) = max{x : h(x) ≤ y}``; ``None`` when some max is missing."""
    out = {}
    for y in tgt_elems:
        cands = [x for x in src_elems if leq(tgt_order, h[x], y)]
        tops = [x for x in cands if all(leq(src_order, w, x) for w in cands)]
        if len(tops) != 1:
            return None
        out[y] = tops[0]
    return out


def oracle_galois(src_elems, src_order, tgt_elems, tgt_order, h: dict, g: dict) -> bool:
    """``h(x) ≤ y`` iff ``x ≤ g(y)`` for all pairs."""
    return all(
        leq(tgt_order, h[x], y) == leq(src_order, x, g[y]) for x in src_elems for y in tgt_elems
    )
