"""Acceptance criteria 1 to 9.

Each criterion is a function that returns a one-line summary or raises
``AssertionError``.  Under pytest every criterion is its own test and the
terminal summary prints one pass/fail line per criterion; run this file
directly to get the same lines without pytest.
"""
from __future__ import annotations

import io
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fibrenrich import adjunctions as A  # noqa: E402
from fibrenrich import enrichment as E  # noqa: E402
from fibrenrich import fibrations as F  # noqa: E402
from fibrenrich import kernel as K  # noqa: E402
from fibrenrich.cli import main  # noqa: E402
from fibrenrich.corpus import load_corpus  # noqa: E402
from fibrenrich.report import strip_timing  # noqa: E402

from mutations import CATALOGUE  # noqa: E402
from oracles import oracle_cartesian, oracle_cocartesian, oracle_heyting, poset_order  # noqa: E402
from support import cli_suite, square_adjunctions, swap_from_grothendieck, total_adjoint  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def _small(c: K.FinCategory) -> bool:
    return len(c.objects) <= 10 and len(c.morphisms) <= 60


def criterion_1(ws) -> str:
    start = time.perf_counter()
    functors = {}
    for n in ws.names("functors"):
        functors[n] = ws.get("functors", n)
    for n in ws.names("fibrations"):
        functors.setdefault(n, ws.get("fibrations", n).p)
    functors = {n: p for n, p in functors.items() if _small(p.source) and _small(p.target)}
    checked = 0
    for n, p in functors.items():
        for m in p.source.morphisms:
            assert bool(F.is_cartesian(p, m)) == oracle_cartesian(p, m), (n, m)
            checked += 1
    elapsed = time.perf_counter() - start
    assert len(functors) >= 8, len(functors)
    assert elapsed < 10, elapsed
    return f"{checked} morphisms over {len(functors)} functors agree with the oracle in {elapsed:.2f}s"


def criterion_2(ws) -> str:
    start = time.perf_counter()
    names = ws.names("actions")
    for n in names:
        act = ws.get("actions", n)
        ae = E.enrich_from_action(act)
        assert E.validate_enriched_category(ae.enriched) == [], n
        U = E.underlying_category(ae.enriched)
        assert K.validate_category(U) == [], n
        assert K.validate_functor(ae.comparison) == [], n
        assert K.is_isomorphism(ae.comparison), n
        assert ae.comparison.source == U and ae.comparison.target == act.carrier, n
    elapsed = time.perf_counter() - start
    assert len(names) >= 4 and {"RegBool", "RegChain3"} <= set(names)
    assert elapsed < 10, elapsed
    return f"{len(names)} actions enrich lawfully with invertible comparison in {elapsed:.2f}s"


def _heyting(ws, cat):
    V = ws.get("categories", cat)
    return oracle_heyting(V.objects, poset_order(V), min)


def criterion_3(ws) -> str:
    bool_imp = _heyting(ws, "Bool")
    chain_imp = _heyting(ws, "Chain3")
    pair_imp = {
        ((a0, a1), (b0, b1)): (bool_imp[(a0, b0)], bool_imp[(a1, b1)])
        for a0 in "01" for a1 in "01" for b0 in "01" for b1 in "01"
    }
    expected = {
        "id_Bool": (bool_imp, bool_imp),
        "id_Chain3": (chain_imp, chain_imp),
        "Pi": (pair_imp, bool_imp),
    }
    for name, (total, base) in expected.items():
        cd = ws.get("monoidal_fibrations", name)
        d = E.self_enrich_closed_fibration(cd.data, cd.total_hom, cd.base_hom)
        assert d.total.hom == total, name
        assert d.base.hom == base, name
        assert E.validate_enriched_fibration(d) == [], name
    return "hom equals the internal hom for id_Bool, id_Chain3 and Pi; each self-enrichment validates"


def criterion_4(ws) -> str:
    built = 0
    for name in ws.names("representations"):
        entry = ws.get("representations", name)
        r = entry.rep
        if r.direction == F.FIBRATION:
            variants = [E.enrich_fibration_from_action(r, entry.total_family, entry.base_family)]
        else:
            variants = [
                E.enrich_opfibration_from_action(r, entry.total_family, entry.base_family),
                E.enrich_opfibration_from_action(r, entry.total_family, entry.base_family, symmetric_mode=True),
            ]
        for d in variants:
            assert d.padj is not None, name
            assert E.validate_enriched_fibration(d) == [], name
            found, case = E.as_enriched_functor(d)
            assert found == [] and case in (E.EQUAL, E.ISOMORPHIC), name
            built += 1
    assert built >= 4
    return f"{built} enriched (op)fibrations from {len(ws.names('representations'))} representations validate"


def criterion_5(ws) -> str:
    pairs = square_adjunctions(ws)
    counter = 0
    for name, sa in pairs:
        assert A.validate_square_adjunction(sa) == [], name
        R, L = sa.total.right, sa.total.left
        for m in R.source.morphisms:
            if oracle_cartesian(sa.Q, m) and not oracle_cartesian(sa.P, R.mor(m)):
                counter += 1
        for m in L.source.morphisms:
            if oracle_cocartesian(sa.P, m) and not oracle_cocartesian(sa.Q, L.mor(m)):
                counter += 1
        assert A.adjoint_liftings_report(sa) == [], name
    assert counter == 0
    assert any(n in ("HG", "GrothHG") for n, _ in pairs)
    return f"{len(pairs)} square adjunctions, 0 counterexamples"


def criterion_6(ws) -> str:
    ix = ws.get("presentations", "ConstBoolTwo")
    b = F.grothendieck(ix)
    proj = ws.get("functors", "Proj2")
    swap = swap_from_grothendieck(b, proj.source)
    assert K.validate_functor(swap) == []
    assert K.is_isomorphism(swap)
    tri = K.compose_functors(proj, swap)
    assert (tri.object_map, tri.morphism_map) == (b.p.object_map, b.p.morphism_map)
    for name in ws.names("presentations"):
        ix = ws.get("presentations", name)
        b = F.grothendieck(ix)
        assert not isinstance(F.check_fibration(b.p), F.NotAFibration), name
        for x in ix.base.objects:
            fb = F.fibre(b.p, x)
            assert [o for o in fb.objects] == [(x, a) for a in ix.fibres[x].objects], (name, x)
            strip = K.FinFunctor("strip", fb, ix.fibres[x], {o: o[1] for o in fb.objects}, {m: m[1] for m in fb.morphisms})
            assert K.validate_functor(strip) == [] and K.is_isomorphism(strip), (name, x)
    return f"∫ConstBoolTwo ≅ Proj2 by an exhibited functor; {len(ws.names('presentations'))} constructions are fibrations with matching fibres"


def criterion_7(ws) -> str:
    sa = total_adjoint(ws, "HG")
    h, G = ws.get("functors", "h"), ws.get("functors", "G")
    for adj in (sa.total, sa.base):
        assert (adj.left.object_map, adj.left.morphism_map) == (h.object_map, h.morphism_map)
        assert (adj.right.object_map, adj.right.morphism_map) == (G.object_map, G.morphism_map)
    assert A.validate_square_adjunction(sa) == []
    return "total right adjoint is (G, G) and every square-adjunction law holds"


def criterion_8(ws) -> str:
    false_accepts = []
    for m in CATALOGUE:
        found = m.run(ws)
        ok = bool(found) and found[0].law == m.law and any(
            f.law == m.law and tuple(f.witness) == m.witness for f in found
        )
        if not ok:
            false_accepts.append(m.name)
    doc = (Path(__file__).parent / "MUTATIONS.md").read_text(encoding="utf-8")
    assert all(f"`{m.name}`" in doc for m in CATALOGUE)
    assert false_accepts == [], false_accepts
    return f"{len(CATALOGUE)} documented mutations rejected with the expected law and witness, 0 false accepts"


def _run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, strip_timing(out.getvalue())


def criterion_9(ws) -> str:
    start = time.perf_counter()
    argvs = [["--json"] + c for c in cli_suite(ws)]
    first = [_run(a) for a in argvs]
    second = [_run(a) for a in argvs]
    with ThreadPoolExecutor(max_workers=8) as pool:
        third = list(pool.map(_run, [["--jobs", "4"] + a for a in argvs]))
    elapsed = time.perf_counter() - start
    assert first == second == third
    assert elapsed < 60, elapsed
    return f"{len(argvs)} commands byte-identical across serial, repeated and parallel runs ({elapsed:.2f}s)"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def _record(i: int, ws) -> None:
    try:
        RESULTS[i] = (True, CRITERIA[i](ws))
    except AssertionError as exc:
        RESULTS[i] = (False, f"assertion failed: {exc}")
        raise


@pytest.mark.parametrize("i", list(CRITERIA), ids=[f"criterion_{i}" for i in CRITERIA])
def test_criterion(i):
    _record(i, load_corpus(fresh=True))


def summary_lines() -> list[str]:
    return [f"criterion {i}: {'PASS' if ok else 'FAIL'}  {detail}" for i, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    ws = load_corpus(fresh=True)
    for i in CRITERIA:
        try:
            _record(i, ws)
        except AssertionError:
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
