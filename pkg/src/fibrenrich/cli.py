"""Command-line verifier: ``fibrenrich [global flags] <command> <name> ...``.

Exit status is 0 on pass, 1 when a law fails, 2 on malformed input or an
engine error.  Without ``--workspace`` the built-in corpus is used.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import adjunctions as A
from . import enrichment as E
from . import fibrations as F
from . import kernel as K
from . import monoidal as M
from .corpus import corpus_document, load_corpus, random_workspace
from .laws import BudgetExceeded, FibrEnrichError, Finding, InternalError, MalformedError, PreconditionError
from .report import Report, finding_from_exception, table
from .workspace import (
    SECTIONS,
    ClosedData,
    FibrationClaim,
    Recipe,
    RepresentationEntry,
    Workspace,
    WorkspaceError,
    emit_document,
    load_workspace,
    to_json_id,
)


@dataclass
class Context:
    budget: int = K.DEFAULT_BUDGET
    jobs: int = 1
    seed: int = 0


def _parse_id(text: str):
    """Command-line identifiers: JSON arrays for tuples, anything else verbatim."""
    if text.startswith("["):
        try:
            return _tuplify(json.loads(text))
        except ValueError:
            raise MalformedError(f"cannot parse identifier {text!r}") from None
    return text


def _tuplify(v):
    return tuple(_tuplify(x) for x in v) if isinstance(v, list) else v


def _claim(ws: Workspace, name: str, direction: str | None) -> FibrationClaim:
    section, obj = ws.find(name, ("fibrations", "functors"))
    if section == "functors":
        return FibrationClaim(name, obj, direction or F.FIBRATION)
    if direction and direction != obj.direction:
        return FibrationClaim(name, obj.p, direction)
    return obj


def _bundle(claim: FibrationClaim, ctx: Context) -> F.FibrationBundle:
    res = claim.check(ctx.jobs)
    if isinstance(res, F.NotAFibration):
        raise PreconditionError(f"{claim.name} is not a {claim.direction}", [res.finding()])
    return res


def _built(entry):
    return entry.build() if isinstance(entry, Recipe) else entry


def _enriched_tables(e: E.EnrichedCategory) -> dict:
    return {
        "objects": [to_json_id(a) for a in e.objects],
        "hom": table(e.hom),
        "M": table(e.comp),
        "j": table(e.ident),
    }


# --- commands -----------------------------------------------------------------


def cmd_check_fibration(ws, a, ctx):
    claim = _claim(ws, a.name, a.direction)
    res = claim.check(ctx.jobs)
    data = {"direction": claim.direction, "total": claim.p.source.name, "base": claim.p.target.name}
    if isinstance(res, F.NotAFibration):
        return [res.finding()], data
    data.update({"cleavage_size": len(res.cleavage), "liftings": len(res.lifts)})
    return F.validate_bundle(res), data


def cmd_cleavage(ws, a, ctx):
    claim = _claim(ws, a.name, a.direction)
    b = _bundle(claim, ctx)
    rows = [[to_json_id(f), to_json_id(obj), to_json_id(b.cleavage[(f, obj)])] for f, obj in K.sorted_ids(b.cleavage)]
    return F.validate_bundle(b), {"direction": b.direction, "cleavage": rows}


def cmd_reindex(ws, a, ctx):
    b = _bundle(_claim(ws, a.name, a.direction), ctx)
    X = b.base
    f = _parse_id(a.morphism)
    if f not in X.dom:
        raise MalformedError(f"{a.morphism} is not a morphism of {X.name}")
    R = F.reindexing_functor(b, f)
    out: list[Finding] = []
    over = K.check_budget(b.total, ctx.budget, "reindexing coherence search")
    if over:
        out.append(over)
    else:
        for g2, f2 in K.sorted_ids(X.composable_pairs()):
            if f not in (g2, f2):
                continue
            if F.reindexing_pseudofunctoriality(b, g2, f2, ctx.budget) is None:
                out.append(Finding("reindex.pseudofunctoriality", (g2, f2), "no coherence isomorphism"))
    return out, {"functor": R.name, "objects": table(R.object_map), "morphisms": table(R.morphism_map)}


def cmd_check_monoidal(ws, a, ctx):
    return M.validate_monoidal(ws.get("monoidal", a.name)), {}


def cmd_check_monoidal_fibration(ws, a, ctx):
    d = ws.get("monoidal_fibrations", a.name).data
    out = M.check_monoidal_fibration(d)
    if out:
        return out, {}
    return M.validate_monoidal_functor(M.derived_strict_functor(d)), {"flavor": M.STRICT, "direction": d.bundle.direction}


def cmd_check_closed_fibration(ws, a, ctx):
    cd: ClosedData = ws.get("monoidal_fibrations", a.name)
    return M.check_closed_fibration(cd.data, cd.total_hom, cd.base_hom), {}


def cmd_check_action(ws, a, ctx):
    return M.validate_action(ws.get("actions", a.name)), {}


def cmd_check_representation(ws, a, ctx):
    r: RepresentationEntry = ws.get("representations", a.name)
    return M.validate_T_representation(r.rep), {"direction": r.rep.direction}


def cmd_param_adjoint(ws, a, ctx):
    fam = ws.get("families", a.name)
    bad = A.validate_family(fam)
    if bad:
        return bad, {}
    G = A.build_parameterized_adjoint(fam)
    out = A.check_parameterized_naturality(fam, G)
    over = K.check_budget(G.source, ctx.budget, "uniqueness enumeration")
    out += [over] if over else A.check_parameterized_uniqueness(fam, G, ctx.budget)
    return out, {"functor": G.name, "objects": table(G.object_map), "morphisms": table(G.morphism_map)}


def cmd_total_adjoint(ws, a, ctx):
    t = ws.get("total_adjoints", a.name)
    sa = F.build_total_right_adjoint(t.cell, _bundle(t.source, ctx), _bundle(t.target, ctx), t.base_adjunction, t.fibrewise)
    out = A.validate_square_adjunction(sa) + A.adjoint_liftings_report(sa)
    R = sa.total.right
    return out, {
        "right_adjoint": R.name,
        "objects": table(R.object_map),
        "morphisms": table(R.morphism_map),
        "unit": table(sa.total.unit),
        "counit": table(sa.total.counit),
    }


def grothendieck_findings(ix: F.IndexedPresentation, b: F.FibrationBundle, jobs: int = 1) -> list[Finding]:
    """The projection is a fibration and each fibre is the assigned category, object by object."""
    res = F.check_fibration(b.p, F.FIBRATION, jobs)
    if isinstance(res, F.NotAFibration):
        return [res.finding()]
    out = F.validate_bundle(b)
    for x in ix.base.objects:
        fb = F.fibre(b.p, x)
        given = ix.fibres[x]
        strip = K.FinFunctor(f"strip[{K.idkey(x)}]", fb, given, {o: o[1] for o in fb.objects}, {m: m[1] for m in fb.morphisms})
        if [o[1] for o in fb.objects] != list(given.objects) or any(o[0] != x for o in fb.objects):
            out.append(Finding("grothendieck.fibre", (x,), "fibre objects differ from the assignment"))
        elif not K.is_isomorphism(strip):
            out.append(Finding("grothendieck.fibre", (x,), "fibre is not isomorphic to the assigned category"))
    return out


def cmd_grothendieck(ws, a, ctx):
    ix = ws.get("presentations", a.name)
    b = F.grothendieck(ix)
    fibres = [[to_json_id(x), len(ix.fibres[x].objects), len(F.fibre(b.p, x).morphisms)] for x in ix.base.objects]
    data = {"objects": len(b.total.objects), "morphisms": len(b.total.morphisms), "fibres": fibres}
    return grothendieck_findings(ix, b, ctx.jobs), data


def cmd_enrich(ws, a, ctx):
    section, obj = ws.find(a.name, ("enrichments", "actions"))
    if section == "actions":
        fam = ws.get("families", a.family) if a.family else None
        obj = E.enrich_from_action(obj, fam, f"enr[{a.name}]")
    else:
        obj = _built(obj)
    e = obj.enriched if isinstance(obj, E.ActionEnrichment) else obj
    out = E.validate_enriched_category(e)
    if not out:
        out = K.validate_category(E.underlying_category(e))
    data = _enriched_tables(e)
    data["base"] = e.base.name
    if isinstance(obj, E.ActionEnrichment):
        data["underlying_iso"] = K.is_isomorphism(obj.comparison)
    return out, data


def _enriched_fibration(ws, name: str, mode: str | None = None) -> E.EnrichedFibrationData:
    section, obj = ws.find(name, ("enriched_fibrations", "representations", "monoidal_fibrations"))
    if section == "enriched_fibrations":
        return _built(obj)
    if section == "representations":
        r = obj.rep
        if r.direction == F.FIBRATION:
            return E.enrich_fibration_from_action(r, obj.total_family, obj.base_family, f"enr[{name}]")
        return E.enrich_opfibration_from_action(
            r, obj.total_family, obj.base_family, f"enr[{name}]", symmetric_mode=mode == E.SYMMETRIC
        )
    if obj.total_hom is None or obj.base_hom is None:
        raise PreconditionError(f"{name} carries no internal-hom families")
    return E.self_enrich_closed_fibration(obj.data, obj.total_hom, obj.base_hom)


def cmd_enrich_fibration(ws, a, ctx):
    d = _enriched_fibration(ws, a.name, a.mode)
    data = {"mode": d.mode, "total": _enriched_tables(d.total), "base": _enriched_tables(d.base)}
    return E.validate_enriched_fibration(d), data


def cmd_check_enriched_fibration(ws, a, ctx):
    d = _enriched_fibration(ws, a.name, a.mode)
    return E.validate_enriched_fibration(d, a.partial_cartesian), {"mode": d.mode, "partial_cartesian": a.partial_cartesian}


def cmd_as_enriched_functor(ws, a, ctx):
    d = _enriched_fibration(ws, a.name, a.mode)
    out, case = E.as_enriched_functor(d)
    return out, {"case": case}


VALIDATORS = {
    "categories": lambda ws, x, a, ctx: (K.validate_category(x), {}),
    "functors": lambda ws, x, a, ctx: (K.validate_functor(x), {}),
    "transformations": lambda ws, x, a, ctx: (K.validate_nat_trans(x), {}),
    "adjunctions": lambda ws, x, a, ctx: (A.validate_adjunction(x), {}),
    "families": lambda ws, x, a, ctx: (A.validate_family(x), {}),
    "presentations": lambda ws, x, a, ctx: (F.validate_presentation(x), {}),
    "monoidal": lambda ws, x, a, ctx: (M.validate_monoidal(x), {}),
    "monoidal_functors": lambda ws, x, a, ctx: (M.validate_monoidal_functor(x), {"flavor": x.flavor}),
    "actions": lambda ws, x, a, ctx: (M.validate_action(x), {}),
    "fibrations": lambda ws, x, a, ctx: cmd_check_fibration(ws, a, ctx),
    "monoidal_fibrations": lambda ws, x, a, ctx: cmd_check_monoidal_fibration(ws, a, ctx),
    "representations": lambda ws, x, a, ctx: cmd_check_representation(ws, a, ctx),
    "enrichments": lambda ws, x, a, ctx: cmd_enrich(ws, a, ctx),
    "enriched_fibrations": lambda ws, x, a, ctx: cmd_check_enriched_fibration(ws, a, ctx),
    "total_adjoints": lambda ws, x, a, ctx: cmd_total_adjoint(ws, a, ctx),
}


def cmd_validate(ws, a, ctx):
    sections = (a.section,) if a.section else SECTIONS
    section, obj = ws.find(a.name, sections)
    a.direction, a.mode, a.family, a.partial_cartesian = None, None, None, False
    out, data = VALIDATORS[section](ws, obj, a, ctx)
    return out, {"section": section, **data}


COMMANDS = {
    "validate": cmd_validate,
    "check-fibration": cmd_check_fibration,
    "cleavage": cmd_cleavage,
    "reindex": cmd_reindex,
    "check-monoidal": cmd_check_monoidal,
    "check-monoidal-fibration": cmd_check_monoidal_fibration,
    "check-closed-fibration": cmd_check_closed_fibration,
    "check-action": cmd_check_action,
    "check-representation": cmd_check_representation,
    "param-adjoint": cmd_param_adjoint,
    "total-adjoint": cmd_total_adjoint,
    "grothendieck": cmd_grothendieck,
    "enrich": cmd_enrich,
    "enrich-fibration": cmd_enrich_fibration,
    "check-enriched-fibration": cmd_check_enriched_fibration,
    "as-enriched-functor": cmd_as_enriched_functor,
}


HELP = {
    "validate": "run the validator for the section defining NAME",
    "check-fibration": "decide whether a functor is a (op)fibration",
    "cleavage": "list the chosen (co)cartesian lifts",
    "reindex": "build the reindexing functor along a base morphism",
    "check-monoidal": "check monoidal coherence",
    "check-monoidal-fibration": "check a monoidal fibration",
    "check-closed-fibration": "check a closed monoidal fibration",
    "check-action": "check action coherence",
    "check-representation": "check a T-representation",
    "param-adjoint": "build and check a parameterized adjoint",
    "total-adjoint": "build and check a total right adjoint",
    "grothendieck": "build and check a Grothendieck construction",
    "enrich": "enrichment induced by an action",
    "enrich-fibration": "enriched (op)fibration from a representation",
    "check-enriched-fibration": "check an enriched (op)fibration",
    "as-enriched-functor": "check the projection as an enriched functor",
}


class UsageError(Exception):
    """Command-line arguments that do not parse."""

    @property
    def finding(self) -> Finding:
        law = "command.unknown" if "invalid choice" in str(self) else "command.arguments"
        return Finding(law, (), str(self))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fibrenrich", description="Verify fibrations, monoidal structure and enrichment on finite categories.")
    p.add_argument("--workspace", help="workspace JSON file (default: built-in corpus)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="machine-readable report")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="aligned text report (default)")
    p.add_argument("--budget", type=int, default=None, help="enumeration bound (env FIBRENRICH_BUDGET)")
    p.add_argument("--seed", type=int, default=0, help="seed for random instance generation")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-morphism checks")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name])
        sp.add_argument("name")
        if name in ("check-fibration", "cleavage", "reindex"):
            sp.add_argument("--direction", choices=(F.FIBRATION, F.OPFIBRATION))
        if name == "reindex":
            sp.add_argument("morphism", help="base morphism; JSON array for tuple identifiers")
        if name == "validate":
            sp.add_argument("--section", choices=SECTIONS)
        if name == "enrich":
            sp.add_argument("--family", help="partial adjoint family to use instead of searching")
        if name in ("enrich-fibration", "check-enriched-fibration", "as-enriched-functor"):
            sp.add_argument("--mode", choices=(E.FIBRED, E.OPFIBRED, E.SYMMETRIC))
        if name == "check-enriched-fibration":
            sp.add_argument("--partial-cartesian", action="store_true", help="also require hom(a,-) to preserve liftings")
    cp = sub.add_parser("corpus", help="list built-in structures")
    cp.add_argument("--dump", action="store_true", help="print the corpus as a workspace file")
    cp.add_argument("--random", type=int, metavar="N", help="with --dump: N random poset instances from --seed")
    cp.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="same as the global --seed")
    return p


def run_command(ws: Workspace, command: list[str], ctx: Context | None = None) -> Report:
    """Parse ``command`` (a subcommand and its arguments) and run it against ``ws``."""
    try:
        args = build_parser().parse_args(command)
    except UsageError as exc:
        return Report(list(command), [exc.finding])
    if args.command == "corpus":
        return Report(list(command), [Finding("command.arguments", (), "corpus is only available from the command line")])
    return execute(ws, args, ctx or Context(budget=_budget(args.budget), jobs=max(1, args.jobs), seed=args.seed))


def execute(ws: Workspace, args: argparse.Namespace, ctx: Context) -> Report:
    argv = [args.command, args.name] + ([args.morphism] if hasattr(args, "morphism") else [])
    report = Report(argv)
    start = time.perf_counter()
    try:
        report.findings, report.data = COMMANDS[args.command](ws, args, ctx)
    except PreconditionError as exc:
        report.findings = finding_from_exception("construction.precondition", str(exc), exc.findings)
    except InternalError as exc:
        report.findings = finding_from_exception("construction.internal", str(exc), exc.findings)
    except BudgetExceeded as exc:
        report.findings = [Finding("budget.exceeded", (), str(exc))]
    except WorkspaceError as exc:
        report.findings = [exc.finding()]
    except MalformedError as exc:
        report.findings = [Finding("command.arguments", (), str(exc))]
    except FibrEnrichError as exc:
        report.findings = finding_from_exception("construction.internal", str(exc))
    report.seconds = time.perf_counter() - start
    return report


def _budget(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("FIBRENRICH_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return K.DEFAULT_BUDGET


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        report = Report(argv, [exc.finding])
        out.write(report.to_json(False) if "--json" in argv else report.to_text(False))
        return report.exit_code
    if args.command == "corpus":
        if args.dump:
            doc = random_workspace(args.seed, args.random) if args.random else corpus_document()
            out.write(emit_document(doc))
            return 0
        ws = load_workspace(args.workspace) if args.workspace else load_corpus()
        for s in SECTIONS:
            names = ws.names(s)
            if names:
                out.write(f"{s}: {', '.join(names)}\n")
        return 0
    ctx = Context(budget=_budget(args.budget), jobs=max(1, args.jobs), seed=args.seed)
    timing = not args.no_timing
    try:
        ws = load_workspace(args.workspace) if args.workspace else load_corpus()
    except WorkspaceError as exc:
        report = Report(["load", args.workspace or "<corpus>"], [exc.finding()])
    except OSError as exc:
        report = Report(["load", args.workspace or "<corpus>"], [Finding("command.arguments", (), str(exc))])
    else:
        report = execute(ws, args, ctx)
    out.write(report.to_json(timing) if args.fmt == "json" else report.to_text(timing))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
