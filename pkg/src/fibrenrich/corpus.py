"""The built-in corpus, written as a workspace document, plus a seeded generator of random poset instances."""
from __future__ import annotations

import functools
import itertools
import random

from .workspace import Workspace, emit_document, parse_workspace

BOOL = ["0", "1"]
CHAIN3 = ["0", "1", "2"]
H_MAP = {"0": "0", "1": "1", "2": "1"}
G_MAP = {"0": "0", "1": "2"}


def _meet(x: str, y: str) -> str:
    return min(x, y)


def _imp(elements: list[str], x: str, y: str) -> str:
    """Heyting implication in a finite chain."""
    return elements[-1] if x <= y else y


def _thin_monoidal(category: str, elements: list[str], unit: str) -> dict:
    table = [[x, y, _meet(x, y)] for x in elements for y in elements]
    return {"thin": {"category": category, "table": table, "unit": unit, "symmetric": True}}


def _imp_rights(prefix: str, category: str, elements: list[str]) -> dict:
    """Functors ``b ⇒ -`` for every ``b``."""
    return {
        f"{prefix}[{b}]": {"source": category, "target": category, "objects": [[y, _imp(elements, b, y)] for y in elements]}
        for b in elements
    }


def _pair_imp(x, y):
    return [_imp(BOOL, x[0], y[0]), _imp(BOOL, x[1], y[1])]


def corpus_document() -> dict:
    pairs = [[a, b] for a in BOOL for b in BOOL]
    cats = {
        "One": {"objects": ["*"]},
        "Two": {"objects": ["a", "b"], "morphisms": [["f", "a", "b"]]},
        "Bool": {"poset": {"elements": BOOL, "order": [["0", "1"]]}},
        "Chain3": {"poset": {"elements": CHAIN3, "order": [["0", "1"], ["1", "2"]]}},
        "DiscTwo": {"objects": ["a", "b"]},
        "Par": {"objects": ["a", "b"], "morphisms": [["u", "a", "b"], ["v", "a", "b"]]},
        "Z2": {"objects": ["*"], "morphisms": [["s", "*", "*"]], "composition": [["s", "s", "id_*"]]},
        "Iso2": {
            "objects": ["a", "b"],
            "morphisms": [["i", "a", "b"], ["j", "b", "a"]],
            "composition": [["j", "i", "id_a"], ["i", "j", "id_b"]],
        },
        "BoolTwo": {"product": ["Bool", "Two"]},
        "BoolBool": {"product": ["Bool", "Bool"]},
        "Z2Z2": {"product": ["Z2", "Z2"]},
        "Z2Bool": {"product": ["Z2", "Bool"]},
        "Chain3Chain3": {"product": ["Chain3", "Chain3"]},
        "GrothChain3.total": {"fibration_total": "GrothChain3"},
        "GrothBool.total": {"fibration_total": "GrothBool"},
    }
    z2mult = [
        [["id_*", "id_*"], "id_*"],
        [["id_*", "s"], "s"],
        [["s", "id_*"], "s"],
        [["s", "s"], "id_*"],
    ]
    funs = {
        "Proj2": {"projection": ["BoolTwo", 1]},
        "Pi": {"projection": ["BoolBool", 1]},
        "Proj1.Chain3": {"projection": ["Chain3Chain3", 0]},
        "Z2BoolToBool": {"projection": ["Z2Bool", 1]},
        "id_One": {"identity": "One"},
        "id_Bool": {"identity": "Bool"},
        "id_Chain3": {"identity": "Chain3"},
        "h": {"source": "Chain3", "target": "Bool", "objects": [[x, y] for x, y in H_MAP.items()]},
        "G": {"source": "Bool", "target": "Chain3", "objects": [[x, y] for x, y in G_MAP.items()]},
        "DiscToTwo": {"source": "DiscTwo", "target": "Two", "objects": [["a", "a"], ["b", "b"]], "morphisms": []},
        "ParToTwo": {
            "source": "Par",
            "target": "Two",
            "objects": [["a", "a"], ["b", "b"]],
            "morphisms": [["u", "f"], ["v", "f"]],
        },
        "Z2ToOne": {"source": "Z2", "target": "One", "objects": [["*", "*"]], "morphisms": [["s", "id_*"]]},
        "IsoToOne": {
            "source": "Iso2",
            "target": "One",
            "objects": [["a", "*"], ["b", "*"]],
            "morphisms": [["i", "id_*"], ["j", "id_*"]],
        },
        "BoolToOne": {"source": "Bool", "target": "One", "objects": [[x, "*"] for x in BOOL]},
        "Z2Mult": {"source": "Z2Z2", "target": "Z2", "objects": [[["*", "*"], "*"]], "morphisms": z2mult},
        "OneMeet.tensor": {"tensor": "OneMeet"},
        "BoolMeet.tensor": {"tensor": "BoolMeet"},
        "Chain3Min.tensor": {"tensor": "Chain3Min"},
        "BoolBoolMeet.tensor": {"tensor": "BoolBoolMeet"},
        "Z2Group.tensor": {"tensor": "Z2Group"},
        "GrothChain3.p": {"fibration": "GrothChain3"},
        "GrothBool.p": {"fibration": "GrothBool"},
        "GrothH": {
            "source": "GrothChain3.total",
            "target": "GrothBool.total",
            "objects": [[[x, a], [H_MAP[x], H_MAP[a]]] for x in CHAIN3 for a in CHAIN3],
        },
    }
    funs.update(_imp_rights("BoolImp", "Bool", BOOL))
    funs.update(_imp_rights("Chain3Imp", "Chain3", CHAIN3))
    for b in pairs:
        key = f"BoolBoolImp[{b[0]}{b[1]}]"
        funs[key] = {"source": "BoolBool", "target": "BoolBool", "objects": [[y, _pair_imp(b, y)] for y in pairs]}
    mon = {
        "OneMeet": {"thin": {"category": "One", "table": [["*", "*", "*"]], "unit": "*", "symmetric": True}},
        "BoolMeet": _thin_monoidal("Bool", BOOL, "1"),
        "Chain3Min": _thin_monoidal("Chain3", CHAIN3, "2"),
        "BoolBoolMeet": {"product": ["BoolMeet", "BoolMeet"]},
        "Z2Group": {
            "category": "Z2",
            "tensor": "Z2Mult",
            "unit": "*",
            "associator": [[["*", "*", "*"], "id_*"]],
            "left_unitor": [["*", "id_*"]],
            "right_unitor": [["*", "id_*"]],
            "symmetry": [[["*", "*"], "id_*"]],
        },
    }
    fams = {
        "BoolImp": {"bifunctor": "BoolMeet.tensor", "rights": [[b, f"BoolImp[{b}]"] for b in BOOL]},
        "Chain3Imp": {"bifunctor": "Chain3Min.tensor", "rights": [[b, f"Chain3Imp[{b}]"] for b in CHAIN3]},
        "BoolBoolImp": {
            "bifunctor": "BoolBoolMeet.tensor",
            "rights": [[b, f"BoolBoolImp[{b[0]}{b[1]}]"] for b in pairs],
        },
        "OneHom": {"bifunctor": "OneMeet.tensor", "search": True},
        "Z2Hom": {"bifunctor": "Z2Group.tensor", "search": True},
    }
    adjs = {"hG": {"left": "h", "right": "G", "thin": True}}
    mfun = {
        "h.strict": {"functor": "h", "source": "Chain3Min", "target": "BoolMeet", "identity_strength": True, "flavor": "strict"},
        "G.strict": {"functor": "G", "source": "BoolMeet", "target": "Chain3Min", "identity_strength": True, "flavor": "strict"},
        "id_Bool.strict": {"functor": "id_Bool", "source": "BoolMeet", "target": "BoolMeet", "identity_strength": True, "flavor": "strict"},
        "id_Chain3.strict": {"functor": "id_Chain3", "source": "Chain3Min", "target": "Chain3Min", "identity_strength": True, "flavor": "strict"},
    }
    acts = {
        "RegOne": {"regular": "OneMeet"},
        "RegBool": {"regular": "BoolMeet"},
        "RegChain3": {"regular": "Chain3Min"},
        "RegBoolBool": {"regular": "BoolBoolMeet"},
        "RegZ2": {"regular": "Z2Group"},
        "BoolOnChain3": {
            "thin": {
                "monoidal": "BoolMeet",
                "carrier": "Chain3",
                "table": [[x, d, min(G_MAP[x], d)] for x in BOOL for d in CHAIN3],
            }
        },
        "Chain3OnBool": {
            "thin": {
                "monoidal": "Chain3Min",
                "carrier": "Bool",
                "table": [[x, d, min(H_MAP[x], d)] for x in CHAIN3 for d in BOOL],
            }
        },
        "BoolOnOne": {"thin": {"monoidal": "BoolMeet", "carrier": "One", "table": [[x, "*", "*"] for x in BOOL]}},
    }
    fibs = {
        "Proj2": {"functor": "Proj2"},
        "Pi": {"functor": "Pi"},
        "Proj1.Chain3": {"functor": "Proj1.Chain3"},
        "Z2BoolToBool": {"functor": "Z2BoolToBool"},
        "id_One": {"functor": "id_One"},
        "id_Bool": {"functor": "id_Bool"},
        "id_Chain3": {"functor": "id_Chain3"},
        "id_Bool.op": {"functor": "id_Bool", "direction": "opfibration"},
        "id_Chain3.op": {"functor": "id_Chain3", "direction": "opfibration"},
        "h": {"functor": "h"},
        "h.op": {"functor": "h", "direction": "opfibration"},
        "BoolToOne": {"functor": "BoolToOne"},
        "Z2ToOne": {"functor": "Z2ToOne"},
        "IsoToOne": {"functor": "IsoToOne"},
        "DiscToTwo": {"functor": "DiscToTwo"},
        "ParToTwo": {"functor": "ParToTwo"},
        "GrothConstBool": {"grothendieck": "ConstBoolTwo"},
        "GrothMixed": {"grothendieck": "MixedTwo"},
        "GrothChain3": {"grothendieck": "ConstChain3OverChain3"},
        "GrothBool": {"grothendieck": "ConstBoolOverBool"},
        "GrothChain3.op": {"functor": "GrothChain3.p", "direction": "opfibration"},
        "GrothBool.op": {"functor": "GrothBool.p", "direction": "opfibration"},
    }
    pres = {
        "ConstBoolTwo": {"base": "Two", "constant": "Bool"},
        "MixedTwo": {"base": "Two", "fibres": [["a", "Bool"], ["b", "Chain3"]], "reindex": [["f", "h"]]},
        "ConstChain3OverChain3": {"base": "Chain3", "constant": "Chain3"},
        "ConstBoolOverBool": {"base": "Bool", "constant": "Bool"},
    }
    mfibs = {
        "id_One": {"fibration": "id_One", "total": "OneMeet", "base": "OneMeet", "closed": {"total": "OneHom", "base": "OneHom"}},
        "id_Bool": {"fibration": "id_Bool", "total": "BoolMeet", "base": "BoolMeet", "closed": {"total": "BoolImp", "base": "BoolImp"}},
        "id_Bool.op": {
            "fibration": "id_Bool.op",
            "total": "BoolMeet",
            "base": "BoolMeet",
            "closed": {"total": "BoolImp", "base": "BoolImp"},
        },
        "id_Chain3": {
            "fibration": "id_Chain3",
            "total": "Chain3Min",
            "base": "Chain3Min",
            "closed": {"total": "Chain3Imp", "base": "Chain3Imp"},
        },
        "Pi": {"fibration": "Pi", "total": "BoolBoolMeet", "base": "BoolMeet", "closed": {"total": "BoolBoolImp", "base": "BoolImp"}},
        "h": {"fibration": "h", "total": "Chain3Min", "base": "BoolMeet", "closed": {"total": "Chain3Imp", "base": "BoolImp"}},
        "h.op": {"fibration": "h.op", "total": "Chain3Min", "base": "BoolMeet", "closed": {"total": "Chain3Imp", "base": "BoolImp"}},
        "Z2ToOne": {"fibration": "Z2ToOne", "total": "Z2Group", "base": "OneMeet", "closed": {"total": "Z2Hom", "base": "OneHom"}},
    }
    reps = {
        "RegIdOne": {"regular": "id_One"},
        "RegIdBool": {"regular": "id_Bool"},
        "RegIdBool.op": {"regular": "id_Bool.op"},
        "RegIdChain3": {"regular": "id_Chain3"},
        "RegBoolSq": {"regular": "Pi"},
        "RegH": {"regular": "h"},
        "RegH.op": {"regular": "h.op"},
        "RegZ2": {"regular": "Z2ToOne"},
        "HOnBool": {
            "monoidal_fibration": "h",
            "fibration": "id_Bool",
            "total_action": "Chain3OnBool",
            "base_action": "RegBool",
        },
    }
    enrs = {
        "BoolSelf": {"from_action": "RegBool", "family": "BoolImp"},
        "Chain3Self": {"from_action": "RegChain3", "family": "Chain3Imp"},
        "BoolBoolSelf": {"from_action": "RegBoolBool", "family": "BoolBoolImp"},
        "OneSelf": {"from_action": "RegOne"},
        "Z2Self": {"from_action": "RegZ2"},
        "BoolOnChain3": {"from_action": "BoolOnChain3"},
        "Chain3OnBool": {"from_action": "Chain3OnBool"},
        "BoolOnOne": {"from_action": "BoolOnOne"},
        "Chain3ViaH": {"change_of_base": "Chain3Self", "along": "h.strict"},
        "TrivialOne": {
            "monoidal": "BoolMeet",
            "objects": ["p"],
            "hom": [[["p", "p"], "1"]],
            "composition": [[["p", "p", "p"], "id_1"]],
            "identities": [["p", "id_1"]],
        },
    }
    efibs = {
        "SelfIdOne": {"self": "id_One"},
        "SelfIdBool": {"self": "id_Bool"},
        "SelfIdChain3": {"self": "id_Chain3"},
        "SelfPi": {"self": "Pi"},
        "SelfH": {"self": "h"},
        "SelfZ2": {"self": "Z2ToOne"},
        "RegBoolSq": {"representation": "RegBoolSq"},
        "HOnBool": {"representation": "HOnBool"},
        "RegH.op": {"representation": "RegH.op", "mode": "opfibred"},
        "RegIdBool.op": {"representation": "RegIdBool.op", "mode": "opfibred"},
        "RegH.op.sym": {"representation": "RegH.op", "mode": "symmetric"},
        "RegIdBool.op.sym": {"representation": "RegIdBool.op", "mode": "symmetric"},
    }
    totals = {
        "HG": {
            "top": "h",
            "bottom": "h",
            "left": "id_Chain3",
            "right": "id_Bool",
            "source": "id_Chain3.op",
            "target": "id_Bool.op",
            "base_adjunction": "hG",
        },
        "GrothHG": {
            "top": "GrothH",
            "bottom": "h",
            "left": "GrothChain3.p",
            "right": "GrothBool.p",
            "source": "GrothChain3.op",
            "target": "GrothBool.op",
            "base_adjunction": "hG",
        },
    }
    return {
        "categories": cats,
        "functors": funs,
        "adjunctions": adjs,
        "families": fams,
        "presentations": pres,
        "monoidal": mon,
        "monoidal_functors": mfun,
        "actions": acts,
        "fibrations": fibs,
        "monoidal_fibrations": mfibs,
        "representations": reps,
        "enrichments": enrs,
        "enriched_fibrations": efibs,
        "total_adjoints": totals,
    }


def corpus_text() -> str:
    return emit_document(corpus_document())


@functools.lru_cache(maxsize=1)
def _cached() -> Workspace:
    return parse_workspace(corpus_text())


def load_corpus(fresh: bool = False) -> Workspace:
    """The built-in corpus; commands that build recipes cache results, so tests ask for a fresh copy."""
    return parse_workspace(corpus_text()) if fresh else _cached()


# --- random instances ---------------------------------------------------------


def random_poset_spec(rng: random.Random, n: int, density: float = 0.4) -> dict:
    """A poset on ``p0..p{n-1}`` whose order extends the index order (so it is antisymmetric)."""
    els = [f"p{i}" for i in range(n)]
    order = [[els[i], els[j]] for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return {"poset": {"elements": els, "order": order}}


def _closure(n: int, order: list) -> set:
    leq = {(i, i) for i in range(n)} | {(int(a[1:]), int(b[1:])) for a, b in order}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


def random_monotone_map(rng: random.Random, src: dict, tgt: dict) -> dict:
    """A monotone map between two random posets, chosen greedily in index order; constant if greed gets stuck."""
    s_le = _closure(len(src["poset"]["elements"]), src["poset"]["order"])
    t_le = _closure(len(tgt["poset"]["elements"]), tgt["poset"]["order"])
    image: dict[int, int] = {}
    for i in range(len(src["poset"]["elements"])):
        options = [
            j for j in range(len(tgt["poset"]["elements"])) if all((image[a], j) in t_le for a in image if (a, i) in s_le)
        ]
        if not options:
            return {a: 0 for a in range(len(src["poset"]["elements"]))}
        image[i] = rng.choice(options)
    return image


def random_workspace(seed: int, count: int = 6) -> dict:
    """Random posets with monotone maps between them, each claimed to be a fibration and an opfibration."""
    rng = random.Random(seed)
    cats, funs, fibs = {}, {}, {}
    for i in range(count):
        src = random_poset_spec(rng, rng.randint(1, 4))
        tgt = random_poset_spec(rng, rng.randint(1, 3))
        image = random_monotone_map(rng, src, tgt)
        cats[f"S{i}"], cats[f"T{i}"] = src, tgt
        funs[f"F{i}"] = {
            "source": f"S{i}",
            "target": f"T{i}",
            "objects": [[f"p{a}", f"p{b}"] for a, b in sorted(image.items())],
        }
        fibs[f"F{i}"] = {"functor": f"F{i}"}
        fibs[f"F{i}.op"] = {"functor": f"F{i}", "direction": "opfibration"}
    return {"categories": cats, "functors": funs, "fibrations": fibs}
