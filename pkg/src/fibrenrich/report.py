"""Reports: verdict, findings with anchors and witnesses, command-specific data, and timing."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .kernel import idkey, sorted_ids
from .laws import Finding, verdict
from .workspace import to_json_id

EXIT_CODES = {"pass": 0, "fail": 1, "error": 2}


def jsonable(x):
    if isinstance(x, tuple):
        return [jsonable(y) for y in x]
    if isinstance(x, list):
        return [jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def table(mapping: dict) -> list:
    """``[[key, value], ...]`` in canonical key order."""
    return [[to_json_id(k), to_json_id(mapping[k])] for k in sorted_ids(mapping)]


@dataclass
class Report:
    command: list
    findings: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return verdict(self.findings)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "command": list(self.command),
            "verdict": self.verdict,
            "findings": [
                {"law": f.law, "anchor": f.anchor, "witness": jsonable(f.witness), "detail": f.detail}
                for f in self.findings
            ],
            "data": jsonable(self.data),
        }
        if timing:
            out["timing"] = {"seconds": round(self.seconds, 6)}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self, timing: bool = True) -> str:
        lines = [f"command  {' '.join(self.command)}", f"verdict  {self.verdict}", f"findings {len(self.findings)}"]
        if self.findings:
            rows = [(f.law, f.anchor, "(" + ", ".join(idkey(w) for w in f.witness) + ")", f.detail) for f in self.findings]
            widths = [max(len(r[i]) for r in rows) for i in range(3)]
            for r in rows:
                lines.append("  " + "  ".join(r[i].ljust(widths[i]) for i in range(3)) + "  " + r[3])
        if self.data:
            lines.append("data")
            keyw = max(len(str(k)) for k in self.data)
            for key in sorted(self.data):
                lines.append(f"  {str(key).ljust(keyw)}  {json.dumps(jsonable(self.data[key]), ensure_ascii=False, sort_keys=True)}")
        if timing:
            lines.append(f"timing   {self.seconds:.6f}s")
        return "\n".join(lines) + "\n"


def strip_timing(text: str) -> str:
    """Drop timing lines or fields so reports can be compared byte for byte."""
    try:
        obj = json.loads(text)
    except ValueError:
        return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("timing"))
    obj.pop("timing", None)
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def finding_from_exception(law: str, message: str, nested: list[Finding] | None = None) -> list[Finding]:
    return [Finding(law, (), message)] + list(nested or [])
