"""Check reports: one record per decided question, with enough context
to re-run the decision from the report alone.

Serialized reports are deterministic: keys are sorted and the timing
field is zeroed unless timings are explicitly requested, so identical
runs produce identical bytes.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .budget import Budget


@dataclass
class CheckReport:
    check: str
    verdict: str                 # "holds" | "fails" | "out-of-budget"
    claim: str                   # what question this verdict answers
    budget: dict = field(default_factory=dict)
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    @property
    def failed(self) -> bool:
        return self.verdict == "fails"

    @property
    def inconclusive(self) -> bool:
        return self.verdict == "out-of-budget"

    def as_dict(self, timings: bool = False) -> dict:
        d = {
            "check": self.check,
            "verdict": self.verdict,
            "claim": self.claim,
            "budget": dict(self.budget),
            "elapsed_ms": self.elapsed_ms if timings else 0,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.details:
            d["details"] = self.details
        return d


def from_verdict(check: str, v, claim: str, budget: Budget,
                 **details) -> CheckReport:
    """Lift a core Verdict into a report."""
    return CheckReport(check, v.status, claim, budget.as_dict(),
                       witness=v.witness,
                       details={k: x for k, x in details.items()
                                if x not in (None, "", [], {})}
                       | ({"note": v.note} if v.note else {}))


def to_json(reports, timings: bool = False) -> str:
    if isinstance(reports, CheckReport):
        reports = [reports]
    payload = [r.as_dict(timings) for r in reports]
    return json.dumps(payload, sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def config_digest(config: dict) -> str:
    """Content address for a run configuration."""
    blob = json.dumps(config, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def render_text(reports, timings: bool = False) -> str:
    if isinstance(reports, CheckReport):
        reports = [reports]
    lines = []
    for r in reports:
        lines.append(f"[{r.verdict:>13}] {r.check}: {r.claim}")
        if timings and r.elapsed_ms:
            lines.append(f"    elapsed: {r.elapsed_ms} ms")
        for k in sorted(r.details):
            lines.append(f"    {k}: {_short(r.details[k])}")
        if r.witness is not None:
            w = r.witness
            if w.get("note"):
                lines.append(f"    witness: {w['note']}")
            for role, name in sorted(w.get("roles", {}).items()):
                lines.append(f"      {role} = {name}")
            frag = w.get("fragment", "")
            if frag:
                lines.append("      fragment:")
                lines.extend("        " + ln for ln in frag.rstrip().splitlines())
    return "\n".join(lines) + "\n"


def _short(v):
    s = str(v)
    return s if len(s) <= 200 else s[:197] + "..."
