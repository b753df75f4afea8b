"""Deterministic report files in a text and a machine (JSON) flavour.

Reports carry no timestamp, so identical inputs and tool versions give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .bigbracket import PolyMap
from .policy import TruncationPolicy, VerificationReport

TOOL_VERSION = "0.1.0"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def polymap_rows(f: PolyMap) -> list[dict]:
    """Entries grouped by component, sorted by ``(m, n)`` then input word."""
    fmt = f.basis.format_word
    rows = []
    for (m, n), comp in sorted(f.components().items()):
        for w in sorted(comp, key=lambda w: (len(w), w)):
            rows.append({"m": m, "n": n, "input": fmt(w), "output": str(comp[w])})
    return rows


@dataclass
class ReportFile:
    command: str
    source: str
    input_digest: str
    policy: TruncationPolicy
    sections: list[VerificationReport] = field(default_factory=list)
    mu: dict[int, PolyMap] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(len(s.failures) for s in self.sections)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        out = {
            "toolVersion": TOOL_VERSION,
            "command": self.command,
            "source": self.source,
            "inputDigest": self.input_digest,
            "policy": self.policy.as_dict(),
            "sections": [s.as_dict() for s in self.sections],
            "notes": list(self.notes),
            "summary": {
                "passed": self.passed,
                "failures": self.failures,
                "checked": sum(s.checked for s in self.sections),
            },
        }
        if self.mu is not None:
            out["mu"] = {str(q): polymap_rows(f) for q, f in sorted(self.mu.items())}
        return out

    def render_machine(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        lines = [
            f"tool version: {TOOL_VERSION}",
            f"command: {self.command}",
            f"input: {self.source}",
            f"input digest: {self.input_digest}",
            f"policy: {self.policy.describe()}",
        ]
        lines.extend(f"note: {n}" for n in self.notes)
        for s in self.sections:
            lines.append("")
            lines.append(s.summary())
            lines.extend(f"  note: {n}" for n in s.notes)
            for w in s.failures:
                lines.append(f"  witness [{w.component}] {w.word} => {w.value}")
        if self.mu is not None:
            lines.append("")
            lines.append("mu (lambda^0 is the L-infinity structure):")
            for q, f in sorted(self.mu.items()):
                for row in polymap_rows(f):
                    lines.append(
                        f"  lambda^{q} mu_({row['m']},{row['n']}): "
                        f"{row['input']} |-> {row['output']}"
                    )
        lines.append("")
        status = "PASS" if self.passed else "FAIL"
        lines.append(
            f"summary: {status}, {self.failures} failure witnesses, "
            f"{sum(s.checked for s in self.sections)} checks"
        )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "text") -> str:
        if fmt == "machine":
            return self.render_machine()
        return self.render_text()
