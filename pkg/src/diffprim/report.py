"""Run reports and their two renderings.

The machine format is a single tab-delimited text document with one
``key<TAB>value`` line per fact, emitted in a fixed order so identical inputs
and seed give byte-identical output; timing is therefore rendered only in the
human format.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field


@dataclass
class RunReport:
    command: str
    argv: tuple[str, ...]
    config: list[tuple[str, str]] = field(default_factory=list)
    status: str = "ok"
    payload: list[tuple[str, str]] = field(default_factory=list)
    timing: float = 0.0
    exit_status: int = 0

    def render(self, fmt: str) -> str:
        return self.render_machine() if fmt == "machine" else self.render_human()

    def render_machine(self) -> str:
        lines = [f"command\t{self.command}", f"argv\t{shlex.join(self.argv)}"]
        lines.extend(f"{k}\t{v}" for k, v in self.config)
        lines.append(f"status\t{self.status}")
        lines.extend(f"{k}\t{v}" for k, v in self.payload)
        lines.append(f"exit\t{self.exit_status}")
        return "\n".join(lines) + "\n"

    def render_human(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        if self.config:
            knobs = ", ".join(f"{k}={v}" for k, v in self.config)
            lines.append(f"  config: {knobs}")
        for k, v in self.payload:
            v = v.replace("\t", "  ")
            lines.append(f"  {k}: {v}")
        lines.append(f"  elapsed: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def payload_value(report: RunReport, key: str) -> str | None:
    """First payload value under a key (convenience for tests and tooling)."""
    for k, v in report.payload:
        if k == key:
            return v
    return None
