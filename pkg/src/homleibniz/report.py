"""Run reports: structured command results with deterministic renderings.

A report collects per-check verdicts, numeric tables, input digests and the
active sign convention, and renders as a human table, CSV, or canonical
JSON.  Identical inputs give byte-identical JSON: keys are sorted, rows are
emitted in construction order, and there are no timestamps.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"


@dataclass
class RunReport:
    command: list
    convention: str
    checks: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    digests: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add_check(self, name, ok, details=""):
        self.checks.append({"name": name, "verdict": PASS if ok else FAIL, "details": details})

    def add_table(self, title, columns, rows):
        self.tables.append(
            {"title": title, "columns": list(columns), "rows": [list(r) for r in rows]}
        )

    def note(self, text):
        self.notes.append(text)

    @property
    def status(self):
        return PASS if all(c["verdict"] == PASS for c in self.checks) else FAIL

    @property
    def exit_code(self):
        return 0 if self.status == PASS else 1

    # -- renderings ---------------------------------------------------------

    def to_dict(self):
        return {
            "command": self.command,
            "convention": self.convention,
            "status": self.status,
            "checks": self.checks,
            "tables": self.tables,
            "digests": self.digests,
            "notes": self.notes,
        }

    def render_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def render_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "name", "value", "details"])
        w.writerow(["meta", "command", " ".join(self.command), ""])
        w.writerow(["meta", "convention", self.convention, ""])
        w.writerow(["meta", "status", self.status, ""])
        for c in self.checks:
            w.writerow(["check", c["name"], c["verdict"], c["details"]])
        for t in self.tables:
            w.writerow(["table", t["title"], "|".join(str(c) for c in t["columns"]), ""])
            for row in t["rows"]:
                w.writerow(["row", t["title"], "|".join(str(x) for x in row), ""])
        for name, d in sorted(self.digests.items()):
            w.writerow(["digest", name, d, ""])
        for note in self.notes:
            w.writerow(["note", "", note, ""])
        return buf.getvalue()

    def render_table(self):
        lines = []
        lines.append(f"command:    {' '.join(self.command)}")
        lines.append(f"convention: {self.convention}")
        lines.append(f"status:     {self.status.upper()}")
        if self.checks:
            lines.append("")
            width = max(len(c["name"]) for c in self.checks)
            for c in self.checks:
                line = f"  [{c['verdict'].upper():4}] {c['name']:<{width}}"
                if c["details"]:
                    line += f"  {c['details']}"
                lines.append(line.rstrip())
        for t in self.tables:
            lines.append("")
            lines.append(t["title"])
            cols = [str(c) for c in t["columns"]]
            rows = [[str(x) for x in r] for r in t["rows"]]
            widths = [
                max(len(cols[j]), *(len(r[j]) for r in rows)) if rows else len(cols[j])
                for j in range(len(cols))
            ]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            lines.append("  " + "  ".join("-" * w for w in widths))
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)))
        if self.digests:
            lines.append("")
            for name, d in sorted(self.digests.items()):
                lines.append(f"digest {name}: {d}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        if fmt == "json":
            return self.render_json()
        if fmt == "csv":
            return self.render_csv()
        return self.render_table()
