"""Check verdicts and the line-oriented report format."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: str = ""

    def line(self, entry: str) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        tail = f" {self.witness}" if self.witness and not self.ok else ""
        return f"CHECK {entry} {self.name} {verdict}{tail}"


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str = "") -> bool:
        if not ok and not witness:
            witness = "violated"
        self.checks.append(Check(name.replace(" ", "_"), bool(ok), witness))
        return ok

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def lines(self, entry: str) -> list[str]:
        return [c.line(entry) for c in self.checks]


def render(blocks, summary: bool = True) -> str:
    """``blocks`` is an iterable of (entry id, Report)."""
    out = []
    passed = total = 0
    for entry, rep in blocks:
        out.extend(rep.lines(entry))
        total += len(rep.checks)
        passed += sum(c.ok for c in rep.checks)
    if summary:
        out.append(f"SUMMARY {passed}/{total}")
    return "\n".join(out) + "\n"
