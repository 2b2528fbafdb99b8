"""Pass/fail reports shared by the axiom validators."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool | None  # None: assumed, not checked
    witness: tuple | None = None
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed is None:
            return "assumed"
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            line = f"{c.name} {c.status}"
            if c.passed is False and c.detail:
                line += f" witness {c.detail}"
            out.append(line)
        return out
