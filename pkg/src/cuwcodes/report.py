"""Verification reports: named checks with pass/fail flags and witnesses."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One named condition. A failing check carries at least one witness."""

    name: str
    passed: bool
    witnesses: tuple[str, ...] = ()

    @property
    def witness(self) -> str | None:
        """First witness, or None for a passing check."""
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "witness": c.witness,
                    "witnesses": list(c.witnesses),
                }
                for c in self.checks
            ],
        }


class CheckCollector:
    """Accumulates witnesses for one named check.

    With verbose=False collection stops after the first witness so large
    exhaustive scans can short-circuit; `done` tells the caller whether
    further scanning is pointless.
    """

    def __init__(self, name: str, verbose: bool = False):
        self.name = name
        self.verbose = verbose
        self._witnesses: list[str] = []

    def fail(self, witness: str) -> None:
        if self.verbose or not self._witnesses:
            self._witnesses.append(witness)

    @property
    def done(self) -> bool:
        return bool(self._witnesses) and not self.verbose

    def as_check(self) -> Check:
        return Check(self.name, not self._witnesses, tuple(self._witnesses))
