"""Truncation caps and verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class TruncationPolicy:
    """Caps within which an identity is certified.

    ``max_weight``
        weight cap W on words of the completed symmetric algebra used as test
        arguments (and on the weight of bracket outputs they produce).
    ``max_lambda``
        highest power L of the deformation parameter that is computed.
    ``max_arity``
        arity cap A: the largest stored bracket arity and the largest number
        of arguments fed to the morphism checks.
    """

    max_weight: int = 4
    max_lambda: int = 3
    max_arity: int = 4

    def __post_init__(self) -> None:
        for name in ("max_weight", "max_lambda", "max_arity"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def describe(self) -> str:
        return f"W={self.max_weight} L={self.max_lambda} A={self.max_arity}"

    def as_dict(self) -> dict[str, int]:
        return {"W": self.max_weight, "L": self.max_lambda, "A": self.max_arity}


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Witness:
    """A located nonzero value that should have vanished."""

    component: str
    word: str
    value: str

    def as_dict(self) -> dict[str, str]:
        return {"component": self.component, "word": self.word, "value": self.value}


@dataclass
class VerificationReport:
    """Outcome of one check: every failure within the caps, never just the first."""

    name: str
    policy: TruncationPolicy
    checked: int = 0
    failures: list[Witness] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, component: str, word: str, value: object) -> None:
        self.failures.append(Witness(component, word, str(value)))

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        self.checked += other.checked
        for w in other.failures:
            self.failures.append(Witness(prefix + w.component, w.word, w.value))
        self.notes.extend(other.notes)

    def sort(self) -> None:
        self.failures.sort(key=lambda w: (w.component, w.word, w.value))

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} witnesses)"
        return f"{self.name}: {status}, {self.checked} checks, caps {self.policy.describe()}"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "policy": self.policy.as_dict(),
            "checked": self.checked,
            "failures": [w.as_dict() for w in self.failures],
            "notes": list(self.notes),
        }
