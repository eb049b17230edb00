"""Report models for axiom checks and verification runs."""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    """A single failed axiom instance.

    Attributes:
        axiom: Tag of the violated axiom (e.g. "S2", "commutative").
        witness: Element indices that reproduce the violation.
    """

    axiom: str
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness)}


@dataclass
class AxiomReport:
    """Outcome of an exhaustive axiom check.

    Invariants:
        - ok iff violations is empty
        - each witness, re-checked against the structure, reproduces its violation
    """

    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, *witness: int) -> None:
        self.violations.append(Violation(axiom, tuple(int(w) for w in witness)))

    def axioms_violated(self) -> list[str]:
        """Distinct violated axiom tags, in first-seen order."""
        return list(dict.fromkeys(v.axiom for v in self.violations))

    def first(self, axiom: str) -> Violation | None:
        return next((v for v in self.violations if v.axiom == axiom), None)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass(frozen=True)
class Failure:
    """A verification instance that did not satisfy the property.

    Attributes:
        instance: Human-readable description of the checked instance.
        witness: JSON-compatible data reproducing the failure.
    """

    instance: str
    witness: Any

    def to_json(self) -> dict:
        return {"instance": self.instance, "witness": self.witness}


@dataclass
class VerificationReport:
    """Outcome of a property verified over a finite universe of instances.

    Invariants:
        - failures empty iff the property holds on the checked universe
    """

    property_name: str
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    findings: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, instance: str, witness: Any) -> None:
        self.failures.append(Failure(instance, witness))

    def merge(self, other: "VerificationReport") -> None:
        """Append another report's counts and failures (order preserved)."""
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        self.findings.extend(other.findings)

    def to_json(self) -> dict:
        data = {
            "property": self.property_name,
            "ok": self.ok,
            "instances_checked": self.instances_checked,
            "failures": [f.to_json() for f in self.failures],
        }
        if self.findings:
            data["findings"] = [f.to_json() for f in self.findings]
        return data
