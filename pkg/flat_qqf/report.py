import hashlib
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple


@dataclass(frozen=True)
class Failure:
    """One failed check: its name, the basis labels that witness it, and a detail string."""
    check: str
    witness: Tuple[str, ...] = ()
    detail: str = ""

    def line(self) -> str:
        text = f"FAIL {self.check}"
        if self.witness:
            text += f" at ({', '.join(self.witness)})"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    failures: Tuple[Failure, ...] = ()
    notes: Tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def checks(self) -> List[str]:
        seen = []
        for failure in self.failures:
            if failure.check not in seen:
                seen.append(failure.check)
        return seen

    def has_failure(self, check: str) -> bool:
        return any(f.check == check for f in self.failures)

    def first(self, check: Optional[str] = None) -> Optional[Failure]:
        for failure in self.failures:
            if check is None or failure.check == check:
                return failure
        return None

    def witnesses(self, check: str) -> List[Tuple[str, ...]]:
        return [f.witness for f in self.failures if f.check == check]

    def lines(self) -> List[str]:
        out = [f"report {self.subject}: {'ok' if self.ok else f'{len(self.failures)} failure(s)'}"]
        out.extend(f.line() for f in self.failures)
        out.extend(f"NOTE {note}" for note in self.notes)
        return out

    def digest(self) -> str:
        """Stable sha256 over the canonical report lines."""
        return hashlib.sha256("\n".join(self.lines()).encode("utf-8")).hexdigest()

    @classmethod
    def combine(cls, subject: str, reports: Iterable["ValidationReport"]) -> "ValidationReport":
        failures: List[Failure] = []
        notes: List[str] = []
        for report in reports:
            failures.extend(report.failures)
            notes.extend(report.notes)
        return cls(subject=subject, failures=tuple(failures), notes=tuple(notes))


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer that keeps the first witness of a "no"."""
    ok: bool
    witness: Tuple[str, ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok
