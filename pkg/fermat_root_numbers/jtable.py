"""J(N, f) provider: exact ell-adic values keyed by (N, f), with a flat file codec.

J(N, f) enters every wild symbol exponent but its defining formula is not
computed here. Values come from a user-supplied file or from calibration
against known global root numbers (see calibration.py).

FILE FORMAT:
One entry per line, blank lines and whole-line comments ignored:

    # N f valuation unit  # provenance
    2 2 1 2  # calibrated
    2 6 1 1  # user-supplied

An entry stands for ell^valuation * unit with 1 <= unit <= ell - 1 and
-N <= valuation <= N. A missing provenance comment means user-supplied.

ERROR REPORTING:
load() collects one CheckError per bad line and raises JTableFormatError
listing all of them, in the form

    cal.jt:3: valuation 5 outside [-2, 2] for (N, f) = (2, 6)
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

from fermat_root_numbers.errors import CheckError, JTableFormatError, MissingJEntry
from fermat_root_numbers.padic_core import PadicScalar

logger = logging.getLogger(__name__)


class Provenance(enum.Enum):
    CALIBRATED = "calibrated"
    USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class JEntry:
    valuation: int
    unit: int
    provenance: Provenance = Provenance.USER_SUPPLIED

    def to_scalar(self, ell: int, M: int) -> PadicScalar:
        return PadicScalar(ell, M, self.valuation, self.unit % ell**M)


@dataclass
class JTable:
    ell: int
    entries: dict[tuple[int, int], JEntry] = field(default_factory=dict)

    def check_entry(self, N: int, f: int, entry: JEntry) -> list[str]:
        """Messages for every invariant the entry violates."""
        problems = []
        if N < 1 or f < 1:
            problems.append(f"(N, f) = ({N}, {f}) must be positive")
        if not -N <= entry.valuation <= N:
            problems.append(
                f"valuation {entry.valuation} outside [{-N}, {N}] for (N, f) = ({N}, {f})"
            )
        if not 1 <= entry.unit <= self.ell - 1:
            problems.append(
                f"unit {entry.unit} outside 1..{self.ell - 1} for (N, f) = ({N}, {f})"
            )
        return problems

    def set(self, N: int, f: int, entry: JEntry) -> None:
        problems = self.check_entry(N, f, entry)
        if problems:
            raise ValueError("; ".join(problems))
        self.entries[(N, f)] = entry

    def get(self, N: int, f: int) -> JEntry:
        try:
            return self.entries[(N, f)]
        except KeyError:
            raise MissingJEntry(f"no J value for (N, f) = ({N}, {f})") from None

    def __contains__(self, key: tuple[int, int]) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def dumps(self) -> str:
        lines = [f"# J table for ell = {self.ell}", "# N f valuation unit  # provenance"]
        for (N, f), entry in sorted(self.entries.items()):
            lines.append(f"{N} {f} {entry.valuation} {entry.unit}  # {entry.provenance.value}")
        return "\n".join(lines) + "\n"

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")
        logger.debug("Wrote %d J entries to %s", len(self), path)

    @classmethod
    def loads(cls, text: str, ell: int, filename: str = "<string>") -> "JTable":
        table = cls(ell)
        errors: list[CheckError] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            body, _, comment = raw.partition("#")
            body = body.strip()
            if not body:
                continue
            source = {"filename": filename, "lineno": lineno}

            fields = body.split()
            if len(fields) != 4:
                errors.append(
                    CheckError(source, f"expected 'N f valuation unit', got {body!r}", raw)
                )
                continue
            try:
                N, f, valuation, unit = (int(x) for x in fields)
            except ValueError:
                errors.append(CheckError(source, f"non-integer field in {body!r}", raw))
                continue

            tag = comment.strip()
            try:
                provenance = Provenance(tag) if tag else Provenance.USER_SUPPLIED
            except ValueError:
                errors.append(CheckError(source, f"unknown provenance {tag!r}", raw))
                continue

            entry = JEntry(valuation, unit, provenance)
            problems = table.check_entry(N, f, entry)
            if (N, f) in table:
                problems.append(f"duplicate entry for (N, f) = ({N}, {f})")
            if problems:
                errors.extend(CheckError(source, p, raw) for p in problems)
                continue
            table.entries[(N, f)] = entry

        if errors:
            logger.warning("Found %d errors in J table %s", len(errors), filename)
            raise JTableFormatError(
                "\n".join(f"{e.source['filename']}:{e.source['lineno']}: {e.message}" for e in errors)
            )
        logger.debug("Loaded %d J entries from %s", len(table), filename)
        return table

    @classmethod
    def load(cls, path: str | Path, ell: int) -> "JTable":
        path = Path(path)
        if not path.exists():
            raise JTableFormatError(f"J table file not found: {path}")
        return cls.loads(path.read_text(encoding="utf-8"), ell, filename=str(path))
