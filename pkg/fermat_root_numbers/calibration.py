"""Fit J(N, f) values against known global root numbers.

WHAT IT DOES:
- Runs the root-number pipeline for every observation once per candidate
  J value and counts exact matches with the expected sign
- Searches each (N, f) key separately: every observation consults at most
  one key, so the per-key optimum is also the global optimum
- Reports the best table, the per-observation match vector, all tied
  candidates per key, the candidates each observation admits, and
  cross-label conflicts

SEARCH SPACE:
Strict mode searches valuations max(-2, -N)..N and units 1..ell-1. Lenient
mode ignores the J valuation when evaluating, so only valuation 0 is
searched. Ties are broken by the smallest (valuation, unit).

A conflict is a key for which every label (e.g. "table-2", "table-3") has a
nonempty set of candidates matching all of its own observations, but no
candidate matches all labels at once.

OBSERVATIONS FILE FORMAT:

    observations:
      - {ell: 3, N: 2, r: 3, s: 5, t: 1, delta: 1, expected: -1, label: table-1}
      - {ell: 3, N: 2, r: 3, s: 5, t: 1, delta: 2, expected: -1, label: table-1}
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import yaml

from fermat_root_numbers.conductors import ConductorClassification
from fermat_root_numbers.errors import ConfigError, InvalidParams
from fermat_root_numbers.jtable import JEntry, JTable, Provenance
from fermat_root_numbers.padic_core import CurveParams, UnitDecomposition
from fermat_root_numbers.root_numbers import (
    Diagnostic,
    assemble_report,
    resolve_decomposition,
)

logger = logging.getLogger(__name__)

Candidate = tuple[int, int]
Key = tuple[int, int]


@dataclass(frozen=True)
class Observation:
    params: CurveParams
    expected: int
    label: str = ""


@dataclass(frozen=True)
class _Prepared:
    observation: Observation
    decomposition: UnitDecomposition
    classification: ConductorClassification

    @property
    def key(self) -> Key | None:
        if self.classification.is_ramified:
            return (self.observation.params.N, self.classification.f)
        return None


@dataclass(frozen=True)
class Conflict:
    key: Key
    admissible_by_label: dict[str, frozenset[Candidate]]


@dataclass
class CalibrationReport:
    table: JTable
    predicted: list[int | Diagnostic]
    matches: list[bool]
    ties: dict[Key, list[Candidate]] = field(default_factory=dict)
    admissible: list[frozenset[Candidate] | None] = field(default_factory=list)
    conflicts: list[Conflict] = field(default_factory=list)

    @property
    def match_count(self) -> int:
        return sum(self.matches)

    @property
    def total(self) -> int:
        return len(self.matches)

    @property
    def tied_assignments(self) -> int:
        count = 1
        for candidates in self.ties.values():
            count *= len(candidates)
        return count


def candidates(ell: int, N: int, lenient: bool = False) -> list[Candidate]:
    """(valuation, unit) pairs searched for one key, in tie-break order."""
    valuations = [0] if lenient else range(max(-2, -N), N + 1)
    return [(v, u) for v in valuations for u in range(1, ell)]


def _predict(prep: _Prepared, table: JTable, lenient: bool) -> int | Diagnostic:
    obs = prep.observation
    report = assemble_report(
        obs.params, prep.decomposition, prep.classification, table, lenient=lenient
    )
    return report.global_


def _single_entry_table(ell: int, key: Key, candidate: Candidate) -> JTable:
    table = JTable(ell)
    table.set(*key, JEntry(*candidate, Provenance.CALIBRATED))
    return table


def _score(
    preps: list[_Prepared], ell: int, key: Key, candidate: Candidate, lenient: bool
) -> list[bool]:
    table = _single_entry_table(ell, key, candidate)
    return [_predict(p, table, lenient) == p.observation.expected for p in preps]


def _find_conflicts(
    preps: list[_Prepared], admissible: list[frozenset[Candidate] | None]
) -> list[Conflict]:
    by_key: dict[Key, dict[str, frozenset[Candidate]]] = {}
    for prep, allowed in zip(preps, admissible):
        if allowed is None:
            continue
        labels = by_key.setdefault(prep.key, {})
        label = prep.observation.label
        labels[label] = labels[label] & allowed if label in labels else allowed

    conflicts = []
    for key, labels in sorted(by_key.items()):
        if len(labels) < 2 or not all(labels.values()):
            continue
        if not frozenset.intersection(*labels.values()):
            conflicts.append(Conflict(key, dict(sorted(labels.items()))))
    return conflicts


def calibrate_j(
    observations: Sequence[Observation],
    lenient: bool = False,
    precision: int | None = None,
    workers: int | None = None,
) -> CalibrationReport:
    """Fit one J(N, f) value per ramified key against the expected signs.

    Args:
        observations: Curves with known global root numbers, all for one ell
        lenient: Ignore the J valuation when evaluating (valuation 0 only)
        precision: Starting working precision; None uses the default
        workers: Thread count for scoring candidates; None or 1 runs serially

    Returns:
        CalibrationReport with the best table, per-observation predictions,
        ties, admissible candidates and cross-label conflicts
    """
    if not observations:
        raise ValueError("calibration needs at least one observation")
    ell = observations[0].params.ell
    if any(o.params.ell != ell for o in observations):
        raise ValueError("all observations must share the same ell")

    preps = []
    for obs in observations:
        d, cls, _ = resolve_decomposition(obs.params, precision)
        preps.append(_Prepared(obs, d, cls))

    keys = sorted({p.key for p in preps if p.key is not None})
    jobs = [
        (key, candidate)
        for key in keys
        for candidate in candidates(ell, key[0], lenient=lenient)
    ]
    users = {key: [p for p in preps if p.key == key] for key in keys}

    def run(job: tuple[Key, Candidate]) -> list[bool]:
        key, candidate = job
        return _score(users[key], ell, key, candidate, lenient)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            scores = dict(zip(jobs, executor.map(run, jobs)))
    else:
        scores = {job: run(job) for job in jobs}

    table = JTable(ell)
    ties: dict[Key, list[Candidate]] = {}
    for key in keys:
        counts = {c: sum(scores[(key, c)]) for c in candidates(ell, key[0], lenient)}
        best = max(counts.values())
        ties[key] = sorted(c for c, n in counts.items() if n == best)
        table.set(*key, JEntry(*ties[key][0], Provenance.CALIBRATED))

    predicted = [_predict(p, table, lenient) for p in preps]
    matches = [pred == p.observation.expected for pred, p in zip(predicted, preps)]

    admissible: list[frozenset[Candidate] | None] = []
    for prep in preps:
        if prep.key is None:
            admissible.append(None)
            continue
        position = users[prep.key].index(prep)
        admissible.append(
            frozenset(
                c
                for c in candidates(ell, prep.key[0], lenient)
                if scores[(prep.key, c)][position]
            )
        )

    report = CalibrationReport(
        table=table,
        predicted=predicted,
        matches=matches,
        ties=ties,
        admissible=admissible,
        conflicts=_find_conflicts(preps, admissible),
    )
    if report.match_count < report.total or report.conflicts:
        logger.warning(
            "Calibration matched %d of %d observations with %d conflicting keys",
            report.match_count,
            report.total,
            len(report.conflicts),
        )
    else:
        logger.debug("Calibration matched all %d observations", report.total)
    return report


def load_observations(path: str | Path) -> list[Observation]:
    """Read observations from a YAML file (see module docstring)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Observations file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except Exception as e:
        raise ConfigError(f"Failed to load observations: {e}") from e

    items = data.get("observations") if isinstance(data, dict) else None
    if not isinstance(items, list) or not items:
        raise ConfigError(f"{path}: 'observations' must be a nonempty list")

    observations = []
    for index, item in enumerate(items):
        try:
            params = CurveParams(*(int(item[k]) for k in ("ell", "N", "r", "s", "t", "delta")))
            expected = int(item["expected"])
        except InvalidParams as e:
            raise ConfigError(f"{path}: observation {index}: {e}") from e
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{path}: observation {index} is malformed: {e}") from e
        if expected not in (1, -1):
            raise ConfigError(f"{path}: observation {index} expects {expected}, not +1 or -1")
        observations.append(Observation(params, expected, str(item.get("label", ""))))
    return observations

