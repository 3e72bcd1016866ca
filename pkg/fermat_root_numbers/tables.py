"""Published root-number tables for ell = 3, N = 2 and checks against them.

The essential (r, s, t) triples in this regime are (3, 5, 1), (3, 4, 2) and
(6, 2, 1). For each, delta runs over 1..8 without the multiples of 3, and a
row records ord(b), ord(c), ord(b+c) and the global root number.

verify_valuation_rows() recomputes the valuations and returns one CheckError
per mismatching cell:

    table-2 delta=4: ord_c computed 4, expected 5
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import logging
from dataclasses import dataclass

from fermat_root_numbers.calibration import Observation
from fermat_root_numbers.errors import CheckError
from fermat_root_numbers.padic_core import CurveParams, value_of_a

logger = logging.getLogger(__name__)

ELL = 3
N = 2
DELTAS = (1, 2, 4, 5, 7, 8)


@dataclass(frozen=True)
class TableRow:
    delta: int
    ord_b: int
    ord_c: int
    ord_b_plus_c: int
    global_: int


@dataclass(frozen=True)
class RootNumberTable:
    label: str
    triple: tuple[int, int, int]
    rows: tuple[TableRow, ...]

    def params(self, row: TableRow) -> CurveParams:
        return CurveParams(ELL, N, *self.triple, row.delta)


def _rows(ord_c, ord_b_plus_c, signs) -> tuple[TableRow, ...]:
    return tuple(
        TableRow(delta, 1, c, bc, w)
        for delta, c, bc, w in zip(DELTAS, ord_c, ord_b_plus_c, signs)
    )


TABLES = (
    RootNumberTable(
        "table-1",
        (3, 5, 1),
        _rows((1, 3, 1, 1, 2, 1), (3, 1, 1, 1, 1, 2), (-1, 1, -1, -1, -1, 1)),
    ),
    RootNumberTable(
        "table-2",
        (3, 4, 2),
        _rows((1, 1, 5, 2, 1, 1), (2, 1, 1, 1, 1, 2), (-1, -1, 1, 1, 1, 1)),
    ),
    RootNumberTable(
        "table-3",
        (6, 2, 1),
        _rows((1, 1, 4, 2, 1, 1), (2, 1, 1, 1, 1, 2), (1, 1, 1, -1, -1, -1)),
    ),
)


def get_table(label: str) -> RootNumberTable:
    for table in TABLES:
        if table.label == label:
            return table
    raise KeyError(f"unknown table {label!r}; known: {[t.label for t in TABLES]}")


def table_observations(labels: list[str] | None = None) -> list[Observation]:
    selected = TABLES if labels is None else [get_table(label) for label in labels]
    return [
        Observation(table.params(row), row.global_, table.label)
        for table in selected
        for row in table.rows
    ]


def verify_valuation_rows(precision: int | None = None) -> list[CheckError]:
    """Recompute (ord b, ord c, ord(b+c)) for every published row."""
    errors: list[CheckError] = []
    checked = 0
    for table in TABLES:
        for row in table.rows:
            params = table.params(row)
            d = value_of_a(params, precision)
            checked += 1
            source = {"table": table.label, "delta": row.delta}
            for name, computed, expected in (
                ("ord_b", d.ord_b, row.ord_b),
                ("ord_c", d.ord_c, row.ord_c),
                ("ord_b_plus_c", d.ord_b_plus_c, row.ord_b_plus_c),
            ):
                if computed != expected:
                    errors.append(
                        CheckError(
                            source,
                            f"{table.label} delta={row.delta}: {name} computed {computed}, "
                            f"expected {expected}",
                            d,
                        )
                    )
    if errors:
        logger.warning("Found %d valuation-row mismatches", len(errors))
    else:
        logger.debug("All %d valuation rows match", checked)
    return errors
