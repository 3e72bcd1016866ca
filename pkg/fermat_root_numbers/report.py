"""Flat per-run records and their JSON, CSV and text encodings.

Every root-number run flattens to one ReportRecord with fields in a fixed
order:

    ell, N, r, s, t, delta, b, ord_b, ord_c, ord_b_plus_c, branch, f,
    f_prime, w_inf, w_p, w_ell, w_global, notes

Valuations are integers, "inf" or "precision-exhausted"; fourth roots of
unity are written 1, i, -1, -i; an undetermined factor is DIAGNOSTIC. In CSV
the local factors are "p:sign" pairs joined by ";" and the notes are joined
by " | ". JSON and CSV output both parse back to equal records.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import csv
import io
import json
import logging
from dataclasses import dataclass, fields
from typing import Iterable, TextIO

from fermat_root_numbers.root_numbers import RootNumberReport

logger = logging.getLogger(__name__)

NOTE_SEPARATOR = " | "


@dataclass(frozen=True)
class ReportRecord:
    ell: int
    N: int
    r: int
    s: int
    t: int
    delta: int
    b: int
    ord_b: int | str
    ord_c: int | str
    ord_b_plus_c: int | str
    branch: str
    f: int
    f_prime: int
    w_inf: str
    w_p: tuple[tuple[int, int], ...]
    w_ell: str
    w_global: int | str
    notes: tuple[str, ...]

    @classmethod
    def from_report(cls, report: RootNumberReport) -> "ReportRecord":
        p, d = report.params, report.decomposition
        return cls(
            ell=p.ell,
            N=p.N,
            r=p.r,
            s=p.s,
            t=p.t,
            delta=p.delta,
            b=d.b,
            ord_b=_valuation(d.ord_b),
            ord_c=_valuation(d.ord_c),
            ord_b_plus_c=_valuation(d.ord_b_plus_c),
            branch=str(report.classification),
            f=report.classification.f,
            f_prime=report.f_prime,
            w_inf=str(report.local_infinity),
            w_p=tuple(sorted(report.local_factors.items())),
            w_ell=str(report.local_ell),
            w_global=report.global_ if isinstance(report.global_, int) else str(report.global_),
            notes=tuple(report.notes),
        )

    def to_dict(self) -> dict:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["w_p"] = [list(pair) for pair in self.w_p]
        data["notes"] = list(self.notes)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ReportRecord":
        values = dict(data)
        values["w_p"] = tuple((int(p), int(sign)) for p, sign in values["w_p"])
        values["notes"] = tuple(values["notes"])
        return cls(**values)

    def to_row(self) -> list[str]:
        row = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "w_p":
                value = ";".join(f"{p}:{sign}" for p, sign in value)
            elif f.name == "notes":
                value = NOTE_SEPARATOR.join(value)
            row.append(str(value))
        return row

    @classmethod
    def from_row(cls, row: list[str]) -> "ReportRecord":
        values = dict(zip(FIELDS, row))
        for name in ("ell", "N", "r", "s", "t", "delta", "b", "f", "f_prime"):
            values[name] = int(values[name])
        for name in ("ord_b", "ord_c", "ord_b_plus_c", "w_global"):
            values[name] = _int_or_str(values[name])
        values["w_p"] = tuple(
            (int(p), int(sign))
            for p, sign in (pair.split(":") for pair in values["w_p"].split(";") if pair)
        )
        values["notes"] = tuple(values["notes"].split(NOTE_SEPARATOR)) if values["notes"] else ()
        return cls(**values)


FIELDS = tuple(f.name for f in fields(ReportRecord))


def _valuation(value) -> int | str:
    return value if isinstance(value, int) else str(value)


def _int_or_str(text: str) -> int | str:
    try:
        return int(text)
    except ValueError:
        return text


def write_json(records: Iterable[ReportRecord], stream: TextIO) -> None:
    json.dump([r.to_dict() for r in records], stream, indent=2)
    stream.write("\n")


def read_json(text: str) -> list[ReportRecord]:
    return [ReportRecord.from_dict(item) for item in json.loads(text)]


def write_csv(records: Iterable[ReportRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FIELDS)
    for record in records:
        writer.writerow(record.to_row())


def read_csv(text: str) -> list[ReportRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != FIELDS:
        raise ValueError(f"unexpected CSV header {header}")
    return [ReportRecord.from_row(row) for row in reader]


def write_text(records: Iterable[ReportRecord], stream: TextIO) -> None:
    for record in records:
        w_p = " ".join(f"W_{p}={sign:+d}" for p, sign in record.w_p) or "-"
        stream.write(
            f"ell={record.ell} N={record.N} (r,s,t)=({record.r},{record.s},{record.t}) "
            f"delta={record.delta}\n"
            f"  b={record.b} ord_b={record.ord_b} ord_c={record.ord_c} "
            f"ord(b+c)={record.ord_b_plus_c}\n"
            f"  branch={record.branch} f={record.f} f'={record.f_prime}\n"
            f"  W_inf={record.w_inf} {w_p} W_ell={record.w_ell} W={record.w_global}\n"
        )
        for note in record.notes:
            stream.write(f"  note: {note}\n")


WRITERS = {"json": write_json, "csv": write_csv, "text": write_text}


def write_records(records: Iterable[ReportRecord], stream: TextIO, fmt: str) -> None:
    try:
        writer = WRITERS[fmt]
    except KeyError:
        raise ValueError(f"unknown output format {fmt!r}") from None
    writer(list(records), stream)

