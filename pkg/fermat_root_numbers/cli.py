"""Command-line front end.

USAGE:
    fermat-root-numbers rootnumber --ell 3 --N 2 --r 3 --s 5 --t 1 --delta 1 --j-table cal.jt
    fermat-root-numbers sweep --ell 3 --N 2 --r 3 --s 5 --t 1 --delta-range 1..8 --format csv
    fermat-root-numbers verify-tables
    fermat-root-numbers calibrate-j --tables table-2 table-3 --j-table out.jt
    fermat-root-numbers verify-appendix --seed 7
    fermat-root-numbers decompose --ell 3 --N 2 --r 3 --s 5 --t 1 --delta 2
    fermat-root-numbers conductor --ell 3 --N 2 --r 6 --s 2 --t 1 --delta 1
    fermat-root-numbers triples --ell 3 --N 2

Every command also takes --config run.yaml (see config.py), --format
json|csv|text and -v/--verbose.

EXIT STATUS:
    0  success
    1  a hard check failed (valuation rows, appendix identities, controls)
    2  invalid parameters, configuration or J table
    3  precision exhausted after retries

Reports go to standard output; logs and error listings go to standard error.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import argparse
import csv
import json
import logging
import sys
from typing import TextIO

from fermat_root_numbers.calibration import (
    CalibrationReport,
    Observation,
    calibrate_j,
    load_observations,
)
from fermat_root_numbers.conductors import first_factor_case, phi_exponent
from fermat_root_numbers.config import Command, RunConfig, build_config, parse_delta_range
from fermat_root_numbers.curve_models import (
    Perturbation,
    genus_plane_model,
    plane_curve_genus,
    plane_model_degree,
    verify_plane_model,
    verify_rationality,
)
from fermat_root_numbers.errors import (
    ConfigError,
    InvalidParams,
    JTableFormatError,
    MissingJEntry,
    PrecisionExhausted,
)
from fermat_root_numbers.jtable import JTable
from fermat_root_numbers.padic_core import CurveParams, admissible_triples
from fermat_root_numbers.report import ReportRecord, write_records
from fermat_root_numbers.root_numbers import (
    global_root_number,
    resolve_decomposition,
    sweep,
)
from fermat_root_numbers.tables import TABLES, table_observations, verify_valuation_rows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_PRECISION = 3

APPENDIX_PRIMES = (3, 5, 7)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermat-root-numbers",
        description="root numbers of twisted Fermat quotient curves with ell^(N-1) || r",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file with default option values")
    common.add_argument("--format", choices=["json", "csv", "text"], help="output format")
    common.add_argument("--precision", type=int, help="working precision M (ell-adic digits)")
    common.add_argument("--lenient", action="store_true", default=None,
                        help="use the unit part of non-unit symbol arguments")
    common.add_argument("--workers", type=int, help="thread pool size for sweeps and calibration")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    params = argparse.ArgumentParser(add_help=False)
    for name in ("ell", "N", "r", "s", "t"):
        params.add_argument(f"--{name}", type=int)

    def add(command: Command, help_text: str, *parents) -> argparse.ArgumentParser:
        return subparsers.add_parser(command.value, help=help_text, parents=[common, *parents])

    p = add(Command.ROOTNUMBER, "global root number at one point", params)
    p.add_argument("--delta", type=int)
    p.add_argument("--j-table", dest="j_table", help="J table file")

    p = add(Command.SWEEP, "root numbers over a range of delta", params)
    p.add_argument("--delta-range", dest="delta_range", help="inclusive range lo..hi")
    p.add_argument("--all-triples", dest="all_triples", action="store_true", default=None,
                   help="sweep every admissible (r, s, t) for --ell and --N")
    p.add_argument("--j-table", dest="j_table", help="J table file")

    add(Command.VERIFY_TABLES, "check the published ell = 3, N = 2 tables")

    p = add(Command.CALIBRATE_J, "fit J values to known root numbers")
    p.add_argument("--observations", help="YAML file of observations")
    p.add_argument("--tables", nargs="+", choices=[t.label for t in TABLES],
                   help="use published tables as observations")
    p.add_argument("--j-table", dest="j_table", help="write the fitted table here")

    p = add(Command.VERIFY_APPENDIX, "check the curve-model identities")
    p.add_argument("--ell", type=int, help="restrict to one prime")
    p.add_argument("--seed", type=int, help="seed for randomized checks")

    p = add(Command.DECOMPOSE, "decompose a = epsilon ell^b (1 + c)", params)
    p.add_argument("--delta", type=int)

    p = add(Command.CONDUCTOR, "conductor branch and exponents", params)
    p.add_argument("--delta", type=int)

    p = add(Command.TRIPLES, "list admissible (r, s, t)")
    p.add_argument("--ell", type=int)
    p.add_argument("--N", type=int)
    return parser


def _params(config: RunConfig, with_delta: bool = True) -> CurveParams:
    names = ["ell", "N", "r", "s", "t"] + (["delta"] if with_delta else [])
    missing = [n for n in names if getattr(config, n) is None]
    if missing:
        raise ConfigError(f"{config.command.value} needs {', '.join('--' + n for n in missing)}")
    return CurveParams(
        config.ell, config.N, config.r, config.s, config.t, config.delta if with_delta else 1
    )


def _j_table(config: RunConfig, ell: int) -> JTable:
    if config.j_table:
        return JTable.load(config.j_table, ell)
    return JTable(ell)


def _emit_mapping(data: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump(data, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in data.items():
            writer.writerow([key, json.dumps(value)])
    else:
        for key, value in data.items():
            out.write(f"{key}: {value}\n")


def _calibration_summary(report: CalibrationReport, observations: list[Observation]) -> dict:
    return {
        "matched": report.match_count,
        "total": report.total,
        "table": {
            f"{N},{f}": [e.valuation, e.unit] for (N, f), e in sorted(report.table.entries.items())
        },
        "tied_assignments": report.tied_assignments,
        "ties": {f"{N},{f}": [list(c) for c in cs] for (N, f), cs in report.ties.items()},
        "matches": [
            {
                "label": o.label,
                "delta": o.params.delta,
                "expected": o.expected,
                "predicted": str(pred),
                "match": ok,
            }
            for o, pred, ok in zip(observations, report.predicted, report.matches)
        ],
        "conflicts": [
            {
                "key": f"{c.key[0]},{c.key[1]}",
                "admissible": {label: sorted(map(list, s)) for label, s in c.admissible_by_label.items()},
            }
            for c in report.conflicts
        ],
    }


def run_rootnumber(config: RunConfig, out: TextIO) -> int:
    params = _params(config)
    report = global_root_number(
        params, _j_table(config, params.ell), precision=config.precision, lenient=config.lenient
    )
    write_records([ReportRecord.from_report(report)], out, config.format)
    return EXIT_OK


def run_sweep(config: RunConfig, out: TextIO) -> int:
    if config.delta_range is None:
        raise ConfigError("sweep needs --delta-range lo..hi")
    if config.all_triples:
        if config.ell is None or config.N is None:
            raise ConfigError("sweep --all-triples needs --ell and --N")
        triples = admissible_triples(config.ell, config.N)
    else:
        base = _params(config, with_delta=False)
        triples = [(base.r, base.s, base.t)]
    lo, hi = config.delta_range
    jt = _j_table(config, config.ell)

    records = []
    for r, s, t in triples:
        points = sweep(
            config.ell, config.N, r, s, t,
            range(lo, hi + 1),
            jt,
            precision=config.precision,
            lenient=config.lenient,
            workers=config.workers,
        )
        for point in points:
            if point.note:
                print(point.note, file=sys.stderr)
        records.extend(ReportRecord.from_report(p.report) for p in points if p.report is not None)
    write_records(records, out, config.format)
    return EXIT_OK


def run_verify_tables(config: RunConfig, out: TextIO) -> int:
    errors = verify_valuation_rows(config.precision)
    for error in errors:
        print(error.message, file=sys.stderr)

    summary: dict = {"valuation_rows": 3 * 6, "valuation_mismatches": len(errors)}
    for table in TABLES:
        report = calibrate_j(table_observations([table.label]), lenient=config.lenient,
                             precision=config.precision, workers=config.workers)
        summary[f"calibration {table.label}"] = f"{report.match_count}/{report.total}"
    joint = table_observations(["table-2", "table-3"])
    report = calibrate_j(joint, lenient=config.lenient, precision=config.precision,
                         workers=config.workers)
    summary["calibration table-2+table-3"] = f"{report.match_count}/{report.total}"
    summary["conflicting keys"] = [f"{N},{f}" for (N, f) in (c.key for c in report.conflicts)]

    _emit_mapping(summary, config.format, out)
    return EXIT_FAILED if errors else EXIT_OK


def run_calibrate_j(config: RunConfig, out: TextIO) -> int:
    if config.observations:
        observations = load_observations(config.observations)
    else:
        try:
            observations = table_observations(list(config.tables) if config.tables else None)
        except KeyError as e:
            raise ConfigError(e.args[0]) from None
    report = calibrate_j(
        observations, lenient=config.lenient, precision=config.precision, workers=config.workers
    )
    if config.j_table:
        report.table.dump(config.j_table)
    _emit_mapping(_calibration_summary(report, observations), config.format, out)
    return EXIT_OK


def run_verify_appendix(config: RunConfig, out: TextIO) -> int:
    primes = (config.ell,) if config.ell else APPENDIX_PRIMES
    results: dict = {}
    failed = False
    for ell in primes:
        rationality = verify_rationality(ell, 2)
        plane = verify_plane_model(ell, seed=config.seed)
        controls = {
            perturbation.value: (
                verify_rationality(ell, 2, perturbation=perturbation).holds,
                verify_plane_model(ell, perturbation=perturbation, seed=config.seed).holds,
            )
            for perturbation in Perturbation
        }
        genus = genus_plane_model(ell)
        degree_genus = plane_curve_genus(plane_model_degree(ell))
        failed |= not rationality.holds or not plane.holds or genus != degree_genus
        failed |= any(r or p for r, p in controls.values())
        results[f"ell={ell}"] = {
            "rationality": rationality.holds,
            "plane_model": plane.holds,
            "plane_method": plane.method,
            "seed": plane.seed,
            "failure_log2": plane.failure_log2,
            "controls_rejected": all(not r and not p for r, p in controls.values()),
            "genus": genus,
            "plane_degree_genus": degree_genus,
        }
    _emit_mapping(results, config.format, out)
    return EXIT_FAILED if failed else EXIT_OK


def run_decompose(config: RunConfig, out: TextIO) -> int:
    params = _params(config)
    d, _, M = resolve_decomposition(params, config.precision)
    _emit_mapping(
        {
            "precision": M,
            "epsilon": d.epsilon,
            "b": d.b,
            "c": d.c,
            "ord_b": str(d.ord_b),
            "ord_c": str(d.ord_c),
            "ord_b_plus_c": str(d.ord_b_plus_c),
            "w": str(d.w),
        },
        config.format,
        out,
    )
    return EXIT_OK


def run_conductor(config: RunConfig, out: TextIO) -> int:
    params = _params(config)
    d, cls, _ = resolve_decomposition(params, config.precision)
    case = first_factor_case(cls, d.ord_c, d.ord_b_plus_c, params.ell, params.N)
    _emit_mapping(
        {
            "branch": str(cls),
            "w": str(cls.w),
            "f": cls.f,
            "f_prime": phi_exponent(cls),
            "first_factor": case.value,
        },
        config.format,
        out,
    )
    return EXIT_OK


def run_triples(config: RunConfig, out: TextIO) -> int:
    if config.ell is None or config.N is None:
        raise ConfigError("triples needs --ell and --N")
    triples = admissible_triples(config.ell, config.N)
    _emit_mapping({"count": len(triples), "triples": [list(t) for t in triples]}, config.format, out)
    return EXIT_OK


HANDLERS = {
    Command.ROOTNUMBER: run_rootnumber,
    Command.SWEEP: run_sweep,
    Command.VERIFY_TABLES: run_verify_tables,
    Command.CALIBRATE_J: run_calibrate_j,
    Command.VERIFY_APPENDIX: run_verify_appendix,
    Command.DECOMPOSE: run_decompose,
    Command.CONDUCTOR: run_conductor,
    Command.TRIPLES: run_triples,
}


def run(config: RunConfig, out: TextIO | None = None) -> int:
    """Execute one command and return its exit status."""
    out = sys.stdout if out is None else out
    try:
        return HANDLERS[config.command](config, out)
    except InvalidParams as e:
        for error in e.errors:
            print(f"invalid {error.source['param']}: {error.message}", file=sys.stderr)
        logger.warning("Found %d invalid parameters", len(e.errors))
        return EXIT_INVALID
    except (ConfigError, JTableFormatError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    except MissingJEntry as e:
        print(f"{e.args[0]}; pass --j-table or run calibrate-j", file=sys.stderr)
        return EXIT_INVALID
    except PrecisionExhausted as e:
        print(f"precision exhausted: {e}", file=sys.stderr)
        return EXIT_PRECISION


def main(argv: list[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    values = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
    try:
        if values.get("delta_range") is not None:
            values["delta_range"] = parse_delta_range(values["delta_range"])
        if values.get("tables") is not None:
            values["tables"] = tuple(values["tables"])
        config = build_config(args.command, values, args.config)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    return run(config, sys.stdout)
