"""Command line interface.

    knottorsion compute JOB [--adjoint] [--covers M] [--precision D]
    knottorsion charvar NAME [--at POINT | --slopes]
    knottorsion alexander PRESENTATION-OR-JOB
    knottorsion covers JOB [--max M]
    knottorsion selftest [--quick | --full] [--seed N]

JOB is a path to a job document or the name of a packaged fixture.  Reports
are JSON on standard output (or --output).  Exit codes: 0 success,
1 invalid input, 2 computational failure.
"""

import argparse
import logging
import sys
import time

from . import __version__
from .algebra import FieldError
from .charvar import (
    analyze_ideal_point,
    curve_representation,
    fixture_names,
    format_slope,
    load_fixture_dict,
    parse_point,
    peripheral_traces,
    universal_torsion,
)
from .diagnostics import DEFAULT_M_MAX, cyclic_cover_torsion, diagnose
from .io import (
    CURVE_SCHEMA,
    REPORT_SCHEMA,
    JobError,
    dumps,
    error_record,
    error_report,
    parse_job,
    precision_of,
    provenance,
    read_document,
    serialize_diagnostics,
    serialize_laurent,
    serialize_point,
)
from .presentation import PresentationError, parse_presentation
from .torsion import TorsionError, adjoint_torsion, alexander_polynomial, torsion_polynomial

log = logging.getLogger("knottorsion")

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2


class CommandError(Exception):
    def __init__(self, code, record):
        super().__init__(record["message"])
        self.code = code
        self.record = record


def _invalid(message, **extra):
    return CommandError(EXIT_INVALID, error_record("validation", message, **extra))


# -- compute -------------------------------------------------------------------

def covers_table(p, m_max):
    K = p.field
    return [{"m": m, "value": K.format(cyclic_cover_torsion(p, m))} for m in range(1, m_max + 1)]


def compute_job(data, text, *, precision=None, adjoint=False, covers=0, m_max=DEFAULT_M_MAX):
    job = parse_job(data)
    wanted = job.diagnostics
    adjoint = adjoint or bool(wanted.get("adjoint"))
    covers = covers or int(wanted.get("covers", 0))
    rep = job.build(precision)
    K = rep.field
    T = torsion_polynomial(job.presentation, rep)
    report = {
        "schema": REPORT_SCHEMA,
        "status": "ok",
        "kind": "torsion",
        "name": job.name,
        "presentation": job.presentation.format(),
        "field": K.describe(),
        "torsion": serialize_laurent(T.poly),
        "diagnostics": serialize_diagnostics(K, diagnose(T, m_max)),
    }
    if adjoint:
        A = adjoint_torsion(job.presentation, rep)
        report["adjoint"] = {
            "torsion": serialize_laurent(A.poly),
            "sign_convention": A.sign_convention,
            "diagnostics": serialize_diagnostics(K, diagnose(A)),
            "row": A.row,
        }
    if covers:
        report["covers"] = covers_table(T.poly, covers)
    report["provenance"] = provenance(text, precision_of(K), [T.row, T.check_row])
    return report


def compute_curve(data, text):
    """compute on a character variety fixture: the universal torsion."""
    fix = load_fixture_dict(data)
    T = universal_torsion(fix)
    report = {
        "schema": REPORT_SCHEMA,
        "status": "ok",
        "kind": "universal_torsion",
        "name": fix.name,
        "presentation": fix.presentation.format(),
        "field": fix.field.describe(),
        "torsion": serialize_laurent(T),
        "matches_fixture": fix.expected_torsion is None or T == fix.expected_torsion,
    }
    cr = curve_representation(fix)
    if cr is not None:
        rep, L, _ = cr
        TL = torsion_polynomial(fix.presentation, rep)
        report["curve_torsion"] = serialize_laurent(TL.poly)
    report["provenance"] = provenance(text)
    return report


def cmd_compute(args):
    data, text = read_document(args.job)
    if data.get("kind") == "curve" and data.get("schema") == CURVE_SCHEMA:
        return compute_curve(data, text)
    return compute_job(data, text, precision=args.precision, adjoint=args.adjoint,
                       covers=args.covers, m_max=args.m_max)


# -- charvar ------------------------------------------------------------------------

def _ideal_row(fix, T, traces, pt):
    r = analyze_ideal_point(fix, T, traces, pt)
    K = fix.field.base
    coeffs = {}
    for k, (kind, v) in sorted(r.coefficients.items()):
        coeffs[str(k)] = {"pole": v} if kind == "pole" else {"value": K.format(v)}
    row = {
        "point": serialize_point(pt),
        "coefficients": coeffs,
        "identically_zero": r.identically_zero,
        "lead_coefficient": None if r.lead_coefficient is None else K.format(r.lead_coefficient),
    }
    if r.pole_orders:
        row["pole_orders"] = {"mu": r.pole_orders[0], "lambda": r.pole_orders[1],
                              "mu_lambda": r.pole_orders[2]}
        row["boundary_slope"] = None if r.boundary_slope is None else list(r.boundary_slope)
        row["boundary_slope_text"] = format_slope(r.boundary_slope)
    return row


def cmd_charvar(args):
    if args.name not in fixture_names():
        raise _invalid(f"unknown fixture {args.name!r}; known: {', '.join(fixture_names())}")
    data, text = read_document(args.name)
    if data.get("kind") != "curve":
        raise _invalid(f"fixture {args.name!r} is not a character variety curve")
    fix = load_fixture_dict(data)
    T = universal_torsion(fix)
    traces = peripheral_traces(fix) if fix.peripheral else {}
    report = {
        "schema": REPORT_SCHEMA,
        "status": "ok",
        "kind": "charvar",
        "name": fix.name,
        "field": fix.field.describe(),
        "torsion": serialize_laurent(T),
    }
    if traces:
        report["peripheral_traces"] = {k: fix.field.format(v) for k, v in sorted(traces.items())}
    if args.at is not None:
        try:
            pt = parse_point(args.at)
        except (ValueError, ZeroDivisionError):
            raise _invalid(f"cannot parse point {args.at!r}") from None
        report["points"] = [_ideal_row(fix, T, traces, pt)]
    else:
        rows = [_ideal_row(fix, T, traces, pt) for pt in fix.ideal_points]
        if args.slopes:
            report["slopes"] = [
                {"point": r["point"], "slope": r.get("boundary_slope"),
                 "text": r.get("boundary_slope_text", "undetermined")} for r in rows]
        else:
            report["points"] = rows
    report["provenance"] = provenance(text)
    return report


# -- alexander and covers --------------------------------------------------------------

def cmd_alexander(args):
    source = args.source
    if source.lstrip().startswith("<"):
        pres, text = parse_presentation(source), source
    else:
        data, text = read_document(source)
        pres = parse_presentation(data["presentation"])
    delta = alexander_polynomial(pres)
    return {
        "schema": REPORT_SCHEMA,
        "status": "ok",
        "kind": "alexander",
        "presentation": pres.format(),
        "alexander": serialize_laurent(delta),
        "provenance": provenance(text),
    }


def cmd_covers(args):
    data, text = read_document(args.job)
    job = parse_job(data)
    rep = job.build(args.precision)
    T = torsion_polynomial(job.presentation, rep)
    return {
        "schema": REPORT_SCHEMA,
        "status": "ok",
        "kind": "covers",
        "name": job.name,
        "torsion": serialize_laurent(T.poly),
        "covers": covers_table(T.poly, args.max),
        "provenance": provenance(text, precision_of(rep.field), [T.row, T.check_row]),
    }


# -- selftest ------------------------------------------------------------------------

def cmd_selftest(args):
    from . import selftest
    results = selftest.run(full=args.full, seed=args.seed)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        line = f"{mark}  {r.name}"
        if not r.passed:
            line += f": {r.detail}"
        print(line, file=sys.stderr)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"({'full' if args.full else 'quick'}, seed {args.seed})", file=sys.stderr)
    return {
        "schema": REPORT_SCHEMA,
        "status": "ok" if not failed else "failed",
        "kind": "selftest",
        "mode": "full" if args.full else "quick",
        "seed": args.seed,
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }


# -- entry point -----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="knottorsion", description="Twisted torsion polynomials of knot groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="torsion polynomial and diagnostics of a job")
    p.add_argument("job")
    p.add_argument("--precision", type=int, help="override the working precision (digits)")
    p.add_argument("--adjoint", action="store_true", help="also compute the adjoint torsion")
    p.add_argument("--covers", type=int, default=0, metavar="M", help="cyclic cover torsions for m = 1..M")
    p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX, help="roots of unity checked for nonvanishing")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("charvar", parents=[common], help="universal torsion over a character variety curve")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--at", metavar="POINT", help="evaluate at a point of the u-line (or inf)")
    g.add_argument("--slopes", action="store_true", help="boundary slopes at the ideal points")
    p.set_defaults(func=cmd_charvar)

    p = sub.add_parser("alexander", parents=[common], help="Alexander polynomial of a presentation")
    p.add_argument("source", help="presentation text like '<a,b | aBAbaBabAB>' or a job")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("covers", parents=[common], help="cyclic cover torsion table")
    p.add_argument("job")
    p.add_argument("--max", type=int, default=12, metavar="M")
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_covers)

    p = sub.add_parser("selftest", parents=[common], help="run the seeded property checks")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quick", dest="full", action="store_false", default=False)
    g.add_argument("--full", dest="full", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def _write(report, path):
    text = dumps(report)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "precision", None) is not None and args.precision < 15:
        parser.error("--precision must be at least 15")
    if getattr(args, "covers", 0) < 0 or getattr(args, "max", 1) < 1:
        parser.error("cover counts must be positive")
    start = time.perf_counter()
    try:
        report = args.func(args)
        code = EXIT_OK if report.get("status") == "ok" else EXIT_INVALID
    except CommandError as exc:
        report, code = error_report([exc.record]), exc.code
    except JobError as exc:
        report, code = error_report([exc.record()]), EXIT_INVALID
    except (PresentationError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        report, code = error_report([error_record("validation", str(msg))]), EXIT_INVALID
    except (TorsionError, FieldError, ArithmeticError) as exc:
        report, code = error_report([error_record("computation", str(exc), type=type(exc).__name__)]), EXIT_COMPUTE
    log.debug("%s finished in %.2fs", args.command, time.perf_counter() - start)
    if code:
        print(f"knottorsion: {report['errors'][0]['message'] if 'errors' in report else 'checks failed'}",
              file=sys.stderr)
    _write(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
