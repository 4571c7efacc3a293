"""Command line interface: run the experiments on spec files, emit CSV.

Subcommands: semigroup, family, series, volmult, eps.  Output is CSV to
stdout or --out; --golden DIR compares the bytes against a committed golden
file and --write-golden DIR refreshes it.  Exit codes: 0 all verdicts as
expected, 1 verdict or golden mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from .experiments import (
    DEFAULT_TOL,
    convergence_report,
    dim_sequence,
    epsilon_multiplicity_report,
    length_sequence,
    semigroup_limit_report,
    volume_equals_multiplicity,
)
from .series import series_invariants
from .specfiles import (
    SpecError,
    build_family,
    build_semigroup,
    build_series,
    load_ideal,
    load_spec,
    _single,
    _int,
    _fraction,
    _int_list,
)

FIELDS = ("record", "n", "residue_class", "raw", "scaled", "scaled_float",
          "verdict", "liminf", "limsup", "limit", "detail")


def _ff(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def _fl(x) -> str:
    return "" if x is None else f"{float(x):.6f}"


def _row(**kw) -> dict:
    row = {f: "" for f in FIELDS}
    row.update(kw)
    return row


def _seq_rows(seq) -> list[dict]:
    rows = [_row(record="meta", detail=f"scaled={seq.normalization}")]
    for n, raw, scaled in seq.entries:
        rows.append(_row(record="value", n=n, raw=_ff(raw), scaled=_ff(scaled),
                         scaled_float=_fl(scaled)))
    return rows


def _verdict_rows(report) -> list[dict]:
    rows = []
    for c in report.classes:
        rows.append(_row(record="verdict",
                         residue_class=f"{c.residue} mod {c.modulus}",
                         verdict=c.verdict,
                         liminf=_ff(c.liminf_est), limsup=_ff(c.limsup_est),
                         limit=_ff(c.limit_estimate),
                         detail=f"points={c.points}"))
    return rows


def _render(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, args, golden_name: str) -> int:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "write_golden", None):
        directory = Path(args.write_golden)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / golden_name).write_text(text)
    if getattr(args, "golden", None):
        path = Path(args.golden) / golden_name
        if not path.exists():
            sys.stderr.write(f"golden file missing: {path}\n")
            return 1
        if path.read_text() != text:
            sys.stderr.write(f"golden mismatch: {path}\n")
            return 1
    return 0


def _expected_ok(expect: str | None, report, max_modulus: int) -> bool:
    if expect is None:
        return True
    return report.all_verdicts(expect, max_modulus)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_semigroup(args) -> int:
    spec = load_spec(args.spec)
    s = build_semigroup(spec)
    horizon = args.horizon or _int(spec, "horizon", 200)
    tol = args.tol or _fraction(spec, "tol", DEFAULT_TOL)
    truncs = _int_list(args.truncate) if args.truncate else \
        _int_list(_single(spec, "truncate", "1 2 4 8"))
    report = semigroup_limit_report(s, horizon, truncs, tol)
    inv = report.invariants
    rows = [_row(record="invariant", detail=(f"m={inv.m};q={inv.q};ind={inv.ind};"
                                             f"volume={inv.body.volume}"),
                 limit=_ff(inv.predicted_limit))]
    rows.append(_row(record="meta", detail=f"scaled=count/k^{inv.q}"))
    for k, count, scaled in report.entries:
        rows.append(_row(record="value", n=k, raw=count, scaled=_ff(scaled),
                         scaled_float=_fl(scaled)))
    for t in report.truncations:
        rows.append(_row(record="truncate", n=t.p, scaled=_ff(t.rescaled_limit),
                         scaled_float=_fl(t.rescaled_limit),
                         verdict="q_drop" if t.dimension_drop else "q_kept",
                         detail=f"q={t.q_truncated};gap={t.gap}"))
    ok = report.within_tol
    expect_limit = _fraction(spec, "expect_limit")
    if expect_limit is not None and inv.predicted_limit != expect_limit:
        ok = False
    rows.append(_row(record="summary", verdict="ok" if ok else "mismatch",
                     limit=_ff(inv.predicted_limit),
                     detail=f"relative_gap={report.relative_gap}"))
    code = _emit(_render(rows), args, f"{Path(args.spec).stem}__semigroup.csv")
    return code if code else (0 if ok else 1)


def _cmd_family(args) -> int:
    spec = load_spec(args.spec)
    horizon = args.horizon or _int(spec, "horizon", 210)
    family = build_family(spec, Path(args.spec).parent, horizon)
    moduli = args.moduli or _int(spec, "moduli", 4)
    tol = args.tol or _fraction(spec, "tol", DEFAULT_TOL)
    seq = length_sequence(family, horizon, threads=args.threads)
    report = convergence_report(seq, moduli, tol)
    rows = _seq_rows(seq) + _verdict_rows(report)
    expect = args.expect or _single(spec, "expect")
    ok = _expected_ok(expect, report, moduli)
    rows.append(_row(record="summary", verdict="ok" if ok else "mismatch",
                     liminf=_ff(report.liminf_est), limsup=_ff(report.limsup_est),
                     detail=f"expect={expect or 'none'}"))
    code = _emit(_render(rows), args, f"{Path(args.spec).stem}__family.csv")
    return code if code else (0 if ok else 1)


def _cmd_series(args) -> int:
    spec = load_spec(args.spec)
    horizon = args.horizon or _int(spec, "horizon", 210)
    series = build_series(spec, horizon)
    moduli = args.moduli or _int(spec, "moduli", 4)
    tol = args.tol or _fraction(spec, "tol", DEFAULT_TOL)
    exponent = _int(spec, "exponent", series.natural_exponent)
    seq = dim_sequence(series, horizon, exponent, threads=args.threads)
    report = convergence_report(seq, moduli, tol)
    inv = series_invariants(series)
    kappa = "-inf" if inv.kappa == float("-inf") else str(inv.kappa)
    rows = [_row(record="invariant",
                 detail=(f"kappa={kappa};index={inv.index_estimate};"
                         f"horizon_dependent={'yes' if inv.horizon_dependent else 'no'}"))]
    rows += _seq_rows(seq) + _verdict_rows(report)
    expect = args.expect or _single(spec, "expect")
    ok = _expected_ok(expect, report, moduli)
    rows.append(_row(record="summary", verdict="ok" if ok else "mismatch",
                     liminf=_ff(report.liminf_est), limsup=_ff(report.limsup_est),
                     detail=f"expect={expect or 'none'}"))
    code = _emit(_render(rows), args, f"{Path(args.spec).stem}__series.csv")
    return code if code else (0 if ok else 1)


def _cmd_volmult(args) -> int:
    spec = load_spec(args.spec)
    horizon = args.horizon or _int(spec, "horizon", 400)
    family = build_family(spec, Path(args.spec).parent, horizon)
    pset = _int_list(args.pset) if args.pset else _int_list(_single(spec, "pset", "1 2 4 8"))
    tol = args.tol or _fraction(spec, "tol", DEFAULT_TOL)
    report = volume_equals_multiplicity(family, pset, horizon, threads=args.threads)
    rows = [_row(record="meta",
                 detail=f"rhs=multiplicity(I_p)/p^d;lhs=d!*length/n^d at n={report.lhs_at}")]
    rows.append(_row(record="lhs", n=report.lhs_at, scaled=_ff(report.lhs),
                     scaled_float=_fl(report.lhs)))
    for p, rhs, gap in report.rows:
        rows.append(_row(record="rhs", n=p, scaled=_ff(rhs), scaled_float=_fl(rhs),
                         detail=f"gap={gap}"))
    expect_value = _fraction(spec, "expect_value")
    ok = True
    if expect_value is not None:
        ok = all(rhs == expect_value for _, rhs, _ in report.rows) and \
            abs(report.lhs - expect_value) <= tol
    rows.append(_row(record="summary", verdict="ok" if ok else "mismatch",
                     detail=f"expect_value={expect_value if expect_value is not None else 'none'}"))
    code = _emit(_render(rows), args, f"{Path(args.spec).stem}__volmult.csv")
    return code if code else (0 if ok else 1)


def _cmd_eps(args) -> int:
    ideal = load_ideal(args.ideal)
    horizon = args.horizon or 200
    moduli = args.moduli or 4
    tol = args.tol or DEFAULT_TOL
    report = epsilon_multiplicity_report(ideal, horizon, moduli, tol,
                                         threads=args.threads)
    rows = _seq_rows(report.sequence) + _verdict_rows(report.convergence)
    ok = _expected_ok(args.expect, report.convergence, moduli)
    rows.append(_row(record="summary", verdict="ok" if ok else "mismatch",
                     liminf=_ff(report.convergence.liminf_est),
                     limsup=_ff(report.convergence.limsup_est),
                     detail=f"expect={args.expect or 'none'}"))
    code = _emit(_render(rows), args, f"{Path(args.ideal).stem}__eps.csv")
    return code if code else (0 if ok else 1)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--horizon", type=int, default=None)
    sub.add_argument("--tol", type=Fraction, default=None)
    sub.add_argument("--out", default=None)
    sub.add_argument("--golden", default=None)
    sub.add_argument("--write-golden", dest="write_golden", default=None)
    sub.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedlimits",
        description="Exact limit experiments for graded semigroups, ideal "
                    "families, and monomial linear series.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("semigroup", help="invariants, level counts, truncations")
    p.add_argument("spec")
    p.add_argument("--truncate", default=None, help="comma separated levels")
    _add_common(p)
    p.set_defaults(fn=_cmd_semigroup)

    p = subs.add_parser("family", help="scaled lengths and convergence verdicts")
    p.add_argument("spec")
    p.add_argument("--moduli", type=int, default=None)
    p.add_argument("--expect", choices=("converges", "oscillates"), default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_family)

    p = subs.add_parser("series", help="scaled dimensions and verdicts")
    p.add_argument("spec")
    p.add_argument("--moduli", type=int, default=None)
    p.add_argument("--expect", choices=("converges", "oscillates"), default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_series)

    p = subs.add_parser("volmult", help="volume = multiplicity comparison")
    p.add_argument("spec")
    p.add_argument("--pset", default=None, help="comma separated powers")
    _add_common(p)
    p.set_defaults(fn=_cmd_volmult)

    p = subs.add_parser("eps", help="saturation length experiment on an ideal file")
    p.add_argument("ideal")
    p.add_argument("--moduli", type=int, default=None)
    p.add_argument("--expect", choices=("converges", "oscillates"), default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_eps)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (SpecError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
