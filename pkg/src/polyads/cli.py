"""Command line front end.

Subcommands cover the counting reports, monomial census dumps, the frozen
reference-table check, the appendix-style multiplicity audit, quantum
spectra from a model file, and reduced-phase-space curves. Model files are
parsed and serialized here; everything numerical is delegated.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from typing import Optional, Sequence

from .counting import totals, verify_tables
from .monomials import (
    audit_counting,
    enumerate_coupling,
    enumerate_dunham,
    monomials_to_json,
    sort_monomials,
)
from .resonance import ResonanceSpec, write_phase_curve_csv

_HEADER_KEYS = ("n", "p", "q", "order")


class ModelFileError(ValueError):
    """Model file rejected; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _parse_exps(token: str, n: int, line_no: int, allow_empty: bool) -> tuple[int, ...]:
    if token == "-":
        if not allow_empty:
            raise ModelFileError(line_no, "at least one mode:power factor needed")
        return (0,) * n
    exps = [0] * n
    for part in token.split(","):
        mode_s, sep, power_s = part.partition(":")
        if not sep:
            raise ModelFileError(line_no, f"bad factor {part!r}, expected mode:power")
        try:
            mode = int(mode_s)
            power = int(power_s)
        except ValueError:
            raise ModelFileError(line_no, f"bad factor {part!r}, expected integers") from None
        if not 1 <= mode <= n:
            raise ModelFileError(line_no, f"mode {mode} outside 1..{n}")
        if power < 1:
            raise ModelFileError(line_no, f"power {power} must be positive")
        if exps[mode - 1]:
            raise ModelFileError(line_no, f"mode {mode} repeated")
        exps[mode - 1] = power
    return tuple(exps)


def _parse_value(token: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ModelFileError(line_no, f"bad coefficient {token!r}") from None
    if not math.isfinite(value):
        raise ModelFileError(line_no, f"coefficient {token!r} is not finite")
    return value


def parse_model_text(text: str) -> "HamiltonianModel":
    """Parse model-file text. Header lines first, then one term per line."""
    from .quantum import HamiltonianModel, TermSpec

    header: dict[str, int] = {}
    terms: list[TermSpec] = []
    seen: set[tuple] = set()
    spec: Optional[ResonanceSpec] = None
    order = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            if terms:
                raise ModelFileError(line_no, "header line after the first term")
            key, _, value_s = line.partition("=")
            key = key.strip()
            if key not in _HEADER_KEYS:
                raise ModelFileError(line_no, f"unknown header key {key!r}")
            if key in header:
                raise ModelFileError(line_no, f"duplicate header key {key!r}")
            try:
                value = int(value_s.strip())
            except ValueError:
                raise ModelFileError(line_no, f"bad integer for {key!r}") from None
            header[key] = value
            continue

        if spec is None:
            missing = [k for k in _HEADER_KEYS if k not in header]
            if missing:
                raise ModelFileError(line_no, f"term before header keys {missing}")
            try:
                spec = ResonanceSpec(n=header["n"], p=header["p"], q=header["q"])
            except ValueError as exc:
                raise ModelFileError(line_no, f"bad header: {exc}") from None
            order = header["order"]
            if order < 4:
                raise ModelFileError(line_no, "order must be at least 4")

        parts = line.split()
        kind = parts[0]
        try:
            if kind == "omega":
                if len(parts) != 3:
                    raise ModelFileError(line_no, "expected: omega <mode> <value>")
                exps = _parse_exps(f"{parts[1]}:1", spec.n, line_no, False)
                term = TermSpec(kind="dunham", num_exps=exps,
                                coeff=_parse_value(parts[2], line_no),
                                coeff_text=parts[2])
            elif kind == "dunham":
                if len(parts) != 3:
                    raise ModelFileError(line_no, "expected: dunham <factors> <value>")
                exps = _parse_exps(parts[1], spec.n, line_no, False)
                if 2 * sum(exps) > order:
                    raise ModelFileError(line_no, f"degree {2 * sum(exps)} exceeds order {order}")
                term = TermSpec(kind="dunham", num_exps=exps,
                                coeff=_parse_value(parts[2], line_no),
                                coeff_text=parts[2])
            elif kind == "coupling":
                if len(parts) != 4:
                    raise ModelFileError(line_no, "expected: coupling <power> <factors|-> <value>")
                try:
                    m_exp = int(parts[1])
                except ValueError:
                    raise ModelFileError(line_no, f"bad ladder power {parts[1]!r}") from None
                if m_exp < 1:
                    raise ModelFileError(line_no, "ladder power must be positive")
                exps = _parse_exps(parts[2], spec.n, line_no, True)
                degree = (spec.p + spec.q) * m_exp + 2 * sum(exps)
                if degree > order:
                    raise ModelFileError(line_no, f"degree {degree} exceeds order {order}")
                term = TermSpec(kind="coupling", m_exp=m_exp, num_exps=exps,
                                coeff=_parse_value(parts[3], line_no),
                                coeff_text=parts[3])
            elif kind == "extra":
                if len(parts) != 4:
                    raise ModelFileError(line_no, "expected: extra <raise> <lower> <value>")
                raise_v = _parse_exps(parts[1], spec.n, line_no, True)
                lower_v = _parse_exps(parts[2], spec.n, line_no, True)
                term = TermSpec(kind="extra", raise_exps=raise_v, lower_exps=lower_v,
                                coeff=_parse_value(parts[3], line_no),
                                coeff_text=parts[3])
            else:
                raise ModelFileError(line_no, f"unknown term kind {kind!r}")
        except ModelFileError:
            raise
        except ValueError as exc:
            raise ModelFileError(line_no, str(exc)) from None
        if term.key in seen:
            raise ModelFileError(line_no, f"duplicate term {line!r}")
        seen.add(term.key)
        terms.append(term)

    if spec is None:
        missing = [k for k in _HEADER_KEYS if k not in header]
        if missing:
            raise ModelFileError(len(text.splitlines()) + 1,
                                 f"missing header keys {missing}")
        spec = ResonanceSpec(n=header["n"], p=header["p"], q=header["q"])
        order = header["order"]
    return HamiltonianModel(spec=spec, order=order, terms=tuple(terms))


def parse_model_file(path: str) -> "HamiltonianModel":
    with open(path, encoding="utf-8") as fh:
        return parse_model_text(fh.read())


def _exps_token(exps: Sequence[int]) -> str:
    parts = [f"{k}:{r}" for k, r in enumerate(exps, start=1) if r]
    return ",".join(parts) if parts else "-"


def serialize_model(model: "HamiltonianModel", comment: Optional[str] = None) -> str:
    """Model back to file text; coefficient texts are kept verbatim."""
    lines: list[str] = []
    if comment:
        lines.extend(f"# {c}".rstrip() for c in comment.splitlines())
    spec = model.spec
    lines.append(f"n={spec.n}")
    lines.append(f"p={spec.p}")
    lines.append(f"q={spec.q}")
    lines.append(f"order={model.order}")
    for t in model.terms:
        value = t.coeff_str()
        if t.kind == "dunham":
            if sum(t.num_exps) == 1:
                mode = next(k for k, r in enumerate(t.num_exps, start=1) if r)
                lines.append(f"omega {mode} {value}")
            else:
                lines.append(f"dunham {_exps_token(t.num_exps)} {value}")
        elif t.kind == "coupling":
            lines.append(f"coupling {t.m_exp} {_exps_token(t.num_exps)} {value}")
        else:
            lines.append(f"extra {_exps_token(t.raise_exps)} "
                         f"{_exps_token(t.lower_exps)} {value}")
    return "\n".join(lines) + "\n"


# -- output plumbing -------------------------------------------------------


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kv_table(pairs: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


# -- subcommands -----------------------------------------------------------


def _cmd_count(args: argparse.Namespace) -> int:
    try:
        report = totals(args.n, args.order, args.p, args.q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = report.as_dict()
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        _emit(_kv_table(list(data.items())), args.out)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        monos = []
        if args.kind in ("dunham", "both"):
            monos.extend(enumerate_dunham(args.n, args.order))
        if args.kind in ("coupling", "both"):
            monos.extend(enumerate_coupling(args.n, args.order, args.p, args.q))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ordered = sort_monomials(monos)
    if args.format == "json":
        _emit(monomials_to_json(ordered) + "\n", args.out)
    else:
        body = "".join(m.label() + "\n" for m in ordered)
        _emit(body + f"total {len(ordered)}\n", args.out)
    return 0


def _cmd_verify_tables(args: argparse.Namespace) -> int:
    rows = verify_tables()
    per_table: dict[str, list] = {}
    for row in rows:
        per_table.setdefault(row[0], []).append(row)
    failures = [row for row in rows if not row[4]]

    def cell_name(table: str, key: tuple) -> str:
        if isinstance(key[1], str):
            return f"{table}[p+q={key[0]},{key[1]}]"
        return f"{table}[N={key[0]},p+q={key[1]}]"

    if args.format == "json":
        payload = {
            "cells": len(rows),
            "tables": {t: len(v) for t, v in sorted(per_table.items())},
            "failures": [
                {"cell": cell_name(t, key), "expected": exp, "got": got}
                for t, key, exp, got, _ in failures
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = []
        for table, table_rows in sorted(per_table.items()):
            good = sum(1 for r in table_rows if r[4])
            lines.append(f"{table}: {good}/{len(table_rows)} cells match\n")
        for t, key, exp, got, _ in failures:
            lines.append(f"MISMATCH {cell_name(t, key)}: expected {exp}, got {got}\n")
        verdict = ("all tables verified" if not failures
                   else f"{len(failures)} cells differ")
        lines.append(verdict + "\n")
        _emit("".join(lines), args.out)
    return 1 if failures else 0


def _cmd_audit(args: argparse.Namespace) -> int:
    try:
        audit = audit_counting(args.order, args.p, args.q, args.kind)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = asdict(audit)
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        _emit(_kv_table(list(data.items())), args.out)
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    from .quantum import spectrum, write_spectrum_csv
    import io

    try:
        model = parse_model_file(args.model)
    except OSError as exc:
        print(f"error: cannot read {args.model}: {exc}", file=sys.stderr)
        return 2
    except ModelFileError as exc:
        print(f"error: {args.model}: {exc}", file=sys.stderr)
        return 2
    try:
        blocks, rows = spectrum(model, args.pmax, args.n3max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        payload = [
            {"P": P, "n3": n3, "index": idx, "energy_cm1": energy}
            for P, n3, idx, energy in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        write_spectrum_csv(buf, rows)
        _emit(buf.getvalue(), args.out)
    summary = f"blocks {len(blocks)} levels {len(rows)}\n"
    (sys.stdout if args.out else sys.stderr).write(summary)
    return 0


def _cmd_phase_space(args: argparse.Namespace) -> int:
    import io

    fixed = tuple(args.sigma)
    n = 2 + len(fixed)
    try:
        spec = ResonanceSpec(n=n, p=args.p, q=args.q)
        # flag value is h0 over the second frequency; rescale to the
        # exact-unit convention (second frequency = p) phase_curve expects
        h0 = args.h0 * spec.float_omegas()[1]
        if args.format == "json":
            from .resonance import phase_curve, phase_curve_residual

            points = phase_curve(spec, h0, fixed, args.samples)
            payload = [
                {
                    "sigma1": pt.sigma1,
                    "sigma0p": pt.sigma0p,
                    "residual": phase_curve_residual(spec, h0, fixed, pt),
                }
                for pt in points
            ]
            _emit(json.dumps(payload, indent=2) + "\n", args.out)
            rows = len(points) // 2
        else:
            buf = io.StringIO()
            rows = write_phase_curve_csv(buf, spec, h0, fixed, args.samples)
            _emit(buf.getvalue(), args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    summary = f"rows {rows}\n"
    (sys.stdout if args.out else sys.stderr).write(summary)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyads",
        description="Operator census and quantum assembly for p:q resonance Hamiltonians.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table",
                        help="output style (CSV commands emit CSV in table mode)")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write output to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", parents=[common],
                             help="coefficient and operator totals")
    p_count.add_argument("--n", type=int, required=True, help="number of modes")
    p_count.add_argument("--p", type=int, required=True)
    p_count.add_argument("--q", type=int, required=True)
    p_count.add_argument("--order", type=int, required=True,
                         help="maximum expansion order")
    p_count.set_defaults(func=_cmd_count)

    p_enum = sub.add_parser("enumerate", parents=[common],
                            help="dump the monomial census")
    p_enum.add_argument("--kind", choices=("dunham", "coupling", "both"),
                        default="both")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--p", type=int, default=1)
    p_enum.add_argument("--q", type=int, default=1)
    p_enum.add_argument("--order", type=int, required=True)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_verify = sub.add_parser("verify-tables", parents=[common],
                              help="check every frozen reference-table cell")
    p_verify.set_defaults(func=_cmd_verify_tables)

    p_audit = sub.add_parser("audit", parents=[common],
                             help="couple population audit at one order")
    p_audit.add_argument("--order", type=int, required=True)
    p_audit.add_argument("--p", type=int, required=True)
    p_audit.add_argument("--q", type=int, required=True)
    p_audit.add_argument("--kind", type=int, choices=(2, 3), required=True,
                         help="2-monomial or 3-monomial family")
    p_audit.set_defaults(func=_cmd_audit)

    p_spec = sub.add_parser("spectrum", parents=[common],
                            help="diagonalize a model file block by block")
    p_spec.add_argument("--model", required=True, help="model file path")
    p_spec.add_argument("--pmax", type=int, required=True,
                        help="largest polyad label")
    p_spec.add_argument("--n3max", type=int, default=0,
                        help="largest spectator occupation")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_phase = sub.add_parser("phase-space", parents=[common],
                             help="sample the reduced phase-space curve")
    p_phase.add_argument("--p", type=int, required=True)
    p_phase.add_argument("--q", type=int, required=True)
    p_phase.add_argument("--h0", type=float, required=True,
                         help="energy divided by the second harmonic frequency")
    p_phase.add_argument("--samples", type=int, default=101)
    p_phase.add_argument("--sigma", type=float, nargs="*", default=[],
                         help="fixed actions of the spectator modes")
    p_phase.set_defaults(func=_cmd_phase_space)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
