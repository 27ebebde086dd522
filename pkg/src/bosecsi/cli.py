"""Command-line front end.

Exit codes: 0 success, 1 self-test failure, 2 parse error, 3 domain-invariant
violation.
"""

import argparse
import csv
import io
import json
import re
import sys

import numpy as np

from . import correlations, qfi, statespec
from .distinguishable import TwoQubitDensity, ppt_verdict, two_particle_g2
from .errors import InvalidArgument, InvariantViolation, NumericalFailure
from .fock import SectorMixture, check_axis, validate_density
from .statespec import SpecParseError

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3

SWEEP_HEADER = ["param", "g_aa", "g_ab", "g_bb", "C", "eta2", "f_q_max", "verdict"]
DEFAULT_AXES = ("x", "y", "z")


class UsageError(ValueError):
    """Bad command-line values; maps to exit code 2."""


def fmt(x):
    """17 significant digits: round-trips a double exactly."""
    return f"{x:.17g}"


def parse_orders(text):
    try:
        orders = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"orders must be comma-separated integers, got {text!r}") from None
    if not orders:
        raise UsageError("no correlator orders given")
    for n in orders:
        if n < 2 or n % 2:
            raise UsageError(f"correlator orders must be even and >= 2, got {n}")
    return orders


def parse_axes(text):
    """``x,y,z`` tokens and/or explicit ``[nx,ny,nz]`` vectors, comma separated."""
    tokens = re.findall(r"\[[^\]]*\]|[^,\s\[\]]+", text)
    if not tokens or "".join(tokens).count("[") != text.count("["):
        raise UsageError(f"cannot parse axes {text!r}")
    axes = []
    for tok in tokens:
        if tok in qfi.AXIS_TOKENS:
            axes.append(qfi.AXIS_TOKENS[tok])
            continue
        try:
            vec = json.loads(tok)
            axes.append(tuple(float(x) for x in check_axis(vec)))
        except (json.JSONDecodeError, InvalidArgument, TypeError) as exc:
            raise UsageError(f"bad axis {tok!r}: {exc}") from None
    return axes


def _csi_verdict(reports):
    flags = [r.csi_violated for r in reports]
    if any(f is True for f in flags):
        return True
    if all(f is None for f in flags):
        return None
    return False


def _bosonic_report(doc, state, orders, axes):
    reports = correlations.analyze(state, orders)
    out = {
        "particle_model": "bosonic",
        "state": doc,
        "correlations": [r.to_dict() for r in reports],
    }
    for row in out["correlations"]:
        if row["csi_c"] is None:
            row["csi_c_display"] = row["csi_note"]
    if isinstance(state, SectorMixture):
        rows = qfi.sector_averaged_qfi(state, axes)
        out["qfi"] = {
            "kind": "sector_averaged",
            "note": "p_N-weighted per-sector QFI; the F_Q <= N bound is applied per sector",
            "rows": [
                {
                    "axis": list(r.axis),
                    "f_q": r.f_q,
                    "witness": r.witness,
                    "sectors": [
                        {"prob": p, "n_particles": s.n_particles, "f_q": s.f_q, "witness": s.witness}
                        for p, s in r.sectors
                    ],
                }
                for r in rows
            ],
        }
        witness = any(r.witness for r in rows)
        f_q_max = max(r.f_q for r in rows)
    else:
        rows = qfi.qfi_witness_report(state, axes)
        out["qfi"] = {
            "kind": "fixed_n",
            "rows": [
                {"axis": list(r.axis), "f_q": r.f_q, "n_particles": r.n_particles, "witness": r.witness}
                for r in rows
            ],
        }
        witness = qfi.witnessed(rows)
        f_q_max = max(r.f_q for r in rows)
    eta2 = reports[0].eta2
    out["verdict"] = {
        "csi_violated": _csi_verdict(reports),
        "number_squeezed": eta2 is not None and eta2 < 1.0 - correlations.VIOLATION_TOL,
        "qfi_witness": witness,
    }
    return out, reports[0], f_q_max


def _distinguishable_report(doc, state, orders):
    if list(orders) != [2]:
        raise UsageError("distinguishable-particle (werner) states support order 2 only")

    def block(g):
        g_aa, g_ab, g_bb = g
        c = correlations.csi_coefficient(g_aa, g_ab, g_bb)
        return {
            "order": 2,
            "g_aa": g_aa,
            "g_ab": g_ab,
            "g_bb": g_bb,
            "csi_c": c,
            "csi_note": correlations.csi_note(g_aa, g_ab, g_bb),
        }

    main = block(two_particle_g2(state))
    entangled, min_eig = ppt_verdict(state)
    c = main["csi_c"]
    out = {
        "particle_model": "distinguishable",
        "state": doc,
        "correlations": [main],
        "correlations_strict_sum": block(two_particle_g2(state, strict_sum=True)),
        "ppt": {"entangled": entangled, "min_eigenvalue": min_eig},
        "verdict": {
            "csi_violated": None if c is None else c > 1.0 + correlations.VIOLATION_TOL,
            "ppt_entangled": entangled,
        },
    }
    return out, main


def analyze_document(doc, state, orders=(2,), axes=DEFAULT_AXES):
    """Full report dictionary for a parsed document and its built state."""
    axes = [qfi.AXIS_TOKENS[a] if isinstance(a, str) else a for a in axes]
    if isinstance(state, TwoQubitDensity):
        return _distinguishable_report(doc, state, orders)[0]
    report = _bosonic_report(doc, state, orders, axes)[0]
    if not isinstance(state, SectorMixture):
        diag = validate_density(state)
        report["validation"] = {
            "hermiticity_residual": diag.hermiticity_residual,
            "trace_deviation": diag.trace_deviation,
            "min_eigenvalue": diag.min_eigenvalue,
            "ok": diag.ok,
        }
    return report


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_analyze(args):
    doc, state = statespec.parse(_read(args.state))
    orders = parse_orders(args.orders)
    axes = parse_axes(args.axes)
    report = analyze_document(doc, state, orders, axes)
    _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    if args.out not in (None, "-"):
        for row in report["correlations"]:
            c = row["csi_c"]
            shown = fmt(c) if c is not None else correlations.DEGENERATE_NOTE
            print(f"order {row['order']}: C = {shown}")
        print("verdict: " + json.dumps(report["verdict"], sort_keys=True))
    return EXIT_OK


TOKEN_RE = re.compile(r"\$\{(1-)?([A-Za-z_][A-Za-z0-9_]*)\}")


def substitute(template, name, value):
    """Replace ``${name}`` with ``value`` and ``${1-name}`` with ``1 - value``."""
    names = {m.group(2) for m in TOKEN_RE.finditer(template)}
    if not names:
        raise UsageError("template contains no ${NAME} parameter token")
    if names != {name}:
        raise UsageError(f"template must reference exactly the parameter {name!r}; found {sorted(names)}")

    def render(x):
        if float(x).is_integer() and abs(x) < 2**53:
            return str(int(x))
        return repr(float(x))

    return TOKEN_RE.sub(lambda m: render(1.0 - value if m.group(1) else value), template)


def sweep_rows(template, name, start, stop, steps):
    if steps < 2:
        raise UsageError(f"steps must be >= 2, got {steps}")
    rows = []
    for value in np.linspace(start, stop, steps):
        value = float(value)
        doc, state = statespec.parse(substitute(template, name, value))
        if isinstance(state, TwoQubitDensity):
            _, main = _distinguishable_report(doc, state, [2])
            entangled, _ = ppt_verdict(state)
            c = main["csi_c"]
            verdict = _verdict_token(c) + ("|ppt_entangled" if entangled else "|ppt_separable")
            rows.append([fmt(value), fmt(main["g_aa"]), fmt(main["g_ab"]), fmt(main["g_bb"]),
                         "undefined" if c is None else fmt(c), "", "", verdict])
        else:
            _, rep, f_q_max = _bosonic_report(doc, state, [2], [qfi.AXIS_TOKENS[a] for a in DEFAULT_AXES])
            rows.append([fmt(value), fmt(rep.g_aa), fmt(rep.g_ab), fmt(rep.g_bb),
                         "undefined" if rep.csi_c is None else fmt(rep.csi_c),
                         "" if rep.eta2 is None else fmt(rep.eta2), fmt(f_q_max), _verdict_token(rep.csi_c)])
    return rows


def _verdict_token(c):
    if c is None:
        return "csi_undefined"
    return "csi_violated" if c > 1.0 + correlations.VIOLATION_TOL else "csi_satisfied"


def cmd_sweep(args):
    rows = sweep_rows(_read(args.template), args.param, args.start, args.stop, args.steps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    _write(args.out, buf.getvalue())
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import SUITES, run_selftest

    unknown = sorted(set(args.suite or ()) - set(SUITES))
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; have {sorted(SUITES)}")
    if args.trials < 1:
        raise UsageError(f"trials must be >= 1, got {args.trials}")
    result = run_selftest(args.trials, args.seed, suites=args.suite)
    sys.stdout.write(result.text)
    if args.out:
        _write(args.out, json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK if result.ok else EXIT_SELFTEST_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bosecsi",
        description="Cauchy-Schwarz, number-squeezing and QFI entanglement criteria for two-mode boson states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one state-spec document")
    p.add_argument("--state", required=True, help="JSON state-spec file")
    p.add_argument("--orders", default="2", help="comma-separated even correlator orders (default 2)")
    p.add_argument("--axes", default="x,y,z", help="x|y|z tokens or [nx,ny,nz] vectors (default x,y,z)")
    p.add_argument("--out", help="report path (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="sweep one template parameter, write CSV")
    p.add_argument("--template", required=True, help="state-spec template with ${NAME} / ${1-NAME} tokens")
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in property suites")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--suite", action="append", help="restrict to a suite (repeatable)")
    p.add_argument("--out", help="also write a JSON summary here")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidArgument, NumericalFailure) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
