"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 degenerate spectrum, 4 unsupported
query. Data goes to stdout; a single ``error: <kind>: <reason>`` line goes to
stderr on failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import capacities as caps
from . import index
from .errors import CapspecError, DomainError, UnsupportedQueryError
from .numeric import format_rational, rational
from .reeb import EllipsoidSpec, enumerate_spectrum, orbit_of_degree, action, cz_index
from .toric import (
    DEFAULT_SEED,
    Ball,
    Cube,
    Cylinder,
    Ellipsoid,
    NCylinders,
    Polydisk,
    ToricRegion,
    VolumeEstimate,
    diagonal,
    is_concave_toric,
    is_convex_toric,
    region_from_json,
    region_to_json,
    volume,
)

ERROR_KINDS = {2: "invalid-input", 3: "degenerate-spectrum", 4: "unsupported-query"}

_INLINE = re.compile(r"^\s*([EPBCZN])\s*\((.*)\)\s*$")


def parse_domain(text: str, n=None) -> ToricRegion:
    """Parse ``--domain``: JSON text, a path to a JSON file, or inline ``E(1,5/2)``.

    Inline single-parameter families (``B``, ``C`` cube, ``Z``, ``N``) need ``n``.
    """
    text = text.strip()
    m = _INLINE.match(text)
    if m:
        return _inline_domain(m.group(1), m.group(2), n)
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise DomainError(f"domain: not JSON, a file, or an inline family: {text!r}")
        text = path.read_text(encoding="utf-8")
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"domain: malformed JSON ({exc.msg} at char {exc.pos})") from None
    return region_from_json(spec)


def _inline_domain(letter, body, n):
    params = [p for p in (s.strip() for s in body.split(",")) if p]
    if letter in "EP":
        return (Ellipsoid if letter == "E" else Polydisk)(tuple(rational(p) for p in params))
    if len(params) != 1:
        raise DomainError(f"domain: {letter}(...) takes exactly one parameter")
    if n is None:
        raise DomainError(f"domain: {letter}(...) needs --n")
    cls = {"B": Ball, "C": Cube, "Z": Cylinder, "N": NCylinders}[letter]
    return cls(rational(params[0]), n)


# --- emission -------------------------------------------------------------------

def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def _json_cell(x):
    # Rationals stay strings; ints, bools and missing values keep JSON types.
    if x is None or isinstance(x, (bool, int)):
        return x
    return _cell(x)


def emit(columns, rows, fmt, summary=None, extra=None) -> str:
    """Render rows (dicts keyed by ``columns``) as CSV or JSON text."""
    if fmt == "json":
        doc = {"rows": [{c: _json_cell(r[c]) for c in columns} for r in rows]}
        if summary is not None:
            doc["summary"] = {k: _json_cell(v) for k, v in summary.items()}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r[c]) for c in columns])
    if summary is not None:
        line = []
        for k, v in summary.items():
            line += [k, _cell(v)]
        writer.writerow(line)
    return buf.getvalue()


def _capacity_value_cell(row: caps.CapacityValue, n: int) -> str:
    if row.name != "c_vol":
        return format_rational(row.value)
    if row.exact_ratio is not None:
        return f"{format_rational(row.exact_ratio)}^(1/{n})={row.value:.6f}"
    return f"~{row.value ** n:.6f}^(1/{n})={row.value:.6f}"


# --- subcommands ---------------------------------------------------------------

def _cmd_domain_info(args, seed):
    region = parse_domain(args.domain, args.n)
    vol = volume(region, seed=seed) if region.bounded else None
    if isinstance(vol, VolumeEstimate):
        vol_cell = f"~{vol.value:.6f}+-{vol.half_width:.6f}"
    else:
        vol_cell = "inf" if vol is None else format_rational(vol)
    try:
        delta = format_rational(diagonal(region))
    except UnsupportedQueryError:
        delta = "inf"
    rows = [
        ("type", region_to_json(region)["type"]),
        ("region", str(region)),
        ("n", region.n),
        ("bounded", region.bounded),
        ("diagonal", delta),
        ("convex", is_convex_toric(region)),
        ("concave", is_concave_toric(region)),
        ("volume", vol_cell),
    ]
    return emit(["field", "value"], [{"field": f, "value": v} for f, v in rows], args.format)


def _cmd_spectrum(args, seed):
    region = parse_domain(args.domain, args.n)
    if isinstance(region, Ball):
        axes = (region.a,) * region.n
    elif isinstance(region, Ellipsoid):
        axes = region.a
    else:
        raise UnsupportedQueryError("spectrum is only available for ellipsoid boundaries")
    E = EllipsoidSpec.from_axes(axes)
    columns = ["k", "j", "m", "action", "cz"]
    if args.k is not None:
        orbit = orbit_of_degree(E, args.k)
        rows = [{"k": args.k, "j": orbit.j, "m": orbit.m,
                 "action": action(E, orbit), "cz": cz_index(E, orbit)}]
        return emit(columns, rows, args.format)
    if (args.cap is None) == (args.count is None):
        raise DomainError("spectrum needs exactly one of --cap or --count")
    spec = enumerate_spectrum(E, action_cap=args.cap, count=args.count)
    if spec.degenerate:
        print("warning: degenerate spectrum (tied actions)", file=sys.stderr)
    rows = [{"k": e.k, "j": e.orbit.j, "m": e.orbit.m, "action": e.action, "cz": e.cz}
            for e in spec]
    return emit(columns, rows, args.format, extra={"degenerate": spec.degenerate}
                if args.format == "json" else None)


def _cmd_capacities(args, seed):
    region = parse_domain(args.domain, args.n)
    rows = caps.capacities_report(region, args.kmax, seed=seed)
    out = [{"name": r.name, "k": r.k, "value": _capacity_value_cell(r, region.n),
            "status": r.status, "anchor": r.anchor} for r in rows]
    return emit(["name", "k", "value", "status", "anchor"], out, args.format)


def _cmd_chain(args, seed):
    region = parse_domain(args.domain, args.n)
    report = caps.chain_report(region, args.kmax)
    columns = ["k", "cgh_k", "ratio", "lower", "upper", "running_inf", "status", "ok"]
    rows = [{"k": s.k, "cgh_k": s.cgh, "ratio": s.ratio, "lower": s.lower, "upper": s.upper,
             "running_inf": s.running_inf, "status": s.status, "ok": s.ok}
            for s in report.steps]
    summary = {"chain_ok": report.chain_ok,
               "inf_gap": "NA" if report.inf_gap is None else report.inf_gap}
    return emit(columns, rows, args.format, summary=summary)


def _cmd_cz(args, seed):
    parts = []
    for theta in args.theta or []:
        parts.append(index.cz_exp_block(index.BlockPath.rotation(theta)))
    for pair in args.pair or []:
        try:
            a, T = pair.split(",")
        except ValueError:
            raise DomainError(f"--pair expects a,T; got {pair!r}") from None
        parts.append(index.cz_exp_block(index.BlockPath.ellipsoid_normal(a, T)))
    if not parts:
        raise DomainError("cz needs at least one --theta or --pair")
    value = index.cz_loop_shift(index.cz_direct_sum(parts), args.loop)
    if args.inverse:
        value = index.cz_inverse(value)
    return emit(["cz"], [{"cz": value}], args.format)


def _cmd_virdim(args, seed):
    base = dict(n=args.n, p_plus=args.p_plus, p_minus=args.p_minus, c1=args.c1,
                cz_plus=args.cz_plus, cz_minus=args.cz_minus)
    if args.k is None:
        value = index.virdim_punctured(**base)
    else:
        value = index.virdim_tangency(**base, k=args.k)
    return emit(["virdim"], [{"virdim": value}], args.format)


def _cmd_amin(args, seed):
    row = caps.a_min_product_torus(args.areas.split(","))
    return emit(["name", "value", "status", "anchor"],
                [{"name": row.name, "value": row.value, "status": row.status,
                  "anchor": row.anchor}], args.format)


# --- argument parsing ---------------------------------------------------------

def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _rational_arg(text):
    try:
        return rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=None,
                        help="Monte Carlo seed (CAPSPEC_SEED overrides)")

    parser = argparse.ArgumentParser(
        prog="capspec", description="Exact capacities and Reeb spectra of toric domains.")
    sub = parser.add_subparsers(dest="command", required=True)

    def domain_cmd(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--domain", required=True,
                       help="JSON object, path to a JSON file, or E(..)/P(..)/B(a)/C(a)/Z(a)/N(d)")
        p.add_argument("--n", type=_positive_int, default=None,
                       help="complex dimension for B/C/Z/N")
        return p

    p = domain_cmd("domain-info", "diagonal, convexity and volume of a domain")
    p.set_defaults(func=_cmd_domain_info)

    p = domain_cmd("spectrum", "Reeb orbit spectrum of an ellipsoid boundary")
    p.add_argument("--cap", type=_rational_arg)
    p.add_argument("--count", type=_positive_int)
    p.add_argument("--k", type=_positive_int, help="only the orbit of degree n-1+2k")
    p.set_defaults(func=_cmd_spectrum)

    p = domain_cmd("capacities", "capacity table with statuses")
    p.add_argument("--kmax", type=_positive_int, default=1)
    p.set_defaults(func=_cmd_capacities)

    p = domain_cmd("chain", "verify the Lagrangian capacity chain for k <= kmax")
    p.add_argument("--kmax", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("cz", parents=[common], help="Conley-Zehnder index of rotation blocks")
    p.add_argument("--theta", type=_rational_arg, action="append",
                   help="rotation ratio of one block (repeatable)")
    p.add_argument("--pair", action="append", help="a,T for S = (2 pi / a) Id (repeatable)")
    p.add_argument("--loop", type=int, default=0, help="Maslov index of a loop acting on the path")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=_cmd_cz)

    p = sub.add_parser("virdim", parents=[common], help="virtual dimension of punctured curves")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-plus", type=int, required=True)
    p.add_argument("--p-minus", type=int, default=0)
    p.add_argument("--c1", type=int, default=0)
    p.add_argument("--cz-plus", type=int, required=True)
    p.add_argument("--cz-minus", type=int, default=0)
    p.add_argument("--k", type=_positive_int, default=None, help="tangency order")
    p.set_defaults(func=_cmd_virdim)

    p = sub.add_parser("amin", parents=[common], help="minimal area of a product torus")
    p.add_argument("--areas", required=True, help="comma-separated rationals")
    p.set_defaults(func=_cmd_amin)
    return parser


def _seed(args) -> int:
    env = os.environ.get("CAPSPEC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"CAPSPEC_SEED: not an integer: {env!r}") from None
    return DEFAULT_SEED if args.seed is None else args.seed


def run(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        text = args.func(args, _seed(args))
    except CapspecError as exc:
        kind = ERROR_KINDS.get(exc.exit_code, "error")
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
