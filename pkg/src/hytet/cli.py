"""Command-line interface.

Subcommands: check, angles, volume, sweep, validate.  Input is a JSON
document with the six edge lengths (or the --edges inline form); output is
a JSON document on stdout (CSV for sweep), diagnostics on stderr.

Exit codes are a stable contract:
    0   success
    2   the lengths do not bound a compact tetrahedron (or the request is
        unanswerable at a degenerate configuration)
    64  malformed input or usage
    70  internal numerical failure
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .angles import dihedral_angles
from .core import (
    EDGE_KEYS,
    EdgeLengths,
    cofactors,
    edge_matrix_from_lengths,
    jacobi_residuals,
)
from .errors import (
    DomainError,
    ExistenceError,
    HytetError,
    NotATetrahedronError,
    NumericalError,
)
from .existence import exists
from .oracle import (
    MonteCarloConfig,
    dihedral_angles_geometric,
    embed_vertices,
    volume_monte_carlo,
)
from .volume import (
    QuadratureConfig,
    VolumeResult,
    schlafli_residual,
    volume_edges,
    volume_sforza,
)

EXIT_OK = 0
EXIT_NOT_A_TETRAHEDRON = 2
EXIT_USAGE = 64
EXIT_NUMERICAL = 70

DEFAULT_SEED = 42
DEFAULT_MC_SAMPLES = 200_000
DEFAULT_SWEEP_SAMPLES = 33

# validation thresholds used by `validate` and `volume --validate`
JACOBI_LIMIT = 1e-10
ANGLE_GAP_LIMIT = 1e-9
ROUTE_GAP_LIMIT = 1e-6
MC_Z_LIMIT = 4.0
SCHLAFLI_LIMIT = 1e-8


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns exit codes."""

    def error(self, message):
        raise _UsageError(message)


def _format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if math.isnan(f):
            return "null"
        if math.isinf(f):
            return '"inf"' if f > 0 else '"-inf"'
        return format(f, ".17g")
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"unserializable value {v!r}")


def _dump_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k))}: {_dump_json(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{_dump_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _format_value(obj)


def _parse_inline_edges(text: str) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise _UsageError(f"bad inline edge assignment {part!r}")
        key, _, value = part.partition("=")
        out[key.strip()] = value.strip()
    return out


def _load_document(args) -> dict:
    if args.edges and args.input:
        raise _UsageError("give either an input document or --edges, not both")
    if args.edges:
        return {"edges": _parse_inline_edges(args.edges)}
    if not args.input:
        raise _UsageError("no input: pass a JSON document path, '-', or --edges")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise _UsageError(f"cannot read input file: {e}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise _UsageError(f"input is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise _UsageError("input document must be a JSON object")
    # accept either a bare input document or a previous output document
    if "edges" not in doc and isinstance(doc.get("input"), dict):
        doc = doc["input"]
    return doc


def _lengths_from_document(doc: dict) -> EdgeLengths:
    edges = doc.get("edges")
    if not isinstance(edges, dict):
        raise _UsageError('input document needs an "edges" object')
    unknown = sorted(set(edges) - set(EDGE_KEYS))
    if unknown:
        raise _UsageError(f"unknown edge names: {', '.join(unknown)}")
    missing = [k for k in EDGE_KEYS if k not in edges]
    if missing:
        raise _UsageError(f"missing edge names: {', '.join(missing)}")
    values = {}
    for key in EDGE_KEYS:
        raw = edges[key]
        try:
            values[key] = float(raw)
        except (TypeError, ValueError):
            raise _UsageError(f"edge {key} does not parse as a number: {raw!r}")
        if not math.isfinite(values[key]) or values[key] < 0:
            raise _UsageError(f"edge {key} must be finite and nonnegative, got {raw!r}")
    return EdgeLengths(**values)


def _settings(args, doc: dict):
    """Resolve tolerance / sample / seed defaults: flags beat the input
    document, which beats environment variables, which beat defaults."""
    doc_cfg = doc.get("config") or {}

    def pick(flag_value, doc_key, env_key, default, cast):
        if flag_value is not None:
            return cast(flag_value)
        if doc_key in doc_cfg:
            return cast(doc_cfg[doc_key])
        if env_key in os.environ:
            try:
                return cast(os.environ[env_key])
            except ValueError:
                raise _UsageError(f"environment {env_key} does not parse")
        return default

    tol = pick(args.tol, "tol", "HYTET_TOL", 1e-10, float)
    mc_samples = pick(args.mc_samples, "mc_samples", "HYTET_MC_SAMPLES",
                      DEFAULT_MC_SAMPLES, int)
    seed = pick(args.seed, "seed", "HYTET_SEED", DEFAULT_SEED, int)
    if tol <= 0:
        raise _UsageError("tolerance must be positive")
    if mc_samples < 1:
        raise _UsageError("mc-samples must be >= 1")
    if not 0 <= seed < 2 ** 64:
        raise _UsageError("seed must fit in 64 unsigned bits")
    quad = QuadratureConfig(abs_tol=tol, rel_tol=tol)
    return quad, mc_samples, seed


def _echo(lengths: EdgeLengths) -> dict:
    return {"edges": lengths.as_dict()}


def _existence_block(report) -> dict:
    block = {
        "exists": report.exists,
        "degenerate": report.degenerate,
        "tri_123_ok": report.tri_123_ok,
        "tri_124_ok": report.tri_124_ok,
        "l34_in_range": report.l34_in_range,
        "failed": list(report.failed),
        "slacks": dict(report.slacks),
    }
    if report.bounds is not None:
        block["bounds"] = {
            "C": report.bounds.C,
            "S": report.bounds.S,
            "l1": report.bounds.l1,
            "l2": report.bounds.l2,
            "clamped_sqrt": report.bounds.clamped_sqrt,
        }
    return block


def _volume_block(res: VolumeResult) -> dict:
    return {
        "value": res.value,
        "error_estimate": res.error_estimate,
        "evaluations": res.evaluations,
        "route": res.route,
        "diagnostics": dict(res.diagnostics),
    }


def _angles_block(lengths: EdgeLengths) -> tuple[dict, object]:
    C = cofactors(edge_matrix_from_lengths(lengths))
    th = dihedral_angles(C)
    radians = th.as_dict()
    block = {
        "radians": radians,
        "degrees": {k: math.degrees(v) for k, v in radians.items()},
        "clamped": th.clamped,
    }
    diagnostics = {
        "delta": C.delta,
        "cofactor_diagonal": list(C.diagonal),
    }
    return {"angles": block, "diagnostics": diagnostics}, th


def _cmd_check(lengths, args, out, err, quad, mc_samples, seed) -> int:
    report = exists(lengths)
    doc = {
        "input": _echo(lengths),
        "command": "check",
        "existence": _existence_block(report),
    }
    _emit(doc, args, out)
    return EXIT_OK if report.exists else EXIT_NOT_A_TETRAHEDRON


def _cmd_angles(lengths, args, out, err, quad, mc_samples, seed) -> int:
    report = exists(lengths)
    if not report.exists:
        raise ExistenceError("lengths do not bound a tetrahedron: "
                             + ", ".join(report.failed), report=report)
    blocks, _ = _angles_block(lengths)
    doc = {
        "input": _echo(lengths),
        "command": "angles",
        "existence": _existence_block(report),
        **blocks,
    }
    _emit(doc, args, out)
    return EXIT_OK


def _cmd_volume(lengths, args, out, err, quad, mc_samples, seed) -> int:
    report = exists(lengths)
    res = volume_edges(lengths, quad)
    doc = {
        "input": _echo(lengths),
        "command": "volume",
        "existence": _existence_block(report),
        "volume": {"edge_integral": _volume_block(res)},
    }
    if args.validate:
        blocks, th = _angles_block(lengths)
        doc.update(blocks)
        sf = volume_sforza(th, quad)
        emb = embed_vertices(edge_matrix_from_lengths(lengths))
        mc = volume_monte_carlo(emb, MonteCarloConfig(seed=seed, samples=mc_samples))
        doc["volume"]["sforza"] = _volume_block(sf)
        doc["volume"]["monte_carlo"] = _volume_block(mc)
        gap = abs(res.value - sf.value)
        z = abs(res.value - mc.value) / mc.error_estimate if mc.error_estimate else 0.0
        doc["agreement"] = {
            "edge_vs_sforza": {"gap": gap, "limit": ROUTE_GAP_LIMIT,
                               "pass": gap < ROUTE_GAP_LIMIT},
            "monte_carlo_z": {"z": z, "limit": MC_Z_LIMIT, "pass": z < MC_Z_LIMIT},
        }
    _emit(doc, args, out)
    return EXIT_OK


def _cmd_sweep(lengths, args, out, err, quad, mc_samples, seed) -> int:
    report = exists(lengths)
    if not report.exists:
        raise ExistenceError("lengths do not bound a tetrahedron: "
                             + ", ".join(report.failed), report=report)
    n = args.samples if args.samples is not None else DEFAULT_SWEEP_SAMPLES
    if n < 2:
        raise _UsageError("sweep needs at least 2 samples")
    l1, l2 = report.bounds.l1, report.bounds.l2
    ts = np.linspace(l1, l2, n)

    from . import quadrature as _quad
    from .volume import _EdgeIntegrand

    integ = _EdgeIntegrand(lengths)
    rows = []
    volume_acc = 0.0
    previous = l1
    for idx, t in enumerate(ts):
        t = float(t)
        if idx == 0:
            dvdt = math.inf
            volume_acc = 0.0
        else:
            integ.bind(previous, t)
            seg = _quad.integrate(
                integ.quadrature_node, previous, t,
                abs_tol=quad.abs_tol, rel_tol=quad.rel_tol,
                max_levels=quad.max_levels,
            )
            volume_acc += seg.value
            dvdt = -math.inf if idx == n - 1 else integ.derivative(t)
            previous = t
        rows.append({"t": t, "dVdt": dvdt, "V": volume_acc})

    if args.format == "json":
        doc = {"input": _echo(lengths), "command": "sweep", "rows": rows}
        _emit(doc, args, out)
    else:
        print("t,dVdt,V", file=out)
        for row in rows:
            print(",".join(_csv_number(row[k]) for k in ("t", "dVdt", "V")), file=out)
    return EXIT_OK


def _csv_number(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _cmd_validate(lengths, args, out, err, quad, mc_samples, seed) -> int:
    report = exists(lengths)
    if not report.exists:
        raise ExistenceError("lengths do not bound a tetrahedron: "
                             + ", ".join(report.failed), report=report)

    E = edge_matrix_from_lengths(lengths)
    C = cofactors(E)
    jac = jacobi_residuals(E, C).max_relative

    blocks, th = _angles_block(lengths)
    emb = embed_vertices(E)
    th_geo = dihedral_angles_geometric(emb)
    angle_gap = max(
        abs(a - b) for a, b in zip(th.as_tuple(), th_geo.as_tuple())
    )

    res = volume_edges(lengths, quad)
    sf = volume_sforza(th, quad)
    mc = volume_monte_carlo(emb, MonteCarloConfig(seed=seed, samples=mc_samples))
    route_gap = abs(res.value - sf.value)
    z = abs(res.value - mc.value) / mc.error_estimate if mc.error_estimate else 0.0

    checks = {
        "jacobi_max_relative": {"value": jac, "limit": JACOBI_LIMIT,
                                "pass": jac < JACOBI_LIMIT},
        "angle_routes_max_gap": {"value": angle_gap, "limit": ANGLE_GAP_LIMIT,
                                 "pass": angle_gap < ANGLE_GAP_LIMIT},
        "edge_vs_sforza": {"value": route_gap, "limit": ROUTE_GAP_LIMIT,
                           "pass": route_gap < ROUTE_GAP_LIMIT},
        "monte_carlo_z": {"value": z, "limit": MC_Z_LIMIT, "pass": z < MC_Z_LIMIT},
    }
    if not report.degenerate:
        h = 1e-5
        if lengths.l34 + h < report.bounds.l2:
            resid = schlafli_residual(lengths, h)
            checks["schlafli_residual"] = {"value": resid, "limit": SCHLAFLI_LIMIT,
                                           "pass": resid < SCHLAFLI_LIMIT}
    all_pass = all(c["pass"] for c in checks.values())
    doc = {
        "input": _echo(lengths),
        "command": "validate",
        "existence": _existence_block(report),
        "volume": {
            "edge_integral": _volume_block(res),
            "sforza": _volume_block(sf),
            "monte_carlo": _volume_block(mc),
        },
        **blocks,
        "checks": checks,
        "pass": all_pass,
    }
    _emit(doc, args, out)
    return EXIT_OK if all_pass else EXIT_NUMERICAL


def _emit(doc: dict, args, out) -> None:
    if getattr(args, "format", "json") == "csv" and doc.get("command") != "sweep":
        # flat key,value listing for non-tabular commands
        print("key,value", file=out)
        for key, value in _flatten(doc):
            print(f"{key},{value}", file=out)
        return
    print(_dump_json(doc), file=out)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        key = prefix.rstrip(".")
        if isinstance(obj, float):
            yield key, _csv_number(obj)
        else:
            yield key, str(obj).lower() if isinstance(obj, bool) else str(obj)


_COMMANDS = {
    "check": _cmd_check,
    "angles": _cmd_angles,
    "volume": _cmd_volume,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
}


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="hytet",
        description="Compact hyperbolic tetrahedra from edge lengths: "
                    "existence, dihedral angles, and volume.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("check", "existence test and admissible interval for l34"),
        ("angles", "all six dihedral angles"),
        ("volume", "volume by the edge-length integral"),
        ("sweep", "table of (t, dV/dt, V) across the admissible interval"),
        ("validate", "full property battery with independent oracles"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?",
                       help="JSON input document path, or - for stdin")
        p.add_argument("--edges", help="inline lengths: l12=..,l13=..,l14=..,"
                                       "l23=..,l24=..,l34=..")
        p.add_argument("--tol", type=float, default=None,
                       help="quadrature tolerance (default 1e-10, env HYTET_TOL)")
        p.add_argument("--mc-samples", type=int, default=None, dest="mc_samples",
                       help="Monte Carlo sample count (env HYTET_MC_SAMPLES)")
        p.add_argument("--seed", type=int, default=None,
                       help="Monte Carlo seed (env HYTET_SEED)")
        p.add_argument("--format", choices=("json", "csv"),
                       default="csv" if name == "sweep" else "json",
                       help="output format")
        if name == "volume":
            p.add_argument("--validate", action="store_true",
                           help="add Sforza and Monte Carlo cross-checks")
        if name == "sweep":
            p.add_argument("--samples", type=int, default=None,
                           help=f"grid size (default {DEFAULT_SWEEP_SAMPLES})")
    return parser


def run(argv: list[str], stdout=None, stderr=None) -> int:
    """Execute the CLI; returns the exit code instead of exiting."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        doc = _load_document(args)
        lengths = _lengths_from_document(doc)
        quad, mc_samples, seed = _settings(args, doc)
        return _COMMANDS[args.command](lengths, args, out, err,
                                       quad, mc_samples, seed)
    except _UsageError as e:
        print(f"hytet: input error: {e}", file=err)
        return EXIT_USAGE
    except DomainError as e:
        print(f"hytet: input error: {e}", file=err)
        return EXIT_USAGE
    except ExistenceError as e:
        print(f"hytet: not a tetrahedron: {e}", file=err)
        if e.report is not None:
            doc = {"command": "error", "existence": _existence_block(e.report)}
            print(_dump_json(doc), file=out)
        return EXIT_NOT_A_TETRAHEDRON
    except NotATetrahedronError as e:
        print(f"hytet: not a tetrahedron: {e}", file=err)
        return EXIT_NOT_A_TETRAHEDRON
    except NumericalError as e:
        print(f"hytet: numerical failure: {e}", file=err)
        return EXIT_NUMERICAL
    except HytetError as e:
        print(f"hytet: error: {e}", file=err)
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
