"""Command-line interface: ``mubpoly <command> ...``.

Every command prints one JSON document carrying a ``manifest`` block.
Exit codes: 0 success, 1 semantic failure, 2 usage or unsupported input.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .bloch import load_state
from .errors import MubPolyError
from .gcp import (
    BOUNDARY_TOLERANCE,
    build_gcp,
    classify_information,
    classify_membership,
    edges,
    theorem_report,
    vertex_coordinates,
)
from .info import bz_information, per_basis_information
from .mub import DEFAULT_TOLERANCE, generate_mub, load_mub, mub_to_json, verify_mub
from .sampling import DEFAULT_MAX_PROPOSALS
from .volume import MIN_SAMPLES, volume_ratio_report

SEED_ENV = "MUBPOLY_SEED"


class UsageError(Exception):
    pass


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(argv, seed=None, inputs=()) -> dict:
    return {
        "command": list(argv),
        "seed": seed,
        "version": __version__,
        "inputs": {str(p): _digest(p) for p in inputs},
        "timestamp": dt.datetime.now(dt.timezone.utc).isoformat(),
    }


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _emit(doc: dict, pretty: bool, out=None) -> None:
    out = out or sys.stdout
    if not pretty:
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    for key, value in doc.items():
        if key == "manifest":
            continue
        if isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k:<40} {v}\n")
        else:
            out.write(f"{key:<42} {value}\n")


def _load_inputs(args):
    """Parse --mubs / --state files up front so nothing runs on bad input."""
    mubs = load_mub(args.mubs) if getattr(args, "mubs", None) else None
    state = load_state(args.state) if getattr(args, "state", None) else None
    if mubs is not None and state is not None and state.shape[0] != mubs.dim:
        raise MubPolyError(f"state dimension {state.shape[0]} does not match MUB dimension {mubs.dim}")
    return mubs, state


def _subset(mubs, t):
    if t is None:
        return mubs
    if not 1 <= t <= mubs.t:
        raise MubPolyError(f"--t {t} outside 1..{mubs.t}")
    return mubs.subset(range(t))


def cmd_mub(args, argv) -> int:
    if args.action == "gen":
        if args.dim is None:
            raise UsageError("mub gen requires --dim")
        mubs = generate_mub(args.dim)
        report = verify_mub(mubs, args.tol)
        if args.out:
            Path(args.out).write_text(json.dumps(mub_to_json(mubs)))
        doc = {"dim": mubs.dim, "t": mubs.t, "construction_tag": mubs.construction_tag,
               "report": report.to_dict(), "out": args.out}
        inputs = ()
    else:
        if not args.input:
            raise UsageError("mub verify requires --in")
        mubs = load_mub(args.input, args.tol)
        report = mubs.report
        doc = {"dim": mubs.dim, "t": mubs.t, "construction_tag": mubs.construction_tag,
               "report": report.to_dict()}
        inputs = (args.input,)
    doc["manifest"] = _manifest(argv, inputs=inputs)
    _emit(doc, args.pretty)
    return 0 if report.passed else 1


def cmd_info(args, argv) -> int:
    mubs, state = _load_inputs(args)
    mubs = _subset(mubs, args.t)
    profile = per_basis_information(state, mubs)
    doc = {"per_basis": list(profile.per_basis), "total": profile.total, "t": mubs.t,
           "alpha": args.alpha, "bz": bz_information(state, mubs)}
    if args.alpha != 1:
        alt = per_basis_information(state, mubs, args.alpha)
        doc["per_basis_alpha"] = list(alt.per_basis)
        doc["total_alpha"] = alt.total
    doc["manifest"] = _manifest(argv, inputs=(args.state, args.mubs))
    _emit(doc, args.pretty)
    return 0


def cmd_classify(args, argv) -> int:
    mubs, state = _load_inputs(args)
    t = mubs.t if args.t is None else args.t
    gcp = build_gcp(mubs, t)
    doc = {"t": t}
    if args.rule in ("gauge", "both"):
        doc["gauge"] = classify_membership(state, gcp, args.tol).to_dict()
    if args.rule in ("info", "both"):
        doc["info"] = classify_information(state, gcp, args.tol).to_dict()
    if args.rule == "both":
        doc["agreement"] = doc["gauge"]["verdict"] == doc["info"]["verdict"]
    doc["manifest"] = _manifest(argv, inputs=(args.state, args.mubs))
    _emit(doc, args.pretty)
    return 0


def _gcp_from_args(args):
    if getattr(args, "mubs", None):
        mubs = load_mub(args.mubs)
    else:
        if args.dim is None:
            raise UsageError("either --dim or --mubs is required")
        mubs = generate_mub(args.dim)
    t = mubs.t if args.t is None else args.t
    return build_gcp(mubs, t)


def cmd_report(args, argv) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    gcp = _gcp_from_args(args)
    report = theorem_report(gcp, args.samples, seed, args.tol)
    doc = report.to_dict()
    doc["manifest"] = _manifest(argv, seed, inputs=(args.mubs,) if args.mubs else ())
    _emit(doc, args.pretty)
    return 0


def _append_log(path, record: dict, timestamp: str) -> None:
    fields = ["timestamp", "dim", "t", "n", "seed",
              "vol_gcp_exact", "vol_gcp_mc", "vol_gcp_mc_std_error",
              "vol_psd_in_gcp", "vol_psd_in_gcp_std_error",
              "vol_psd_in_span_ball", "vol_psd_in_span_ball_std_error",
              "ratio_gcp_to_ball_psd", "ratio_gcp_to_ball_psd_std_error"]
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore")
        if new:
            w.writeheader()
        w.writerow({"timestamp": timestamp, **record})


def cmd_volume(args, argv) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.samples < MIN_SAMPLES:
        raise UsageError(f"--samples must be >= {MIN_SAMPLES}")
    gcp = _gcp_from_args(args)
    record = volume_ratio_report(gcp, args.samples, seed, args.max_proposals)
    manifest = _manifest(argv, seed, inputs=(args.mubs,) if args.mubs else ())
    if args.log:
        _append_log(args.log, record, manifest["timestamp"])
    _emit({**record, "manifest": manifest}, args.pretty)
    return 0


def plot_csv(gcp) -> str:
    coords = vertex_coordinates(gcp)
    D = coords.shape[1]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "id", "u", "v", *[f"x{i + 1}" for i in range(D)]])
    for i, row in enumerate(coords):
        w.writerow(["vertex", i, "", "", *[format(float(x) + 0.0, ".17g") for x in row]])
    for i, j in edges(gcp):
        w.writerow(["edge", "", i, j, *[""] * D])
    return buf.getvalue()


def cmd_plotdata(args, argv) -> int:
    if args.dim != 2:
        raise UsageError("plotdata supports --dim 2 only")
    if args.t not in (2, 3):
        raise UsageError("plotdata supports --t 2 or --t 3")
    text = plot_csv(build_gcp(generate_mub(2), args.t))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mubpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mub", parents=[common], help="generate or verify a MUB file")
    p.add_argument("action", choices=["gen", "verify"])
    p.add_argument("--dim", type=int)
    p.add_argument("--out")
    p.add_argument("--in", dest="input")
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_mub)

    p = sub.add_parser("info", parents=[common], help="information profile of a state")
    p.add_argument("--state", required=True)
    p.add_argument("--mubs", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--alpha", type=float, default=1.0)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("classify", parents=[common], help="classify a state against a polytope")
    p.add_argument("--state", required=True)
    p.add_argument("--mubs", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--rule", choices=["info", "gauge", "both"], default="both")
    p.add_argument("--tol", type=float, default=BOUNDARY_TOLERANCE)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("report", parents=[common], help="audit the information rule on facet samples")
    p.add_argument("--dim", type=int)
    p.add_argument("--mubs")
    p.add_argument("--t", type=int)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=BOUNDARY_TOLERANCE)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("volume", parents=[common], help="exact and Monte Carlo volume record")
    p.add_argument("--dim", type=int)
    p.add_argument("--mubs")
    p.add_argument("--t", type=int)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int)
    p.add_argument("--log")
    p.add_argument("--max-proposals", type=int, default=DEFAULT_MAX_PROPOSALS)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("plotdata", help="vertex/edge CSV of the qubit polytopes")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except (UsageError, MubPolyError, ValueError, OSError) as exc:
        print(f"mubpoly: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
