"""Command-line front end.

Subcommands: topology, place, deliver, simulate, verify, ndt, compare,
export-example.  A JSON config file can preload any flag; explicit flags
win.  Exit codes: 0 ok, 2 validation error, 3 unsupported regime, 4 I/O
error.  Identical config plus seed yields byte-identical outputs.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import example_export
from .alignment import build_groups, verify_group_cover
from .edge_decode import run_end_to_end
from .errors import SchemeError, UnsupportedRegime
from .fronthaul import DemandVector, build_fronthaul, save_fronthaul
from .ia_verify import build_verification_report
from .ndt import (
    compare_connectivity,
    corner_cache_sizes,
    csv_row,
    CSV_HEADER,
    ndt_point,
    ndt_sweep,
    write_sweep_csv,
)
from .placement import (
    FileLibrary,
    build_placement,
    load_placement,
    save_placement,
)
from .topology import NetworkParams, build_topology

ENV_OUTPUT_DIR = "PCFRAN_OUTPUT_DIR"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _default_out() -> str:
    return os.environ.get(ENV_OUTPUT_DIR, "out")


def _params_from_args(args) -> NetworkParams:
    kwargs = {"H": args.H, "r": args.r}
    if getattr(args, "N", None) is not None:
        kwargs["N"] = args.N
    if getattr(args, "F", None) is not None:
        kwargs["file_size_bytes"] = args.F
    if getattr(args, "rho", None) is not None:
        kwargs["rho"] = args.rho
    params = NetworkParams(**kwargs)
    if getattr(args, "M", None) is not None:
        kwargs["M"] = args.M
        params = NetworkParams(**kwargs)
    if getattr(args, "t", None) is not None:
        params = params.with_cache_parameter(args.t)
    return params


def _parse_demand(text: str, params: NetworkParams, seed: int):
    if text == "random":
        return None
    return DemandVector(tuple(int(x) for x in text.split(",")))


def cmd_topology(args) -> int:
    params = _params_from_args(args)
    topo = build_topology(params)
    print(json.dumps(topo.to_json_dict()))
    return EXIT_OK


def cmd_place(args) -> int:
    params = _params_from_args(args)
    library = FileLibrary.random(params.N, params.file_size_bytes, args.seed)
    t = params.t
    placement = build_placement(library, build_topology(params), t)
    out = Path(args.out)
    manifest = save_placement(placement, out)
    print(json.dumps({"manifest": str(manifest), "pieces": len(placement.pieces),
                      "piece_size": placement.piece_size}))
    return EXIT_OK


def cmd_deliver(args) -> int:
    placement = load_placement(args.placement)
    topo = placement.topology
    K = topo.K
    if args.demand == "random":
        from random import Random

        rng = Random(args.seed)
        demand = DemandVector(tuple(rng.randint(1, placement.N) for _ in range(K)))
    else:
        demand = DemandVector(tuple(int(x) for x in args.demand.split(",")))
    demand.validate(K, placement.N)
    messages = build_fronthaul(placement, demand)
    out = Path(args.out)
    index = save_fronthaul(messages, demand, out)
    print(json.dumps({"index": str(index), "messages": len(messages)}))
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = _params_from_args(args)
    placement = load_placement(args.placement) if args.placement else None
    demand = _parse_demand(args.demand, params, args.seed)
    report = run_end_to_end(params, demand=demand, seed=args.seed,
                            placement=placement, dump_dir=args.dump_files)
    doc = report.as_dict()
    recovered = sum(1 for u in doc["per_user"] if u["ok"])
    doc["summary"] = f"{recovered}/{len(doc['per_user'])} users recovered bit-exactly"
    text = json.dumps(doc, indent=1)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if not report.all_ok:
        print("error: validation: delivery failed for some users", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params_from_args(args)
    topo = build_topology(params)
    t = params.t
    if t.denominator != 1:
        raise SchemeError(f"verification needs integer t, got {t}")
    groups = build_groups(topo, int(t))
    cover = verify_group_cover(groups, topo, int(t))
    spot_users = [1] if args.spotcheck and groups else []
    report = build_verification_report(
        groups, topo, int(t), degree=args.degree, seed=args.seed,
        spotcheck_users=spot_users,
    )
    report["group_cover"] = cover.as_dict()
    text = json.dumps(report, indent=1)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK if cover.ok else EXIT_VALIDATION


def cmd_ndt(args) -> int:
    params = _params_from_args(args)
    buf = io.StringIO()
    if args.sweep or args.grid:
        if args.grid:
            grid = [Fraction(x) for x in args.grid.split(",")]
        else:
            grid = sorted({Fraction(m) for m in range(params.N + 1)}
                          | set(corner_cache_sizes(params)))
        rows = ndt_sweep(params, grid)
        write_sweep_csv(rows, buf)
    else:
        result = ndt_point(params)
        import csv as _csv

        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerow(csv_row(params, result))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_compare(args) -> int:
    rhos = args.rho if args.rho else [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(10)]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    gaps = []
    for rho in rhos:
        rows = compare_connectivity(args.H, args.rA, args.rB, args.N, rho)
        buf = io.StringIO()
        sweep_rows = []
        for row in rows:
            pa = NetworkParams(H=args.H, r=args.rA, N=args.N, rho=rho, M=row.M)
            pb = NetworkParams(H=args.H, r=args.rB, N=args.N, rho=rho, M=row.M)
            sweep_rows.append((pa, row.result_a))
            sweep_rows.append((pb, row.result_b))
            gaps.append(
                {
                    "M": str(row.M),
                    "rho": str(rho),
                    "delta_A": str(row.result_a.delta),
                    "delta_B": str(row.result_b.delta),
                    "gap": str(row.gap),
                    "both_proven": row.comparable,
                }
            )
        write_sweep_csv(sweep_rows, buf)
        name = f"comparison_rho_{rho.numerator}-{rho.denominator}.csv"
        (out_dir / name).write_text(buf.getvalue())
        written.append(str(out_dir / name))
    (out_dir / "gaps.json").write_text(json.dumps(gaps, indent=1) + "\n")
    print(json.dumps({"csv": written, "gaps": str(out_dir / "gaps.json")}))
    return EXIT_OK


def cmd_export_example(args) -> int:
    export = example_export.build_scenario_export()
    if args.format == "json":
        text = json.dumps(example_export.as_json_dict(export), indent=1) + "\n"
    else:
        text = example_export.render_text(export)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_network_flags(p, with_cache=True, with_rho=False, with_file=False):
    p.add_argument("--H", type=int, required=True, help="number of edge nodes")
    p.add_argument("--r", type=int, required=True, help="ENs per user")
    p.add_argument("--N", type=int, help="library size (default C(H,r))")
    if with_file:
        p.add_argument("--F", type=int, help="file size in bytes (default 4096)")
    if with_cache:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--M", type=_fraction, help="cache size in file units")
        group.add_argument("--t", type=_fraction, help="normalized cache parameter")
    if with_rho:
        p.add_argument("--rho", type=_fraction, help="fronthaul rate (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcfran",
        description="Coded caching and aligned delivery for partially connected fog RANs",
    )
    parser.add_argument("--config", help="JSON file preloading flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("topology", help="emit the EN-user topology as JSON")
    _add_network_flags(p, with_cache=False)
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("place", help="run placement and persist manifest plus blobs")
    _add_network_flags(p, with_file=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("deliver", help="generate fronthaul messages from a placement")
    p.add_argument("--placement", required=True, help="placement directory")
    p.add_argument("--demand", default="random", help='"random" or comma-separated ids')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_deliver)

    p = sub.add_parser("simulate", help="full pipeline with bit-exact recovery check")
    _add_network_flags(p, with_rho=True, with_file=True)
    p.add_argument("--demand", default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--placement", help="reuse a persisted placement directory")
    p.add_argument("--dump-files", help="write recovered files here for diffing")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="alignment audit and subspace census as JSON")
    _add_network_flags(p)
    p.add_argument("--degree", type=int, default=1, help="direction degree for checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spotcheck", action="store_true", help="include a numeric rank check")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ndt", help="delivery-time point or sweep as CSV")
    _add_network_flags(p, with_rho=True)
    p.add_argument("--sweep", action="store_true", help="sweep M over 0..N plus corners")
    p.add_argument("--grid", help="explicit comma-separated M grid")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_ndt)

    p = sub.add_parser("compare", help="NDT comparison of two connectivities")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--rA", type=int, required=True)
    p.add_argument("--rB", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--rho", type=_fraction, action="append",
                   help="repeatable; default 1/2, 1, 2, 10")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("export-example", help="regenerate the 5x10 scenario tables")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_example)

    return parser


def _apply_config(argv: list[str]) -> list[str]:
    """Prepend flag values from --config; explicit flags override them."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    config = json.loads(Path(path).read_text())
    rest = argv[:idx] + argv[idx + 2 :]
    if not rest:
        return rest
    command, tail = rest[0], rest[1:]
    exclusive = {"M": ("M", "t"), "t": ("M", "t")}
    injected = []
    for key, value in config.items():
        blocked = exclusive.get(key, (key,))
        if any(f"--{name}" in tail for name in blocked):
            continue
        flag = f"--{key}"
        if value is True:
            injected.append(flag)
        else:
            injected.extend([flag, str(value)])
    return [command] + injected + tail


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(argv)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    args = parser.parse_args(argv)
    if getattr(args, "out", None) is None and hasattr(args, "out"):
        if args.command in ("place", "deliver", "compare"):
            args.out = _default_out()
    try:
        return args.func(args)
    except UnsupportedRegime as exc:
        print(f"error: unsupported-regime: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SchemeError as exc:
        print(f"error: validation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
