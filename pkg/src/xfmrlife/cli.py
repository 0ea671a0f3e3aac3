"""
Command-line entry point: ``xfmrlife synth | run | compare``.

Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
"""

import argparse
import csv
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import fileio
from .config import ConfigError, RunConfig, apply_overrides, config_from_dict
from .exceptions import UsageError, ValidationError, XfmrLifeError
from .runner import StreamingLifetimeRun, summarize
from .scenarios import CASE_LABELS, build_case
from .thermal import MODES, OperatingInterval, simulate

logger = logging.getLogger("xfmrlife")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2

# Rank of each recognised case label; lifetimes must fall as rank rises.
CASE_RANK = {
    "mild": 1, "case1": 1,
    "warm": 2, "case2": 2,
    "warm+overload": 3, "case3": 3,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_config(args) -> RunConfig:
    data = fileio.load_json_config(args.config) if args.config else None
    config = config_from_dict(data)
    return apply_overrides(
        config,
        seed=args.seed,
        mode=getattr(args, "mode", None),
        tolerance=getattr(args, "tolerance", None),
        window=getattr(args, "window", None),
        horizon_hours=getattr(args, "horizon", None),
    )


def cmd_synth(args) -> int:
    config = _load_config(args)
    scenario = build_case(
        args.case,
        seed=config.seed,
        horizon_hours=config.horizon_hours,
        climate=config.climate_spec(args.case),
        load=config.load_spec(),
        overload=config.overload_spec() if args.case == 3 else None,
    )
    out = Path(args.out)
    path = out / f"case{args.case}_scenario.csv"
    fileio.write_scenario_csv(path, scenario.ambient, scenario.k_i, scenario.k_u)
    written = [path]
    if args.sensor:
        intervals = (
            OperatingInterval(a, ki, ku, config.estimator.interval_hours)
            for a, ki, ku in zip(scenario.ambient.tolist(), scenario.k_i.tolist(), scenario.k_u.tolist())
        )
        temps = [s.hotspot_temp for s in simulate(config.transformer, intervals, config.mode)]
        sensor_path = out / f"case{args.case}_sensor.csv"
        fileio.write_sensor_csv(sensor_path, temps)
        written.append(sensor_path)

    overload_hours = 0 if scenario.overload_hours is None else int(scenario.overload_hours.size)
    print(f"case {args.case} ({scenario.label}), seed {config.seed}, {len(scenario)} hours")
    print(f"  mean ambient    {np.mean(scenario.ambient):.3f} C")
    print(f"  mean K_U        {np.mean(scenario.k_u):.4f} pu (max {np.max(scenario.k_u):.4f})")
    print(f"  overload hours  {overload_hours}")
    for p in written:
        print(f"  wrote {p}")
    return EXIT_OK


def _infer_label(path: Path):
    stem = path.stem.lower()
    for case, label in CASE_LABELS.items():
        if stem.startswith(f"case{case}"):
            return label
    return None


def cmd_run(args) -> int:
    config = _load_config(args)
    input_path = Path(args.input)
    header = fileio.sniff_header(input_path)
    if header == fileio.SCENARIO_HEADER:
        route = "scenario"
        rows = fileio.read_scenario_csv(input_path, config.estimator.interval_hours)
    elif header == fileio.SENSOR_HEADER:
        route = "sensor"
        rows = [s.hotspot_temp for s in fileio.read_sensor_csv(input_path)]
    else:
        raise ValidationError(
            f"unrecognised header {','.join(header)!r}; expected "
            f"{','.join(fileio.SCENARIO_HEADER)!r} or {','.join(fileio.SENSOR_HEADER)!r}",
            line=1,
            path=input_path,
        )

    start = fileio.first_hour(input_path)
    if args.resume:
        run = StreamingLifetimeRun.from_snapshot(
            fileio.read_snapshot(args.resume), chars=config.transformer, aging=config.aging
        )
        if run.mode != config.mode or run.interval_hours != config.estimator.interval_hours:
            raise UsageError("snapshot mode/interval differs from the current configuration")
        # Rows already covered by the snapshot are skipped on purpose.
        skip = run.count - start
        if skip < 0:
            raise UsageError(f"input starts at hour {start}, after the snapshot's next hour {run.count}")
        rows = rows[skip:]
    else:
        run = StreamingLifetimeRun(
            chars=config.transformer,
            aging=config.aging,
            tolerance=config.estimator.tolerance,
            window=config.estimator.window,
            interval_hours=config.estimator.interval_hours,
            mode=config.mode,
        )
        if start != 0:
            raise UsageError(f"input starts at hour {start}; a fresh run needs hour 0 (use --resume)")

    if not rows:
        raise UsageError(f"{input_path}: no intervals to process")

    step = run.run_intervals if route == "scenario" else run.run_hotspots
    records = list(step(rows, stop_at_convergence=args.stop_at_convergence))

    out = Path(args.out)
    stem = input_path.stem.replace("_scenario", "").replace("_sensor", "")
    run_path = out / f"{stem}_run.csv"
    report_path = out / f"{stem}_report.json"
    fileio.write_run_csv(records, run_path)

    label = args.label or _infer_label(input_path)
    report = {
        "case": label,
        "input": input_path.name,
        "route": route,
        "stop_at_convergence": bool(args.stop_at_convergence),
        "resumed_from": str(args.resume) if args.resume else None,
        "config": config.echo(),
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        **summarize(run),
    }
    fileio.write_report(report, report_path)
    if args.snapshot:
        fileio.write_snapshot(run.snapshot(), args.snapshot)

    conv = report["convergence_step"]
    print(f"{label or stem}: {run.count} intervals, lifetime {report['final_estimate_years']:.4f} years, "
          f"converged at {conv if conv is not None else 'never'}")
    print(f"  wrote {run_path}")
    print(f"  wrote {report_path}")
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.reports) < 2:
        raise UsageError("compare needs at least two report files")
    rows = []
    for path in args.reports:
        report = fileio.read_report(path)
        rows.append((report.get("case") or Path(path).stem, report["convergence_step"], report["final_estimate_years"]))

    width = max(len(str(r[0])) for r in rows) + 2
    print(f"{'case':<{width}}{'convergence_step':>18}{'lifetime_years':>18}")
    for case, conv, years in rows:
        print(f"{case:<{width}}{'-' if conv is None else conv:>18}{years:>18.4f}")

    if args.out:
        path = Path(args.out) / "comparison.csv"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(("case", "convergence_step", "lifetime_years"))
                for case, conv, years in rows:
                    writer.writerow((case, "" if conv is None else conv, fileio.fmt(years)))
        except OSError as exc:
            raise fileio.FileIOError(f"cannot write {path}: {exc.strerror or exc}") from exc
        print(f"  wrote {path}")

    ranked = [(CASE_RANK[str(case).lower()], case, years) for case, _, years in rows if str(case).lower() in CASE_RANK]
    violations = [
        (a, b)
        for a in ranked
        for b in ranked
        if a[0] < b[0] and not a[2] > b[2]
    ]
    if violations:
        for a, b in violations:
            print(f"ordering violated: {a[1]} ({a[2]:.4f} y) is not longer-lived than {b[1]} ({b[2]:.4f} y)")
        return EXIT_USAGE
    if len({r[0] for r in ranked}) >= 2:
        print("ordering holds: mild > warm > warm+overload")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="JSON config file; flags override it")
    shared.add_argument("--seed", type=int, help="base seed (unsigned 64-bit)")
    shared.add_argument("--out", default=".", help="output directory (default: current)")
    shared.add_argument("-q", "--quiet", action="store_true", help="suppress progress logging")

    parser = _Parser(prog="xfmrlife", description="Transformer lifetime estimation from hottest-spot temperature.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    synth = sub.add_parser("synth", parents=[shared], help="synthesize a case-study scenario")
    synth.add_argument("--case", type=int, choices=sorted(CASE_LABELS), required=True)
    synth.add_argument("--horizon", type=int, help="hours to generate (default 8760)")
    synth.add_argument("--sensor", action="store_true", help="also write the simulated hottest-spot sensor CSV")
    synth.add_argument("--mode", choices=MODES, help="thermal initialization mode for --sensor")
    synth.set_defaults(func=cmd_synth)

    run = sub.add_parser("run", parents=[shared], help="run the estimation loop over a scenario or sensor CSV")
    run.add_argument("--input", required=True, help="scenario (hour,ambient_c,k_i,k_u) or sensor (hour,theta_h_c) CSV")
    run.add_argument("--mode", choices=MODES)
    run.add_argument("--tolerance", type=float, help="relative-change convergence tolerance (default 1e-5)")
    run.add_argument("--window", type=int, help="consecutive steps below tolerance (default 24)")
    run.add_argument("--stop-at-convergence", action="store_true")
    run.add_argument("--label", help="case label for the report (default: inferred from caseN_ file names)")
    run.add_argument("--snapshot", help="write the final estimator snapshot JSON here")
    run.add_argument("--resume", help="continue from a snapshot JSON")
    run.set_defaults(func=cmd_run)

    compare = sub.add_parser("compare", parents=[shared], help="tabulate lifetimes from two or more reports")
    compare.add_argument("reports", nargs="*")
    compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except fileio.FileIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (XfmrLifeError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
