"""``verify`` command line entry point.

Exit status: 0 when every asserted suite passes, 1 when any asserted suite
has a failing trial, 2 on usage errors.  Report-only suites never affect the
exit status.
"""

import argparse
import csv
import json
import sys

from .suites import SUITES, InstanceConfig, run_suite


def _r_grid(text):
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid r list {text!r}")
    if not values or not all(0 < r <= 1 for r in values):
        raise argparse.ArgumentTypeError("r values must lie in (0, 1]")
    return values


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="verify", description="Run randomized verification suites.")
    p.add_argument("--suite", help="suite name or 'all'; see --list")
    p.add_argument("--list", action="store_true", help="print the suite names and anchors, then exit")
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--n", type=_positive_int, help="dimension (half-dimension for symplectic suites)")
    p.add_argument("--n-min", type=_positive_int)
    p.add_argument("--m", type=_positive_int, help="atoms per measure")
    p.add_argument("--m-min", type=_positive_int)
    p.add_argument("--measures", type=_positive_int, help="measures per product instance")
    p.add_argument("--support", type=_positive_int, help="atoms per measure in product instances")
    p.add_argument("--r", type=_r_grid, dest="r_grid", help="comma-separated powers in (0, 1]")
    p.add_argument("--weights", choices=("uniform", "random"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, help="inequality slack")
    p.add_argument("--karcher-tol", type=float, default=1e-11)
    p.add_argument("--cond-cap", type=float, help="condition number cap, at most 1e12")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--out", help="write the JSON report here (default: stdout)")
    p.add_argument("--csv", help="write one row per trial here")
    p.add_argument("--emit-instances", metavar="DIR", help="dump each trial's measures as JSON")
    return p


def _config(args):
    return InstanceConfig(
        trials=args.trials,
        n=args.n,
        n_min=args.n_min,
        m=args.m,
        m_min=args.m_min,
        measures=args.measures,
        support=args.support,
        r_grid=args.r_grid,
        weights=args.weights,
        cond_cap=args.cond_cap,
        tol=args.tol,
        karcher_tol=args.karcher_tol,
        seed=args.seed,
    )


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.list:
        for name, suite in SUITES.items():
            tag = " (report-only)" if suite.report_only else ""
            print(f"{name}{tag}: {suite.anchor}")
        return 0
    if args.suite is None:
        print("verify: --suite is required", file=sys.stderr)
        return 2
    if args.cond_cap is not None and not 1 <= args.cond_cap <= 1e12:
        print("verify: --cond-cap must lie in [1, 1e12]", file=sys.stderr)
        return 2
    if args.suite == "all":
        names = list(SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        print(f"verify: unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or 'all'", file=sys.stderr)
        return 2

    config = _config(args)
    reports = []
    for name in names:
        try:
            report = run_suite(name, config, jobs=args.jobs, emit_dir=args.emit_instances)
        except ValueError as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return 2
        reports.append(report)
        status = "REPORT" if report.report_only else ("PASS" if report.ok else "FAIL")
        print(
            f"[{status}] {name}: {report.passes}/{report.trials} worst_margin={report.worst_margin} "
            f"({report.wall_time:.1f}s)",
            file=sys.stderr,
        )

    payload = reports[0].to_json() if len(reports) == 1 and args.suite != "all" else [r.to_json() for r in reports]
    text = json.dumps(payload, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["suite", "seed", "trial", "margin", "pass"])
            for report in reports:
                for row in report.rows:
                    writer.writerow(row)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
