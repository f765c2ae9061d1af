"""Command-line front end.

Subcommands: moments, certify, decompose, sos, support-points, catalog.
All inputs and outputs are flat structured-text files (JSON documents,
JSON-lines polynomials, CSV point clouds); float rendering round-trips
doubles exactly.  No interactive mode.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import plots
from .certify import FAIL, NOT_CHECKABLE, certify
from .decompose import decompose_measure
from .measures import dump_measure, load_measure, moments_of, support_audit
from .momentseq import dump_sequence, load_sequence, sequence_to_obj
from .polyring import load_poly
from .sampling import support_points
from .scenario import catalog, load_scenario
from .sosearch import decomposition_to_obj, find_certificate


def _add_common(sub):
    sub.add_argument("--tol", type=float, default=1e-8,
                     help="numerical tolerance (default 1e-8)")
    sub.add_argument("--seed", type=int, default=0,
                     help="random seed for randomized operations")


def _add_scenario_args(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--catalog", dest="catalog_name",
                       help="built-in scenario name (vetted curve)")
    group.add_argument("--scenario-file", type=Path,
                       help="scenario JSON file (curve hypotheses user-asserted)")


def _load_scenario(args):
    if args.catalog_name:
        entries = catalog()
        if args.catalog_name not in entries:
            raise SystemExit(
                f"unknown catalog scenario {args.catalog_name!r}; "
                f"choices: {', '.join(sorted(entries))}"
            )
        return entries[args.catalog_name].scenario
    with open(args.scenario_file) as fh:
        return load_scenario(fh)


def _write_or_stdout(path, writer):
    if path is None:
        writer(sys.stdout)
    else:
        with open(path, "w") as fh:
            writer(fh)


def cmd_moments(args):
    if args.order < 0 or args.order % 2:
        raise SystemExit("--order must be an even non-negative integer")
    with open(args.measure) as fh:
        mu = load_measure(fh)
    seq = moments_of(mu, args.order)
    _write_or_stdout(args.output, lambda fh: dump_sequence(seq, fh))
    return 0


def cmd_certify(args):
    with open(args.sequence) as fh:
        seq = load_sequence(fh)
    scenario = _load_scenario(args)
    report = certify(seq, scenario, tol=args.tol)
    print(report.render())
    if report.verdict == FAIL:
        return 1
    if report.verdict == NOT_CHECKABLE:
        return 2
    return 0


def cmd_decompose(args):
    with open(args.measure) as fh:
        mu = load_measure(fh)
    scenario = _load_scenario(args)
    audit = support_audit(mu, scenario, tol=args.tol)
    if not audit.passed:
        counts = audit.counts()
        print(f"support audit failed: {counts['violating']} violating point(s)",
              file=sys.stderr)
        return 1
    nu, sigma, lam, report = decompose_measure(mu, scenario, args.order,
                                               tol=args.tol)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "nu.json", "w") as fh:
        dump_measure([nu] if nu is not None else [], fh)
    with open(out / "sigma.json", "w") as fh:
        dump_measure(sigma, fh)
    with open(out / "lambda.json", "w") as fh:
        dump_sequence(lam, fh)
    print(report.render())
    print(f"wrote nu.json, sigma.json, lambda.json to {out}")
    return 0 if report.passed else 1


def cmd_sos(args):
    with open(args.poly) as fh:
        p = load_poly(fh)
    scenario = _load_scenario(args)
    result = find_certificate(p, scenario, args.degree_bound,
                              max_iters=args.max_iters, tol=args.tol)
    if args.output is not None and result.decomposition is not None:
        obj = decomposition_to_obj(result.decomposition)
        obj["found"] = result.found
        obj["iterations"] = result.iterations
        _write_or_stdout(args.output,
                         lambda fh: json.dump(obj, fh, indent=1))
    if result.found:
        labels = ", ".join(b.label for b in result.decomposition.blocks)
        print(f"certificate found after {result.iterations} iteration(s); "
              f"residual {result.residual:.3e}; blocks: {labels}")
        return 0
    print(f"no certificate found within {result.iterations} iterations "
          f"(best residual {result.residual:.3e}); this does not prove "
          f"non-membership")
    return 1


def cmd_support_points(args):
    scenario = _load_scenario(args)
    try:
        lo1, hi1, lo2, hi2 = (float(v) for v in args.bbox.split(","))
    except ValueError:
        raise SystemExit("--bbox must be x1min,x1max,x2min,x2max")
    bbox = [(lo1, hi1), (lo2, hi2)]
    pts = support_points(scenario, args.grid_step, bbox, tol=args.tol)

    def write(fh):
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "label"])
        for point, label in pts:
            writer.writerow([repr(point[0]), repr(point[1]), label])

    _write_or_stdout(args.output, write)
    if args.plot:
        title = args.catalog_name or str(args.scenario_file)
        plots.plot_support_points(pts, args.plot, title=title)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def cmd_catalog(args):
    if args.action != "list":
        raise SystemExit("usage: curvebumps catalog list")
    for name, entry in sorted(catalog().items()):
        s = entry.scenario
        gens = "; ".join(str(r) for r in s.generators)
        print(f"{name}: q = {s.q}; generators: {gens}")
        print(f"    {entry.doc}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvebumps",
        description="Truncated moment problems on curves with bumps",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("moments", help="moments of an explicit measure")
    p.add_argument("measure", type=Path, help="measure JSON file")
    p.add_argument("--order", type=int, required=True,
                   help="truncation order 2n (even)")
    p.add_argument("-o", "--output", type=Path, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_moments)

    p = subs.add_parser("certify",
                        help="positivity-certificate check of a sequence")
    p.add_argument("sequence", type=Path, help="sequence JSON file")
    _add_scenario_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = subs.add_parser("decompose",
                        help="split an audited measure into nu/q + sigma")
    p.add_argument("measure", type=Path, help="measure JSON file")
    _add_scenario_args(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out-dir", type=Path, default=Path("."))
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = subs.add_parser("sos",
                        help="Gram-certificate search in Sigma^2 + qQ")
    p.add_argument("poly", type=Path, help="polynomial JSON-lines file")
    _add_scenario_args(p)
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("-o", "--output", type=Path, default=None,
                   help="certificate JSON file")
    _add_common(p)
    p.set_defaults(func=cmd_sos)

    p = subs.add_parser("support-points",
                        help="labeled point cloud of the support set")
    _add_scenario_args(p)
    p.add_argument("--grid-step", type=float, required=True)
    p.add_argument("--bbox", default="-1.5,1.5,-1.5,1.5",
                   help="x1min,x1max,x2min,x2max")
    p.add_argument("-o", "--output", type=Path, default=None,
                   help="CSV output (default stdout)")
    p.add_argument("--plot", type=Path, default=None,
                   help="also render the point cloud to this image file")
    _add_common(p)
    p.set_defaults(func=cmd_support_points)

    p = subs.add_parser("catalog", help="inspect built-in scenarios")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
