"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a certified check fails (output
is still written), 2 for usage or input errors. The default tolerance can be
overridden with the ``LAPCERT_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import fields
from pathlib import Path

from . import io
from .boundary import boundary_matrix, write_triplets
from .complex import ComplexError, dim, parse_simplex, vietoris_rips
from .harness import (
    CANONICAL_SEED,
    ExperimentConfig,
    ExperimentReport,
    InsufficientSimplicesError,
    pentagon_example,
    property_campaign,
    run_filtration_insertions,
    run_rips_insertion_experiment,
    sharpness_example,
)
from .perturbation import certify_insertion, write_certificates
from .plot import scatter_svg
from .spectra import DEFAULT_TOL, eigenvalues, up_laplacian, write_matrix, write_spectrum

TOL_ENV = "LAPCERT_TOL"


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a decimal number") from None
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return tol


def _write_report(report: ExperimentReport, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_certificates(report.certificates, out / "certificates.csv")
    io.write_scatter(report.scatter, out / "scatter.csv")
    (out / "summary.txt").write_text(report.summary() + "\n")


def _report_exit(report: ExperimentReport, strict: bool) -> int:
    failed = [f"{c.label}: {name}" for c in report.certificates for name in c.failed_checks(strict)]
    for line in failed:
        print(f"FAILED {line}", file=sys.stderr)
    return 1 if failed else 0


def cmd_rips(args) -> int:
    points = io.read_points(args.points)
    convention = "radius" if args.radius_convention else "diameter"
    f = vietoris_rips(points, args.max_radius, args.max_dim, convention)
    io.write_filtration(f, args.out)
    counts = {}
    for _, s in f.events:
        counts[dim(s)] = counts.get(dim(s), 0) + 1
    print(", ".join(f"{n} {q}-simplices" for q, n in sorted(counts.items())))
    return 0


def cmd_laplacian(args) -> int:
    f = io.read_filtration(args.filtration)
    c = f.complex_at(args.scale if args.scale is not None else math.inf)
    lap = up_laplacian(c, args.k)
    spec = eigenvalues(lap, args.tol)
    if args.matrix_out:
        write_matrix(lap, args.matrix_out)
    if args.spectrum_out:
        write_spectrum(spec, args.spectrum_out)
    if args.boundary_out:
        write_triplets(boundary_matrix(c, args.k + 1), args.boundary_out)
    print(" ".join(f"{x:.12g}" for x in spec))
    return 0


def cmd_insert(args) -> int:
    f = io.read_filtration(args.filtration)
    s = parse_simplex(args.simplex)
    value = args.value if args.value is not None else f.max_value
    io.write_filtration(f.append(s, value), args.out)
    return 0


def cmd_certify(args) -> int:
    f = io.read_filtration(args.filtration)
    c = f.complex_at(args.scale if args.scale is not None else math.inf)
    s = parse_simplex(args.simplex)
    cert = certify_insertion(c, args.k, s, args.tol)
    if args.out:
        write_certificates([cert], args.out)
    print(cert.text())
    report = ExperimentReport("certify", [cert])
    return _report_exit(report, args.strict)


CONFIG_KEYS = {f.name for f in fields(ExperimentConfig)}


def _load_config(args) -> ExperimentConfig:
    values: dict = {"tol": args.tol}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    try:
        return ExperimentConfig(**values)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid config: {exc}") from None


def cmd_experiment(args) -> int:
    cfg = _load_config(args)
    if args.filtration:
        f = io.read_filtration(args.filtration)
        report = run_filtration_insertions(f, cfg.k, cfg.n_insertions, cfg.tol, name=str(args.filtration))
    elif args.points:
        f = vietoris_rips(io.read_points(args.points), cfg.max_radius, cfg.max_dim)
        report = run_filtration_insertions(f, cfg.k, cfg.n_insertions, cfg.tol, name=str(args.points))
    else:
        report = run_rips_insertion_experiment(cfg)
    _write_report(report, args.out_dir)
    print(report.summary())
    return _report_exit(report, args.strict)


def _example(report: ExperimentReport, args) -> int:
    if args.out_dir:
        _write_report(report, args.out_dir)
        cert = report.certificates[0]
        out = Path(args.out_dir)
        write_spectrum(cert.old, out / "spectrum_before.csv")
        write_spectrum(cert.new, out / "spectrum_after.csv")
    for cert in report.certificates:
        print(cert.text())
    return _report_exit(report, args.strict)


def cmd_sharpness(args) -> int:
    return _example(sharpness_example(args.tol), args)


def cmd_pentagon(args) -> int:
    return _example(pentagon_example(args.tol), args)


def cmd_campaign(args) -> int:
    summary = property_campaign(args.trials, args.seed, args.max_n)
    print(summary.text())
    return 0 if summary.passed else 1


def cmd_plot(args) -> int:
    pairs = io.read_scatter(args.scatter)
    Path(args.out).write_text(scatter_svg(pairs))
    above = sum(1 for x, y in pairs if y >= 2 * x)
    print(f"{len(pairs)} points, {above} on or above y = 2x")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lapcert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def tol_arg(sp):
        sp.add_argument("--tol", type=float, default=None, help=f"tolerance (default ${TOL_ENV} or {DEFAULT_TOL})")

    sp = sub.add_parser("rips", help="Vietoris-Rips filtration from a point CSV")
    sp.add_argument("--points", required=True)
    sp.add_argument("--max-radius", type=float, required=True)
    sp.add_argument("--max-dim", type=int, default=2)
    sp.add_argument("--radius-convention", action="store_true",
                    help="enter edges at half the distance (balls of radius r touching)")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_rips)

    sp = sub.add_parser("laplacian", help="up-Laplacian and spectrum of a filtration at a scale")
    sp.add_argument("--filtration", required=True)
    sp.add_argument("-k", type=int, default=1)
    sp.add_argument("--scale", type=float)
    sp.add_argument("--matrix-out")
    sp.add_argument("--spectrum-out")
    sp.add_argument("--boundary-out", help="B_{k+1} as row,col,sign triplets")
    tol_arg(sp)
    sp.set_defaults(func=cmd_laplacian)

    sp = sub.add_parser("insert", help="append a simplex to a filtration")
    sp.add_argument("--filtration", required=True)
    sp.add_argument("--simplex", required=True, help="dash-joined ascending ids, e.g. 0-1-2")
    sp.add_argument("--value", type=float)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_insert)

    sp = sub.add_parser("certify", help="certify one simplex insertion")
    sp.add_argument("--filtration", required=True)
    sp.add_argument("-k", type=int, default=1)
    sp.add_argument("--simplex", required=True)
    sp.add_argument("--scale", type=float)
    sp.add_argument("--out")
    sp.add_argument("--strict", action="store_true", help="also fail on the literal two-sided estimate")
    tol_arg(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("experiment", help="reveal (k+1)-simplices of a Rips filtration one at a time")
    sp.add_argument("--config", help="JSON object with ExperimentConfig fields")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--n-points", dest="n_points", type=int)
    sp.add_argument("--max-radius", dest="max_radius", type=float)
    sp.add_argument("--max-dim", dest="max_dim", type=int)
    sp.add_argument("--n-insertions", dest="n_insertions", type=int)
    sp.add_argument("-k", type=int)
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--points", help="point CSV instead of seeded samples")
    src.add_argument("--filtration", help="filtration CSV instead of seeded samples")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--strict", action="store_true")
    tol_arg(sp)
    sp.set_defaults(func=cmd_experiment)

    for name, func, text in (("sharpness", cmd_sharpness, "two-vertex duplicate-edge example"),
                             ("pentagon", cmd_pentagon, "five-point Rips example with one 2-simplex")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--out-dir")
        sp.add_argument("--strict", action="store_true")
        tol_arg(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("campaign", help="randomized rank-one property campaign")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=CANONICAL_SEED)
    sp.add_argument("--max-n", type=int, default=6)
    sp.set_defaults(func=cmd_campaign)

    sp = sub.add_parser("plot", help="SVG scatter of drift against boundary norm")
    sp.add_argument("--scatter", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "tol") and args.tol is None:
            args.tol = default_tol()
        return args.func(args)
    except InsufficientSimplicesError as exc:
        print(f"error: {exc} (available: {exc.found})", file=sys.stderr)
    except (UsageError, io.InputError, ComplexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
