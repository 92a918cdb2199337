"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or domain
error, 3 empty correspondence value, 4 truncation too small for a failure
certificate, 5 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from . import correspondences as corr
from .checker import SampleSpec, default_vlsc_targets, hlsc_modulus, run_proposition_suite, vlsc_check
from .config import Config, load_config, parse_float_list
from .errors import DimensionMismatch, DomainError, EmptySetError
from .kernels import BACKEND
from .metric import dist_to_set
from .seq import TruncSeq, unit_ray
from .witnesses import hlsc_failure_certificate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EMPTY, EXIT_TRUNCATION, EXIT_IO = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="flat key=value file; explicit flags override it")
    g.add_argument("--K", type=int, help="truncation dimension (default 50)")
    g.add_argument("--seed", type=int, help="random seed (default 42)")
    g.add_argument("--tol", type=float, help="membership tolerance for sampled points (default 1e-12)")
    g.add_argument("--bisect-tol", type=float, dest="bisect_tol", help="absolute bisection tolerance (default 1e-12)")
    g.add_argument("--box", type=float, help="sampling box for unbounded t1 (default 10)")
    g.add_argument("--window", type=float, help="sampling window below caps (default 5)")
    g.add_argument("--n-samples", type=int, dest="n_samples", help="samples per set (default 500)")
    g.add_argument("--x-grid", dest="x_grid", help="comma-separated parameter grid")
    g.add_argument("--r-grid", dest="r_grid", help="comma-separated radius grid")
    g.add_argument("--out", dest="output", help="write the report here instead of stdout")
    g.add_argument("--format", choices=("json", "csv"), help="report format (default json)")


def _add_point(p: argparse.ArgumentParser, required: bool) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--ray", type=int, action="append", metavar="k", help="the point e^(k); repeatable where lists make sense")
    g.add_argument("--zero", action="store_true", help="the zero sequence")
    g.add_argument("--coords", help="comma-separated coordinates; padded with zeros to K")
    g.add_argument("--sample", type=int, metavar="n", help="n sampled members of the family at x = 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lscheck", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lscheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="sup-norm distance from a point to F1(x), F2(x) or F(x)")
    p.add_argument("--set", dest="set_label", choices=sorted(corr.FAMILIES), required=True)
    p.add_argument("--x", type=float, required=True)
    _add_point(p, required=True)
    _add_common(p)

    p = sub.add_parser("modulus", help="sampled excess of family(0) over family(x) along the x grid")
    p.add_argument("--family", choices=sorted(corr.FAMILIES), required=True)
    p.add_argument("--rays", action=argparse.BooleanOptionalAction, default=True,
                   help="include e^(2..K) among the points of family(0) (default on)")
    p.add_argument("--strategy", choices=("mixed",) + corr.SAMPLE_STRATEGIES, default="mixed")
    _add_common(p)

    p = sub.add_parser("certify", help="certificate that F is not H-lsc at zero for given x, r")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("vlsc", help="check dist(t, F(x)) <= r for x below the witness radius")
    _add_point(p, required=False)
    p.add_argument("--x-points", type=int, default=100, dest="x_points")
    _add_common(p)

    p = sub.add_parser("suite", help="run every proposition check")
    _add_common(p)
    return parser


def make_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    changes = {}
    for name in ("K", "seed", "tol", "bisect_tol", "box", "window", "n_samples", "output", "format"):
        v = getattr(args, name, None)
        if v is not None:
            changes[name] = v
    for name in ("x_grid", "r_grid"):
        v = getattr(args, name, None)
        if v is not None:
            changes[name] = parse_float_list(v)
    cfg = cfg.replace(**changes)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.output:
        parent = os.path.dirname(os.path.abspath(cfg.output))
        if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
            raise OSError(f"cannot write to {cfg.output}")
    return cfg


def parse_points(args: argparse.Namespace, K: int, family: str = "F") -> list[tuple[str, TruncSeq]]:
    if args.zero:
        return [("zero", TruncSeq.zeros(K))]
    if args.ray:
        return [(f"e^({k})", unit_ray(k, K)) for k in args.ray]
    if args.coords:
        vals = [float(v) for v in args.coords.split(",") if v.strip()]
        if len(vals) > K:
            raise UsageError(f"--coords has {len(vals)} values but K={K}")
        return [("coords", TruncSeq(vals + [0.0] * (K - len(vals))))]
    if args.sample:
        S = corr.make_family(family, 0.0, K)
        return [(f"sample[{i}]", p) for i, p in enumerate(corr.sample(S, args.sample, "interior", args.seed or 0))]
    return []


def envelope(cfg: Config, command: str, results) -> dict:
    return {
        "meta": {"tool": "lscheck", "version": __version__, "command": command, "seed": cfg.seed, "backend": BACKEND},
        "config": cfg.to_dict(),
        "results": results,
    }


def fmt17(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit(cfg: Config, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def cmd_dist(args, cfg: Config) -> int:
    S = corr.make_family(args.set_label, args.x, cfg.K)
    if S.empty:
        raise EmptySetError()
    rows = []
    for label, p in parse_points(args, cfg.K, args.set_label):
        res = dist_to_set(S, p, abs_tol=cfg.bisect_tol)
        rows.append({"point": label, **res.to_dict()})
    results = {"set": S.describe(), "distances": rows, "max_dist": max(r["dist"] for r in rows)}
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["set", "x", "point", "dist", "iterations"])
        for r in rows:
            w.writerow([S.label, fmt17(float(S.x)), r["point"], fmt17(r["dist"]), r["iterations"]])
        emit(cfg, buf.getvalue())
    else:
        emit(cfg, dump_json(envelope(cfg, "dist", results)))
    return EXIT_OK


def cmd_modulus(args, cfg: Config) -> int:
    spec = SampleSpec(cfg.n_samples, args.strategy, cfg.seed, cfg.box, cfg.window)
    table = hlsc_modulus(args.family, list(cfg.x_grid), spec, cfg.K, args.rays, cfg.bisect_tol)
    for w in table.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "x", "excess_lb", "attained_at"])
        for r in table.rows():
            w.writerow([r["family"], fmt17(float(r["x"])), fmt17(r["excess_lb"]), r["attained_at"] or ""])
        emit(cfg, buf.getvalue())
    else:
        emit(cfg, dump_json(envelope(cfg, "modulus", table.to_dict())))
    return EXIT_OK if table.passed else EXIT_FAIL


def cmd_certify(args, cfg: Config) -> int:
    cert = hlsc_failure_certificate(args.x, args.r, cfg.K)
    emit(cfg, dump_json(envelope(cfg, "certify", cert.to_dict())))
    if cert.status == "truncation-insufficient":
        print(f"truncation-insufficient: required K' >= {cert.extra['required_K']}", file=sys.stderr)
        return EXIT_TRUNCATION
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_vlsc(args, cfg: Config) -> int:
    targets = [p for _, p in parse_points(args, cfg.K)] or default_vlsc_targets(cfg.K)
    report = vlsc_check(targets, list(cfg.r_grid), args.x_points)
    emit(cfg, dump_json(envelope(cfg, "vlsc", report.to_dict())))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_suite(args, cfg: Config) -> int:
    report = run_proposition_suite(cfg)
    for w in report["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    emit(cfg, dump_json(envelope(cfg, "suite", report)))
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {"dist": cmd_dist, "modulus": cmd_modulus, "certify": cmd_certify, "vlsc": cmd_vlsc, "suite": cmd_suite}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[args.command](args, cfg)
    except EmptySetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (UsageError, DomainError, DimensionMismatch, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
