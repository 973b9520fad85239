"""Command-line entry point: ``flagorbits <command> [flags]``."""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys

from .explorer import FlowConfig, empirical_orbit_census
from .flag_models import parse_point
from .geometry import orbit_dimension
from .invariants import ZERO_TOL, classify_point
from .lie_core import FAMILIES, DomainError, RealFormSpec
from .parabolic import check_conditions, max_parabolic_classes
from .theorems import classify_manifolds
from .triality import so53_audit, verify_theta_automorphism

COMMANDS = ("classify", "classify-manifolds", "orbit-dim", "parabolic-table",
            "verify-triality", "explore", "check-conditions")
SEED_ENV = "FLAGORBITS_SEED"

# flag name -> converter, for values coming from a --config file
_CONFIG_KEYS = {"form": str, "p": int, "q": int, "n": int, "k": int, "series": str, "twist": int,
                "point": str, "seed": int, "samples": int, "format": str, "zero_tol": float,
                "trials": int}


class UsageError(Exception):
    pass


def _parser():
    ap = argparse.ArgumentParser(prog="flagorbits",
                                 description="Orbits of real forms of classical Lie algebras on flag manifolds.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--form", choices=FAMILIES)
    ap.add_argument("--p", type=int)
    ap.add_argument("--q", type=int)
    ap.add_argument("--n", type=int, help="complex dimension of the manifold")
    ap.add_argument("--k", type=int, help="matrix size, for forms without a signature")
    ap.add_argument("--series", choices=("A", "B", "C", "D"))
    ap.add_argument("--twist", type=int)
    ap.add_argument("--point", help="homogeneous coordinates, e.g. 1:0:i or 0.5:1+2j")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--zero-tol", dest="zero_tol", type=float)
    ap.add_argument("--format", choices=("json", "text"))
    ap.add_argument("--config", help="file of key=value lines supplying defaults for the flags")
    return ap


def _load_config(path):
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_string("[flagorbits]\n" + fh.read())
    except (OSError, configparser.Error) as e:
        raise UsageError(f"cannot read config {path}: {e}")
    out = {}
    for key, raw in cp["flagorbits"].items():
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](raw.strip().strip('"'))
        except ValueError:
            raise UsageError(f"bad value for {key}: {raw!r}")
    return out


def _resolve(args):
    if args.config:
        for key, val in _load_config(args.config).items():
            if getattr(args, key) is None:
                setattr(args, key, val)
    if args.seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            args.seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer")
    args.format = args.format or "json"
    args.twist = args.twist or 0
    args.zero_tol = ZERO_TOL if args.zero_tol is None else args.zero_tol
    if args.zero_tol <= 0:
        raise UsageError("--zero-tol must be positive")
    return args


def _matrix_size(args, point_len=None):
    """Matrix size for forms given without a signature."""
    if args.k is not None:
        return args.k
    if point_len is not None:
        return point_len
    if args.n is None:
        raise UsageError(f"--form {args.form} needs --k, --n or --point")
    f = args.form
    if f == "so_star" or (f == "complex" and args.series in ("B", "D")):
        return args.n + 2
    return args.n + 1


def build_spec(args, point_len=None) -> RealFormSpec:
    f = args.form
    if f is None:
        raise UsageError("--form is required")
    if f in ("su", "sp", "so"):
        if args.p is None or args.q is None:
            raise UsageError(f"--form {f} needs --p and --q")
        if args.twist and f != "so":
            raise UsageError("--twist only applies to --form so")
        return {"su": RealFormSpec.su, "sp": RealFormSpec.sp}[f](args.p, args.q) if f != "so" \
            else RealFormSpec.so(args.p, args.q, args.twist)
    if args.p is not None or args.q is not None:
        raise UsageError(f"--form {f} takes no signature")
    if args.twist:
        raise UsageError("--twist only applies to --form so")
    if f == "complex" and args.series is None:
        raise UsageError("--form complex needs --series")
    k = _matrix_size(args, point_len)
    if f == "sl_h":
        if k % 2:
            raise UsageError("sl(m,H) needs an even matrix size")
        return RealFormSpec.sl_h(k // 2)
    if f == "complex":
        return RealFormSpec.complex_as_real(args.series, k)
    return {"sl_r": RealFormSpec.sl_r, "sp_r": RealFormSpec.sp_r, "so_star": RealFormSpec.so_star}[f](k)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


# ---------------------------------------------------------------------------
# commands: each returns (payload, text, ok)


def _cmd_classify(args):
    _need(args, "point")
    z = parse_point(args.point)
    spec = build_spec(args, len(z))
    c = classify_point(spec, z, args.zero_tol)
    out = {"form": spec.name, "point": z.to_json(), **c.to_json()}
    unc = " (near an orbit boundary)" if c.boundary_uncertain else ""
    return out, f"{z} lies in {c.label} of {spec}{unc}", True


def _cmd_orbit_dim(args):
    _need(args, "point")
    z = parse_point(args.point)
    spec = build_spec(args, len(z))
    d = orbit_dimension(spec, z)
    return {"form": spec.name, "point": z.to_json(), "orbit_dim": d, "exact": z.exact}, \
        f"orbit of {spec} through {z} has real dimension {d}", True


def _cmd_check_conditions(args):
    _need(args, "n")
    spec = build_spec(args)
    r = check_conditions(spec, args.n)
    return r.to_json(), f"{spec}, n={args.n}: {r.message()}", True


def _cmd_classify_manifolds(args):
    _need(args, "n")
    spec = build_spec(args)
    r = classify_manifolds(spec, args.n)
    text = r.to_text() + "".join(f"\n  note: {x}" for x in r.notes)
    return r.to_json(), text, True


def _cmd_parabolic_table(args):
    _need(args, "series", "k")
    info = max_parabolic_classes(args.series, args.k)
    lines = [f"{args.series}{args.k}: {len(info.classes)} maximal class(es)"]
    for row in info.rows:
        mark = "*" if row.is_max else " "
        lines.append(f" {mark} {row.sub.label:7s} dim {row.dim:3d}  codim {row.codim:3d}"
                     + (f"  -> {row.model}" if row.is_max else ""))
    return info.to_json(), "\n".join(lines), info.count_matches


def _cmd_verify_triality(args):
    rep = verify_theta_automorphism()
    audit = so53_audit(1)
    out = {"automorphism": rep.to_dict(), "so53_conditions": audit.to_dict()}
    ok = rep.passed and audit.contained
    text = (f"theta automorphism: {'pass' if rep.passed else 'FAIL'} ({rep.pairs_checked} pairs)\n"
            f"so(5,3)^1 conditions: {'hold' if audit.contained else 'VIOLATED'} on all "
            f"{audit.form_dim} basis images; rank {audit.condition_rank}, solution space "
            f"dimension {audit.solution_dim}")
    return out, text, ok


def _cmd_explore(args):
    _need(args, "n")
    spec = build_spec(args)
    cfg = FlowConfig(seed=args.seed, zero_tol=args.zero_tol,
                     **({"trials": args.trials} if args.trials else {}))
    rep = empirical_orbit_census(spec, args.n, args.samples or 10_000, cfg)
    lines = [f"{spec} on a {args.n}-dimensional flag manifold, {rep.samples} samples, seed {rep.seed}"]
    for name, info in sorted(rep.counts.items()):
        lines.append(f"  {name:10s} {info['count']:6d}  dim {info['min_dim']}..{info['max_dim']}")
    for name, info in sorted(rep.constructed.items()):
        lines.append(f"  {name:10s} constructed {info['point']}  dim {info['orbit_dim']}")
    lines += [f"  MISMATCH {m}" for m in rep.mismatches] or ["  census matches the orbit list"]
    return rep.to_json(), "\n".join(lines), rep.passed


_DISPATCH = {
    "classify": _cmd_classify, "orbit-dim": _cmd_orbit_dim, "check-conditions": _cmd_check_conditions,
    "classify-manifolds": _cmd_classify_manifolds, "parabolic-table": _cmd_parabolic_table,
    "verify-triality": _cmd_verify_triality, "explore": _cmd_explore,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args = _resolve(args)
        payload, text, ok = _DISPATCH[args.command](args)
    except (UsageError, DomainError, ValueError) as e:
        print(f"flagorbits {args.command}: error: {e}", file=err)
        return 2
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
