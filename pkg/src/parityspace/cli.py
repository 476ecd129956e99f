"""``parityspace`` command line: parity matrices, distribution grids, validation, quantization."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .bornjordan import ConjectureViolation, ExactCache, bj_matrix_exact, bj_matrix_recursive
from .bornjordan.spectral import spectral_report_of
from .distributions import (
    PhaseGrid,
    distribution,
    marginals,
    total_integral,
    write_field_csv,
    write_marginal_csv,
)
from .fock import (
    cat_state,
    coherent_guard,
    coherent_state,
    load_state,
    number_state,
)
from .parity import FilterKind, ParityMatrix, parity_s, parity_tau, parity_wigner
from .quantize import quantization_table
from .validation import LEVELS, report_json, run_validation

KIND_CHOICES = ("wigner", "husimi", "s", "tau", "bj", "born-jordan")
DEFAULT_GRID = "-5:5:101,-5:5:101"


class ConfigError(ValueError):
    pass


def parse_state(spec: str):
    """vacuum | fock:n | cat | coherent:re,im | file:path"""
    name, _, arg = spec.partition(":")
    if name == "vacuum":
        return number_state(0, 1)
    if name == "fock":
        n = int(arg)
        return number_state(n, n + 1)
    if name == "cat":
        return cat_state(2)
    if name == "coherent":
        re, _, im = arg.partition(",")
        alpha = complex(float(re), float(im or 0.0))
        return coherent_state(alpha, coherent_guard(abs(alpha) ** 2) + 1)
    if name == "file":
        return load_state(arg)
    raise ConfigError(f"unknown state spec {spec!r}")


def parse_kind(kind: str, s: float | None, tau: float | None) -> FilterKind:
    if kind == "wigner":
        return FilterKind.wigner()
    if kind == "husimi":
        return FilterKind.s_param(-1.0)
    if kind == "s":
        if s is None:
            raise ConfigError("--kind s needs --s")
        return FilterKind.wigner() if s == 0 else FilterKind.s_param(s)
    if kind == "tau":
        if tau is None:
            raise ConfigError("--kind tau needs --tau")
        return FilterKind.tau_param(tau)
    if kind in ("bj", "born-jordan"):
        return FilterKind.born_jordan()
    raise ConfigError(f"unknown kind {kind!r}")


def _cache(args) -> ExactCache:
    return ExactCache(args.cache_dir) if args.cache_dir else ExactCache()


def build_parity(args) -> ParityMatrix:
    kind = parse_kind(args.kind, args.s, args.tau)
    N = args.dim
    if kind.tag == "wigner":
        return parity_wigner(N)
    if kind.tag == "s":
        return parity_s(kind.param, N)
    if kind.tag == "tau":
        return parity_tau(kind.param, N)
    if args.method == "exact":
        return bj_matrix_exact(N, cache=_cache(args))
    return bj_matrix_recursive(N, n_check=args.n_check, cache=_cache(args))[0]


def cmd_parity(args) -> int:
    par = build_parity(args)
    ent = par.entries
    summary = {
        "kind": par.kind.label,
        "dim": par.N,
        "provenance": par.provenance,
        "trace": float(np.trace(ent).real),
        "spectral_norm": float(np.linalg.norm(ent, 2)),
    }
    if par.kind.is_real and par.N >= 9:
        summary["rank9_energy_fraction"] = spectral_report_of(ent.real).rank9_energy_fraction
    if args.out:
        par.save(args.out)
        summary["out"] = str(args.out)
    print(json.dumps(summary))
    return 0


def _four_fold(field) -> bool | None:
    g = field.grid
    if g.nx != g.np or g.x_min != g.p_min or g.x_max != g.p_max or g.x_min != -g.x_max:
        return None
    v = field.values
    return bool(np.abs(np.rot90(v) - v).max() < 1e-8)


def cmd_dist(args) -> int:
    state = parse_state(args.state)
    kind = parse_kind(args.kind, args.s, args.tau)
    grid = PhaseGrid.parse(args.grid)
    field = distribution(state, kind, grid, N=args.dim, jobs=args.jobs)
    summary = {
        "kind": kind.label,
        "state": args.state,
        "grid": grid.to_spec(),
        "total_integral": total_integral(field),
        "min": float(field.values.real.min()),
        "max": float(field.values.real.max()),
        "max_imag": field.max_imag,
        "four_fold_symmetric": _four_fold(field),
    }
    if args.out:
        write_field_csv(field, args.out)
        summary["out"] = str(args.out)
    if args.marginals:
        mg = marginals(field)
        base = Path(args.marginals)
        px_path = base.with_name(base.stem + "_x" + base.suffix)
        pp_path = base.with_name(base.stem + "_p" + base.suffix)
        write_marginal_csv(mg.x, mg.px, px_path, "x")
        write_marginal_csv(mg.p, mg.pp, pp_path, "p")
        summary["marginals"] = [str(px_path), str(pp_path)]
    print(json.dumps(summary))
    return 0


def _run_validation(level: str, out=None, only=None) -> int:
    results = run_validation(level, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = report_json(results, level)
    text = json.dumps(report, indent=2)
    if out:
        Path(out).write_text(text)
    print(text)
    return 0 if report["all_passed"] else 1


def cmd_validate(args) -> int:
    only = {int(t) for t in args.only.split(",")} if args.only else None
    return _run_validation(args.level, args.out, only)


def cmd_quantize(args) -> int:
    rows = quantization_table(args.max_degree, args.dim)
    text = json.dumps(rows, indent=2)
    if args.out:
        Path(args.out).write_text(text)
    print(text)
    return 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of option defaults; flags take precedence")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker threads")
    p.add_argument("--cache-dir", default=None, help="exact-element cache (default $PSCACHE_DIR or ./pscache)")
    p.add_argument("--validate", choices=("none",) + LEVELS, default="none",
                   help="run the acceptance suite after the command")
    p.add_argument("--out", default=None, help="output path")


def _kind_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=KIND_CHOICES, default="wigner")
    p.add_argument("--s", type=float, default=None, help="s for --kind s (bounded for s <= 0)")
    p.add_argument("--tau", type=float, default=None, help="tau for --kind tau, in (0, 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parityspace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parity", help="build a parity matrix and print its diagnostics")
    _kind_opts(p)
    p.add_argument("--dim", type=int, default=40)
    p.add_argument("--method", choices=("recursive", "exact"), default="recursive",
                   help="Born-Jordan construction")
    p.add_argument("--n-check", type=int, default=80, help="validation bound for the recursion")
    _common(p)
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("dist", help="evaluate a distribution on a phase-space grid")
    _kind_opts(p)
    p.add_argument("--state", default="vacuum", help="vacuum | fock:n | cat | coherent:re,im | file:path")
    p.add_argument("--grid", default=DEFAULT_GRID, help="xmin:xmax:nx,pmin:pmax:np")
    p.add_argument("--dim", type=int, default=None, help="parity dimension (default: sized to the grid)")
    p.add_argument("--marginals", default=None, help="write x/p marginal CSVs next to this path")
    _common(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("validate", help="run the acceptance criteria")
    p.add_argument("--level", choices=LEVELS, default="fast")
    p.add_argument("--only", default=None, help="comma-separated criterion ids")
    _common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("quantize", help="Weyl vs Born-Jordan monomial table")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--dim", type=int, default=48)
    _common(p)
    p.set_defaults(func=cmd_quantize)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(k.replace("-", "_") for k in cfg) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        sub.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        code = args.func(args)
        if args.validate != "none" and args.command != "validate":
            code = max(code, _run_validation(args.validate))
        return code
    except ConjectureViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
