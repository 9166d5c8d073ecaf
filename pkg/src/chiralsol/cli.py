"""Command line front end.

Three subcommands:

  profile     evaluate the dressed solution on a rectangular grid and
              emit one row per point (CSV or JSON)
  verify      run the full verification suite and emit its JSON report
  identities  spot-check the quasideterminant identities on random
              block grids

Exit status is 0 on success, 1 when a verification check fails, 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .darboux import transform_chain
from .model import Grid
from .su2 import soliton_chain
from .verify import SuiteConfig, check_identities, run_full_suite

__all__ = ["main", "build_parser"]

_PROFILE_COLUMNS = [
    "t",
    "x",
    "xplus",
    "xminus",
    "re_g11",
    "im_g11",
    "re_g12",
    "im_g12",
    "re_g21",
    "im_g21",
    "re_g22",
    "im_g22",
    "abs_Y",
]

_CONFIG_KEYS = {
    "p",
    "q",
    "thetas",
    "grid",
    "lambdas_lax",
    "h_ladder",
    "n_identity_grids",
    "n_ratio_matrices",
    "n_equiv_samples",
    "n_oracle_points",
    "rng_seed",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralsol",
        description="construct and verify dressed chiral model solutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prof = sub.add_parser("profile", help="tabulate the dressed solution on a grid")
    prof.add_argument("--p", type=float, default=1.0, help="seed rate on x+")
    prof.add_argument("--q", type=float, default=1.0, help="seed rate on x-")
    prof.add_argument(
        "--theta",
        type=float,
        action="append",
        help="spectral angle, repeat once per step (default: pi/2)",
    )
    prof.add_argument("--K", type=int, default=None, help="number of steps")
    prof.add_argument(
        "--grid",
        default=None,
        metavar="TMIN,TMAX,XMIN,XMAX,NT,NX",
        help="grid bounds and sizes (default: -5,5,-5,5,41,41)",
    )
    prof.add_argument("--h", type=float, default=1e-4, help="finite-difference step")
    prof.add_argument("--out", default="-", help="output path, - for stdout")
    prof.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify", help="run the full verification suite")
    ver.add_argument("--config", default=None, help="JSON file of suite settings")
    ver.add_argument("--p", type=float, default=None)
    ver.add_argument("--q", type=float, default=None)
    ver.add_argument("--theta", type=float, action="append")
    ver.add_argument("--grid", default=None, metavar="TMIN,TMAX,XMIN,XMAX,NT,NX")
    ver.add_argument("--h", type=float, default=None)
    ver.add_argument("--rng-seed", type=int, default=None)
    ver.add_argument("--out", default="-", help="output path, - for stdout")

    ident = sub.add_parser("identities", help="random quasideterminant identity checks")
    ident.add_argument("--count", type=int, default=100)
    ident.add_argument("--block-dim", type=int, default=2)
    ident.add_argument("--rng-seed", type=int, default=20250821)
    ident.add_argument("--out", default="-", help="output path, - for stdout")

    return parser


def _parse_grid(text: str, h: float) -> Grid:
    parts = text.split(",")
    if len(parts) != 6:
        raise ValueError("--grid needs six comma-separated values")
    t_min, t_max, x_min, x_max = (float(v) for v in parts[:4])
    nt, nx = int(parts[4]), int(parts[5])
    return Grid(t_min=t_min, t_max=t_max, x_min=x_min, x_max=x_max, nt=nt, nx=nx, h=h)


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve_thetas(thetas, k):
    if thetas is None:
        if k is not None and k != 1:
            raise ValueError("--K above 1 needs one --theta per step")
        return [float(np.pi / 2)]
    if k is not None and k != len(thetas):
        raise ValueError(f"--K {k} does not match {len(thetas)} --theta values")
    return [float(t) for t in thetas]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _profile_table(p, q, thetas, grid: Grid):
    chain = soliton_chain(p, q, thetas)
    state = transform_chain(chain)
    points = grid.points()
    g = state.g(points)
    t_ax, x_ax = grid.axes()
    tt, xx = np.meshgrid(t_ax, x_ax, indexing="ij")
    columns = [
        tt.ravel(),
        xx.ravel(),
        np.asarray(points.xplus).ravel(),
        np.asarray(points.xminus).ravel(),
        g[..., 0, 0].real.ravel(),
        g[..., 0, 0].imag.ravel(),
        g[..., 0, 1].real.ravel(),
        g[..., 0, 1].imag.ravel(),
        g[..., 1, 0].real.ravel(),
        g[..., 1, 0].imag.ravel(),
        g[..., 1, 1].real.ravel(),
        g[..., 1, 1].imag.ravel(),
        np.abs(g[..., 0, 1]).ravel(),
    ]
    return np.stack(columns, axis=-1)


def _cmd_profile(args) -> int:
    thetas = _resolve_thetas(args.theta, args.K)
    grid = _parse_grid(args.grid, args.h) if args.grid else Grid(h=args.h)
    table = _profile_table(args.p, args.q, thetas, grid)
    if args.format == "csv":
        lines = [",".join(_PROFILE_COLUMNS)]
        lines.extend(",".join(_fmt(v) for v in row) for row in table)
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payload = {
            "columns": _PROFILE_COLUMNS,
            "rows": [[float(v) for v in row] for row in table],
            "params": {"p": args.p, "q": args.q, "thetas": thetas},
            "grid": grid.meta(),
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _coerce_lambda(value):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(float(value["re"]), float(value["im"]))
    raise ValueError(f"cannot read spectral parameter {value!r}")


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "grid" in kwargs:
        if not isinstance(kwargs["grid"], dict):
            raise ValueError("config grid must be an object of Grid fields")
        kwargs["grid"] = Grid(**kwargs["grid"])
    if "thetas" in kwargs:
        kwargs["thetas"] = tuple(float(t) for t in kwargs["thetas"])
    if "lambdas_lax" in kwargs:
        kwargs["lambdas_lax"] = tuple(_coerce_lambda(v) for v in kwargs["lambdas_lax"])
    if "h_ladder" in kwargs:
        kwargs["h_ladder"] = tuple(float(h) for h in kwargs["h_ladder"])
    return kwargs


def _cmd_verify(args) -> int:
    kwargs = _load_config(args.config) if args.config else {}
    if args.p is not None:
        kwargs["p"] = args.p
    if args.q is not None:
        kwargs["q"] = args.q
    if args.theta is not None:
        kwargs["thetas"] = tuple(float(t) for t in args.theta)
    if args.rng_seed is not None:
        kwargs["rng_seed"] = args.rng_seed
    if args.grid is not None:
        base = kwargs.get("grid", Grid())
        h = args.h if args.h is not None else base.h
        kwargs["grid"] = _parse_grid(args.grid, h)
    elif args.h is not None:
        base = kwargs.get("grid", Grid())
        kwargs["grid"] = Grid(
            t_min=base.t_min,
            t_max=base.t_max,
            x_min=base.x_min,
            x_max=base.x_max,
            nt=base.nt,
            nx=base.nx,
            h=args.h,
        )
    config = SuiteConfig(**kwargs)
    report = run_full_suite(config)
    _emit(report.to_json(), args.out)
    return 0 if report.overall_pass else 1


def _cmd_identities(args) -> int:
    if args.count <= 0 or args.block_dim <= 0:
        raise ValueError("--count and --block-dim must be positive")
    rng = np.random.default_rng(args.rng_seed)
    report = check_identities(rng, args.count, block_dim=args.block_dim)
    report.config_echo = {
        "count": args.count,
        "block_dim": args.block_dim,
        "rng_seed": args.rng_seed,
    }
    _emit(report.to_json(), args.out)
    return 0 if report.overall_pass else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "profile": _cmd_profile,
        "verify": _cmd_verify,
        "identities": _cmd_identities,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"chiralsol: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
