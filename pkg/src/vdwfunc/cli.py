"""Command-line front end: energy sweeps, thresholds, general correlators, figures.

Exit codes: 0 success, 1 usage or parse error, 2 numerical failure on some row.
``VDW_THREADS`` caps the number of worker processes used for sweeps.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .energy import energy_dimensionless
from .errors import DomainError
from .general import (
    CorrelatorParseError,
    asymptote_general,
    energy_general,
    london_general,
    load_correlator,
)
from .model import AtomParams, DimensionlessPoint
from .regimes import (
    london_energy_dimensionless,
    thresholds_reduced,
    vdw_asymptote_dimensionless,
    weak_energy_closed,
    weak_energy_over_a,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2

ENERGY_COLUMNS = ("x", "re_full", "im_full", "e_weak_closed", "e_vdw_asymptote", "e_london", "g_ratio")
GENERAL_COLUMNS = ("r", "e_general", "e_asymptote", "e_london_general")

FIG1_RANGE = (0.1, 10.0)
FIG2_RANGE = (0.3, 3.0)
FIG2_KAPPA = 0.5


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    x_min: float
    x_max: float
    n_points: int
    spacing: str
    kappa: float
    tol: float = 1e-10

    def __post_init__(self):
        if not (0.0 < self.x_min < self.x_max and math.isfinite(self.x_max)):
            raise UsageError("need 0 < x_min < x_max")
        if self.n_points < 2:
            raise UsageError("need at least 2 points")
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"unknown spacing {self.spacing!r}")
        if not self.kappa > 0.0:
            raise UsageError("kappa must be positive")
        if not self.tol > 0.0:
            raise UsageError("tol must be positive")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.x_min, self.x_max, self.n_points)
        return np.linspace(self.x_min, self.x_max, self.n_points)


def _fmt(v) -> str:
    return format(float(v), ".16e")


def _format_row(values, status="ok") -> str:
    return ",".join([*(_fmt(v) for v in values), status])


def _header(columns) -> str:
    return "# " + ",".join([*columns, "status"])


def _workers() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("VDW_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise UsageError(f"VDW_THREADS must be an integer, got {cap!r}") from None
    return n


def ordered_map(func, items):
    """Map ``func`` over ``items`` in worker processes, results in input order."""
    items = list(items)
    n = min(_workers(), len(items))
    if n <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))


def _energy_row(args):
    x, kappa, tol = args
    try:
        pt = DimensionlessPoint(x, kappa)
        e = energy_dimensionless(pt, tol)
        values = (
            x,
            e.re,
            e.im,
            weak_energy_closed(pt),
            vdw_asymptote_dimensionless(pt),
            london_energy_dimensionless(pt),
            pt.g,
        )
        return _format_row(values), True
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        msg = str(exc).replace(",", ";").replace("\n", " ")
        return _format_row((x,) + (math.nan,) * 6, f"error:{type(exc).__name__}:{msg}"), False


def energy_table(spec: SweepSpec) -> tuple[list[str], bool]:
    """CSV lines (header first) for an energy sweep, and whether all rows succeeded."""
    rows = ordered_map(_energy_row, [(float(x), spec.kappa, spec.tol) for x in spec.grid()])
    return [_header(ENERGY_COLUMNS)] + [r for r, _ in rows], all(ok for _, ok in rows)


def _general_row(args):
    corr, q, r, tol = args
    try:
        values = (
            r,
            energy_general(corr, q, r, tol),
            asymptote_general(corr, q, r),
            london_general(corr, q, r, tol),
        )
        return _format_row(values), True
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        msg = str(exc).replace(",", ";").replace("\n", " ")
        return _format_row((r,) + (math.nan,) * 3, f"error:{type(exc).__name__}:{msg}"), False


def general_table(corr, q: float, r_list, tol: float = 1e-10) -> tuple[list[str], bool]:
    rows = ordered_map(_general_row, [(corr, q, float(r), tol) for r in r_list])
    return [_header(GENERAL_COLUMNS)] + [r for r, _ in rows], all(ok for _, ok in rows)


def threshold_report(kappa: float, params: AtomParams | None = None) -> list[str]:
    x1, x2 = thresholds_reduced(kappa)
    lines = [f"kappa = {kappa:.12g}", f"x1 = {x1:.12g}", f"x2 = {x2:.12g}"]
    if params is not None:
        lines += [f"r1 = {x1 / params.omega:.12g}", f"r2 = {x2 / params.omega:.12g}"]
    return lines


def figure1_rows(n_points: int = 400) -> list[tuple[float, float]]:
    xs = np.geomspace(*FIG1_RANGE, n_points)
    return [(float(x), weak_energy_over_a(float(x))) for x in xs]


def figure2_rows(n_points: int = 256, tol: float = 1e-10) -> list[tuple[float, float, float]]:
    xs = np.geomspace(*FIG2_RANGE, n_points)
    energies = ordered_map(_fig2_point, [(float(x), tol) for x in xs])
    return [(float(x), e[0], e[1]) for x, e in zip(xs, energies)]


def _fig2_point(args):
    x, tol = args
    e = energy_dimensionless(DimensionlessPoint(x, FIG2_KAPPA), tol)
    return e.re, e.im


_FIG1_GP = """\
# Weak-coupling interaction energy E_w / A versus x = Omega r
set datafile separator ','
set xlabel 'x = {/Symbol W} r'
set ylabel 'E_w / A'
set logscale x
set key off
plot 'fig1.csv' using 1:2 with lines lw 2
"""

_FIG2_GP = """\
# Real and imaginary parts of the interaction energy, kappa = {kappa}
set datafile separator ','
set xlabel 'x = {{/Symbol W}} r'
set ylabel 'E_I / {{/Symbol W}}'
set arrow from {x1:.12g}, graph 0 to {x1:.12g}, graph 1 nohead dt 2
set arrow from {x2:.12g}, graph 0 to {x2:.12g}, graph 1 nohead dt 2
set label 'x_1' at {x1:.12g}, graph 0.95 offset 0.5,0
set label 'x_2' at {x2:.12g}, graph 0.95 offset 0.5,0
plot 'fig2.csv' using 1:2 with lines lw 2 title 'Re', \\
     'fig2.csv' using 1:3 with lines lw 2 title 'Im'
"""


def write_figures(out_dir, fig1_points: int = 400, fig2_points: int = 256) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fig1 = ["# x,ew_over_a"] + [f"{_fmt(x)},{_fmt(v)}" for x, v in figure1_rows(fig1_points)]
    fig2 = ["# x,re,im"] + [f"{_fmt(x)},{_fmt(re)},{_fmt(im)}" for x, re, im in figure2_rows(fig2_points)]
    x1, x2 = thresholds_reduced(FIG2_KAPPA)
    files = {
        "fig1.csv": "\n".join(fig1) + "\n",
        "fig2.csv": "\n".join(fig2) + "\n",
        "fig1.gp": _FIG1_GP,
        "fig2.gp": _FIG2_GP.format(kappa=FIG2_KAPPA, x1=x1, x2=x2),
    }
    written = []
    for name, text in files.items():
        path = out / name
        path.write_text(text)
        written.append(path)
    return written


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_coupling(p):
    p.add_argument("--kappa", type=float, help="reduced coupling q^2 Omega / (2 pi m)")
    p.add_argument("--q", type=float, help="coupling charge (with --m, --omega)")
    p.add_argument("--m", type=float, help="electron mass")
    p.add_argument("--omega", type=float, help="renormalized binding frequency")


def _resolve_coupling(args) -> tuple[float, AtomParams | None]:
    physical = [args.q, args.m, args.omega]
    if args.kappa is not None:
        if any(v is not None for v in physical):
            raise UsageError("--kappa is mutually exclusive with --q/--m/--omega")
        return args.kappa, None
    if any(v is None for v in physical):
        raise UsageError("give either --kappa or all of --q, --m, --omega")
    try:
        params = AtomParams(args.q, args.m, args.omega)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return params.kappa, params


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vdw-energy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("energy", help="CSV sweep of the interaction energy over x = Omega r")
    _add_coupling(p)
    p.add_argument("--x-min", type=float, default=0.3)
    p.add_argument("--x-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--log", action="store_true", help="logarithmic spacing")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("thresholds", help="instability thresholds x1, x2 (r1, r2)")
    _add_coupling(p)

    p = sub.add_parser("general", help="energy for a tabulated correlator")
    p.add_argument("--correlator", required=True, help="two-column 'nu g_tilde' file")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--r", required=True, help="comma-separated distances")
    p.add_argument("--omega", type=float, default=1.0, help="unit for '# units: omega' files")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("figures", help="write fig1/fig2 CSV data and gnuplot scripts")
    p.add_argument("--out", required=True, help="output directory")
    return parser


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_r_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--r must be a comma-separated list of numbers, got {text!r}") from None
    if not values:
        raise UsageError("--r needs at least one distance")
    return values


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "energy":
            kappa, _ = _resolve_coupling(args)
            spacing = "log" if args.log else "linear"
            spec = SweepSpec(args.x_min, args.x_max, args.points, spacing, kappa, args.tol)
            lines, ok = energy_table(spec)
            _emit(lines, args.out)
            return EXIT_OK if ok else EXIT_NUMERIC
        if args.command == "thresholds":
            kappa, params = _resolve_coupling(args)
            if not kappa > 0.0:
                raise UsageError("thresholds need kappa > 0")
            _emit(threshold_report(kappa, params), None)
            return EXIT_OK
        if args.command == "general":
            r_list = _parse_r_list(args.r)
            corr = load_correlator(args.correlator, args.omega)
            lines, ok = general_table(corr, args.q, r_list, args.tol)
            _emit(lines, args.out)
            return EXIT_OK if ok else EXIT_NUMERIC
        if args.command == "figures":
            try:
                write_figures(args.out)
            except OSError as exc:
                print(f"vdw-energy: cannot write figures to {args.out}: {exc}", file=sys.stderr)
                return EXIT_USAGE
            return EXIT_OK
    except (UsageError, CorrelatorParseError) as exc:
        print(f"vdw-energy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"vdw-energy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
