"""Command-line surface and bit-exact file emission (CSV, PPM, star tables).

Commands: classify, table, render, multibrot, sweep, symmetry, equidist.
Exit codes: 0 success, 2 invalid arguments, 1 runtime error.  Any sampling is
seeded from --seed (default 0).  The environment variable UNICRITICAL_THREADS,
when set, caps worker parallelism; the current implementation computes
single-threaded, which respects any cap.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

import numpy as np

from . import analysis, dynamics, raster
from .analysis import RasterParams, SweepRow
from .exact_angle import RationalAngle, Tag, classify_exact, is_exceptional_angle

CSV_HEADER = "n,classification,r_n,dist_to_circle,dist_to_disk"


def emit_ppm(grid: raster.RasterGrid, path: str, mode: str = "golden") -> None:
    """Write a binary (P5) grayscale PPM.

    golden mode: bounded pixels byte 0, escaped pixels byte 255; byte-identical
    across platforms for identical grids.  levels mode shades escaped pixels
    by survived iterations instead (not a golden format).
    """
    h, w = grid.bounded.shape
    if mode == "golden":
        data = np.where(grid.bounded, 0, 255).astype(np.uint8)
    elif mode == "levels":
        span = max(grid.max_iter, 1)
        shade = 255 - (grid.iterations.astype(np.float64) * 255 / span)
        data = np.where(grid.bounded, 0, np.clip(shade, 0, 255)).astype(np.uint8)
    else:
        raise ValueError(f"unknown PPM mode {mode!r}")
    try:
        with open(path, "wb") as fh:
            fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
            fh.write(data.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write PPM to {path}: {exc}") from exc


def format_real(x: float) -> str:
    """Decimal with 12 significant digits, locale-independent."""
    return f"{x:.12g}"


def emit_csv(rows: Sequence[SweepRow], path: str) -> None:
    """Write sweep rows as CSV with 12-significant-digit reals and \\n endings."""
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                (
                    str(row.n),
                    row.classification.value,
                    format_real(row.r_n),
                    format_real(row.dist_to_circle),
                    format_real(row.dist_to_disk),
                )
            )
        )
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(path: str) -> list[SweepRow]:
    """Parse a CSV produced by ``emit_csv``."""
    with open(path) as fh:
        lines = [ln for ln in fh.read().split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing header {CSV_HEADER!r}")
    rows = []
    for ln in lines[1:]:
        n, tag, r_n, d_circle, d_disk = ln.split(",")
        rows.append(
            SweepRow(
                n=int(n),
                classification=Tag(tag),
                r_n=float(r_n),
                dist_to_circle=float(d_circle),
                dist_to_disk=float(d_disk),
            )
        )
    return rows


def _parse_range(text: str) -> list[int]:
    """'421..450' -> inclusive range; '100,150,200' -> explicit list; '26' -> [26]."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part]


def _angle(text: str) -> RationalAngle:
    try:
        return RationalAngle.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _resolution(text: str) -> int:
    value = int(text)
    if value < 16:
        raise argparse.ArgumentTypeError("resolution must be >= 16")
    return value


def _thread_cap() -> int | None:
    raw = os.environ.get("UNICRITICAL_THREADS")
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise SystemExit(
            f"unicritical: UNICRITICAL_THREADS must be a positive integer, got {raw!r}"
        )
    return cap


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unicritical",
        description="Connectivity and geometry of filled Julia sets of z^n + c, |c| = 1.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for any sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="exact verdict for one (theta, n)")
    p.add_argument("--theta", type=_angle, required=True, help="angle as a/b")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("table", help="verdict grid over theta = p/(2q) and a power range")
    p.add_argument("--q", type=_positive_int, required=True)
    p.add_argument("--n", default="421..450", help="power range, e.g. 421..450")
    p.add_argument("--p", default="1..30", help="p range, e.g. 1..30")
    p.add_argument("-o", "--output", help="write table to this path")

    p = sub.add_parser("render", help="filled Julia set raster to PPM")
    p.add_argument("--theta", type=_angle, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--resolution", type=_resolution, default=1024)
    p.add_argument("--max-iter", type=_positive_int, default=1000)
    p.add_argument("--window", type=float, default=1.6, help="half-size of the square view")
    p.add_argument("--mode", choices=("golden", "levels"), default="golden")
    p.add_argument("-o", "--output", required=True, help="output PPM path")

    p = sub.add_parser("multibrot", help="Multibrot slice in log coordinates to PPM")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--width", type=_resolution, default=256)
    p.add_argument("--height", type=_resolution, default=128)
    p.add_argument("--re", type=float, nargs=2, default=(-1.0, 1.0), metavar=("MIN", "MAX"))
    p.add_argument("--im", type=float, nargs=2, default=(-0.5, 0.5), metavar=("MIN", "MAX"))
    p.add_argument("--max-iter", type=_positive_int, default=1000)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("sweep", help="classify + rasterise + Hausdorff distances to CSV")
    p.add_argument("--theta", type=_angle, required=True)
    p.add_argument("--n-list", required=True, help="e.g. 25..34 or 100,150,200")
    p.add_argument("--resolution", type=_resolution, default=1024)
    p.add_argument("--max-iter", type=_positive_int, default=1000)
    p.add_argument("--dust-max-iter", type=_positive_int, default=4)
    p.add_argument("-o", "--output", required=True, help="output CSV path")

    p = sub.add_parser("symmetry", help="rotation symmetry defect of the Julia cloud")
    p.add_argument("--theta", type=_angle, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--resolution", type=_resolution, default=1024)
    p.add_argument("--max-iter", type=_positive_int, default=1000)

    p = sub.add_parser("equidist", help="rotation statistics for a real angle")
    p.add_argument("--theta-real", type=float, required=True)
    p.add_argument("--samples", type=_positive_int, default=100_000)

    return parser


def _cmd_classify(args) -> int:
    if args.n < 2:
        print("unicritical: --n must be >= 2", file=sys.stderr)
        return 2
    cls = classify_exact(args.theta, args.n)
    pieces = [cls.tag.value, f"f={cls.fractional_part}"]
    if cls.tag is Tag.ON_CIRCLE_FIXED:
        pieces.append(f"exceptional p={cls.witness.p} q={cls.witness.q}")
    elif cls.tag is Tag.ON_CIRCLE_TRANSIENT:
        probe = dynamics.orbit_bounded(dynamics.unit_circle_param(args.theta), args.n)
        pieces.append(f"numerical={'bounded' if not probe.escaped else 'escaped'}")
    else:
        pieces.append(f"r_n={format_real(dynamics.second_iterate_modulus(args.theta, args.n))}")
    print(" ".join(pieces))
    if args.theta.numerator == 0 or is_exceptional_angle(args.theta):
        print(
            "warning: this angle is outside the oscillation hypotheses "
            "(theta = 0 or the circle-fixed family); no non-convergence claim applies",
            file=sys.stderr,
        )
    return 0


def _cmd_table(args) -> int:
    n_list = _parse_range(args.n)
    p_list = _parse_range(args.p)
    text = analysis.star_table(
        args.q, (min(p_list), max(p_list)), (min(n_list), max(n_list))
    )
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_render(args) -> int:
    if args.n < 2:
        print("unicritical: --n must be >= 2", file=sys.stderr)
        return 2
    c = dynamics.unit_circle_param(args.theta)
    window = raster.Window.square(args.window, args.resolution)
    grid = raster.filled_julia_grid(args.n, c, window, args.max_iter)
    emit_ppm(grid, args.output, mode=args.mode)
    print(f"{args.output}: {int(grid.bounded.sum())} bounded pixels of {grid.bounded.size}")
    return 0


def _cmd_multibrot(args) -> int:
    if args.n < 2:
        print("unicritical: --n must be >= 2", file=sys.stderr)
        return 2
    window = raster.Window(
        args.re[0], args.re[1], args.im[0], args.im[1], args.width, args.height
    )
    grid = raster.multibrot_log_slice(args.n, window, args.max_iter)
    emit_ppm(grid, args.output)
    print(f"{args.output}: {int(grid.bounded.sum())} bounded pixels of {grid.bounded.size}")
    return 0


def _cmd_sweep(args) -> int:
    params = RasterParams(
        resolution=args.resolution,
        max_iter=args.max_iter,
        dust_max_iter=args.dust_max_iter,
    )
    rows = analysis.convergence_sweep(args.theta, _parse_range(args.n_list), params)
    emit_csv(rows, args.output)
    for row in rows:
        flag = "  [excluded angle]" if row.excluded else ""
        print(
            f"n={row.n} {row.classification.value} r_n={format_real(row.r_n)} "
            f"d_circle={format_real(row.dist_to_circle)} "
            f"d_disk={format_real(row.dist_to_disk)}{flag}"
        )
    return 0


def _cmd_symmetry(args) -> int:
    if args.n < 2:
        print("unicritical: --n must be >= 2", file=sys.stderr)
        return 2
    from . import geometry

    c = dynamics.unit_circle_param(args.theta)
    window = raster.Window.square(resolution=args.resolution)
    grid = raster.filled_julia_grid(args.n, c, window, args.max_iter)
    cloud = raster.boundary_extract(grid)
    defect = geometry.rotation_symmetry_defect(cloud, args.n)
    bound = 2 * window.pixel_diagonal
    print(
        f"defect={format_real(defect)} bound={format_real(bound)} "
        f"({'within' if defect <= bound else 'EXCEEDS'} two pixel diagonals)"
    )
    return 0


def _cmd_equidist(args) -> int:
    stats = analysis.equidistribution_stats(args.theta_real, args.samples)
    flag = " [rational-like]" if stats.rational_like else ""
    print(
        f"connected_fraction={format_real(stats.connected_fraction)} "
        f"sup_cdf_gap={format_real(stats.sup_cdf_gap)}{flag}"
    )
    return 0


_DISPATCH = {
    "classify": _cmd_classify,
    "table": _cmd_table,
    "render": _cmd_render,
    "multibrot": _cmd_multibrot,
    "sweep": _cmd_sweep,
    "symmetry": _cmd_symmetry,
    "equidist": _cmd_equidist,
}


def main(argv: Sequence[str] | None = None) -> int:
    _thread_cap()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"unicritical: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
