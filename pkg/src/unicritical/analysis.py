"""Experiment orchestration: partitions, star tables, convergence sweeps, statistics.

For a rational angle theta (away from 0 and from the fixed-point family) the
connectivity verdict is periodic in n and takes both values within every
period, so the filled Julia sets cannot converge as n grows: along the
connected subsequence they approach the closed unit disk, along the
disconnected one the (boundary = whole set) dust approaches the unit circle.
The routines here compute those subsequences, tabulate verdicts over parameter
grids, run raster sweeps that measure both Hausdorff distances, and check the
equidistribution statistics that drive the irrational-angle case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import dynamics, geometry, raster
from .exact_angle import (
    Classification,
    RationalAngle,
    Tag,
    classify_exact,
    fractional_rotation,
    is_exceptional_angle,
)


@dataclass(frozen=True)
class SweepRow:
    """Per-n record of a convergence sweep."""

    n: int
    classification: Tag
    r_n: float
    dist_to_circle: float
    dist_to_disk: float
    excluded: bool = False  # angle outside the oscillation hypotheses


@dataclass(frozen=True)
class PartitionReport:
    """Split of a power range by the second-iterate modulus r_n vs 1 +/- epsilon."""

    epsilon: float
    A: list[int]  # r_n < 1 - epsilon (connected side)
    B: list[int]  # r_n > 1 + epsilon (disconnected side)
    boundary: list[int]  # r_n = 1 exactly (on-circle cases)
    N_start: int


@dataclass(frozen=True)
class RasterParams:
    """Raster settings for sweeps.

    ``dust_max_iter`` applies when the critical orbit escapes (totally
    disconnected filled set): deep caps leave an empty raster there, so the
    dust proxy uses a shallow one.
    """

    resolution: int = 1024
    max_iter: int = 1000
    dust_max_iter: int = 4
    window_half_size: float = 1.6
    escape_radius: float | None = None
    circle_samples: int = 4096
    disk_grid_density: float = 0.01


@dataclass(frozen=True)
class EquidistStats:
    connected_fraction: float
    sup_cdf_gap: float
    rational_like: bool


def _min_gap_from_one(theta: RationalAngle) -> float:
    """min |r_n - 1| over one period of n, ignoring the on-circle residues."""
    gaps = []
    b = theta.denominator
    for n in range(2, 2 + b):
        r = dynamics.second_iterate_modulus(theta, n)
        if r != 1.0:
            gaps.append(abs(r - 1.0))
    return min(gaps)


def partition_subsequences(
    theta: RationalAngle,
    n_range: tuple[int, int],
    epsilon: float | None = None,
) -> PartitionReport:
    """Partition n in [n_range] into A (r_n < 1-eps), B (r_n > 1+eps), boundary.

    epsilon defaults to half the minimal distance of the r_n values from 1
    over one period; an epsilon at or above that minimum cannot separate the
    range and raises ValueError reporting the computed gap.
    """
    lo, hi = n_range
    if lo < 2 or hi < lo:
        raise ValueError(f"bad power range {n_range}")
    gap = _min_gap_from_one(theta)
    if epsilon is None:
        epsilon = gap / 2.0
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if epsilon >= gap:
        raise ValueError(
            f"epsilon {epsilon} cannot separate the range: minimum |r_n - 1| "
            f"over one period is {gap}"
        )
    A, B, boundary = [], [], []
    for n in range(lo, hi + 1):
        r = dynamics.second_iterate_modulus(theta, n)
        if r == 1.0:
            boundary.append(n)
        elif r < 1.0 - epsilon:
            A.append(n)
        else:
            B.append(n)
    return PartitionReport(epsilon, A, B, boundary, N_start=lo)


_STAR, _DOT, _CIRCLE = "*", ".", "o"


def star_cells(
    q: int,
    p_range: tuple[int, int] = (1, 30),
    n_range: tuple[int, int] = (421, 450),
) -> dict[tuple[int, int], str]:
    """Exact verdict symbol per (n, p) cell for angles theta = p/(2q).

    '*' connected, '.' disconnected, 'o' second iterate on the circle.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    from .exact_angle import reduce as reduce_angle

    symbols = {}
    for n in range(n_range[0], n_range[1] + 1):
        for p in range(p_range[0], p_range[1] + 1):
            cls = classify_exact(reduce_angle(p, 2 * q), n)
            if cls.on_circle:
                sym = _CIRCLE
            elif cls.tag is Tag.CONNECTED:
                sym = _STAR
            else:
                sym = _DOT
            symbols[(n, p)] = sym
    return symbols


def star_table(
    q: int,
    p_range: tuple[int, int] = (1, 30),
    n_range: tuple[int, int] = (421, 450),
) -> str:
    """Text table of ``star_cells``: rows are powers n, columns are p."""
    cells = star_cells(q, p_range, n_range)
    p_lo, p_hi = p_range
    lines = [f"# theta = p/{2*q}, p = {p_lo}..{p_hi}; rows n = {n_range[0]}..{n_range[1]}"]
    lines.append("      " + "".join(str(p % 10) for p in range(p_lo, p_hi + 1)))
    for n in range(n_range[0], n_range[1] + 1):
        row = "".join(cells[(n, p)] for p in range(p_lo, p_hi + 1))
        lines.append(f"{n:>5} {row}")
    return "\n".join(lines) + "\n"


def _resolve_max_iter(cls: Classification, c: complex, n: int, params: RasterParams) -> int:
    """Deep cap for sets with interior, shallow cap for dust.

    Connected and circle-fixed parameters have a bounded critical orbit, so
    the filled set has substance at any cap.  Transient on-circle cases fall
    back to the numerical orbit verdict.
    """
    if cls.tag in (Tag.CONNECTED, Tag.ON_CIRCLE_FIXED):
        return params.max_iter
    if cls.tag is Tag.ON_CIRCLE_TRANSIENT:
        probe = dynamics.orbit_bounded(c, n, max_iter=params.max_iter)
        return params.max_iter if not probe.escaped else params.dust_max_iter
    return params.dust_max_iter


def convergence_sweep(
    theta: RationalAngle,
    n_list: Sequence[int],
    params: RasterParams = RasterParams(),
) -> list[SweepRow]:
    """Rasterise the filled set for each n and measure both Hausdorff distances.

    dist_to_disk is measured on the full bounded cloud, dist_to_circle on the
    extracted boundary cloud.  Rows are sorted by n.  Angles outside the
    oscillation hypotheses (theta = 0 or the fixed-point family) are swept all
    the same but flagged ``excluded``.
    """
    if not n_list:
        raise ValueError("empty n list")
    c = dynamics.unit_circle_param(theta)
    excluded = theta.numerator == 0 or is_exceptional_angle(theta)
    window = raster.Window.square(params.window_half_size, params.resolution)
    rows = []
    for n in sorted(n_list):
        cls = classify_exact(theta, n)
        r_n = dynamics.second_iterate_modulus(theta, n)
        grid = raster.filled_julia_grid(
            n,
            c,
            window=window,
            max_iter=_resolve_max_iter(cls, c, n, params),
            escape_radius=params.escape_radius,
        )
        filled = grid.bounded_cloud()
        julia = raster.boundary_extract(grid)
        rows.append(
            SweepRow(
                n=n,
                classification=cls.tag,
                r_n=r_n,
                dist_to_circle=geometry.hausdorff_to_circle(julia, params.circle_samples),
                dist_to_disk=geometry.hausdorff_to_disk(filled, params.disk_grid_density),
                excluded=excluded,
            )
        )
    return rows


def _dyadic_of(theta: float, cf: Sequence[int] | None, N: int) -> tuple[int, int]:
    """Exact rational p/q to reduce against: the float's own dyadic value, or a
    continued-fraction convergent with denominator large relative to N."""
    if cf is not None:
        h0, h1 = 1, int(cf[0])
        k0, k1 = 0, 1
        for a in cf[1:]:
            h0, h1 = h1, int(a) * h1 + h0
            k0, k1 = k1, int(a) * k1 + k0
            if k1 > N * N * 10**6:
                break
        return h1, k1
    fr = Fraction(float(theta))
    return fr.numerator, fr.denominator


def equidistribution_stats(
    theta: float,
    N: int,
    cf: Sequence[int] | None = None,
) -> EquidistStats:
    """Distribution of f_n = theta*(n-1) mod 1 for n <= N, against the arcsine law.

    ``connected_fraction`` is the share with f_n in (1/3, 2/3); for irrational
    theta it tends to 1/3.  ``sup_cdf_gap`` is the Kolmogorov distance between
    the empirical distribution of cos(2*pi*f_n) and F(x) = 1 - arccos(x)/pi.
    The reduction is exact integer arithmetic on the rational actually
    supplied (the float's dyadic value, or a continued-fraction convergent via
    ``cf``).  Small-denominator inputs are flagged ``rational_like``; their
    statistics are those of the rational, not of a nearby irrational.
    """
    if N < 1000:
        raise ValueError("need N >= 1000")
    p, q = _dyadic_of(theta, cf, N)
    residues = np.empty(N, dtype=np.float64)
    connected = 0
    r = 0  # residue of p*(n-1) mod q, starting at n = 1
    step = p % q
    for i in range(N):
        residues[i] = r
        if q < 3 * r < 2 * q:
            connected += 1
        r += step
        if r >= q:
            r -= q
    f = residues / q
    x = np.sort(np.cos(2 * np.pi * f))
    cdf = 1.0 - np.arccos(np.clip(x, -1.0, 1.0)) / np.pi
    i = np.arange(1, N + 1)
    gap = max(
        float(np.abs(cdf - i / N).max()),
        float(np.abs(cdf - (i - 1) / N).max()),
    )
    approx = Fraction(float(theta)).limit_denominator(10**4)
    rational_like = abs(approx - Fraction(float(theta))) < Fraction(1, 10**10)
    return EquidistStats(connected / N, gap, rational_like)


def period_of_classification(theta: RationalAngle) -> int:
    """Minimal period of n -> verdict (connected / disconnected / on-circle).

    The verdict depends on n only through theta*(n-1) mod 1, so the period
    divides the denominator of theta.  (The finer split of on-circle cases
    into fixed and transient also depends on n mod 6 and can double the
    period; it is deliberately merged here.)
    """
    if theta.numerator == 0:
        raise ValueError("the verdict sequence is constant for theta = 0")
    b = theta.denominator

    def coarse(n: int) -> str:
        f = fractional_rotation(theta, n - 1)
        if f.denominator == 3:
            return "o"
        return "*" if f.denominator < 3 * f.numerator < 2 * f.denominator else "."

    tags = [coarse(n) for n in range(2, 2 + b)]
    for d in range(1, b + 1):
        if b % d == 0 and all(tags[i] == tags[(i + d) % b] for i in range(b)):
            return d
    return b
