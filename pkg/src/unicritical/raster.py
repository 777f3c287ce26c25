"""Escape-time rasterisation of filled Julia sets and Multibrot parameter slices.

Pixels sample the centre of their cell.  A pixel is "bounded" when its orbit
survives all max_iter applications of the map inside the escape radius; the
``iterations`` plane records how many applications each orbit survived, so
bounded <=> iterations == max_iter.  Computation is vectorised over the set of
still-active pixels and is deterministic: identical inputs give bit-identical
grids.

For a totally disconnected filled set (escaping critical orbit) the set has
empty interior and measure zero, so deep iteration caps leave nothing: escape
times near the repelling boundary grow only like log(1/pixel)/log(n).  Dust
renders therefore use a shallow cap (a handful of iterations), giving the
standard outer approximation of the set at the pixel scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import PointCloud


@dataclass(frozen=True)
class Window:
    """Axis-aligned view rectangle and raster dimensions."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window must have positive extent")
        if self.width < 1 or self.height < 1:
            raise ValueError("raster dimensions must be positive")

    @classmethod
    def square(cls, half_size: float = 1.6, resolution: int = 1024) -> "Window":
        return cls(-half_size, half_size, -half_size, half_size, resolution, resolution)

    @property
    def pixel_width(self) -> float:
        return (self.re_max - self.re_min) / self.width

    @property
    def pixel_height(self) -> float:
        return (self.im_max - self.im_min) / self.height

    @property
    def pixel_diagonal(self) -> float:
        return float(np.hypot(self.pixel_width, self.pixel_height))

    def pixel_centers(self) -> np.ndarray:
        """(height, width) complex array; row 0 is the top of the image."""
        xs = self.re_min + (np.arange(self.width) + 0.5) * self.pixel_width
        ys = self.im_max - (np.arange(self.height) + 0.5) * self.pixel_height
        return xs[None, :] + 1j * ys[:, None]


@dataclass(frozen=True)
class RasterGrid:
    """Escape-time raster: bounded mask plus survived-iteration counts."""

    window: Window
    bounded: np.ndarray = field(repr=False)
    iterations: np.ndarray = field(repr=False)
    max_iter: int

    @property
    def spacing(self) -> float:
        return max(self.window.pixel_width, self.window.pixel_height)

    def bounded_cloud(self) -> PointCloud:
        """Centres of all bounded pixels."""
        pts = self.window.pixel_centers()[self.bounded]
        if pts.size == 0:
            raise ValueError("no bounded pixels at this resolution")
        return PointCloud(pts, spacing=self.spacing)


def _escape_iterate(z0: np.ndarray, c, n: int, max_iter: int, radius2) -> tuple[np.ndarray, np.ndarray]:
    """Shared masked iteration kernel.  c and radius2 may be scalars or arrays."""
    flat = z0.ravel()
    size = flat.size
    c_arr = np.broadcast_to(np.asarray(c, np.complex128), (size,))
    r2 = np.broadcast_to(np.asarray(radius2, float), (size,))
    iterations = np.zeros(size, dtype=np.int32)
    bounded = np.zeros(size, dtype=bool)
    idx = np.arange(size)
    z = flat.copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, max_iter + 1):
            result = np.ones_like(z)
            base = z
            e = n
            while e:
                if e & 1:
                    result = result * base
                e >>= 1
                if e:
                    base = base * base
            z = result + c_arr[idx]
            m2 = z.real * z.real + z.imag * z.imag
            esc = (m2 > r2[idx]) | ~np.isfinite(m2)
            if esc.any():
                iterations[idx[esc]] = k - 1
                keep = ~esc
                idx = idx[keep]
                z = z[keep]
            if idx.size == 0:
                break
    iterations[idx] = max_iter
    bounded[idx] = True
    shape = z0.shape
    return bounded.reshape(shape), iterations.reshape(shape)


def filled_julia_grid(
    n: int,
    c: complex,
    window: Window | None = None,
    max_iter: int = 1000,
    escape_radius: float | None = None,
) -> RasterGrid:
    """Escape-time raster of the filled Julia set of z^n + c over the window."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if window is None:
        window = Window.square()
    if escape_radius is None:
        escape_radius = max(2.0, abs(c) + 1.0)
    z0 = window.pixel_centers()
    bounded, iterations = _escape_iterate(z0, c, n, max_iter, escape_radius**2)
    return RasterGrid(window, bounded, iterations, max_iter)


def boundary_extract(grid: RasterGrid) -> PointCloud:
    """Centres of bounded pixels with at least one unbounded 4-neighbour.

    Off-grid counts as unbounded.  When the bounded set has empty interior at
    this resolution every bounded pixel qualifies, which is exactly the
    totally disconnected case where the filled set equals its boundary.
    """
    b = grid.bounded
    if not b.any():
        raise ValueError("no Julia pixels at this resolution")
    padded = np.zeros((b.shape[0] + 2, b.shape[1] + 2), dtype=bool)
    padded[1:-1, 1:-1] = b
    interior = (
        padded[1:-1, 1:-1]
        & padded[:-2, 1:-1]
        & padded[2:, 1:-1]
        & padded[1:-1, :-2]
        & padded[1:-1, 2:]
    )
    edge = b & ~interior
    pts = grid.window.pixel_centers()[edge]
    return PointCloud(pts, spacing=grid.spacing)


def multibrot_log_slice(
    n: int,
    theta_window: Window,
    max_iter: int = 1000,
) -> RasterGrid:
    """Membership raster of the degree-n Multibrot set in logarithmic coordinates.

    Each pixel is a complex angle theta; the parameter is c = exp(2*pi*i*theta)
    and the pixel is bounded iff the orbit of 0 under z^n + c stays inside the
    per-pixel escape radius max(2, |c|+1) for max_iter iterations.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    theta = theta_window.pixel_centers()
    c = np.exp(2j * np.pi * theta)
    radius = np.maximum(2.0, np.abs(c) + 1.0)
    z0 = np.zeros_like(c)
    bounded, iterations = _escape_iterate(z0, c.ravel(), n, max_iter, (radius**2).ravel())
    return RasterGrid(theta_window, bounded, iterations, max_iter)
