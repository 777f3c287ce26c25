"""Hausdorff-metric computations between finite point clouds and S^1 / the disk.

Clouds stand in for compact subsets of the plane (every set this library
produces lives inside a disk of radius about 1.6, where the planar metric is
the right one; no spherical metric is needed).  The directed distance

    d(A -> B) = max over a in A of min over b in B of |a - b|

is computed exactly over the finite clouds.  A uniform bucket grid over B
accelerates the nearest-point queries; results are identical to the naive
all-pairs scan because both paths evaluate the same squared-distance
expression and max/min are order-independent.

Distances to the analytic reference sets S^1 and the closed unit disk are
semi-analytic: the cloud-to-set direction uses the exact point formulas
(||z|-1| and max(0, |z|-1)), only the set-to-cloud direction is sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PointCloud:
    """Finite set of complex points, deduplicated, with the generating grid pitch.

    spacing = 0 marks analytic samples (no underlying pixel grid).
    """

    points: np.ndarray = field(repr=False)
    spacing: float = 0.0

    def __post_init__(self) -> None:
        pts = np.unique(np.asarray(self.points, dtype=np.complex128).ravel())
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("cloud contains non-finite points")
        if self.spacing < 0:
            raise ValueError("spacing must be >= 0")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)

    def rotated(self, omega: complex) -> "PointCloud":
        return PointCloud(self.points * omega, self.spacing)


def circle_cloud(samples: int, radius: float = 1.0) -> PointCloud:
    """Equally spaced sample of the circle |z| = radius."""
    if samples < 1:
        raise ValueError("need at least one sample")
    pts = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    return PointCloud(pts, spacing=2 * np.pi * radius / samples)


def hexagon_cloud(samples: int, radius: float = 1.0) -> PointCloud:
    """Vertices-plus-edges sample of the regular hexagon inscribed in |z| = radius."""
    per_edge = max(1, -(-samples // 6))  # ceil
    verts = radius * np.exp(2j * np.pi * np.arange(7) / 6)
    t = np.arange(per_edge) / per_edge
    pts = np.concatenate([(1 - t) * verts[k] + t * verts[k + 1] for k in range(6)])
    return PointCloud(pts, spacing=radius / per_edge)


def disk_cloud(pitch: float, radius: float = 1.0) -> PointCloud:
    """Square-lattice sample of the closed disk |z| <= radius."""
    if pitch <= 0:
        raise ValueError("pitch must be positive")
    xs = np.arange(-radius, radius + pitch / 2, pitch)
    re, im = np.meshgrid(xs, xs)
    w = (re + 1j * im).ravel()
    return PointCloud(w[np.abs(w) <= radius], spacing=pitch)


def _require_nonempty(*clouds: PointCloud) -> None:
    for cl in clouds:
        if len(cl) == 0:
            raise ValueError("empty point cloud")


class _BucketIndex:
    """Uniform grid over a target cloud answering batched nearest-distance queries.

    Cell pitch defaults to max(spacing, bbox_diagonal/sqrt(N)).  Queries
    expand Chebyshev rings of cells around the query's home cell; the search
    for a query stops once its best squared distance is <= (r*pitch)^2 after
    completing ring r (no farther cell can contain anything closer), or once
    every grid cell has been visited, which makes the search exhaustive for
    queries far outside the populated area.
    """

    def __init__(self, cloud: PointCloud, pitch: float | None = None):
        pts = cloud.points
        x, y = pts.real, pts.imag
        self.x0 = float(x.min())
        self.y0 = float(y.min())
        span = math.hypot(float(x.max() - x.min()), float(y.max() - y.min()))
        if pitch is None:
            pitch = max(cloud.spacing, span / math.sqrt(pts.size))
        if pitch <= 0:
            pitch = 1.0
        self.pitch = pitch
        self.nx = int((float(x.max()) - self.x0) / pitch) + 1
        self.ny = int((float(y.max()) - self.y0) / pitch) + 1
        ci = np.clip(((x - self.x0) / pitch).astype(np.int64), 0, self.nx - 1)
        cj = np.clip(((y - self.y0) / pitch).astype(np.int64), 0, self.ny - 1)
        lin = ci * self.ny + cj
        order = np.argsort(lin, kind="stable")
        self.sorted_pts = pts[order]
        self.sorted_ids = lin[order]

    def min_sqdist(self, queries: np.ndarray) -> np.ndarray:
        qx, qy = queries.real, queries.imag
        ci = np.floor((qx - self.x0) / self.pitch).astype(np.int64)
        cj = np.floor((qy - self.y0) / self.pitch).astype(np.int64)
        # after this many rings every populated cell has been inspected
        cover = np.maximum(
            np.maximum(ci, self.nx - 1 - ci), np.maximum(cj, self.ny - 1 - cj)
        )
        best = np.full(queries.size, np.inf)
        active = np.arange(queries.size)
        r = 0
        while active.size:
            for di, dj in _ring_offsets(r):
                cci = ci[active] + di
                ccj = cj[active] + dj
                valid = (cci >= 0) & (cci < self.nx) & (ccj >= 0) & (ccj < self.ny)
                if not valid.any():
                    continue
                ids = cci[valid] * self.ny + ccj[valid]
                left = np.searchsorted(self.sorted_ids, ids, side="left")
                right = np.searchsorted(self.sorted_ids, ids, side="right")
                lens = right - left
                hit = lens > 0
                if not hit.any():
                    continue
                starts = left[hit]
                counts = lens[hit]
                qidx = active[valid][hit]
                flat = np.repeat(starts, counts) + _segment_arange(counts)
                qrep = np.repeat(qidx, counts)
                tgt = self.sorted_pts[flat]
                dx = qx[qrep] - tgt.real
                dy = qy[qrep] - tgt.imag
                np.minimum.at(best, qrep, dx * dx + dy * dy)
            bound = r * self.pitch
            done = (best[active] <= bound * bound) | (r >= cover[active])
            active = active[~done]
            r += 1
        return best


def _ring_offsets(r: int) -> list[tuple[int, int]]:
    if r == 0:
        return [(0, 0)]
    offs = [(di, dj) for di in (-r, r) for dj in range(-r, r + 1)]
    offs += [(di, dj) for dj in (-r, r) for di in range(-r + 1, r)]
    return offs


def _segment_arange(counts: np.ndarray) -> np.ndarray:
    total = int(counts.sum())
    return np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)


def directed_hausdorff(a: PointCloud, b: PointCloud) -> float:
    """max over a in A of the distance from a to the cloud B, bucket-accelerated."""
    _require_nonempty(a, b)
    d2 = _BucketIndex(b).min_sqdist(a.points)
    return math.sqrt(float(d2.max()))


def directed_hausdorff_naive(a: PointCloud, b: PointCloud) -> float:
    """Reference all-pairs scan; identical result to ``directed_hausdorff``."""
    _require_nonempty(a, b)
    A, B = a.points, b.points
    chunk = max(1, 4_000_000 // max(len(b), 1))
    worst = 0.0
    for start in range(0, A.size, chunk):
        blk = A[start : start + chunk]
        dx = blk.real[:, None] - B.real[None, :]
        dy = blk.imag[:, None] - B.imag[None, :]
        d2 = dx * dx + dy * dy
        worst = max(worst, float(d2.min(axis=1).max()))
    return math.sqrt(worst)


def hausdorff(a: PointCloud, b: PointCloud) -> float:
    """Symmetric Hausdorff distance: max of the two directed distances."""
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def hausdorff_to_circle(a: PointCloud, samples: int = 4096) -> float:
    """Hausdorff distance from the cloud to the unit circle S^1.

    Cloud-to-circle uses the exact formula ||z| - 1|; circle-to-cloud is
    sampled at ``samples`` equispaced angles, so the value carries an error
    bound of pi/samples + spacing.
    """
    _require_nonempty(a)
    if samples < 8:
        raise ValueError("need at least 8 circle samples")
    to_circle = float(np.abs(np.abs(a.points) - 1.0).max())
    phi = np.exp(2j * np.pi * np.arange(samples) / samples)
    from_circle = math.sqrt(float(_BucketIndex(a).min_sqdist(phi).max()))
    return max(to_circle, from_circle)


def hausdorff_to_disk(a: PointCloud, grid_density: float = 0.01) -> float:
    """Hausdorff distance from the cloud to the closed unit disk.

    Cloud-to-disk uses the exact formula max(0, |z| - 1); disk-to-cloud is
    sampled on a square lattice of pitch ``grid_density`` clipped to the disk.
    """
    _require_nonempty(a)
    to_disk = float(np.maximum(np.abs(a.points) - 1.0, 0.0).max())
    lattice = disk_cloud(grid_density).points
    from_disk = math.sqrt(float(_BucketIndex(a).min_sqdist(lattice).max()))
    return max(to_disk, from_disk)


def rotation_symmetry_defect(a: PointCloud, n: int) -> float:
    """hausdorff(A, omega*A) for omega = exp(2*pi*i/n).

    Julia sets of z^n + c are invariant under multiplication by n-th roots of
    unity, so for a rasterised Julia cloud this defect should not exceed the
    raster error (about two pixel diagonals).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _require_nonempty(a)
    omega = complex(math.cos(2 * math.pi / n), math.sin(2 * math.pi / n))
    return hausdorff(a, a.rotated(omega))
