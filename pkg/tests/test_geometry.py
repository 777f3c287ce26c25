import math
import random

import numpy as np
import pytest

from unicritical.geometry import (
    PointCloud,
    circle_cloud,
    directed_hausdorff,
    directed_hausdorff_naive,
    disk_cloud,
    hausdorff,
    hausdorff_to_circle,
    hausdorff_to_disk,
    hexagon_cloud,
    rotation_symmetry_defect,
)

HEX_GAP = 1 - math.sqrt(3) / 2  # circle-to-inscribed-hexagon Hausdorff distance


def random_cloud(rng, size, scale=2.0):
    pts = (rng.random(size) - 0.5) * scale + 1j * (rng.random(size) - 0.5) * scale
    return PointCloud(pts)


def test_cloud_dedup_and_len():
    cloud = PointCloud(np.array([1 + 1j, 1 + 1j, 0j, 0j, 2j]))
    assert len(cloud) == 3


def test_cloud_rejects_non_finite():
    with pytest.raises(ValueError):
        PointCloud(np.array([0j, complex(np.inf, 0)]))


def test_cloud_rejects_negative_spacing():
    with pytest.raises(ValueError):
        PointCloud(np.array([0j]), spacing=-1.0)


def test_directed_self_is_zero():
    rng = np.random.default_rng(0)
    cloud = random_cloud(rng, 500)
    assert directed_hausdorff(cloud, cloud) == 0.0


def test_directed_origin_to_circle():
    origin = PointCloud(np.array([0j]))
    circle = circle_cloud(4096)
    d = directed_hausdorff(origin, circle)
    assert d == pytest.approx(1.0, abs=circle.spacing)


def test_directed_circle_to_hexagon_example():
    circle = circle_cloud(10_000)
    hexagon = hexagon_cloud(10_000)
    d = directed_hausdorff(circle, hexagon)
    assert d == pytest.approx(HEX_GAP, abs=2e-3)


def test_hausdorff_symmetric_and_hexagon_example():
    circle = circle_cloud(10_000)
    hexagon = hexagon_cloud(10_000)
    assert hausdorff(circle, hexagon) == hausdorff(hexagon, circle)
    assert hausdorff(circle, hexagon) == pytest.approx(HEX_GAP, abs=2e-3)


def test_hausdorff_concentric_circles():
    c1 = circle_cloud(4096)
    c2 = circle_cloud(4096, radius=2.0)
    assert hausdorff(c1, c2) == pytest.approx(1.0, abs=c2.spacing)


def test_empty_cloud_errors():
    empty = PointCloud(np.array([], dtype=complex))
    other = PointCloud(np.array([0j]))
    for fn in (directed_hausdorff, hausdorff):
        with pytest.raises(ValueError):
            fn(empty, other)
        with pytest.raises(ValueError):
            fn(other, empty)
    with pytest.raises(ValueError):
        hausdorff_to_circle(empty)
    with pytest.raises(ValueError):
        hausdorff_to_disk(empty)


def test_bucket_equals_naive_on_random_pairs():
    """The accelerated directed distance must equal the all-pairs scan exactly."""
    rng = np.random.default_rng(123)
    for trial in range(100):
        a = random_cloud(rng, int(rng.integers(1, 2001)))
        b = random_cloud(rng, int(rng.integers(1, 2001)), scale=float(rng.uniform(0.5, 4)))
        assert directed_hausdorff(a, b) == directed_hausdorff_naive(a, b)


def test_bucket_equals_naive_on_grid_like_clouds():
    # clustered + far outlier queries exercise the ring expansion and cover cap
    rng = np.random.default_rng(7)
    xs = np.arange(-1, 1, 0.05)
    grid_pts = (xs[None, :] + 1j * xs[:, None]).ravel()
    a = PointCloud(np.concatenate([grid_pts, np.array([50 + 50j, -40 - 3j])]), spacing=0.05)
    b = PointCloud(grid_pts[rng.integers(0, grid_pts.size, 300)], spacing=0.05)
    assert directed_hausdorff(a, b) == directed_hausdorff_naive(a, b)
    assert directed_hausdorff(b, a) == directed_hausdorff_naive(b, a)


def test_metric_axioms_on_clouds():
    rng = np.random.default_rng(42)
    for _ in range(30):
        a = random_cloud(rng, 80)
        b = random_cloud(rng, 60)
        c = random_cloud(rng, 70)
        dab, dbc, dac = hausdorff(a, b), hausdorff(b, c), hausdorff(a, c)
        assert dac <= dab + dbc + 1e-12
        assert dab >= 0.0
    a = random_cloud(rng, 50)
    same = PointCloud(a.points.copy())
    assert hausdorff(a, same) == 0.0
    shifted = PointCloud(a.points + 0.25)
    assert hausdorff(a, shifted) > 0.0


def test_hausdorff_to_circle_uniform_sample():
    m = 512
    cloud = circle_cloud(m)
    assert hausdorff_to_circle(cloud, 4096) <= math.pi / m


def test_hausdorff_to_circle_origin():
    assert hausdorff_to_circle(PointCloud(np.array([0j])), 64) == pytest.approx(1.0, abs=0.01)


def test_hausdorff_to_circle_radial_outlier():
    eps = 0.05
    pts = np.concatenate([circle_cloud(8192).points, np.array([1 + eps + 0j])])
    cloud = PointCloud(pts)
    assert hausdorff_to_circle(cloud, 8192) == pytest.approx(eps, abs=1e-3)


def test_hausdorff_to_circle_refinement_consistency():
    rng = np.random.default_rng(5)
    cloud = PointCloud(np.exp(2j * np.pi * rng.random(800)) * rng.uniform(0.95, 1.05, 800))
    m = 256
    assert abs(hausdorff_to_circle(cloud, m) - hausdorff_to_circle(cloud, 4 * m)) <= math.pi / m


def test_hausdorff_to_circle_validates_samples():
    with pytest.raises(ValueError):
        hausdorff_to_circle(PointCloud(np.array([1j])), samples=4)


def test_hausdorff_to_disk_dense_raster():
    pitch = 0.02
    cloud = disk_cloud(pitch)
    assert hausdorff_to_disk(cloud, grid_density=0.01) <= pitch * math.sqrt(2)


def test_hausdorff_to_disk_circle_only():
    # farthest disk point from a circle-only cloud is the centre
    assert hausdorff_to_disk(circle_cloud(2048), grid_density=0.02) == pytest.approx(
        1.0, abs=0.02
    )


def test_hausdorff_to_disk_shrunken_raster():
    cloud = PointCloud(disk_cloud(0.01).points * 0.9, spacing=0.01)
    assert hausdorff_to_disk(cloud, grid_density=0.005) == pytest.approx(0.1, abs=0.02)


def test_rotation_defect_circle_invariant():
    cloud = circle_cloud(4096)
    for n in (2, 5, 27):
        assert rotation_symmetry_defect(cloud, n) <= cloud.spacing


def test_rotation_defect_single_point():
    assert rotation_symmetry_defect(PointCloud(np.array([1 + 0j])), 2) == pytest.approx(
        2.0, abs=1e-12
    )


def test_rotation_defect_validates_n():
    with pytest.raises(ValueError):
        rotation_symmetry_defect(circle_cloud(16), 1)
