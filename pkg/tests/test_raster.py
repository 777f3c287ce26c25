import math

import numpy as np
import pytest

from unicritical import geometry
from unicritical.dynamics import unit_circle_param
from unicritical.raster import (
    RasterGrid,
    Window,
    boundary_extract,
    filled_julia_grid,
    multibrot_log_slice,
)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(1, -1, 0, 1, 8, 8)
    with pytest.raises(ValueError):
        Window(0, 1, 0, 1, 0, 8)


def test_pixel_centers_orientation():
    w = Window(0, 1, 0, 1, 2, 2)
    centers = w.pixel_centers()
    assert centers[0, 0] == pytest.approx(0.25 + 0.75j)  # top-left
    assert centers[1, 1] == pytest.approx(0.75 + 0.25j)  # bottom-right


def test_disk_render_n2_c0():
    grid = filled_julia_grid(2, 0j, Window.square(1.6, 128), max_iter=500, escape_radius=2.0)
    b = grid.bounded
    # K(z^2) is the closed unit disk: area matches within a couple of percent
    area = b.sum() * grid.window.pixel_width * grid.window.pixel_height
    assert area == pytest.approx(math.pi, rel=0.02)
    # exact pixel-level symmetry under z -> -z (the window is symmetric)
    assert np.array_equal(b, b[::-1, ::-1])
    # bounded <=> survived all iterations
    assert np.array_equal(b, grid.iterations == grid.max_iter)


def test_basilica_contains_cycle_points():
    grid = filled_julia_grid(2, -1 + 0j, Window.square(1.6, 256), max_iter=300)
    centers = grid.window.pixel_centers()
    for target in (0j, -1 + 0j):
        nearest = np.argmin(np.abs(centers.ravel() - target))
        assert grid.bounded.ravel()[nearest]


def test_dust_render_n26():
    # theta = 2/5, n = 26 is an escaping parameter: the filled set is dust
    # near the circle with empty interior at this resolution
    c = unit_circle_param_25()
    grid = filled_julia_grid(26, c, Window.square(1.6, 512), max_iter=4)
    b = grid.bounded
    assert b.sum() > 0
    pts = grid.bounded_cloud().points
    assert np.all(np.abs(np.abs(pts) - 1.0) < 0.25)
    disk_area_pixels = math.pi / (grid.window.pixel_width * grid.window.pixel_height)
    interior = interior_mask(b)
    assert interior.sum() < 0.01 * disk_area_pixels


def test_dust_vanishes_at_deep_caps():
    c = unit_circle_param_25()
    grid = filled_julia_grid(26, c, Window.square(1.6, 256), max_iter=200)
    assert grid.bounded.sum() == 0
    with pytest.raises(ValueError, match="no Julia pixels"):
        boundary_extract(grid)


def interior_mask(b):
    padded = np.zeros((b.shape[0] + 2, b.shape[1] + 2), dtype=bool)
    padded[1:-1, 1:-1] = b
    return (
        padded[1:-1, 1:-1]
        & padded[:-2, 1:-1]
        & padded[2:, 1:-1]
        & padded[1:-1, :-2]
        & padded[1:-1, 2:]
    )


def unit_circle_param_25():
    return unit_circle_param(2 / 5)


def test_boundary_extract_full_disk():
    grid = filled_julia_grid(2, 0j, Window.square(1.6, 256), max_iter=400)
    cloud = boundary_extract(grid)
    d = geometry.hausdorff_to_circle(cloud, 4096)
    assert d <= 2 * grid.window.pixel_diagonal


def test_boundary_extract_dust_returns_all_bounded():
    c = unit_circle_param_25()
    grid = filled_julia_grid(26, c, Window.square(1.6, 512), max_iter=4)
    cloud = boundary_extract(grid)
    interior = interior_mask(grid.bounded)
    assert len(cloud) == int(grid.bounded.sum() - interior.sum())
    assert len(cloud) >= 0.95 * grid.bounded.sum()  # essentially everything is edge


def test_boundary_extract_single_pixel():
    w = Window(0, 1, 0, 1, 3, 3)
    bounded = np.zeros((3, 3), bool)
    bounded[1, 1] = True
    iters = np.where(bounded, 7, 0).astype(np.int32)
    grid = RasterGrid(w, bounded, iters, max_iter=7)
    cloud = boundary_extract(grid)
    assert len(cloud) == 1
    assert cloud.points[0] == pytest.approx(0.5 + 0.5j)


def test_rotation_lemma_at_raster_scale():
    c = unit_circle_param_25()
    window = Window.square(1.6, 512)
    grid = filled_julia_grid(27, c, window, max_iter=500)
    cloud = boundary_extract(grid)
    defect = geometry.rotation_symmetry_defect(cloud, 27)
    assert defect <= 2 * window.pixel_diagonal


def test_containment_for_large_n():
    # bounded pixels stay within 1 + eps + pixel diagonal of the origin, eps = 0.05
    window = Window.square(1.6, 256)
    for theta, n, cap in ((2 / 5, 50, 500), (2 / 5, 51, 4)):
        grid = filled_julia_grid(n, unit_circle_param(theta), window, max_iter=cap)
        pts = grid.bounded_cloud().points
        assert np.abs(pts).max() <= 1.0 + 0.05 + window.pixel_diagonal


def test_annulus_confinement_for_dust():
    window = Window.square(1.6, 512)
    grid = filled_julia_grid(51, unit_circle_param(2 / 5), window, max_iter=4)
    pts = grid.bounded_cloud().points
    mods = np.abs(pts)
    assert mods.min() >= 0.9 and mods.max() <= 1.1


def test_grid_determinism():
    c = unit_circle_param(2 / 5)
    g1 = filled_julia_grid(27, c, Window.square(1.6, 128), max_iter=200)
    g2 = filled_julia_grid(27, c, Window.square(1.6, 128), max_iter=200)
    assert np.array_equal(g1.bounded, g2.bounded)
    assert np.array_equal(g1.iterations, g2.iterations)


def test_multibrot_preperiodic_point():
    # theta = 1/4 gives c = i; the orbit of 0 under z^2 + i is preperiodic
    # (0, i, -1+i, -i, -1+i, ...).  With c exactly 1j the cycle arithmetic is
    # exact in doubles, so the orbit is bounded at any depth.
    from unicritical.dynamics import orbit_bounded

    assert not orbit_bounded(1j, 2, max_iter=10_000, escape_radius=2.0).escaped
    # The raster parameter c = exp(2*pi*i*theta_pixel) is a few ulp off the
    # preperiodic point, which repels nearby orbits; at a modest cap the pixel
    # still tracks the true bounded orbit.  The 5x5 grid puts a pixel centre
    # exactly on theta = 0.25.
    window = Window(0.2, 0.3, -0.05, 0.05, 5, 5)
    grid = multibrot_log_slice(2, window, max_iter=20)
    centers = window.pixel_centers()
    nearest = np.argmin(np.abs(centers.ravel() - (0.25 + 0j)))
    assert abs(centers.ravel()[nearest] - 0.25) < 1e-12
    assert grid.bounded.ravel()[nearest]


def test_multibrot_imaginary_axis_escape_sign():
    # c = exp(2 pi i theta) explodes for Im(theta) << 0 and shrinks for Im >> 0
    window = Window(-0.1, 0.1, -1.2, 1.2, 16, 48)
    grid = multibrot_log_slice(2, window, max_iter=100)
    centers = window.pixel_centers()
    top = grid.bounded[centers.imag > 1.0]
    bottom = grid.bounded[centers.imag < -1.0]
    assert top.all()  # |c| tiny, orbit bounded
    assert not bottom.any()  # |c| huge, escapes


def test_multibrot_conjugation_symmetry():
    # membership is invariant under theta -> -conj(theta), a horizontal flip
    window = Window(-1.0, 1.0, -0.4, 0.4, 128, 64)
    grid = multibrot_log_slice(10, window, max_iter=300)
    assert np.array_equal(grid.bounded, grid.bounded[:, ::-1])
