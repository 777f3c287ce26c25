"""Floating-point iteration of z^n + c and the second-iterate criterion.

The geometry of an orbit of 0 under z^n + c with |c| = 1 is controlled by the
second iterate c^n + c, whose modulus r_n = sqrt(2 + 2*cos(2*pi*theta*(n-1)))
is computed here from the exact fractional rotation whenever theta is
rational.  Plain double-precision powers of a unit-modulus number lose about
n*eps of phase, so identities involving c^n at large n go through the exact
argument reduction instead of repeated multiplication.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_angle import RationalAngle, fractional_rotation

AngleLike = RationalAngle | float


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of iterating the critical orbit 0 -> c -> c^n + c -> ..."""

    escaped: bool
    iterations_used: int
    final_modulus: float
    r_n: float
    non_finite: bool = False


@dataclass(frozen=True)
class TrapReport:
    """Result of sampling-based forward-invariance / repulsion verification."""

    invariant_holds: bool
    worst_modulus: float
    mode: str  # "containment" or "repulsion"


def integer_power(z, n: int):
    """z**n by repeated squaring, for scalars or numpy arrays, n >= 0.

    Error grows with the number of multiplications, O(log n), instead of O(n).
    """
    if n < 0:
        raise ValueError("negative exponent")
    if isinstance(z, np.ndarray):
        result = np.ones_like(z)
    else:
        z = complex(z)
        result = complex(1.0)
    while n:
        if n & 1:
            result = result * z
        n >>= 1
        if n:
            z = z * z
    return result


def eval_map(z, n: int, c):
    """One application of the map: z^n + c."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return integer_power(z, n) + c


def unit_circle_param(theta: AngleLike) -> complex:
    """c = exp(2*pi*i*theta)."""
    return cmath.exp(2j * math.pi * float(theta))


def _exact_fraction(theta: AngleLike, m: int) -> float:
    """theta*m mod 1 in [0, 1), reduced exactly.

    Rational angles reduce with integer arithmetic.  A float theta is itself
    an exact dyadic rational p/2^k, which is reduced the same way; no
    precision is lost before the final conversion back to float.
    """
    if isinstance(theta, RationalAngle):
        f = fractional_rotation(theta, m)
        return f.numerator / f.denominator
    fr = Fraction(float(theta))
    r = (fr.numerator * m) % fr.denominator
    return r / fr.denominator


def second_iterate_modulus(theta: AngleLike, n: int) -> float:
    """|c^n + c| = sqrt(2 + 2*cos(2*pi*f)) with f = theta*(n-1) mod 1 reduced exactly.

    The boundary and degenerate values of f map to exact moduli: f in
    {1/3, 2/3} gives 1.0, f = 0 gives 2.0, f = 1/2 gives 0.0.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if isinstance(theta, RationalAngle):
        f = fractional_rotation(theta, n - 1)
        if f.denominator == 3:
            return 1.0
        if f.numerator == 0:
            return 2.0
        if (f.numerator, f.denominator) == (1, 2):
            return 0.0
        x = f.numerator / f.denominator
    else:
        x = _exact_fraction(theta, n - 1)
    return math.sqrt(max(2.0 + 2.0 * math.cos(2.0 * math.pi * x), 0.0))


def second_iterate_value(theta: AngleLike, n: int) -> complex:
    """c^n + c with c^n = exp(2*pi*i*(theta*n mod 1)) via exact argument reduction.

    Accurate to a few ulp uniformly in n, unlike repeated multiplication.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    fn = _exact_fraction(theta, n)
    f1 = _exact_fraction(theta, 1)
    return cmath.exp(2j * math.pi * fn) + cmath.exp(2j * math.pi * f1)


def default_escape_radius(c: complex) -> float:
    """max(2, |c|+1): beyond this modulus, |z^n + c| > |z| for every n >= 2."""
    return max(2.0, abs(c) + 1.0)


def orbit_bounded(
    c: complex,
    n: int,
    max_iter: int = 10_000,
    escape_radius: float | None = None,
) -> OrbitResult:
    """Iterate the critical orbit of 0 until it leaves the escape radius.

    ``iterations_used`` is the index of the first iterate beyond the radius,
    or ``max_iter`` if none is.  Non-finite intermediates count as escaped and
    set the ``non_finite`` flag.  ``r_n`` always records |c^n + c|.
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    safe = default_escape_radius(c)
    if escape_radius is None:
        escape_radius = safe
    elif escape_radius < safe - 1e-12:
        raise ValueError(f"escape_radius {escape_radius} below safe radius {safe}")
    r_n = abs(eval_map(complex(c), n, c))
    z = 0j
    for k in range(1, max_iter + 1):
        z = eval_map(z, n, c)
        finite = math.isfinite(z.real) and math.isfinite(z.imag)
        if not finite:
            return OrbitResult(True, k, math.inf, r_n, non_finite=True)
        if abs(z) > escape_radius:
            return OrbitResult(True, k, abs(z), r_n)
    return OrbitResult(False, max_iter, abs(z), r_n)


def orbit_bounded_batch(
    c: np.ndarray,
    n: np.ndarray | int,
    max_iter: int = 10_000,
    escape_radius: np.ndarray | float | None = None,
) -> np.ndarray:
    """Vectorised escape verdicts for many (c, n) pairs at once.

    Same update rule as ``orbit_bounded`` (z -> z^n + c from z = 0, escape on
    |z| > radius or non-finite); the exponent may vary per element, handled by
    a shared bit-masked square-and-multiply.  Returns a boolean array,
    True = escaped.
    """
    c = np.asarray(c, dtype=np.complex128).ravel()
    n_arr = np.broadcast_to(np.asarray(n, dtype=np.int64), c.shape).copy()
    if np.any(n_arr < 2):
        raise ValueError("all exponents must be >= 2")
    if escape_radius is None:
        radius = np.maximum(2.0, np.abs(c) + 1.0)
    else:
        radius = np.broadcast_to(np.asarray(escape_radius, float), c.shape).copy()
    r2 = radius * radius
    escaped = np.zeros(c.shape, dtype=bool)
    idx = np.arange(c.size)
    z = np.zeros(c.size, dtype=np.complex128)
    nbits = int(n_arr.max()).bit_length()
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_iter):
            result = np.ones_like(z)
            base = z
            e = n_arr[idx].copy()
            for _ in range(nbits):
                odd = (e & 1).astype(bool)
                if odd.any():
                    result[odd] = result[odd] * base[odd]
                e >>= 1
                if not e.any():
                    break
                base = base * base
            z = result + c[idx]
            m2 = z.real * z.real + z.imag * z.imag
            esc = (m2 > r2[idx]) | ~np.isfinite(m2)
            if esc.any():
                escaped[idx[esc]] = True
                keep = ~esc
                idx = idx[keep]
                z = z[keep]
            if idx.size == 0:
                break
    return escaped


def trap_margin(eta: float, n: int) -> float:
    """eta + 1 - (1 + eta^n)^n, the forward-invariance budget of the disk D_eta.

    If |c^n + c| <= this margin, D_eta is forward invariant under the second
    iterate of z^n + c, so every orbit through it stays bounded.  For fixed
    eta the subtracted term (1+eta^n)^n tends to 1, so the margin tends to
    eta as n grows.
    """
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must be in (0, 1), got {eta}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    # (1+eta^n)^n - 1 via log1p/expm1 keeps precision when eta^n is tiny
    return eta - math.expm1(n * math.log1p(eta**n))


def trap_certificate_eta(r_n: float, n: int, grid: int = 4096) -> float | None:
    """Search for eta in (r_n, 1) with trap_margin(eta, n) >= r_n.

    Returns a certifying eta (the grid point with the largest margin) or None
    when no grid point certifies.  A certificate proves the critical orbit is
    bounded; absence proves nothing.
    """
    if r_n >= 1.0:
        return None
    lo = max(r_n, 1e-9)
    etas = np.linspace(lo, 1.0, grid + 2)[1:-1]
    margins = np.array([trap_margin(float(e), n) for e in etas])
    k = int(np.argmax(margins))
    if margins[k] >= r_n:
        return float(etas[k])
    return None


def _disk_samples(radius: float, count: int, seed: int) -> np.ndarray:
    """count equally spaced points on |z| = radius plus count uniform interior points."""
    ring = radius * np.exp(2j * np.pi * np.arange(count) / count)
    rng = np.random.default_rng(seed)
    interior = radius * np.sqrt(rng.random(count)) * np.exp(
        2j * np.pi * rng.random(count)
    )
    return np.concatenate([ring, interior])


def verify_trap(
    theta: AngleLike,
    n: int,
    epsilon: float,
    sample_count: int,
    seed: int = 0,
) -> TrapReport:
    """Sample-based check of the two halves of the trapping-disk criterion.

    With r_n = |c^n + c|:

    * r_n < 1 - epsilon: sample D_{1-epsilon} (ring + random interior) and
      verify the second iterate maps every sample back into D_{1-epsilon};
      ``worst_modulus`` is the largest image modulus.
    * r_n > 1 + epsilon: sample D_{1-epsilon/2} and verify every second-iterate
      image has modulus >= 1 + epsilon/2; ``worst_modulus`` is the smallest.

    Raises ValueError when r_n is within [1-epsilon, 1+epsilon], where the
    criterion is inconclusive.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    r_n = second_iterate_modulus(theta, n)
    c = unit_circle_param(theta)
    if r_n < 1.0 - epsilon:
        radius = 1.0 - epsilon
        pts = _disk_samples(radius, sample_count, seed)
        images = eval_map(eval_map(pts, n, c), n, c)
        mods = np.abs(images)
        return TrapReport(bool(np.all(mods <= radius)), float(mods.max()), "containment")
    if r_n > 1.0 + epsilon:
        pts = _disk_samples(1.0 - epsilon / 2.0, sample_count, seed)
        with np.errstate(over="ignore", invalid="ignore"):
            images = eval_map(eval_map(pts, n, c), n, c)
            mods = np.abs(images)
        mods = np.where(np.isfinite(mods), mods, np.inf)
        return TrapReport(
            bool(np.all(mods >= 1.0 + epsilon / 2.0)), float(mods.min()), "repulsion"
        )
    raise ValueError(
        f"criterion inconclusive at this epsilon: r_n = {r_n} is within "
        f"[{1 - epsilon}, {1 + epsilon}]"
    )


def circle_orbit_deviation(
    theta: RationalAngle,
    n: int,
    iterations: int = 100,
    digits: int | None = None,
) -> float:
    """Max of ||z_k| - 1| over the first ``iterations`` critical iterates, high precision.

    At fixed-point parameters the on-circle point is repelling with multiplier
    n, so double precision drifts off the circle within a handful of steps;
    this uses mpmath with enough digits (about iterations*log10(n) plus slack)
    for the deviation to reflect the true orbit.
    """
    import mpmath as mp

    if digits is None:
        digits = int(iterations * math.log10(max(n, 2))) + 30
    with mp.workdps(digits):
        c = mp.expjpi(mp.mpf(2 * theta.numerator) / theta.denominator)
        z = mp.mpc(0)
        worst = mp.mpf(0)
        for _ in range(iterations):
            z = z**n + c
            worst = max(worst, abs(abs(z) - 1))
        return float(worst)
