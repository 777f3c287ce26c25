"""Exact rational arithmetic for rotation angles of unit-circle parameters.

For the family z^n + c with c = exp(2*pi*i*theta) on the unit circle, the
modulus of the second critical iterate c^n + c equals
sqrt(2 + 2*cos(2*pi*theta*(n-1))), so everything hinges on where

    f = theta*(n-1) mod 1

falls relative to 1/3 and 2/3 (equivalently, cos(2*pi*f) relative to -1/2).
That trichotomy boundary is a set of exact rationals and is numerically
unstable in floating point, so this module does all angle arithmetic with
plain integers.  Python integers are arbitrary precision, so products like
numerator*m never overflow.

The boundary cases f in {1/3, 2/3} split further: for certain (theta, n) the
second critical iterate is a fixed point sitting on the circle (so the
critical orbit stays on the circle forever and the filled Julia set is
connected), and otherwise the orbit leaves the circle after one more step.
The fixed-point case is decided here by exact congruences; see
``is_exceptional``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction


class Tag(enum.Enum):
    """Connectivity verdict for a pair (theta, n)."""

    CONNECTED = "Connected"
    DISCONNECTED = "Disconnected"
    ON_CIRCLE_FIXED = "OnCircleFixed"
    ON_CIRCLE_TRANSIENT = "OnCircleTransient"


@dataclass(frozen=True)
class RationalAngle:
    """A reduced fraction numerator/denominator in [0, 1), exact mod 1."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError(f"denominator must be positive, got {self.denominator}")
        if not 0 <= self.numerator < self.denominator:
            raise ValueError(
                f"{self.numerator}/{self.denominator} is not a canonical "
                "representative in [0, 1); use reduce()"
            )
        if math.gcd(self.numerator, self.denominator) != 1:
            raise ValueError(
                f"{self.numerator}/{self.denominator} is not reduced; use reduce()"
            )

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        """Parse 'a/b' (or a bare integer) into a canonical angle."""
        parts = text.strip().split("/")
        if len(parts) == 1:
            return reduce(int(parts[0]), 1)
        if len(parts) == 2:
            return reduce(int(parts[0]), int(parts[1]))
        raise ValueError(f"cannot parse angle {text!r}, expected 'a/b'")


ZERO = RationalAngle(0, 1)
ONE_THIRD = RationalAngle(1, 3)
TWO_THIRDS = RationalAngle(2, 3)


@dataclass(frozen=True)
class ExceptionalWitness:
    """Certificate that the second critical iterate is fixed on the circle.

    The pair (n, theta) then satisfies n = 6*p and
    theta = (3*q + sign)/(3*(6*p - 1)) with integer q and sign in {+1, -1}.
    """

    p: int
    q: int
    sign: int

    def angle(self) -> RationalAngle:
        """Reconstruct the angle this witness certifies."""
        return reduce(3 * self.q + self.sign, 3 * (6 * self.p - 1))

    @property
    def n(self) -> int:
        return 6 * self.p


@dataclass(frozen=True)
class Classification:
    """Verdict for (theta, n) plus the exact value f = theta*(n-1) mod 1."""

    tag: Tag
    fractional_part: RationalAngle
    witness: ExceptionalWitness | None = None

    @property
    def on_circle(self) -> bool:
        return self.tag in (Tag.ON_CIRCLE_FIXED, Tag.ON_CIRCLE_TRANSIENT)


def reduce(numerator: int, denominator: int) -> RationalAngle:
    """Canonical reduced fraction in [0, 1), congruent to numerator/denominator mod 1.

    >>> reduce(4, 10)
    RationalAngle(numerator=2, denominator=5)
    >>> reduce(-1, 3)
    RationalAngle(numerator=2, denominator=3)
    """
    if denominator == 0:
        raise ValueError("zero denominator")
    if denominator < 0:
        numerator, denominator = -numerator, -denominator
    numerator %= denominator
    g = math.gcd(numerator, denominator)
    return RationalAngle(numerator // g, denominator // g)


def fractional_rotation(theta: RationalAngle, m: int) -> RationalAngle:
    """Exact theta*m mod 1 for a nonnegative integer m."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return reduce(theta.numerator * m, theta.denominator)


def minimal_rotation_period(theta: RationalAngle) -> int:
    """Minimal t >= 1 with theta*t an integer, i.e. the period of m -> theta*m mod 1."""
    return theta.denominator // math.gcd(theta.denominator, theta.numerator)


def classify_exact(theta: RationalAngle, n: int) -> Classification:
    """Classify (theta, n) by the exact position of f = theta*(n-1) mod 1.

    f in (1/3, 2/3) means the second critical iterate has modulus < 1
    (Connected); f outside [1/3, 2/3] means modulus > 1 (Disconnected).
    On the boundary the iterate lies on the circle itself: OnCircleFixed if it
    is a fixed point there (see ``is_exceptional``), else OnCircleTransient.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    f = fractional_rotation(theta, n - 1)
    if f.denominator == 3:  # reduced, so f is exactly 1/3 or 2/3
        witness = is_exceptional(theta, n)
        tag = Tag.ON_CIRCLE_FIXED if witness is not None else Tag.ON_CIRCLE_TRANSIENT
        return Classification(tag, f, witness)
    inside = f.denominator < 3 * f.numerator < 2 * f.denominator
    return Classification(Tag.CONNECTED if inside else Tag.DISCONNECTED, f)


def hexagon_points(
    theta: RationalAngle,
) -> tuple[RationalAngle, RationalAngle, RationalAngle, RationalAngle]:
    """Angles of the four auxiliary hexagon vertices (a, a0, b0, b).

    Together with the angles theta and theta + 1/2 these span a unit-side
    regular hexagon inscribed in the circle; a and b are the only possible
    on-circle images of on-circle points under z^n + c, and a0, b0 are their
    preimages under adding c.
    """
    a, b = theta.numerator, theta.denominator
    return (
        reduce(6 * a + b, 6 * b),  # theta + 1/6
        reduce(3 * a + b, 3 * b),  # theta + 1/3
        reduce(3 * a - b, 3 * b),  # theta - 1/3
        reduce(6 * a - b, 6 * b),  # theta - 1/6
    )


def is_exceptional(theta: RationalAngle, n: int) -> ExceptionalWitness | None:
    """Exact test for the second critical iterate being a fixed point on the circle.

    Two congruences are checked, both as exact integer identities:

    1. theta*(n-1) == q +/- 1/3 (mod 1) for an integer q, which puts the
       second iterate on the circle (at angle theta + sign/6);
    2. (theta + sign/6)*n == theta + sign/3 (mod 1) with the *same* sign,
       which makes that point fixed.

    On success n is forced to be a multiple of 6 and a witness
    (p = n/6, q, sign) is returned; the reconstruction
    (3*q + sign)/(3*(6*p - 1)) reduces back to theta.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    a, b = theta.numerator, theta.denominator
    f = fractional_rotation(theta, n - 1)
    if f == ONE_THIRD:
        sign = 1
    elif f == TWO_THIRDS:
        sign = -1
    else:
        return None
    # (theta + sign/6)*n - (theta + sign/3), scaled by 6b, must vanish mod 6b
    diff = n * (6 * a + sign * b) - (6 * a + 2 * sign * b)
    if diff % (6 * b) != 0:
        return None
    if n % 6 != 0:  # implied by the two congruences; cheap defence
        return None
    q_scaled = 3 * a * (n - 1) - sign * b
    q, rem = divmod(q_scaled, 3 * b)
    if rem != 0:  # cannot happen once f = +/-1/3 holds
        return None
    return ExceptionalWitness(p=n // 6, q=q, sign=sign)


def exceptional_powers(theta: RationalAngle, n_max: int) -> list[int]:
    """All n in [2, n_max] whose second critical iterate is fixed on the circle.

    Empty whenever 3 does not divide the denominator of theta, since
    theta*(n-1) mod 1 can then never equal 1/3 or 2/3.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if theta.denominator % 3 != 0:
        return []
    # only multiples of 6 can qualify
    return [n for n in range(6, n_max + 1, 6) if is_exceptional(theta, n) is not None]


def is_exceptional_angle(theta: RationalAngle) -> bool:
    """Whether theta belongs to the fixed-point family (3q+/-1)/(3(6p-1)) for some p, q.

    Membership is periodic in n with period lcm(6, denominator), so scanning
    that many powers is exhaustive.
    """
    if theta.denominator % 3 != 0:
        return False
    period = math.lcm(6, theta.denominator)
    return any(is_exceptional(theta, n) is not None for n in range(6, period + 1, 6))
