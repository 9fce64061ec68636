"""Laurent expansion of the Weierstrass elliptic function from (g2, g3).

For the curve y^2 = 4x^3 - g2*x - g3 the associated wp function expands as

    wp(z) = z^-2 + sum_{k>=2} c_k z^(2k-2)

with c_2 = g2/20, c_3 = g3/28 and, for k >= 4,

    c_k = 3 / ((2k+1)(k-3)) * sum_{j=2}^{k-2} c_j c_{k-j},

a consequence of the differential identity wp'' = 6 wp^2 - g2/2.  The
recursion is validated by checking (wp')^2 = 4 wp^3 - g2 wp - g3 exactly
(see :func:`differential_equation_residual` and the test suite); never
trust it blind.

Eisenstein values G_{2k} = (2k-2)! c_k / 2 and the elliptic analogues of
the Bernoulli numbers (2k G_{2k} for even weight, zero for odd) are read
off the same coefficients.  Periods and lattice sums are out of scope:
everything here is formal in (g2, g3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .series import LaurentSeries, UniSeries

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Curve:
    """A curve y^2 = 4x^3 - g2*x - g3 over the rationals.

    The discriminant is always recomputed from (g2, g3), never stored.
    Singular pairs (discriminant zero, e.g. g2 = g3 = 0, whose formal
    group is the additive one) are accepted: the series algebra is
    formal in (g2, g3).  Layers that need an honest elliptic curve --
    reduction mod p and point counting -- check good reduction
    themselves and skip accordingly.
    """

    g2: Fraction
    g3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "g2", Fraction(self.g2))
        object.__setattr__(self, "g3", Fraction(self.g3))

    @property
    def discriminant(self) -> Fraction:
        return self.g2**3 - 27 * self.g3**2

    @property
    def is_singular(self) -> bool:
        return self.discriminant == 0

    def __repr__(self) -> str:
        return f"Curve(g2={self.g2}, g3={self.g3})"


@dataclass(frozen=True)
class WpExpansion:
    """Coefficients c_k (2 <= k <= order) of wp(z) = z^-2 + sum c_k z^(2k-2)."""

    curve: Curve
    order: int
    c: tuple = field(repr=False)

    def coefficient(self, k: int) -> Fraction:
        if not 2 <= k <= self.order:
            raise IndexError(f"c_{k} outside computed range 2..{self.order}")
        return self.c[k - 2]


def wp_coefficients(curve: Curve, order: int) -> WpExpansion:
    """Expansion coefficients c_2..c_order, exactly.

    The recursion denominators (2k+1)(k-3) are positive for k >= 4, so
    no division by zero can occur.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    c = [_ZERO] * (order + 1)  # index by k, entries 0..1 unused
    c[2] = curve.g2 / 20
    if order >= 3:
        c[3] = curve.g3 / 28
    for k in range(4, order + 1):
        acc = _ZERO
        for j in range(2, k - 1):
            acc += c[j] * c[k - j]
        c[k] = 3 * acc / ((2 * k + 1) * (k - 3))
    return WpExpansion(curve, order, tuple(c[2:]))


def wp_laurent(curve: Curve, order: int) -> LaurentSeries:
    """wp as a Laurent series: valuation -2, tracked through z^(2*order - 2).

    The body has order 2*order; entry 2k holds c_k (exponent 2k - 2).
    """
    exp = wp_coefficients(curve, order)
    body = [_ZERO] * (2 * order + 1)
    body[0] = Fraction(1)
    for k in range(2, order + 1):
        body[2 * k] = exp.coefficient(k)
    return LaurentSeries(-2, UniSeries(2 * order, body))


def wp_prime_laurent(curve: Curve, order: int) -> LaurentSeries:
    """wp' = d(wp)/dz: valuation -3, leading coefficient -2."""
    return wp_laurent(curve, order).differentiate()


def differential_equation_residual(curve: Curve, order: int) -> UniSeries:
    """(wp')^2 - (4 wp^3 - g2 wp - g3), cleared of poles by z^6.

    Returns the residual as a plain power series (the z^6 multiple); it
    must be identically zero through its tracked order.  This is the
    master correctness check for the coefficient recursion.
    """
    wp = wp_laurent(curve, order)
    wpp = wp_prime_laurent(curve, order)
    n = wp.body.order
    p = wp.body                       # z^2 * wp
    q = wpp.body                      # z^3 * wp' (valuation is -3 by construction)
    lhs = q * q                       # z^6 (wp')^2
    rhs = 4 * (p * p * p)             # z^6 * 4 wp^3
    rhs = rhs - curve.g2 * p.shifted(4)   # z^6 * g2 wp = g2 z^4 (z^2 wp)
    rhs = rhs - UniSeries.monomial(n, 6, curve.g3)
    return lhs - rhs


def eisenstein_g(curve: Curve, k: int) -> Fraction:
    """The weight-k Eisenstein value as a polynomial in (g2, g3).

    Zero for odd k; for even k it is (k-2)! * c_{k/2} / 2.  Weights
    below 4 are not defined for a lattice sum, hence rejected.
    """
    if k < 4:
        raise ValueError("Eisenstein values need weight k >= 4")
    if k % 2:
        return _ZERO
    half = k // 2
    return math.factorial(k - 2) * wp_coefficients(curve, half).coefficient(half) / 2


def bernoulli_hurwitz(curve: Curve, k: int) -> Fraction:
    """Elliptic Bernoulli analogue: 2k * G_k for even k >= 4, zero for odd."""
    if k < 4:
        raise ValueError("Bernoulli-Hurwitz numbers need k >= 4")
    if k % 2:
        return _ZERO
    return 2 * k * eisenstein_g(curve, k)
