"""Floating-point evaluation of the modular parametrization candidate.

Feeds q = exp(2*pi*i*z) through the formal-logarithm series to get a
point w in a small disk around the origin, then evaluates the truncated
wp Laurent expansion there: alpha(z) = wp(w), beta(z) = wp'(w).  The
pair must land on y^2 = 4x^3 - g2*x - g3 up to rounding, which is what
``residual`` measures.

Convergence is never assumed.  The wp series is only trusted inside a
reliability radius computed from its own coefficient magnitudes (last
retained term contributing at most 1e-12 relative to the pole term);
outside the radius evaluation refuses rather than silently degrading.
The q-series truncation error is likewise only estimated, by the
magnitude of the last retained term, and reported as such.

Default arithmetic is the machine double / ``complex`` pair; passing
``precision`` (binary digits) above 53 switches the same code path onto
mpmath arbitrary-precision numbers.
"""

from __future__ import annotations

import cmath
import contextlib
from dataclasses import dataclass

from .formal_group import FormalLog
from .weierstrass import Curve, wp_coefficients

RADIUS_RELATIVE_TOLERANCE = 1e-12


class HalfPlaneError(ValueError):
    """z must lie strictly in the upper half-plane."""


class PoleError(ZeroDivisionError):
    """wp has a pole at the origin."""


class OutOfRadiusError(ValueError):
    """The argument lies outside the series reliability radius."""


class _Numerics:
    """Uniform facade over double precision and mpmath arithmetic."""

    __slots__ = ("precision", "mp")

    def __init__(self, precision: int):
        if precision < 1:
            raise ValueError("precision must be a positive bit count")
        self.precision = precision
        if precision <= 53:
            self.mp = None
        else:
            import mpmath

            self.mp = mpmath

    def workprec(self):
        if self.mp is None:
            return contextlib.nullcontext()
        return self.mp.workprec(self.precision)

    def complex_of(self, z):
        if isinstance(z, tuple):
            re, im = z
        else:
            re, im = z.real, z.imag
        if self.mp is None:
            return complex(float(re), float(im))
        return self.mp.mpc(re, im)

    def real_of(self, x):
        return float(x) if self.mp is None else self.mp.mpf(x)

    def rational(self, q):
        if self.mp is None:
            return float(q)
        return self.mp.mpf(q.numerator) / q.denominator

    def exp(self, z):
        return cmath.exp(z) if self.mp is None else self.mp.exp(z)

    def two_pi_i(self):
        if self.mp is None:
            return 2j * cmath.pi
        return 2j * self.mp.pi


@dataclass(frozen=True)
class ParamResult:
    """One evaluated point of the parametrization candidate.

    ``w`` is the partial sum of the log q-series (the argument handed to
    wp); ``residual`` is |beta^2 - 4 alpha^3 + g2 alpha + g3|, i.e. how
    far (alpha, beta) is from the curve.  ``truncation_estimate`` is the
    magnitude of the last retained q-series term -- a heuristic, zero
    whenever that coefficient is structurally zero (even index on this
    odd model), not an error bound.
    """

    z: object
    q: object
    w: object
    alpha: object
    beta: object
    residual: float
    truncation_estimate: float
    precision: int

    @property
    def residual_scale(self):
        """Magnitude of the dominant curve-equation term at this point.

        The absolute residual of values rounded to the working precision
        cannot fall below roughly one ulp of this scale; divide by it to
        judge how close to that floor the evaluation landed.
        """
        b2 = abs(self.beta) ** 2
        a3 = 4 * abs(self.alpha) ** 3
        return b2 if b2 > a3 else a3

    @property
    def relative_residual(self) -> float:
        scale = self.residual_scale
        if scale == 0:
            return float(self.residual)
        return float(self.residual / scale)


@dataclass(frozen=True)
class DerivativeCheck:
    """Central finite difference of alpha against beta * 2*pi*i * cusp sum."""

    z: object
    h: float
    finite_difference: object
    expected: object
    relative_deviation: float


def eval_log_qseries(flog: FormalLog, z, nmax: int, precision: int = 53):
    """Partial sum of the log-series at q = exp(2*pi*i*z), plus an estimate.

    Returns ``(value, truncation_estimate)``; refuses z outside the open
    upper half-plane.
    """
    num = _Numerics(precision)
    with num.workprec():
        zc = num.complex_of(z)
        if not zc.imag > 0:
            raise HalfPlaneError(f"Im(z) must be positive, got {zc.imag}")
        if nmax > flog.series.order:
            raise ValueError(f"nmax={nmax} exceeds formal log order {flog.series.order}")
        q = num.exp(num.two_pi_i() * zc)
        total = zc - zc  # typed zero
        qpow = 1
        for n in range(1, nmax + 1):
            qpow = qpow * q
            c = flog.series.coeffs[n]
            if c:
                total = total + num.rational(c) * qpow
        estimate = abs(num.rational(flog.series.coeffs[nmax])) * abs(q) ** nmax
        return total, estimate


def eval_cusp_qseries(flog: FormalLog, z, nmax: int, precision: int = 53):
    """Partial sum of the weight-two series sum a(n) q^n at q = exp(2*pi*i*z)."""
    num = _Numerics(precision)
    with num.workprec():
        zc = num.complex_of(z)
        if not zc.imag > 0:
            raise HalfPlaneError(f"Im(z) must be positive, got {zc.imag}")
        if nmax > flog.series.order:
            raise ValueError(f"nmax={nmax} exceeds formal log order {flog.series.order}")
        q = num.exp(num.two_pi_i() * zc)
        total = zc - zc
        qpow = 1
        for n in range(1, nmax + 1):
            qpow = qpow * q
            a_n = flog.an[n - 1]
            if a_n:
                total = total + num.rational(a_n) * qpow
        return total


def reliability_radius(curve: Curve, order: int) -> float:
    """|w| below which the order-``order`` wp series is trusted.

    Solves |c_k| r^(2k) = tol for the last nonzero retained coefficient
    (so the final term is at most ``tol`` relative to the |w|^-2 pole
    term).  Infinite when every c_k vanishes (g2 = g3 = 0: the series is
    exactly the pole).
    """
    exp = wp_coefficients(curve, order)
    for k in range(order, 1, -1):
        c = exp.coefficient(k)
        if c:
            return (RADIUS_RELATIVE_TOLERANCE / abs(float(c))) ** (1.0 / (2 * k))
    return float("inf")


def eval_wp(curve: Curve, w, order: int, precision: int = 53):
    """Evaluate the truncated wp and wp' series at w.

    Returns ``(wp(w), wp'(w))``.  Raises :class:`PoleError` at w = 0 and
    :class:`OutOfRadiusError` if |w| is not inside
    :func:`reliability_radius`; refusal beats a silently wrong value.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    num = _Numerics(precision)
    with num.workprec():
        wc = num.complex_of(w)
        if wc == 0:
            raise PoleError("wp has a pole at w = 0")
        radius = reliability_radius(curve, order)
        if not abs(wc) < radius:
            raise OutOfRadiusError(
                f"|w| = {float(abs(wc)):.6g} outside reliability radius "
                f"{radius:.6g} at order {order}"
            )
        exp = wp_coefficients(curve, order)
        inv = 1 / wc
        w2 = wc * wc
        wp_val = inv * inv
        wpp_val = -2 * inv * inv * inv
        power = inv  # becomes w^(2k-3) after the multiply below
        for k in range(2, order + 1):
            power = power * w2
            c = exp.coefficient(k)
            if c:
                cf = num.rational(c)
                wpp_val = wpp_val + (2 * k - 2) * cf * power
                wp_val = wp_val + cf * power * wc
        return wp_val, wpp_val


def param_point(
    curve: Curve, flog: FormalLog, z, nmax: int, order: int, precision: int = 53
) -> ParamResult:
    """Evaluate (alpha, beta) = (wp, wp')(log q-series) and its curve residual."""
    num = _Numerics(precision)
    with num.workprec():
        zc = num.complex_of(z)
        w, estimate = eval_log_qseries(flog, zc, nmax, precision)
        q = num.exp(num.two_pi_i() * zc)
        alpha, beta = eval_wp(curve, w, order, precision)
        residual = abs(
            beta * beta
            - (4 * alpha**3 - num.rational(curve.g2) * alpha - num.rational(curve.g3))
        )
        return ParamResult(zc, q, w, alpha, beta, residual, estimate, precision)


def derivative_check(
    curve: Curve,
    flog: FormalLog,
    z,
    h: float,
    nmax: int | None = None,
    order: int = 20,
    precision: int = 53,
) -> DerivativeCheck:
    """Compare d(alpha)/dz with beta * 2*pi*i * (weight-two q-sum).

    Uses the symmetric difference (alpha(z+h) - alpha(z-h)) / 2h, which
    converges at O(h^2) until rounding takes over.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    num = _Numerics(precision)
    with num.workprec():
        zc = num.complex_of(z)
        hr = num.real_of(h)
        if nmax is None:
            nmax = flog.series.order
        plus = param_point(curve, flog, zc + hr, nmax, order, precision)
        minus = param_point(curve, flog, zc - hr, nmax, order, precision)
        center = param_point(curve, flog, zc, nmax, order, precision)
        fd = (plus.alpha - minus.alpha) / (2 * hr)
        cusp = eval_cusp_qseries(flog, zc, nmax, precision)
        expected = center.beta * num.two_pi_i() * cusp
        scale = abs(expected)
        if scale == 0:
            deviation = float("inf") if abs(fd - expected) else 0.0
        else:
            deviation = float(abs(fd - expected) / scale)
        return DerivativeCheck(zc, float(h), fd, expected, deviation)
