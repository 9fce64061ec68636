"""Truncated power-series arithmetic over exact rationals.

Every series tracks coefficients up to a fixed truncation order N and all
arithmetic stays inside that window, so results are exact as elements of
Q[[T]] / T^(N+1).  Coefficients are :class:`fractions.Fraction` throughout;
nothing here ever touches floating point.

Three containers live in this module:

* :class:`UniSeries`   -- dense univariate series, coefficients of T^0..T^N.
* :class:`LaurentSeries` -- a UniSeries shifted by an integer valuation,
  canonically normalized so the body has a nonzero constant term.
* :class:`BiSeries`    -- dense bivariate series truncated by total degree.

All values are immutable after construction and safe to share between
threads; every operation is a pure function of its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class OrderMismatchError(ValueError):
    """Combining series with different truncation orders."""


class NonUnitDivisorError(ZeroDivisionError):
    """Dividing by a series whose constant term is zero."""


class CompositionDomainError(ValueError):
    """Substituting an inner series with a nonzero constant term."""


class ReversionDomainError(ValueError):
    """Reverting a series that is not T + O(T^2)."""


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _poly_str(coeffs, var: str, shift: int = 0) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        e = k + shift
        if e == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            pw = var if e == 1 else f"{var}^{e}"
            term = f"{mag}{pw}"
            if c < 0 and parts:
                parts.append(f"- {term}")
                continue
            if c < 0:
                term = f"-{term}"
        parts.append(f"+ {term}" if parts else term)
    return " ".join(parts) if parts else "0"


class UniSeries:
    """Univariate power series truncated at a fixed order.

    ``coeffs[k]`` is the coefficient of T^k for 0 <= k <= order; the
    tuple always has length ``order + 1``.  Binary operations require
    both operands to carry the same order (raising
    :class:`OrderMismatchError` otherwise) so that truncation windows
    never silently disagree.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = tuple(_coerce(c) for c in coeffs)
        if len(cs) > order + 1:
            raise ValueError(
                f"got {len(cs)} coefficients for order {order} "
                f"(expected at most {order + 1})"
            )
        if len(cs) < order + 1:
            cs = cs + (_ZERO,) * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("UniSeries is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "UniSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "UniSeries":
        return cls(order, (_ONE,))

    @classmethod
    def identity(cls, order: int) -> "UniSeries":
        """The series T."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return cls(order, (_ZERO, _ONE))

    @classmethod
    def monomial(cls, order: int, power: int, coeff=1) -> "UniSeries":
        if not 0 <= power <= order:
            raise ValueError("monomial power outside truncation window")
        return cls(order, (_ZERO,) * power + (_coerce(coeff),))

    # -- basic access ------------------------------------------------

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient T^{k} outside order-{self.order} window")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "UniSeries":
        """Drop coefficients above ``order`` (which must not exceed self.order)."""
        if order > self.order:
            raise ValueError("cannot extend a series by truncation")
        return UniSeries(order, self.coeffs[: order + 1])

    def shifted(self, k: int) -> "UniSeries":
        """Multiply by T^k inside the same truncation window (top terms drop)."""
        if k < 0:
            raise ValueError("shift must be >= 0")
        if k == 0:
            return self
        return UniSeries(self.order, (_ZERO,) * k + self.coeffs[: self.order + 1 - k])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"UniSeries(order={self.order}: {_poly_str(self.coeffs, 'T')})"

    # -- ring operations ----------------------------------------------

    def _check_order(self, other: "UniSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        self._check_order(other)
        return UniSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        self._check_order(other)
        return UniSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return UniSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            self._check_order(other)
            n = self.order
            out = [_ZERO] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return UniSeries(n, out)
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return UniSeries(self.order, tuple(a * c for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if c == 0:
                raise ZeroDivisionError("division by zero scalar")
            return UniSeries(self.order, tuple(a / c for a in self.coeffs))
        if not isinstance(other, UniSeries):
            return NotImplemented
        self._check_order(other)
        b0 = other.coeffs[0]
        if b0 == 0:
            raise NonUnitDivisorError("divisor has zero constant term")
        n = self.order
        q: list[Fraction] = []
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                b = other.coeffs[j]
                if b:
                    acc -= q[k - j] * b
            q.append(acc / b0)
        return UniSeries(n, q)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = UniSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus / structural operations ------------------------------

    def differentiate(self) -> "UniSeries":
        """Term-by-term derivative; the order drops by one."""
        if self.order == 0:
            return UniSeries(0)
        return UniSeries(
            self.order - 1,
            tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1),
        )

    def compose(self, inner: "UniSeries") -> "UniSeries":
        """Substitute ``inner`` (constant term zero) into self, Horner style."""
        self._check_order(inner)
        if inner.coeffs[0] != 0:
            raise CompositionDomainError("inner series must have zero constant term")
        n = self.order
        result = UniSeries(n, (self.coeffs[n],))
        for k in range(n - 1, -1, -1):
            result = result * inner
            ck = self.coeffs[k]
            if ck:
                result = result + UniSeries(n, (ck,))
        return result

    def reverse(self) -> "UniSeries":
        """Compositional inverse by Lagrange inversion.

        Requires self = T + O(T^2).  The coefficient of T^k in the
        inverse is [T^(k-1)] (T/self)^k / k; when self is odd the
        computation collapses onto a series in T^2, which roughly
        halves the working order.
        """
        n = self.order
        if n < 1 or self.coeffs[0] != 0 or self.coeffs[1] != 1:
            raise ReversionDomainError("reversion needs f = T + O(T^2)")
        if all(not c for k, c in enumerate(self.coeffs) if k % 2 == 0):
            return self._reverse_odd()
        # u = T/f is a unit series of order n-1
        u = UniSeries.one(n - 1) / UniSeries(n - 1, self.coeffs[1:])
        out = [_ZERO] * (n + 1)
        power = u
        out[1] = power.coeffs[0]
        for k in range(2, n + 1):
            power = power * u
            out[k] = power.coeffs[k - 1] / k
        return UniSeries(n, out)

    def _reverse_odd(self) -> "UniSeries":
        # f = T * E(T^2): work with v = 1/E in the compressed variable S = T^2.
        n = self.order
        m = (n - 1) // 2
        ev = UniSeries(m, tuple(self.coeffs[2 * j + 1] for j in range(m + 1)))
        v = UniSeries.one(m) / ev
        v_sq = v * v
        out = [_ZERO] * (n + 1)
        power = v
        for r in range(m + 1):
            k = 2 * r + 1
            if k > n:
                break
            out[k] = power.coeffs[r] / k
            power = power * v_sq
        return UniSeries(n, out)


class LaurentSeries:
    """``T^valuation * body`` with ``body`` a :class:`UniSeries`.

    Canonical form: unless the series is identically zero, the body has a
    nonzero constant term (leading zeros are absorbed into the valuation
    at construction, keeping the top tracked exponent fixed).  A series
    tracks exponents ``valuation .. valuation + body.order``; coefficients
    below the valuation are exactly zero, coefficients above the window
    are unknown.
    """

    __slots__ = ("valuation", "body")

    def __init__(self, valuation: int, body: UniSeries):
        lead = 0
        while lead <= body.order and not body.coeffs[lead]:
            lead += 1
        if lead > body.order:
            # identically zero: normalize the valuation away
            object.__setattr__(self, "valuation", 0)
            object.__setattr__(self, "body", UniSeries(body.order))
            return
        if lead:
            body = UniSeries(body.order - lead, body.coeffs[lead:])
            valuation += lead
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "body", body)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @property
    def top_exponent(self) -> int:
        return self.valuation + self.body.order

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def coefficient(self, exponent: int) -> Fraction:
        """Coefficient of T^exponent; exponents above the window are unknown."""
        if exponent > self.top_exponent:
            raise IndexError(
                f"exponent {exponent} above tracked window (top {self.top_exponent})"
            )
        if exponent < self.valuation:
            return _ZERO
        return self.body.coeffs[exponent - self.valuation]

    def differentiate(self) -> "LaurentSeries":
        """Term-by-term derivative; the tracked window shifts down by one."""
        v = self.valuation
        return LaurentSeries(
            v - 1,
            UniSeries(self.body.order, tuple((v + i) * c for i, c in enumerate(self.body.coeffs))),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.valuation == other.valuation and self.body == other.body

    def __repr__(self) -> str:
        return (
            f"LaurentSeries({_poly_str(self.body.coeffs, 'T', shift=self.valuation)})"
        )


class BiSeries:
    """Bivariate series truncated by total degree.

    ``rows[i][j]`` is the coefficient of ``t1^i t2^j`` for ``i + j <= order``;
    row ``i`` has length ``order - i + 1``.  Arithmetic truncates to the
    shared total degree.
    """

    __slots__ = ("order", "rows")

    def __init__(self, order: int, rows: Iterable[Iterable] = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        built = []
        rows = list(rows)
        if len(rows) > order + 1:
            raise ValueError("more rows than the total degree admits")
        for i in range(order + 1):
            want = order - i + 1
            row = tuple(_coerce(c) for c in rows[i]) if i < len(rows) else ()
            if len(row) > want:
                raise ValueError(f"row {i} longer than total degree {order} admits")
            if len(row) < want:
                row = row + (_ZERO,) * (want - len(row))
            built.append(row)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rows", tuple(built))

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "BiSeries":
        return cls(order)

    @classmethod
    def constant(cls, order: int, value) -> "BiSeries":
        return cls(order, ((_coerce(value),),))

    @classmethod
    def variable(cls, order: int, which: int) -> "BiSeries":
        """The monomial t1 (which=1) or t2 (which=2)."""
        if order < 1:
            raise ValueError("variable needs order >= 1")
        if which == 1:
            return cls(order, ((), (_ONE,)))
        if which == 2:
            return cls(order, ((_ZERO, _ONE),))
        raise ValueError("which must be 1 or 2")

    @classmethod
    def from_uni(cls, f: UniSeries, order: int, which: int) -> "BiSeries":
        """Embed f(t1) or f(t2), truncating at total degree ``order``."""
        top = min(f.order, order)
        if which == 1:
            return cls(order, tuple((f.coeffs[i],) for i in range(top + 1)))
        if which == 2:
            return cls(order, (tuple(f.coeffs[: top + 1]),))
        raise ValueError("which must be 1 or 2")

    # -- access -------------------------------------------------------

    def get(self, i: int, j: int) -> Fraction:
        if i < 0 or j < 0 or i + j > self.order:
            raise IndexError(f"t1^{i} t2^{j} outside total degree {self.order}")
        return self.rows[i][j]

    def __getitem__(self, ij) -> Fraction:
        return self.get(*ij)

    def terms(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (i, j, coefficient) for nonzero entries, lexicographic in (i, j)."""
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c:
                    yield i, j, c

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.order == other.order and self.rows == other.rows

    def __repr__(self) -> str:
        nz = sum(1 for _ in self.terms())
        return f"BiSeries(order={self.order}, {nz} nonzero terms)"

    # -- ring operations ----------------------------------------------

    def _check_order(self, other: "BiSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._check_order(other)
        return BiSeries(
            self.order,
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)),
        )

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._check_order(other)
        return BiSeries(
            self.order,
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)),
        )

    def __neg__(self):
        return BiSeries(self.order, tuple(tuple(-c for c in row) for row in self.rows))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return BiSeries(self.order, tuple(tuple(a * c for a in row) for row in self.rows))
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._check_order(other)
        n = self.order
        out = [[_ZERO] * (n - i + 1) for i in range(n + 1)]
        for i1, row1 in enumerate(self.rows):
            for j1, a in enumerate(row1):
                if not a:
                    continue
                imax = n - i1 - j1
                for i2 in range(imax + 1):
                    row2 = other.rows[i2]
                    for j2 in range(imax - i2 + 1):
                        b = row2[j2]
                        if b:
                            out[i1 + i2][j1 + j2] += a * b
        return BiSeries(n, out)

    __rmul__ = __mul__

    def reciprocal(self) -> "BiSeries":
        """Inverse of a unit (nonzero constant term), by Newton iteration."""
        c = self.rows[0][0]
        if c == 0:
            raise NonUnitDivisorError("bivariate divisor has zero constant term")
        n = self.order
        inv = BiSeries.constant(n, 1 / c)
        two = BiSeries.constant(n, 2)
        correct = 1
        while correct <= n:
            inv = inv * (two - self * inv)
            correct *= 2
        return inv

    # -- structural helpers --------------------------------------------

    def swap(self) -> "BiSeries":
        """Exchange the two variables."""
        n = self.order
        return BiSeries(
            n, tuple(tuple(self.rows[j][i] for j in range(n - i + 1)) for i in range(n + 1))
        )

    def at_t2_zero(self) -> UniSeries:
        """The univariate slice F(t, 0)."""
        return UniSeries(self.order, tuple(row[0] for row in self.rows))


def divided_difference(f: UniSeries) -> BiSeries:
    """The symmetric series (f(t1) - f(t2)) / (t1 - t2), computed exactly.

    Uses the telescoping identity (t1^k - t2^k)/(t1 - t2) = sum of
    t1^i t2^j over i + j = k - 1, so no division ever occurs.  The
    result is truncated at total degree ``f.order - 1``.
    """
    n = max(f.order - 1, 0)
    out = [[_ZERO] * (n - i + 1) for i in range(n + 1)]
    for k, c in enumerate(f.coeffs):
        if k == 0 or not c:
            continue
        for i in range(k):
            out[i][k - 1 - i] += c
    return BiSeries(n, out)


def bi_substitute(outer: UniSeries, inner: BiSeries) -> BiSeries:
    """Evaluate ``outer`` at a bivariate argument with zero constant term."""
    if inner.rows[0][0] != 0:
        raise CompositionDomainError("inner series must have zero constant term")
    n = inner.order
    top = min(outer.order, n)
    result = BiSeries.constant(n, outer.coeffs[top])
    for k in range(top - 1, -1, -1):
        result = result * inner
        ck = outer.coeffs[k]
        if ck:
            result = result + BiSeries.constant(n, ck)
    return result
