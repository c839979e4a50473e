"""Truncated formal power series.

`Series([c0, c1, ..., cK])` represents c0 + c1 z + ... + cK z^K where the
coefficients beyond z^K are unknown (not zero). Arithmetic between series
of different orders returns the smaller order, and no operation reads a
coefficient beyond the order of its operands.

Coefficients live in one of two fields:

* exact: every coefficient is a `fractions.Fraction` (ints are promoted);
* float: every coefficient is a Python float.

Mixing the two gives a float series. Series are immutable.

    >>> z = Series.identity(4)
    >>> 1 / (1 - z)
    Series([1, 1, 1, 1, 1])
    >>> (z + z * z).revert()
    Series([0, 1, -1, 2, -5])
"""
from fractions import Fraction
from numbers import Rational, Real
from typing import Iterable, Sequence, Tuple, Union

from subfree.config import DEFAULT_SERIES_ORDER, FLOAT_TOLERANCE
from subfree.errors import (
    CompositionNeedsZeroConstantTerm,
    DivisionByNonUnit,
    NotInvertible,
    ParameterOutOfRange,
)

Scalar = Union[int, float, Fraction]


def _normalize(values: Iterable) -> Tuple:
    values = list(values)
    if all(isinstance(v, Rational) for v in values):
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


def coerce_scalar(x) -> Scalar:
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, Real):
        return float(x)
    raise TypeError(f"unsupported scalar {x!r}")


class Series:
    __slots__ = ("_c",)

    def __init__(self, coefficients: Sequence, order: int = None):
        c = list(coefficients)
        if order is not None:
            if order < 0:
                raise ParameterOutOfRange(f"order must be >= 0, got {order}")
            c = c[: order + 1] + [0] * (order + 1 - len(c))
        if not c:
            raise ParameterOutOfRange("a series needs at least one coefficient")
        self._c = _normalize(c)

    # --- construction ------------------------------------------------------

    @classmethod
    def identity(cls, order: int = DEFAULT_SERIES_ORDER) -> "Series":
        return cls([0, 1], order=order)

    @classmethod
    def constant(cls, value: Scalar, order: int = DEFAULT_SERIES_ORDER) -> "Series":
        return cls([value], order=order)

    @classmethod
    def geometric(cls, ratio: Scalar = 1, order: int = DEFAULT_SERIES_ORDER) -> "Series":
        """1 / (1 - ratio z)."""
        ratio = coerce_scalar(ratio)
        return cls([ratio ** k for k in range(order + 1)])

    # --- access ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coefficients(self) -> Tuple:
        return self._c

    @property
    def is_exact(self) -> bool:
        return isinstance(self._c[0], Fraction)

    def __getitem__(self, k: int):
        return self._c[k]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        shown = [str(c) if isinstance(c, Fraction) else repr(c) for c in self._c]
        return f"Series([{', '.join(shown)}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def truncate(self, order: int) -> "Series":
        return Series(self._c[: order + 1])

    def to_float(self) -> "Series":
        return Series([float(c) for c in self._c])

    def coerce(self, field: str) -> "Series":
        """Move the coefficients to the "exact" or "float" field.

        Floats become the Fraction of their binary value.
        """
        if field == "float":
            return self.to_float()
        if field == "exact":
            return Series([Fraction(c) for c in self._c])
        raise ParameterOutOfRange(f"field must be 'exact' or 'float', got {field!r}")

    def allclose(self, other: "Series", tol: float = FLOAT_TOLERANCE) -> bool:
        order = min(self.order, other.order)
        return all(
            abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a)))
            for a, b in zip(self._c[: order + 1], other._c[: order + 1])
        )

    # --- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.constant(coerce_scalar(other), self.order)

    def __add__(self, other) -> "Series":
        other = self._lift(other)
        order = min(self.order, other.order)
        return Series([self._c[k] + other._c[k] for k in range(order + 1)])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self._c])

    def __sub__(self, other) -> "Series":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Series":
        return self._lift(other) - self

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            x = coerce_scalar(other)
            return Series([c * x for c in self._c])
        order = min(self.order, other.order)
        a, b = self._c, other._c
        return Series([sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order + 1)])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if not isinstance(other, Series):
            x = coerce_scalar(other)
            if x == 0:
                raise DivisionByNonUnit("division by the zero scalar")
            return Series([c / x for c in self._c])
        b0 = other._c[0]
        if b0 == 0:
            raise DivisionByNonUnit("divisor has zero constant term")
        order = min(self.order, other.order)
        a, b = self._c, other._c
        q = []
        for n in range(order + 1):
            total = a[n] - sum(q[i] * b[n - i] for i in range(n))
            q.append(total / b0)
        return Series(q)

    def __rtruediv__(self, other) -> "Series":
        return self._lift(other) / self

    def __pow__(self, exponent: int) -> "Series":
        if not isinstance(exponent, int) or exponent < 0:
            raise ParameterOutOfRange(f"series powers need a non-negative integer, got {exponent!r}")
        result = Series.constant(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- composition -----------------------------------------------------------

    def __call__(self, x):
        """Evaluate the truncated polynomial at a scalar (Horner)."""
        result = 0
        for c in reversed(self._c):
            result = result * x + c
        return result

    def dilate(self, c: Scalar) -> "Series":
        """f(c z)."""
        c = coerce_scalar(c)
        return Series([a * c ** k for k, a in enumerate(self._c)])

    def compose(self, g: "Series") -> "Series":
        """f(g(z)), Horner evaluation over truncated series; g(0) must be 0."""
        if g._c[0] != 0:
            raise CompositionNeedsZeroConstantTerm(
                f"inner series has constant term {g._c[0]}"
            )
        order = min(self.order, g.order)
        inner = g.truncate(order)
        result = Series.constant(self._c[order], order)
        for c in reversed(self._c[:order]):
            result = result * inner + c
        return result

    def revert(self) -> "Series":
        """Compositional inverse g with f(g(z)) = z, by Lagrange inversion:

            [z^n] g = (1/n) [w^(n-1)] (w / f(w))^n
        """
        if self._c[0] != 0:
            raise NotInvertible(f"series has constant term {self._c[0]}")
        if len(self._c) < 2 or self._c[1] == 0:
            raise NotInvertible("series has zero linear coefficient")
        K = self.order
        # w / f(w) as a series of order K - 1
        phi = Series.constant(1, K - 1) / Series(self._c[1:])
        coeffs = [0]
        power = Series.constant(1, K - 1)
        for n in range(1, K + 1):
            power = power * phi
            coeffs.append(power[n - 1] / n)
        return Series(coeffs)
