"""Truncated formal power series in the deformation parameter.

A series holds coefficients ``c_0 .. c_N`` in any coefficient space whose
values support ``+``, unary ``-``, ``*`` (both by a scalar and, where needed,
by another value), ``is_zero()`` and ``zero_like()``; inversion additionally
needs ``unit_like()``.  All the tensor types of this package qualify.

Arithmetic is strict about the truncation order: combining series with
different orders raises instead of silently re-truncating, which is the
classic source of wrong-order results in formal deformation computations.
Use :meth:`HSeries.truncated` / :meth:`HSeries.extended` explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping


class OrderMismatchError(ValueError):
    """Raised when series of different truncation orders are combined."""


def _check_orders(a: "HSeries", b: "HSeries") -> None:
    if a.order != b.order:
        raise OrderMismatchError(
            f"truncation orders differ: {a.order} vs {b.order}; "
            "use truncated()/extended() explicitly"
        )


@dataclass(frozen=True)
class HSeries:
    """A formal power series truncated (inclusively) at a fixed order."""

    coeffs: tuple[Any, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the order-0 coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k]

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: Any, order: int) -> "HSeries":
        """The series with order-0 coefficient ``value`` and zeros above."""
        zero = value.zero_like()
        return cls((value,) + (zero,) * order)

    @classmethod
    def from_terms(cls, order: int, terms: Mapping[int, Any]) -> "HSeries":
        """A series from an order -> coefficient mapping (must be nonempty)."""
        if not terms:
            raise ValueError("need at least one coefficient to infer the space")
        if any(not 0 <= k <= order for k in terms):
            raise ValueError(f"term orders must lie in 0..{order}")
        zero = next(iter(terms.values())).zero_like()
        return cls(tuple(terms.get(k, zero) for k in range(order + 1)))

    def zero_like(self) -> "HSeries":
        z = self.coeffs[0].zero_like()
        return HSeries((z,) * (self.order + 1))

    def unit_like(self) -> "HSeries":
        return HSeries.constant(self.coeffs[0].unit_like(), self.order)

    # -- linear structure --------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def scale(self, factor) -> "HSeries":
        return HSeries(tuple(c.scale(factor) for c in self.coeffs))

    def __add__(self, other: "HSeries") -> "HSeries":
        if not isinstance(other, HSeries):
            return NotImplemented
        _check_orders(self, other)
        return HSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HSeries":
        return HSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "HSeries") -> "HSeries":
        return self + (-other)

    # -- Cauchy product ------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HSeries):
            return NotImplemented
        _check_orders(self, other)
        out = []
        for k in range(self.order + 1):
            acc = None
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if a.is_zero() or b.is_zero():
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            out.append(self.coeffs[0].zero_like() if acc is None else acc)
        return HSeries(tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- truncation control ----------------------------------------------------

    def truncated(self, order: int) -> "HSeries":
        """Drop coefficients above ``order`` (which must not exceed the current order)."""
        if order > self.order:
            raise OrderMismatchError("cannot truncate upwards; use extended()")
        return HSeries(self.coeffs[: order + 1])

    def extended(self, order: int) -> "HSeries":
        """Pad with zero coefficients up to ``order``."""
        if order < self.order:
            raise OrderMismatchError("cannot extend downwards; use truncated()")
        zero = self.coeffs[0].zero_like()
        return HSeries(self.coeffs + (zero,) * (order - self.order))


def unit_series(unit: Any, order: int) -> HSeries:
    """The multiplicative unit series ``1 + 0·h + ...`` for a given unit value."""
    return HSeries.constant(unit, order)


def invert(x: HSeries) -> HSeries:
    """The multiplicative inverse of a series with unit constant term.

    Computed order by order from ``y_k = -sum_{j=1..k} x_j y_{k-j}``; the
    result satisfies ``x·y = y·x = 1`` exactly at the truncation order.
    """
    unit = x.coeffs[0].unit_like()
    if x.coeffs[0] != unit:
        raise ValueError("series inversion requires the constant term to be the unit")
    ys = [unit]
    for k in range(1, x.order + 1):
        acc = None
        for j in range(1, k + 1):
            if x.coeffs[j].is_zero() or ys[k - j].is_zero():
                continue
            term = x.coeffs[j] * ys[k - j]
            acc = term if acc is None else acc + term
        ys.append(unit.zero_like() if acc is None else -acc)
    return HSeries(tuple(ys))


def quasi_inverse(r: HSeries) -> HSeries:
    """The quasi-inverse of a series with zero constant term.

    Returns the unique ``r'`` with ``r + r' + r·r' = 0`` at the truncation
    order; the mirror identity ``r' + r + r'·r = 0`` is verified before
    returning (both hold for the quasi-inverse in an associative algebra).
    Equivalently ``r' = sum_{k>=1} (-1)^k r^k``, so that ``1 + r'`` inverts
    ``1 + r`` after a unit is adjoined.
    """
    if not r.coeffs[0].is_zero():
        raise ValueError("quasi-inversion requires a vanishing constant term")
    zero = r.coeffs[0].zero_like()
    out = [zero]
    for k in range(1, r.order + 1):
        acc = -r.coeffs[k]
        for i in range(1, k):
            if r.coeffs[i].is_zero() or out[k - i].is_zero():
                continue
            acc = acc - r.coeffs[i] * out[k - i]
        out.append(acc)
    rp = HSeries(tuple(out))
    if not (r + rp + r * rp).is_zero() or not (rp + r + rp * r).is_zero():
        raise AssertionError("quasi-inverse identities failed; coefficient space is not associative?")
    return rp
