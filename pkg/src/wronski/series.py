"""Truncated formal power series in the divided-power convention.

A :class:`DividedSeries` of order ``N`` stores ``a_0 .. a_N`` and stands for

    f(t) = sum_n a_n * t^n / n!

so ``a_n`` is the n-th derivative of ``f`` at 0. Differentiation is an index
shift and the product is the binomial convolution. Coefficients are
Fractions, Polynomials, or any other commutative ring element with ``+``,
``-``, ``*`` (including ``int * x``).

Every operation returns the largest order it can certify; nothing is padded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Callable, Mapping, Sequence

from .exactmath import (
    Polynomial,
    SymbolTable,
    TruncationError,
    UsageError,
    as_rational,
    poly_substitute,
    rational_str,
)

__all__ = [
    "DividedSeries",
    "DifferentialOperator",
    "ring_of",
    "series_derive",
    "series_product",
    "series_apply_operator",
    "series_map_coeffs",
    "series_map",
]


def ring_of(x: Any) -> Any:
    """A hashable tag identifying the coefficient ring of ``x``."""
    if isinstance(x, Polynomial):
        return x.symbols
    if isinstance(x, (int, Fraction)):
        return "Q"
    ring = getattr(x, "ring", None)
    if ring is not None:
        return ring
    return type(x)


def _is_zero(x: Any) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


@dataclass(frozen=True, eq=False)
class DividedSeries:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in self.coeffs)
        if not coeffs:
            raise UsageError("a series needs at least one coefficient")
        rings = {ring_of(c) for c in coeffs}
        if len(rings) != 1:
            raise UsageError(f"series coefficients live in different rings: {rings}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def ring(self):
        return ring_of(self.coeffs[0])

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> DividedSeries:
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return DividedSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def zero_like(self, order: int | None = None) -> DividedSeries:
        z = self.coeffs[0] * 0
        return DividedSeries((z,) * ((self.order if order is None else order) + 1))

    @classmethod
    def constant(cls, c, order: int) -> DividedSeries:
        return cls((c,) + (c * 0,) * order)

    def _check(self, other: DividedSeries):
        if not isinstance(other, DividedSeries):
            raise UsageError("expected a DividedSeries")
        if other.ring != self.ring:
            raise UsageError(f"series over different rings: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, DividedSeries):
            return NotImplemented
        self._check(other)
        n = min(self.order, other.order)
        return DividedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other):
        if not isinstance(other, DividedSeries):
            return NotImplemented
        self._check(other)
        n = min(self.order, other.order)
        return DividedSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __neg__(self):
        return DividedSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DividedSeries):
            return series_product(self, other)
        return DividedSeries(tuple(c * other for c in self.coeffs))

    def __rmul__(self, other):
        if isinstance(other, DividedSeries):
            return series_product(other, self)
        return DividedSeries(tuple(other * c for c in self.coeffs))

    def agrees_with(self, other: DividedSeries, order: int) -> bool:
        """Coefficient-wise equality through ``order``; both sides must reach it."""
        if self.order < order or other.order < order:
            raise TruncationError(
                f"cannot compare to order {order}: orders are {self.order} and {other.order}"
            )
        return all(self.coeffs[i] == other.coeffs[i] for i in range(order + 1))

    def __eq__(self, other):
        if not isinstance(other, DividedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DividedSeries({[str(c) for c in self.coeffs]})"

    def render(self) -> str:
        """One line per coefficient: ``a<n> = <value>`` (divided powers)."""
        return "\n".join(f"a{n} = {c}" for n, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_coeff_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: Mapping) -> DividedSeries:
        try:
            order = int(obj["order"])
            raw = list(obj["coeffs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed series JSON: {exc}") from exc
        if len(raw) != order + 1:
            raise UsageError(f"series JSON has {len(raw)} coefficients for order {order}")
        return cls(tuple(_coeff_from_json(c) for c in raw))


def _coeff_to_json(c):
    if isinstance(c, Polynomial):
        return c.to_json()
    if isinstance(c, (int, Fraction)):
        return rational_str(c)
    raise UsageError(f"no JSON form for coefficient {c!r}")


def _coeff_from_json(c):
    if isinstance(c, str):
        return as_rational(c)
    if isinstance(c, Mapping):
        return Polynomial.from_json(c)
    raise UsageError(f"malformed series coefficient {c!r}")


@dataclass(frozen=True)
class DifferentialOperator:
    """Monic constant-coefficient operator ``sum_i coeffs[i] * D^i``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise UsageError("operator needs degree at least 1")
        if self.coeffs[-1] != 1:
            raise UsageError("operator must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_elementary(cls, elementary: Sequence[Any], one: Any = 1) -> DifferentialOperator:
        """``D^{m} - a_1 D^{m-1} + ... + (-1)^m a_m`` for ``elementary = (a_1..a_m)``."""
        m = len(elementary)
        coeffs = [None] * (m + 1)
        coeffs[m] = one
        for i, a in enumerate(elementary, start=1):
            coeffs[m - i] = a if i % 2 == 0 else -a
        return cls(tuple(coeffs))


def series_derive(f: DividedSeries, k: int = 1) -> DividedSeries:
    if k < 0:
        raise UsageError("derivative order must be nonnegative")
    if k > f.order:
        raise TruncationError(f"D^{k} of a series of order {f.order}")
    if k == 0:
        return f
    return DividedSeries(f.coeffs[k:])


def series_product(f: DividedSeries, g: DividedSeries) -> DividedSeries:
    """Binomial convolution ``c_n = sum_k C(n,k) a_k b_{n-k}``."""
    f._check(g)
    n_max = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    nz_a = [i for i in range(n_max + 1) if not _is_zero(a[i])]
    zero = a[0] * 0
    out = []
    for n in range(n_max + 1):
        acc = zero
        for k in nz_a:
            if k > n:
                break
            m = n - k
            if _is_zero(b[m]):
                continue
            term = a[k] * b[m]
            c = comb(n, k)
            acc = acc + (term if c == 1 else c * term)
        out.append(acc)
    return DividedSeries(tuple(out))


def series_apply_operator(P: DifferentialOperator, f: DividedSeries) -> DividedSeries:
    if f.order < P.degree:
        raise TruncationError(f"operator of degree {P.degree} on a series of order {f.order}")
    n_out = f.order - P.degree
    out = []
    for n in range(n_out + 1):
        acc = None
        for i, c in enumerate(P.coeffs):
            if _is_zero(c):
                continue
            term = c * f.coeffs[n + i]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else f.coeffs[0] * 0)
    return DividedSeries(tuple(out))


def series_map_coeffs(
    f: DividedSeries,
    images: Mapping[str, Any],
    target: SymbolTable | None = None,
    to_rational: bool = True,
) -> DividedSeries:
    """Apply the substitution ``images`` to every coefficient.

    Rational coefficients pass through unchanged. When the target table is
    empty the result is returned over Q (Fractions) unless ``to_rational`` is
    false.
    """
    out = []
    for c in f.coeffs:
        if isinstance(c, Polynomial):
            p = poly_substitute(c, images, target)
            if to_rational and len(p.symbols) == 0:
                out.append(p.constant_term())
            else:
                out.append(p)
        else:
            out.append(c)
    return DividedSeries(tuple(out))


def series_map(f: DividedSeries, fn: Callable[[Any], Any]) -> DividedSeries:
    """Apply an arbitrary ring map coefficient-wise."""
    return DividedSeries(tuple(fn(c) for c in f.coeffs))
