"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction`. Polynomials are sparse, over an
ordered :class:`SymbolTable`, with rational coefficients stored as integer
numerators over one shared positive denominator. Monomials are packed into a
single integer (16 bits per symbol, first symbol most significant) so that
multiplying monomials is integer addition and comparing packed keys is
lexicographic comparison of exponent tuples.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Any, Iterable, Mapping, Sequence

__all__ = [
    "UsageError",
    "TruncationError",
    "SymbolTable",
    "Polynomial",
    "PolyMatrix",
    "as_rational",
    "rational_str",
    "poly_mul",
    "poly_substitute",
    "evaluate",
    "matrix_det",
    "laplace_det",
    "leibniz_det",
    "weighted_degree",
]

_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_DEGREE = 1 << _BITS


class UsageError(ValueError):
    """Raised when an operation is called outside its contract."""


class TruncationError(ValueError):
    """Raised when a truncated series is too short for the requested result."""


_RATIONAL_TEXT = re.compile(r"[+-]?\d+(/\d+)?")


def as_rational(x: Any) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused; all arithmetic here is exact.
    """
    if isinstance(x, bool):
        raise UsageError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_TEXT.fullmatch(x.strip()):
            raise UsageError(f"not a rational of the form p or p/q: {x!r}")
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {x!r}") from exc
    raise UsageError(f"not an exact rational: {x!r}")


def rational_str(q: Fraction | int) -> str:
    """Canonical lowest-terms string, ``"p"`` or ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SymbolTable:
    """Ordered list of distinct indeterminate names."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for n in names:
            if not isinstance(n, str) or not n:
                raise UsageError(f"invalid symbol name {n!r}")
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate symbol names in {names}")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown symbol {name!r}") from None

    def extend(self, extra: Iterable[str]) -> SymbolTable:
        new = [n for n in extra if n not in self.names]
        return SymbolTable(self.names + tuple(new))

    @classmethod
    def of(cls, *names: str) -> SymbolTable:
        return cls(tuple(names))


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if e < 0 or e >= _MAX_DEGREE:
            raise UsageError(f"exponent {e} out of range")
        key = (key << _BITS) | e
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & _MASK
        key >>= _BITS
    return tuple(out)


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are immutable. Arithmetic mixes freely with ``int`` and
    ``Fraction`` (treated as constants over the same symbol table); mixing two
    polynomials over different symbol tables raises :class:`UsageError`.
    """

    __slots__ = ("symbols", "_num", "_den", "_deg", "_hash")

    def __init__(self, symbols: SymbolTable, terms: Mapping[tuple[int, ...], Any] | None = None):
        n = len(symbols)
        fracs: dict[int, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise UsageError(f"exponent tuple {exps} does not match {n} symbols")
            k = _pack(exps)
            fracs[k] = fracs.get(k, Fraction(0)) + as_rational(c)
        den = 1
        for c in fracs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = {k: c.numerator * (den // c.denominator) for k, c in fracs.items() if c}
        self._init(symbols, num, den)

    def _init(self, symbols, num, den):
        self.symbols = symbols
        self._num = num
        self._den = den
        self._deg = None
        self._hash = None

    @classmethod
    def _raw(cls, symbols: SymbolTable, num: dict[int, int], den: int) -> Polynomial:
        """Build from packed numerators, dropping zeros and reducing to lowest terms."""
        num = {k: v for k, v in num.items() if v}
        if den < 0:
            den = -den
            num = {k: -v for k, v in num.items()}
        if not num:
            den = 1
        elif den != 1:
            g = den
            for v in num.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g != 1:
                den //= g
                num = {k: v // g for k, v in num.items()}
        p = cls.__new__(cls)
        p._init(symbols, num, den)
        return p

    # constructors

    @classmethod
    def zero(cls, symbols: SymbolTable) -> Polynomial:
        return cls._raw(symbols, {}, 1)

    @classmethod
    def constant(cls, symbols: SymbolTable, c: Any) -> Polynomial:
        q = as_rational(c)
        return cls._raw(symbols, {0: q.numerator}, q.denominator)

    @classmethod
    def one(cls, symbols: SymbolTable) -> Polynomial:
        return cls._raw(symbols, {0: 1}, 1)

    @classmethod
    def var(cls, symbols: SymbolTable, name: str) -> Polynomial:
        i = symbols.index(name)
        n = len(symbols)
        return cls._raw(symbols, {1 << (_BITS * (n - 1 - i)): 1}, 1)

    @classmethod
    def variables(cls, symbols: SymbolTable) -> list[Polynomial]:
        return [cls.var(symbols, name) for name in symbols]

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent tuple -> coefficient, in canonical (graded-lex, descending) order."""
        n = len(self.symbols)
        return {_unpack(k, n): Fraction(self._num[k], self._den) for k in self._sorted_keys()}

    def _sorted_keys(self) -> list[int]:
        return sorted(self._num, key=lambda k: (_key_degree(k), k), reverse=True)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return not self._num or (len(self._num) == 1 and 0 in self._num)

    def constant_term(self) -> Fraction:
        return Fraction(self._num.get(0, 0), self._den)

    def total_degree(self) -> int:
        """Ordinary total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((_key_degree(k) for k in self._num), default=-1)
        return self._deg

    def used_symbols(self) -> set[str]:
        used = set()
        n = len(self.symbols)
        for k in self._num:
            for name, e in zip(self.symbols.names, _unpack(k, n)):
                if e:
                    used.add(name)
        return used

    def __len__(self):
        return len(self._num)

    def __bool__(self):
        return bool(self._num)

    # coercion

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.symbols != self.symbols:
                raise UsageError(
                    f"symbol tables differ: {self.symbols.names} vs {other.symbols.names}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.symbols, other)
        return None

    def embed(self, target: SymbolTable) -> Polynomial:
        """Re-express over a table containing every used symbol of ``self``."""
        if target == self.symbols:
            return self
        n = len(self.symbols)
        m = len(target)
        pos = []
        for name in self.symbols:
            pos.append(target.names.index(name) if name in target.names else None)
        num = {}
        for k, v in self._num.items():
            exps = _unpack(k, n)
            new = [0] * m
            for e, p, name in zip(exps, pos, self.symbols.names):
                if e:
                    if p is None:
                        raise UsageError(f"symbol {name!r} missing from target table")
                    new[p] = e
            num[_pack(new)] = v
        return Polynomial._raw(target, num, self._den)

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            return self
        if not self._num:
            return o
        da, db = self._den, o._den
        if da == db:
            num = dict(self._num)
            for k, v in o._num.items():
                num[k] = num.get(k, 0) + v
            return Polynomial._raw(self.symbols, num, da)
        g = gcd(da, db)
        fa, fb = db // g, da // g
        num = {k: v * fa for k, v in self._num.items()}
        for k, v in o._num.items():
            num[k] = num.get(k, 0) + v * fb
        return Polynomial._raw(self.symbols, num, da * fa)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.symbols, {k: -v for k, v in self._num.items()}, self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0 or not self._num:
                return Polynomial.zero(self.symbols)
            if other == 1:
                return self
            return Polynomial._raw(
                self.symbols, {k: v * other for k, v in self._num.items()}, self._den
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._num or not o._num:
            return Polynomial.zero(self.symbols)
        if self.total_degree() + o.total_degree() >= _MAX_DEGREE:
            raise UsageError("degree overflow")
        a, b = self._num, o._num
        if len(a) < len(b):
            a, b = b, a
        num: dict[int, int] = {}
        get = num.get
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                num[k] = get(k, 0) + va * vb
        return Polynomial._raw(self.symbols, num, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return Polynomial._raw(
                self.symbols,
                {k: v * q.denominator for k, v in self._num.items()},
                self._den * q.numerator,
            )
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.symbols)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.symbols == other.symbols
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.symbols, self._den, frozenset(self._num.items())))
        return self._hash

    # rendering

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r}, symbols={list(self.symbols.names)})"

    def render(self) -> str:
        """Text form ``c*e1^2*e2 - e3`` in descending graded-lex order."""
        if not self._num:
            return "0"
        n = len(self.symbols)
        parts = []
        for k in self._sorted_keys():
            c = Fraction(self._num[k], self._den)
            exps = _unpack(k, n)
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.symbols.names, exps)
                if e
            )
            mag = abs(c)
            if not mono:
                body = rational_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rational_str(mag)}*{mono}"
            parts.append((c < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> dict:
        n = len(self.symbols)
        return {
            "symbols": list(self.symbols.names),
            "terms": [
                {"coeff": rational_str(Fraction(self._num[k], self._den)), "exps": list(_unpack(k, n))}
                for k in self._sorted_keys()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> Polynomial:
        try:
            symbols = SymbolTable(tuple(obj["symbols"]))
            terms: dict[tuple[int, ...], Fraction] = {}
            for t in obj["terms"]:
                exps = tuple(int(e) for e in t["exps"])
                if exps in terms:
                    raise UsageError(f"repeated monomial {exps}")
                terms[exps] = as_rational(str(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed polynomial JSON: {exc}") from exc
        return cls(symbols, terms)

    @classmethod
    def parse(cls, text: str, symbols: SymbolTable) -> Polynomial:
        """Parse the text form produced by :meth:`render`.

        Also accepts a little more: arbitrary spacing, ``**`` for powers and a
        coefficient anywhere in a product.
        """
        s = text.replace("**", "^").replace(" ", "")
        if not s:
            raise UsageError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sign + body for sign, body in pieces) != s:
            raise UsageError(f"cannot parse polynomial {text!r}")
        n = len(symbols)
        result = Polynomial.zero(symbols)
        for sign, body in pieces:
            coeff = Fraction(1)
            exps = [0] * n
            for factor in body.split("*"):
                m = re.fullmatch(r"(\d+(?:/\d+)?)", factor)
                if m:
                    coeff *= as_rational(factor)
                    continue
                m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
                if not m:
                    raise UsageError(f"cannot parse factor {factor!r} in {text!r}")
                exps[symbols.index(m.group(1))] += int(m.group(2) or 1)
            if sign == "-":
                coeff = -coeff
            result = result + Polynomial(symbols, {tuple(exps): coeff})
        return result


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.symbols != b.symbols:
        raise UsageError("poly_mul: operands have different symbol tables")
    return a * b


def weighted_degree(p: Polynomial, weights: Sequence[int] | None = None) -> int:
    """Largest weighted degree of a term; default weight of the i-th symbol is i+1.

    With symbols e1..e_{r+1} this is the grading deg(e_i) = i.
    """
    n = len(p.symbols)
    w = list(weights) if weights is not None else list(range(1, n + 1))
    if len(w) != n:
        raise UsageError("one weight per symbol required")
    best = -1
    for k in p._num:
        best = max(best, sum(wi * e for wi, e in zip(w, _unpack(k, n))))
    return best


def evaluate(p: Polynomial, images: Mapping[str, Any], one: Any) -> Any:
    """Image of ``p`` under the ring map sending each symbol to ``images[name]``.

    ``one`` is the unit of the target ring; target elements need ``+`` and
    ``*`` (and ``*`` by a Fraction). Unused symbols need no image.
    """
    n = len(p.symbols)
    used = p.used_symbols()
    missing = sorted(used - set(images))
    if missing:
        raise UsageError(f"no image given for symbols {missing}")
    powers: dict[tuple[int, int], Any] = {}

    def power(i: int, e: int):
        if (i, e) not in powers:
            powers[(i, e)] = images[p.symbols.names[i]] if e == 1 else power(i, e - 1) * images[p.symbols.names[i]]
        return powers[(i, e)]

    total = None
    for k in p._sorted_keys():
        c = Fraction(p._num[k], p._den)
        term = one * c
        for i, e in enumerate(_unpack(k, n)):
            if e:
                term = term * power(i, e)
        total = term if total is None else total + term
    if total is None:
        total = one * 0
    return total


def poly_substitute(
    p: Polynomial,
    images: Mapping[str, Polynomial | Fraction | int | str],
    target: SymbolTable | None = None,
) -> Polynomial:
    """Ring-homomorphism image of ``p`` as a polynomial over ``target``.

    Each image is a Polynomial over ``target`` or a rational constant. When
    ``target`` is omitted it is taken from the polynomial images (or is empty
    when every image is a constant).
    """
    if target is None:
        tables = {v.symbols for v in images.values() if isinstance(v, Polynomial)}
        if len(tables) > 1:
            raise UsageError("images live over different symbol tables")
        target = tables.pop() if tables else SymbolTable(())
    conv: dict[str, Polynomial] = {}
    for name, v in images.items():
        if isinstance(v, Polynomial):
            if v.symbols != target:
                raise UsageError(f"image of {name!r} is not over the target table")
            conv[name] = v
        else:
            conv[name] = Polynomial.constant(target, as_rational(v))
    return evaluate(p, conv, Polynomial.one(target))


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.rows <= 0 or self.cols <= 0:
            raise UsageError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise UsageError("entry count does not match dimensions")
        tables = {e.symbols for e in self.entries}
        if len(tables) != 1:
            raise UsageError("matrix entries must share one symbol table")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], symbols: SymbolTable | None = None) -> PolyMatrix:
        if symbols is None:
            found = {x.symbols for row in rows for x in row if isinstance(x, Polynomial)}
            if len(found) > 1:
                raise UsageError("matrix entries must share one symbol table")
            symbols = found.pop() if found else SymbolTable(())
        entries = []
        width = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != width:
                raise UsageError("ragged matrix")
            for x in row:
                entries.append(x if isinstance(x, Polynomial) else Polynomial.constant(symbols, x))
        return cls(len(rows), width, tuple(entries))

    @property
    def symbols(self) -> SymbolTable:
        return self.entries[0].symbols

    def row(self, i: int) -> tuple[Polynomial, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Polynomial]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def laplace_det(rows: Sequence[Sequence[Any]], zero: Any, one: Any) -> Any:
    """Division-free determinant by row-wise Laplace expansion, memoized on column sets.

    ``minors[mask]`` holds the minor on the first ``popcount(mask)`` rows and
    the columns in ``mask``. Uses O(2^n * n) ring multiplications and works
    over any commutative ring whose elements support ``+``, ``-`` and ``*``.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise UsageError("determinant of a non-square matrix")
    if n == 0:
        return one
    minors: dict[int, Any] = {0: one}
    for k in range(n):
        row = rows[k]
        nxt: dict[int, Any] = {}
        for mask, minor in minors.items():
            if _is_zero(minor):
                continue
            # adding column j at position p among the chosen columns
            for j in range(n):
                bit = 1 << j
                if mask & bit or _is_zero(row[j]):
                    continue
                above = bin(mask >> (j + 1)).count("1")
                term = row[j] * minor
                new = mask | bit
                if above % 2:
                    nxt[new] = nxt[new] - term if new in nxt else -term
                else:
                    nxt[new] = nxt[new] + term if new in nxt else term
        minors = nxt
    return minors.get((1 << n) - 1, zero)


def leibniz_det(rows: Sequence[Sequence[Any]], zero: Any, one: Any) -> Any:
    """Naive permutation-sum determinant; an independent check on :func:`laplace_det`."""
    n = len(rows)
    total = zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def matrix_det(m: PolyMatrix) -> Polynomial:
    if m.rows != m.cols:
        raise UsageError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows > 12:
        raise UsageError("matrix_det supports size at most 12")
    syms = m.symbols
    return laplace_det(m.to_rows(), Polynomial.zero(syms), Polynomial.one(syms))


def dumps(obj: Any) -> str:
    """Compact deterministic JSON."""
    return json.dumps(obj, separators=(",", ":"))
