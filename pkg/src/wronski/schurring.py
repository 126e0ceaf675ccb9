"""Schur determinants, Schur-basis expansion and Schubert calculus on G(r, P^d).

Everything is driven by two classical formulas: the Jacobi-Trudi
determinant Delta_lambda(x) = det(x_{lambda_{r-j}+j-i}) and the Pieri rule
for multiplying by a special class. General products go through Giambelli
(expand one factor into special classes) followed by iterated Pieri.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping, Sequence

from .combinat import (
    Partition,
    format_partition,
    pad,
    partition,
    partitions_in_box,
    pieri_successors,
)
from .exactmath import (
    Polynomial,
    SymbolTable,
    TruncationError,
    UsageError,
    as_rational,
    evaluate,
    laplace_det,
    rational_str,
)
from .odecore import UniversalContext

__all__ = [
    "GradedSequence",
    "SchurExpansion",
    "GrassmannRing",
    "SchubertClass",
    "h_symbols",
    "jacobi_trudi",
    "e_from_h",
    "h_from_e",
    "schur_expand",
    "sigma1_power",
    "pieri_action",
    "grassmann_product",
    "grassmann_degree",
    "cap_action",
    "to_h_variables",
    "to_e_variables",
    "schubert_images",
    "map_to_cohomology",
]


class GradedSequence:
    """x_j for j in Z with x_j = 0 (j < 0) and x_0 = 1.

    ``values`` lists x_0, x_1, ...; indices past the list are an error unless
    ``vanish_above`` is set, in which case x_j = 0 for j > vanish_above.
    """

    def __init__(self, values: Sequence[Any], vanish_above: int | None = None):
        if not values:
            raise UsageError("graded sequence needs x_0")
        if values[0] != 1:
            raise UsageError("graded sequence must have x_0 = 1")
        self.values = tuple(values)
        self.vanish_above = vanish_above
        self.zero = values[0] * 0
        self.one = values[0]

    def __call__(self, j: int) -> Any:
        if j < 0:
            return self.zero
        if self.vanish_above is not None and j > self.vanish_above:
            return self.zero
        if j >= len(self.values):
            raise TruncationError(f"x_{j} not available (have up to x_{len(self.values) - 1})")
        return self.values[j]

    @classmethod
    def from_context(cls, ctx: UniversalContext, n_max: int) -> GradedSequence:
        return cls(ctx.with_order(max(n_max, ctx.rank + 1)).h)

    @classmethod
    def formal(cls, n_max: int, vanish_above: int | None = None) -> GradedSequence:
        """Free generators h1..h_{n_max} (optionally zero above ``vanish_above``)."""
        top = n_max if vanish_above is None else min(n_max, vanish_above)
        syms = h_symbols(top)
        return cls([Polynomial.one(syms)] + Polynomial.variables(syms), vanish_above)


def h_symbols(m: int) -> SymbolTable:
    return SymbolTable(tuple(f"h{k}" for k in range(1, m + 1)))


def h_index(name: str) -> int:
    m = re.fullmatch(r"h(\d+)", name)
    if not m or int(m.group(1)) < 1:
        raise UsageError(f"expected symbols h1, h2, ...; got {name!r}")
    return int(m.group(1))


def jacobi_trudi(lam: Sequence[int], x: GradedSequence, r: int) -> Any:
    """Delta_lambda(x) = det(x_{lambda_{r-j} + j - i}), 0 <= i, j <= r."""
    lp = pad(lam, r + 1)
    rows = [[x(lp[r - j] + j - i) for j in range(r + 1)] for i in range(r + 1)]
    return laplace_det(rows, x.zero, x.one)


def e_from_h(ctx: UniversalContext, N: int) -> dict[str, Polynomial]:
    """Substitution table taking h-polynomials to e-polynomials: h_k -> its value in the e's."""
    c = ctx.with_order(N)
    return {f"h{k}": c.h[k] for k in range(1, N + 1)}


def h_from_e(ctx: UniversalContext, N: int | None = None) -> dict[str, Polynomial]:
    """Substitution table taking e-polynomials to h-polynomials: e_k -> Delta_{(1^k)}(h).

    Covers k = 1..min(N, r+1).
    """
    top = ctx.rank + 1 if N is None else min(N, ctx.rank + 1)
    x = GradedSequence.formal(top)
    return {f"e{k}": jacobi_trudi((1,) * k, x, k - 1) for k in range(1, top + 1)}


def to_h_variables(p: Polynomial, ctx: UniversalContext) -> Polynomial:
    """Rewrite a polynomial in e1..e_{r+1} in terms of h1..h_{r+1}."""
    images = h_from_e(ctx)
    table = h_symbols(ctx.rank + 1)
    return evaluate(p, images, Polynomial.one(table))


def to_e_variables(p: Polynomial, ctx: UniversalContext) -> Polynomial:
    top = max((h_index(n) for n in p.symbols), default=0)
    images = e_from_h(ctx, max(top, 1))
    return evaluate(p, images, ctx.one())


@dataclass(frozen=True, eq=False)
class SchurExpansion:
    """Finite sum of Schur / Schubert classes (or Wronskians) indexed by partitions."""

    terms: Mapping[Partition, Fraction]

    def __post_init__(self):
        clean: dict[Partition, Fraction] = {}
        for lam, c in self.terms.items():
            lam = partition(lam)
            c = as_rational(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        clean = {lam: c for lam, c in clean.items() if c}
        ordered = dict(sorted(clean.items(), key=lambda kv: _revlex_key(kv[0])))
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def single(cls, lam: Sequence[int], coeff: Any = 1) -> SchurExpansion:
        return cls({partition(lam): coeff})

    @classmethod
    def zero(cls) -> SchurExpansion:
        return cls({})

    def __getitem__(self, lam) -> Fraction:
        return self.terms.get(partition(lam), Fraction(0))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, SchurExpansion):
            return NotImplemented
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return SchurExpansion(out)

    def __neg__(self):
        return SchurExpansion({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Any) -> SchurExpansion:
        c = as_rational(c)
        return SchurExpansion({lam: v * c for lam, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, SchurExpansion):
            return self.terms == other.terms
        if isinstance(other, Mapping):
            return self == SchurExpansion(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"SchurExpansion({self.render()})"

    def render(self, name: str = "s") -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam, c in self.terms.items():
            label = f"{name}[{format_partition(lam)}]"
            mag = abs(c)
            body = label if mag == 1 else f"{rational_str(mag)}*{label}"
            parts.append((c < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> dict:
        return {
            "terms": [
                {"partition": list(lam), "coeff": rational_str(c)} for lam, c in self.terms.items()
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SchurExpansion:
        try:
            terms: dict[Partition, Fraction] = {}
            for t in obj["terms"]:
                lam = partition(t["partition"])
                if lam in terms:
                    raise UsageError(f"repeated partition {lam}")
                terms[lam] = as_rational(str(t["coeff"]))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed expansion JSON: {exc}") from exc
        return cls(terms)


def _revlex_key(lam: Partition):
    # larger weight last; within a weight, lexicographically larger first
    return (sum(lam), tuple(-p for p in lam) + (1,))


def pieri_action(
    start: SchurExpansion, k: int, rank: int | None, col_bound: int | None = None
) -> SchurExpansion:
    """Multiply every class of ``start`` by the special class of index k."""
    if k == 0:
        return start
    out: dict[Partition, Fraction] = {}
    for lam, c in start.items():
        for mu in pieri_successors(lam, k, rank, col_bound):
            out[mu] = out.get(mu, Fraction(0)) + c
    return SchurExpansion(out)


def _act_by_polynomial(
    p: Polynomial, start: SchurExpansion, rank: int | None, col_bound: int | None
) -> SchurExpansion:
    """Apply a polynomial in the special classes h1, h2, ... to ``start`` via iterated Pieri."""
    idx = [h_index(n) for n in p.symbols]
    total = SchurExpansion.zero()
    for exps, c in p.terms.items():
        cur = start
        for k, e in zip(idx, exps):
            for _ in range(e):
                cur = pieri_action(cur, k, rank, col_bound)
                if cur.is_zero():
                    break
        total = total + cur.scale(c)
    return total


def schur_expand(p: Polynomial, rank: int | None, col_bound: int | None = None) -> SchurExpansion:
    """Write a polynomial in h1, h2, ... as a combination of Delta_lambda(h).

    Partitions are limited to rank+1 rows (those with more vanish in E_r) and,
    with ``col_bound``, to at most that many columns.
    """
    return _act_by_polynomial(p, SchurExpansion.single(()), rank, col_bound)


def sigma1_power(k: int, rank: int | None, col_bound: int | None = None) -> SchurExpansion:
    """sigma_1^k in the Schur basis; the coefficients count standard tableaux."""
    if k < 0:
        raise UsageError("k must be nonnegative")
    cur = SchurExpansion.single(())
    for _ in range(k):
        cur = pieri_action(cur, 1, rank, col_bound)
    return cur


@dataclass(frozen=True)
class GrassmannRing:
    """H*(G(r, P^d)): classes indexed by partitions in the (r+1) x (d-r) box."""

    r: int
    d: int

    def __post_init__(self):
        if self.r < 0 or self.d <= self.r:
            raise UsageError("need 0 <= r < d")

    @property
    def rows(self) -> int:
        return self.r + 1

    @property
    def cols(self) -> int:
        return self.d - self.r

    @property
    def dimension(self) -> int:
        return self.rows * self.cols

    @property
    def top(self) -> Partition:
        return (self.cols,) * self.rows

    def basis(self) -> list[Partition]:
        out = []
        for n in range(self.dimension + 1):
            out.extend(partitions_in_box(n, self.rows, self.cols))
        return out

    def contains(self, lam: Sequence[int]) -> bool:
        lam = partition(lam)
        return len(lam) <= self.rows and (not lam or lam[0] <= self.cols)

    def complement(self, lam: Sequence[int]) -> Partition:
        """Box complement read backwards: the Poincare dual index."""
        lp = pad(lam, self.rows)
        return partition(self.cols - lp[self.rows - 1 - i] for i in range(self.rows))

    def check(self, a: SchurExpansion):
        for lam in a.terms:
            if not self.contains(lam):
                raise UsageError(f"class {lam} lies outside the {self.rows}x{self.cols} box")

    def special(self, k: int) -> SchurExpansion:
        if k < 0 or k > self.cols:
            return SchurExpansion.zero()
        return SchurExpansion.single((k,) if k else ())

    def elementary(self, i: int) -> SchurExpansion:
        """epsilon_i = sigma_{(1^i)}, zero past r+1."""
        if i < 0 or i > self.rows:
            return SchurExpansion.zero()
        return SchurExpansion.single((1,) * i)


@lru_cache(maxsize=4096)
def _giambelli_polynomial(lam: Partition, r: int, cols: int) -> Polynomial:
    """sigma_lambda as a polynomial in sigma_1..sigma_cols (sigma_j = 0 for j > cols)."""
    x = GradedSequence.formal(cols, vanish_above=cols)
    return jacobi_trudi(lam, x, r)


@lru_cache(maxsize=16384)
def _basis_product(G: GrassmannRing, lam: Partition, mu: Partition) -> SchurExpansion:
    p = _giambelli_polynomial(mu, G.r, G.cols)
    return _act_by_polynomial(p, SchurExpansion.single(lam), G.r, G.cols)


def grassmann_product(G: GrassmannRing, a: SchurExpansion, b: SchurExpansion) -> SchurExpansion:
    """Cup product in H*(G): Giambelli on the classes of ``b``, then Pieri on ``a``."""
    G.check(a)
    G.check(b)
    total = SchurExpansion.zero()
    for mu, cb in b.items():
        for lam, ca in a.items():
            total = total + _basis_product(G, lam, mu).scale(ca * cb)
    return total


def cap_action(G: GrassmannRing, k: int, omega: SchurExpansion) -> SchurExpansion:
    """sigma_k cap Omega, in the basis of Schubert cycles Omega_lambda."""
    G.check(omega)
    if k < 0:
        raise UsageError("k must be nonnegative")
    return pieri_action(omega, k, G.r, G.cols)


def grassmann_degree(r: int, d: int) -> int:
    """Coefficient of the top class in sigma_1^dim G(r, P^d)."""
    G = GrassmannRing(r, d)
    c = sigma1_power(G.dimension, r, G.cols)[G.top]
    assert c.denominator == 1
    return int(c)


class SchubertClass:
    """An element of H*(G, Q), usable as a series coefficient."""

    __slots__ = ("G", "value")

    def __init__(self, G: GrassmannRing, value: SchurExpansion | Mapping | Any = None):
        self.G = G
        if value is None:
            value = SchurExpansion.zero()
        elif isinstance(value, (int, Fraction)):
            value = SchurExpansion.single((), value)
        elif not isinstance(value, SchurExpansion):
            value = SchurExpansion(value)
        G.check(value)
        self.value = value

    @property
    def ring(self):
        return self.G

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def _lift(self, other):
        if isinstance(other, SchubertClass):
            if other.G != self.G:
                raise UsageError("classes on different Grassmannians")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SchubertClass(self.G, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return SchubertClass(self.G, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return SchubertClass(self.G, -self.value)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return SchubertClass(self.G, self.value - o.value)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SchubertClass(self.G, self.value.scale(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return SchubertClass(self.G, grassmann_product(self.G, self.value, o.value))

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, SchubertClass) else other
        if o is None:
            return NotImplemented
        return self.G == o.G and self.value == o.value

    def __hash__(self):
        return hash((self.G, self.value))

    def __repr__(self):
        return f"SchubertClass({self.value.render('sigma')})"


def schubert_images(G: GrassmannRing) -> dict[str, SchubertClass]:
    """e_i -> epsilon_i = sigma_{(1^i)}, the map E_r -> H*(G(r, P^d))."""
    return {f"e{i}": SchubertClass(G, G.elementary(i)) for i in range(1, G.rows + 1)}


def map_to_cohomology(p: Polynomial, G: GrassmannRing) -> SchubertClass:
    return evaluate(p, schubert_images(G), SchubertClass(G, 1))

