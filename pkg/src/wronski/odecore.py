"""The universal constant-coefficient linear ODE.

    u^(r+1) - e1 u^(r) + e2 u^(r-1) - ... + (-1)^(r+1) e_{r+1} u = 0

over E_r = Q[e1, ..., e_{r+1}], solved in divided-power series. The complete
homogeneous sequence h_n (reciprocal of the characteristic polynomial) gives
the fundamental system u_j = sum_{n>=j} h_{n-j} t^n/n!, from which Cauchy
problems, the non-homogeneous problem and every specialization follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping, Sequence

from .exactmath import (
    PolyMatrix,
    Polynomial,
    SymbolTable,
    TruncationError,
    UsageError,
    as_rational,
    matrix_det,
)
from .series import (
    DifferentialOperator,
    DividedSeries,
    series_apply_operator,
    series_map_coeffs,
)

__all__ = [
    "UniversalContext",
    "HSequence",
    "KernelReport",
    "CauchySolution",
    "AlgebraElement",
    "elementary_symbols",
    "h_sequence",
    "universal_solutions",
    "universal_operator",
    "kernel_check",
    "lambda_coefficients",
    "cauchy_solve",
    "solve_nonhomogeneous",
    "specialize_system",
    "initial_condition_matrix",
    "fundamental_check",
    "algebra_mul",
    "universal_exp_check",
    "universal_exp",
    "symbolic_inits",
    "apply_universal_operator",
]


def elementary_symbols(r: int) -> SymbolTable:
    return SymbolTable(tuple(f"e{i}" for i in range(1, r + 2)))


def _complete_homogeneous(elementary: Sequence[Any], one: Any, n_max: int) -> list:
    """h_0..h_{n_max} from h_{n+1} = sum_i (-1)^(i+1) e_i h_{n+1-i}."""
    h = [one]
    for n in range(1, n_max + 1):
        acc = one * 0
        for i, e in enumerate(elementary, start=1):
            if i > n:
                break
            term = e * h[n - i]
            acc = acc + term if i % 2 else acc - term
        h.append(acc)
    return h


@lru_cache(maxsize=64)
def _universal_h(r: int, n_max: int) -> tuple[Polynomial, ...]:
    syms = elementary_symbols(r)
    return tuple(_complete_homogeneous(Polynomial.variables(syms), Polynomial.one(syms), n_max))


@dataclass(frozen=True)
class UniversalContext:
    """Rank ``r`` (ODE order r+1) and a default truncation order.

    The h-sequence is computed once, at construction, up to ``order``.
    """

    rank: int
    order: int = 10
    symbols: SymbolTable = field(init=False, compare=False, repr=False)
    h: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise UsageError("rank must be a nonnegative integer")
        if self.order < self.rank + 1:
            raise UsageError(f"order must be at least rank+1 = {self.rank + 1}")
        object.__setattr__(self, "symbols", elementary_symbols(self.rank))
        object.__setattr__(self, "h", _universal_h(self.rank, self.order))

    @property
    def r(self) -> int:
        return self.rank

    def e(self, i: int) -> Polynomial:
        """e_i, with e_0 = 1 and e_i = 0 outside 0..r+1."""
        if i == 0:
            return Polynomial.one(self.symbols)
        if 1 <= i <= self.rank + 1:
            return Polynomial.var(self.symbols, f"e{i}")
        return Polynomial.zero(self.symbols)

    @property
    def elementary(self) -> list[Polynomial]:
        return [self.e(i) for i in range(1, self.rank + 2)]

    def h_at(self, n: int) -> Polynomial:
        if n < 0:
            return Polynomial.zero(self.symbols)
        if n > self.order:
            raise TruncationError(f"h_{n} requested from a context of order {self.order}")
        return self.h[n]

    def with_order(self, order: int) -> UniversalContext:
        if order <= self.order:
            return self
        return UniversalContext(self.rank, order)

    def one(self) -> Polynomial:
        return Polynomial.one(self.symbols)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.symbols)


@dataclass(frozen=True)
class HSequence:
    context: UniversalContext
    values: tuple

    def __getitem__(self, n: int) -> Polynomial:
        if n < 0:
            return self.context.zero()
        return self.values[n]

    def __len__(self):
        return len(self.values)


def h_sequence(ctx: UniversalContext, N: int | None = None) -> HSequence:
    N = ctx.order if N is None else N
    if N < 0:
        raise UsageError("order must be nonnegative")
    c = ctx.with_order(N)
    return HSequence(c, c.h[: N + 1])


def universal_operator(ctx: UniversalContext) -> DifferentialOperator:
    """U_{r+1}(D) with polynomial coefficients."""
    return DifferentialOperator.from_elementary(ctx.elementary, ctx.one())


def universal_solutions(ctx: UniversalContext, N: int | None = None) -> list[DividedSeries]:
    """The universal fundamental system u_0..u_r, each of order ``N``."""
    N = ctx.order if N is None else N
    r = ctx.rank
    if N < r:
        raise UsageError(f"order {N} is below rank {r}")
    c = ctx.with_order(N)
    zero = c.zero()
    return [
        DividedSeries(tuple(c.h[n - j] if n >= j else zero for n in range(N + 1)))
        for j in range(r + 1)
    ]


# ring unification -----------------------------------------------------------


def _unify(values: Sequence[Any], base: SymbolTable | None = None) -> tuple[list, Any]:
    """Bring values into one ring; returns (converted values, one).

    Rationals stay rational unless a Polynomial is present; polynomial tables
    are merged in order of appearance, ``base`` first.
    """
    tables = []
    if base is not None:
        tables.append(base)
    for v in values:
        if isinstance(v, Polynomial):
            tables.append(v.symbols)
        elif not isinstance(v, (int, Fraction)) or isinstance(v, bool):
            raise UsageError(f"unsupported coefficient {v!r}")
    if not tables:
        return [Fraction(v) for v in values], Fraction(1)
    table = tables[0]
    for t in tables[1:]:
        table = table.extend(t.names)
    out = []
    for v in values:
        if isinstance(v, Polynomial):
            out.append(v.embed(table))
        else:
            out.append(Polynomial.constant(table, v))
    return out, Polynomial.one(table)


def _coerce_value(v: Any) -> Any:
    if isinstance(v, str):
        return as_rational(v)
    return v


def _elementary_values(ctx: UniversalContext, spec: Sequence[Any] | None) -> list:
    if spec is None:
        return list(ctx.elementary)
    spec = [_coerce_value(a) for a in spec]
    if len(spec) != ctx.rank + 1:
        raise UsageError(f"need {ctx.rank + 1} specialization values, got {len(spec)}")
    return spec


# kernel membership ----------------------------------------------------------


@dataclass(frozen=True)
class KernelReport:
    holds: bool
    index: int | None = None
    residual: Any = None

    def __bool__(self):
        return self.holds


def kernel_check(
    ctx: UniversalContext, f: DividedSeries, spec: Sequence[Any] | None = None
) -> KernelReport:
    """Test x_{n+1} - e1 x_n + ... + (-1)^(r+1) e_{r+1} x_{n-r} = 0 for r <= n < order.

    With ``spec`` the e's are replaced by the given values (the specialized
    equation P(D)v = 0).
    """
    r = ctx.rank
    if f.order < r + 1:
        raise TruncationError(f"kernel check needs order >= {r + 1}, got {f.order}")
    el = _elementary_values(ctx, spec)
    base = ctx.symbols if spec is None else None
    vals, one = _unify(list(f.coeffs) + el, base)
    x, el = vals[: f.order + 1], vals[f.order + 1:]
    for n in range(r, f.order):
        acc = x[n + 1]
        for i, e in enumerate(el, start=1):
            term = e * x[n + 1 - i]
            acc = acc - term if i % 2 else acc + term
        if acc != 0:
            return KernelReport(False, n, acc)
    return KernelReport(True)


# Cauchy problems ------------------------------------------------------------


def lambda_coefficients(elementary: Sequence[Any], inits: Sequence[Any], one: Any) -> list:
    """Lambda_j(x) = x_j - e1 x_{j-1} + ... + (-1)^j e_j x_0, for j = 0..r."""
    out = []
    for j in range(len(inits)):
        acc = inits[j] * one
        for i in range(1, j + 1):
            term = elementary[i - 1] * inits[j - i]
            acc = acc - term if i % 2 else acc + term
        out.append(acc)
    return out


@dataclass(frozen=True)
class CauchySolution:
    series: DividedSeries
    lambdas: tuple


def _combine(lambdas: Sequence[Any], h: Sequence[Any], N: int, zero: Any) -> DividedSeries:
    """Coefficients of sum_j Lambda_j u_j: a_n = sum_j Lambda_j h_{n-j}."""
    coeffs = []
    for n in range(N + 1):
        acc = zero
        for j, lam in enumerate(lambdas):
            if n - j >= 0 and lam != 0:
                acc = acc + lam * h[n - j]
        coeffs.append(acc)
    return DividedSeries(tuple(coeffs))


def cauchy_solve(
    ctx: UniversalContext,
    inits: Sequence[Any],
    N: int | None = None,
    spec: Sequence[Any] | None = None,
) -> CauchySolution:
    """Unique kernel element with D^i g(0) = inits[i], 0 <= i <= r.

    ``inits`` may be rationals, Polynomials over the e's, or Polynomials over
    a larger table (e.g. indeterminates y0..yr). With ``spec`` the equation is
    specialized first, e_i -> spec[i-1].
    """
    N = ctx.order if N is None else N
    r = ctx.rank
    if N < r:
        raise UsageError(f"order {N} is below rank {r}")
    inits = [_coerce_value(x) for x in inits]
    if len(inits) != r + 1:
        raise UsageError(f"need exactly {r + 1} initial conditions, got {len(inits)}")
    el = _elementary_values(ctx, spec)
    base = ctx.symbols if spec is None else None
    vals, one = _unify(inits + el, base)
    x, el = vals[: r + 1], vals[r + 1:]
    h = _complete_homogeneous(el, one, N)
    lambdas = lambda_coefficients(el, x, one)
    return CauchySolution(_combine(lambdas, h, N, one * 0), tuple(lambdas))


def symbolic_inits(ctx: UniversalContext, prefix: str = "y") -> list[Polynomial]:
    """Indeterminates y_0..y_r over E_r[y_0..y_r]."""
    names = [f"{prefix}{i}" for i in range(ctx.rank + 1)]
    table = ctx.symbols.extend(names)
    return [Polynomial.var(table, n) for n in names]


def solve_nonhomogeneous(
    ctx: UniversalContext,
    rhs: DividedSeries,
    inits: Sequence[Any] | None = None,
    N: int | None = None,
    spec: Sequence[Any] | None = None,
) -> DividedSeries:
    """Solve U_{r+1}(D) y = rhs with D^k y(0) = inits[k].

    The particular part has p_0 = .. = p_r = 0 and
    p_{r+1+n} = a_n + e1 p_{r+n} - e2 p_{r+n-1} + ... , a direct unrolling of
    the coefficient identity; the homogeneous part is the Cauchy solution.
    """
    N = ctx.order if N is None else N
    r = ctx.rank
    if N < r:
        raise UsageError(f"order {N} is below rank {r}")
    need = N - (r + 1)
    if rhs.order < need:
        raise TruncationError(f"right-hand side of order {rhs.order} is too short for order {N}")
    inits = [0] * (r + 1) if inits is None else [_coerce_value(b) for b in inits]
    if len(inits) != r + 1:
        raise UsageError(f"need exactly {r + 1} initial conditions")
    el = _elementary_values(ctx, spec)
    base = ctx.symbols if spec is None else None
    a = list(rhs.coeffs[: max(need, -1) + 1])
    vals, one = _unify(inits + el + a, base)
    b, el, a = vals[: r + 1], vals[r + 1: 2 * r + 2], vals[2 * r + 2:]
    zero = one * 0
    p = [zero] * (N + 1)
    for n in range(0, N - r):
        acc = a[n]
        for i, e in enumerate(el, start=1):
            term = e * p[r + 1 + n - i]
            acc = acc + term if i % 2 else acc - term
        p[r + 1 + n] = acc
    h = _complete_homogeneous(el, one, N)
    homogeneous = _combine(lambda_coefficients(el, b, one), h, N, zero)
    return DividedSeries(tuple(homogeneous.coeffs[n] + p[n] for n in range(N + 1)))


def specialize_system(
    ctx: UniversalContext,
    images: Sequence[Any] | Mapping[str, Any],
    N: int | None = None,
    target: SymbolTable | None = None,
) -> list[DividedSeries]:
    """Images v_0..v_r of the universal system under e_i -> images[i-1]."""
    if not isinstance(images, Mapping):
        images = list(images)
        if len(images) != ctx.rank + 1:
            raise UsageError(f"need {ctx.rank + 1} images, got {len(images)}")
        images = {f"e{i}": _coerce_value(v) for i, v in enumerate(images, start=1)}
    else:
        missing = [n for n in ctx.symbols if n not in images]
        if missing:
            raise UsageError(f"no image for {missing}")
    return [series_map_coeffs(u, images, target) for u in universal_solutions(ctx, N)]


# fundamental systems --------------------------------------------------------


def initial_condition_matrix(solutions: Sequence[DividedSeries]) -> PolyMatrix:
    """C[i][j] = j-th derivative at 0 of solution i."""
    m = len(solutions)
    if m == 0:
        raise UsageError("no solutions given")
    for s in solutions:
        if s.order < m - 1:
            raise TruncationError(f"solution of order {s.order} has no {m - 1}-jet")
    entries = [s.coeffs[j] for s in solutions for j in range(m)]
    entries, _ = _unify(entries)
    if not isinstance(entries[0], Polynomial):
        empty = SymbolTable(())
        entries = [Polynomial.constant(empty, v) for v in entries]
    return PolyMatrix(m, m, tuple(entries))


FUNDAMENTAL = "fundamental"
INDEPENDENT = "independent-not-fundamental"
DEPENDENT = "dependent"


def fundamental_check(solutions: Sequence[DividedSeries] | PolyMatrix) -> tuple[str, Polynomial]:
    """Classify solutions by det C: unit, nonzero non-unit, or zero.

    Over Q (empty symbol table) every nonzero determinant is a unit; over a
    polynomial ring only the nonzero constants are.
    """
    C = solutions if isinstance(solutions, PolyMatrix) else initial_condition_matrix(solutions)
    d = matrix_det(C)
    if d.is_zero():
        return DEPENDENT, d
    if d.is_constant():
        return FUNDAMENTAL, d
    return INDEPENDENT, d


# the universal root ---------------------------------------------------------


class AlgebraElement:
    """c_0 + c_1 a + ... + c_r a^r in E_r[a] = E_r[T]/(U_{r+1}(T))."""

    __slots__ = ("context", "coeffs")

    def __init__(self, context: UniversalContext, coeffs: Sequence[Any]):
        coeffs = list(coeffs)
        if len(coeffs) != context.rank + 1:
            raise UsageError(f"need {context.rank + 1} coefficients, got {len(coeffs)}")
        self.context = context
        self.coeffs = tuple(
            c if isinstance(c, Polynomial) else Polynomial.constant(context.symbols, c)
            for c in coeffs
        )
        for c in self.coeffs:
            if c.symbols != context.symbols:
                raise UsageError("coefficients must be polynomials in the e's")

    @property
    def ring(self):
        return ("E_r[alpha]", self.context.rank)

    @classmethod
    def alpha(cls, ctx: UniversalContext) -> AlgebraElement:
        if ctx.rank == 0:
            # T - e1 = 0 forces alpha = e1
            return cls(ctx, [ctx.e(1)])
        return cls(ctx, [0, 1] + [0] * (ctx.rank - 1))

    @classmethod
    def scalar(cls, ctx: UniversalContext, c: Any) -> AlgebraElement:
        return cls(ctx, [c] + [0] * ctx.rank)

    def _same(self, other: AlgebraElement):
        if other.context.rank != self.context.rank:
            raise UsageError("algebra elements from different contexts")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.context, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        if isinstance(other, (int, Fraction, Polynomial)):
            return self + AlgebraElement.scalar(self.context, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.context, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return algebra_mul(self, other)
        if isinstance(other, (int, Fraction, Polynomial)):
            return AlgebraElement(self.context, [c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.context.rank == other.context.rank and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Polynomial)):
            return self == AlgebraElement.scalar(self.context, other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            text = c.render()
            mono = "" if i == 0 else ("alpha" if i == 1 else f"alpha^{i}")
            if mono:
                if c == 1:
                    text = mono
                elif c == -1:
                    text = "-" + mono
                elif len(c.terms) == 1:
                    text = f"{text}*{mono}"
                else:
                    text = f"({text})*{mono}"
            parts.append(text)
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    __repr__ = __str__


def algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product reduced by a^{r+1} = e1 a^r - e2 a^{r-1} + ... + (-1)^r e_{r+1}."""
    x._same(y)
    ctx = x.context
    r = ctx.rank
    zero = ctx.zero()
    prod = [zero] * (2 * r + 1)
    for i, a in enumerate(x.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(y.coeffs):
            if not b.is_zero():
                prod[i + j] = prod[i + j] + a * b
    for m in range(2 * r, r, -1):
        c = prod[m]
        if c.is_zero():
            continue
        for i in range(1, r + 2):
            term = c * ctx.e(i)
            prod[m - i] = prod[m - i] + term if i % 2 else prod[m - i] - term
        prod[m] = zero
    return AlgebraElement(ctx, prod[: r + 1])


def universal_exp(ctx: UniversalContext, N: int | None = None) -> tuple[DividedSeries, DividedSeries]:
    """Both sides of exp(a t) = sum_j Lambda_j(a) u_j over E_r[a], to order N."""
    N = ctx.order if N is None else N
    alpha = AlgebraElement.alpha(ctx)
    one = AlgebraElement.scalar(ctx, 1)
    powers = [one]
    for _ in range(N):
        powers.append(powers[-1] * alpha)
    lhs = DividedSeries(tuple(powers))
    lambdas = lambda_coefficients(ctx.elementary, powers[: ctx.rank + 1], one)
    c = ctx.with_order(N)
    rhs = _combine(lambdas, c.h, N, one * 0)
    return lhs, rhs


def universal_exp_check(ctx: UniversalContext, N: int | None = None) -> bool:
    N = ctx.order if N is None else N
    lhs, rhs = universal_exp(ctx, N)
    return lhs.agrees_with(rhs, N)


def apply_universal_operator(ctx: UniversalContext, f: DividedSeries) -> DividedSeries:
    """U_{r+1}(D) f, embedding f's coefficients into the polynomial ring if needed."""
    vals, one = _unify(list(f.coeffs), ctx.symbols)
    el = [e.embed(one.symbols) for e in ctx.elementary]
    op = DifferentialOperator.from_elementary(el, one)
    return series_apply_operator(op, DividedSeries(tuple(vals)))

