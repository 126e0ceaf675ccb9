"""Generalized Wronskians and their Schubert-calculus identities.

For a tuple f = (f_0..f_r) and a partition lambda,

    W_lambda(f) = det( D^{j + lambda_{r-j}} f_i )_{0 <= i, j <= r}

computed as a series determinant. On the universal fundamental system u the
ratio W_lambda(u) / W_0(u) is the Schur determinant Delta_lambda(h)
(Giambelli), multiplication by h_k follows Pieri, and D^k W_0 expands with
standard-tableaux coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Callable, Sequence

from .combinat import Partition, addable_cells, pad, partition, pieri_successors
from .exactmath import Polynomial, TruncationError, UsageError, laplace_det
from .odecore import UniversalContext, universal_solutions
from .schurring import (
    GradedSequence,
    GrassmannRing,
    SchubertClass,
    SchurExpansion,
    cap_action,
    jacobi_trudi,
    map_to_cohomology,
    schur_expand,
    to_h_variables,
)
from .series import DividedSeries, series_derive, series_map

__all__ = [
    "WronskiExpansion",
    "GiambelliCertificate",
    "DerivativeExpansion",
    "check_tuple",
    "generalized_wronskian",
    "universal_wronskian",
    "giambelli_certificate",
    "pieri_wronskian_check",
    "derivative_expansion",
    "young_cover_derivative_check",
    "expansion_coefficient",
    "cohomology_system",
    "wr_module_check",
]

WronskiExpansion = SchurExpansion

# Hook applied to the left side of an identity before comparison; the CLI uses
# it to inject a deliberate fault and confirm the checker notices.
Perturb = Callable[[DividedSeries], DividedSeries]


def _identity(s: DividedSeries) -> DividedSeries:
    return s


def check_tuple(f: Sequence[DividedSeries]) -> list[DividedSeries]:
    f = list(f)
    if not f:
        raise UsageError("empty series tuple")
    orders = {s.order for s in f}
    rings = {s.ring for s in f}
    if len(orders) != 1:
        raise UsageError(f"series in a tuple must share one order, got {sorted(orders)}")
    if len(rings) != 1:
        raise UsageError("series in a tuple must share one coefficient ring")
    return f


def derivative_orders(lam: Sequence[int], r: int) -> list[int]:
    """Column j of W_lambda uses the derivative of order j + lambda_{r-j}."""
    lp = pad(lam, r + 1)
    return [j + lp[r - j] for j in range(r + 1)]


def generalized_wronskian(f: Sequence[DividedSeries], lam: Sequence[int]) -> DividedSeries:
    """W_lambda(f); the certified order is order(f) - (r + lambda_0)."""
    f = check_tuple(f)
    r = len(f) - 1
    orders = derivative_orders(lam, r)
    out_order = f[0].order - max(orders)
    if out_order < 0:
        raise TruncationError(
            f"series of order {f[0].order} cannot carry derivatives of order {max(orders)}"
        )
    rows = [
        [series_derive(fi, k).truncate(out_order) for k in orders]
        for fi in f
    ]
    zero = f[0].zero_like(out_order)
    one = DividedSeries.constant(f[0].coeffs[0] * 0 + 1, out_order)
    return laplace_det(rows, zero, one)


def universal_wronskian(ctx: UniversalContext, lam: Sequence[int], N: int) -> DividedSeries:
    """W_lambda(u) to order N (u is built long enough automatically)."""
    lam = partition(lam)
    r = ctx.rank
    if len(lam) > r + 1:
        raise UsageError(f"partition {lam} has more than {r + 1} parts")
    need = N + r + (lam[0] if lam else 0)
    u = universal_solutions(ctx.with_order(need), need)
    return generalized_wronskian(u, lam)


def schur_ratio(ctx: UniversalContext, lam: Sequence[int]) -> Polynomial:
    """Delta_lambda(h) as a polynomial in the e's."""
    lam = partition(lam)
    r = ctx.rank
    top = (lam[0] if lam else 0) + r
    return jacobi_trudi(lam, GradedSequence.from_context(ctx, top), r)


@dataclass(frozen=True)
class GiambelliCertificate:
    partition: Partition
    ratio: Polynomial
    verified: bool
    order: int


def giambelli_certificate(
    ctx: UniversalContext, lam: Sequence[int], N: int = 10, perturb: Perturb = _identity
) -> GiambelliCertificate:
    """Check W_lambda(u) = Delta_lambda(h) W_0(u) coefficient-wise through order N."""
    if N < ctx.rank + 1:
        raise UsageError(f"verification order must be at least {ctx.rank + 1}")
    lam = partition(lam)
    ratio = schur_ratio(ctx, lam)
    w_lam = universal_wronskian(ctx, lam, N)
    w_0 = universal_wronskian(ctx, (), N)
    return GiambelliCertificate(lam, ratio, perturb(w_lam).agrees_with(w_0 * ratio, N), N)


def pieri_wronskian_check(
    ctx: UniversalContext, lam: Sequence[int], k: int, N: int = 8, perturb: Perturb = _identity
) -> bool:
    """Check h_k W_lambda(u) = sum over Pieri successors mu of W_mu(u), through order N."""
    lam = partition(lam)
    if k == 0:
        return True
    c = ctx.with_order(k)
    lhs = perturb(universal_wronskian(ctx, lam, N) * c.h[k])
    rhs = None
    for mu in pieri_successors(lam, k, ctx.rank):
        w = universal_wronskian(ctx, mu, N)
        rhs = w if rhs is None else rhs + w
    if rhs is None:
        rhs = lhs.zero_like(N)
    return lhs.agrees_with(rhs, N)


@dataclass(frozen=True)
class DerivativeExpansion:
    k: int
    expansion: SchurExpansion
    constant: Polynomial
    verified: bool
    order: int


def derivative_expansion(
    ctx: UniversalContext, k: int, N: int | None = None, perturb: Perturb = _identity
) -> DerivativeExpansion:
    """Expand D^k W_0(u) = sum_lambda c_lambda W_lambda(u) and check it as a series.

    D^k W_0 = q_k W_0 with q_k the constant term of D^k W_0; rewriting q_k in
    h-variables and expanding in the Schur basis gives the coefficients. The
    identity is then verified to order N - k - r.
    """
    r = ctx.rank
    N = k + r + 1 if N is None else N
    if N < k + r + 1:
        raise UsageError(f"order must be at least k + r + 1 = {k + r + 1}")
    check_order = N - k - r
    w_0 = universal_wronskian(ctx, (), check_order + k)
    q = w_0.coeffs[k]
    expansion = schur_expand(to_h_variables(q, ctx), r)
    lhs = perturb(series_derive(w_0, k))
    rhs = None
    for lam, c in expansion.items():
        term = universal_wronskian(ctx, lam, check_order) * c
        rhs = term if rhs is None else rhs + term
    if rhs is None:
        rhs = lhs.zero_like()
    return DerivativeExpansion(k, expansion, q, lhs.agrees_with(rhs, check_order), check_order)


def young_cover_derivative_check(f: Sequence[DividedSeries], lam: Sequence[int], N: int) -> bool:
    """Check D W_lambda(f) = sum of W_mu(f) over mu covering lambda, through order N.

    Covers with more than r+1 rows are excluded; terms whose derivative
    orders collide vanish on their own.
    """
    f = check_tuple(f)
    r = len(f) - 1
    lam = partition(lam)
    lhs = series_derive(generalized_wronskian(f, lam), 1)
    rhs = None
    for mu in addable_cells(lam, max_rows=r + 1):
        w = generalized_wronskian(f, mu)
        rhs = w if rhs is None else rhs + w
    return lhs.agrees_with(rhs, N)


def multinomial(n: int, parts: Sequence[int]) -> int:
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def expansion_coefficient(ctx: UniversalContext, lam: Sequence[int], n: int) -> Polynomial:
    """Coefficient of t^n/n! in W_lambda(u) as sum over mu of multinomial(n; mu) Delta_{lambda+mu}(h).

    mu runs over all (r+1)-tuples of nonnegative integers with sum n, one per
    column; lambda + mu need not be a partition, the determinant is taken as is.
    """
    r = ctx.rank
    lp = pad(lam, r + 1)
    top = (lp[0] if lp else 0) + n + r
    x = GradedSequence.from_context(ctx, top)
    total = ctx.zero()
    for mu in product(range(n + 1), repeat=r + 1):
        if sum(mu) != n:
            continue
        shifted = [lp[i] + mu[i] for i in range(r + 1)]
        rows = [[x(shifted[r - j] + j - i) for j in range(r + 1)] for i in range(r + 1)]
        d = laplace_det(rows, x.zero, x.one)
        if not d.is_zero():
            total = total + d * multinomial(n, mu)
    return total



def cohomology_system(G: GrassmannRing, N: int) -> list[DividedSeries]:
    """The universal system pushed to H*(G) by e_i -> sigma_{(1^i)}, to order N."""
    ctx = UniversalContext(G.r, max(N, G.r + 1))
    return [series_map(u, lambda c: map_to_cohomology(c, G)) for u in universal_solutions(ctx, N)]


def wr_module_check(G: GrassmannRing, lam: Sequence[int], k: int, N: int = 8) -> bool:
    """Check that Omega_lambda -> W_lambda(v) intertwines sigma_k-cap with multiplication by sigma_k.

    v is :func:`cohomology_system`; both sides are series over H*(G) compared
    through order N - d, the smallest certified order among the W_mu.
    """
    lam = partition(lam)
    if not G.contains(lam):
        raise UsageError(f"{lam} is not in the {G.rows} x {G.cols} box")
    check = N - G.d
    if check < 0:
        raise UsageError(f"order must be at least d = {G.d}")
    v = cohomology_system(G, N)
    lhs = generalized_wronskian(v, lam) * SchubertClass(G, G.special(k))
    rhs = lhs.zero_like()
    for mu, c in cap_action(G, k, SchurExpansion.single(lam)).items():
        rhs = rhs + generalized_wronskian(v, mu) * c
    return lhs.agrees_with(rhs, check)
