import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import as_q, polynomials, rationals
from wronski.exactmath import Polynomial, SymbolTable, TruncationError, UsageError, poly_substitute
from wronski.odecore import (
    DEPENDENT,
    FUNDAMENTAL,
    INDEPENDENT,
    AlgebraElement,
    UniversalContext,
    apply_universal_operator,
    cauchy_solve,
    fundamental_check,
    h_sequence,
    initial_condition_matrix,
    kernel_check,
    lambda_coefficients,
    solve_nonhomogeneous,
    specialize_system,
    symbolic_inits,
    universal_exp,
    universal_exp_check,
    universal_solutions,
)
from wronski.series import DividedSeries, series_derive, series_map_coeffs


def ctx_vars(r, N=10):
    ctx = UniversalContext(r, N)
    return ctx, ctx.elementary


def test_context_invariants():
    with pytest.raises(UsageError):
        UniversalContext(-1)
    with pytest.raises(UsageError):
        UniversalContext(2, 2)


def test_h_sequence_examples():
    ctx, (e1, e2) = ctx_vars(1)
    h = h_sequence(ctx, 2)
    assert list(h.values) == [1, e1, e1**2 - e2]
    ctx, (e1, e2, e3) = ctx_vars(2)
    assert h_sequence(ctx, 3)[3] == e1**3 - 2 * e1 * e2 + e3
    for r in range(5):
        assert h_sequence(UniversalContext(r, r + 1), 0)[0] == 1


@pytest.mark.parametrize("r", range(5))
def test_h_generating_function(r):
    # (sum h_n t^n) * (1 - e1 t + ... ) = 1 as ordinary power series
    N = 12
    ctx = UniversalContext(r, N)
    h = h_sequence(ctx, N)
    char = [ctx.one()] + [(-1) ** i * ctx.e(i) for i in range(1, r + 2)]
    for n in range(N + 1):
        c = sum((char[i] * h[n - i] for i in range(min(n, r + 1) + 1)), ctx.zero())
        assert c == (1 if n == 0 else 0)


@pytest.mark.parametrize("r", range(4))
def test_universal_solutions_shape(r):
    N = 9
    ctx = UniversalContext(r, N)
    u = universal_solutions(ctx, N)
    for j, uj in enumerate(u):
        assert all(uj[n] == 0 for n in range(j))
        assert uj[j] == 1
        assert series_derive(uj, j).agrees_with(u[0], N - j)
        assert kernel_check(ctx, uj)


def test_fundamental_system_r2():
    ctx = UniversalContext(2, 10)
    for uj in universal_solutions(ctx, 10):
        assert apply_universal_operator(ctx, uj).is_zero()
        assert apply_universal_operator(ctx, uj).order == 10 - 3


def test_cos_sin_pattern():
    v0, v1 = specialize_system(UniversalContext(1, 6), [0, 1], 6)
    assert v0 == DividedSeries(as_q([1, 0, -1, 0, 1, 0, -1]))
    assert v1 == DividedSeries(as_q([0, 1, 0, -1, 0, 1, 0]))


@pytest.mark.parametrize("r", range(4))
def test_kernel_check_constant_series(r):
    ctx = UniversalContext(r, r + 3)
    one = DividedSeries(tuple([ctx.one()] + [ctx.zero()] * (r + 2)))
    rep = kernel_check(ctx, one)
    assert not rep.holds
    assert rep.index == r
    assert rep.residual == (-1) ** (r + 1) * ctx.e(r + 1)


def test_kernel_check_too_short():
    ctx = UniversalContext(2, 5)
    with pytest.raises(TruncationError):
        kernel_check(ctx, DividedSeries(as_q([1, 2, 3])))


@settings(deadline=None, max_examples=25)
@given(st.data())
def test_kernel_check_linear_combinations(data):
    ctx = UniversalContext(1, 8)
    lams = [data.draw(polynomials(ctx.symbols, 3, 2)) for _ in range(2)]
    u = universal_solutions(ctx, 8)
    g = u[0] * lams[0] + u[1] * lams[1]
    assert kernel_check(ctx, g)


def test_cauchy_symbolic():
    ctx, (e1, e2) = ctx_vars(1, 6)
    y0, y1 = symbolic_inits(ctx)
    sol = cauchy_solve(ctx, [y0, y1], 6)
    e1y = e1.embed(y0.symbols)
    assert sol.lambdas[0] == y0
    assert sol.lambdas[1] == y1 - e1y * y0
    assert sol.series[0] == y0 and sol.series[1] == y1


def test_cauchy_worked_example():
    ctx = UniversalContext(1, 8)
    s = cauchy_solve(ctx, [1, 1], 8, spec=[3, 2])
    assert list(s.lambdas) == [1, -2]
    assert list(s.series.coeffs) == [1] * 9
    s = cauchy_solve(ctx, [1, 2], 8, spec=[3, 2])
    assert list(s.lambdas) == [1, -1]
    assert list(s.series.coeffs) == [2**n for n in range(9)]


@pytest.mark.parametrize("r", range(4))
def test_triangular_system_inverse(r):
    # x = H Lambda with H[j][i] = h_{j-i}; the e-matrix E[j][i] = (-1)^{j-i} e_{j-i} inverts H
    ctx = UniversalContext(r, r + 1)
    h = lambda n: ctx.h_at(n)
    e = lambda n: (-1) ** n * ctx.e(n) if n >= 0 else ctx.zero()
    for i in range(r + 1):
        for k in range(r + 1):
            prod = sum((h(i - j) * e(j - k) for j in range(r + 1)), ctx.zero())
            assert prod == (1 if i == k else 0)
    y = symbolic_inits(ctx)
    el = [p.embed(y[0].symbols) for p in ctx.elementary]
    lam = lambda_coefficients(el, y, y[0] * 0 + 1)
    for j in range(r + 1):
        back = sum((h(j - i).embed(y[0].symbols) * lam[i] for i in range(j + 1)), y[0] * 0)
        assert back == y[j]


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 3), st.data())
def test_cauchy_is_kernel_with_jet(r, data):
    ctx = UniversalContext(r, 9)
    inits = data.draw(st.lists(rationals, min_size=r + 1, max_size=r + 1))
    g = cauchy_solve(ctx, inits, 9).series
    assert kernel_check(ctx, g)
    assert list(g.coeffs[: r + 1]) == inits


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 3), st.data())
def test_specialization_commutes_with_cauchy(r, data):
    ctx = UniversalContext(r, 8)
    inits = data.draw(st.lists(rationals, min_size=r + 1, max_size=r + 1))
    spec = data.draw(st.lists(rationals, min_size=r + 1, max_size=r + 1))
    images = {f"e{i}": a for i, a in enumerate(spec, start=1)}
    universal = cauchy_solve(ctx, inits, 8)
    special = cauchy_solve(ctx, inits, 8, spec=spec)
    assert series_map_coeffs(universal.series, images) == special.series
    assert [poly_substitute(x, images) for x in universal.lambdas] == list(special.lambdas)


def test_nonhom_trivial():
    ctx = UniversalContext(1, 8)
    sol = solve_nonhomogeneous(ctx, DividedSeries(as_q([0] * 7)), [0, 0], 8)
    assert sol.is_zero()


def test_nonhom_unit_rhs():
    ctx, (e1, e2) = ctx_vars(1, 8)
    rhs = DividedSeries(as_q([1] + [0] * 6))
    p = solve_nonhomogeneous(ctx, rhs, None, 8)
    assert p[0] == 0 and p[1] == 0
    assert p[2] == 1 and p[3] == e1 and p[4] == e1**2 - e2
    for n in range(7):
        assert p[n + 2] == ctx.h_at(n)


def test_nonhom_rhs_u0():
    ctx = UniversalContext(1, 10)
    u0 = universal_solutions(ctx, 10)[0]
    sol = solve_nonhomogeneous(ctx, u0, [0, 0], 10)
    assert apply_universal_operator(ctx, sol).agrees_with(u0, 8)


def test_nonhom_rhs_too_short():
    ctx = UniversalContext(1, 10)
    with pytest.raises(TruncationError):
        solve_nonhomogeneous(ctx, DividedSeries(as_q([1, 2])), None, 10)


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 3), st.data())
def test_nonhom_homogeneous_difference(r, data):
    N = 9
    ctx = UniversalContext(r, N)
    b = data.draw(st.lists(rationals, min_size=r + 1, max_size=r + 1))
    f = DividedSeries(tuple(data.draw(st.lists(rationals, min_size=N - r, max_size=N - r))))
    g = DividedSeries(tuple(data.draw(st.lists(rationals, min_size=N - r, max_size=N - r))))
    sf = solve_nonhomogeneous(ctx, f, b, N)
    assert apply_universal_operator(ctx, sf).agrees_with(f * ctx.one(), N - r - 1)
    # solutions with equal data are equal; linear in the right-hand side
    assert sf == solve_nonhomogeneous(ctx, f, b, N)
    sg = solve_nonhomogeneous(ctx, g, None, N)
    sfg = solve_nonhomogeneous(ctx, f + g, b, N)
    assert (sfg - sf - sg).is_zero()


def test_specialize_worked_example():
    v0, v1 = specialize_system(UniversalContext(1, 5), [3, 2], 5)
    assert list(v0.coeffs) == [1, 3, 7, 15, 31, 63]
    assert series_derive(v1, 1).agrees_with(v0, 4)


def test_specialize_identity():
    ctx = UniversalContext(2, 6)
    ids = {n: Polynomial.var(ctx.symbols, n) for n in ctx.symbols.names}
    assert specialize_system(ctx, ids, 6) == universal_solutions(ctx, 6)


@pytest.mark.parametrize("r", range(5))
def test_euler_ode_pattern(r):
    N = 12
    spec = [0] * r + [(-1) ** (r + 1)]
    vs = specialize_system(UniversalContext(r, N), spec, N)
    for j, v in enumerate(vs):
        for n in range(N + 1):
            q, rem = divmod(n - j, r + 1)
            assert v[n] == ((-1) ** q if n >= j and rem == 0 else 0)


def test_fundamental_universal():
    for r in range(4):
        verdict, det = fundamental_check(universal_solutions(UniversalContext(r, 6), 6))
        assert verdict == FUNDAMENTAL and det == 1


def test_fundamental_exponentials():
    A = SymbolTable.of("a1", "a2")
    a1, a2 = Polynomial.variables(A)
    f = DividedSeries(tuple(a1**n for n in range(4)))
    g = DividedSeries(tuple(a2**n for n in range(4)))
    verdict, det = fundamental_check([f, g])
    assert verdict == INDEPENDENT
    assert det == a2 - a1
    verdict, det = fundamental_check([f, f])
    assert verdict == DEPENDENT and det == 0


def test_fundamental_over_q():
    v = specialize_system(UniversalContext(1, 4), [3, 2], 4)
    assert fundamental_check(v)[0] == FUNDAMENTAL
    m = initial_condition_matrix([DividedSeries(as_q([1, 1])), DividedSeries(as_q([1, 2]))])
    assert fundamental_check(m) == (FUNDAMENTAL, 1)


def test_algebra_examples():
    ctx, (e1, e2) = ctx_vars(1)
    a = AlgebraElement.alpha(ctx)
    assert a * a == AlgebraElement(ctx, [-e2, e1])
    assert a * a * a == AlgebraElement(ctx, [-e1 * e2, e1**2 - e2])
    assert a * 1 == a
    assert str(a * a * a) == "(e1^2 - e2)*alpha - e1*e2"


def test_algebra_context_mismatch():
    a = AlgebraElement.alpha(UniversalContext(1, 3))
    b = AlgebraElement.alpha(UniversalContext(2, 3))
    with pytest.raises(UsageError):
        a * b


def test_alpha_powers_r1():
    ctx = UniversalContext(1, 10)
    e2 = ctx.e(2)
    a = AlgebraElement.alpha(ctx)
    p = a * a
    for n in range(2, 9):
        assert p == AlgebraElement(ctx, [-e2 * ctx.h_at(n - 2), ctx.h_at(n - 1)])
        p = p * a


def test_universal_exp():
    for r in (0, 1, 2, 3):
        assert universal_exp_check(UniversalContext(r, 8), 8)
    ctx = UniversalContext(1, 8)
    lhs, _ = universal_exp(ctx, 8)
    a = AlgebraElement.alpha(ctx)
    u0, u1 = universal_solutions(ctx, 8)
    for n in range(9):
        assert lhs[n] == u0[n] + (a - ctx.e(1)) * u1[n]
    ctx0 = UniversalContext(0, 5)
    lhs0, _ = universal_exp(ctx0, 5)
    assert [c.coeffs[0] for c in lhs0.coeffs] == list(universal_solutions(ctx0, 5)[0].coeffs)


def test_exponentials_in_universal_basis():
    # over Q[a1, a2] with e1 -> a1 + a2, e2 -> a1 a2: exp(a1 t) = v0 - a2 v1
    A = SymbolTable.of("a1", "a2")
    a1, a2 = Polynomial.variables(A)
    v0, v1 = specialize_system(UniversalContext(1, 8), {"e1": a1 + a2, "e2": a1 * a2}, 8, A)
    assert v0 - v1 * a2 == DividedSeries(tuple(a1**n for n in range(9)))
    assert v0 - v1 * a1 == DividedSeries(tuple(a2**n for n in range(9)))
