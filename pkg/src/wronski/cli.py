"""Command-line front end.

    wronski hseq --rank 1 --order 2
    wronski degree --rank 1 --dim 3
    wronski check giambelli --rank 2 --max-weight 4 --order 8

Exit status: 0 success, 2 usage error, 3 a ``check`` found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from .combinat import (
    format_partition,
    hook_lengths,
    parse_partition,
    partition,
    partitions_in_box,
    pieri_successors,
    syt_count_hook,
    syt_enumerate,
)
from .exactmath import (
    Polynomial,
    SymbolTable,
    TruncationError,
    UsageError,
    as_rational,
    dumps,
    poly_substitute,
    rational_str,
)
from .odecore import (
    UniversalContext,
    apply_universal_operator,
    cauchy_solve,
    h_sequence,
    solve_nonhomogeneous,
    specialize_system,
    symbolic_inits,
    universal_exp,
    universal_solutions,
)
from .schurring import (
    GrassmannRing,
    SchurExpansion,
    h_index,
    grassmann_degree,
    grassmann_product,
    h_symbols,
    schur_expand,
    sigma1_power,
    to_h_variables,
)
from .series import DividedSeries, series_map_coeffs
from .wronskian import (
    derivative_expansion,
    giambelli_certificate,
    pieri_wronskian_check,
    universal_wronskian,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

MAX_RANK = 8
MAX_ORDER = 64


# rendering ------------------------------------------------------------------


def render(value: Any, fmt: str = "text") -> str:
    """Deterministic text or compact JSON for any serializable value."""
    if fmt == "json":
        return dumps(to_json(value))
    if fmt != "text":
        raise UsageError(f"unknown format {fmt!r}")
    if isinstance(value, (Polynomial, DividedSeries)):
        return value.render()
    if isinstance(value, SchurExpansion):
        return value.render()
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, tuple):
        return format_partition(value) or "()"
    if isinstance(value, list):
        return "\n".join(render(v) for v in value)
    return str(value)


def to_json(value: Any) -> Any:
    if isinstance(value, (Polynomial, DividedSeries, SchurExpansion)):
        return value.to_json()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, tuple):
        return list(partition(value))
    if isinstance(value, list):
        return [to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: to_json(v) for k, v in value.items()}
    if isinstance(value, str):
        return value
    raise UsageError(f"no JSON form for {type(value).__name__}")


def from_json(obj: Any) -> Any:
    """Inverse of :func:`to_json` for rationals, polynomials, series and expansions."""
    if isinstance(obj, str):
        return as_rational(obj)
    if isinstance(obj, dict):
        if "symbols" in obj:
            return Polynomial.from_json(obj)
        if "order" in obj and "coeffs" in obj:
            return DividedSeries.from_json(obj)
        if "terms" in obj:
            return SchurExpansion.from_json(obj)
    raise UsageError(f"unrecognized JSON value {obj!r}")


# argument helpers -----------------------------------------------------------


def _rationals(text: str) -> list[Fraction]:
    return [as_rational(x) for x in text.split(",") if x.strip()]


def _bounded(lo: int, hi: int | None, what: str) -> Callable[[str], int]:
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{what} must be an integer") from None
        if v < lo or (hi is not None and v > hi):
            raise argparse.ArgumentTypeError(
                f"{what} must lie in [{lo}, {hi if hi is not None else 'inf'}]"
            )
        return v

    return conv


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_poly(text: str) -> Polynomial:
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)))
    return Polynomial.parse(text, SymbolTable(tuple(names)))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


class _UsageExit(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wronski", description="Universal linear ODEs and Wronski-Schubert calculus.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="command")
    sub.required = True

    def common(sp, order=True):
        sp.add_argument("--format", choices=["text", "json"], default="text")
        if order:
            sp.add_argument("--order", type=_bounded(0, MAX_ORDER, "--order"), default=10)

    rank = _bounded(0, MAX_RANK, "--rank")

    sp = sub.add_parser("hseq", help="complete homogeneous h_0..h_N in the e's")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--spec", type=_rationals, help="rational values a1,...,a_{r+1} for the e's")
    common(sp)

    sp = sub.add_parser("solve", help="fundamental system or Cauchy solution")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--spec", type=_rationals)
    sp.add_argument("--inits", help="x0,...,xr or 'symbolic'")
    common(sp)

    sp = sub.add_parser("solve-nonhom", help="non-homogeneous Cauchy problem")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--rhs", required=True, help="JSON file holding a DividedSeries")
    sp.add_argument("--spec", type=_rationals)
    sp.add_argument("--inits", type=_rationals)
    common(sp)

    sp = sub.add_parser("wronskian", help="generalized Wronskian of the universal system")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--partition", type=_partition_arg, default=())
    sp.add_argument("--spec", type=_rationals)
    common(sp)

    sp = sub.add_parser("schur", help="Schur expansion of an h-polynomial or of sigma_1^k")
    sp.add_argument("--rank", type=rank, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="polynomial in h1,h2,... or in e1..e_{r+1}")
    g.add_argument("--k", type=_bounded(0, 40, "--k"))
    sp.add_argument("--dim", type=_bounded(1, None, "--dim"), help="truncate to G(r, P^d)")
    common(sp, order=False)

    sp = sub.add_parser("pieri", help="Pieri successors of a partition")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--partition", type=_partition_arg, required=True)
    sp.add_argument("--k", type=_bounded(0, 64, "--k"), required=True)
    sp.add_argument("--dim", type=_bounded(1, None, "--dim"))
    common(sp, order=False)

    sp = sub.add_parser("syt", help="standard Young tableaux count")
    sp.add_argument("--partition", type=_partition_arg, required=True)
    common(sp, order=False)

    sp = sub.add_parser("degree", help="Pluecker degree of G(r, P^d)")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--dim", type=_bounded(1, None, "--dim"), required=True)
    common(sp, order=False)

    sp = sub.add_parser("product", help="product of two Schubert classes in H*(G(r, P^d))")
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--dim", type=_bounded(1, None, "--dim"), required=True)
    sp.add_argument("--a", type=_partition_arg, required=True)
    sp.add_argument("--b", type=_partition_arg, required=True)
    common(sp, order=False)

    sp = sub.add_parser("check", help="verify an identity family exhaustively")
    sp.add_argument("family", choices=["giambelli", "pieri", "derivative", "euler", "nonhom"])
    sp.add_argument("--rank", type=rank, required=True)
    sp.add_argument("--max-weight", type=_bounded(0, 12, "--max-weight"), default=4)
    sp.add_argument("--cases", type=_bounded(1, 1000, "--cases"), default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--inject-fault",
        action="store_true",
        help="perturb the first identity checked (mutation test of the checker)",
    )
    common(sp)
    return p


# commands -------------------------------------------------------------------


def _spec_check(args, r):
    if args.spec is not None and len(args.spec) != r + 1:
        raise UsageError(f"--spec needs {r + 1} values for rank {r}")


def _specialize(values: list, spec) -> list:
    """Substitute e_i -> spec[i-1] into polynomials in the e's."""
    if spec is None:
        return values
    images = {f"e{i}": a for i, a in enumerate(spec, start=1)}
    return [poly_substitute(v, images).constant_term() if isinstance(v, Polynomial) else v for v in values]


def cmd_hseq(args):
    r = args.rank
    _spec_check(args, r)
    ctx = UniversalContext(r, max(args.order, r + 1))
    hs = list(h_sequence(ctx, args.order).values)
    hs = _specialize(hs, args.spec)
    if args.format == "json":
        return {"rank": r, "order": args.order, "h": hs}
    return "\n".join(f"h{n} = {render(v)}" for n, v in enumerate(hs))


def cmd_solve(args):
    r = args.rank
    _spec_check(args, r)
    N = max(args.order, r)
    ctx = UniversalContext(r, max(N, r + 1))
    if args.inits is None:
        if args.spec is not None:
            sols = specialize_system(ctx, args.spec, N)
        else:
            sols = universal_solutions(ctx, N)
        if args.format == "json":
            return {"solutions": sols}
        return "\n".join(f"u{j}:\n{s.render()}" for j, s in enumerate(sols))
    if args.inits.strip() == "symbolic":
        inits = symbolic_inits(ctx)
    else:
        inits = _rationals(args.inits)
    sol = cauchy_solve(ctx, inits, N, spec=args.spec)
    if args.format == "json":
        return {"lambdas": list(sol.lambdas), "series": sol.series}
    lines = [f"Lambda{j} = {render(l)}" for j, l in enumerate(sol.lambdas)]
    return "\n".join(lines + [sol.series.render()])


def cmd_solve_nonhom(args):
    r = args.rank
    _spec_check(args, r)
    try:
        with open(args.rhs, encoding="utf-8") as fh:
            rhs = DividedSeries.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --rhs: {exc}") from exc
    ctx = UniversalContext(r, max(args.order, r + 1))
    sol = solve_nonhomogeneous(ctx, rhs, args.inits, args.order, spec=args.spec)
    if args.format == "json":
        return {"series": sol}
    return sol.render()


def cmd_wronskian(args):
    r = args.rank
    _spec_check(args, r)
    lam = args.partition
    ctx = UniversalContext(r, max(args.order, r + 1))
    cert = giambelli_certificate(ctx, lam, max(args.order, r + 1))
    w = universal_wronskian(ctx, lam, args.order)
    ratio = cert.ratio
    if args.spec is not None:
        images = {f"e{i}": a for i, a in enumerate(args.spec, start=1)}
        w = series_map_coeffs(w, images)
        ratio = _specialize([ratio], args.spec)[0]
    if args.format == "json":
        return {"partition": lam, "ratio": ratio, "verified": cert.verified, "series": w}
    return "\n".join(
        [f"ratio = {render(ratio)}", f"verified = {render(cert.verified)}", w.render()]
    )


def cmd_schur(args):
    r = args.rank
    col = None
    if args.dim is not None:
        col = GrassmannRing(r, args.dim).cols
    if args.k is not None:
        exp = sigma1_power(args.k, r, col)
    else:
        p = _parse_poly(args.poly)
        if any(n.startswith("e") for n in p.symbols):
            ctx = UniversalContext(r, r + 1)
            p = to_h_variables(p.embed(ctx.symbols), ctx)
        else:
            top = max((h_index(n) for n in p.symbols), default=1)
            p = p.embed(h_symbols(top))
        exp = schur_expand(p, r, col)
    if args.format == "json":
        return exp
    return exp.render()


def cmd_pieri(args):
    r = args.rank
    col = GrassmannRing(r, args.dim).cols if args.dim is not None else None
    mus = pieri_successors(args.partition, args.k, r, col)
    if args.format == "json":
        return {"successors": [list(m) for m in mus]}
    return "\n".join(format_partition(m) or "()" for m in mus)


def cmd_syt(args):
    lam = args.partition
    hook = syt_count_hook(lam)
    out = {"partition": lam, "hook_lengths": hook_lengths(lam), "hook": hook}
    if sum(lam) <= 12:
        out["enumerated"] = syt_enumerate(lam)
    if args.format == "json":
        return out
    lines = [
        f"partition = {format_partition(lam) or '()'}",
        f"hook lengths = {','.join(str(x) for x in out['hook_lengths'])}",
        f"hook formula = {hook}",
    ]
    if "enumerated" in out:
        lines.append(f"enumerated = {out['enumerated']}")
    return "\n".join(lines)


def cmd_degree(args):
    d = grassmann_degree(args.rank, args.dim)
    if args.format == "json":
        return {"rank": args.rank, "dim": args.dim, "degree": d}
    return str(d)


def cmd_product(args):
    G = GrassmannRing(args.rank, args.dim)
    prod = grassmann_product(G, SchurExpansion.single(args.a), SchurExpansion.single(args.b))
    if args.format == "json":
        return prod
    return prod.render("sigma")


# check suites ---------------------------------------------------------------


def _fault_once(enabled: bool):
    """A perturbation applied to the left side of the first identity only."""
    state = {"armed": enabled}

    def perturb(series: DividedSeries) -> DividedSeries:
        if not state["armed"]:
            return series
        state["armed"] = False
        first = series.coeffs[0] + 1
        return DividedSeries((first,) + series.coeffs[1:])

    return perturb


def _check_giambelli(args, perturb):
    ctx = UniversalContext(args.rank, max(args.order, args.rank + 1))
    for n in range(args.max_weight + 1):
        for lam in partitions_in_box(n, args.rank + 1):
            cert = giambelli_certificate(ctx, lam, max(args.order, args.rank + 1), perturb=perturb)
            yield f"giambelli {format_partition(lam) or '()'}", cert.verified


def _check_pieri(args, perturb):
    ctx = UniversalContext(args.rank, max(args.order, args.rank + 1))
    for n in range(args.max_weight + 1):
        for lam in partitions_in_box(n, args.rank + 1):
            for k in range(1, args.max_weight + 1):
                ok = pieri_wronskian_check(ctx, lam, k, args.order, perturb=perturb)
                yield f"pieri {format_partition(lam) or '()'} k={k}", ok


def _check_derivative(args, perturb):
    r = args.rank
    ctx = UniversalContext(r, max(args.order, r + 1))
    for k in range(args.max_weight + 1):
        d = derivative_expansion(ctx, k, max(args.order, k + r + 1), perturb=perturb)
        hooks = all(c == syt_count_hook(lam) for lam, c in d.expansion.items())
        yield f"derivative k={k}", d.verified and hooks


def _check_euler(args, perturb):
    r = args.rank
    N = max(args.order, r + 1)
    ctx = UniversalContext(r, N)
    lhs, rhs = universal_exp(ctx, N)
    yield "euler universal-root", perturb(lhs).agrees_with(rhs, N)
    spec = [0] * r + [(-1) ** (r + 1)]
    vs = specialize_system(ctx, spec, N)
    expected_ok = True
    for j, v in enumerate(vs):
        v = perturb(v)
        for n in range(N + 1):
            q, rem = divmod(n - j, r + 1)
            want = (-1) ** q if n >= j and rem == 0 else 0
            expected_ok &= v[n] == want
    yield "euler u^(r+1)+u=0 pattern", expected_ok


def _check_nonhom(args, perturb):
    r = args.rank
    N = max(args.order, r + 1)
    ctx = UniversalContext(r, N)
    rng = random.Random(args.seed)
    for case in range(args.cases):
        rhs = DividedSeries(tuple(Fraction(rng.randint(-5, 5)) for _ in range(N - r)))
        b = [Fraction(rng.randint(-5, 5)) for _ in range(r + 1)]
        sol = perturb(solve_nonhomogeneous(ctx, rhs, b, N))
        resid = apply_universal_operator(ctx, sol)
        ok = resid.agrees_with(_embed_series(rhs, resid), N - r - 1)
        ok = ok and all(sol[k] == b[k] for k in range(r + 1))
        yield f"nonhom case {case}", ok


def _embed_series(f: DividedSeries, like: DividedSeries) -> DividedSeries:
    one = like.coeffs[0] * 0 + 1
    return DividedSeries(tuple(one * c for c in f.coeffs))


CHECKS = {
    "giambelli": _check_giambelli,
    "pieri": _check_pieri,
    "derivative": _check_derivative,
    "euler": _check_euler,
    "nonhom": _check_nonhom,
}


def cmd_check(args):
    perturb = _fault_once(args.inject_fault)
    results = list(CHECKS[args.family](args, perturb))
    failed = [name for name, ok in results if not ok]
    if args.format == "json":
        payload = {
            "family": args.family,
            "cases": [{"name": name, "ok": ok} for name, ok in results],
            "failed": len(failed),
        }
    else:
        lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in results]
        lines.append(f"{len(results) - len(failed)}/{len(results)} passed")
        payload = "\n".join(lines)
    return payload, (EXIT_COUNTEREXAMPLE if failed else EXIT_OK)


COMMANDS = {
    "hseq": cmd_hseq,
    "solve": cmd_solve,
    "solve-nonhom": cmd_solve_nonhom,
    "wronskian": cmd_wronskian,
    "schur": cmd_schur,
    "pieri": cmd_pieri,
    "syt": cmd_syt,
    "degree": cmd_degree,
    "product": cmd_product,
    "check": cmd_check,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Parse ``argv``, run the command, write the result; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, err
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
    except _UsageExit as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, TruncationError) as exc:
        print(f"wronski {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    if args.format == "json":
        status = "ok" if code == EXIT_OK else "verification-failed"
        envelope = {"status": status, "command": args.command, "payload": to_json(result)}
        out.write(dumps(envelope) + "\n")
    else:
        out.write(render(result) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
