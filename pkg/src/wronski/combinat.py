"""Partitions, hook lengths, standard Young tableaux and Pieri successors."""

from __future__ import annotations

from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .exactmath import UsageError

__all__ = [
    "Partition",
    "partition",
    "parse_partition",
    "format_partition",
    "pad",
    "conjugate",
    "partitions_in_box",
    "hook_lengths",
    "syt_count_hook",
    "syt_enumerate",
    "addable_cells",
    "pieri_successors",
]

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Validate and canonicalize: weakly decreasing, nonnegative, trailing zeros stripped."""
    parts = tuple(int(p) for p in parts)
    for a, b in zip(parts, parts[1:]):
        if b > a:
            raise UsageError(f"not weakly decreasing: {parts}")
    if parts and parts[-1] < 0:
        raise UsageError(f"negative part in {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def parse_partition(text: str) -> Partition:
    """Read ``"2,1"`` (trailing zeros allowed; empty string is the empty partition)."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return partition(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}") from exc


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in partition(lam))


def pad(lam: Sequence[int], length: int) -> Partition:
    """Pad with zeros to exactly ``length`` parts."""
    lam = partition(lam)
    if len(lam) > length:
        raise UsageError(f"partition {lam} has more than {length} parts")
    return lam + (0,) * (length - len(lam))


def conjugate(lam: Sequence[int]) -> Partition:
    lam = partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def partitions_in_box(n: int, max_rows: int | None = None, max_cols: int | None = None) -> list[Partition]:
    """All partitions of ``n`` fitting in the box, in reverse-lexicographic order."""
    if n < 0:
        raise UsageError("weight must be nonnegative")

    def gen(rest: int, cap: int, rows: int | None) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        if rows == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first, None if rows is None else rows - 1):
                yield (first,) + tail

    cap = n if max_cols is None else max_cols
    return list(gen(n, cap, max_rows))


def hook_lengths(lam: Sequence[int]) -> list[int]:
    """Hook length arm + leg + 1 of every cell, row by row."""
    lam = partition(lam)
    conj = conjugate(lam)
    return [
        (lam[i] - j - 1) + (conj[j] - i - 1) + 1
        for i in range(len(lam))
        for j in range(lam[i])
    ]


def syt_count_hook(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux by the hook length formula."""
    lam = partition(lam)
    n = sum(lam)
    q, rem = divmod(factorial(n), prod(hook_lengths(lam)))
    if rem:
        raise ArithmeticError(f"hook formula not integral for {lam}")
    return q


def removable_cells(lam: Sequence[int]) -> list[int]:
    """Rows whose last cell can be removed, leaving a partition."""
    lam = partition(lam)
    return [i for i in range(len(lam)) if i == len(lam) - 1 or lam[i] > lam[i + 1]]


def addable_cells(lam: Sequence[int], max_rows: int | None = None) -> list[Partition]:
    """Partitions covering ``lam`` in Young's lattice (one more box)."""
    lam = partition(lam)
    out = []
    rows = len(lam) + 1 if max_rows is None else min(len(lam) + 1, max_rows)
    for i in range(rows):
        cur = lam[i] if i < len(lam) else 0
        above = lam[i - 1] if i > 0 else None
        if above is None or above > cur:
            new = list(lam) + [0] * (i + 1 - len(lam))
            new[i] += 1
            out.append(partition(new))
    return out


def syt_enumerate(lam: Sequence[int]) -> int:
    """Count standard fillings by walking every chain from the empty shape up to ``lam``.

    Deliberately unmemoized: it serves as a brute-force check on the hook formula.
    """
    lam = partition(lam)
    if sum(lam) > 12:
        raise UsageError("syt_enumerate is limited to weight 12")
    target = list(lam)
    shape = [0] * len(lam)

    def walk(placed: int) -> int:
        if placed == sum(target):
            return 1
        total = 0
        for i in range(len(shape)):
            if shape[i] < target[i] and (i == 0 or shape[i - 1] > shape[i]):
                shape[i] += 1
                total += walk(placed + 1)
                shape[i] -= 1
        return total

    return walk(0)


def pieri_successors(
    lam: Sequence[int],
    k: int,
    rank: int | None = None,
    col_bound: int | None = None,
) -> list[Partition]:
    """All mu with |mu| = |lam| + k and mu_0 >= lam_0 >= mu_1 >= lam_1 >= ... .

    ``rank`` bounds mu to r+1 parts (unbounded if None); ``col_bound`` caps
    mu_0. Output is canonical (trailing zeros stripped), reverse-lex order.
    """
    if k < 0:
        raise UsageError("k must be nonnegative")
    lam = partition(lam)
    rows = len(lam) + 1 if rank is None else rank + 1
    if len(lam) > rows:
        raise UsageError(f"partition {lam} has more than {rows} parts")
    lp = lam + (0,) * (rows - len(lam))
    out: list[Partition] = []

    def gen(i: int, rest: int, acc: list[int]):
        if i == rows:
            if rest == 0:
                out.append(partition(acc))
            return
        lo = lp[i]
        hi = lp[i] + rest if i == 0 else lp[i - 1]
        hi = min(hi, lp[i] + rest)
        if i == 0 and col_bound is not None:
            hi = min(hi, col_bound)
        for m in range(hi, lo - 1, -1):
            acc.append(m)
            gen(i + 1, rest - (m - lo), acc)
            acc.pop()

    gen(0, k, [])
    return out
