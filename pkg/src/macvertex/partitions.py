"""Partitions, N-tuples of partitions, and the combinatorics on them.

Partitions are stored as tuples of weakly decreasing positive integers (no
trailing zeros); the empty partition is ().  N-tuples are tuples of N
partitions.  Coordinates are 1-based: (i, j) is row i, column j.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterator, List, Sequence, Set, Tuple

from .scalar import Field, Scalar

Partition = Tuple[int, ...]
NTuple = Tuple[Partition, ...]

__all__ = [
    "Partition", "NTuple", "mk_partition", "mk_ntuple", "conjugate", "arm_leg",
    "add_remove_sets", "star_compare", "truncate_B", "flaming_factors",
    "partitions", "ntuples", "dominance_leq", "z_factor", "n_weight",
    "horizontal_strips", "cells", "c_lambda", "cprime_lambda", "b_weight",
    "profile", "contains",
]


def mk_partition(seq: Sequence[int]) -> Partition:
    parts = tuple(x for x in seq if x != 0)
    if any(not isinstance(x, int) or x < 0 for x in seq):
        raise ValueError(f"partition parts must be nonnegative integers: {seq}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {seq}")
    return parts


def mk_ntuple(seqs: Sequence[Sequence[int]]) -> NTuple:
    return tuple(mk_partition(s) for s in seqs)


def size(lam: Partition) -> int:
    return sum(lam)


def tuple_size(lam: NTuple) -> int:
    return sum(sum(c) for c in lam)


def profile(lam: NTuple) -> Tuple[int, ...]:
    return tuple(sum(c) for c in lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def cells(lam: Partition) -> Iterator[Tuple[int, int]]:
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield (i, j)


def contains(lam: Partition, mu: Partition) -> bool:
    """lam >= mu as Young diagrams."""
    return all(part(lam, i) >= part(mu, i) for i in range(1, len(mu) + 1))


def part(lam: Partition, i: int) -> int:
    """lam_i with the convention lam_i = 0 for i > length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def arm_leg(lam: Partition, i: int, j: int) -> Tuple[int, int]:
    """(a_lam(i,j), l_lam(i,j)) = (lam_i - j, lam'_j - i); may be negative."""
    lam_c = conjugate(lam)
    return part(lam, i) - j, part(lam_c, j) - i


def add_remove_sets(lam: Partition) -> Tuple[Set[Tuple[int, int]], Set[Tuple[int, int]]]:
    """(A(lam), R(lam)): coordinates where a box can be added / removed."""
    add = set()
    for i in range(1, len(lam) + 2):
        row = part(lam, i)
        if part(lam, i - 1) > row or i == 1:
            add.add((i, row + 1))
    remove = {(i, part(lam, i)) for i in range(1, len(lam) + 1) if part(lam, i) > part(lam, i + 1)}
    return add, remove


def star_compare(lam: NTuple, mu: NTuple) -> str:
    """Partial order used to triangulate the zero mode: one of
    'greater', 'less', 'equal', 'incomparable'.

    lam *> mu iff the total sizes agree, the tail sums sum_{i>=k}|lam^(i)|
    dominate mu's for every k, and the size profiles differ.  Tuples with
    equal profiles are 'equal' when identical, else 'incomparable'.
    """
    if len(lam) != len(mu):
        raise ValueError("N-tuples of different lengths")
    if tuple_size(lam) != tuple_size(mu):
        return "incomparable"
    pl, pm = profile(lam), profile(mu)
    if pl == pm:
        return "equal" if lam == mu else "incomparable"
    ge = le = True
    tl = tm = 0
    for k in range(len(lam) - 1, -1, -1):
        tl += pl[k]
        tm += pm[k]
        if tl < tm:
            ge = False
        if tl > tm:
            le = False
    if ge:
        return "greater"
    if le:
        return "less"
    return "incomparable"


def truncate_B(lam: Partition, r: int, s: int) -> Partition:
    """Remove the first s rows and first r columns: (max(lam_{s+i} - r, 0))_i."""
    if r < 0 or s < 0:
        raise ValueError("row/column counts must be nonnegative")
    return tuple(x - r for x in lam[s:] if x - r > 0)


def n_weight(lam: Partition) -> int:
    """n(lam) = sum_i (i-1) lam_i."""
    return sum((i - 1) * x for i, x in enumerate(lam, start=1))


def z_factor(lam: Partition) -> int:
    """z_lam = prod_i i^{m_i} m_i!."""
    out = 1
    mult: dict = {}
    for x in lam:
        mult[x] = mult.get(x, 0) + 1
    for i, m in mult.items():
        out *= i ** m * factorial(m)
    return out


def flaming_factors(field: Field, lam: Partition) -> Tuple[Scalar, Scalar]:
    """(f_lam, g_lam): the monomial weights attached to a partition.

    f_lam = (-1)^|lam| q^{n(lam')+|lam|/2} t^{-n(lam)-|lam|/2} and
    g_lam = q^{n(lam')} t^{-n(lam)}; both are Laurent monomials in p, s.
    """
    k = size(lam)
    np_, n_ = n_weight(conjugate(lam)), n_weight(lam)
    sign = field.one if k % 2 == 0 else -field.one
    f = sign * field.p.pow(2 * np_ + k) * field.s.pow(-2 * n_ - k)
    g = field.q.pow(np_) * field.t.pow(-n_)
    return f, g


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> Tuple[Partition, ...]:
    """All partitions of n (parts bounded by max_part), decreasing lex order."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    cap = n if max_part is None else min(max_part, n)
    out: List[Partition] = []
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def ntuples(n: int, N: int) -> Tuple[NTuple, ...]:
    """All N-tuples of partitions of total size n, in a fixed canonical order."""
    if N == 1:
        return tuple((lam,) for lam in partitions(n))
    out: List[NTuple] = []
    for head in range(n, -1, -1):
        for lam in partitions(head):
            for rest in ntuples(n - head, N - 1):
                out.append((lam,) + rest)
    return tuple(out)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance (defined for equal sizes)."""
    if sum(mu) != sum(lam):
        return False
    pm = pl = 0
    for k in range(max(len(mu), len(lam))):
        pm += part(mu, k + 1)
        pl += part(lam, k + 1)
        if pm > pl:
            return False
    return True


def horizontal_strips(mu: Partition, r: int) -> Tuple[Partition, ...]:
    """All lam >= mu with |lam| = |mu| + r and lam/mu a horizontal r-strip."""
    rows = len(mu) + 1
    out: List[Partition] = []

    def rec(i: int, prev: int, remaining: int, acc: List[int]):
        if i > rows:
            if remaining == 0:
                out.append(mk_partition(acc))
            return
        lo = part(mu, i)
        hi = min(prev, part(mu, i - 1) if i > 1 else lo + remaining, lo + remaining)
        if i == 1:
            hi = lo + remaining
        for val in range(lo, hi + 1):
            rec(i + 1, val, remaining - (val - lo), acc + [val])

    rec(1, 10 ** 9, r, [])
    return tuple(out)


def b_weight(field: Field, lam: Partition, cell: Tuple[int, int]) -> Scalar:
    """b_lam(s) = (1-q^a t^(l+1))/(1-q^(a+1) t^l) inside lam, 1 outside."""
    i, j = cell
    if not (1 <= i <= len(lam) and 1 <= j <= part(lam, i)):
        return field.one
    a, l = arm_leg(lam, i, j)
    q, t = field.q, field.t
    return (field.one - q.pow(a) * t.pow(l + 1)) / (field.one - q.pow(a + 1) * t.pow(l))


def c_lambda(field: Field, lam: Partition) -> Scalar:
    """c_lam = prod_{cells} (1 - q^arm t^(leg+1))."""
    q, t = field.q, field.t
    out = field.one
    for i, j in cells(lam):
        a, l = arm_leg(lam, i, j)
        out = out * (field.one - q.pow(a) * t.pow(l + 1))
    return out


def cprime_lambda(field: Field, lam: Partition) -> Scalar:
    """c'_lam = prod_{cells} (1 - q^(arm+1) t^leg)."""
    q, t = field.q, field.t
    out = field.one
    for i, j in cells(lam):
        a, l = arm_leg(lam, i, j)
        out = out * (field.one - q.pow(a + 1) * t.pow(l))
    return out
