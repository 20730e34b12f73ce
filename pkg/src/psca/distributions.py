"""Distribution vectors: feasibility, structural restrictions and chain filtering.

The distribution vector of a symbol ``w`` in an array records how often
``w`` sits in each column.  In a PSCA(v, t, lambda) every such vector has the
same power sums ``sum_j j**s d(j)`` (``1 <= s < t``) as the uniform vector,
which pins down the last ``t`` components once the first ``v - t`` are fixed.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, combinations
from typing import Iterator, Sequence

import numpy as np

from .core import InputError, PermArray

__all__ = [
    "DistributionVector",
    "FeasibleSet",
    "binomial_identity_holds",
    "compatible",
    "divisibility_check",
    "enumerate_feasible",
    "filter_chain",
    "is_feasible",
    "palindrome_check",
    "prime_class_check",
    "subset_profile",
]


@dataclass(frozen=True)
class DistributionVector:
    counts: tuple[int, ...]
    t: int
    lam: int

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        _check_params(self.v, self.t, self.lam)
        if any(c < 0 for c in self.counts):
            raise InputError(f"negative entry in {self.counts}")
        if sum(self.counts) != self.total:
            raise InputError(f"{self.counts} sums to {sum(self.counts)}, expected {self.total}")

    @property
    def v(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return math.factorial(self.t) * self.lam

    def reversed(self) -> DistributionVector:
        return DistributionVector(self.counts[::-1], self.t, self.lam)


@dataclass(frozen=True)
class FeasibleSet:
    v: int
    t: int
    lam: int
    vectors: tuple[tuple[int, ...], ...]
    survivors: tuple[tuple[int, ...], ...] | None = None

    def summary(self) -> str:
        text = f"feasible={len(self.vectors)}"
        if self.survivors is not None:
            text += f" survivors={len(self.survivors)}"
        return text


def _check_params(v: int, t: int, lam: int) -> None:
    if t < 2 or v < t or lam < 1:
        raise InputError(f"need v >= t >= 2 and lambda >= 1, got ({v}, {t}, {lam})")


def binomial_identity_holds(d: DistributionVector, i: int) -> bool:
    """Count the t-sequences with ``w`` in slot ``i`` two ways."""
    v, t = d.v, d.t
    if not 0 <= i <= t - 1:
        raise InputError(f"slot {i} outside 0..{t - 1}")
    lhs = d.lam * math.factorial(v - 1) // math.factorial(v - t)
    rhs = sum(c * math.comb(j, i) * math.comb(v - 1 - j, t - 1 - i)
              for j, c in enumerate(d.counts))
    return lhs == rhs


def _power_sum_ok(counts: Sequence[int], v: int, t: int, lam: int) -> bool:
    n = math.factorial(t) * lam
    for s in range(1, t):
        if v * sum(j ** s * c for j, c in enumerate(counts)) != n * sum(i ** s for i in range(v)):
            return False
    return True


def is_feasible(d: DistributionVector) -> bool:
    return _power_sum_ok(d.counts, d.v, d.t, d.lam)


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def prime_class_check(d: DistributionVector, p: int | None = None) -> bool:
    """Residue-class sums of ``d`` modulo an odd prime strength are all
    divisible by that prime."""
    p = d.t if p is None else p
    if not _is_odd_prime(p):
        raise InputError(f"{p} is not an odd prime")
    if d.t != p:
        raise InputError(f"strength {d.t} differs from the prime {p}")
    if d.v % p == 0:
        raise InputError(f"{p} divides the order {d.v}")
    return all(sum(d.counts[j::p]) % p == 0 for j in range(p))


def palindrome_check(d: DistributionVector) -> bool:
    if d.v != d.t + 1 or d.t % 2:
        raise InputError("palindrome test needs v = t + 1 with t even")
    return d.counts == d.counts[::-1]


def divisibility_check(d: DistributionVector) -> bool:
    if d.v != d.t + 1 or d.lam != 1:
        raise InputError("divisibility test needs v = t + 1 and lambda = 1")
    return all(c % math.comb(d.t, i) == 0 for i, c in enumerate(d.counts))


def compatible(d: DistributionVector, d_prime: DistributionVector) -> bool:
    """Could ``d_prime`` arise from ``d`` by deleting some other symbol?

    The running differences of the two vectors must stay between 0 and the
    current entry of ``d_prime``.
    """
    if d_prime.v != d.v - 1:
        raise InputError(f"lengths {d.v} and {d_prime.v} do not differ by one")
    if d.total != d_prime.total:
        raise InputError("vectors have different totals")
    delta = 0
    for k in range(d.v - 1):
        delta += d_prime.counts[k] - d.counts[k]
        if not 0 <= delta <= d_prime.counts[k]:
            return False
    return True


def subset_profile(x: PermArray, w: int, i: int) -> dict[frozenset[int], int]:
    """For every i-subset ``I`` avoiding ``w``: rows with ``w`` in column ``i``
    preceded exactly by the symbols of ``I``."""
    if not 0 <= w < x.v:
        raise InputError(f"symbol {w} outside [{x.v}]")
    if not 0 <= i < x.v:
        raise InputError(f"column {i} outside [{x.v}]")
    others = [a for a in range(x.v) if a != w]
    profile = {frozenset(I): 0 for I in combinations(others, i)}
    for row in x.rows:
        if row[i] == w:
            profile[frozenset(row[:i])] += 1
    return profile


# -- enumeration ------------------------------------------------------------
#
# Write d = (x, y) with x = d[:v-t] free and y = d[v-t:] determined by the t
# power-sum equations.  The integer kernel of those equations is spanned by
# shifted t-th difference stencils, each with a leading 1, so every integer x
# yields an integer y.  The set of admissible x is the lattice in the polytope
# {x >= 0, y(x) >= 0}; projections of that polytope onto leading coordinates
# (Fourier-Motzkin) give exact per-coordinate bounds for a depth-first walk.

Constraint = tuple[tuple[int, ...], int]  # a . x <= b


def _solve_exact(M: list[list[Fraction]], rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(M[r]) + list(rhs[r]) for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _normalise(a: Sequence[int], b: int) -> Constraint:
    if all(c == 0 for c in a):
        return tuple(a), b
    g = math.gcd(*a)
    # integer points only: a.x <= b  <=>  (a/g).x <= floor(b/g)
    return tuple(c // g for c in a), b // g


def _drop_redundant(cons: list[Constraint]) -> list[Constraint]:
    """Remove constraints implied by the others (LP test, float)."""
    from scipy.optimize import linprog

    if len(cons) <= 2:
        return cons
    keep = list(cons)
    i = 0
    while i < len(keep):
        a, b = keep[i]
        rest = keep[:i] + keep[i + 1:]
        A = np.array([r[0] for r in rest], dtype=float)
        ub = np.array([r[1] for r in rest], dtype=float)
        res = linprog(-np.array(a, dtype=float), A_ub=A, b_ub=ub,
                      bounds=[(None, None)] * len(a), method="highs")
        if res.status == 0 and -res.fun <= b - 1e-7 * (1 + abs(b)):
            keep.pop(i)
        else:
            i += 1
    return keep


def _eliminate(cons: list[Constraint], k: int) -> list[Constraint]:
    """Project out coordinate ``k`` (the last one)."""
    pos = [c for c in cons if c[0][k] > 0]
    neg = [c for c in cons if c[0][k] < 0]
    out = {_normalise(a[:k], b) for a, b in cons if a[k] == 0}
    for ap, bp in pos:
        for an, bn in neg:
            mp, mn = -an[k], ap[k]
            a = tuple(mp * x + mn * y for x, y in zip(ap[:k], an[:k]))
            out.add(_normalise(a, mp * bp + mn * bn))
    trivial = [c for c in out if not any(c[0])]
    if any(b < 0 for _, b in trivial):
        return [((0,) * k, -1)]
    return _drop_redundant(sorted(c for c in out if any(c[0])))


@dataclass
class _LatticeSystem:
    free: int
    denom: int
    tail_const: list[int]
    tail_coef: list[list[int]]
    levels: list[list[Constraint]]


@lru_cache(maxsize=None)
def _lattice_system(v: int, t: int, lam: int) -> _LatticeSystem | None:
    n = math.factorial(t) * lam
    targets = [Fraction(n * sum(i ** s for i in range(v)), v) for s in range(t)]
    if any(x.denominator != 1 for x in targets):
        return None
    f = v - t
    V = [[Fraction((f + k) ** s) for k in range(t)] for s in range(t)]
    rhs = [[targets[s]] + [Fraction(j ** s) for j in range(f)] for s in range(t)]
    sol = _solve_exact(V, rhs)
    denom = math.lcm(*(q.denominator for row in sol for q in row))
    tail_const = [int(row[0] * denom) for row in sol]
    tail_coef = [[int(q * denom) for q in row[1:]] for row in sol]
    top: list[Constraint] = [(tuple(-int(j == i) for j in range(f)), 0) for i in range(f)]
    top += [(tuple(row), c) for row, c in zip(tail_coef, tail_const)]
    levels = [top]
    for k in range(f - 1, 0, -1):
        levels.append(_eliminate(levels[-1], k))
    levels.reverse()
    return _LatticeSystem(f, denom, tail_const, tail_coef, levels)


def _walk(system: _LatticeSystem, n: int) -> Iterator[tuple[int, ...]]:
    f, D = system.free, system.denom
    consts, coefs = system.tail_const, system.tail_coef
    if f == 0:
        if all(c % D == 0 and c >= 0 for c in consts):
            yield tuple(c // D for c in consts)
        return
    levels = system.levels
    x = [0] * f

    def bounds(k: int) -> tuple[int, int]:
        lo, hi = 0, n
        for a, b in levels[k]:
            rest = b
            for j in range(k):
                rest -= a[j] * x[j]
            ak = a[k]
            if ak > 0:
                hi = min(hi, rest // ak)
            elif ak < 0:
                lo = max(lo, -(rest // -ak))
            elif rest < 0:
                return 1, 0
        return lo, hi

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        lo, hi = bounds(k)
        if k < f - 1:
            for val in range(lo, hi + 1):
                x[k] = val
                yield from rec(k + 1)
            return
        base = [c - sum(r[j] * x[j] for j in range(k)) for c, r in zip(consts, coefs)]
        last = [r[k] for r in coefs]
        prefix = tuple(x[:k])
        for val in range(lo, hi + 1):
            tail = []
            for b0, r in zip(base, last):
                num = b0 - r * val
                if num < 0 or num % D:
                    break
                tail.append(num // D)
            else:
                yield prefix + (val,) + tuple(tail)

    yield from rec(0)


@lru_cache(maxsize=None)
def _feasible(v: int, t: int, lam: int) -> tuple[tuple[int, ...], ...]:
    system = _lattice_system(v, t, lam)
    if system is None:
        return ()
    n = math.factorial(t) * lam
    out = tuple(_walk(system, n))
    return out


def enumerate_feasible(v: int, t: int, lam: int) -> FeasibleSet:
    """All (v, t, lambda)-feasible distribution vectors in lexicographic order."""
    _check_params(v, t, lam)
    return FeasibleSet(v, t, lam, _feasible(v, t, lam))


class _PrefixTrie:
    """Trie over prefix-sum vectors supporting box-existence queries.

    Each node stores the bounding box of the keys below it so that subtrees
    missing the query box are skipped without descending.
    """

    def __init__(self, keys):
        root: dict = {}
        for key in keys:
            node = root
            for c in key:
                node = node.setdefault(c, {})
        self.root = self._freeze(root)

    def _freeze(self, node: dict):
        ks = sorted(node)
        kids = [self._freeze(node[k]) for k in ks]
        if not kids:
            return ks, kids, (), ()
        depth = len(kids[0][2])
        lo = tuple(min(kid[2][j] for kid in kids) for j in range(depth))
        hi = tuple(max(kid[3][j] for kid in kids) for j in range(depth))
        return ks, kids, (ks[0],) + lo, (ks[-1],) + hi

    def any_in_box(self, lo: Sequence[int], hi: Sequence[int]) -> bool:
        depth = len(lo)

        def rec(node, k: int) -> bool:
            if k == depth:
                return True
            ks, kids, nlo, nhi = node
            for j in range(depth - k):
                if nhi[j] < lo[k + j] or nlo[j] > hi[k + j]:
                    return False
            for idx in range(bisect_left(ks, lo[k]), bisect_right(ks, hi[k])):
                if rec(kids[idx], k + 1):
                    return True
            return False

        return rec(self.root, 0)


def _prefix_sums(d: Sequence[int]) -> list[int]:
    return list(accumulate(d))


@lru_cache(maxsize=None)
def _survivors(v: int, t: int, lam: int) -> tuple[tuple[int, ...], ...]:
    feasible = _feasible(v, t, lam)
    if v == t:
        return feasible
    below = _survivors(v - 1, t, lam)
    if not below:
        return ()
    # d' compatible with d  <=>  D(k) <= D'(k) <= D(k+1) for k <= v-3,
    # where D, D' are prefix sums (the last prefix sum is the common total).
    trie = _PrefixTrie(tuple(_prefix_sums(e)[:-1]) for e in below)
    out = []
    for d in feasible:
        D = _prefix_sums(d)
        if trie.any_in_box(D[:v - 2], D[1:v - 1]):
            out.append(d)
    return tuple(out)


def filter_chain(v: int, t: int, lam: int) -> FeasibleSet:
    """Feasible vectors that start a chain of compatible feasible vectors
    down to order ``t``."""
    _check_params(v, t, lam)
    return FeasibleSet(v, t, lam, _feasible(v, t, lam), _survivors(v, t, lam))
