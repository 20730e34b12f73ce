"""Permutation arrays and coverage primitives.

A permutation of ``[v] = {0, ..., v-1}`` is stored as its row
``(p(0), ..., p(v-1))``.  A :class:`PermArray` is a multiset of such rows
over a common alphabet; rows are kept sorted so that equal multisets compare
equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

MAX_V = 64

Permutation = tuple[int, ...]


class InputError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


def check_permutation(row: Sequence[int], v: int | None = None) -> Permutation:
    row = tuple(int(a) for a in row)
    n = len(row) if v is None else v
    if len(row) != n or sorted(row) != list(range(n)):
        raise InputError(f"{row!r} is not a permutation of [{n}]")
    return row


@dataclass(frozen=True)
class PermArray:
    """Multiset of permutations of ``[v]``.

    ``rows`` is normalised to lexicographic order with repeats adjacent.
    """

    v: int
    rows: tuple[Permutation, ...]

    def __post_init__(self):
        if not 1 <= self.v <= MAX_V:
            raise InputError(f"alphabet size {self.v} outside 1..{MAX_V}")
        rows = tuple(sorted(check_permutation(r, self.v) for r in self.rows))
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], v: int | None = None) -> PermArray:
        rows = [tuple(r) for r in rows]
        if v is None:
            if not rows:
                raise InputError("cannot infer v from an empty array")
            v = len(rows[0])
        return cls(v, tuple(rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __add__(self, other: PermArray) -> PermArray:
        if other.v != self.v:
            raise InputError("cannot join arrays over different alphabets")
        return PermArray(self.v, self.rows + other.rows)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Rows as an ``(m, v)`` integer matrix."""
        dtype = np.int8 if self.v <= 127 else np.int16
        return np.array(self.rows, dtype=dtype).reshape(len(self.rows), self.v)

    def distinct_rows(self) -> tuple[Permutation, ...]:
        return tuple(dict.fromkeys(self.rows))


@dataclass(frozen=True)
class VerifyResult:
    is_psca: bool
    t: int
    lam: int | None = None
    first_violation: tuple[tuple[int, ...], int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_psca


def identity(v: int) -> Permutation:
    return tuple(range(v))


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, a in enumerate(p):
        inv[a] = i
    return tuple(inv)


def symmetric_group(v: int, copies: int = 1) -> PermArray:
    from itertools import permutations

    return PermArray(v, tuple(permutations(range(v))) * copies)


# -- sequence ranking -------------------------------------------------------

def n_sequences(v: int, t: int) -> int:
    """Number of ordered t-sequences of distinct symbols from ``[v]``."""
    return math.perm(v, t)


def rank_sequence(s: Sequence[int], v: int) -> int:
    """Mixed-radix rank: ``s[0]``, then the position of ``s[1]`` among the
    symbols not yet used, and so on."""
    rank = 0
    used: list[int] = []
    for i, a in enumerate(s):
        r = a - sum(1 for b in used if b < a)
        rank = rank * (v - i) + r
        used.append(a)
    return rank


def unrank_sequence(rank: int, v: int, t: int) -> tuple[int, ...]:
    digits = []
    for i in reversed(range(t)):
        rank, r = divmod(rank, v - i)
        digits.append(r)
    digits.reverse()
    free = list(range(v))
    return tuple(free.pop(r) for r in digits)


def _rank_columns(S: np.ndarray, v: int) -> np.ndarray:
    """Rank every t-sequence along the last axis of ``S``."""
    S = S.astype(np.int64, copy=False)
    t = S.shape[-1]
    rank = np.zeros(S.shape[:-1], dtype=np.int64)
    for i in range(t):
        r = S[..., i].copy()
        for j in range(i):
            r -= S[..., j] < S[..., i]
        rank *= v - i
        rank += r
    return rank


def coverage_counts(x: PermArray, t: int, chunk: int = 1 << 22) -> np.ndarray:
    """Count, for every ranked t-sequence, how many rows of ``x`` cover it.

    Each row contributes its C(v, t) covered subsequences.
    """
    v = x.v
    size = n_sequences(v, t)
    counts = np.zeros(size, dtype=np.int64)
    if not len(x):
        return counts
    R = x.matrix
    combos = np.array(list(combinations(range(v), t)), dtype=np.int64)
    step = max(1, chunk // max(1, len(x)))
    for start in range(0, len(combos), step):
        block = R[:, combos[start:start + step]]
        counts += np.bincount(_rank_columns(block, v).ravel(), minlength=size)
    return counts


# -- operations -------------------------------------------------------------

def covers(p: Sequence[int], s: Sequence[int]) -> bool:
    v = len(p)
    if any(not 0 <= a < v for a in s):
        raise InputError(f"sequence {tuple(s)} has symbols outside [{v}]")
    if len(set(s)) != len(s):
        raise InputError(f"sequence {tuple(s)} repeats a symbol")
    pos = inverse(p)
    return all(pos[a] < pos[b] for a, b in zip(s, s[1:]))


def _check_strength(v: int, t: int) -> None:
    if t < 2:
        raise InputError(f"strength must be at least 2, got {t}")
    if t > v:
        raise InputError(f"strength {t} exceeds alphabet size {v}")


def verify(x: PermArray, t: int) -> VerifyResult:
    """Decide whether ``x`` is a PSCA of strength ``t`` and report its lambda."""
    _check_strength(x.v, t)
    if not len(x):
        raise InputError("cannot verify an empty array")
    m = len(x)
    f = math.factorial(t)
    if m % f:
        return VerifyResult(False, t, reason=f"{m} rows is not a multiple of {t}!")
    lam = m // f
    counts = coverage_counts(x, t)
    bad = np.flatnonzero(counts != lam)
    if bad.size:
        r = int(bad[0])
        return VerifyResult(False, t, first_violation=(unrank_sequence(r, x.v, t), int(counts[r])),
                            reason=f"expected every sequence covered {lam} times")
    return VerifyResult(True, t, lam)


def distribution_vector(x: PermArray, w: int) -> tuple[int, ...]:
    """Per-column occurrence counts of symbol ``w``."""
    if not 0 <= w < x.v:
        raise InputError(f"symbol {w} outside [{x.v}]")
    d = [0] * x.v
    for row in x.rows:
        d[row.index(w)] += 1
    return tuple(d)


def distribution_vectors(x: PermArray) -> list[tuple[int, ...]]:
    if not len(x):
        return [(0,) * x.v for _ in range(x.v)]
    onehot = x.matrix[:, :, None] == np.arange(x.v)
    return [tuple(int(c) for c in col) for col in onehot.sum(axis=0).T]


def relabel(x: PermArray, sigma: Sequence[int]) -> PermArray:
    """Apply ``sigma`` to every symbol (left composition)."""
    sigma = check_permutation(sigma, x.v)
    return PermArray(x.v, tuple(tuple(sigma[a] for a in row) for row in x.rows))


def reduce(x: PermArray, W: Iterable[int]) -> PermArray:
    """Drop every symbol outside ``W``; relabel survivors to ``[|W|]`` in order."""
    keep = sorted(set(W))
    if any(not 0 <= w < x.v for w in keep):
        raise InputError(f"{keep} is not a subset of [{x.v}]")
    if not keep:
        raise InputError("cannot reduce to an empty symbol set")
    label = {w: i for i, w in enumerate(keep)}
    return PermArray(len(keep), tuple(tuple(label[a] for a in row if a in label) for row in x.rows))


def delete_symbol(x: PermArray, w: int) -> PermArray:
    if not 0 <= w < x.v:
        raise InputError(f"symbol {w} outside [{x.v}]")
    if x.v < 2:
        raise InputError("cannot delete from a one-symbol alphabet")
    return reduce(x, [a for a in range(x.v) if a != w])


def reverse(x: PermArray) -> PermArray:
    return PermArray(x.v, tuple(row[::-1] for row in x.rows))


__all__ = [
    "MAX_V",
    "InputError",
    "PermArray",
    "Permutation",
    "VerifyResult",
    "check_permutation",
    "coverage_counts",
    "covers",
    "delete_symbol",
    "distribution_vector",
    "distribution_vectors",
    "identity",
    "inverse",
    "n_sequences",
    "rank_sequence",
    "reduce",
    "relabel",
    "reverse",
    "symmetric_group",
    "unrank_sequence",
    "verify",
]
