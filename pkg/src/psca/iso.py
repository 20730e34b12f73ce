"""Isomorphism of permutation multisets under relabelling and reversal.

Two arrays are isomorphic when one is obtained from the other by renaming
symbols and/or reversing every row.  The canonical form is the smallest
encoding of the sorted rows over the whole orbit.  Because the identity is
the smallest permutation, that minimum always starts with the identity row,
so only relabellings that send some row to the identity need be examined.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from itertools import permutations

from .core import PermArray, Permutation, inverse

__all__ = [
    "CanonicalForm",
    "automorphism_count",
    "canonical_array",
    "canonical_form",
    "isomorphic",
    "naive_canonical_form",
]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    v: int
    m: int
    encoding: bytes

    def digest(self) -> str:
        return hashlib.sha256(bytes([self.v]) + self.encoding).hexdigest()

    def rows(self) -> tuple[Permutation, ...]:
        e, v = self.encoding, self.v
        return tuple(tuple(e[i:i + v]) for i in range(0, len(e), v))

    def array(self) -> PermArray:
        return PermArray(self.v, self.rows())


def _encode(rows) -> bytes:
    return b"".join(bytes(r) for r in sorted(rows))


def _orientations(x: PermArray):
    yield x.rows
    yield tuple(r[::-1] for r in x.rows)


def _best(rows: tuple[Permutation, ...]) -> bytes:
    raw = [bytes(r) for r in rows]
    best = None
    for r in dict.fromkeys(raw):
        table = bytes(inverse(tuple(r))).ljust(256, b"\0")
        enc = b"".join(sorted(row.translate(table) for row in raw))
        if best is None or enc < best:
            best = enc
    return best


def canonical_form(x: PermArray) -> CanonicalForm:
    if not len(x):
        return CanonicalForm(x.v, 0, b"")
    enc = min(_best(rows) for rows in _orientations(x))
    return CanonicalForm(x.v, len(x), enc)


def canonical_array(x: PermArray) -> PermArray:
    """The canonical representative of the class of ``x``."""
    return canonical_form(x).array()


def naive_canonical_form(x: PermArray) -> CanonicalForm:
    """Minimum over all ``2 * v!`` transformations; test oracle for small v."""
    best = None
    for rows in _orientations(x):
        for sigma in permutations(range(x.v)):
            enc = _encode([tuple(sigma[a] for a in row) for row in rows])
            if best is None or enc < best:
                best = enc
    return CanonicalForm(x.v, len(x), best or b"")


def isomorphic(x: PermArray, y: PermArray) -> bool:
    if x.v != y.v or len(x) != len(y):
        return False
    return canonical_form(x) == canonical_form(y)


def automorphism_count(x: PermArray) -> int:
    """Number of (relabelling, reversal flag) pairs that fix the multiset."""
    if not len(x):
        return 2 * math.factorial(x.v)
    target = x.rows
    anchor = target[0]
    count = 0
    for rows in _orientations(x):
        seen = set()
        for r in dict.fromkeys(rows):
            # sigma must carry some row r onto the anchor row
            sigma = tuple(anchor[i] for i in inverse(r))
            if sigma in seen:
                continue
            seen.add(sigma)
            if tuple(sorted(tuple(sigma[a] for a in row) for row in rows)) == target:
                count += 1
    return count
