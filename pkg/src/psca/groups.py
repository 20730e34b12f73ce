"""Permutation groups, their cosets and coset-built arrays.

Composition follows ``(f o g)(x) = f(g(x))``.  A right coset ``Gh`` keeps the
rows of ``G`` and permutes their columns; a left coset ``hG`` relabels the
symbols.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .core import (
    InputError,
    PermArray,
    Permutation,
    VerifyResult,
    _rank_columns,
    check_permutation,
    covers,
    identity,
    inverse,
    n_sequences,
    unrank_sequence,
)

__all__ = [
    "CosetType",
    "ElementaryAbelian",
    "GroupSpec",
    "GroupTooLarge",
    "PermGroup",
    "SearchResult",
    "builtin",
    "builtin_names",
    "close",
    "compose",
    "conjugate_search",
    "coset",
    "e2_group",
    "e2_psca_check",
    "e4_coset_type",
    "format_cycles",
    "group_order",
    "is_group",
    "parse_cycles",
    "sample_conjugates",
    "subgroup_orbits",
    "uncovered_triples",
    "verify_transitive",
]


class GroupTooLarge(OverflowError):
    """The generated group exceeded the permitted order."""


def compose(f: Sequence[int], g: Sequence[int]) -> Permutation:
    if len(f) != len(g):
        raise InputError(f"cannot compose permutations of lengths {len(f)} and {len(g)}")
    return tuple(f[a] for a in g)


# -- cycle notation ---------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, v: int) -> Permutation:
    """Parse ``(0,5,4)(1,2,3)`` or ``(0 1)(2 3)``; fixed points may be omitted."""
    text = text.strip()
    row = list(range(v))
    seen: set[int] = set()
    rest = _CYCLE.sub("", text).strip()
    if rest:
        raise InputError(f"cannot parse cycle notation {text!r}")
    for body in _CYCLE.findall(text):
        try:
            cyc = [int(tok) for tok in body.replace(",", " ").split()]
        except ValueError:
            raise InputError(f"non-integer symbol in cycle ({body})") from None
        for a in cyc:
            if not 0 <= a < v:
                raise InputError(f"symbol {a} outside [{v}] in {text!r}")
            if a in seen:
                raise InputError(f"symbol {a} repeated in {text!r}")
            seen.add(a)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            row[a] = b
    return tuple(row)


def format_cycles(p: Sequence[int]) -> str:
    done = [False] * len(p)
    out = []
    for a in range(len(p)):
        if done[a] or p[a] == a:
            continue
        cyc = []
        b = a
        while not done[b]:
            done[b] = True
            cyc.append(b)
            b = p[b]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


# -- groups -----------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    v: int
    generators: tuple[Permutation, ...]
    name: str = ""

    def __post_init__(self):
        gens = tuple(check_permutation(g, self.v) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_cycles(cls, v: int, cycles: Iterable[str], name: str = "") -> GroupSpec:
        return cls(v, tuple(parse_cycles(c, v) for c in cycles), name)

    def cycles(self) -> list[str]:
        return [format_cycles(g) for g in self.generators]


@dataclass(frozen=True)
class PermGroup:
    v: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def array(self) -> PermArray:
        return PermArray(self.v, tuple(self.elements))

    def orbit(self, a: int) -> set[int]:
        return {g[a] for g in self.elements}

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.v

    def is_sharply_transitive(self) -> bool:
        return self.order == self.v and self.is_transitive()


def _closure(v: int, gens: Sequence[Permutation], max_order: int, start=None) -> set[Permutation]:
    elements = set(start) if start else {identity(v)}
    frontier = list(elements)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(a[i] for i in g)
                if b not in elements:
                    elements.add(b)
                    if len(elements) > max_order:
                        raise GroupTooLarge(f"group order exceeds {max_order}")
                    nxt.append(b)
        frontier = nxt
    return elements


def close(spec: GroupSpec, max_order: int = 10**6) -> PermGroup:
    """Breadth-first closure of the generators under composition."""
    if max_order < 1:
        raise InputError("max_order must be at least 1")
    return PermGroup(spec.v, frozenset(_closure(spec.v, spec.generators, max_order)))


def group_order(spec: GroupSpec) -> int:
    """Order via a stabiliser chain; no element list is stored."""
    from sympy.combinatorics import Permutation as SymPerm
    from sympy.combinatorics import PermutationGroup

    if not spec.generators:
        return 1
    return int(PermutationGroup([SymPerm(list(g)) for g in spec.generators]).order())


def is_group(x: PermArray) -> bool:
    """True when the distinct rows, relabelled so one row is the identity,
    are closed under composition."""
    if not len(x):
        return False
    inv0 = inverse(x.rows[0])
    target = {tuple(inv0[a] for a in row) for row in x.rows}
    # grow a subgroup one generator at a time, stopping once it leaves target
    gens: list[Permutation] = []
    H = {identity(x.v)}
    for p in sorted(target):
        if p in H:
            continue
        gens.append(p)
        try:
            H = _closure(x.v, gens, len(target), start=H)
        except GroupTooLarge:
            return False
        if not H <= target:
            return False
    return H == target


def coset(g: PermGroup, h: Sequence[int], side: str = "right") -> PermArray:
    h = tuple(h)
    if len(h) != g.v:
        raise InputError(f"coset multiplier has length {len(h)}, group acts on [{g.v}]")
    check_permutation(h, g.v)
    if side == "right":
        rows = [tuple(k[i] for i in h) for k in g.elements]
    elif side == "left":
        rows = [tuple(h[a] for a in k) for k in g.elements]
    else:
        raise InputError(f"side must be 'left' or 'right', not {side!r}")
    return PermArray(g.v, tuple(rows))


def _coset_multiplicities(x: PermArray, g: PermGroup) -> dict[Permutation, int]:
    """Decompose ``x`` into right cosets of ``g``; maps a representative to
    its multiplicity.  Raises when ``x`` is not such a union."""
    if x.v != g.v:
        raise InputError("array and group act on different alphabets")
    left = Counter(x.rows)
    reps: dict[Permutation, int] = {}
    for row in x.distinct_rows():
        m = left[row]
        if not m:
            continue
        members = [tuple(k[i] for i in row) for k in g.elements]
        counts = {left[r] for r in members}
        if counts != {m}:
            raise InputError(f"rows are not a union of right cosets (row {row})")
        for r in members:
            left[r] = 0
        reps[row] = m
    return reps


def _ranks_through(R: np.ndarray, v: int, t: int, w: int, i: int) -> np.ndarray:
    """Ranks of the t-subsequences of each row whose i-th entry is ``w``."""
    out = []
    pos = np.argmax(R == w, axis=1)
    for p in range(v):
        rows = R[pos == p]
        if not len(rows) or p < i or v - 1 - p < t - 1 - i:
            continue
        combos = np.array([a + (p,) + b for a in combinations(range(p), i)
                           for b in combinations(range(p + 1, v), t - 1 - i)], dtype=np.int64)
        out.append(_rank_columns(rows[:, combos], v).ravel())
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def verify_transitive(x: PermArray, g: PermGroup, t: int, w: int = 0, i: int = 0) -> VerifyResult:
    """Verify a union of right cosets of a transitive group by counting only
    the sequences whose i-th symbol is ``w``; the other orbits follow."""
    if not g.is_transitive():
        raise InputError("group is not transitive")
    if not 2 <= t <= x.v:
        raise InputError(f"strength {t} outside 2..{x.v}")
    if not 0 <= w < x.v or not 0 <= i < t:
        raise InputError(f"need 0 <= w < {x.v} and 0 <= i < {t}")
    _coset_multiplicities(x, g)
    m = len(x)
    if m % math.factorial(t):
        return VerifyResult(False, t, reason=f"{m} rows is not a multiple of {t}!")
    lam = m // math.factorial(t)
    size = n_sequences(x.v, t)
    counts = np.bincount(_ranks_through(x.matrix, x.v, t, w, i), minlength=size)
    for r in range(size):
        s = unrank_sequence(r, x.v, t) if counts[r] != lam else None
        if s is not None and s[i] == w:
            return VerifyResult(False, t, first_violation=(s, int(counts[r])),
                                reason=f"expected every sequence covered {lam} times")
    return VerifyResult(True, t, lam)


# -- elementary abelian 2-groups --------------------------------------------

def e2_group(n: int) -> PermGroup:
    """Regular representation ``x -> g XOR x`` on ``[n]``."""
    if n not in (4, 8, 16, 32):
        raise InputError(f"unsupported order {n}; expected 4, 8, 16 or 32")
    return PermGroup(n, frozenset(tuple(g ^ x for x in range(n)) for g in range(n)))


class ElementaryAbelian:
    """Symbols of a regular elementary abelian 2-group, with ``x + y`` taken
    as the image of ``y`` under the element sending 0 to ``x``."""

    def __init__(self, group: PermGroup):
        v = group.v
        psi: dict[int, Permutation] = {}
        for g in group.elements:
            psi[g[0]] = g
        if group.order != v or len(psi) != v:
            raise InputError("group does not act regularly")
        self.v = v
        self.group = group
        self.psi = [psi[a] for a in range(v)]
        for a in range(v):
            p = self.psi[a]
            if compose(p, p) != identity(v):
                raise InputError("group has an element of order other than 1 or 2")
            for b in range(a):
                if compose(p, self.psi[b]) != compose(self.psi[b], p):
                    raise InputError("group is not abelian")

    def add(self, x: int, y: int) -> int:
        return self.psi[x][y]

    def subgroups4(self) -> list[frozenset[int]]:
        out = {frozenset((0, a, b, self.add(a, b))) for a, b in combinations(range(1, self.v), 2)}
        return sorted(out, key=sorted)

    def is_automorphism(self, f: Sequence[int]) -> bool:
        if len(f) != self.v or f[0] != 0:
            return False
        return all(f[self.add(x, y)] == self.add(f[x], f[y])
                   for x in range(self.v) for y in range(x + 1, self.v))


class CosetType(str, Enum):
    A = "A"
    B = "B"
    C = "C"


_UNCOVERED = {
    CosetType.A: ("021", "031", "120", "130", "203", "213", "302", "312"),
    CosetType.B: ("012", "032", "103", "123", "210", "230", "301", "321"),
    CosetType.C: ("013", "023", "102", "132", "201", "231", "310", "320"),
}


def uncovered_triples(label: CosetType) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(int(c) for c in s) for s in _UNCOVERED[label])


def _type_table() -> dict[Permutation, CosetType]:
    e4 = e2_group(4)
    by_set = {uncovered_triples(k): k for k in CosetType}
    table = {}
    for p in permutations(range(4)):
        rows = [compose(k, p) for k in e4.elements]
        missing = frozenset(s for s in permutations(range(4), 3)
                            if not any(covers(r, s) for r in rows))
        table[p] = by_set[missing]
    return table


_TYPES = _type_table()


def e4_coset_type(c: PermArray) -> CosetType:
    if c.v != 4 or len(c) != 4:
        raise InputError("expected a 4-row array over [4]")
    label = _TYPES[c.rows[0]]
    e4 = e2_group(4)
    if set(c.rows) != {compose(k, c.rows[0]) for k in e4.elements}:
        raise InputError("rows do not form a coset of the regular Klein four-group")
    return label


def e2_psca_check(x: PermArray, group: PermGroup | None = None,
                  automorphism: Sequence[int] | None = None) -> VerifyResult:
    """Strength-3 check for a union of right cosets of a regular elementary
    abelian 2-group (XOR labelling by default).

    For each order-4 subgroup H the reduced array on H splits into cosets of
    the Klein four-group; it is balanced exactly when the three coverage
    types occur equally often.  With ``automorphism`` f, the array is taken
    to be a union of ``T f^i`` and one subgroup per f-orbit is checked.
    """
    E = ElementaryAbelian(group if group is not None else e2_group(x.v))
    reps = _coset_multiplicities(x, E.group)
    if automorphism is not None:
        subgroups = [orb[0] for orb in subgroup_orbits(automorphism, E.group)]
    else:
        subgroups = E.subgroups4()
    m = len(x)
    if m % 6:
        return VerifyResult(False, 3, reason=f"{m} rows is not a multiple of 3!")
    for H in subgroups:
        label = {h: j for j, h in enumerate(sorted(H))}
        transversal = []
        covered: set[int] = set()
        for a in range(E.v):
            if a not in covered:
                transversal.append(a)
                covered.update(E.add(a, h) for h in H)
        tally = Counter()
        for rep, mult in reps.items():
            for a in transversal:
                row = E.psi[a]
                reduced = tuple(label[row[s]] for s in rep if row[s] in label)
                tally[_TYPES[reduced]] += mult
        counts = tuple(tally[k] for k in CosetType)
        if len(set(counts)) != 1:
            return VerifyResult(False, 3, reason=f"subgroup {sorted(H)}: type counts A,B,C = {counts}")
    return VerifyResult(True, 3, m // 6)


def subgroup_orbits(f: Sequence[int], group: PermGroup) -> list[list[frozenset[int]]]:
    """Orbits of the order-4 subgroups under ``H -> f(H)``."""
    E = ElementaryAbelian(group)
    f = check_permutation(f, E.v)
    if not E.is_automorphism(f):
        raise InputError("permutation is not an automorphism of the group")
    seen: set[frozenset[int]] = set()
    orbits = []
    for H in E.subgroups4():
        if H in seen:
            continue
        orb = []
        K = H
        while K not in seen:
            seen.add(K)
            orb.append(K)
            K = frozenset(f[a] for a in K)
        orbits.append(orb)
    return orbits


# -- conjugate search -------------------------------------------------------

@dataclass
class SearchResult:
    witness: Permutation | None
    nodes: int
    exhaustive: bool

    def __bool__(self) -> bool:
        return self.witness is not None


def conjugate_search(g: PermGroup, t: int, lam: int, budget: int | None = None) -> SearchResult:
    """Find a column permutation h with ``Gh`` a PSCA(v, t, lam).

    Columns of ``G`` are placed left to right; after each placement the
    subsequences ending in the new column are counted and the branch is cut
    once any sequence exceeds ``lam``.
    """
    v = g.v
    if not 2 <= t <= v:
        raise InputError(f"strength {t} outside 2..{v}")
    if g.order != math.factorial(t) * lam:
        raise InputError(f"group order {g.order} differs from {t}!*{lam}")
    G = np.array(sorted(g.elements), dtype=np.int64)
    size = n_sequences(v, t)
    counts = np.zeros(size, dtype=np.int64)
    h: list[int] = []
    used = [False] * v
    nodes = 0

    def ranks(c: int) -> np.ndarray:
        j = len(h)
        if j < t - 1:
            return np.zeros(0, dtype=np.int64)
        combos = np.array([list(a) for a in combinations(h, t - 1)], dtype=np.int64)
        block = np.concatenate([G[:, combos], np.broadcast_to(G[:, [c]][:, None, :], (len(G), len(combos), 1))], axis=2)
        return _rank_columns(block, v).ravel()

    def rec() -> bool:
        nonlocal nodes
        if len(h) == v:
            return True
        for c in range(v):
            if used[c]:
                continue
            if budget is not None and nodes >= budget:
                raise _Budget
            nodes += 1
            r = ranks(c)
            delta = np.bincount(r, minlength=size) if r.size else None
            if delta is not None:
                np.add(counts, delta, out=counts)
                if counts.max() > lam:
                    np.subtract(counts, delta, out=counts)
                    continue
            used[c] = True
            h.append(c)
            if rec():
                return True
            h.pop()
            used[c] = False
            if delta is not None:
                np.subtract(counts, delta, out=counts)
        return False

    try:
        found = rec()
    except _Budget:
        return SearchResult(None, nodes, False)
    return SearchResult(tuple(h) if found else None, nodes, True)


class _Budget(Exception):
    pass


def sample_conjugates(g: PermGroup, t: int, lam: int, samples: int, seed: int) -> Permutation | None:
    """Try ``samples`` random column permutations; the seed is required so
    that runs repeat exactly."""
    from .core import verify

    if g.order != math.factorial(t) * lam:
        raise InputError(f"group order {g.order} differs from {t}!*{lam}")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        h = tuple(int(a) for a in rng.permutation(g.v))
        res = verify(coset(g, h), t)
        if res and res.lam == lam:
            return h
    return None


# -- built-in constructions -------------------------------------------------

def _array(*rows: str) -> PermArray:
    return PermArray.from_rows([tuple(int(c) for c in r) for r in rows])


_ARRAYS = {
    "psca-7-3-2": (
        "0123465", "1540362", "2405163", "3054261", "4312560", "5231064",
        "0642315", "1634052", "2610543", "3625401", "4651230", "5603124",
    ),
    "psca-8-3-3": (
        "04712563", "06432157", "16547203", "17630245", "26751043", "31526074",
        "37206154", "46051327", "53764201", "05672341", "07351462", "17453026",
        "25476301", "27410365", "34675102", "42351067", "50213476", "61234075",
    ),
    "psca-7-4-2": (
        "0123465", "0621435", "1045263", "1632045", "2045361", "2601534",
        "3015462", "3604521", "4015362", "4610352", "5103462", "5603214",
        "0254163", "0634125", "1254063", "1635402", "2103564", "2635104",
        "3214065", "3610254", "4123065", "4620351", "5214360", "5604123",
        "0351264", "0651432", "1432560", "1640253", "2341560", "2643015",
        "3402561", "3614520", "4351062", "4621530", "5341260", "5612340",
        "0432165", "0652341", "1530264", "1652043", "2530164", "2645103",
        "3520461", "3625401", "4520163", "4653012", "5402361", "5643210",
    ),
    "psca-4-3-2": (
        "0123", "1032", "2301", "3210", "0231", "1320",
        "2013", "3102", "0312", "1203", "2130", "3021",
    ),
    "psca-8-3-4": (
        "01234567", "10543276", "25076143", "34701652", "43610725", "52167034",
        "67452301", "76325410", "06253471", "17524360", "24017635", "35760124",
        "42671053", "53106742", "60435217", "71342506", "07245316", "16532407",
        "23061754", "32716045", "45607132", "54170623", "61423570", "70354261",
    ),
}

_E16 = (
    "(0 1)(2 3)(4 5)(6 7)(8 9)(10 11)(12 13)(14 15)",
    "(0 2)(1 3)(4 14)(5 15)(6 12)(7 13)(8 10)(9 11)",
    "(0 4)(1 5)(2 14)(3 15)(6 10)(7 11)(8 12)(9 13)",
    "(0 8)(1 9)(2 10)(3 11)(4 12)(5 13)(6 14)(7 15)",
)
_E16_F = "(1 8 9)(2 4 15 11 5 7)(3 12 6 10 13 14)"
_G96 = (_E16_F, "(0 4 7)(1 13 15)(2 3 10)(5 14 8)(6 9 12)")

_E32 = (
    "(0 1)(2 3)(4 5)(6 7)(8 9)(10 11)(12 13)(14 15)(16 17)(18 19)(20 21)(22 23)(24 25)(26 27)(28 29)(30 31)",
    "(0 2)(1 3)(4 28)(5 29)(6 30)(7 31)(8 10)(9 11)(12 20)(13 21)(14 22)(15 23)(16 18)(17 19)(24 26)(25 27)",
    "(0 4)(1 5)(2 28)(3 29)(6 26)(7 27)(8 14)(9 15)(10 22)(11 23)(12 18)(13 19)(16 20)(17 21)(24 30)(25 31)",
    "(0 8)(1 9)(2 10)(3 11)(4 14)(5 15)(6 12)(7 13)(16 24)(17 25)(18 26)(19 27)(20 30)(21 31)(22 28)(23 29)",
    "(0 16)(1 17)(2 18)(3 19)(4 20)(5 21)(6 22)(7 23)(8 24)(9 25)(10 26)(11 27)(12 28)(13 29)(14 30)(15 31)",
)
_E32_F1 = "(2 8)(3 9)(4 6)(5 7)(12 28)(13 29)(14 30)(15 31)(18 24)(19 25)(20 22)(21 23)"
_E32_F2 = "(2 12 24)(3 13 25)(4 6 10)(5 7 11)(8 18 28)(9 19 29)(20 22 26)(21 23 27)"
_E32_F3 = "(1 16 17)(3 18 19)(5 20 21)(6 7 23)(9 24 25)(11 26 27)(12 13 29)(15 30 31)"

_MATHIEU = {
    "m11": (11, ("(1,7)(2,8)(3,4)(6,9)", "(0,2,10,6)(3,7,5,8)")),
    "m12": (12, ("(2,11,8,6)(3,10,4,5)", "(0,1,2,3,4,5,11,6,7,10,8)",
                 "(0,9)(1,8)(2,5)(3,6)(4,7)(10,11)")),
    "m22": (22, ("(0,1,20,4,2)(3,8,9,12,13)(5,16,10,11,18)(6,7,15,19,14)",
                 "(0,13,16,5,10)(1,14,19,4,2)(3,18,7,12,15)(9,21,11,20,17)")),
    "m24": (24, ("(0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22)",
                 "(0,23)(1,22)(2,11)(3,15)(4,17)(5,9)(6,19)(7,13)(8,20)(10,16)(12,21)(14,18)",
                 "(2,16,9,6,8)(3,12,13,18,4)(7,17,10,11,22)(14,19,21,20,15)")),
}


@dataclass(frozen=True)
class _GroupEntry:
    t: int
    v: int
    lam: int
    label: str
    gens: tuple[str, ...] = field(default=())


# Strength-3 groups that are PSCAs (but not of strength 4).
_STRENGTH3 = [
    _GroupEntry(3, 4, 2, "A4", ("(1,2,3)", "(0,1,2)")),
    _GroupEntry(3, 6, 2, "A4", ("(0,5,4)(1,2,3)", "(0,5,1)(2,3,4)")),
    _GroupEntry(3, 6, 2, "D12", ("(0,5,4,2,1,3)", "(0,5)(1,2)(3,4)")),
    _GroupEntry(3, 6, 2, "D12", ("(0,4,5,2,1,3)", "(0,4)(1,2)(3,5)")),
    _GroupEntry(3, 6, 2, "D12", ("(0,3,1,5,4,2)", "(0,5)(1,3)(2,4)")),
    _GroupEntry(3, 6, 2, "D12", ("(0,3,1,4,5,2)", "(0,4)(1,3)(2,5)")),
    _GroupEntry(3, 6, 4, "C2xA4", ("(0,5,1,2,3,4)", "(0,5,4)(1,2,3)")),
    _GroupEntry(3, 6, 4, "S4", ("(0,2)(1,3)(4,5)", "(0,4,5)(1,3,2)")),
    _GroupEntry(3, 6, 4, "S4", ("(0,2)(1,3)(4,5)", "(0,4,5)(1,2,3)")),
    _GroupEntry(3, 6, 4, "S4", ("(0,5)(1,3)(2,4)", "(0,2,4)(1,3,5)")),
    _GroupEntry(3, 6, 4, "S4", ("(1,3)(4,5)", "(0,1,5)(2,4,3)")),
    _GroupEntry(3, 6, 4, "S4", ("(1,3)(2,4)", "(0,1,4)(2,3,5)")),
    _GroupEntry(3, 8, 4, "SL(2,3)", ("(0,7,4,2)(1,5,3,6)", "(0,7,1)(2,3,4)")),
    _GroupEntry(3, 8, 4, "SL(2,3)", ("(0,7,6,4)(1,3,2,5)", "(0,7,3)(4,5,6)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,4,2)(1,7,3,6)", "(0,7,4)(1,3,2)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,4,2)(1,6,3,7)", "(0,7,4)(1,3,5)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,6,3)(1,4,7,2)", "(0,7,6)(2,4,5)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,7,3)(1,4,6,2)", "(0,7,6)(2,5,4)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,7,4)(1,3,6,2)", "(0,7,6)(2,5,3)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,5,6,4)(1,3,7,2)", "(0,7,6)(2,3,5)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,6,4,3)(1,7,5,2)", "(0,5,4)(2,7,6)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,7,3,6)(1,2,4,5)", "(0,5,3)(1,4,7)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,7,3,6)(1,5,4,2)", "(0,5,3)(1,4,6)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,7,4,3)(1,6,5,2)", "(0,5,4)(2,6,7)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,7,4,6)(1,3,5,2)", "(0,5,4)(2,3,7)")),
    _GroupEntry(3, 8, 4, "S4", ("(0,7,5,2)(1,6,4,3)", "(0,5,4)(2,3,6)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,4,7)(2,5,3)", "(0,1)(2,7)(3,6)(4,5)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,4,6)(2,5,3)", "(0,1)(2,6)(3,7)(4,5)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,2,5)(4,7,6)", "(0,1)(2,7)(3,6)(4,5)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,2,5)(4,6,7)", "(0,1)(2,6)(3,7)(4,5)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,6,7)(2,5,4)", "(0,2)(1,5)(3,6)(4,7)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,6,7)(2,4,5)", "(0,2)(1,5)(3,7)(4,6)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,6,7)(2,5,3)", "(0,2)(1,5)(3,7)(4,6)")),
    _GroupEntry(3, 8, 4, "C2xA4", ("(1,6,7)(2,3,5)", "(0,2)(1,5)(3,6)(4,7)")),
    _GroupEntry(3, 12, 6, "C6xS3", ("(0,11,9,10,1,4)(2,7,6,3,8,5)", "(0,8,9,2,1,6)(3,4,5,11,7,10)")),
    _GroupEntry(3, 12, 6, "S3xS3", ("(0,11,9,10,1,4)(2,5,8,3,6,7)", "(0,8,9,2,1,6)(3,4,7,10,5,11)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,10,11)", "(0,2,4)(1,10,8)(3,9,7)(5,11,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,11,10)", "(0,2,4)(1,11,8)(3,9,7)(5,10,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,7,11)", "(0,2,4)(1,7,8)(3,9,10)(5,11,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,7,10)", "(0,2,4)(1,7,8)(3,9,11)(5,10,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,11,7)", "(0,2,4)(1,11,8)(3,9,10)(5,7,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(2,5,9)(3,6,8)(4,10,7)", "(0,2,4)(1,10,8)(3,9,11)(5,7,6)")),
    _GroupEntry(3, 12, 6, "C3xA4", ("(1,7,9)(2,6,5)(4,10,8)", "(0,1,8)(2,7,10)(3,5,9)(4,6,11)")),
    _GroupEntry(3, 14, 7, "C7:C6", ("(1,4,7)(2,11,5)(3,9,13)(6,8,12)",
                                    "(0,2)(1,11)(3,10)(4,8)(5,13)(6,7)(9,12)")),
    _GroupEntry(3, 14, 7, "C7:C6", ("(1,4,7)(2,11,5)(3,9,12)(6,8,13)",
                                    "(0,2)(1,11)(3,10)(4,8)(5,12)(6,7)(9,13)")),
    _GroupEntry(3, 16, 16, "(E16:C2):C3", _G96),
    _GroupEntry(3, 19, 19, "C19:C6", ("(1,11,5,18,15,9)(2,7,12,8,3,13)(4,6,10,14,16,17)",
                                      "(0,1,2,3,4,13,16,5,11,10,17,15,9,6,12,14,7,8,18)")),
]

# Strength-4 groups that are PSCAs (but not of strength 5).
_STRENGTH4 = [
    _GroupEntry(4, 6, 1, "S4", ("(1,3)(4,5)", "(0,1,4)(2,5,3)")),
    _GroupEntry(4, 6, 2, "C2xS4", ("(0,5,2,1)", "(0,1,3,2,5,4)")),
    _GroupEntry(4, 7, 7, "PSL(3,2)", ("(0,2,3,4,6,5,1)", "(0,5,4)(2,6,3)")),
    _GroupEntry(4, 8, 56, "E8:PSL(3,2)", ("(0,7,4,2,3,1,5)", "(0,1,3,4)(2,6,7,5)")),
    _GroupEntry(4, 9, 18, "((E9:Q8):C3):C2", ("(0,8)(1,3)(4,5)", "(0,3,8)(1,6,4)(2,7,5)")),
    _GroupEntry(4, 10, 30, "S6", ("(0,7)(2,9)(3,4)", "(0,7,5,9,1)(2,3,6,8,4)")),
    _GroupEntry(4, 10, 30, "A6.C2", ("(0,7,3)(1,2,6)(4,8,5)", "(0,5,1,6,2,4,7,3)(8,9)")),
    _GroupEntry(4, 12, 18, "((E9:Q8):C3):C2", ("(2,8)(3,11)(6,9)(7,10)", "(0,1,9)(2,4,11)(3,7,5)(6,10,8)")),
    _GroupEntry(4, 13, 234, "PSL(3,3)", ("(3,9)(5,7)(8,10)(11,12)", "(0,1,2,3)(4,11,9,8)(5,12)(6,10)")),
    _GroupEntry(4, 21, 5040, "PSL(3,4):S3", ("(0,16,8,9)(1,4,3,20,5,13,18,19)(2,6,10,7,14,17,11,12)",
                                            "(0,17,7,11,10,5,4,19)(1,2,16,14,15,9,12,3)(8,13,18,20)")),
]


def _group_entries() -> dict[str, _GroupEntry]:
    out = {}
    seen = Counter()
    for e in _STRENGTH3 + _STRENGTH4:
        key = (e.t, e.v, e.lam)
        seen[key] += 1
        out[f"grp-{e.t}-{e.v}-{e.lam}-{seen[key]}"] = e
    return out


GROUP_TABLE = _group_entries()


def _spec(v: int, cycles: Sequence[str], name: str) -> GroupSpec:
    return GroupSpec.from_cycles(v, cycles, name)


def _union(*parts: Iterable[Permutation]) -> list[Permutation]:
    return [r for part in parts for r in part]


def e16_construction() -> PermArray:
    """Union of the right cosets ``G f^i`` for i < 6."""
    G = close(_spec(16, _E16, "e16"))
    f = parse_cycles(_E16_F, 16)
    out = []
    h = identity(16)
    for _ in range(6):
        out.extend(coset(G, h, "right").rows)
        h = compose(h, f)
    return PermArray(16, tuple(out))


def e32_construction(final_side: str = "left") -> PermArray:
    """``G192`` together with its two cosets by the order-3 automorphism f3.

    ``final_side="right"`` uses right cosets in the last step instead.
    """
    G32 = close(_spec(32, _E32, "e32"))
    f1, f2, f3 = (parse_cycles(c, 32) for c in (_E32_F1, _E32_F2, _E32_F3))
    G64 = set(G32.elements) | {compose(g, f1) for g in G32.elements}
    G192 = G64 | {compose(g, f2) for g in G64} | {compose(compose(g, f2), f2) for g in G64}
    G = PermGroup(32, frozenset(G192))
    f3sq = compose(f3, f3)
    rows = _union(G192, coset(G, f3, final_side).rows, coset(G, f3sq, final_side).rows)
    return PermArray(32, tuple(rows))


def builtin_names() -> list[str]:
    names = list(_ARRAYS) + ["psca-16-3-16", "psca-32-3-96", "e16", "e16-f", "e32",
                             "e32-f1", "e32-f2", "e32-f3", "g96"]
    return names + list(_MATHIEU) + list(GROUP_TABLE)


def builtin(name: str):
    """Named arrays (:class:`PermArray`), groups (:class:`GroupSpec`) and
    automorphisms (a single-generator :class:`GroupSpec`)."""
    if name in _ARRAYS:
        return _array(*_ARRAYS[name])
    if name == "psca-16-3-16":
        return e16_construction()
    if name == "psca-32-3-96":
        return e32_construction()
    simple = {
        "e16": (16, _E16), "e16-f": (16, (_E16_F,)), "g96": (16, _G96),
        "e32": (32, _E32), "e32-f1": (32, (_E32_F1,)), "e32-f2": (32, (_E32_F2,)),
        "e32-f3": (32, (_E32_F3,)),
    }
    if name in simple:
        v, gens = simple[name]
        return _spec(v, gens, name)
    if name in _MATHIEU:
        v, gens = _MATHIEU[name]
        return _spec(v, gens, name)
    if name in GROUP_TABLE:
        e = GROUP_TABLE[name]
        return _spec(e.v, e.gens, e.label)
    raise InputError(f"unknown built-in {name!r}; known: {', '.join(builtin_names())}")
