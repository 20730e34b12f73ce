from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psca.core import (
    InputError,
    PermArray,
    delete_symbol,
    distribution_vector,
    distribution_vectors,
    symmetric_group,
    verify,
)
from psca.distributions import (
    DistributionVector,
    binomial_identity_holds,
    compatible,
    divisibility_check,
    enumerate_feasible,
    filter_chain,
    is_feasible,
    palindrome_check,
    prime_class_check,
    subset_profile,
)
from psca.groups import builtin
from reference_values import FEASIBLE

PARAMS_SMALL = [(v, t, lam) for t in (2, 3, 4) for v in range(t, 7) for lam in (1, 2)]


def dv(counts, t, lam):
    return DistributionVector(tuple(counts), t, lam)


def compositions(n: int, k: int) -> np.ndarray:
    """All nonnegative integer k-vectors summing to n (stars and bars)."""
    m = n + k - 1
    bars = np.fromiter((b for c in combinations(range(m), k - 1) for b in c), dtype=np.int64)
    bars = bars.reshape(-1, k - 1)
    edges = np.hstack([np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), m)])
    return np.diff(edges, axis=1) - 1


@lru_cache(maxsize=None)
def brute_feasible(v: int, t: int, lam: int) -> tuple[tuple[int, ...], ...]:
    n = math.factorial(t) * lam
    D = compositions(n, v)
    J = np.arange(v)
    ok = np.ones(len(D), dtype=bool)
    for s in range(1, t):
        ok &= v * (D @ J ** s) == n * int((J ** s).sum())
    return tuple(tuple(int(a) for a in row) for row in D[ok])


def chain_oracle(v: int, t: int, lam: int) -> set[tuple[int, ...]]:
    """Survivors by pairwise compatibility, level by level."""
    alive = set(enumerate_feasible(t, t, lam).vectors)
    for u in range(t + 1, v + 1):
        alive = {d for d in enumerate_feasible(u, t, lam).vectors
                 if any(compatible(dv(d, t, lam), dv(e, t, lam)) for e in alive)}
    return alive


# -- binomial identity ---------------------------------------------------------

@pytest.mark.parametrize("v,t,lam", [(4, 3, 2), (6, 3, 1), (6, 4, 2), (5, 5, 1)])
def test_binomial_identity_uniform(v, t, lam):
    n = math.factorial(t) * lam
    d = dv([n // v] * v, t, lam)
    assert all(binomial_identity_holds(d, i) for i in range(t))


def test_binomial_identity_printed_array():
    d = dv(distribution_vector(builtin("psca-7-3-2"), 0), 3, 2)
    lhs = 2 * math.factorial(6) // math.factorial(4)
    assert lhs == 60
    assert binomial_identity_holds(d, 0)


def test_binomial_identity_direct_evaluation():
    d = dv((0, 0, 6, 0, 0), 3, 1)
    lhs = math.factorial(4) // math.factorial(2)
    rhs = [6 * math.comb(2, i) * math.comb(2, 2 - i) for i in range(3)]
    assert (lhs, rhs) == (12, [6, 24, 6])
    assert [binomial_identity_holds(d, i) for i in range(3)] == [False, False, False]
    with pytest.raises(InputError):
        binomial_identity_holds(d, 3)


@pytest.mark.parametrize("v,t,lam", PARAMS_SMALL)
def test_power_sums_equivalent_to_binomial_identities(v, t, lam):
    n = math.factorial(t) * lam
    D = compositions(n, v)
    J = np.arange(v)
    power_ok = np.ones(len(D), dtype=bool)
    for s in range(1, t):
        power_ok &= v * (D @ J ** s) == n * int((J ** s).sum())
    binom_ok = np.ones(len(D), dtype=bool)
    lhs = lam * math.factorial(v - 1) // math.factorial(v - t)
    for i in range(t):
        B = np.array([math.comb(j, i) * math.comb(v - 1 - j, t - 1 - i) for j in range(v)])
        binom_ok &= D @ B == lhs
    assert np.array_equal(power_ok, binom_ok)
    # the library predicates agree on a deterministic sample
    for row in D[:: max(1, len(D) // 300)]:
        d = dv(row, t, lam)
        assert is_feasible(d) == all(binomial_identity_holds(d, i) for i in range(t))


# -- feasibility -------------------------------------------------------------

def test_is_feasible_examples():
    assert is_feasible(dv((3, 6, 0, 6, 3), 3, 3))
    assert is_feasible(dv((4, 4, 4, 4, 4, 4), 3, 4))
    assert not is_feasible(dv((0, 0, 6, 0, 0), 3, 1))


def test_distribution_vector_validation():
    with pytest.raises(InputError):
        dv((1, 2, 2), 3, 1)
    with pytest.raises(InputError):
        dv((7, -1, 0), 3, 1)
    with pytest.raises(InputError):
        dv((6,), 3, 1)


def test_enumerate_examples():
    assert len(enumerate_feasible(5, 3, 1).vectors) == 3
    assert enumerate_feasible(4, 3, 3).vectors == ((3, 9, 0, 6), (4, 6, 3, 5), (5, 3, 6, 4), (6, 0, 9, 3))
    assert len(enumerate_feasible(6, 3, 1).vectors) == 1
    assert len(enumerate_feasible(8, 5, 1).vectors) == 127
    with pytest.raises(InputError):
        enumerate_feasible(2, 3, 1)


@pytest.mark.parametrize("v,t,lam", PARAMS_SMALL + [(7, 3, 1), (7, 3, 2), (8, 3, 1), (7, 4, 1)])
def test_enumeration_matches_brute_force(v, t, lam):
    assert enumerate_feasible(v, t, lam).vectors == brute_feasible(v, t, lam)


@pytest.mark.parametrize("v,t,lam", [(v, t, lam) for (v, t, lam) in FEASIBLE if v <= 9 and lam <= 2])
def test_enumeration_closed_under_reversal(v, t, lam):
    vecs = set(enumerate_feasible(v, t, lam).vectors)
    assert {d[::-1] for d in vecs} == vecs


def test_no_531_vector_uses_middle_column():
    assert all(d[2] == 0 for d in enumerate_feasible(5, 3, 1).vectors)


# -- modular, palindrome, divisibility ----------------------------------------

def test_prime_class_examples():
    assert prime_class_check(dv((3, 6, 0, 6, 3), 3, 3))
    assert prime_class_check(dv((0, 0, 6, 0, 0), 3, 1))
    for lam in (1, 2, 3):
        assert all(d[2] % 3 == 0 for d in enumerate_feasible(5, 3, lam).vectors)


def test_prime_class_guards():
    with pytest.raises(InputError):
        prime_class_check(dv((3, 6, 0, 6, 3), 3, 3), 4)
    with pytest.raises(InputError):
        prime_class_check(dv((4, 4, 4, 4, 4, 4), 3, 4))
    with pytest.raises(InputError):
        prime_class_check(dv((6, 6, 6, 6, 6), 4, 1))


def test_palindrome_examples():
    assert all(palindrome_check(dv(d, 4, 1)) for d in enumerate_feasible(5, 4, 1).vectors)
    assert palindrome_check(dv((24,) * 5, 4, 5))
    with pytest.raises(InputError):
        palindrome_check(dv((6, 0, 9, 3), 3, 3))


def brute_psca_4_3_1() -> PermArray:
    pool = list(permutations(range(4)))
    seqs = list(permutations(range(4), 3))
    M = np.array([[all(p.index(a) < p.index(b) for a, b in zip(s, s[1:])) for s in seqs] for p in pool], dtype=int)
    for idx in combinations(range(24), 6):
        if (M[list(idx)].sum(axis=0) == 1).all():
            return PermArray(4, tuple(pool[i] for i in idx))
    raise AssertionError("no PSCA(4,3,1) found")


def test_divisibility_examples():
    x = brute_psca_4_3_1()
    assert verify(x, 3).lam == 1
    assert all(divisibility_check(dv(d, 3, 1)) for d in distribution_vectors(x))
    assert not divisibility_check(dv((1, 2, 2, 1), 3, 1))
    with pytest.raises(InputError):
        divisibility_check(dv((6, 6, 6, 6), 3, 4))


def test_subset_profile_brute_forced_array():
    x = brute_psca_4_3_1()
    for w in range(4):
        d = distribution_vector(x, w)
        for i in range(4):
            values = set(subset_profile(x, w, i).values())
            assert values == {d[i] // math.comb(3, i)}
            assert d[i] % math.comb(3, i) == 0


def test_subset_profile_small_cases():
    x = symmetric_group(4, 2)
    assert subset_profile(x, 1, 0) == {frozenset(): 12}
    for i in range(4):
        assert set(subset_profile(x, 2, i).values()) == {math.factorial(i) * math.factorial(3 - i) * 2}
    with pytest.raises(InputError):
        subset_profile(x, 5, 0)


@pytest.mark.parametrize("name,t", [("psca-7-3-2", 3), ("psca-8-3-3", 3), ("psca-7-4-2", 4),
                                    ("psca-4-3-2", 3), ("psca-8-3-4", 3)])
def test_printed_arrays_pass_every_necessary_condition(name, t):
    x = builtin(name)
    lam = verify(x, t).lam
    chain = set(filter_chain(x.v, t, lam).survivors)
    for counts in distribution_vectors(x):
        d = dv(counts, t, lam)
        assert is_feasible(d)
        assert counts in chain
        if t % 2 and x.v % t:
            assert prime_class_check(d)


# -- compatibility and chains --------------------------------------------------

def test_compatible_examples():
    assert compatible(dv((2, 6, 1, 1, 6, 2), 3, 3), dv((3, 6, 0, 6, 3), 3, 3))
    assert not compatible(dv((3, 6, 0, 6, 3), 3, 3), dv((3, 9, 0, 6), 3, 3))
    with pytest.raises(InputError):
        compatible(dv((3, 6, 0, 6, 3), 3, 3), dv((2, 6, 1, 1, 6, 2), 3, 3))


def test_compatible_uniform_chain():
    # S_5 is a PSCA(5,3,20); deleting a symbol leaves 5 copies of S_4
    x = symmetric_group(5, 1)
    y = delete_symbol(x, 4)
    d = dv(distribution_vector(x, 0), 3, 20)
    e = dv(distribution_vector(y, 0), 3, 20)
    assert d.counts == (24,) * 5 and e.counts == (30,) * 4
    assert compatible(d, e)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_deleting_a_symbol_gives_compatible_vectors(data):
    v = data.draw(st.integers(4, 7))
    rows = data.draw(st.lists(st.permutations(list(range(v))).map(tuple), min_size=6, max_size=6))
    x = PermArray(v, tuple(rows))
    w, u = data.draw(st.lists(st.integers(0, v - 1), min_size=2, max_size=2, unique=True))
    y = delete_symbol(x, u)
    w2 = w - (w > u)
    assert compatible(dv(distribution_vector(x, w), 3, 1), dv(distribution_vector(y, w2), 3, 1))


def test_filter_chain_examples():
    assert filter_chain(5, 3, 1).summary() == "feasible=3 survivors=2"
    assert len(filter_chain(7, 3, 1).survivors) == 0
    fs = filter_chain(6, 3, 3)
    assert (len(fs.survivors), len(fs.vectors)) == (32, 37)
    assert (2, 6, 1, 1, 6, 2) not in fs.survivors
    assert (3, 6, 0, 6, 3) not in filter_chain(5, 3, 3).survivors


def test_worked_example_compatibility():
    d = dv((2, 6, 1, 1, 6, 2), 3, 3)
    partners = [e for e in enumerate_feasible(5, 3, 3).vectors if compatible(d, dv(e, 3, 3))]
    assert partners == [(3, 6, 0, 6, 3)]
    e = dv((3, 6, 0, 6, 3), 3, 3)
    assert not any(compatible(e, dv(f, 3, 3)) for f in enumerate_feasible(4, 3, 3).vectors)


@pytest.mark.parametrize("v,t,lam", [(v, t, lam) for t in (3, 4) for lam in (1, 2, 3)
                                     for v in range(t, 9)])
def test_chain_matches_pairwise_oracle(v, t, lam):
    assert set(filter_chain(v, t, lam).survivors) == chain_oracle(v, t, lam)


@pytest.mark.parametrize("cell", sorted(c for c in FEASIBLE if c[0] <= 8))
def test_small_table_cells(cell):
    fs = filter_chain(*cell)
    assert (len(fs.survivors), len(fs.vectors)) == FEASIBLE[cell]
    assert set(fs.survivors) <= set(fs.vectors)
