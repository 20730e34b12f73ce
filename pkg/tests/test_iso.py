from __future__ import annotations

import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psca.core import PermArray, relabel, reverse, symmetric_group
from psca.groups import builtin
from psca.iso import automorphism_count, canonical_array, canonical_form, isomorphic, naive_canonical_form
from psca.search import build_catalogue


@st.composite
def arrays(draw, vmin=2, vmax=6, rows=7):
    v = draw(st.integers(vmin, vmax))
    perm = st.permutations(list(range(v))).map(tuple)
    return PermArray.from_rows(draw(st.lists(perm, min_size=1, max_size=rows)), v)


def relabellings(v):
    return st.permutations(list(range(v))).map(tuple)


def brute_automorphisms(x: PermArray) -> int:
    target = sorted(x.rows)
    n = 0
    for rows in (x.rows, reverse(x).rows):
        for sigma in permutations(range(x.v)):
            if sorted(tuple(sigma[a] for a in r) for r in rows) == target:
                n += 1
    return n


@pytest.fixture(scope="module")
def cat_4_3_2(checkpoint_dir):
    return build_catalogue(4, 3, 2, checkpoint_dir=checkpoint_dir)


# -- canonical form ------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(arrays())
def test_canonical_form_matches_naive_oracle(x):
    assert canonical_form(x) == naive_canonical_form(x)


def test_canonical_form_matches_oracle_on_catalogue(cat_4_3_2):
    for x in cat_4_3_2.classes:
        assert canonical_form(x) == naive_canonical_form(x)


@pytest.mark.parametrize("name", ["psca-7-3-2", "psca-4-3-2"])
def test_canonical_form_matches_oracle_on_printed_arrays(name):
    x = builtin(name)
    assert canonical_form(x) == naive_canonical_form(x)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_invariant_under_relabelling_and_reversal(data):
    x = data.draw(arrays(vmax=8, rows=10))
    sigma = data.draw(relabellings(x.v))
    y = relabel(x, sigma)
    assert canonical_form(y) == canonical_form(x)
    assert canonical_form(reverse(y)) == canonical_form(x)
    assert isomorphic(x, reverse(y))


@settings(max_examples=60, deadline=None)
@given(arrays(vmax=8, rows=10))
def test_canonical_form_is_idempotent(x):
    c = canonical_array(x)
    assert canonical_array(c) == c
    assert canonical_form(c) == canonical_form(x)


def test_catalogue_has_twelve_forms(cat_4_3_2):
    forms = {canonical_form(x) for x in cat_4_3_2.classes}
    assert len(forms) == 12
    a, b = cat_4_3_2.classes[:2]
    assert not isomorphic(a, b)


def test_different_row_counts_are_not_isomorphic():
    x = symmetric_group(3)
    y = PermArray(3, x.rows[:3])
    assert not isomorphic(x, y)
    assert not isomorphic(x, symmetric_group(3, 2))


def test_multiplicity_matters():
    p, q, r = (0, 1, 2, 3), (1, 0, 3, 2), (0, 2, 1, 3)
    assert not isomorphic(PermArray(4, (p, p, q)), PermArray(4, (p, q, r)))
    # swapping 0 and 1 exchanges p and q, so the multiplicities move with them
    assert isomorphic(PermArray(4, (p, p, q)), PermArray(4, (p, q, q)))


@settings(max_examples=25, deadline=None)
@given(st.lists(arrays(vmin=4, vmax=4, rows=3), min_size=2, max_size=8))
def test_partition_by_form_equals_partition_by_isomorphism(xs):
    by_form = {}
    for k, x in enumerate(xs):
        by_form.setdefault(canonical_form(x), set()).add(k)
    for k, x in enumerate(xs):
        same = {j for j, y in enumerate(xs) if isomorphic(x, y)}
        assert same == by_form[canonical_form(x)]


# -- automorphisms ---------------------------------------------------------------

@pytest.mark.parametrize("t,lam", [(3, 1), (4, 1), (3, 2)])
def test_symmetric_group_automorphisms(t, lam):
    assert automorphism_count(symmetric_group(t, lam)) == 2 * math.factorial(t)


def test_random_array_automorphisms_by_brute_force():
    rng = random.Random(7)
    rows = [tuple(rng.sample(range(7), 7)) for _ in range(12)]
    x = PermArray(7, tuple(rows))
    assert automorphism_count(x) == brute_automorphisms(x) == 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_automorphisms_match_brute_force_and_are_conjugation_invariant(data):
    x = data.draw(arrays(vmax=5, rows=6))
    sigma = data.draw(relabellings(x.v))
    n = automorphism_count(x)
    assert n == brute_automorphisms(x)
    assert automorphism_count(relabel(x, sigma)) == n


def test_printed_array_automorphisms():
    x = builtin("psca-7-3-2")
    assert automorphism_count(x) == brute_automorphisms(x)
