import random
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcmclosed import arith
from lcmclosed.arith import ONE, divides, factorize, gcd, lcm
from lcmclosed.bridge import (
    ChainError,
    NotUnionClosedError,
    PrimePowerSet,
    f_map,
    family_to_numset,
    g_map,
    numset_to_family,
    transport_table_from_family,
    transport_table_from_numset,
)
from lcmclosed.family import SetFamily, abundant_elements, is_union_closed, signature
from lcmclosed.numset import NotClosedError, abundant_divisors, is_gcd_closed, is_lcm_closed

from conftest import ints_of, ns, numsets, vectors

EX6 = [[], [1], [1, 2], [1, 2, 3], [4], [1, 4], [1, 2, 4], [1, 2, 3, 4]]


def test_f_examples():
    assert f_map(factorize(18)).values() == [2, 3, 9]
    assert f_map(factorize(16)).values() == [2, 4, 8, 16]
    assert f_map(ONE).powers == frozenset()


def test_g_examples():
    assert int(g_map(PrimePowerSet.from_values([2, 3, 9]))) == 18
    assert int(g_map(PrimePowerSet.from_values([2, 4, 8, 16]))) == 16
    assert g_map(PrimePowerSet(frozenset())) == ONE


@pytest.mark.parametrize("values, prime, missing", [
    ([2, 9], 3, [1]),
    ([2, 3, 27], 3, [2]),
    ([16], 2, [1, 2, 3]),
    ([2, 16], 2, [2, 3]),
    ([4, 16], 2, [1, 3]),
    ([8, 16], 2, [1, 2]),
    ([2, 4, 16], 2, [3]),
    ([4, 8, 16], 2, [1]),
])
def test_g_rejects_non_images(values, prime, missing):
    with pytest.raises(ChainError) as err:
        g_map(PrimePowerSet.from_values(values))
    assert err.value.prime == prime and err.value.missing == missing


def test_f_g_bijection_small():
    for n in range(1, 5001):
        v = factorize(n)
        s = f_map(v)
        assert g_map(s) == v and f_map(g_map(s)) == s
        assert len(s) == arith.sigma_ppe(v)


@given(vectors, vectors)
def test_lattice_identities_pairs(a, b):
    fa, fb = f_map(a), f_map(b)
    assert f_map(lcm(a, b)) == fa | fb
    assert f_map(gcd(a, b)) == fa & fb
    assert divides(a, b) == (fa <= fb)


@settings(max_examples=50, deadline=None)
@given(st.lists(vectors, min_size=2, max_size=6))
def test_lattice_identities_folds(vs):
    assert f_map(reduce(lcm, vs)) == reduce(lambda x, y: x | y, map(f_map, vs))
    assert f_map(reduce(gcd, vs)) == reduce(lambda x, y: x & y, map(f_map, vs))


def test_primes_are_singletons():
    for n in range(2, 3000):
        v = factorize(n)
        is_prime = all(n % d for d in range(2, int(n**0.5) + 1))
        assert (len(f_map(v)) == 1) == is_prime
        # inclusion-minimal among nonempty images: no image of a proper divisor > 1 sits below
        minimal = not any(f_map(factorize(d)) <= f_map(v) for d in range(2, n) if n % d == 0)
        assert minimal == is_prime


@settings(max_examples=60, deadline=None)
@given(numsets)
def test_corollary_closedness(N):
    images = [f_map(v).powers for v in N.members]
    union_closed = all(a | b in images for a in images for b in images)
    inter_closed = all(a & b in images for a in images for b in images)
    assert union_closed == is_lcm_closed(N)
    assert inter_closed == is_gcd_closed(N)


def test_family_to_numset_example6():
    S = SetFamily.from_sets(EX6)
    assert ints_of(family_to_numset(S)) == {1, 2, 6, 30, 7, 14, 42, 210}
    assert ints_of(family_to_numset(SetFamily.from_sets([[]], []))) == {1}
    assert ints_of(family_to_numset(SetFamily.from_sets([[1], [2], [1, 2]]))) == {2, 3, 6}
    with pytest.raises(NotUnionClosedError):
        family_to_numset(SetFamily.from_sets([[1], [2]]))


def test_numset_to_family_reverse_example():
    S = numset_to_family(ns(1, 2, 3, 4, 6, 8, 12, 24))
    expected = [[], ["2"], ["3"], ["2", "2^2"], ["2", "3"], ["2", "2^2", "2^3"], ["2", "2^2", "3"],
                ["2", "2^2", "2^3", "3"]]
    assert {frozenset(s) for s in S.as_sets()} == {frozenset(e) for e in expected}
    assert S.universe.labels == ("2", "2^2", "2^3", "3")
    one = numset_to_family(ns(1))
    assert len(one.universe) == 0 and one.members == frozenset({0})
    assert {frozenset(s) for s in numset_to_family(ns(2, 3, 6)).as_sets()} == {
        frozenset({"2"}), frozenset({"3"}), frozenset({"2", "3"})}
    with pytest.raises(NotClosedError):
        numset_to_family(ns(2, 3))


def test_example_families_are_isomorphic():
    # relabelling 1->2, 2->2^2, 3->2^3, 4->3 maps the two illustration families onto each other
    a = SetFamily.from_sets(EX6)
    b = numset_to_family(ns(1, 2, 3, 4, 6, 8, 12, 24))
    relabel = {"1": "2", "2": "2^2", "3": "2^3", "4": "3"}
    assert {frozenset(relabel[x] for x in s) for s in a.as_sets()} == {frozenset(s) for s in b.as_sets()}
    assert signature(a) == signature(b)


def test_transport_tables():
    rows = transport_table_from_family(SetFamily.from_sets(EX6))
    assert [(r.element, r.prime_power, r.family_count, r.numset_count) for r in rows] == [
        ("1", "2", 6, 6), ("2", "3", 4, 4), ("3", "5", 2, 2), ("4", "7", 4, 4)]
    rows = transport_table_from_numset(ns(1, 2, 3, 4, 6, 8, 12, 24))
    assert all(r.family_count == r.numset_count for r in rows)
    assert rows[0].family_count == 6


def test_universe_too_large_for_sieve():
    from lcmclosed.family import UniverseTooLargeError, Universe

    S = SetFamily(Universe.range(12), frozenset({0, 1 << 11}))
    with arith.sieve_cap(5):
        with pytest.raises(UniverseTooLargeError):
            family_to_numset(S)


def random_union_closed(rng, n):
    from lcmclosed.family import Universe, union_closure

    seeds = {rng.getrandbits(n) for _ in range(rng.randint(1, 5))}
    return union_closure(SetFamily(Universe.range(n), frozenset(seeds)))


def test_transport_randomised():
    rng = random.Random(7)
    for _ in range(200):
        S = random_union_closed(rng, rng.randint(1, 7))
        N = family_to_numset(S)
        assert is_lcm_closed(N) and len(N) == len(S)
        fa, na = abundant_elements(S), abundant_divisors(N)
        assert fa.conjecture_holds == na.conjecture1_holds
        back = numset_to_family(N)
        assert is_union_closed(back) and signature(back) == signature(S)
