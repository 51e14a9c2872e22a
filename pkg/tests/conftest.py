import math
from functools import reduce
from itertools import combinations

from hypothesis import strategies as st

from lcmclosed.arith import ExponentVector
from lcmclosed.numset import NumberSet

small_ints = st.integers(min_value=1, max_value=10**6)
vectors = st.dictionaries(
    st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=4), max_size=6
).map(ExponentVector.from_mapping)
numsets = st.frozensets(vectors, min_size=1, max_size=6).map(NumberSet)


def trial_division_primes(limit):
    """Primes up to ``limit`` by plain trial division (independent of the sieve)."""
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def brute_lcm_closure(ints):
    """Every lcm of a nonempty subset, by direct enumeration."""
    ints = list(ints)
    return {reduce(math.lcm, sub) for r in range(1, len(ints) + 1) for sub in combinations(ints, r)}


def brute_gcd_closure(ints):
    ints = list(ints)
    return {reduce(math.gcd, sub) for r in range(1, len(ints) + 1) for sub in combinations(ints, r)}


def ints_of(N):
    return set(N.ints())


def ns(*xs):
    return NumberSet.of(*xs)
