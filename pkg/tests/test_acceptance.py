"""Exit criteria.  Every check is exact; each criterion prints one PASS/FAIL line."""
import math
import random
import subprocess
import sys
import time
from collections import Counter
from functools import reduce
from pathlib import Path

import pytest

from lcmclosed import arith
from lcmclosed.arith import PrimePower, divides, factorize, gcd, lcm
from lcmclosed.bridge import ChainError, PrimePowerSet, f_map, family_to_numset, g_map, numset_to_family
from lcmclosed.cases import known_cases_family, known_cases_numset
from lcmclosed.family import SetFamily, abundant_elements, column_counts, is_union_closed
from lcmclosed.numset import (
    NumberSet,
    abundant_divisors,
    abundant_general_divisors,
    dual,
    dual_map,
    is_gcd_closed,
    is_lcm_closed,
    nonabundant_prime_powers,
    normalize,
    period_set,
    prime_power_counts,
    proposition3_witness,
)
from lcmclosed.search import random_closed_numset, random_permutation, random_union_closed_family, verify_exhaustive

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
EX6 = [[], [1], [1, 2], [1, 2, 3], [4], [1, 4], [1, 2, 4], [1, 2, 3, 4]]


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, elapsed, budget=None):
        timing = f"{elapsed:.2f}s" + (f" (< {budget}s)" if budget else "")
        line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}  {timing}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def ints(N):
    return set(N.ints())


def ns(*xs):
    return NumberSet.of(*xs)


def test_criterion_1_golden_examples(verdict):
    t0 = time.perf_counter()
    checks = []
    # closedness verdicts
    checks.append(is_lcm_closed(ns(1, 2, 3, 4, 6, 12)) and is_gcd_closed(ns(1, 2, 3, 4, 6, 12)))
    checks.append(is_lcm_closed(ns(2, 3, 4, 6, 12)) and not is_gcd_closed(ns(2, 3, 4, 6, 12)))
    checks.append(not is_lcm_closed(ns(1, 2, 3, 4, 6, 8, 12)) and is_gcd_closed(ns(1, 2, 3, 4, 6, 8, 12)))
    # abundant prime 2 in 6 of 8
    r = abundant_divisors(ns(1, 2, 3, 4, 6, 8, 12, 24))
    checks.append(r.prime_power_counts[PrimePower(1)] == 6 and r.total == 8 and r.witness == PrimePower(1))
    # abundant divisors of the squarefree example
    g = abundant_general_divisors(ns(6, 10, 14, 30, 42, 70, 210), 100)
    checks.append({2, 3, 5, 6, 7, 10, 14} <= set(g.values()))
    # 5 divides only 30
    r = abundant_divisors(ns(2, 6, 30))
    checks.append(r.prime_power_counts[PrimePower(3)] == 1 and PrimePower(3) not in r.abundant_prime_powers)
    # f and g
    checks.append(f_map(factorize(18)).values() == [2, 3, 9])
    checks.append(f_map(factorize(16)).values() == [2, 4, 8, 16])
    checks.append(int(g_map(PrimePowerSet.from_values([2, 3, 9]))) == 18)
    checks.append(int(g_map(PrimePowerSet.from_values([2, 4, 8, 16]))) == 16)
    rejected = 0
    for bad in ([2, 9], [2, 3, 27], [16], [2, 16], [4, 16], [8, 16], [2, 4, 16], [4, 8, 16]):
        try:
            g_map(PrimePowerSet.from_values(bad))
        except ChainError:
            rejected += 1
    checks.append(rejected == 8)
    # family example
    S = SetFamily.from_sets(EX6)
    checks.append(set(abundant_elements(S).abundant_elements) == {"1", "2", "4"})
    checks.append(ints(family_to_numset(S)) == {1, 2, 6, 30, 7, 14, 42, 210})
    fam = numset_to_family(ns(1, 2, 3, 4, 6, 8, 12, 24))
    expected = [[], ["2"], ["3"], ["2", "2^2"], ["2", "3"], ["2", "2^2", "2^3"], ["2", "2^2", "3"],
                ["2", "2^2", "2^3", "3"]]
    checks.append({frozenset(s) for s in fam.as_sets()} == {frozenset(e) for e in expected})
    # non-abundant prime powers
    na = nonabundant_prime_powers(ns(1, 2, 3, 4, 6, 8, 12))
    checks.append({pp.value for pp in na.nonabundant_prime_powers} == {4, 8, 3})
    # dual with h(1) = 24, h(12) = 2
    N = ns(1, 2, 3, 4, 6, 8, 12)
    h = {int(k): int(v) for k, v in dual_map(N).items()}
    checks.append(ints(dual(N)) == {2, 3, 4, 6, 8, 12, 24} and h[1] == 24 and h[12] == 2)
    # shifted prime powers 2^2, 2, 3
    shifted = [proposition3_witness(N, "gcd-to-lcm", PrimePower(*pq)).shifted.value
               for pq in ((1, 2), (1, 3), (2, 1))]
    checks.append(shifted == [4, 2, 3])
    # normalize, dual, double dual
    M = ns(6, 10, 14, 30, 42, 70, 210)
    checks.append(ints(normalize(M)) == {3, 5, 7, 15, 21, 35, 105})
    checks.append(ints(dual(M)) == {1, 3, 5, 7, 15, 21, 35})
    checks.append(ints(dual(dual(M))) == {3, 5, 7, 15, 21, 35, 105})
    elapsed = time.perf_counter() - t0
    verdict(1, f"golden worked examples ({sum(checks)}/{len(checks)} checks)", all(checks) and elapsed < 1, elapsed, 1)


def test_criterion_2_bijection_and_lattice_identities(verdict):
    t0 = time.perf_counter()
    ok = True
    for n in range(1, 100_001):
        v = factorize(n)
        back = g_map(f_map(v))
        ok = ok and back == v and int(back) == n
    rng = random.Random(20240602)
    failures = 0
    with arith.sieve_cap(100_000):
        for _ in range(10_000):
            m = rng.randint(2, 5)
            xs = [rng.randrange(1, 10**6) for _ in range(m)]
            vs = [factorize(x) for x in xs]
            fs = [f_map(v) for v in vs]
            L, G = reduce(lcm, vs), reduce(gcd, vs)
            if int(L) != math.lcm(*xs) or int(G) != math.gcd(*xs):
                failures += 1
            if f_map(L) != reduce(lambda a, b: a | b, fs) or f_map(G) != reduce(lambda a, b: a & b, fs):
                failures += 1
            a, b = xs[0], xs[1]
            # bias half the pairs towards divisibility so both sides of the equivalence occur
            if rng.random() < 0.5:
                b = a * rng.randint(1, 10**6 // a) if a < 10**6 // 2 else a
            va, vb = factorize(a), factorize(b)
            if divides(va, vb) != (f_map(va) <= f_map(vb)) or divides(va, vb) != (b % a == 0):
                failures += 1
            is_prime = a > 1 and all(a % d for d in range(2, math.isqrt(a) + 1))
            if (len(f_map(va)) == 1) != is_prime:
                failures += 1
    for n in range(1, 10_001):
        is_prime = n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))
        if (len(f_map(factorize(n))) == 1) != is_prime:
            failures += 1
    elapsed = time.perf_counter() - t0
    verdict(2, f"g.f = id on 1..100000; lcm/gcd/divides/prime identities ({failures} failures)",
            ok and failures == 0 and elapsed < 30, elapsed, 30)


def _random_closed_sets(kind, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(random_closed_numset(rng.getrandbits(32), size=rng.randint(1, 10),
                                        max_prime_index=rng.randint(1, 5), max_exponent=rng.randint(1, 3),
                                        closure=kind, max_members=64))
    return out


def test_criterion_3_duality_laws(verdict):
    t0 = time.perf_counter()
    failures = []
    witnesses = largest = 0
    for kind in ("lcm", "gcd"):
        for N in _random_closed_sets(kind, 1000, {"lcm": 11, "gcd": 12}[kind]):
            D = dual(N)
            largest = max(largest, len(N))
            if len(N) > 64 or len(D) != len(N):
                failures.append(("size", N))
            if dual(D) != normalize(N) or dual(normalize(N)) != D:
                failures.append(("laws", N))
            if kind == "gcd" and not is_lcm_closed(D):
                failures.append(("swap", N))
            if kind == "lcm" and not is_gcd_closed(D):
                failures.append(("swap", N))
            if len(N) < 2:
                continue
            counts = prime_power_counts(N)
            total = len(N)
            direction = "gcd-to-lcm" if kind == "gcd" else "lcm-to-gcd"
            if kind == "gcd":
                eligible = [pp for pp, c in counts.items() if 1 <= c and 2 * c <= total]
            else:
                eligible = [pp for pp, c in counts.items() if 2 * c >= total and c < total]
            if not eligible:
                failures.append(("no witness", N))
            for pp in eligible:
                w = proposition3_witness(N, direction, pp)
                sc = sum(1 for v in D.members if divides(w.shifted.as_vector(), v))
                good = 2 * sc >= total if kind == "gcd" else (1 <= sc and 2 * sc <= total)
                witnesses += 1
                if not good:
                    failures.append(("witness", N, pp))
    elapsed = time.perf_counter() - t0
    verdict(3, f"duality laws on 2x1000 closed sets (largest {largest}), {witnesses} shifted witnesses "
               f"({len(failures)} failures)",
            not failures and elapsed < 60, elapsed, 60)


def _random_families():
    rng = random.Random(4242)
    return [random_union_closed_family(rng.getrandbits(32), universe_size=rng.randint(1, 8),
                                       generators=rng.randint(1, 6)) for _ in range(1000)]


def test_criterion_4_transport_through_bridge(verdict):
    t0 = time.perf_counter()
    failures = 0
    for S in _random_families():
        N = family_to_numset(S)
        fam, num = abundant_elements(S), abundant_divisors(N)
        if fam.conjecture_holds != num.conjecture1_holds:
            failures += 1
        cols = column_counts(S)
        primes = [num.prime_power_counts.get(PrimePower(i + 1), 0) for i in range(len(S.universe))]
        if cols != primes or Counter(fam.element_counts.values()) != Counter(
                c for pp, c in num.prime_power_counts.items()):
            failures += 1
        back = numset_to_family(N)
        if sorted(m.bit_count() for m in back.members) != sorted(m.bit_count() for m in S.members):
            failures += 1
        if not is_union_closed(back) or len(back) != len(S):
            failures += 1
    elapsed = time.perf_counter() - t0
    verdict(4, f"transport through g on 1000 union-closed families ({failures} failures)",
            failures == 0 and elapsed < 60, elapsed, 60)


def test_criterion_5_exhaustive(verdict):
    t0 = time.perf_counter()
    serial = verify_exhaustive(4)
    parallel = verify_exhaustive(4, workers=4)
    three = verify_exhaustive(3)
    elapsed = time.perf_counter() - t0
    ok = (serial.scanned == 65_536 and serial.candidates == 65_536 and serial.violations == []
          and serial.applicable_count > 0 and serial.to_json() == parallel.to_json()
          and serial.transport_failures == [] and serial.transport_checks > 0
          and three.union_closed_count == 121 and three.violations == [])
    verdict(5, f"exhaustive n=4: {serial.union_closed_count} union-closed, 0 violations, "
               f"serial == 4 workers; n=3 count {three.union_closed_count}", ok and elapsed < 10, elapsed, 10)


def test_criterion_6_known_case_consistency(verdict):
    t0 = time.perf_counter()
    mismatches = 0
    checked = 0
    for S in _random_families():
        if not S.union:
            continue
        checked += 1
        if known_cases_family(S).satisfied() != known_cases_numset(family_to_numset(S)).satisfied():
            mismatches += 1
    ex6 = known_cases_family(SetFamily.from_sets(EX6)).satisfied()
    ok = mismatches == 0 and ex6 == {1: True, 2: True, 3: True, 4: False, 5: False}
    elapsed = time.perf_counter() - t0
    verdict(6, f"known cases agree on {checked} families ({mismatches} mismatches); example family {ex6}",
            ok, elapsed)


def _iterate_period(sigma, A):
    n = 1
    while True:
        pts = list(A)
        for _ in range(n):
            pts = [sigma(x) for x in pts]
        if pts == list(A):
            return n
        n += 1


def test_criterion_7_period_generator(verdict):
    t0 = time.perf_counter()
    rng = random.Random(777)
    failures = 0
    for _ in range(500):
        sigma = random_permutation(rng, rng.randint(1, 12))
        A = sorted(rng.sample(range(1, sigma.size + 1), rng.randint(1, sigma.size)))
        P = period_set(sigma, A)
        if not is_lcm_closed(P) or max(P.ints()) != _iterate_period(sigma, A):
            failures += 1
    elapsed = time.perf_counter() - t0
    verdict(7, f"period sets of 500 random permutations ({failures} failures)",
            failures == 0 and elapsed < 10, elapsed, 10)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "lcmclosed", *args], capture_output=True, text=True, cwd=ROOT)


def test_criterion_8_cli_contract(verdict):
    import json

    t0 = time.perf_counter()
    checks = []
    a = _cli("check", "numset", '[ "1","2","3","4","6","8","12","24" ]')
    out = json.loads(a.stdout)
    checks.append(a.returncode == 0 and out["lcm_closed"] and out["abundance"]["witness"] == "2"
                  and out["abundance"]["prime_power_counts"]["2"] == 6 and out["abundance"]["total"] == 8)
    b = _cli("dual", "numset", '["1","2","3","4","6","8","12"]')
    checks.append(b.returncode == 0 and json.loads(b.stdout)["dual"]["decimal"] == ["2", "3", "4", "6", "8", "12", "24"])
    c = _cli("convert", "family", str(CORPUS / "frankl8.json"))
    checks.append(c.returncode == 0 and json.loads(c.stdout)["numset"]["decimal"]
                  == ["1", "2", "6", "7", "14", "30", "42", "210"])
    for args, first in ((("check", "numset", '[ "1","2","3","4","6","8","12","24" ]'), a), (("dual", "numset", '["1","2","3","4","6","8","12"]'), b)):
        checks.append(_cli(*args).stdout == first.stdout)
    elapsed = time.perf_counter() - t0
    verdict(8, f"CLI invocations, exit codes and byte-stable JSON ({sum(checks)}/{len(checks)})", all(checks), elapsed)
