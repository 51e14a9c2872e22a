"""Seeded sweep over random closed number sets and union-closed families.

Checks duality laws, the conjecture verdict on both sides of the bridge and
known-case agreement, then prints aggregate counts.

    python3 scripts/random_properties.py --count 5000 --seed 1
"""
import argparse
import random
import sys
from collections import Counter

from lcmclosed.bridge import family_to_numset
from lcmclosed.cases import known_cases_family, known_cases_numset
from lcmclosed.family import abundant_elements
from lcmclosed.numset import abundant_divisors, dual, is_gcd_closed, is_lcm_closed, normalize
from lcmclosed.search import random_closed_numset, random_union_closed_family


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--universe", type=int, default=8)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()

    for _ in range(args.count):
        kind = rng.choice(("lcm", "gcd"))
        N = random_closed_numset(rng.getrandbits(32), size=rng.randint(1, 10), max_prime_index=rng.randint(1, 5),
                                 max_exponent=rng.randint(1, 3), closure=kind, max_members=64)
        D = dual(N)
        swapped = is_gcd_closed(D) if kind == "lcm" else is_lcm_closed(D)
        tally["duality ok" if swapped and dual(D) == normalize(N) else "duality FAILED"] += 1
        if kind == "lcm":
            tally[f"numset verdict {abundant_divisors(N).status}"] += 1

    for _ in range(args.count):
        S = random_union_closed_family(rng.getrandbits(32), universe_size=rng.randint(1, args.universe),
                                       generators=rng.randint(1, 6))
        N = family_to_numset(S)
        same = abundant_elements(S).conjecture_holds == abundant_divisors(N).conjecture1_holds
        tally["transport ok" if same else "transport FAILED"] += 1
        if S.union:
            agree = known_cases_family(S).satisfied() == known_cases_numset(N).satisfied()
            tally["known cases agree" if agree else "known cases DISAGREE"] += 1

    for key in sorted(tally):
        print(f"{key:<28} {tally[key]}")
    return 1 if any(("FAILED" in k or "DISAGREE" in k or "violated" in k) for k in tally) else 0


if __name__ == "__main__":
    sys.exit(main())
