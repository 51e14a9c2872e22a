"""Checkers for five sufficient conditions under which the conjecture is known.

Both forms are evaluated on the "reduced" instance: the number set divided by
its gcd, and the family with the elements common to all members dropped.
These correspond to each other under f, so the two reports agree condition
by condition.

    1. a nontrivial member with at most two elements / prime-power exponent sum <= 2
    2. universe size m <= 12
    3. at most 50 members
    4. 3 * size >= 2 * 2**m
    5. size <= 2 * m and the instance is separating
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .arith import ONE, divides, quotient, sigma_ppe
from .bridge import prime_power_universe
from .family import SetFamily, is_separating, is_union_closed, reduce_common
from .numset import NumberSet, is_lcm_closed, normalize, set_gcd, set_lcm

UNIVERSE_BOUND = 12
SIZE_BOUND = 50


class CasePreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Condition:
    identifier: int
    satisfied: bool
    measured: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CaseReport:
    kind: str
    conditions: tuple[Condition, ...]

    @property
    def any_condition_met(self) -> bool:
        return any(c.satisfied for c in self.conditions)

    def satisfied(self) -> dict[int, bool]:
        return {c.identifier: c.satisfied for c in self.conditions}

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "conditions": [
                {"id": c.identifier, "satisfied": c.satisfied, "measured": c.measured}
                for c in self.conditions
            ],
            "any_condition_met": self.any_condition_met,
        }


def _conditions(size: int, m: int, small_member: int | None, separating: bool) -> tuple[Condition, ...]:
    return (
        Condition(1, small_member is not None, {"smallest_nonempty_member": small_member}),
        Condition(2, m <= UNIVERSE_BOUND, {"universe_size": m, "bound": UNIVERSE_BOUND}),
        Condition(3, size <= SIZE_BOUND, {"size": size, "bound": SIZE_BOUND}),
        Condition(4, 3 * size >= 2 * 2**m, {"lhs_3_size": 3 * size, "rhs_2_pow": 2 * 2**m}),
        Condition(5, size <= 2 * m and separating, {"size": size, "bound_2m": 2 * m, "separating": separating}),
    )


def known_cases_family(S: SetFamily) -> CaseReport:
    if not S.members:
        raise CasePreconditionError("empty family")
    if not is_union_closed(S):
        raise CasePreconditionError("family is not union-closed")
    if not S.union:
        raise CasePreconditionError("family has no nonempty member")
    R = reduce_common(S)
    sizes = [m.bit_count() for m in R.members if m]
    small = min(sizes) if sizes and min(sizes) <= 2 else None
    return CaseReport("family", _conditions(len(S), len(R.universe), small, is_separating(R)))


def _numset_separating(M: NumberSet) -> bool:
    # M already divided by its gcd; every pair of distinct prime powers of
    # lcm(M) needs members m, n with p'|m, p''|n, p''!|m, p'!|n
    powers = [pp.as_vector() for pp in prime_power_universe(M)]
    members = list(M.members)
    div = [[divides(pp, v) for v in members] for pp in powers]
    for a, b in combinations(range(len(powers)), 2):
        da, db = div[a], div[b]
        if not any(da[k] and not db[k] for k in range(len(members))):
            return False
        if not any(db[k] and not da[k] for k in range(len(members))):
            return False
    return True


def known_cases_numset(N: NumberSet) -> CaseReport:
    if not N.members:
        raise CasePreconditionError("empty number set")
    if not is_lcm_closed(N):
        raise CasePreconditionError("number set is not LCM-closed")
    if all(v == ONE for v in N.members):
        raise CasePreconditionError("number set has no element different from 1")
    M = normalize(N)
    m = sigma_ppe(quotient(set_lcm(N), set_gcd(N)))
    sums = [sigma_ppe(v) for v in M.members if v != ONE]
    small = min(sums) if sums and min(sums) <= 2 else None
    return CaseReport("numset", _conditions(len(N), m, small, _numset_separating(M)))
