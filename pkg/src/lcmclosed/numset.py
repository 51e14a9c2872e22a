"""Finite sets of positive integers: LCM/GCD closedness, abundance, duality."""
from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Literal

from .arith import (
    ONE,
    ExponentVector,
    PrimePower,
    divides,
    divisor_count,
    divisors,
    format_factored,
    gcd,
    gcd_all,
    lcm,
    lcm_all,
    parse_number,
    quotient,
)


class NumberSetError(ValueError):
    """Base class for number-set precondition failures."""


class EmptySetError(NumberSetError):
    pass


class TooFewMembersError(NumberSetError):
    pass


class NotClosedError(NumberSetError):
    pass


class NoWitnessError(NumberSetError):
    """The requested prime power does not have the required abundance."""


class NotOnCycleError(NumberSetError):
    pass


@dataclass(frozen=True)
class NumberSet:
    members: frozenset[ExponentVector]

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, *numbers: int | str | ExponentVector) -> "NumberSet":
        return cls(frozenset(_coerce(n) for n in numbers))

    @classmethod
    def from_iterable(cls, numbers: Iterable[int | str | ExponentVector]) -> "NumberSet":
        return cls(frozenset(_coerce(n) for n in numbers))

    @classmethod
    def from_json(cls, text: str) -> "NumberSet":
        data = json.loads(text)
        if not isinstance(data, list):
            raise NumberSetError("number set JSON must be an array of number strings")
        vectors = [parse_number(x) for x in data]
        if len(set(vectors)) != len(vectors):
            raise NumberSetError("duplicate members in number set")
        return cls(frozenset(vectors))

    def sorted(self) -> list[ExponentVector]:
        return sorted(self.members, key=int)

    def ints(self) -> list[int]:
        return sorted(int(v) for v in self.members)

    def to_json_obj(self) -> list[str]:
        return [str(n) for n in self.ints()]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, item) -> bool:
        return _coerce(item) in self.members

    def __repr__(self) -> str:
        return "NumberSet({" + ", ".join(map(str, self.ints())) + "})"


def _coerce(n: int | str | ExponentVector) -> ExponentVector:
    if isinstance(n, ExponentVector):
        return n
    return parse_number(n)


def _require_nonempty(N: NumberSet) -> None:
    if not N.members:
        raise EmptySetError("operation requires a nonempty number set")


def _closed_under(N: NumberSet, op: Callable) -> bool:
    _require_nonempty(N)
    ms = list(N.members)
    return all(op(a, b) in N.members for a, b in combinations(ms, 2))


def is_lcm_closed(N: NumberSet) -> bool:
    return _closed_under(N, lcm)


def is_gcd_closed(N: NumberSet) -> bool:
    return _closed_under(N, gcd)


def _closure(N: NumberSet, op: Callable) -> NumberSet:
    # worklist fixpoint: pair each new element with everything seen so far
    _require_nonempty(N)
    seen = set(N.members)
    frontier = list(seen)
    while frontier:
        fresh = []
        snapshot = list(seen)
        for a in frontier:
            for b in snapshot:
                c = op(a, b)
                if c not in seen:
                    seen.add(c)
                    fresh.append(c)
        frontier = fresh
    return NumberSet(frozenset(seen))


def lcm_closure(N: NumberSet) -> NumberSet:
    """Smallest LCM-closed superset of ``N``."""
    return _closure(N, lcm)


def gcd_closure(N: NumberSet) -> NumberSet:
    """Smallest GCD-closed superset of ``N``."""
    return _closure(N, gcd)


def set_lcm(N: NumberSet) -> ExponentVector:
    _require_nonempty(N)
    return lcm_all(N.members)


def set_gcd(N: NumberSet) -> ExponentVector:
    _require_nonempty(N)
    return gcd_all(N.members)


def prime_power_counts(N: NumberSet) -> dict[PrimePower, int]:
    """For every prime power dividing lcm(N), the number of members it divides."""
    counts: dict[PrimePower, int] = {}
    for i, top in set_lcm(N).entries:
        for k in range(1, top + 1):
            counts[PrimePower(i, k)] = 0
    for v in N.members:
        for i, e in v.entries:
            for k in range(1, e + 1):
                counts[PrimePower(i, k)] += 1
    return counts


def _has_nontrivial(N: NumberSet) -> bool:
    return any(v != ONE for v in N.members)


@dataclass(frozen=True)
class DivisorAbundanceReport:
    total: int
    prime_power_counts: dict[PrimePower, int]
    abundant_prime_powers: tuple[PrimePower, ...]
    conjecture1_holds: bool | None  # None: every member is 1
    witness: PrimePower | None

    @property
    def status(self) -> str:
        return _status(self.conjecture1_holds)

    def count(self, n: int | str | ExponentVector) -> int:
        v = _coerce(n)
        return self.prime_power_counts[PrimePower(*v.entries[0])]

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "prime_power_counts": {pp.label(): c for pp, c in sorted(self.prime_power_counts.items())},
            "abundant_prime_powers": [pp.label() for pp in self.abundant_prime_powers],
            "conjecture1": self.status,
            "witness": self.witness.label() if self.witness else None,
        }


def _status(flag: bool | None) -> str:
    return {True: "holds", False: "violated", None: "not-applicable"}[flag]


def abundant_divisors(N: NumberSet) -> DivisorAbundanceReport:
    """Prime-power divisibility counts with the abundance verdict.

    A prime power is abundant when it divides at least half of the members
    (``2 * count >= total``).  The verdict only looks at primes: a divisor
    larger than 1 dividing half the members has a prime factor that does too.
    """
    _require_nonempty(N)
    total = len(N)
    counts = prime_power_counts(N)
    abundant = tuple(pp for pp in sorted(counts) if 2 * counts[pp] >= total)
    if not _has_nontrivial(N):
        return DivisorAbundanceReport(total, counts, abundant, None, None)
    primes = [pp for pp in abundant if pp.exponent == 1]
    if primes:
        witness = max(primes, key=lambda pp: (counts[pp], -pp.index))
        return DivisorAbundanceReport(total, counts, abundant, True, witness)
    return DivisorAbundanceReport(total, counts, abundant, False, None)


@dataclass(frozen=True)
class GeneralDivisorReport:
    total: int
    abundant: tuple[tuple[ExponentVector, int], ...]
    truncated: bool
    applicable: bool

    def values(self) -> list[int]:
        return [int(d) for d, _ in self.abundant]

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "abundant_divisors": [
                {"divisor": str(int(d)), "factored": format_factored(d), "count": c}
                for d, c in self.abundant
            ],
            "truncated": self.truncated,
            "status": "applicable" if self.applicable else "not-applicable",
        }


def abundant_general_divisors(N: NumberSet, limit: int = 10_000) -> GeneralDivisorReport:
    """All divisors ``d > 1`` of lcm(N) dividing at least half the members.

    Gives up (``truncated=True``, empty list) once lcm(N) has more than
    ``limit`` divisors.
    """
    _require_nonempty(N)
    if limit < 1:
        raise ValueError("limit must be positive")
    total = len(N)
    if not _has_nontrivial(N):
        return GeneralDivisorReport(total, (), False, False)
    top = set_lcm(N)
    if divisor_count(top) > limit:
        return GeneralDivisorReport(total, (), True, True)
    found = []
    for d in divisors(top):
        if d == ONE:
            continue
        c = sum(1 for v in N.members if divides(d, v))
        if 2 * c >= total:
            found.append((d, c))
    return GeneralDivisorReport(total, tuple(found), False, True)


@dataclass(frozen=True)
class NonAbundanceReport:
    total: int
    prime_power_counts: dict[PrimePower, int]
    nonabundant_prime_powers: tuple[PrimePower, ...]
    conjecture3_holds: bool

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "prime_power_counts": {pp.label(): c for pp, c in sorted(self.prime_power_counts.items())},
            "nonabundant_prime_powers": [pp.label() for pp in self.nonabundant_prime_powers],
            "conjecture3": "holds" if self.conjecture3_holds else "violated",
        }


def nonabundant_prime_powers(N: NumberSet) -> NonAbundanceReport:
    """Prime powers dividing some member but no more than half of them."""
    if len(N) < 2:
        raise TooFewMembersError(f"need at least two members, got {len(N)}")
    total = len(N)
    counts = prime_power_counts(N)
    found = tuple(pp for pp in sorted(counts) if 1 <= counts[pp] and 2 * counts[pp] <= total)
    return NonAbundanceReport(total, counts, found, bool(found))


def normalize(N: NumberSet) -> NumberSet:
    """Divide every member by gcd(N)."""
    g = set_gcd(N)
    return NumberSet(frozenset(quotient(v, g) for v in N.members))


def dual_map(N: NumberSet) -> dict[ExponentVector, ExponentVector]:
    """The map ``n -> lcm(N) / n`` on members, as a dict."""
    top = set_lcm(N)
    return {v: quotient(top, v) for v in N.members}


def dual(N: NumberSet) -> NumberSet:
    """Complement every member's exponents against lcm(N)."""
    return NumberSet(frozenset(dual_map(N).values()))


@dataclass(frozen=True)
class Proposition3Witness:
    dual: NumberSet
    source: PrimePower
    shifted: PrimePower
    source_count: int
    shifted_count: int


Direction = Literal["gcd-to-lcm", "lcm-to-gcd"]


def proposition3_witness(
    N: NumberSet, direction: Direction, prime_power: PrimePower | None = None
) -> Proposition3Witness:
    """Move a (non-)abundant prime power of ``N`` across to ``dual(N)``.

    ``gcd-to-lcm``: ``N`` is GCD-closed and ``p^k`` divides at least one but
    at most half of its members; ``p^(K-k+1)`` (``K`` the exponent of ``p`` in
    lcm(N)) is then abundant in the LCM-closed dual.

    ``lcm-to-gcd``: ``N`` is LCM-closed and ``p^k`` divides at least half but
    not all members; ``p^(K-k+1)`` then divides some but at most half of the
    dual's members.

    With ``prime_power=None`` the smallest qualifying prime power is used.
    """
    if len(N) < 2:
        raise TooFewMembersError(f"need at least two members, got {len(N)}")
    total = len(N)
    counts = prime_power_counts(N)
    if direction == "gcd-to-lcm":
        if not is_gcd_closed(N):
            raise NotClosedError("gcd-to-lcm direction requires a GCD-closed set")
        qualifies = lambda c: 1 <= c and 2 * c <= total  # noqa: E731
    elif direction == "lcm-to-gcd":
        if not is_lcm_closed(N):
            raise NotClosedError("lcm-to-gcd direction requires an LCM-closed set")
        qualifies = lambda c: 2 * c >= total and c < total  # noqa: E731
    else:
        raise ValueError(f"unknown direction {direction!r}")

    if prime_power is None:
        candidates = [pp for pp in sorted(counts) if qualifies(counts[pp])]
        if not candidates:
            raise NoWitnessError(f"no prime power qualifies for {direction}")
        prime_power = candidates[0]
    elif not qualifies(counts.get(prime_power, 0)):
        raise NoWitnessError(
            f"{prime_power} divides {counts.get(prime_power, 0)} of {total} members; "
            f"does not qualify for {direction}"
        )

    top = set_lcm(N)
    shifted = PrimePower(prime_power.index, top.exponent(prime_power.index) - prime_power.exponent + 1)
    D = dual(N)
    sv = shifted.as_vector()
    sc = sum(1 for v in D.members if divides(sv, v))
    ok = 2 * sc >= total if direction == "gcd-to-lcm" else (1 <= sc and 2 * sc <= total)
    if not ok:
        # unreachable for valid inputs; kept as a hard check on the construction
        raise AssertionError(f"shifted prime power {shifted} failed in dual ({sc}/{total})")
    return Proposition3Witness(D, prime_power, shifted, counts[prime_power], sc)


@dataclass(frozen=True)
class EndoFunction:
    """A self-map of ``{1..k}`` given by its image sequence."""

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        k = len(self.image)
        if k < 1:
            raise ValueError("domain must be nonempty")
        for x in self.image:
            if not 1 <= x <= k:
                raise ValueError(f"image value {x} outside 1..{k}")

    @classmethod
    def from_cycles(cls, size: int, cycles: Sequence[Sequence[int]]) -> "EndoFunction":
        image = list(range(1, size + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                image[a - 1] = b
        return cls(tuple(image))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def return_time(self, x: int) -> int | None:
        """Least ``n >= 1`` with ``s^n(x) = x``, or None if ``x`` is not on a cycle."""
        y = x
        for n in range(1, self.size + 1):
            y = self(y)
            if y == x:
                return n
        return None


def fundamental_period(sigma: EndoFunction, A: Iterable[int]) -> int:
    """Least ``n >= 1`` such that ``s^n`` fixes every point of ``A``."""
    from math import lcm as ilcm

    out = 1
    for x in A:
        t = sigma.return_time(x)
        if t is None:
            raise NotOnCycleError(f"point {x} is not on a cycle")
        out = ilcm(out, t)
    return out


def period_set(sigma: EndoFunction, A: Iterable[int]) -> NumberSet:
    """``{P_f(B) : B nonempty subset of A}``.

    ``P_f(B)`` is the lcm of the return times of the points of ``B``, so the
    set is generated from the distinct return times rather than all subsets.
    """
    A = sorted(set(A))
    if not A:
        raise NumberSetError("A must be nonempty")
    for x in A:
        if not 1 <= x <= sigma.size:
            raise NumberSetError(f"point {x} outside domain 1..{sigma.size}")
    times = set()
    for x in A:
        t = sigma.return_time(x)
        if t is None:
            raise NotOnCycleError(f"point {x} is not on a cycle of the map")
        times.add(t)
    return lcm_closure(NumberSet.from_iterable(times))
