"""The prime-power-set encoding of integers and the family <-> number-set converters.

``f_map(n)`` is the set of all prime powers dividing ``n`` (so ``18 -> {2, 3, 9}``)
and ``g_map`` inverts it on chain-complete sets.  Under this encoding lcm and
gcd become union and intersection, which is what lets a union-closed family
be read as an LCM-closed number set and back.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass

from .arith import ExponentVector, PrimePower, SieveCapError, nth_prime
from .family import SetFamily, Universe, UniverseTooLargeError, column_counts, is_union_closed
from .numset import NotClosedError, NumberSet, is_lcm_closed, prime_power_counts, set_lcm


class ChainError(ValueError):
    """A prime-power set is missing a lower power of one of its primes."""

    def __init__(self, prime: int, missing: list[int], present: list[int]):
        self.prime = prime
        self.missing = missing
        self.present = present
        gaps = ", ".join(f"{prime}^{k}" if k > 1 else str(prime) for k in missing)
        super().__init__(f"not an image of f: prime {prime} has powers {present} but lacks {gaps}")


class NotUnionClosedError(ValueError):
    pass


@dataclass(frozen=True)
class PrimePowerSet:
    powers: frozenset[PrimePower]

    def __post_init__(self):
        object.__setattr__(self, "powers", frozenset(self.powers))

    @classmethod
    def of(cls, *items: PrimePower | tuple[int, int]) -> "PrimePowerSet":
        return cls(frozenset(p if isinstance(p, PrimePower) else PrimePower(*p) for p in items))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "PrimePowerSet":
        """Build from integer prime powers, e.g. ``[2, 3, 9]``."""
        from .arith import factorize, is_prime_power

        out = []
        for v in values:
            ev = factorize(v)
            if not is_prime_power(ev):
                raise ValueError(f"{v} is not a prime power")
            out.append(PrimePower(*ev.entries[0]))
        return cls(frozenset(out))

    def check_chain(self) -> None:
        by_index: dict[int, set[int]] = defaultdict(set)
        for pp in self.powers:
            by_index[pp.index].add(pp.exponent)
        for i in sorted(by_index):
            exps = by_index[i]
            missing = [k for k in range(1, max(exps)) if k not in exps]
            if missing:
                raise ChainError(nth_prime(i), missing, sorted(exps))

    def values(self) -> list[int]:
        return sorted(pp.value for pp in self.powers)

    def __len__(self) -> int:
        return len(self.powers)

    def __or__(self, other: "PrimePowerSet") -> "PrimePowerSet":
        return PrimePowerSet(self.powers | other.powers)

    def __and__(self, other: "PrimePowerSet") -> "PrimePowerSet":
        return PrimePowerSet(self.powers & other.powers)

    def __le__(self, other: "PrimePowerSet") -> bool:
        return self.powers <= other.powers


def f_map(n: ExponentVector) -> PrimePowerSet:
    return PrimePowerSet(frozenset(PrimePower(i, k) for i, e in n.entries for k in range(1, e + 1)))


def g_map(s: PrimePowerSet) -> ExponentVector:
    """Product of the maximal prime powers; raises :class:`ChainError` off the image of f."""
    s.check_chain()
    top: dict[int, int] = {}
    for pp in s.powers:
        if pp.exponent > top.get(pp.index, 0):
            top[pp.index] = pp.exponent
    return ExponentVector.from_mapping(top)


def relabel_primes(S: SetFamily) -> list[ExponentVector]:
    """Send universe element ``i`` (0-based) to the prime ``p_(i+1)``; members
    become squarefree numbers, in canonical member order."""
    try:
        nth_prime(len(S.universe)) if len(S.universe) else None
    except SieveCapError as exc:
        raise UniverseTooLargeError(str(exc)) from exc
    out = []
    for m in S.sorted():
        out.append(ExponentVector(tuple((i + 1, 1) for i in range(len(S.universe)) if m >> i & 1)))
    return out


def family_to_numset(S: SetFamily) -> NumberSet:
    if not S.members:
        raise NotUnionClosedError("empty family")
    if not is_union_closed(S):
        raise NotUnionClosedError("family is not union-closed")
    return NumberSet(frozenset(relabel_primes(S)))


def prime_power_universe(N: NumberSet) -> list[PrimePower]:
    """All prime powers dividing lcm(N), ordered by (prime, exponent)."""
    return sorted(PrimePower(i, k) for i, e in set_lcm(N).entries for k in range(1, e + 1))


def numset_to_family(N: NumberSet) -> SetFamily:
    if not N.members:
        raise NotClosedError("empty number set")
    if not is_lcm_closed(N):
        raise NotClosedError("number set is not LCM-closed")
    powers = prime_power_universe(N)
    pos = {pp: k for k, pp in enumerate(powers)}
    universe = Universe(tuple(pp.label() for pp in powers))
    members = set()
    for v in N.members:
        bits = 0
        for pp in f_map(v).powers:
            bits |= 1 << pos[pp]
        members.add(bits)
    return SetFamily(universe, frozenset(members))


@dataclass(frozen=True)
class TransportRow:
    element: str
    prime_power: str
    family_count: int
    numset_count: int


def transport_table_from_family(S: SetFamily) -> list[TransportRow]:
    """Element counts of ``S`` next to prime-divisibility counts of its image."""
    N = family_to_numset(S)
    counts = prime_power_counts(N)
    cols = column_counts(S)
    rows = []
    for i, lab in enumerate(S.universe.labels):
        pp = PrimePower(i + 1, 1)
        rows.append(TransportRow(lab, pp.label(), cols[i], counts.get(pp, 0)))
    return rows


def transport_table_from_numset(N: NumberSet) -> list[TransportRow]:
    S = numset_to_family(N)
    counts = prime_power_counts(N)
    cols = column_counts(S)
    return [
        TransportRow(lab, pp.label(), cols[i], counts[pp])
        for i, (lab, pp) in enumerate(zip(S.universe.labels, prime_power_universe(N)))
    ]
