"""Exact arithmetic on positive integers held as prime-exponent vectors.

Integers are stored sparsely as ``{prime index: exponent}`` with ``p_1 = 2``.
LCM, GCD and divisibility work on exponents only, so nothing overflows no
matter how large the represented integer becomes.  Decimal form appears only
at the I/O boundary.
"""
from __future__ import annotations

import bisect
import itertools
import math
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Mapping

DEFAULT_PRIME_CAP = 10_000
EXPONENT_CAP = 2**16


class ArithmeticDomainError(ValueError):
    """Input outside the domain of an operation (e.g. factorize(0))."""


class SieveCapError(RuntimeError):
    """A prime beyond the configured sieve cap was needed."""


class ExponentCapError(OverflowError):
    """An exponent exceeded :data:`EXPONENT_CAP`."""


class PrimeTable:
    """Lazily grown table of the first primes, bounded by ``cap`` entries.

    Growth is guarded by a lock; lookups into the already-built prefix are
    lock free since the list is only ever extended.
    """

    def __init__(self, cap: int = DEFAULT_PRIME_CAP):
        if cap < 1:
            raise ValueError("prime cap must be at least 1")
        self.cap = cap
        self._primes: list[int] = [2, 3, 5, 7, 11, 13]
        self._limit = 16
        self._lock = threading.Lock()

    def _grow_to(self, limit: int) -> None:
        with self._lock:
            if limit <= self._limit:
                return
            sieve = bytearray([1]) * (limit + 1)
            sieve[0:2] = b"\x00\x00"
            for p in range(2, math.isqrt(limit) + 1):
                if sieve[p]:
                    sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
            self._primes = [i for i, flag in enumerate(sieve) if flag]
            self._limit = limit

    def nth(self, i: int) -> int:
        if i < 1:
            raise ArithmeticDomainError(f"prime index must be >= 1, got {i}")
        if i > self.cap:
            raise SieveCapError(f"prime index {i} exceeds sieve cap {self.cap}")
        while len(self._primes) < i:
            self._grow_to(self._limit * 2)
        return self._primes[i - 1]

    def index_of(self, p: int) -> int:
        """1-based index of the prime ``p``."""
        while self._limit < p:
            if len(self._primes) >= self.cap:
                break
            self._grow_to(max(self._limit * 2, p))
        pos = bisect.bisect_left(self._primes, p)
        if pos < len(self._primes) and self._primes[pos] == p:
            if pos + 1 > self.cap:
                raise SieveCapError(f"prime {p} has index {pos + 1} beyond sieve cap {self.cap}")
            return pos + 1
        if p <= self._limit:
            raise ArithmeticDomainError(f"{p} is not prime")
        raise SieveCapError(f"prime {p} lies beyond sieve cap {self.cap}")

    def primes_upto(self, bound: int) -> Iterator[int]:
        """Primes ``<= bound``; stops early at the cap."""
        if self._limit < bound and len(self._primes) < self.cap:
            self._grow_to(bound)
        for p in itertools.islice(self._primes, self.cap):
            if p > bound:
                return
            yield p


_table = PrimeTable()


def prime_table() -> PrimeTable:
    return _table


def configure_sieve(cap: int) -> None:
    """Replace the process-wide prime table with one capped at ``cap`` primes."""
    global _table
    _table = PrimeTable(cap)


@contextmanager
def sieve_cap(cap: int | PrimeTable):
    """Temporarily swap in a prime table (a fresh one if given a cap)."""
    global _table
    saved = _table
    _table = cap if isinstance(cap, PrimeTable) else PrimeTable(cap)
    try:
        yield _table
    finally:
        _table = saved


def nth_prime(i: int) -> int:
    return _table.nth(i)


@dataclass(frozen=True, order=False)
class ExponentVector:
    """A positive integer as sorted ``(prime index, exponent)`` pairs.

    Zero exponents are never stored, so the empty vector is 1 and equality
    of vectors is equality of integers.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 0
        for i, e in self.entries:
            if i <= prev:
                raise ValueError("prime indices must be strictly increasing and >= 1")
            if e < 1:
                raise ValueError(f"stored exponent must be >= 1, got {e} at index {i}")
            if e > EXPONENT_CAP:
                raise ExponentCapError(f"exponent {e} at index {i} exceeds cap {EXPONENT_CAP}")
            prev = i

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "ExponentVector":
        return cls(tuple(sorted((i, e) for i, e in mapping.items() if e)))

    @classmethod
    def of(cls, n: int) -> "ExponentVector":
        return factorize(n)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def exponent(self, i: int) -> int:
        for j, e in self.entries:
            if j == i:
                return e
            if j > i:
                break
        return 0

    def __int__(self) -> int:
        out = 1
        for i, e in self.entries:
            out *= nth_prime(i) ** e
        return out

    def __index__(self) -> int:
        return int(self)

    def __lt__(self, other: "ExponentVector") -> bool:
        return int(self) < int(other)

    def __le__(self, other: "ExponentVector") -> bool:
        return int(self) <= int(other)

    def __str__(self) -> str:
        return format_factored(self)

    def __repr__(self) -> str:
        return f"ExponentVector({format_factored(self)})"


ONE = ExponentVector()


@dataclass(frozen=True, order=True)
class PrimePower:
    """``p_index ** exponent`` with ``exponent >= 1``; ordered by (prime, exponent)."""

    index: int
    exponent: int = 1

    def __post_init__(self):
        if self.index < 1 or self.exponent < 1:
            raise ValueError(f"invalid prime power index={self.index} exponent={self.exponent}")

    @property
    def prime(self) -> int:
        return nth_prime(self.index)

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def as_vector(self) -> ExponentVector:
        return ExponentVector(((self.index, self.exponent),))

    def label(self) -> str:
        return str(self.prime) if self.exponent == 1 else f"{self.prime}^{self.exponent}"

    def __str__(self) -> str:
        return self.label()


def factorize(n: int) -> ExponentVector:
    """Trial division of ``n`` against the prime table."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"factorize expects an int, got {type(n).__name__}")
    if n < 1:
        raise ArithmeticDomainError(f"cannot factorize {n}: must be a positive integer")
    entries = []
    rest = n
    for idx, p in enumerate(_table.primes_upto(math.isqrt(n)), start=1):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            entries.append((idx, e))
    # a leftover cofactor is prime unless the cap truncated trial division
    if rest > 1:
        largest = _table.nth(_table.cap) if len(_table._primes) >= _table.cap else None
        if largest is not None and largest * largest < rest:
            raise SieveCapError(f"cannot factorize {n}: cofactor {rest} beyond sieve cap {_table.cap}")
        entries.append((_table.index_of(rest), 1))
        entries.sort()
    return ExponentVector(tuple(entries))


def to_decimal(v: ExponentVector) -> str:
    return str(int(v))


def lcm(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    merged = dict(a.entries)
    for i, e in b.entries:
        if e > merged.get(i, 0):
            merged[i] = e
    return ExponentVector(tuple(sorted(merged.items())))


def gcd(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    bd = dict(b.entries)
    return ExponentVector(tuple((i, min(e, bd[i])) for i, e in a.entries if i in bd))


def lcm_all(vectors: Iterable[ExponentVector]) -> ExponentVector:
    return reduce(lcm, vectors, ONE)


def gcd_all(vectors: Iterable[ExponentVector]) -> ExponentVector:
    it = iter(vectors)
    try:
        first = next(it)
    except StopIteration:
        raise ArithmeticDomainError("gcd of an empty collection is undefined") from None
    return reduce(gcd, it, first)


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    bd = dict(b.entries)
    return all(e <= bd.get(i, 0) for i, e in a.entries)


def quotient(a: ExponentVector, d: ExponentVector) -> ExponentVector:
    """``a / d``; ``d`` must divide ``a``."""
    if not divides(d, a):
        raise ArithmeticDomainError(f"{d} does not divide {a}")
    dd = dict(d.entries)
    return ExponentVector(tuple((i, e - dd.get(i, 0)) for i, e in a.entries if e > dd.get(i, 0)))


def sigma_ppe(v: ExponentVector) -> int:
    """Sum of the prime-power exponents of ``v``."""
    return sum(e for _, e in v.entries)


def divisor_count(v: ExponentVector) -> int:
    return math.prod(e + 1 for _, e in v.entries)


def divisors(v: ExponentVector) -> list[ExponentVector]:
    """All divisors of ``v`` in increasing numeric order."""
    out: list[dict[int, int]] = [{}]
    for i, e in v.entries:
        out = [{**d, i: k} if k else d for d in out for k in range(e + 1)]
    return sorted((ExponentVector.from_mapping(d) for d in out), key=int)


def is_prime_power(v: ExponentVector) -> bool:
    return len(v.entries) == 1


_FACTOR_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_number(text: str | int) -> ExponentVector:
    """Parse ``"24"`` or ``"2^3*3"`` (factors need not be prime-sorted)."""
    if isinstance(text, int) and not isinstance(text, bool):
        return factorize(text)
    if not isinstance(text, str):
        raise ArithmeticDomainError(f"expected a number string, got {text!r}")
    s = text.strip()
    if not s:
        raise ArithmeticDomainError("empty number string")
    if s.isdigit():
        return factorize(int(s))
    acc = ONE
    for part in s.split("*"):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ArithmeticDomainError(f"malformed number {text!r}")
        base = factorize(int(m.group(1)))
        k = int(m.group(2)) if m.group(2) is not None else 1
        scaled = {i: e * k for i, e in base.entries}
        acc = multiply(acc, ExponentVector.from_mapping(scaled))
    return acc


def multiply(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    merged = dict(a.entries)
    for i, e in b.entries:
        merged[i] = merged.get(i, 0) + e
    return ExponentVector(tuple(sorted(merged.items())))


def format_factored(v: ExponentVector) -> str:
    """Canonical factored form, e.g. ``"2^3*3"``; ``"1"`` for the empty vector."""
    if not v.entries:
        return "1"
    return "*".join(
        str(nth_prime(i)) if e == 1 else f"{nth_prime(i)}^{e}" for i, e in v.entries
    )
