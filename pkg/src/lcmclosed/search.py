"""Exhaustive scans over small universes and random instance generators.

A candidate family on ``{1..n}`` is an integer ``F`` with ``2**n`` bits: bit
``a`` set means the member with bitmask ``a`` belongs to the family.  The scan
walks ``F`` over ``[1, 2**(2**n))`` in increasing order, split into contiguous
chunks so that any number of workers produce the same merged report.
"""
from __future__ import annotations

import json
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .arith import ExponentVector, PrimePower
from .bridge import family_to_numset
from .family import SetFamily, Universe, abundant_elements, union_closure
from .numset import (
    EndoFunction,
    NumberSet,
    abundant_divisors,
    fundamental_period,
    gcd_closure,
    is_lcm_closed,
    lcm_closure,
    period_set,
    prime_power_counts,
)

log = logging.getLogger(__name__)

MAX_DEFAULT_N = 4
MAX_N = 5
SAMPLE_MODULUS = 64


class UnsupportedSizeError(ValueError):
    pass


@dataclass
class SearchConfig:
    n: int
    workers: int = 1
    chunks: int | None = None
    allow_five: bool = False
    checkpoint: str | os.PathLike | None = None
    transport_sample: bool = True

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 1 <= self.n <= MAX_N or (self.n == MAX_N and not self.allow_five):
            hint = " (n = 5 needs allow_five=True)" if self.n == MAX_N else ""
            raise UnsupportedSizeError(f"unsupported universe size n={self.n}{hint}")
        if self.chunks is None:
            self.chunks = {1: 1, 2: 1, 3: 4, 4: 64, 5: 4096}[self.n]

    @property
    def candidates(self) -> int:
        return 1 << (1 << self.n)


@dataclass
class ChunkResult:
    scanned: int = 0
    union_closed: int = 0
    applicable: int = 0
    violations: list[int] = field(default_factory=list)
    best_count: int | None = None  # min_abundance as best_count / best_size
    best_size: int | None = None
    witnesses: list[int] = field(default_factory=list)
    transport_checks: int = 0
    transport_failures: list[int] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return self.__dict__.copy()

    @classmethod
    def from_json_obj(cls, d: dict) -> "ChunkResult":
        return cls(**d)


@dataclass
class ExhaustiveReport:
    n: int
    candidates: int
    scanned: int
    union_closed_count: int
    applicable_count: int
    violations: list[list[list[str]]]
    min_abundance: Fraction | None
    min_abundance_pair: tuple[int, int] | None
    extremal_witnesses: list[int]
    transport_checks: int
    transport_failures: list[int]

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "candidates": self.candidates,
            "scanned": self.scanned,
            "union_closed_count": self.union_closed_count,
            "applicable_count": self.applicable_count,
            "violations": self.violations,
            "min_abundance": None
            if self.min_abundance is None
            else {
                "ratio": str(self.min_abundance),
                "count": self.min_abundance_pair[0],
                "size": self.min_abundance_pair[1],
            },
            "extremal_witness_count": len(self.extremal_witnesses),
            "extremal_witnesses": [decode_family(self.n, F) for F in self.extremal_witnesses[:16]],
            "transport_checks": self.transport_checks,
            "transport_failures": [decode_family(self.n, F) for F in self.transport_failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)


def decode_family(n: int, F: int) -> list[list[str]]:
    U = Universe.range(n)
    members = [a for a in range(1 << n) if F >> a & 1]
    members.sort(key=lambda m: (m.bit_count(), m))
    return [U.decode(a) for a in members]


def family_from_code(n: int, F: int) -> SetFamily:
    return SetFamily(Universe.range(n), frozenset(a for a in range(1 << n) if F >> a & 1))


class _Tables:
    """Byte-sliced lookup tables for ``{a | b : b in F}`` as a candidate bitmask."""

    def __init__(self, n: int):
        self.n = n
        self.M = 1 << n
        self.nbytes = (self.M + 7) // 8
        self.or_image = []
        for a in range(self.M):
            per_byte = []
            for k in range(self.nbytes):
                row = []
                for byte in range(256):
                    img = 0
                    for j in range(8):
                        if byte >> j & 1:
                            img |= 1 << (a | (8 * k + j))
                    row.append(img)
                per_byte.append(row)
            self.or_image.append(per_byte)
        # column masks: which members contain element e
        self.columns = [sum(1 << a for a in range(self.M) if a >> e & 1) for e in range(n)]

    def union_closed(self, F: int) -> bool:
        nb = self.nbytes
        pieces = [(F >> (8 * k)) & 0xFF for k in range(nb)]
        rest = F
        while rest:
            low = rest & -rest
            a = low.bit_length() - 1
            rest ^= low
            table = self.or_image[a]
            img = 0
            for k in range(nb):
                img |= table[k][pieces[k]]
            if img & ~F:
                return False
        return True


def _sampled(F: int) -> bool:
    return ((F * 0x9E3779B97F4A7C15) >> 17) % SAMPLE_MODULUS == 0


def _transport_agrees(n: int, F: int) -> bool:
    S = family_from_code(n, F)
    fam = abundant_elements(S)
    N = family_to_numset(S)
    num = abundant_divisors(N)
    if fam.conjecture_holds != num.conjecture1_holds:
        return False
    counts = prime_power_counts(N)
    for i, lab in enumerate(S.universe.labels):
        if fam.element_counts.get(lab, 0) != counts.get(PrimePower(i + 1, 1), 0):
            return False
    return True


def chunk_bounds(config: SearchConfig, index: int) -> tuple[int, int]:
    total = config.candidates
    step = -(-total // config.chunks)
    return min(index * step, total), min((index + 1) * step, total)


def scan_chunk(n: int, lo: int, hi: int, transport_sample: bool = True,
               visitor: Callable[[int], None] | None = None) -> ChunkResult:
    """Scan candidate codes ``lo <= F < hi`` (code 0, the empty family, is skipped)."""
    tables = _tables_for(n)
    columns = tables.columns
    res = ChunkResult()
    for F in range(max(lo, 1), hi):
        res.scanned += 1
        if not tables.union_closed(F):
            continue
        res.union_closed += 1
        if visitor is not None:
            visitor(F)
        if F == 1:  # only the empty member
            continue
        res.applicable += 1
        size = F.bit_count()
        best = max((F & c).bit_count() for c in columns)
        if 2 * best < size:
            res.violations.append(F)
        if res.best_count is None or best * res.best_size < res.best_count * size:
            res.best_count, res.best_size = best, size
            res.witnesses = [F]
        elif best * res.best_size == res.best_count * size:
            res.witnesses.append(F)
        if transport_sample and _sampled(F):
            res.transport_checks += 1
            if not _transport_agrees(n, F):
                res.transport_failures.append(F)
    if lo == 0 and hi > 0:
        res.scanned += 1
    return res


_TABLE_CACHE: dict[int, _Tables] = {}


def _tables_for(n: int) -> _Tables:
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = _Tables(n)
    return _TABLE_CACHE[n]


def _run_chunk(args) -> ChunkResult:
    n, lo, hi, sample = args
    return scan_chunk(n, lo, hi, sample)


def merge(n: int, candidates: int, results: list[ChunkResult]) -> ExhaustiveReport:
    """Fold chunk results in chunk order."""
    total = ChunkResult()
    for r in results:
        total.scanned += r.scanned
        total.union_closed += r.union_closed
        total.applicable += r.applicable
        total.violations.extend(r.violations)
        total.transport_checks += r.transport_checks
        total.transport_failures.extend(r.transport_failures)
        if r.best_count is None:
            continue
        if total.best_count is None or r.best_count * total.best_size < total.best_count * r.best_size:
            total.best_count, total.best_size = r.best_count, r.best_size
            total.witnesses = list(r.witnesses)
        elif r.best_count * total.best_size == total.best_count * r.best_size:
            total.witnesses.extend(r.witnesses)
    ratio = None if total.best_count is None else Fraction(total.best_count, total.best_size)
    pair = None if ratio is None else (total.best_count, total.best_size)
    return ExhaustiveReport(
        n=n,
        candidates=candidates,
        scanned=total.scanned,
        union_closed_count=total.union_closed,
        applicable_count=total.applicable,
        violations=[decode_family(n, F) for F in total.violations],
        min_abundance=ratio,
        min_abundance_pair=pair,
        extremal_witnesses=total.witnesses,
        transport_checks=total.transport_checks,
        transport_failures=total.transport_failures,
    )


class Checkpoint:
    """Plain-text log of finished chunks (``chunk <i> done`` per line).

    Each finished chunk's partial result is kept as JSON in the sibling
    directory ``<path>.d/`` so that a resumed run can merge it.
    """

    def __init__(self, path: str | os.PathLike, config: SearchConfig):
        self.path = Path(path)
        self.dir = self.path.with_name(self.path.name + ".d")
        self.header = {"n": config.n, "chunks": config.chunks, "transport_sample": config.transport_sample}

    def load(self) -> dict[int, ChunkResult]:
        if not self.path.exists():
            return {}
        meta = self.dir / "meta.json"
        if meta.exists() and json.loads(meta.read_text()) != self.header:
            raise ValueError(f"checkpoint {self.path} was written with a different configuration")
        done = {}
        for line in self.path.read_text().splitlines():
            parts = line.split()
            if len(parts) == 3 and parts[0] == "chunk" and parts[2] == "done":
                idx = int(parts[1])
                blob = self.dir / f"{idx}.json"
                if blob.exists():
                    done[idx] = ChunkResult.from_json_obj(json.loads(blob.read_text()))
        return done

    def record(self, index: int, result: ChunkResult) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        meta = self.dir / "meta.json"
        if not meta.exists():
            meta.write_text(json.dumps(self.header, sort_keys=True))
        tmp = self.dir / f"{index}.json.tmp"
        tmp.write_text(json.dumps(result.to_json_obj()))
        os.replace(tmp, self.dir / f"{index}.json")
        with open(self.path, "a") as fh:
            fh.write(f"chunk {index} done\n")


def enumerate_union_closed(config: SearchConfig | int, visitor: Callable[[int], None] | None = None,
                           progress: Callable[[int, int], None] | None = None) -> ExhaustiveReport:
    """Scan every candidate family and fold the per-chunk results.

    ``visitor`` is called with the code of each union-closed family, in
    increasing order; it forces a single in-process worker.
    """
    if isinstance(config, int):
        config = SearchConfig(config, transport_sample=False)
    ckpt = Checkpoint(config.checkpoint, config) if config.checkpoint else None
    done = ckpt.load() if ckpt else {}
    pending = [i for i in range(config.chunks) if i not in done]
    results: dict[int, ChunkResult] = dict(done)

    def finish(i, r):
        results[i] = r
        if ckpt:
            ckpt.record(i, r)
        if progress:
            progress(len(results), config.chunks)

    if config.workers == 1 or visitor is not None:
        for i in pending:
            lo, hi = chunk_bounds(config, i)
            finish(i, scan_chunk(config.n, lo, hi, config.transport_sample, visitor))
    else:
        jobs = [(config.n, *chunk_bounds(config, i), config.transport_sample) for i in pending]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for i, r in zip(pending, pool.map(_run_chunk, jobs)):
                finish(i, r)
    return merge(config.n, config.candidates, [results[i] for i in range(config.chunks)])


def verify_exhaustive(n: int, workers: int = 1, allow_five: bool = False,
                      checkpoint: str | os.PathLike | None = None, chunks: int | None = None,
                      progress: Callable[[int, int], None] | None = None) -> ExhaustiveReport:
    """Exhaustive conjecture check on ``{1..n}`` plus sampled transport checks."""
    config = SearchConfig(n, workers=workers, chunks=chunks, allow_five=allow_five,
                          checkpoint=checkpoint, transport_sample=True)
    return enumerate_union_closed(config, progress=progress)


def random_exponent_vector(rng: random.Random, max_prime_index: int, max_exponent: int) -> ExponentVector:
    return ExponentVector.from_mapping(
        {i: rng.randint(0, max_exponent) for i in range(1, max_prime_index + 1)}
    )


def random_closed_numset(seed: int, size: int = 4, max_prime_index: int = 3, max_exponent: int = 2,
                         closure: str = "lcm", max_members: int | None = None) -> NumberSet:
    """Close ``size`` random exponent vectors under lcm (or gcd).

    With ``max_members`` the draw is repeated, from the same generator, until
    the closure is small enough.
    """
    if size < 1 or max_prime_index < 1 or max_exponent < 1:
        raise ValueError("bounds must be positive")
    close = {"lcm": lcm_closure, "gcd": gcd_closure}[closure]
    rng = random.Random(seed)
    while True:
        seeds = NumberSet(frozenset(random_exponent_vector(rng, max_prime_index, max_exponent)
                                    for _ in range(size)))
        out = close(seeds)
        if max_members is None or len(out) <= max_members:
            return out


def random_union_closed_family(seed: int, universe_size: int = 8, generators: int = 5,
                               max_members: int | None = None) -> SetFamily:
    if universe_size < 1 or generators < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    U = Universe.range(universe_size)
    while True:
        seeds = {rng.getrandbits(universe_size) for _ in range(generators)}
        out = union_closure(SetFamily(U, frozenset(seeds)))
        if max_members is None or len(out) <= max_members:
            return out


def random_permutation(rng: random.Random, size: int) -> EndoFunction:
    image = list(range(1, size + 1))
    rng.shuffle(image)
    return EndoFunction(tuple(image))


def periods_from_endofunction(sigma: EndoFunction, A) -> NumberSet:
    A = list(A)
    out = period_set(sigma, A)
    if not is_lcm_closed(out):
        raise AssertionError(f"period set {out} is not LCM-closed")
    top = max(out.members, key=int)
    if int(top) != fundamental_period(sigma, A):
        raise AssertionError(f"maximum {top} of the period set is not the fundamental period of {A}")
    return out
