"""Finite set families over a labelled universe of at most 64 elements.

Members are int bitmasks; bit ``i`` stands for ``universe[i]``.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

MAX_UNIVERSE = 64


class FamilyError(ValueError):
    pass


class EmptyFamilyError(FamilyError):
    pass


class UniverseTooLargeError(FamilyError):
    pass


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.labels) > MAX_UNIVERSE:
            raise UniverseTooLargeError(f"universe has {len(self.labels)} labels, max {MAX_UNIVERSE}")
        if len(set(self.labels)) != len(self.labels):
            raise FamilyError("universe labels must be distinct")

    @classmethod
    def range(cls, n: int) -> "Universe":
        return cls(tuple(str(i) for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise FamilyError(f"label {label!r} not in universe") from None

    def mask(self, labels: Iterable) -> int:
        bits = 0
        for lab in labels:
            b = 1 << self.index(lab)
            if bits & b:
                raise FamilyError(f"duplicate label {lab!r} in member")
            bits |= b
        return bits

    def decode(self, bits: int) -> list[str]:
        return [lab for i, lab in enumerate(self.labels) if bits >> i & 1]

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1


@dataclass(frozen=True)
class SetFamily:
    universe: Universe
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        full = self.universe.full
        for m in self.members:
            if m < 0 or m & ~full:
                raise FamilyError(f"member bitmask {m:#x} outside universe of size {len(self.universe)}")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable], universe: Sequence | Universe | None = None) -> "SetFamily":
        sets = [list(s) for s in sets]
        if universe is None:
            seen: dict[str, None] = {}
            for s in sets:
                for x in s:
                    seen.setdefault(str(x), None)
            universe = Universe(tuple(sorted(seen, key=_label_key)))
        elif not isinstance(universe, Universe):
            universe = Universe(tuple(universe))
        masks = [universe.mask(str(x) for x in s) for s in sets]
        if len(set(masks)) != len(masks):
            raise FamilyError("duplicate members in family")
        return cls(universe, frozenset(masks))

    @classmethod
    def from_json(cls, text: str) -> "SetFamily":
        data = json.loads(text)
        if not isinstance(data, dict) or "members" not in data:
            raise FamilyError('family JSON must be an object with "members" (and optionally "universe")')
        return cls.from_sets(data["members"], data.get("universe"))

    def to_json_obj(self) -> dict:
        return {
            "universe": list(self.universe.labels),
            "members": [self.universe.decode(m) for m in self.sorted()],
        }

    def sorted(self) -> list[int]:
        # canonical order: by cardinality, then by bitmask
        return sorted(self.members, key=lambda m: (m.bit_count(), m))

    def as_sets(self) -> list[frozenset[str]]:
        return [frozenset(self.universe.decode(m)) for m in self.sorted()]

    @property
    def union(self) -> int:
        out = 0
        for m in self.members:
            out |= m
        return out

    @property
    def intersection(self) -> int:
        out = self.universe.full
        for m in self.members:
            out &= m
        return out

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(s) + "}" for s in map(self.universe.decode, self.sorted()))
        return f"SetFamily({{{body}}})"


def _label_key(label: str):
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def _require_nonempty(S: SetFamily) -> None:
    if not S.members:
        raise EmptyFamilyError("operation requires a nonempty family")


def is_union_closed(S: SetFamily) -> bool:
    _require_nonempty(S)
    ms = S.members
    return all(a | b in ms for a, b in combinations(ms, 2))


def is_intersection_closed(S: SetFamily) -> bool:
    _require_nonempty(S)
    ms = S.members
    return all(a & b in ms for a, b in combinations(ms, 2))


def _closure(S: SetFamily, op) -> SetFamily:
    _require_nonempty(S)
    seen = set(S.members)
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
    return SetFamily(S.universe, frozenset(seen))


def union_closure(S: SetFamily) -> SetFamily:
    return _closure(S, int.__or__)


def intersection_closure(S: SetFamily) -> SetFamily:
    return _closure(S, int.__and__)


def column_counts(S: SetFamily) -> list[int]:
    """Per universe index, the number of members containing it."""
    counts = [0] * len(S.universe)
    for m in S.members:
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return counts


@dataclass(frozen=True)
class ElementAbundanceReport:
    total: int
    element_counts: dict[str, int]
    abundant_elements: tuple[str, ...]
    conjecture_holds: bool | None  # None: no nonempty member

    @property
    def status(self) -> str:
        return {True: "holds", False: "violated", None: "not-applicable"}[self.conjecture_holds]

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "element_counts": dict(self.element_counts),
            "abundant_elements": list(self.abundant_elements),
            "conjecture": self.status,
        }


def abundant_elements(S: SetFamily) -> ElementAbundanceReport:
    """Counts for the elements of the union of ``S`` and the abundance verdict."""
    _require_nonempty(S)
    total = len(S)
    counts = column_counts(S)
    used = S.union
    labels = S.universe.labels
    element_counts = {labels[i]: counts[i] for i in range(len(labels)) if used >> i & 1}
    abundant = tuple(lab for lab, c in element_counts.items() if 2 * c >= total)
    if not used:
        return ElementAbundanceReport(total, element_counts, abundant, None)
    return ElementAbundanceReport(total, element_counts, abundant, bool(abundant))


def complement_dual(S: SetFamily) -> SetFamily:
    """Replace every member by its complement inside the union of ``S``."""
    _require_nonempty(S)
    top = S.union
    return SetFamily(S.universe, frozenset(top & ~m for m in S.members))


def is_separating(S: SetFamily) -> bool:
    """Every pair ``x != y`` of the union has members ``A`` with ``x`` but not ``y``
    and ``B`` with ``y`` but not ``x``."""
    _require_nonempty(S)
    top = S.union
    elems = [i for i in range(len(S.universe)) if top >> i & 1]
    # separated[x] = bits y such that some member contains x and misses y
    separated = {}
    for x in elems:
        bx = 1 << x
        acc = 0
        for m in S.members:
            if m & bx:
                acc |= top & ~m
        separated[x] = acc
    return all(separated[x] >> y & 1 and separated[y] >> x & 1 for x, y in combinations(elems, 2))


def identify_elements(S: SetFamily) -> tuple[SetFamily, dict[str, str]]:
    """Merge labels lying in exactly the same members.

    Each class is named after its first label in universe order; labels
    outside the union of ``S`` form their own class.  Returns the quotient
    family and the old-label -> class-label map.
    """
    _require_nonempty(S)
    ordered = S.sorted()
    labels = S.universe.labels
    column: dict[int, int] = {}
    for i in range(len(labels)):
        col = 0
        for j, m in enumerate(ordered):
            if m >> i & 1:
                col |= 1 << j
        column[i] = col
    rep_of_col: dict[int, int] = {}
    rep: dict[int, int] = {}
    for i in range(len(labels)):
        rep[i] = rep_of_col.setdefault(column[i], i)
    reps = sorted(set(rep.values()))
    new_index = {old: k for k, old in enumerate(reps)}
    universe = Universe(tuple(labels[i] for i in reps))
    members = set()
    for m in S.members:
        bits = 0
        for i in reps:
            if m >> i & 1:
                bits |= 1 << new_index[i]
        members.add(bits)
    mapping = {labels[i]: labels[rep[i]] for i in range(len(labels))}
    return SetFamily(universe, frozenset(members)), mapping


def reduce_common(S: SetFamily) -> SetFamily:
    """Restrict ``S`` to the elements of its union missing from some member.

    The family analogue of dividing a number set by its gcd.
    """
    _require_nonempty(S)
    keep_bits = S.union & ~S.intersection
    keep = [i for i in range(len(S.universe)) if keep_bits >> i & 1]
    universe = Universe(tuple(S.universe.labels[i] for i in keep))
    members = set()
    for m in S.members:
        bits = 0
        for k, i in enumerate(keep):
            if m >> i & 1:
                bits |= 1 << k
        members.add(bits)
    return SetFamily(universe, frozenset(members))


def signature(S: SetFamily) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Isomorphism invariant: sorted member sizes and sorted nonzero column counts."""
    sizes = tuple(sorted(m.bit_count() for m in S.members))
    cols = tuple(sorted(c for c in column_counts(S) if c))
    return sizes, cols
