"""wLAS sequences, trajectory patterns and the matching relations between them.

A wLAS term pairs a weighted location set (cells with overlap weights) with a
sorted activity set. A trajectory pattern is a sequence of (cell set,
activity set) terms. Indices into sequences are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Union

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class WlasTerm:
    locations: tuple[tuple[int, Fraction], ...]
    activities: tuple[str, ...]
    _weights: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        locations = tuple(sorted((int(c), Fraction(w)) for c, w in self.locations))
        cells = [c for c, _ in locations]
        if len(set(cells)) != len(cells):
            raise InvalidArgumentError(f"duplicate cell in {cells}")
        if any(w <= 0 for _, w in locations):
            raise InvalidArgumentError("cell weights must be positive")
        object.__setattr__(self, "locations", locations)
        object.__setattr__(self, "activities", tuple(sorted(set(self.activities))))
        object.__setattr__(self, "_weights", dict(locations))

    @property
    def cells(self) -> tuple[int, ...]:
        return tuple(self._weights)

    def weight(self, cell: int) -> Fraction:
        return self._weights.get(cell, Fraction(0))

    def has_cell(self, cell: int) -> bool:
        return cell in self._weights

    @property
    def total_weight(self) -> Fraction:
        return sum(self._weights.values(), Fraction(0))

    @property
    def is_null(self) -> bool:
        return not self.locations or not self.activities


@dataclass(frozen=True)
class WlasSequence:
    id: str
    terms: tuple[WlasTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class WlasDatabase:
    sequences: tuple[WlasSequence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        ids = [s.id for s in self.sequences]
        if len(set(ids)) != len(ids):
            raise InvalidArgumentError("sequence ids must be unique")

    def __len__(self):
        return len(self.sequences)

    def __iter__(self) -> Iterator[WlasSequence]:
        return iter(self.sequences)

    @property
    def activities(self) -> tuple[str, ...]:
        return tuple(sorted({a for s in self.sequences for t in s.terms for a in t.activities}))

    @property
    def cells(self) -> tuple[int, ...]:
        return tuple(sorted({c for s in self.sequences for t in s.terms for c in t.cells}))


@dataclass(frozen=True, order=True)
class PatternTerm:
    cells: tuple[int, ...]
    activities: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(sorted(set(int(c) for c in self.cells))))
        object.__setattr__(self, "activities", tuple(sorted(set(self.activities))))
        if not self.cells:
            raise InvalidArgumentError("a pattern term needs at least one cell")

    @property
    def complete(self) -> bool:
        return bool(self.activities)

    def __str__(self):
        cells = ",".join(map(str, self.cells))
        acts = ",".join(self.activities)
        if len(self.cells) > 1:
            cells = "{" + cells + "}"
        if len(self.activities) != 1:
            acts = "{" + acts + "}"
        return f"({cells},{acts})"


@dataclass(frozen=True)
class TrajectoryPattern:
    terms: tuple[PatternTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(not t.complete for t in self.terms[:-1]):
            raise InvalidArgumentError("only the last pattern term may lack activities")

    @classmethod
    def of(cls, *terms) -> "TrajectoryPattern":
        """Shorthand: ``TrajectoryPattern.of(([1, 2], "ab"), (5, "g"))``.

        A bare int stands for a single cell and a string for its characters.
        """
        built = []
        for cells, acts in terms:
            if isinstance(cells, int):
                cells = (cells,)
            if isinstance(acts, str):
                acts = tuple(acts)
            built.append(PatternTerm(tuple(cells), tuple(acts)))
        return cls(tuple(built))

    def __len__(self):
        return len(self.terms)

    @property
    def emittable(self) -> bool:
        return bool(self.terms) and self.terms[-1].complete

    def canonical_key(self):
        """Sort key for deterministic tie-breaking: term count, cells, activities."""
        return (len(self.terms), tuple(t.cells for t in self.terms),
                tuple(t.activities for t in self.terms))

    def __str__(self):
        return "<" + " ".join(map(str, self.terms)) + ">"


TermLike = Union[WlasTerm, PatternTerm]


class PivotMatch(NamedTuple):
    term_index: int
    embeddings: list[tuple[int, ...]]


def contains_term(inner: TermLike, outer: WlasTerm) -> bool:
    """Set containment of cells and of activities; weights are ignored."""
    return (all(outer.has_cell(c) for c in inner.cells)
            and set(inner.activities).issubset(outer.activities))


def find_exact_matches(pattern: TrajectoryPattern, seq: WlasSequence) -> list[tuple[int, ...]]:
    """Every strictly increasing index tuple at which ``pattern`` is contained.

    Results are in lexicographic order of the index tuples.
    """
    n, m = len(pattern.terms), len(seq.terms)
    if n == 0 or n > m:
        return []
    hosts = [[j for j in range(m) if contains_term(t, seq.terms[j])] for t in pattern.terms]
    out: list[tuple[int, ...]] = []

    def extend(i, start, prefix):
        if i == n:
            out.append(tuple(prefix))
            return
        for j in hosts[i]:
            if j >= start and m - j >= n - i:
                prefix.append(j)
                extend(i + 1, j + 1, prefix)
                prefix.pop()

    extend(0, 0, [])
    return out


def pivot_match(pattern: TrajectoryPattern, seq: WlasSequence) -> Optional[PivotMatch]:
    """Earliest-ending matches: the pivot term index and all matches ending there."""
    matches = find_exact_matches(pattern, seq)
    if not matches:
        return None
    pivot = min(e[-1] for e in matches)
    return PivotMatch(pivot, [e for e in matches if e[-1] == pivot])


def strip_term(term: WlasTerm, after: PatternTerm) -> Optional[WlasTerm]:
    """Leftover of ``term`` once the items of ``after`` are consumed.

    Keeps cells with id above ``after``'s largest cell and activities above its
    largest activity (all activities when ``after`` has none). Returns None
    when either side ends up empty.
    """
    max_cell = max(after.cells)
    cells = tuple((c, w) for c, w in term.locations if c > max_cell)
    if after.activities:
        max_act = max(after.activities)
        acts = tuple(a for a in term.activities if a > max_act)
    else:
        acts = term.activities
    if not cells or not acts:
        return None
    return WlasTerm(cells, acts)


def projected_subsequence(pattern: TrajectoryPattern, seq: WlasSequence) -> Optional[WlasSequence]:
    """Remainder of ``seq`` after the pivot term, with the pivot term's leftovers first."""
    pm = pivot_match(pattern, seq)
    if pm is None:
        return None
    head = strip_term(seq.terms[pm.term_index], pattern.terms[-1])
    tail = seq.terms[pm.term_index + 1:]
    return WlasSequence(seq.id, ((head,) if head is not None else ()) + tail)


def r_pattern(seq: WlasSequence) -> TrajectoryPattern:
    """The raw pattern: every term of ``seq`` with all its cells and activities."""
    return TrajectoryPattern(tuple(PatternTerm(t.cells, t.activities) for t in seq.terms))

