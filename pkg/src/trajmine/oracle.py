"""Brute-force reference: enumerate every pattern a small database supports.

Each sequence is expanded match by match: for every increasing choice of term
indices and every non-empty (cell subset, activity subset) of each chosen term
we get a pattern and the relevance of that particular match. Keeping the best
match per sequence and summing over sequences gives the database relevance
directly from the definition, with no dynamic programming or projection.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator

from .errors import InvalidArgumentError, SizeLimitError
from .model import PatternTerm, TrajectoryPattern, WlasDatabase

DEFAULT_CAP = 10 ** 7


def _subsets(items):
    return [c for r in range(1, len(items) + 1) for c in itertools.combinations(items, r)]


def universe_size(db: WlasDatabase) -> int:
    """Number of (match, pattern) candidates the enumeration will visit."""
    total = 0
    for seq in db:
        counts = [(2 ** len(t.cells) - 1) * (2 ** len(t.activities) - 1) for t in seq.terms]
        # sum over non-empty index subsets of the product of per-term counts
        total += math.prod(c + 1 for c in counts) - 1
    return total


def _check_cap(db: WlasDatabase, cap: int):
    size = universe_size(db)
    if size > cap:
        raise SizeLimitError(f"enumeration needs {size} candidate checks, cap is {cap}")


def pattern_scores(db: WlasDatabase, cap: int = DEFAULT_CAP) -> dict[TrajectoryPattern, Fraction]:
    _check_cap(db, cap)
    totals: dict[TrajectoryPattern, Fraction] = {}
    for seq in db:
        options = []
        for term in seq.terms:
            opts = []
            for cells in _subsets(term.cells):
                w = sum((term.weight(c) for c in cells), Fraction(0))
                for acts in _subsets(term.activities):
                    opts.append((PatternTerm(cells, acts), w))
            options.append(opts)
        best: dict[TrajectoryPattern, Fraction] = {}
        for r in range(1, len(seq.terms) + 1):
            for idx in itertools.combinations(range(len(seq.terms)), r):
                for combo in itertools.product(*(options[i] for i in idx)):
                    pattern = TrajectoryPattern(tuple(t for t, _ in combo))
                    score = sum((w for _, w in combo), Fraction(0))
                    if score > best.get(pattern, -1):
                        best[pattern] = score
        for pattern, score in best.items():
            totals[pattern] = totals.get(pattern, Fraction(0)) + score
    return totals


def enumerate_patterns(db: WlasDatabase, cap: int = DEFAULT_CAP) -> Iterator[tuple[TrajectoryPattern, Fraction]]:
    """Yield ``(pattern, db_relevance)`` for every pattern with positive relevance."""
    for pattern, score in pattern_scores(db, cap).items():
        if score > 0:
            yield pattern, score


def brute_topk(db: WlasDatabase, k: int, cap: int = DEFAULT_CAP) -> list[tuple[TrajectoryPattern, Fraction]]:
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    ranked = sorted(enumerate_patterns(db, cap), key=lambda ps: (-ps[1], ps[0].canonical_key()))
    return ranked[:k]
