"""Relevance scores of trajectory patterns over wLAS sequences.

All scores are exact ``Fraction`` values. A pattern's relevance in one
sequence is the best, over its matches, of the summed term relevances; its
relevance in a database is the sum of those per-sequence maxima.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .model import (TrajectoryPattern, PatternTerm, WlasDatabase, WlasSequence, WlasTerm,
                    contains_term, find_exact_matches, strip_term)

ZERO = Fraction(0)


class NoMatch(NamedTuple):
    """Returned by the pivot-based scores when the pattern does not match."""
    value: Fraction = ZERO
    matched: bool = False


class PtrResult(NamedTuple):
    total: Fraction
    per_sequence: dict


def term_relevance(term: PatternTerm, wlas: WlasTerm) -> Fraction:
    if not contains_term(term, wlas):
        return ZERO
    return sum((wlas.weight(c) for c in term.cells), ZERO)


def end_relevances(pattern: TrajectoryPattern, seq: WlasSequence) -> dict[int, Fraction]:
    """Map each index where some match of ``pattern`` ends to the best match relevance.

    Dynamic programme over terms; no match enumeration.
    """
    best: dict[int, Fraction] = {-1: ZERO}
    for pterm in pattern.terms:
        nxt = {}
        running = None
        prev = sorted(best)
        k = 0
        for j, wterm in enumerate(seq.terms):
            while k < len(prev) and prev[k] < j:
                v = best[prev[k]]
                running = v if running is None or v > running else running
                k += 1
            if running is not None and contains_term(pterm, wterm):
                nxt[j] = running + term_relevance(pterm, wterm)
        if not nxt:
            return {}
        best = nxt
    return best if pattern.terms else {}


def relevance_values(pattern: TrajectoryPattern, seq: WlasSequence) -> list[Fraction]:
    """Relevance of every exact match, in match order (introspection helper)."""
    return [sum((term_relevance(t, seq.terms[j]) for t, j in zip(pattern.terms, e)), ZERO)
            for e in find_exact_matches(pattern, seq)]


def max_relevance(pattern: TrajectoryPattern, seq: WlasSequence) -> Fraction:
    ends = end_relevances(pattern, seq)
    return max(ends.values()) if ends else ZERO


def db_relevance(pattern: TrajectoryPattern, db: WlasDatabase) -> Fraction:
    return sum((max_relevance(pattern, s) for s in db), ZERO)


def sequence_relevance(seq: WlasSequence) -> Fraction:
    # a length-n pattern embeds in a length-n sequence only at the identity,
    # so the r-pattern's relevance is the plain weight total
    return sum((t.total_weight for t in seq.terms if not t.is_null), ZERO)


def msr(pattern: TrajectoryPattern, db: WlasDatabase) -> Fraction:
    """Matching sequence-relevance: total sequence relevance of matching sequences."""
    return sum((sequence_relevance(s) for s in db if end_relevances(pattern, s)), ZERO)


def pivot_match_relevance(pattern: TrajectoryPattern, seq: WlasSequence):
    ends = end_relevances(pattern, seq)
    if not ends:
        return NoMatch()
    return ends[min(ends)]


def _rest_after(pattern: TrajectoryPattern, seq: WlasSequence, pivot: int) -> Fraction:
    head = strip_term(seq.terms[pivot], pattern.terms[-1])
    rest = sum((t.total_weight for t in seq.terms[pivot + 1:]), ZERO)
    return rest + (head.total_weight if head is not None else ZERO)


def rest_relevance(pattern: TrajectoryPattern, seq: WlasSequence):
    """Sequence relevance of the projected subsequence, or ``NoMatch()``."""
    ends = end_relevances(pattern, seq)
    if not ends:
        return NoMatch()
    return _rest_after(pattern, seq, min(ends))


def ptr(pattern: TrajectoryPattern, db: WlasDatabase) -> PtrResult:
    """Projected trajectory-pattern relevance: pivot-match plus projected-subsequence relevance.

    This is the pivot-only quantity used for exploration ordering. It is *not*
    an upper bound on the relevance of every extension; see
    :func:`extension_bound` for the bound used to prune.
    """
    per = {}
    for seq in db:
        ends = end_relevances(pattern, seq)
        if ends:
            pivot = min(ends)
            per[seq.id] = ends[pivot] + _rest_after(pattern, seq, pivot)
        else:
            per[seq.id] = ZERO
    return PtrResult(sum(per.values(), ZERO), per)


def extension_bound(pattern: TrajectoryPattern, db: WlasDatabase,
                    cells_extendable: bool = True) -> PtrResult:
    """Upper bound on the relevance of ``pattern`` and every pattern grown from it.

    For each sequence, maximise over *all* match end positions ``j`` the best
    match relevance ending at ``j`` plus the weight still reachable: cells of
    term ``j`` above the last term's largest cell (only while the last term can
    still take cells) and every later term in full.
    """
    last = pattern.terms[-1]
    max_cell = max(last.cells)
    per = {}
    for seq in db:
        ends = end_relevances(pattern, seq)
        best = ZERO
        for j, u in ends.items():
            after = sum((t.total_weight for t in seq.terms[j + 1:]), ZERO)
            if cells_extendable:
                after += sum((w for c, w in seq.terms[j].locations if c > max_cell), ZERO)
            best = max(best, u + after)
        per[seq.id] = best
    return PtrResult(sum(per.values(), ZERO), per)
