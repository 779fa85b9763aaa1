import itertools
import random
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pattern_T, random_db, sample_db, term
from trajmine.model import PatternTerm, TrajectoryPattern, WlasDatabase, WlasSequence
from trajmine.relevance import (NoMatch, db_relevance, max_relevance, msr, pivot_match_relevance,
                                ptr, relevance_values, rest_relevance, sequence_relevance,
                                term_relevance)

P = TrajectoryPattern.of
T_prime = P((7, "e"), (9, "d"))


def test_term_relevance():
    a1 = sample_db().sequences[0]
    eta1, eta2 = pattern_T().terms
    assert term_relevance(eta1, a1.terms[0]) == F(1, 2)
    assert term_relevance(eta2, a1.terms[2]) == F(1, 10)
    assert term_relevance(PatternTerm((1,), ("z",)), a1.terms[0]) == 0


def test_max_and_db_relevance(db5):
    T = pattern_T()
    assert [max_relevance(T, s) for s in db5] == [F(9, 10), 0, F(4, 5)]
    assert db_relevance(T, db5) == F(17, 10)
    assert sorted(relevance_values(T, db5.sequences[0]), reverse=True) == [F(9, 10), F(3, 5), F(1, 2)]


def test_db_relevance_trivial_cases(db5):
    T = pattern_T()
    assert db_relevance(T, WlasDatabase(())) == 0
    a1 = db5.sequences[0]
    assert db_relevance(T, WlasDatabase((a1,))) == max_relevance(T, a1)


def test_sequence_relevance(db5):
    assert [sequence_relevance(s) for s in db5] == [3, 3, 2]
    assert sequence_relevance(WlasSequence("e", ())) == 0


def test_msr(db5):
    assert msr(pattern_T(), db5) == 5
    assert msr(P((5, "g")), db5) == 5
    assert msr(P((99, "a")), db5) == 0


def test_pivot_match_relevance(db5):
    assert pivot_match_relevance(pattern_T(), db5.sequences[0]) == F(9, 10)
    assert pivot_match_relevance(T_prime, db5.sequences[1]) == F(27, 50)
    miss = pivot_match_relevance(pattern_T(), db5.sequences[1])
    assert isinstance(miss, NoMatch) and not miss.matched and miss.value == 0


def test_rest_relevance(db5):
    assert rest_relevance(pattern_T(), db5.sequences[0]) == F(6, 5)
    assert rest_relevance(pattern_T(), db5.sequences[2]) == F(4, 5)
    # pivot in the final term with nothing above its cells or activities
    assert rest_relevance(P((11, "g")), db5.sequences[0]) == 0
    assert rest_relevance(pattern_T(), db5.sequences[1]) == NoMatch()


def test_ptr(db5):
    res = ptr(pattern_T(), db5)
    assert res.per_sequence == {"a1": F(21, 10), "a2": 0, "a3": F(8, 5)}
    assert res.total == F(37, 10)
    assert ptr(P((99, "a")), db5).total == 0


def test_ptr_equals_relevance_when_nothing_remains():
    seq = WlasSequence("one", (term({1: "0.4", 2: "0.6"}, "ab"),))
    db = WlasDatabase((seq,))
    T = P(([1, 2], "ab"))
    assert ptr(T, db).total == max_relevance(T, seq) == 1


def _sub_pattern(rng, pattern):
    """Random T1 with T1 contained in T2 = pattern: drop terms, then items."""
    keep = sorted(rng.sample(range(len(pattern.terms)), rng.randint(1, len(pattern.terms))))
    terms = []
    for i in keep:
        t = pattern.terms[i]
        cells = rng.sample(t.cells, rng.randint(1, len(t.cells)))
        acts = rng.sample(t.activities, rng.randint(1, len(t.activities)))
        terms.append(PatternTerm(tuple(cells), tuple(acts)))
    return TrajectoryPattern(tuple(terms))


def _pattern_from(rng, seq):
    idx = sorted(rng.sample(range(len(seq.terms)), rng.randint(1, len(seq.terms))))
    terms = []
    for j in idx:
        t = seq.terms[j]
        terms.append(PatternTerm(tuple(rng.sample(t.cells, rng.randint(1, len(t.cells)))),
                                 tuple(rng.sample(t.activities, rng.randint(1, len(t.activities))))))
    return TrajectoryPattern(tuple(terms))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_relevance_properties(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    seq = rng.choice(db.sequences)
    T2 = _pattern_from(rng, seq)
    T1 = _sub_pattern(rng, T2)
    assert msr(T2, db) <= msr(T1, db)
    assert db_relevance(T2, db) <= msr(T2, db)
    values = relevance_values(T2, seq)
    assert values and max(values) == max_relevance(T2, seq)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_db_relevance_additive_over_union(seed):
    rng = random.Random(seed)
    a, b = random_db(rng), random_db(rng)
    b = WlasDatabase(tuple(WlasSequence("b" + s.id, s.terms) for s in b))
    both = WlasDatabase(a.sequences + b.sequences)
    T = _pattern_from(rng, rng.choice(both.sequences))
    assert db_relevance(T, both) == db_relevance(T, a) + db_relevance(T, b)


def test_max_relevance_matches_enumeration_exhaustively():
    # every 1- and 2-term pattern over a small alphabet against every sample sequence
    db = sample_db()
    singles = [PatternTerm(c, a) for c in [(1,), (5,), (7,), (1, 2)] for a in [("a",), ("g",), ("a", "b")]]
    for t1, t2 in itertools.product(singles, repeat=2):
        p = TrajectoryPattern((t1, t2))
        for seq in db:
            vals = relevance_values(p, seq)
            assert max_relevance(p, seq) == (max(vals) if vals else 0)
