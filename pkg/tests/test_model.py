import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gamma_seq, random_db, example_seq, sample_db, term
from trajmine.errors import InvalidArgumentError
from trajmine.model import (PatternTerm, TrajectoryPattern, WlasDatabase, WlasSequence, WlasTerm,
                            contains_term, find_exact_matches, pivot_match, projected_subsequence,
                            r_pattern, strip_term)

P = TrajectoryPattern.of
T_a = P((2, "b"), (3, "b"))
T_b = P((2, "be"), (4, "f"))
T_c = P((3, "b"), (4, "f"))
T_d = P((3, "b"), (6, "c"))
T_e = P((4, "e"))


class TestTypes:
    def test_term_sorted(self):
        t = term({5: "0.5", 1: "0.5"}, "ba")
        assert t.cells == (1, 5) and t.activities == ("a", "b")
        assert t.total_weight == 1

    def test_duplicate_cell_rejected(self):
        with pytest.raises(InvalidArgumentError):
            WlasTerm(((1, Fraction(1, 2)), (1, Fraction(1, 2))), ("a",))

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(InvalidArgumentError):
            WlasTerm(((1, Fraction(0)),), ("a",))

    def test_duplicate_ids_rejected(self):
        s = gamma_seq()
        with pytest.raises(InvalidArgumentError):
            WlasDatabase((s, s))

    def test_only_last_term_incomplete(self):
        with pytest.raises(InvalidArgumentError):
            TrajectoryPattern((PatternTerm((1,)), PatternTerm((2,), ("a",))))
        p = TrajectoryPattern((PatternTerm((1,), ("a",)), PatternTerm((2,))))
        assert not p.emittable
        assert T_a.emittable

    def test_empty_cells_rejected(self):
        with pytest.raises(InvalidArgumentError):
            PatternTerm(())

    def test_str(self):
        assert str(P(([1, 2], "ab"), (5, "g"))) == "<({1,2},{a,b}) (5,g)>"

    def test_database_universe(self):
        db = sample_db()
        assert db.activities == tuple("abcdefghj")
        assert db.cells[0] == 1 and db.cells[-1] == 14


class TestContainment:
    def test_subsequence_example(self):
        beta1 = WlasTerm(((2, Fraction(1, 3)), (6, Fraction(2, 3))), ("h",))
        assert contains_term(beta1, example_seq().terms[0])

    def test_reflexive(self):
        t = gamma_seq().terms[1]
        assert contains_term(t, t)

    def test_missing_activity(self):
        assert not contains_term(PatternTerm((4,), ("e",)), gamma_seq().terms[1])


class TestMatches:
    def test_three_embeddings(self):
        assert find_exact_matches(T_c, gamma_seq()) == [(0, 1), (0, 2), (1, 2)]

    def test_two_embeddings(self):
        assert find_exact_matches(T_b, gamma_seq()) == [(0, 1), (0, 2)]

    def test_no_match(self):
        assert find_exact_matches(T_e, gamma_seq()) == []
        assert pivot_match(T_e, gamma_seq()) is None
        assert projected_subsequence(T_e, gamma_seq()) is None

    def test_raw_pattern_matches_once(self):
        g = gamma_seq()
        assert find_exact_matches(r_pattern(g), g) == [(0, 1, 2)]
        a3 = sample_db().sequences[2]
        assert find_exact_matches(r_pattern(a3), a3) == [(0, 1)]

    def test_pivot_with_two_embeddings(self):
        pm = pivot_match(T_d, gamma_seq())
        assert pm.term_index == 2
        assert pm.embeddings == [(0, 2), (1, 2)]

    def test_pivot_unique(self):
        pm = pivot_match(T_a, gamma_seq())
        assert pm.term_index == 1 and pm.embeddings == [(0, 1)]


class TestProjection:
    def test_leftover_pivot_term(self):
        g = gamma_seq()
        proj = projected_subsequence(T_a, g)
        assert proj.terms[0].locations == ((4, Fraction(4, 5)),)
        assert proj.terms[0].activities == ("f", "g")
        assert proj.terms[1:] == g.terms[2:]

    @pytest.mark.parametrize("pattern", [T_b, T_c])
    def test_null_pivot_term(self, pattern):
        g = gamma_seq()
        assert projected_subsequence(pattern, g).terms == g.terms[2:]

    def test_empty_suffix(self):
        assert projected_subsequence(T_d, gamma_seq()).terms == ()

    def test_strip_without_activities_keeps_all(self):
        t = gamma_seq().terms[1]
        stripped = strip_term(t, PatternTerm((3,)))
        assert stripped.cells == (4,) and stripped.activities == t.activities

    def test_r_pattern(self):
        assert r_pattern(gamma_seq()) == P(([2, 3], "beh"), ([3, 4], "abfg"), ([4, 6], "cfh"))
        one = WlasSequence("x", (term({1: 1}, "a"),))
        assert len(r_pattern(one)) == 1


def _random_pattern(rng, seq, n_cells=6, acts="abcd"):
    # mostly patterns drawn from the sequence so that matches are common
    terms = []
    for _ in range(rng.randint(1, 2)):
        if rng.random() < 0.7:
            src = rng.choice(seq.terms)
            cells = rng.sample(src.cells, rng.randint(1, len(src.cells)))
            a = rng.sample(src.activities, rng.randint(1, len(src.activities)))
        else:
            cells = rng.sample(range(n_cells), rng.randint(1, 2))
            a = rng.sample(acts, 1)
        terms.append(PatternTerm(tuple(cells), tuple(a)))
    return TrajectoryPattern(tuple(terms))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_match_properties(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    for seq in db:
        p = _random_pattern(rng, seq)
        found = find_exact_matches(p, seq)
        brute = [idx for idx in itertools.combinations(range(len(seq.terms)), len(p.terms))
                 if all(contains_term(t, seq.terms[j]) for t, j in zip(p.terms, idx))]
        assert found == brute
        pm = pivot_match(p, seq)
        if not found:
            assert pm is None
            continue
        assert pm.term_index == min(e[-1] for e in found)
        proj = projected_subsequence(p, seq)
        last = p.terms[-1]
        if proj.terms and len(proj.terms) > len(seq.terms) - pm.term_index - 1:
            head = proj.terms[0]
            assert all(c > max(last.cells) for c in head.cells)
            assert all(a > max(last.activities) for a in head.activities)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_containment_transitive(seed):
    rng = random.Random(seed)
    terms = [t for s in random_db(rng, n_cells=3, n_acts=2) for t in s.terms]
    for a, b, c in itertools.product(terms[:4], repeat=3):
        if contains_term(a, b) and contains_term(b, c):
            assert contains_term(a, c)
