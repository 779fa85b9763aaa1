import random
from fractions import Fraction

import pytest

from trajmine.grid import AnonymousTrajectory, Mbr, Region, build_grid
from trajmine.model import TrajectoryPattern, WlasDatabase, WlasSequence, WlasTerm


def term(weights, acts):
    return WlasTerm(tuple((c, Fraction(w)) for c, w in weights.items()), tuple(acts))


def sample_db():
    a1 = WlasSequence("a1", (
        term({1: "0.25", 2: "0.25", 5: "0.25", 6: "0.25"}, "abh"),
        term({1: "0.2", 2: "0.2", 5: "0.4", 7: "0.2"}, "abgj"),
        term({3: "0.2", 5: "0.1", 7: "0.25", 11: "0.45"}, "acdg"),
    ))
    a2 = WlasSequence("a2", (
        term({3: "0.26", 4: "0.22", 7: "0.3", 8: "0.22"}, "deh"),
        term({6: "0.13", 7: "0.2", 10: "0.2", 11: "0.47"}, "efg"),
        term({9: "0.24", 10: "0.34", 13: "0.22", 14: "0.2"}, "df"),
    ))
    a3 = WlasSequence("a3", (
        term({1: "0.2", 2: "0.4", 6: "0.1", 7: "0.3"}, "abh"),
        term({5: "0.2", 6: "0.3", 10: "0.2", 11: "0.3"}, "agh"),
    ))
    return WlasDatabase((a1, a2, a3))


def gamma_seq():
    return WlasSequence("gamma", (
        term({2: "0.6", 3: "0.4"}, "beh"),
        term({3: "0.2", 4: "0.8"}, "abfg"),
        term({4: "0.3", 6: "0.7"}, "cfh"),
    ))


def example_grid():
    # 4 columns x 8 rows of unit cells; ids p1..p32 when written 1-based
    return build_grid(Region(0, 0, 4, 8), 1, 1)


def example_trajectory():
    return AnonymousTrajectory("ex1", (
        (Mbr(0, "0.5", "1.5", 2), "abh"),
        (Mbr(2, "2.5", "3.5", "3.5"), "acfg"),
        (Mbr("1.5", "5.5", "2.5", 7), "bce"),
        (Mbr("0.5", 6, "1.5", 7), "ach"),
    ))


def example_seq():
    """Example trajectory in wLAS form with 1-based cell ids."""
    return WlasSequence("ex1", (
        term({1: Fraction(2, 9), 2: Fraction(1, 9), 5: Fraction(4, 9), 6: Fraction(2, 9)}, "abh"),
        term({11: Fraction(1, 3), 12: Fraction(1, 6), 15: Fraction(1, 3), 16: Fraction(1, 6)}, "acfg"),
        term({22: Fraction(1, 6), 23: Fraction(1, 6), 26: Fraction(1, 3), 27: Fraction(1, 3)}, "bce"),
        term({25: Fraction(1, 2), 26: Fraction(1, 2)}, "ach"),
    ))


def pattern_T():
    return TrajectoryPattern.of(([1, 2], "ab"), (5, "g"))


def random_db(rng, max_seqs=5, max_terms=3, n_cells=6, n_acts=4, max_term_cells=3, max_term_acts=2):
    """Small random database with rational weights summing to 1 in every term."""
    cells = list(range(n_cells))
    acts = "abcdefgh"[:n_acts]
    seqs = []
    for s in range(rng.randint(1, max_seqs)):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            chosen = rng.sample(cells, rng.randint(1, max_term_cells))
            raw = [rng.randint(1, 6) for _ in chosen]
            total = sum(raw)
            weights = {c: Fraction(r, total) for c, r in zip(chosen, raw)}
            terms.append(term(weights, rng.sample(acts, rng.randint(1, max_term_acts))))
        seqs.append(WlasSequence(f"s{s}", tuple(terms)))
    return WlasDatabase(tuple(seqs))


def random_corpus(n, seed=2024, **kw):
    rng = random.Random(seed)
    return [random_db(rng, **kw) for _ in range(n)]


@pytest.fixture
def db5():
    return sample_db()


@pytest.fixture
def gamma():
    return gamma_seq()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(text)
