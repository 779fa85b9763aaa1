"""Mine the top patterns of a tiny database and compare the search variants."""
# %%
from fractions import Fraction

from trajmine import (VARIANTS, MiningConfig, WlasDatabase, WlasSequence, WlasTerm, brute_topk,
                      mine_topk)


def term(weights, acts):
    return WlasTerm(tuple((c, Fraction(w)) for c, w in weights.items()), tuple(acts))


db = WlasDatabase((
    WlasSequence("a1", (term({1: "0.25", 2: "0.25", 5: "0.25", 6: "0.25"}, "abh"),
                        term({1: "0.2", 2: "0.2", 5: "0.4", 7: "0.2"}, "abgj"),
                        term({3: "0.2", 5: "0.1", 7: "0.25", 11: "0.45"}, "acdg"))),
    WlasSequence("a2", (term({3: "0.26", 4: "0.22", 7: "0.3", 8: "0.22"}, "deh"),
                        term({6: "0.13", 7: "0.2", 10: "0.2", 11: "0.47"}, "efg"),
                        term({9: "0.24", 10: "0.34", 13: "0.22", 14: "0.2"}, "df"))),
    WlasSequence("a3", (term({1: "0.2", 2: "0.4", 6: "0.1", 7: "0.3"}, "abh"),
                        term({5: "0.2", 6: "0.3", 10: "0.2", 11: "0.3"}, "agh"))),
))

# %%
results, metrics = mine_topk(db, MiningConfig(k=3))
for pattern, score in results:
    print(f"{float(score):.3f}  {pattern}")

# %%
# Every variant returns the same list; only the amount of work differs.
print(f"{'variant':<12}{'calls':>8}{'candidates':>12}{'depth pruned':>14}")
for name in VARIANTS:
    res, m = mine_topk(db, MiningConfig.preset(name, 3))
    assert res == results
    print(f"{name:<12}{m.recursive_calls:>8}{m.candidates_generated:>12}{m.depth_pruned:>14}")

# %%
# The threshold only goes up. With seeding it starts high instead of at zero.
for name in ("baseline", "full"):
    _, m = mine_topk(db, MiningConfig.preset(name, 3))
    print(name, [(i, str(t)) for i, t in m.threshold_trace[:6]], "...")

# %%
# Cross-check with exhaustive enumeration (a few minutes on this database):
# assert brute_topk(db, 3) == results
