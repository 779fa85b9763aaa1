"""How much work do seeding and ordering save on small random databases?"""
# %%
import random
from fractions import Fraction

import numpy as np

from trajmine import VARIANTS, MiningConfig, WlasDatabase, WlasSequence, WlasTerm, mine_topk


def random_db(rng, n_seqs=5, n_terms=3, n_cells=6, acts="abcd"):
    seqs = []
    for s in range(rng.randint(2, n_seqs)):
        terms = []
        for _ in range(rng.randint(1, n_terms)):
            cells = rng.sample(range(n_cells), rng.randint(1, 3))
            raw = [rng.randint(1, 6) for _ in cells]
            weights = tuple((c, Fraction(r, sum(raw))) for c, r in zip(cells, raw))
            terms.append(WlasTerm(weights, tuple(rng.sample(acts, rng.randint(1, 2)))))
        seqs.append(WlasSequence(f"s{s}", tuple(terms)))
    return WlasDatabase(tuple(seqs))


rng = random.Random(5)
dbs = [random_db(rng) for _ in range(60)]

# %%
calls = {name: [] for name in VARIANTS}
for db in dbs:
    reference = None
    for name in VARIANTS:
        res, m = mine_topk(db, MiningConfig.preset(name, 10))
        reference = reference or res
        assert res == reference
        calls[name].append(m.recursive_calls)

table = np.array([calls[name] for name in VARIANTS])
print(f"{'variant':<12}{'median':>8}{'p90':>8}{'vs baseline':>13}")
for name, row in zip(VARIANTS, table):
    ratio = np.median(row / table[0])
    print(f"{name:<12}{np.median(row):>8.0f}{np.percentile(row, 90):>8.0f}{ratio:>13.2f}")

# %%
# Larger k means a lower threshold for longer, so pruning bites later.
for k in (1, 5, 20):
    r = [mine_topk(db, MiningConfig.preset("full", k))[1].recursive_calls for db in dbs[:20]]
    print("k =", k, "median calls", int(np.median(r)))
