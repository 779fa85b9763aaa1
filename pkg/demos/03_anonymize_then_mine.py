"""Synthetic commuters -> toy anonymization -> grid encoding -> top-k patterns."""
# %%
import numpy as np

from trajmine import MiningConfig, Region, build_grid, encode_database, mine_topk
from trajmine.anonymize import RawTrajectory, toy_anonymize, validate_anonymization

rng = np.random.default_rng(11)
region = Region(0, 0, 10, 10)
grid = build_grid(region, 2, 2)

# Three hubs; each commuter visits them in order with some jitter.
hubs = np.array([[1.5, 1.5], [5.0, 5.0], [8.5, 8.0]])
hub_acts = ["home", "work", "gym"]
extras = ["coffee", "food", "shop"]

raws = []
for i in range(12):
    pts = np.clip(hubs + rng.normal(scale=0.6, size=hubs.shape), 0, 10).round(2)
    terms = []
    for (x, y), act in zip(pts, hub_acts):
        acts = {act} | ({str(rng.choice(extras))} if rng.random() < 0.5 else set())
        terms.append(((float(x), float(y)), sorted(acts)))
    raws.append(RawTrajectory(f"c{i:02d}", tuple(terms)))

# %%
anon = toy_anonymize(raws, k_anon=3, l_div=2, seed=0, grid=grid)
validate_anonymization(raws, anon, 3, 2)
mbr, acts = anon[0].terms[0]
print("first visit of c00 becomes", [float(v) for v in mbr.bounds()], acts)

# %%
db = encode_database(anon, grid)
sizes = np.array([len(t.cells) for s in db for t in s.terms])
print("cells per anonymized visit: mean", sizes.mean().round(2), "max", sizes.max())

# %%
results, metrics = mine_topk(db, MiningConfig(k=5))
for pattern, score in results:
    print(f"{float(score):6.2f}  {pattern}")
print(metrics.recursive_calls, "recursive calls")
