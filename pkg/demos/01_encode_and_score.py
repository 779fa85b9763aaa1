"""Encode one anonymized trajectory on a grid and score a few patterns by hand."""
# %%
from fractions import Fraction

from trajmine import (Mbr, Region, TrajectoryPattern, WlasDatabase, build_grid, db_relevance,
                      encode_database, find_exact_matches, msr, ptr)
from trajmine.grid import AnonymousTrajectory

# A 4 x 8 block of unit cells. Ids run row-major from the lower-left corner.
grid = build_grid(Region(0, 0, 4, 8), 1, 1)
print(grid.n_cols, "columns x", grid.n_rows, "rows =", grid.n_cells, "cells")

# %%
# Each visit was generalized to a rectangle plus a set of activities.
traj = AnonymousTrajectory("walker", (
    (Mbr(0, 0.5, 1.5, 2), "abh"),
    (Mbr(2, 2.5, 3.5, 3.5), "acfg"),
    (Mbr(1.5, 5.5, 2.5, 7), "bce"),
    (Mbr(0.5, 6, 1.5, 7), "ach"),
))
db = encode_database([traj], grid)
for t in db.sequences[0].terms:
    cells = ", ".join(f"{c}:{w}" for c, w in t.locations)
    print(f"{{{cells}}}  {''.join(t.activities)}")

# Weights are overlap ratios, so every term sums to exactly one.
assert all(t.total_weight == 1 for t in db.sequences[0].terms)

# %%
# A pattern names cells and activities per step. Its relevance is the best
# total weight over all places it fits.
home_then_shop = TrajectoryPattern.of(([0, 4], "a"), (25, "c"))
print("matches:", find_exact_matches(home_then_shop, db.sequences[0]))
print("relevance:", db_relevance(home_then_shop, db))
print("matching sequence relevance:", msr(home_then_shop, db))
print("projected relevance:", ptr(home_then_shop, db).total)

# %%
# Two identical walkers double the score, as relevance adds up over sequences.
twin = AnonymousTrajectory("twin", traj.terms)
both = encode_database([traj, twin], grid)
assert db_relevance(home_then_shop, both) == 2 * db_relevance(home_then_shop, db)
print("two walkers:", db_relevance(home_then_shop, both), "=", float(db_relevance(home_then_shop, both)))
