"""Toy k-anonymity / l-diversity generalization for producing test data.

Each term of each trajectory is generalized on its own: starting from the term's
own point, the nearest points of the whole dataset are pulled in (ties broken by
a seeded permutation) until the group holds at least ``k_anon`` distinct
locations and ``l_div`` distinct activities. The term becomes the group's MBR
plus the union of the group's activities. Nothing here is a privacy guarantee.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InfeasibleError, InvalidArgumentError, ValidationError
from .grid import AnonymousTrajectory, CellGrid, Mbr, exact


@dataclass(frozen=True)
class RawTrajectory:
    """Pre-anonymization trajectory: ``terms`` is a tuple of ((x, y), activities)."""
    id: str
    terms: tuple

    def __post_init__(self):
        fixed = []
        for idx, (point, acts) in enumerate(self.terms):
            x, y = point
            acts = tuple(sorted(set(acts)))
            if not acts:
                raise InvalidArgumentError(f"trajectory {self.id}, term {idx}: empty activity set")
            fixed.append(((exact(x), exact(y)), acts))
        object.__setattr__(self, "terms", tuple(fixed))


def _pool(raws):
    points, acts, owners = [], [], []
    for traj in raws:
        for idx, (pt, a) in enumerate(traj.terms):
            points.append(pt)
            acts.append(a)
            owners.append((traj.id, idx))
    return points, acts, owners


def _snap(lo: Fraction, hi: Fraction, cell_lo: Fraction, cell_hi: Fraction):
    # degenerate axis: use the extent of the cell holding the point
    if lo < hi:
        return lo, hi
    return cell_lo, cell_hi


def _mbr(points, grid: Optional[CellGrid]) -> Mbr:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if x0 == x1 or y0 == y1:
        if grid is None:
            raise InvalidArgumentError("degenerate MBR needs a grid to inflate points to a cell")
        cell = grid.cell_rect(grid.cell_of(x0, y0))
        x0, x1 = _snap(x0, x1, cell.x_min, cell.x_max)
        y0, y1 = _snap(y0, y1, cell.y_min, cell.y_max)
    return Mbr(x0, y0, x1, y1)


def toy_anonymize(raws: Sequence[RawTrajectory], k_anon: int, l_div: int, seed: int = 0,
                  grid: Optional[CellGrid] = None) -> list[AnonymousTrajectory]:
    if k_anon < 1 or l_div < 1:
        raise InvalidArgumentError("k_anon and l_div must be >= 1")
    raws = list(raws)
    if not raws:
        return []
    points, acts, owners = _pool(raws)
    coords = np.array([[float(x), float(y)] for x, y in points])
    tiebreak = np.random.default_rng(seed).permutation(len(points))

    out = []
    flat = 0
    for traj in raws:
        terms, members = [], set()
        for idx, (pt, own_acts) in enumerate(traj.terms):
            dist = np.hypot(*(coords - coords[flat]).T)
            # own point first, then nearest, ties by the seeded permutation
            dist[flat] = -1.0
            order = np.lexsort((tiebreak, dist))
            chosen, locs, group_acts = [], set(), set()
            for j in order:
                chosen.append(points[j])
                locs.add(points[j])
                group_acts.update(acts[j])
                members.add(owners[j][0])
                if len(locs) >= k_anon and len(group_acts) >= l_div:
                    break
            else:
                raise InfeasibleError(
                    f"trajectory {traj.id}, term {idx}: dataset has {len(locs)} distinct locations "
                    f"and {len(group_acts)} distinct activities, need k={k_anon}, l={l_div}")
            terms.append((_mbr(chosen, grid), tuple(sorted(group_acts))))
            flat += 1
        out.append(AnonymousTrajectory(traj.id, tuple(terms), group=tuple(sorted(members))))
    return out


def validate_anonymization(raws: Iterable[RawTrajectory], anon: Iterable[AnonymousTrajectory],
                           k_anon: int, l_div: int):
    """Check containment and the k/l counts term by term; raise ValidationError on the first failure."""
    raws, anon = list(raws), list(anon)
    if [r.id for r in raws] != [a.id for a in anon]:
        raise ValidationError("trajectory ids differ between raw and anonymized data")
    points = {pt for r in raws for pt, _ in r.terms}
    for raw, traj in zip(raws, anon):
        if len(raw.terms) != len(traj.terms):
            raise ValidationError(f"trajectory {raw.id}: term count changed")
        for idx, ((pt, acts), (mbr, anon_acts)) in enumerate(zip(raw.terms, traj.terms)):
            where = f"trajectory {raw.id}, term {idx}"
            if not mbr.contains_point(*pt):
                raise ValidationError(f"{where}: location outside its MBR")
            if not set(acts) <= set(anon_acts):
                raise ValidationError(f"{where}: activities not contained")
            covered = sum(1 for p in points if mbr.contains_point(*p))
            if covered < k_anon:
                raise ValidationError(f"{where}: MBR covers {covered} locations, need {k_anon}")
            if len(set(anon_acts)) < l_div:
                raise ValidationError(f"{where}: {len(set(anon_acts))} activities, need {l_div}")
