"""Rectangular cell partition of a region and MBR -> weighted location set encoding.

Coordinates are converted to exact rationals on entry so overlap ratios such
as 2/9 come out exact. Cells are half-open ``[x, x+w) x [y, y+h)`` and numbered
row-major from the region's minimum corner, starting at 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyEncodingError, InvalidArgumentError, TrajmineError
from .model import WlasDatabase, WlasSequence, WlasTerm


def exact(value) -> Fraction:
    """Convert ints, floats, decimal strings and Fractions to a Fraction.

    Floats go through ``repr`` so ``0.1`` becomes ``1/10`` rather than the
    nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidArgumentError(f"not a coordinate: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidArgumentError(f"non-finite coordinate: {value!r}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"not a number: {value!r}") from exc


@dataclass(frozen=True)
class Rect:
    x_min: Fraction
    y_min: Fraction
    x_max: Fraction
    y_max: Fraction

    def __post_init__(self):
        for name in ("x_min", "y_min", "x_max", "y_max"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidArgumentError(
                f"{type(self).__name__} needs x_min < x_max and y_min < y_max, got "
                f"({self.x_min}, {self.y_min}, {self.x_max}, {self.y_max})")

    @classmethod
    def from_bounds(cls, bounds: Sequence) -> "Rect":
        if len(bounds) != 4:
            raise InvalidArgumentError(f"expected 4 bounds, got {len(bounds)}")
        return cls(*bounds)

    @property
    def width(self) -> Fraction:
        return self.x_max - self.x_min

    @property
    def height(self) -> Fraction:
        return self.y_max - self.y_min

    @property
    def area(self) -> Fraction:
        return self.width * self.height

    def bounds(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)

    def overlap_area(self, other: "Rect") -> Fraction:
        w = min(self.x_max, other.x_max) - max(self.x_min, other.x_min)
        h = min(self.y_max, other.y_max) - max(self.y_min, other.y_min)
        if w <= 0 or h <= 0:
            return Fraction(0)
        return w * h

    def contains_point(self, x, y) -> bool:
        """Closed containment, used for the anonymizer's location constraint."""
        x, y = exact(x), exact(y)
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


class Region(Rect):
    pass


class Mbr(Rect):
    pass


@dataclass(frozen=True)
class CellGrid:
    region: Region
    cell_width: Fraction
    cell_height: Fraction
    n_cols: int = field(init=False)
    n_rows: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cell_width", exact(self.cell_width))
        object.__setattr__(self, "cell_height", exact(self.cell_height))
        if self.cell_width <= 0 or self.cell_height <= 0:
            raise InvalidArgumentError("cell dimensions must be positive")
        object.__setattr__(self, "n_cols", math.ceil(self.region.width / self.cell_width))
        object.__setattr__(self, "n_rows", math.ceil(self.region.height / self.cell_height))

    @property
    def n_cells(self) -> int:
        return self.n_cols * self.n_rows

    def cell_id(self, col: int, row: int) -> int:
        return row * self.n_cols + col

    def cell_rect(self, cell_id: int) -> Rect:
        """Bounds of a cell; the last row/column is clipped to the region."""
        if not 0 <= cell_id < self.n_cells:
            raise InvalidArgumentError(f"cell id {cell_id} outside 0..{self.n_cells - 1}")
        row, col = divmod(cell_id, self.n_cols)
        x0 = self.region.x_min + col * self.cell_width
        y0 = self.region.y_min + row * self.cell_height
        return Rect(x0, y0,
                    min(x0 + self.cell_width, self.region.x_max),
                    min(y0 + self.cell_height, self.region.y_max))

    def _col_of(self, x: Fraction) -> int:
        return min(math.floor((x - self.region.x_min) / self.cell_width), self.n_cols - 1)

    def _row_of(self, y: Fraction) -> int:
        return min(math.floor((y - self.region.y_min) / self.cell_height), self.n_rows - 1)

    def cell_of(self, x, y) -> int:
        """Id of the cell containing a point.

        Points on the region's max edges are assigned to the last column/row so
        that the closed region is covered.
        """
        x, y = exact(x), exact(y)
        r = self.region
        if not (r.x_min <= x <= r.x_max and r.y_min <= y <= r.y_max):
            raise InvalidArgumentError(f"point ({x}, {y}) outside the region")
        return self.cell_id(self._col_of(x), self._row_of(y))

    def cells_overlapping(self, rect: Rect) -> Iterable[int]:
        r = self.region
        x0, x1 = max(rect.x_min, r.x_min), min(rect.x_max, r.x_max)
        y0, y1 = max(rect.y_min, r.y_min), min(rect.y_max, r.y_max)
        if x0 >= x1 or y0 >= y1:
            return
        c0 = math.floor((x0 - r.x_min) / self.cell_width)
        c1 = math.ceil((x1 - r.x_min) / self.cell_width)
        r0 = math.floor((y0 - r.y_min) / self.cell_height)
        r1 = math.ceil((y1 - r.y_min) / self.cell_height)
        for row in range(r0, min(r1, self.n_rows)):
            for col in range(c0, min(c1, self.n_cols)):
                yield self.cell_id(col, row)


def build_grid(region: Region, cell_width, cell_height) -> CellGrid:
    cell_width, cell_height = exact(cell_width), exact(cell_height)
    if cell_width <= 0 or cell_height <= 0:
        raise InvalidArgumentError("cell dimensions must be positive")
    if cell_width > region.width or cell_height > region.height:
        raise InvalidArgumentError(
            f"cell {cell_width}x{cell_height} larger than region {region.width}x{region.height}")
    return CellGrid(region, cell_width, cell_height)


def encode_region(mbr: Rect, grid: CellGrid) -> tuple[tuple[int, Fraction], ...]:
    """Weighted location set of an MBR: ``((cell_id, overlap / area), ...)``.

    The MBR is clipped to the grid region first; weights are relative to the
    clipped area and therefore sum to exactly 1.
    """
    r = grid.region
    clipped_area = mbr.overlap_area(r)
    if clipped_area == 0:
        raise EmptyEncodingError(f"MBR {tuple(map(str, mbr.bounds()))} does not overlap the region")
    entries = []
    for cid in grid.cells_overlapping(mbr):
        area = mbr.overlap_area(grid.cell_rect(cid))
        if area > 0:
            entries.append((cid, area / clipped_area))
    entries.sort()
    return tuple(entries)


@dataclass(frozen=True)
class AnonymousTrajectory:
    """An anonymized trajectory: ``((Mbr, activities), ...)``.

    ``group`` lists the ids of the source trajectories whose anonymity set
    produced it (filled in by the toy anonymizer, empty otherwise).
    """
    id: str
    terms: tuple[tuple[Rect, tuple[str, ...]], ...]
    group: tuple[str, ...] = ()

    def __post_init__(self):
        terms = []
        for mbr, acts in self.terms:
            acts = tuple(sorted(set(acts)))
            if not acts:
                raise InvalidArgumentError(f"trajectory {self.id}: empty activity set")
            terms.append((mbr, acts))
        object.__setattr__(self, "terms", tuple(terms))


def encode_database(trajectories: Iterable[AnonymousTrajectory], grid: CellGrid) -> WlasDatabase:
    sequences = []
    for traj in trajectories:
        terms = []
        for idx, (mbr, acts) in enumerate(traj.terms):
            try:
                locations = encode_region(mbr, grid)
            except TrajmineError as exc:
                raise EmptyEncodingError(f"trajectory {traj.id}, term {idx}: {exc}") from exc
            terms.append(WlasTerm(locations, acts))
        sequences.append(WlasSequence(traj.id, tuple(terms)))
    return WlasDatabase(tuple(sequences))
