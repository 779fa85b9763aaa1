"""Line-oriented JSON formats.

``anon-jsonl``  one anonymized trajectory per line::

    {"id": "u1", "terms": [{"mbr": [xmin, ymin, xmax, ymax], "activities": ["a", "b"]}]}

``wlas-jsonl``  one encoded sequence per line, weights as exact fractions::

    {"id": "u1", "terms": [{"cells": [[0, "2/9"], [1, "1/9"]], "activities": ["a"]}]}

``raw-jsonl``   pre-anonymization input for the toy anonymizer::

    {"id": "u1", "terms": [{"point": [x, y], "activities": ["a"]}]}

Cell ids in files are shifted by ``id_base`` (0 or 1) relative to the internal
0-based ids. Decimal numbers are parsed exactly.
"""
from __future__ import annotations

import io
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

from .errors import InvalidArgumentError, ParseError, TrajmineError, ValidationError
from .grid import AnonymousTrajectory, CellGrid, Mbr, encode_database, exact
from .model import TrajectoryPattern, WlasDatabase, WlasSequence, WlasTerm

FORMATS = ("anon-jsonl", "wlas-jsonl")
WEIGHT_TOLERANCE = Fraction(1, 10 ** 9)

Source = Union[str, Path, IO[str]]


class WeightSumWarning(UserWarning):
    pass


def _open(source: Source):
    if isinstance(source, (str, Path)):
        if str(source) == "-":
            return sys.stdin, False
        return open(source, encoding="utf-8"), True
    return source, False


def read_jsonl(source: Source) -> Iterator[tuple[int, dict]]:
    fh, owned = _open(source)
    try:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line, parse_float=Fraction)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(obj, dict):
                raise ParseError("expected a JSON object", lineno)
            yield lineno, obj
    finally:
        if owned:
            fh.close()


def _terms(obj, lineno):
    terms = obj.get("terms")
    if "id" not in obj or not isinstance(terms, list):
        raise ParseError("needs 'id' and a 'terms' list", lineno)
    return str(obj["id"]), terms


def _activities(raw, lineno):
    if not isinstance(raw, list) or not all(isinstance(a, str) for a in raw):
        raise ParseError("'activities' must be a list of strings", lineno)
    return tuple(raw)


def parse_weight(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InvalidArgumentError(f"bad weight {value!r}")
    return Fraction(value)


def parse_wlas(obj: dict, lineno: int = None, id_base: int = 0, strict: bool = False) -> WlasSequence:
    sid, raw_terms = _terms(obj, lineno)
    terms = []
    for idx, t in enumerate(raw_terms):
        try:
            cells = tuple((int(c) - id_base, parse_weight(w)) for c, w in t["cells"])
            term = WlasTerm(cells, _activities(t["activities"], lineno))
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError, TrajmineError) as exc:
            raise ParseError(f"sequence {sid}, term {idx}: {exc}", lineno) from None
        total = term.total_weight
        if abs(total - 1) > WEIGHT_TOLERANCE:
            msg = f"sequence {sid}, term {idx}: weights sum to {total}"
            if strict:
                raise ValidationError(f"line {lineno}: {msg}")
            warnings.warn(msg, WeightSumWarning, stacklevel=3)
        terms.append(term)
    if not terms:
        raise ParseError(f"sequence {sid} has no terms", lineno)
    return WlasSequence(sid, tuple(terms))


def parse_anon(obj: dict, lineno: int = None) -> AnonymousTrajectory:
    tid, raw_terms = _terms(obj, lineno)
    try:
        terms = tuple((Mbr.from_bounds(t["mbr"]), _activities(t["activities"], lineno))
                      for t in raw_terms)
        return AnonymousTrajectory(tid, terms, tuple(obj.get("group", ())))
    except ParseError:
        raise
    except (KeyError, TypeError, TrajmineError) as exc:
        raise ParseError(f"trajectory {tid}: {exc}", lineno) from None


def parse_raw(obj: dict, lineno: int = None):
    from .anonymize import RawTrajectory

    tid, raw_terms = _terms(obj, lineno)
    try:
        terms = tuple((tuple(t["point"]), _activities(t["activities"], lineno)) for t in raw_terms)
        return RawTrajectory(tid, terms)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, TrajmineError) as exc:
        raise ParseError(f"trajectory {tid}: {exc}", lineno) from None


def read_raw(source: Source) -> list:
    return [parse_raw(obj, n) for n, obj in read_jsonl(source)]


def read_anon(source: Source) -> list[AnonymousTrajectory]:
    return [parse_anon(obj, n) for n, obj in read_jsonl(source)]


def read_wlas(source: Source, id_base: int = 0, strict: bool = False) -> WlasDatabase:
    return WlasDatabase(tuple(parse_wlas(obj, n, id_base, strict) for n, obj in read_jsonl(source)))


def ingest(source: Source, fmt: str, grid: CellGrid = None, id_base: int = 0,
           strict: bool = False) -> WlasDatabase:
    """Load a database from ``anon-jsonl`` (encoded through ``grid``) or ``wlas-jsonl``."""
    if fmt == "wlas-jsonl":
        return read_wlas(source, id_base, strict)
    if fmt == "anon-jsonl":
        if grid is None:
            raise InvalidArgumentError("anon-jsonl input needs grid parameters")
        return encode_database(read_anon(source), grid)
    raise InvalidArgumentError(f"unknown format {fmt!r}; choose from {FORMATS}")


def dump_wlas(seq: WlasSequence, id_base: int = 0) -> str:
    return json.dumps({
        "id": seq.id,
        "terms": [{"cells": [[c + id_base, str(w)] for c, w in t.locations],
                   "activities": list(t.activities)} for t in seq.terms],
    })


def dump_anon(traj: AnonymousTrajectory) -> str:
    obj = {"id": traj.id,
           "terms": [{"mbr": [_decimal_or_fraction(v) for v in mbr.bounds()],
                      "activities": list(acts)} for mbr, acts in traj.terms]}
    if traj.group:
        obj["group"] = list(traj.group)
    return json.dumps(obj)


def dump_raw(traj) -> str:
    return json.dumps({"id": traj.id,
                       "terms": [{"point": [_decimal_or_fraction(v) for v in pt], "activities": list(acts)}
                                 for pt, acts in traj.terms]})


def _decimal_or_fraction(v: Fraction):
    """Integers and finite decimals become JSON numbers that parse back exactly."""
    if v.denominator == 1:
        return int(v)
    d = v.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        return float(v) if exact(float(v)) == v else str(v)
    return str(v)


def write_lines(lines: Iterable[str], dest: Source):
    if isinstance(dest, (str, Path)) and str(dest) != "-":
        with open(dest, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
        return
    fh = dest if not isinstance(dest, (str, Path)) else sys.stdout
    for line in lines:
        fh.write(line + "\n")


def export_wlas(db: WlasDatabase, dest: Source, id_base: int = 0):
    write_lines((dump_wlas(s, id_base) for s in db), dest)


def wlas_text(db: WlasDatabase, id_base: int = 0) -> str:
    buf = io.StringIO()
    export_wlas(db, buf, id_base)
    return buf.getvalue()


def render_score(score: Fraction) -> str:
    """Decimal rendering, exact when the fraction terminates."""
    return f"{float(score):.12g}"


def render_pattern(pattern: TrajectoryPattern, score: Fraction, id_base: int = 0) -> dict:
    return {
        "pattern": [{"cells": [c + id_base for c in t.cells], "activities": list(t.activities)}
                    for t in pattern.terms],
        "score": render_score(score),
        "score_exact": str(score),
    }
