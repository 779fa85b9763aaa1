"""Top-k trajectory pattern mining by two-dimensional pattern growth.

Patterns grow by three steps: ``l`` adds a cell to the last term, ``a`` adds an
activity to the last term and ``s`` opens a new term with one cell. A term is
built as cells first, then activities (no ``l`` after ``a``), so every pattern
has exactly one derivation. A pattern is reported only right after an ``a``
step, i.e. when its last term has at least one activity.

Four switchable strategies speed the search up without changing its result:

* threshold initialization (``ti``): seed the top-k list with short patterns
  and raw sequence patterns before the search starts;
* threshold update (``tu``): visit siblings in descending PTR order;
* width pruning: drop ``l``/``s`` items whose matching sequence-relevance is
  below the threshold;
* depth pruning: skip a node's subtree when its extension bound is below the
  threshold.
"""
from __future__ import annotations

import bisect
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import InvalidArgumentError, PreconditionError
from .model import PatternTerm, TrajectoryPattern, WlasDatabase, r_pattern
from .relevance import db_relevance, sequence_relevance

ZERO = Fraction(0)

VARIANTS = {
    "baseline": (False, False),
    "baseline+i": (True, False),
    "baseline+s": (False, True),
    "full": (True, True),
}


@dataclass(frozen=True)
class MiningConfig:
    k: int
    ti_enabled: bool = True
    tu_enabled: bool = True
    width_prune_enabled: bool = True
    depth_prune_enabled: bool = True
    # "sound": max over all match ends; "pivot": the pivot-only PTR, which can
    # under-estimate descendants and lose results (kept for comparison runs)
    depth_bound: str = "sound"

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidArgumentError(f"k must be a positive integer, got {self.k!r}")
        if self.depth_bound not in ("sound", "pivot"):
            raise InvalidArgumentError(f"unknown depth bound {self.depth_bound!r}")

    @classmethod
    def preset(cls, variant: str, k: int, prune: bool = True, **overrides) -> "MiningConfig":
        try:
            ti, tu = VARIANTS[variant]
        except KeyError:
            raise InvalidArgumentError(
                f"unknown variant {variant!r}; choose from {sorted(VARIANTS)}") from None
        opts = dict(k=k, ti_enabled=ti, tu_enabled=tu,
                    width_prune_enabled=prune, depth_prune_enabled=prune)
        opts.update(overrides)
        return cls(**opts)

    def as_dict(self) -> dict:
        return {"k": self.k, "ti": self.ti_enabled, "tu": self.tu_enabled,
                "width_prune": self.width_prune_enabled,
                "depth_prune": self.depth_prune_enabled, "depth_bound": self.depth_bound}


class PrmEntry(NamedTuple):
    match: Fraction
    remaining: Fraction


class SequencePrm:
    """Projected-relevance matrix of one sequence, indexed by (cell, term index)."""

    def __init__(self, seq):
        self.seq = seq
        self.cells = tuple(sorted({c for t in seq.terms for c in t.cells}))
        totals = [t.total_weight for t in seq.terms]
        self.after_term = [sum(totals[j + 1:], ZERO) for j in range(len(totals))]
        self.relevance = sequence_relevance(seq)
        self.entries: dict[tuple[int, int], PrmEntry] = {}
        for j, term in enumerate(seq.terms):
            # suffix sums inside the term, walking cells from the largest id down
            tail = self.after_term[j]
            below = {}
            for c in reversed(self.cells):
                below[c] = tail
                tail += term.weight(c)
            for c in self.cells:
                self.entries[(c, j)] = PrmEntry(term.weight(c), below[c])

    def __getitem__(self, key) -> PrmEntry:
        return self.entries[key]


class ProjectedRelevanceMatrix:
    def __init__(self, db: WlasDatabase):
        self.sequences = [SequencePrm(s) for s in db]

    def __getitem__(self, index) -> SequencePrm:
        return self.sequences[index]

    def __len__(self):
        return len(self.sequences)


def build_prm(db: WlasDatabase) -> ProjectedRelevanceMatrix:
    return ProjectedRelevanceMatrix(db)


def build_activity_index(db: WlasDatabase) -> dict[tuple[str, int], frozenset]:
    """Map (activity, term index) to the set of sequence positions holding it."""
    index = defaultdict(set)
    for sidx, seq in enumerate(db):
        for j, term in enumerate(seq.terms):
            for a in term.activities:
                index[(a, j)].add(sidx)
    return {key: frozenset(v) for key, v in index.items()}


class MiningContext:
    """Read-only data shared by every node of one database."""

    def __init__(self, db: WlasDatabase):
        self.db = db
        self.prm = build_prm(db)
        self.act = build_activity_index(db)


@dataclass(eq=False)
class SearchNode:
    """One pattern in the search tree plus, per matching sequence, the best
    match relevance for every index where a match ends."""
    ctx: MiningContext = field(repr=False)
    pattern: TrajectoryPattern
    op: str
    item: object
    ends: dict[int, dict[int, Fraction]] = field(repr=False)
    relevance: Fraction = field(init=False)
    ptr: Fraction = field(init=False)
    bound: Fraction = field(init=False)
    msr: Fraction = field(init=False)

    def __post_init__(self):
        prm = self.ctx.prm
        self.msr = sum((prm[s].relevance for s in self.ends), ZERO)
        if self.op == "root":
            self.relevance = ZERO
            self.ptr = self.bound = self.msr
            return
        last = self.pattern.terms[-1]
        max_cell = last.cells[-1]
        max_act = last.activities[-1] if last.activities else None
        cells_open = self.op != "a"
        rel = ptr = bound = ZERO
        for s, ends in self.ends.items():
            sp = prm[s]
            rel += max(ends.values())
            pivot = min(ends)
            after = sp.after_term[pivot]
            head = sp[(max_cell, pivot)].remaining - after
            if head and not _acts_left(sp.seq.terms[pivot].activities, max_act):
                head = ZERO
            ptr += ends[pivot] + head + after
            best = ZERO
            for j, u in ends.items():
                reach = sp[(max_cell, j)].remaining if cells_open else sp.after_term[j]
                if u + reach > best:
                    best = u + reach
            bound += best
        self.relevance = rel
        self.ptr = ptr
        self.bound = bound

    @property
    def emittable(self) -> bool:
        return self.op == "a"

    def prune_bound(self, kind: str) -> Fraction:
        return self.bound if kind == "sound" else self.ptr


def _acts_left(acts, max_act) -> bool:
    if max_act is None:
        return bool(acts)
    return bool(acts) and acts[-1] > max_act


def root_node(db_or_ctx) -> SearchNode:
    ctx = db_or_ctx if isinstance(db_or_ctx, MiningContext) else MiningContext(db_or_ctx)
    ends = {s: {-1: ZERO} for s in range(len(ctx.db))}
    return SearchNode(ctx, TrajectoryPattern(()), "root", None, ends)


def concat(node: SearchNode, op: str, item) -> SearchNode:
    """Grow ``node`` by one ``l``, ``a`` or ``s`` step.

    Raises PreconditionError when the step breaks the canonical growth order.
    """
    terms = node.pattern.terms
    db = node.ctx.db
    new_ends: dict[int, dict[int, Fraction]] = {}
    if op == "l":
        if node.op not in ("s", "l"):
            raise PreconditionError(f"l-concatenation not allowed after {node.op!r}")
        last = terms[-1]
        if item <= last.cells[-1]:
            raise PreconditionError(f"cell {item} must exceed {last.cells[-1]}")
        for s, ends in node.ends.items():
            seq_terms = db.sequences[s].terms
            hit = {j: u + seq_terms[j].weight(item) for j, u in ends.items()
                   if seq_terms[j].has_cell(item)}
            if hit:
                new_ends[s] = hit
        pattern = TrajectoryPattern(terms[:-1] + (PatternTerm(last.cells + (item,), last.activities),))
    elif op == "a":
        if node.op == "root":
            raise PreconditionError("a-concatenation needs a term to extend")
        last = terms[-1]
        if last.activities and item <= last.activities[-1]:
            raise PreconditionError(f"activity {item!r} must follow {last.activities[-1]!r}")
        act = node.ctx.act
        for s, ends in node.ends.items():
            hit = {j: u for j, u in ends.items() if s in act.get((item, j), ())}
            if hit:
                new_ends[s] = hit
        pattern = TrajectoryPattern(terms[:-1] + (PatternTerm(last.cells, last.activities + (item,)),))
    elif op == "s":
        if node.op not in ("root", "a"):
            raise PreconditionError("s-concatenation needs a complete last term")
        for s, ends in node.ends.items():
            seq_terms = db.sequences[s].terms
            prev = sorted(ends)
            hit = {}
            running = None
            k = 0
            for j in range(prev[0] + 1, len(seq_terms)):
                while k < len(prev) and prev[k] < j:
                    v = ends[prev[k]]
                    if running is None or v > running:
                        running = v
                    k += 1
                if seq_terms[j].has_cell(item):
                    hit[j] = running + seq_terms[j].weight(item)
            if hit:
                new_ends[s] = hit
        pattern = TrajectoryPattern(terms + (PatternTerm((item,)),))
    else:
        raise InvalidArgumentError(f"unknown operator {op!r}")
    return SearchNode(node.ctx, pattern, op, item, new_ends)


class Extensions(NamedTuple):
    l: list
    a: list
    s: list


def candidate_items(node: SearchNode, op: str) -> list:
    """Items that can follow ``node`` by ``op`` in at least one sequence."""
    db = node.ctx.db
    items = set()
    if op == "l":
        if node.op not in ("s", "l"):
            return []
        max_cell = node.pattern.terms[-1].cells[-1]
        for s, ends in node.ends.items():
            for j in ends:
                items.update(c for c in db.sequences[s].terms[j].cells if c > max_cell)
    elif op == "a":
        if node.op == "root":
            return []
        acts = node.pattern.terms[-1].activities
        floor = acts[-1] if acts else None
        for s, ends in node.ends.items():
            for j in ends:
                items.update(a for a in db.sequences[s].terms[j].activities
                             if floor is None or a > floor)
    elif op == "s":
        if node.op not in ("root", "a"):
            return []
        for s, ends in node.ends.items():
            for term in db.sequences[s].terms[min(ends) + 1:]:
                items.update(term.cells)
    return sorted(items)


def extension_lists(node: SearchNode, threshold, config: MiningConfig, ops: str = "las",
                    metrics: Optional["MiningMetrics"] = None) -> Extensions:
    """Children of ``node`` for each operator, pruned and ordered per ``config``.

    Width pruning drops ``l``/``s`` children whose matching sequence-relevance
    is below ``threshold``. With threshold update each list is sorted by
    descending PTR (ties by item); otherwise by item.
    """
    out = {"l": [], "a": [], "s": []}
    for op in ops:
        children = [concat(node, op, item) for item in candidate_items(node, op)]
        if config.width_prune_enabled and op in "ls":
            kept = [c for c in children if c.msr >= threshold]
            if metrics is not None:
                metrics.width_pruned += len(children) - len(kept)
            children = kept
        if config.tu_enabled:
            children.sort(key=lambda c: (-c.ptr, c.item))
        out[op] = children
    return Extensions(out["l"], out["a"], out["s"])


class TopKList:
    """The k best (pattern, score) pairs seen so far.

    Ordering is by score descending, then canonical pattern key; a new pattern
    enters a full list only if it beats the current last entry in that order.
    """

    def __init__(self, k: int):
        if k < 1:
            raise InvalidArgumentError("k must be >= 1")
        self.k = k
        self._keys: list = []
        self._entries: list[tuple[TrajectoryPattern, Fraction]] = []
        self._members: set = set()

    def __len__(self):
        return len(self._entries)

    @property
    def full(self) -> bool:
        return len(self._entries) >= self.k

    @property
    def threshold(self) -> Fraction:
        return self._entries[-1][1] if self.full else ZERO

    @property
    def entries(self) -> list[tuple[TrajectoryPattern, Fraction]]:
        return list(self._entries)

    def offer(self, pattern: TrajectoryPattern, score: Fraction) -> bool:
        if pattern in self._members:
            return False
        key = (-score, pattern.canonical_key())
        if self.full and key >= self._keys[-1]:
            return False
        pos = bisect.bisect_left(self._keys, key)
        self._keys.insert(pos, key)
        self._entries.insert(pos, (pattern, score))
        self._members.add(pattern)
        if len(self._entries) > self.k:
            self._keys.pop()
            dropped, _ = self._entries.pop()
            self._members.discard(dropped)
        return True


def seed_patterns(db: WlasDatabase) -> dict[TrajectoryPattern, Fraction]:
    """Exact database relevance of every short seed pattern and every raw pattern.

    Short seeds are the 1-patterns (one cell, one activity), single terms with
    two cells or two activities, and two-term patterns of 1-patterns.
    """
    scores: dict[TrajectoryPattern, Fraction] = defaultdict(lambda: ZERO)
    for seq in db:
        local: dict[TrajectoryPattern, Fraction] = {}

        def note(pattern, value):
            if value > local.get(pattern, ZERO):
                local[pattern] = value

        ones = []
        for j, term in enumerate(seq.terms):
            cells, acts = term.cells, term.activities
            for c in cells:
                w = term.weight(c)
                for a in acts:
                    ones.append((j, PatternTerm((c,), (a,)), w))
                for a1, a2 in itertools.combinations(acts, 2):
                    note(TrajectoryPattern((PatternTerm((c,), (a1, a2)),)), w)
            for c1, c2 in itertools.combinations(cells, 2):
                w = term.weight(c1) + term.weight(c2)
                for a in acts:
                    note(TrajectoryPattern((PatternTerm((c1, c2), (a,)),)), w)
        for j, t, w in ones:
            note(TrajectoryPattern((t,)), w)
        for (i, t1, w1), (j, t2, w2) in itertools.product(ones, repeat=2):
            if i < j:
                note(TrajectoryPattern((t1, t2)), w1 + w2)
        for p, v in local.items():
            scores[p] += v
    for seq in db:
        if seq.terms:
            rp = r_pattern(seq)
            if rp not in scores:
                scores[rp] = db_relevance(rp, db)
    return dict(scores)


def preinsert(db: WlasDatabase, k: int) -> tuple[TopKList, Fraction]:
    top = TopKList(k)
    for pattern, score in seed_patterns(db).items():
        if score > 0:
            top.offer(pattern, score)
    return top, top.threshold


@dataclass
class MiningMetrics:
    recursive_calls: int = 0
    candidates_generated: int = 0
    insertions: int = 0
    width_pruned: int = 0
    depth_pruned: int = 0
    threshold_trace: list = field(default_factory=list)
    nodes: Optional[list] = None

    def note_threshold(self, value: Fraction):
        if not self.threshold_trace or self.threshold_trace[-1][1] != value:
            self.threshold_trace.append((self.recursive_calls, value))

    def threshold_at(self, call_index: int) -> Fraction:
        """Threshold in force at a given recursive-call count (step function)."""
        value = ZERO
        for idx, thr in self.threshold_trace:
            if idx > call_index:
                break
            value = thr
        return value

    def report(self) -> dict:
        return {
            "recursive_calls": self.recursive_calls,
            "candidates_generated": self.candidates_generated,
            "insertions": self.insertions,
            "width_pruned": self.width_pruned,
            "depth_pruned": self.depth_pruned,
            "threshold_trace": [[i, str(t)] for i, t in self.threshold_trace],
        }


class _Search:
    def __init__(self, db: WlasDatabase, config: MiningConfig, record_nodes: bool):
        self.config = config
        self.ctx = MiningContext(db)
        self.metrics = MiningMetrics(nodes=[] if record_nodes else None)
        if config.ti_enabled:
            self.top, _ = preinsert(db, config.k)
        else:
            self.top = TopKList(config.k)
        self.metrics.note_threshold(self.top.threshold)

    def run(self):
        self._grow_cells(root_node(self.ctx), "s")
        return self.top.entries, self.metrics

    def _descend(self, child: SearchNode) -> bool:
        if not self.config.depth_prune_enabled:
            return True
        if child.prune_bound(self.config.depth_bound) >= self.top.threshold:
            return True
        self.metrics.depth_pruned += 1
        return False

    def _generated(self, child: SearchNode):
        self.metrics.candidates_generated += 1
        if self.metrics.nodes is not None:
            self.metrics.nodes.append(child.pattern)

    def _grow_cells(self, node: SearchNode, op: str):
        self.metrics.recursive_calls += 1
        ext = extension_lists(node, self.top.threshold, self.config, op, self.metrics)
        for child in ext.l if op == "l" else ext.s:
            self._generated(child)
            if self._descend(child):
                self._grow_activities(child)
                self._grow_cells(child, "l")

    def _grow_activities(self, node: SearchNode):
        self.metrics.recursive_calls += 1
        ext = extension_lists(node, self.top.threshold, self.config, "a", self.metrics)
        for child in ext.a:
            self._generated(child)
            if child.relevance >= self.top.threshold and self.top.offer(child.pattern, child.relevance):
                self.metrics.insertions += 1
                self.metrics.note_threshold(self.top.threshold)
            if self._descend(child):
                self._grow_activities(child)
                self._grow_cells(child, "s")


def mine_topk(db: WlasDatabase, config: MiningConfig, record_nodes: bool = False):
    """Return ``(results, metrics)``: the k most relevant patterns, best first."""
    if not isinstance(config, MiningConfig):
        raise InvalidArgumentError("config must be a MiningConfig")
    return _Search(db, config, record_nodes).run()
