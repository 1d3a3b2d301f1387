"""Static search structures over numeric key vectors.

Two interchangeable implementations of the same conjunctive query
semantics live here:

* :class:`MultiLevelTree` -- the textbook nested structure: one balanced
  search tree per key dimension, where every node owns an associated
  next-level tree over its canonical subset.  A query decomposes each
  level's interval condition into O(log N) canonical nodes.  Storage
  grows by roughly a log factor per level, so this class is reserved for
  small inputs and for validating the scalable index against the
  canonical-subset definition.

* :class:`DominanceIndex` -- a flat, block-pruned index answering the
  identical predicates at scale.  Rows are sorted by one column and
  grouped into ~sqrt(N) blocks with componentwise minima; a block can
  contain a satisfying row only if its minima satisfy every condition.
  Pruning is exact because ``x -> x - s`` rounds monotonically, so the
  block test never rejects a block containing a satisfying row.

:class:`SweepMinIndex` extends the block scheme with an objective column
(for "first point swept by a moving edge" queries), and
:class:`MultiLevelSegmentTree` is the nested interval-stabbing variant
with a min aggregate at the bottom level.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "DominanceIndex",
    "SweepMinIndex",
    "MultiLevelTree",
    "MultiLevelSegmentTree",
]


# ---------------------------------------------------------------------------
# block-pruned dominance index
# ---------------------------------------------------------------------------

class DominanceIndex:
    """Exact witness queries for conjunctions of one-sided conditions.

    Stores N rows of D-dimensional values v.  Queries come in two
    equivalent forms:

    * shifted:   v[k] - shift[k] <= scale[k] * d   for every k
    * threshold: v[k] <= t[k]                      for every k

    The shifted form evaluates each difference exactly as written, which
    keeps results bit-identical to brute-force scans computing the same
    differences.  Scales must be small powers of two (1 or 2 here) so the
    right-hand side is exact.
    """

    def __init__(self, values, tags=None, block_size: Optional[int] = None,
                 sort_keys=None):
        """``sort_keys`` overrides the row order (default: first column).

        Sorting by the first column enables contiguous ``row_range``
        restrictions on it; a space-filling-curve key instead makes the
        per-block minima jointly selective across all dimensions.
        """
        values = np.atleast_2d(np.asarray(values, dtype=float))
        n, d = values.shape
        if n == 0:
            raise ValueError("DominanceIndex requires at least one row")
        keys = values[:, 0] if sort_keys is None else np.asarray(sort_keys)
        order = np.argsort(keys, kind="stable")
        self.values = np.ascontiguousarray(values[order])
        tags = np.arange(n) if tags is None else np.asarray(tags)
        self.tags = tags[order]
        self.col0 = np.ascontiguousarray(self.values[:, 0])
        b = block_size or max(8, math.isqrt(n))
        self._starts = np.arange(0, n, b)
        self._bmins = np.minimum.reduceat(self.values, self._starts, axis=0)
        self._n = n
        self._b = b

    def __len__(self) -> int:
        return self._n

    @property
    def dims(self) -> int:
        return self.values.shape[1]

    # -- internal -----------------------------------------------------------

    def _block_rows(self, bi: int) -> slice:
        lo = self._starts[bi]
        hi = min(lo + self._b, self._n)
        return slice(lo, hi)

    @staticmethod
    def _rhs(d: float, scales) -> np.ndarray:
        if scales is None:
            return np.asarray(d, dtype=float)
        return np.asarray(scales, dtype=float) * d

    def _scan(self, shifts, rhs, j0: int, j1: int, want_min_tag: bool):
        """First hit (or smallest tag) among rows [j0, j1) satisfying
        (v - shifts) <= rhs componentwise.

        Narrow windows are tested in one vectorized shot; wider ones go
        through the per-block minima first, then member-test surviving
        blocks in batched chunks (early exit between chunks for witness
        queries).  Block pruning is exact: min over a block of (v - s)
        equals (min v) - s because rounding is monotone.
        """
        if j0 >= j1:
            return None
        if j1 - j0 <= 2 * self._b:
            ok = ((self.values[j0:j1] - shifts) <= rhs).all(axis=1)
            if not ok.any():
                return None
            if want_min_tag:
                return self.tags[j0:j1][ok].min()
            return self.tags[j0 + np.argmax(ok)]
        b0 = j0 // self._b
        b1 = (j1 - 1) // self._b + 1
        cand = np.nonzero(
            ((self._bmins[b0:b1] - shifts) <= rhs).all(axis=1)
        )[0] + b0
        if cand.size == 0:
            return None
        best = None
        width = np.arange(self._b)
        for c0 in range(0, cand.size, 16):
            chunk = cand[c0:c0 + 16]
            idx = (self._starts[chunk][:, None] + width[None, :]).ravel()
            idx = idx[(idx >= j0) & (idx < min(j1, self._n))]
            ok = ((self.values[idx] - shifts) <= rhs).all(axis=1)
            if not ok.any():
                continue
            if not want_min_tag:
                return self.tags[idx[int(np.argmax(ok))]]
            t = self.tags[idx][ok].min()
            if best is None or t < best:
                best = t
        return best

    # -- shifted-form queries -------------------------------------------------

    def decide(self, shifts, d: float, scales=None, row_range=None):
        """Tag of some row with (v - shifts) <= scales*d in all dims, else None.

        ``row_range`` optionally restricts the scan to a contiguous range
        of the col0-sorted rows (callers derive exact ranges from paired
        one-sided conditions on the sort column).
        """
        shifts = np.asarray(shifts, dtype=float)
        j0, j1 = row_range if row_range is not None else (0, self._n)
        return self._scan(shifts, self._rhs(d, scales), j0, j1, False)

    def decide_many(self, shift_rows, d: float, scales=None, row_ranges=None):
        """First (row index into shift_rows, tag) satisfied by any shift row."""
        shift_rows = np.atleast_2d(np.asarray(shift_rows, dtype=float))
        rhs = self._rhs(d, scales)
        for q in range(shift_rows.shape[0]):
            j0, j1 = row_ranges[q] if row_ranges is not None else (0, self._n)
            t = self._scan(shift_rows[q], rhs, j0, j1, False)
            if t is not None:
                return q, t
        return None

    def min_tag(self, shifts, d: float, scales=None, row_range=None):
        """Smallest tag among rows satisfying the shifted conditions."""
        shifts = np.asarray(shifts, dtype=float)
        j0, j1 = row_range if row_range is not None else (0, self._n)
        return self._scan(shifts, self._rhs(d, scales), j0, j1, True)

    def min_tag_many(self, shift_rows, d: float, scales=None, row_ranges=None):
        shift_rows = np.atleast_2d(np.asarray(shift_rows, dtype=float))
        rhs = self._rhs(d, scales)
        best = None
        for q in range(shift_rows.shape[0]):
            j0, j1 = row_ranges[q] if row_ranges is not None else (0, self._n)
            t = self._scan(shift_rows[q], rhs, j0, j1, True)
            if t is not None and (best is None or t < best):
                best = t
        return best

    # -- threshold-form queries -----------------------------------------------
    # v <= t is the shifted form with zero shift (v - 0.0 is exactly v)

    def decide_thresholds(self, thresholds):
        return self._scan(0.0, np.asarray(thresholds, dtype=float), 0, self._n, False)

    def min_tag_thresholds(self, thresholds):
        return self._scan(0.0, np.asarray(thresholds, dtype=float), 0, self._n, True)

    def collect_thresholds(self, thresholds) -> np.ndarray:
        """Tags of all rows satisfying v <= thresholds componentwise."""
        thresholds = np.asarray(thresholds, dtype=float)
        out = []
        for bi in np.nonzero((self._bmins <= thresholds).all(axis=1))[0]:
            rows = self._block_rows(bi)
            ok = (self.values[rows] <= thresholds).all(axis=1)
            if ok.any():
                out.append(self.tags[rows][ok])
        if not out:
            return np.empty(0, dtype=self.tags.dtype)
        return np.sort(np.concatenate(out))


class SweepMinIndex:
    """Minimum of an objective over rows satisfying threshold conditions.

    Rows are sorted and blocked by the objective column, so the scan can
    stop at the first block whose smallest objective cannot improve the
    incumbent.  Ties in the objective report the smallest tag, including
    ties that straddle a block boundary.
    """

    def __init__(self, cond_values, objective, tags=None, block_size=None):
        cond = np.atleast_2d(np.asarray(cond_values, dtype=float))
        obj = np.asarray(objective, dtype=float)
        n = cond.shape[0]
        if n == 0:
            raise ValueError("SweepMinIndex requires at least one row")
        order = np.argsort(obj, kind="stable")
        self.cond = np.ascontiguousarray(cond[order])
        self.obj = obj[order]
        tags = np.arange(n) if tags is None else np.asarray(tags)
        self.tags = tags[order]
        b = block_size or max(8, math.isqrt(n))
        self._starts = np.arange(0, n, b)
        self._cmins = np.minimum.reduceat(self.cond, self._starts, axis=0)
        self._n = n
        self._b = b

    def min_objective(self, thresholds):
        """(objective value, smallest tag among its ties) or None."""
        thresholds = np.asarray(thresholds, dtype=float)
        feasible = (self._cmins <= thresholds).all(axis=1)
        best_val = None
        best_tag = None
        for bi in range(len(self._starts)):
            lo = self._starts[bi]
            if best_val is not None and self.obj[lo] > best_val:
                break
            if not feasible[bi]:
                continue
            hi = min(lo + self._b, self._n)
            ok = (self.cond[lo:hi] <= thresholds).all(axis=1)
            if not ok.any():
                continue
            idx = np.nonzero(ok)[0] + lo
            v = self.obj[idx[0]]
            if best_val is None or v < best_val:
                best_val = v
                best_tag = self.tags[idx[self.obj[idx] == v]].min()
            elif v == best_val:
                best_tag = min(best_tag, self.tags[idx[self.obj[idx] == v]].min())
        if best_val is None:
            return None
        return float(best_val), best_tag


# ---------------------------------------------------------------------------
# reference nested structures
# ---------------------------------------------------------------------------

class _Node:
    __slots__ = ("lo", "hi", "left", "right", "assoc")

    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        self.left = None
        self.right = None
        self.assoc = None


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left):
        self.left = left

    def spend(self, n):
        self.left -= n
        if self.left < 0:
            raise MemoryError(
                "MultiLevelTree entry guard exceeded; this reference structure "
                "is intended for small inputs only"
            )


class _LevelTree:
    """One level: items sorted by this level's key, nodes over array ranges."""

    def __init__(self, values, idx, level, budget):
        self.level = level
        self.values = values
        key = values[idx, level]
        order = np.argsort(key, kind="stable")
        self.idx = idx[order]
        self.keys = key[order]
        budget.spend(len(idx))
        self.last = level == values.shape[1] - 1
        self.root = self._build(0, len(self.idx), budget)

    def _build(self, lo, hi, budget):
        node = _Node(lo, hi)
        if not self.last:
            node.assoc = _LevelTree(self.values, self.idx[lo:hi], self.level + 1, budget)
        if hi - lo > 1:
            mid = (lo + hi) // 2
            node.left = self._build(lo, mid, budget)
            node.right = self._build(mid, hi, budget)
        return node

    def canonical_nodes(self, lo_bound, hi_bound):
        """Maximal subtrees whose keys all lie in [lo_bound, hi_bound]."""
        out = []

        def visit(node):
            if node is None or node.lo >= node.hi:
                return
            if self.keys[node.lo] > hi_bound or self.keys[node.hi - 1] < lo_bound:
                return
            if self.keys[node.lo] >= lo_bound and self.keys[node.hi - 1] <= hi_bound:
                out.append(node)
                return
            visit(node.left)
            visit(node.right)

        visit(self.root)
        return out


class MultiLevelTree:
    """Reference nested search tree over canonical subsets.

    ``values`` is an (N, D) key table; a query supplies one closed
    interval ``(lo, hi)`` per dimension and receives the tags of all rows
    inside the box.  One-sided conditions use +/-inf on the open side.
    Every node's canonical subset is the union of its children's, every
    row appears in O(log N) canonical subsets per level, and each level's
    interval decomposes into O(log N) canonical nodes, which the tests
    verify directly.  The entry guard refuses builds whose nested storage
    would explode; use :class:`DominanceIndex` beyond that.
    """

    def __init__(self, values, tags=None, entry_guard: int = 2_000_000):
        values = np.atleast_2d(np.asarray(values, dtype=float))
        n = values.shape[0]
        if n == 0:
            raise ValueError("MultiLevelTree requires at least one row")
        self.tags = np.arange(n) if tags is None else np.asarray(tags)
        self._tree = _LevelTree(values, np.arange(n), 0, _Budget(entry_guard))

    def _gather(self, tree, bounds, out):
        lo, hi = bounds[0]
        for node in tree.canonical_nodes(lo, hi):
            if tree.last:
                out.append(tree.idx[node.lo:node.hi])
            else:
                self._gather(node.assoc, bounds[1:], out)

    def query_tags(self, bounds) -> np.ndarray:
        """Sorted tags of all rows satisfying every per-level interval."""
        out: list[np.ndarray] = []
        self._gather(self._tree, list(bounds), out)
        if not out:
            return np.empty(0, dtype=self.tags.dtype)
        return np.sort(self.tags[np.concatenate(out)])

    def query_any(self, bounds):
        hits = self.query_tags(bounds)
        return hits[0] if hits.size else None

    def level1_canonical_sets(self, lo, hi) -> list[np.ndarray]:
        """Row tags per canonical node of the first level (for validation)."""
        t = self._tree
        return [self.tags[t.idx[n.lo:n.hi]] for n in t.canonical_nodes(lo, hi)]


class _SegLevel:
    """Segment tree over one level's closed intervals.

    Elementary slots alternate endpoint/gap so closed-interval stabbing is
    exact.  Every item is stored at O(log) covering nodes; each node owns
    either the next level over its stored items or, at the last level,
    the (min score, tag at the min) aggregate.
    """

    def __init__(self, intervals, scores, tags, items, level, nlevels, budget):
        iv = intervals[level][items]
        self.level = level
        self.last = level == nlevels - 1
        self.ends = np.unique(iv)
        nslots = 2 * len(self.ends) - 1
        budget.spend(len(items))
        buckets: dict[tuple[int, int], list[int]] = {}

        def cover(lo_s, hi_s, node_lo, node_hi, item):
            if hi_s < node_lo or lo_s > node_hi:
                return
            if lo_s <= node_lo and node_hi <= hi_s:
                buckets.setdefault((node_lo, node_hi), []).append(item)
                return
            mid = (node_lo + node_hi) // 2
            cover(lo_s, hi_s, node_lo, mid, item)
            cover(lo_s, hi_s, mid + 1, node_hi, item)

        for it in items:
            lo, hi = intervals[level][it]
            lo_s = 2 * int(np.searchsorted(self.ends, lo))
            hi_s = 2 * int(np.searchsorted(self.ends, hi))
            cover(lo_s, hi_s, 0, nslots - 1, it)

        self.nslots = nslots
        self.children: dict[tuple[int, int], object] = {}
        self.node_items = {k: np.asarray(v) for k, v in buckets.items()}
        for key, stored in self.node_items.items():
            if self.last:
                best = int(np.argmin(scores[stored]))
                self.children[key] = (float(scores[stored][best]), tags[stored][best])
            else:
                self.children[key] = _SegLevel(
                    intervals, scores, tags, stored, level + 1, nlevels, budget
                )

    def _slot(self, x) -> Optional[int]:
        k = int(np.searchsorted(self.ends, x))
        if k < len(self.ends) and self.ends[k] == x:
            return 2 * k
        if 0 < k < len(self.ends):
            return 2 * k - 1
        return None  # outside every interval

    def path_nodes(self, x):
        s = self._slot(x)
        if s is None:
            return
        lo, hi = 0, self.nslots - 1
        while True:
            node = self.children.get((lo, hi))
            if node is not None:
                yield node
            if lo == hi:
                return
            mid = (lo + hi) // 2
            if s <= mid:
                hi = mid
            else:
                lo = mid + 1


class MultiLevelSegmentTree:
    """Nested segment trees: conjunctive interval stabbing with a min aggregate.

    ``intervals`` is a sequence of (N, 2) closed-interval arrays, one per
    level; a query supplies one stabbing coordinate per level and receives
    the minimum score (with its tag) over items stabbed at every level.
    """

    def __init__(self, intervals: Sequence, scores, tags=None, entry_guard: int = 5_000_000):
        intervals = [np.atleast_2d(np.asarray(iv, dtype=float)) for iv in intervals]
        n = intervals[0].shape[0]
        if n == 0:
            raise ValueError("MultiLevelSegmentTree requires at least one item")
        scores = np.asarray(scores, dtype=float)
        tags = np.arange(n) if tags is None else np.asarray(tags)
        self._root = _SegLevel(
            intervals, scores, tags, np.arange(n), 0, len(intervals), _Budget(entry_guard)
        )

    def query_min(self, points):
        points = list(points)

        def walk(level_tree, pts):
            best = None
            for node in level_tree.path_nodes(pts[0]):
                if isinstance(node, tuple):
                    cand = node
                else:
                    cand = walk(node, pts[1:])
                if cand is not None and (best is None or cand[0] < best[0]):
                    best = cand
            return best

        return walk(self._root, points)

    def bottom_nodes(self):
        """Yield (stored item indices, (min score, tag)) of every bottom node."""

        def walk(level_tree):
            for key, stored in level_tree.node_items.items():
                child = level_tree.children[key]
                if level_tree.last:
                    yield stored, child
                else:
                    yield from walk(child)

        yield from walk(self._root)
