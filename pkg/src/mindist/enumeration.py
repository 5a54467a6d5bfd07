"""Codeword enumeration strategies with instrumented operation counters.

For one systematic matrix and one generator count g, each strategy
computes the minimum weight over all codewords formed by XOR-ing exactly
g matrix rows, differing only in how row sums are produced:

* basic      - fold every g-combination from scratch,
* optimized  - compute each (g-1)-prefix sum once and reuse it across all
               of that prefix's extensions,
* stack      - keep incremental prefix sums in a stack, rebuilding only
               from the leftmost position changed by the lexicographic
               successor,
* saved      - precompute the sums of all combinations of sizes 1..s in
               lexicographic order; a g-combination then costs one XOR
               per size-s chunk of its decomposition, with block scans
               addressed through index_of,
* saved + unrolling - same additions, but left combinations sharing a
               last element are walked together so that every right block
               is brought from the store once per group.

Counters record row-level operations: one addition is one full-row XOR,
one access is one row brought into the working set.  Weight evaluation
always scans the full row (no early exit), so counters are exact and
schedule-independent.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .combinat import index_of
from .errors import BudgetExceeded, InvalidArity
from .gf2 import BitMatrix

_INF = float("inf")


@dataclass
class EnumerationResult:
    """Outcome of one (matrix, g) pass; counters cover the whole pass."""

    min_weight: int
    combinations: int
    row_additions: int
    row_accesses: int


@dataclass
class _Counters:
    combinations: int = 0
    row_additions: int = 0
    row_accesses: int = 0


def _result(best, ubound, ctr: _Counters) -> EnumerationResult:
    if ubound is not None:
        best = min(best, ubound)
    return EnumerationResult(int(best), ctr.combinations,
                             ctr.row_additions, ctr.row_accesses)


def _check_arity(g: int, k: int) -> None:
    if not 1 <= g <= k:
        raise InvalidArity(f"g={g} not in 1..{k}")


# ---------------------------------------------------------------------------
# per-combination strategies (int rows)


def enumerate_basic(gamma: BitMatrix, g: int, ubound: int | None = None) -> EnumerationResult:
    """Fold all C(k,g) combinations from scratch: g-1 additions each."""
    k = gamma.num_rows
    _check_arity(g, k)
    rows = gamma.rows
    ctr = _Counters()
    best = _INF
    for c in combinations(range(k), g):
        acc = rows[c[0]]
        for t in range(1, g):
            acc ^= rows[c[t]]
        w = acc.bit_count()
        if w < best:
            best = w
        ctr.combinations += 1
        ctr.row_additions += g - 1
        ctr.row_accesses += g
    return _result(best, ubound, ctr)


def enumerate_optimized(gamma: BitMatrix, g: int, ubound: int | None = None) -> EnumerationResult:
    """Reuse each (g-1)-prefix sum across its extensions.

    Prefixes ending at the last row have no extension and are skipped
    outright, so the addition count is exactly the per-prefix cost
    (g-2) plus one addition per produced g-combination.
    """
    k = gamma.num_rows
    _check_arity(g, k)
    if g == 1:
        return enumerate_basic(gamma, 1, ubound)
    rows = gamma.rows
    ctr = _Counters()
    best = _INF
    for prefix in combinations(range(k), g - 1):
        last = prefix[-1]
        if last == k - 1:
            continue
        acc = rows[prefix[0]]
        for t in range(1, g - 1):
            acc ^= rows[prefix[t]]
        for e in range(last + 1, k):
            w = (acc ^ rows[e]).bit_count()
            if w < best:
                best = w
        ext = k - 1 - last
        ctr.combinations += ext
        ctr.row_additions += (g - 2) + ext
        ctr.row_accesses += (g - 1) + ext
    return _result(best, ubound, ctr)


def enumerate_stack(gamma: BitMatrix, g: int, ubound: int | None = None) -> EnumerationResult:
    """Incremental prefix sums kept in a stack of g-1 rows.

    Entry t holds the XOR of the first t+1 rows of the current prefix.
    A lexicographic successor invalidates entries from its leftmost
    changed position only; entry 0 is a plain row fetch, every higher
    entry costs one addition, and each extension costs one more.
    """
    k = gamma.num_rows
    _check_arity(g, k)
    if g == 1:
        return enumerate_basic(gamma, 1, ubound)
    rows = gamma.rows
    ctr = _Counters()
    best = _INF
    depth = g - 1
    prefix = tuple(range(depth))
    stack = [0] * depth
    rebuild_from = 0
    while True:
        last = prefix[-1]
        if last < k - 1:
            for t in range(rebuild_from, depth):
                if t == 0:
                    stack[0] = rows[prefix[0]]
                else:
                    stack[t] = stack[t - 1] ^ rows[prefix[t]]
                    ctr.row_additions += 1
                ctr.row_accesses += 1
            rebuild_from = depth
            top = stack[depth - 1]
            for e in range(last + 1, k):
                w = (top ^ rows[e]).bit_count()
                if w < best:
                    best = w
            ext = k - 1 - last
            ctr.combinations += ext
            ctr.row_additions += ext
            ctr.row_accesses += ext
        # lexicographic successor of the prefix, tracking the leftmost change
        done = True
        for t in range(depth - 1, -1, -1):
            if prefix[t] < k - depth + t:
                head = prefix[:t] + (prefix[t] + 1,)
                prefix = head + tuple(range(prefix[t] + 2, prefix[t] + 2 + (depth - 1 - t)))
                rebuild_from = min(rebuild_from, t)
                done = False
                break
        if done:
            break
    return _result(best, ubound, ctr)


# ---------------------------------------------------------------------------
# saved additions


class SavedAdditionsStore:
    """Lexicographically ordered sums of all row combinations up to size s.

    Level l is a C(k,l) x words array whose row r holds the XOR of the
    combination with lex rank r, together with that combination's last
    element.  Level 1 is the matrix itself; level l is built from level
    l-1 and level 1 with exactly one addition per stored row.  Levels are
    materialized on demand (level l is first needed when a pass reaches
    g = l), and the memory budget is checked up front for all s levels.
    """

    def __init__(self, gamma: BitMatrix, s: int,
                 memory_budget: int = 256 * 1024 * 1024):
        k = gamma.num_rows
        if not 1 <= s <= k:
            raise InvalidArity(f"s={s} not in 1..{k}")
        row_bytes = gamma.words_per_row * (gamma.word_width // 8)
        required = sum(comb(k, l) for l in range(1, s + 1)) * row_bytes
        if required > memory_budget:
            raise BudgetExceeded(required, memory_budget)
        self.gamma = gamma
        self.k = k
        self.n = gamma.num_cols
        self.s = s
        self.required_bytes = required
        self.build_additions = 0
        self._rows: dict[int, np.ndarray] = {1: gamma.to_numpy()}
        self._lasts: dict[int, np.ndarray] = {1: np.arange(k, dtype=np.int32)}

    @property
    def max_level_built(self) -> int:
        return max(self._rows)

    def ensure_level(self, level: int) -> None:
        if not 1 <= level <= self.s:
            raise InvalidArity(f"level {level} not in 1..{self.s}")
        k = self.k
        row1 = self._rows[1]
        for l in range(self.max_level_built + 1, level + 1):
            prev_rows = self._rows[l - 1]
            prev_lasts = self._lasts[l - 1]
            counts = (k - 1 - prev_lasts).clip(min=0)
            total = int(counts.sum())
            pidx = np.repeat(np.arange(len(prev_rows)), counts)
            starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
            eidx = (prev_lasts[pidx] + 1
                    + (np.arange(total, dtype=np.int64) - starts[pidx])).astype(np.int32)
            self._rows[l] = prev_rows[pidx] ^ row1[eidx]
            self._lasts[l] = eidx
            self.build_additions += total
            assert total == comb(k, l)

    def level_arrays(self, level: int) -> tuple[np.ndarray, np.ndarray]:
        self.ensure_level(level)
        return self._rows[level], self._lasts[level]

    @staticmethod
    def weights_of(rows: np.ndarray) -> np.ndarray:
        return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


def build_saved_store(gamma: BitMatrix, s: int,
                      memory_budget: int = 256 * 1024 * 1024) -> SavedAdditionsStore:
    """Create the store (budget checked for all s levels) and build it."""
    store = SavedAdditionsStore(gamma, s, memory_budget)
    store.ensure_level(s)
    return store


def _scan_block(store: SavedAdditionsStore, level: int, start: int,
                member_pieces: list[list[np.ndarray]], ctr: _Counters, best):
    """Weigh all stored level rows from `start` against every member's
    piece chain.  The block is brought in once; each member's finals cost
    one addition per piece (the full chain is folded per final)."""
    rows, _ = store.level_arrays(level)
    block = rows[start:]
    m = len(block)
    if m == 0:
        return best
    ctr.row_accesses += m
    for pieces in member_pieces:
        if pieces:
            tmp = block ^ pieces[0]
            for p in pieces[1:]:
                tmp ^= p
            ctr.row_additions += m * len(pieces)
        else:
            tmp = block
        ctr.combinations += m
        w = int(store.weights_of(tmp).min())
        if w < best:
            best = w
    return best


def _walk(store: SavedAdditionsStore, g_rem: int,
          member_pieces: list[list[np.ndarray]], last: int,
          ctr: _Counters, best):
    """Recursive split g_rem = s + (g_rem - s) over combinations starting
    strictly after `last`; all members share the identical subtree."""
    k = store.k
    a = min(g_rem, store.s)
    b = g_rem - a
    if b == 0:
        return _scan_block(store, g_rem, index_of(k, g_rem, last),
                           member_pieces, ctr, best)
    rows, lasts = store.level_arrays(a)
    start = index_of(k, a, last)
    stop = index_of(k, a, k - g_rem)
    seg = lasts[start:stop]
    valid = np.nonzero(seg + b < k)[0]
    for off, e_last in zip(valid.tolist(), seg[valid].tolist()):
        j = start + off
        ctr.row_accesses += 1  # piece row fetched once, shared by members
        row_j = rows[j]
        extended = [pieces + [row_j] for pieces in member_pieces]
        best = _walk(store, b, extended, e_last, ctr, best)
    return best


def enumerate_saved(store: SavedAdditionsStore, g: int,
                    ubound: int | None = None) -> EnumerationResult:
    """Enumerate via the store: weights read straight off level g when
    g <= s, otherwise the recursive left/right decomposition."""
    _check_arity(g, store.k)
    store.ensure_level(min(g, store.s))
    ctr = _Counters()
    best = _walk(store, g, [[]], -1, ctr, _INF)
    return _result(best, ubound, ctr)


def _grouped_units(store: SavedAdditionsStore, g: int, unroll: int):
    """Top-level left combinations in (last element, lex) order, grouped
    greedily: consecutive lefts sharing a last element form units of at
    most `unroll`; leftovers run as smaller groups."""
    k, a = store.k, store.s
    b = g - a
    rows, lasts = store.level_arrays(a)
    stop = index_of(k, a, k - g)
    head = lasts[:stop]
    order = np.argsort(head, kind="stable")
    order = order[head[order] + b < k]
    units: list[tuple[int, list[int]]] = []
    cur: list[int] = []
    cur_last = -1
    for j in order.tolist():
        e_last = int(lasts[j])
        if cur and (e_last != cur_last or len(cur) == unroll):
            units.append((cur_last, cur))
            cur = []
        cur.append(j)
        cur_last = e_last
    if cur:
        units.append((cur_last, cur))
    return units


def _process_unit(store: SavedAdditionsStore, b: int, unit: tuple[int, list[int]],
                  ctr: _Counters, best):
    last, members = unit
    rows, _ = store.level_arrays(store.s)
    ctr.row_accesses += len(members)
    member_pieces = [[rows[j]] for j in members]
    return _walk(store, b, member_pieces, last, ctr, best)


def enumerate_saved_unrolled(store: SavedAdditionsStore, g: int,
                             ubound: int | None = None,
                             unroll: int = 2) -> EnumerationResult:
    """Same additions as enumerate_saved; fewer row accesses whenever at
    least two consecutive top-level lefts share their last element."""
    if unroll not in (2, 3):
        raise InvalidArity(f"unroll must be 2 or 3, got {unroll}")
    _check_arity(g, store.k)
    store.ensure_level(min(g, store.s))
    if g <= store.s:
        return enumerate_saved(store, g, ubound)
    ctr = _Counters()
    best = _INF
    for unit in _grouped_units(store, g, unroll):
        best = _process_unit(store, g - store.s, unit, ctr, best)
    return _result(best, ubound, ctr)


class _SharedBound:
    """Monotonically decreasing bound cell with lowered-write semantics."""

    def __init__(self, value):
        self.value = value
        self._lock = threading.Lock()

    def lower(self, value) -> None:
        with self._lock:
            if value < self.value:
                self.value = value

    def get(self):
        return self.value


def enumerate_parallel(store: SavedAdditionsStore, g: int,
                       ubound: int | None = None, workers: int = 1,
                       unroll: int = 1) -> EnumerationResult:
    """Distribute top-level left combinations (or unroll-groups) over
    workers via a shared cursor.  Every unit runs with worker-local
    counters and minima, merged once at the end, so the result is
    independent of worker count and scheduling order."""
    if workers < 1:
        raise InvalidArity(f"workers must be >= 1, got {workers}")
    if unroll not in (1, 2, 3):
        raise InvalidArity(f"unroll must be 1, 2 or 3, got {unroll}")
    _check_arity(g, store.k)
    store.ensure_level(min(g, store.s))
    if g <= store.s:
        return enumerate_saved(store, g, ubound)

    units = _grouped_units(store, g, max(unroll, 1))
    b = g - store.s
    shared = _SharedBound(ubound if ubound is not None else _INF)

    if workers == 1:
        ctr = _Counters()
        best = _INF
        for unit in units:
            best = _process_unit(store, b, unit, ctr, best)
            shared.lower(best)
        return _result(best, ubound, ctr)

    cursor = iter(units)
    lock = threading.Lock()
    merged: list[tuple[float, _Counters]] = []

    def drain():
        ctr = _Counters()
        best = _INF
        while True:
            with lock:
                unit = next(cursor, None)
            if unit is None:
                break
            shared.get()  # sampled per unit; loosens clipping only
            best = _process_unit(store, b, unit, ctr, best)
            shared.lower(best)
        with lock:
            merged.append((best, ctr))

    threads = [threading.Thread(target=drain) for _ in range(workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    total = _Counters()
    best = _INF
    for wbest, ctr in merged:
        best = min(best, wbest)
        total.combinations += ctr.combinations
        total.row_additions += ctr.row_additions
        total.row_accesses += ctr.row_accesses
    return _result(best, ubound, total)
