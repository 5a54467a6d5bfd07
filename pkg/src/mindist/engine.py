"""Outer minimum-weight loop: per-g enumeration over every systematic
matrix with lower/upper bound tracking, plus a brute-force oracle.

Each round g enumerates all weight-g message vectors against every
matrix of the family, shrinking the upper bound U with each pass; the
certified lower bound then grows as (m-1)(g+1) + max(0, g+1-k+k_m), and
the loop stops once L >= U (or every g has been processed).  The running
U is handed to later passes within the same round for clipping only;
passes always run to completion so counters stay schedule-independent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .enumeration import (
    SavedAdditionsStore,
    enumerate_basic,
    enumerate_optimized,
    enumerate_parallel,
    enumerate_saved,
    enumerate_saved_unrolled,
    enumerate_stack,
)
from .errors import InvalidArity, InvalidDimensions, Interrupted, TooLarge
from .gf2 import BitMatrix, GammaSet, build_gamma_set

STRATEGIES = ("basic", "optimized", "stack", "saved", "saved-unrolled")

DEFAULT_MEMORY_BUDGET = 256 * 1024 * 1024
DEFAULT_MAX_G = 16

STATUS_EXACT = "exact"
STATUS_UPPER_BOUND_ONLY = "upper_bound_only"
STATUS_INTERRUPTED = "interrupted"


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int


@dataclass
class Counters:
    combinations: int = 0
    row_additions: int = 0
    row_accesses: int = 0

    def add(self, res) -> None:
        self.combinations += res.combinations
        self.row_additions += res.row_additions
        self.row_accesses += res.row_accesses


@dataclass
class EngineConfig:
    strategy: str = "saved"
    s: int = 3
    unroll: int = 2
    workers: int = 1
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    max_g: int = DEFAULT_MAX_G
    start_g: int = 1
    start_upper: int | None = None
    progress: object = None  # callable(g, L, U) after each round


@dataclass
class DistanceReport:
    distance: int
    status: str
    g_reached: int
    n: int
    k: int
    m: int
    k_m: int
    pivot_sets: tuple[tuple[int, ...], ...]
    bounds_trace: list[tuple[int, int, int]] = field(default_factory=list)
    counters: Counters = field(default_factory=Counters)
    store_build_additions: int = 0
    elapsed: float = 0.0

    @property
    def exact(self) -> bool:
        return self.status == STATUS_EXACT


def initial_bounds(n: int, k: int) -> Bounds:
    """Starting bounds (1, n-k+1); the upper value is the Singleton bound."""
    if not 0 < k <= n:
        raise InvalidDimensions(f"need 0 < k <= n, got k={k}, n={n}")
    return Bounds(1, n - k + 1)


def lower_bound_update(g: int, m: int, k: int, k_m: int) -> int:
    """(m-1)(g+1) + max(0, g+1-k+k_m) after finishing round g."""
    if m < 1:
        raise InvalidDimensions(f"need m >= 1, got {m}")
    if not 0 <= k_m <= k:
        raise InvalidDimensions(f"need 0 <= k_m <= k, got k_m={k_m}, k={k}")
    return (m - 1) * (g + 1) + max(0, g + 1 - k + k_m)


def _line7_args(gs: GammaSet, k: int) -> tuple[int, int]:
    """Arguments for lower_bound_update.

    With a deficient trailing matrix, m counts all matrices and k_m is
    the remainder rank.  When every matrix is full rank the last one acts
    as a remainder of rank k, so each of the m disjoint information sets
    contributes g+1.
    """
    if gs.remainder_rank > 0:
        return gs.full_rank_count + 1, gs.remainder_rank
    return gs.full_rank_count, k


class _Runner:
    """Per-run strategy dispatch with lazily built, retained stores."""

    def __init__(self, config: EngineConfig):
        if config.strategy not in STRATEGIES:
            raise InvalidArity(f"unknown strategy {config.strategy!r}")
        self.config = config
        self.stores: dict[int, SavedAdditionsStore] = {}

    def store_for(self, idx: int, gamma: BitMatrix) -> SavedAdditionsStore:
        store = self.stores.get(idx)
        if store is None:
            s = min(self.config.s, gamma.num_rows)
            store = SavedAdditionsStore(gamma, s, self.config.memory_budget)
            self.stores[idx] = store
        return store

    def run(self, idx: int, gamma: BitMatrix, g: int, ubound: int):
        cfg = self.config
        if cfg.strategy == "basic":
            return enumerate_basic(gamma, g, ubound)
        if cfg.strategy == "optimized":
            return enumerate_optimized(gamma, g, ubound)
        if cfg.strategy == "stack":
            return enumerate_stack(gamma, g, ubound)
        store = self.store_for(idx, gamma)
        unroll = cfg.unroll if cfg.strategy == "saved-unrolled" else 1
        if cfg.workers > 1:
            return enumerate_parallel(store, g, ubound, cfg.workers, unroll)
        if cfg.strategy == "saved-unrolled" and g > store.s:
            return enumerate_saved_unrolled(store, g, ubound, unroll)
        return enumerate_saved(store, g, ubound)

    @property
    def store_build_additions(self) -> int:
        return sum(st.build_additions for st in self.stores.values())


def minimum_distance(G: BitMatrix, config: EngineConfig | None = None) -> DistanceReport:
    """Exact minimum weight of the code generated by G.

    Raises RankDeficient for rank-deficient input and BudgetExceeded if
    the saved store cannot fit.  When config.max_g cuts the loop short,
    the report's distance is only an upper bound (status says so).  On
    KeyboardInterrupt an Interrupted error carries the partial report;
    re-running with start_g = g_reached + 1 and start_upper = distance
    continues where it stopped.
    """
    config = config or EngineConfig()
    t0 = time.perf_counter()
    gs = build_gamma_set(G)
    k, n = G.num_rows, G.num_cols
    m_args = _line7_args(gs, k)

    start = initial_bounds(n, k)
    L, U = start.lower, start.upper
    if config.start_upper is not None:
        U = min(U, config.start_upper)
    g = max(1, config.start_g)
    if g > 1:
        L = lower_bound_update(g - 1, m_args[0], k, m_args[1])

    runner = _Runner(config)
    counters = Counters()
    trace: list[tuple[int, int, int]] = []
    g_reached = g - 1
    status = STATUS_EXACT

    def report(dist_status: str) -> DistanceReport:
        return DistanceReport(
            distance=U,
            status=dist_status,
            g_reached=g_reached,
            n=n,
            k=k,
            m=gs.matrix_count,
            k_m=gs.remainder_rank,
            pivot_sets=gs.pivot_sets,
            bounds_trace=trace,
            counters=counters,
            store_build_additions=runner.store_build_additions,
            elapsed=time.perf_counter() - t0,
        )

    try:
        while g <= k and L < U:
            if g > config.max_g:
                status = STATUS_UPPER_BOUND_ONLY
                break
            for idx, gamma in enumerate(gs.gammas):
                res = runner.run(idx, gamma, g, U)
                counters.add(res)
                U = min(U, res.min_weight)
            L = lower_bound_update(g, m_args[0], k, m_args[1])
            trace.append((g, L, U))
            g_reached = g
            if config.progress is not None:
                config.progress(g, L, U)
            g += 1
    except KeyboardInterrupt:
        raise Interrupted(report(STATUS_INTERRUPTED)) from None
    return report(status)


def brute_force_distance(G: BitMatrix, max_k: int = 28) -> int:
    """Minimum weight over all 2^k - 1 nonzero codewords, via a Gray-code
    walk (one row XOR per message)."""
    k = G.num_rows
    if k > max_k:
        raise TooLarge(f"k={k} exceeds brute-force cap {max_k}")
    rows = G.rows
    best = None
    cw = 0
    for i in range(1, 1 << k):
        cw ^= rows[(i & -i).bit_length() - 1]
        w = cw.bit_count()
        if best is None or w < best:
            best = w
    return best


# ---------------------------------------------------------------------------
# report text format: key=value lines plus one "g=.. L=.. U=.." line per
# completed round; parseable so an interrupted run can be resumed.


def format_report(r: DistanceReport) -> str:
    combos_per_sec = r.counters.combinations / r.elapsed if r.elapsed > 0 else 0.0
    lines = [
        f"status={r.status}",
        f"n={r.n}",
        f"k={r.k}",
        f"distance={r.distance}",
        f"g_reached={r.g_reached}",
        f"m={r.m}",
        f"k_m={r.k_m}",
        f"combinations={r.counters.combinations}",
        f"row_additions={r.counters.row_additions}",
        f"row_accesses={r.counters.row_accesses}",
        f"store_build_additions={r.store_build_additions}",
        f"elapsed_s={r.elapsed:.3f}",
        f"combos_per_sec={combos_per_sec:.0f}",
    ]
    lines += [f"g={g} L={L} U={U}" for g, L, U in r.bounds_trace]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Keys and bounds trace of a serialized report."""
    out: dict = {"bounds_trace": []}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("g=") and " L=" in line:
            parts = dict(p.split("=", 1) for p in line.split())
            out["bounds_trace"].append(
                (int(parts["g"]), int(parts["L"]), int(parts["U"])))
            continue
        if "=" in line:
            key, value = line.split("=", 1)
            out[key] = value
    for key in ("n", "k", "distance", "g_reached", "m", "k_m", "combinations",
                "row_additions", "row_accesses", "store_build_additions"):
        if key in out:
            out[key] = int(out[key])
    return out
