"""Combination generation, ranking and indexing.

Combinations are strictly increasing tuples of 0-based row indices drawn
from {0..k-1}.  Two total orders matter here: plain lexicographic order
(the storage order of the saved-additions levels, so that block starts can
be computed with ``index_of``) and a variant order keyed on
(first element, last element, middle part) used when several combinations
sharing a last element are processed together.
"""

from __future__ import annotations

from math import comb

from .errors import InvalidArity, OutOfRange

Combination = tuple[int, ...]


def binomial(p: int, q: int) -> int:
    """Exact C(p, q); zero when q > p.

    Arbitrary-precision, so the overflow failure mode of fixed-width
    big-count types cannot occur here.
    """
    if p < 0 or q < 0:
        raise ValueError(f"binomial arguments must be non-negative, got ({p}, {q})")
    return comb(p, q)


def validate_combination(c: Combination, k: int) -> None:
    """Raise unless c is a strictly increasing tuple over {0..k-1}."""
    if not 1 <= len(c) <= k:
        raise InvalidArity(f"combination size {len(c)} not in 1..{k}")
    prev = -1
    for v in c:
        if not prev < v < k:
            raise InvalidArity(f"combination {c} is not strictly increasing in 0..{k - 1}")
        prev = v


def first_combination(k: int, g: int) -> Combination:
    """Lexicographic minimum (0, 1, ..., g-1)."""
    if not 1 <= g <= k:
        raise InvalidArity(f"g={g} not in 1..{k}")
    return tuple(range(g))


def next_combination_lex(c: Combination, k: int) -> tuple[bool, Combination | None, int]:
    """Lexicographic successor of c over {0..k-1}.

    Returns (done, successor, reset_level) where reset_level is the
    leftmost position whose value changed; successors rebuild incremental
    state from that level.  done is True at the lexicographic maximum
    (successor is None, reset_level = 0).
    """
    g = len(c)
    for t in range(g - 1, -1, -1):
        if c[t] < k - g + t:
            head = c[:t] + (c[t] + 1,)
            return False, head + tuple(range(c[t] + 2, c[t] + 2 + (g - 1 - t))), t
    return True, None, 0


def next_combination_unrolled_order(c: Combination, k: int) -> tuple[bool, Combination | None]:
    """Successor in the order keyed on (c_1 asc, c_g asc, middle lex asc).

    The first element varies slowest, then the last, then the middle part;
    every combination appears exactly once.
    """
    g = len(c)
    if g == 1:
        nxt = c[0] + 1
        return (True, None) if nxt >= k else (False, (nxt,))
    c1, cg = c[0], c[-1]
    # Middle part is a (g-2)-combination of {c1+1 .. cg-1}.
    mid = c[1:-1]
    for t in range(len(mid) - 1, -1, -1):
        if mid[t] < cg - 1 - (len(mid) - 1 - t):
            head = mid[:t] + (mid[t] + 1,)
            tail = tuple(range(mid[t] + 2, mid[t] + 2 + (len(mid) - 1 - t)))
            return False, (c1,) + head + tail + (cg,)
    if cg + 1 < k:
        return False, (c1,) + tuple(range(c1 + 1, c1 + g - 1)) + (cg + 1,)
    if c1 + 1 <= k - g:
        return False, tuple(range(c1 + 1, c1 + 1 + g))
    return True, None


def rank_lex(c: Combination, k: int) -> int:
    """0-based lexicographic rank of c among all len(c)-combinations."""
    g = len(c)
    rank = 0
    prev = -1
    for i, ci in enumerate(c):
        # Combinations branching off below ci at position i (hockey-stick sum).
        rank += comb(k - prev - 1, g - i) - comb(k - ci, g - i)
        prev = ci
    return rank


def unrank_lex(k: int, g: int, r: int) -> Combination:
    """Inverse of rank_lex."""
    if not 1 <= g <= k:
        raise InvalidArity(f"g={g} not in 1..{k}")
    if not 0 <= r < comb(k, g):
        raise OutOfRange(f"rank {r} not in [0, C({k},{g}))")
    out = []
    v = 0
    for i in range(g):
        while comb(k - 1 - v, g - 1 - i) <= r:
            r -= comb(k - 1 - v, g - 1 - i)
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def index_of(p: int, q: int, r: int) -> int:
    """C(p,q) - C(p-r-1, q): count of q-combinations of {0..p-1} whose
    first element is <= r, i.e. the lex rank of the first combination
    starting strictly after r.  r = -1 means no restriction (returns 0).
    """
    if q > p:
        raise InvalidArity(f"q={q} exceeds p={p}")
    if not -1 <= r < p:
        raise OutOfRange(f"r={r} not in [-1, {p})")
    return comb(p, q) - comb(p - r - 1, q)


def left_cutoff(k: int, a: int, g: int) -> int:
    """Lex index of the first a-combination that cannot head a valid
    g-combination: C(k,a) - C(g-1,a)."""
    if not a <= g <= k:
        raise InvalidArity(f"need a <= g <= k, got a={a}, g={g}, k={k}")
    return comb(k, a) - comb(g - 1, a)


def lemma1_check(k: int, g: int) -> bool:
    """Whether all combinations below size g cost less than size g alone."""
    if not 1 <= g <= k:
        raise InvalidArity(f"g={g} not in 1..{k}")
    return sum(comb(k, j) for j in range(1, g)) < comb(k, g)
