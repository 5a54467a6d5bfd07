"""Bit-packed GF(2) matrices, column-restricted elimination, and the
family of systematic matrices derived from disjoint information sets.

Rows are stored as Python ints with bit i holding column i, so a row
addition is a single int XOR regardless of length.  The configured word
width (32 by default, matching the smaller padding overhead of narrow
words; 64 selectable) governs the packed word view used for storage
layout and for the numpy mirrors consumed by the saved-additions store.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDimensions, MatrixFormatError, RankDeficient

DEFAULT_WORD_WIDTH = 32


class BitMatrix:
    """A k x n matrix over GF(2) with int-packed rows.

    Treated as immutable after construction; operations return new
    matrices, so instances can be shared freely across workers.
    """

    __slots__ = ("num_rows", "num_cols", "word_width", "rows")

    def __init__(self, rows: Sequence[int], num_cols: int,
                 word_width: int = DEFAULT_WORD_WIDTH):
        if num_cols < 1:
            raise InvalidDimensions(f"need at least one column, got {num_cols}")
        if len(rows) < 1:
            raise InvalidDimensions("need at least one row")
        if word_width not in (32, 64):
            raise InvalidDimensions(f"word_width must be 32 or 64, got {word_width}")
        for i, r in enumerate(rows):
            if r < 0 or r >> num_cols:
                raise InvalidDimensions(
                    f"row {i} has bits outside columns 0..{num_cols - 1}")
        self.num_rows = len(rows)
        self.num_cols = num_cols
        self.word_width = word_width
        self.rows = tuple(rows)

    @classmethod
    def from_bits(cls, bits: Sequence[Sequence[int]],
                  word_width: int = DEFAULT_WORD_WIDTH) -> "BitMatrix":
        rows = []
        for row in bits:
            acc = 0
            for j, b in enumerate(row):
                if b:
                    acc |= 1 << j
            rows.append(acc)
        return cls(rows, len(bits[0]), word_width)

    @property
    def words_per_row(self) -> int:
        return -(-self.num_cols // self.word_width)

    def row_words(self, i: int) -> list[int]:
        """Packed word view of row i; padding bits past column n-1 are zero."""
        mask = (1 << self.word_width) - 1
        r = self.rows[i]
        return [(r >> (w * self.word_width)) & mask
                for w in range(self.words_per_row)]

    def to_numpy(self) -> np.ndarray:
        """(k, words_per_row) array mirroring the packed rows."""
        dtype = np.uint32 if self.word_width == 32 else np.uint64
        nbytes = self.words_per_row * (self.word_width // 8)
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        return np.frombuffer(buf, dtype=dtype).reshape(self.num_rows, self.words_per_row)

    def column_bits(self, i: int) -> list[int]:
        r = self.rows[i]
        return [(r >> j) & 1 for j in range(self.num_cols)]

    def with_word_width(self, word_width: int) -> "BitMatrix":
        return BitMatrix(self.rows, self.num_cols, word_width)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BitMatrix)
                and self.num_cols == other.num_cols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.num_cols, self.rows))

    def __repr__(self):
        return f"BitMatrix({self.num_rows}x{self.num_cols}, ww={self.word_width})"


@dataclass(frozen=True)
class GammaSet:
    """Systematic re-encodings of one generator matrix.

    The first ``full_rank_count`` matrices each carry a disjoint
    information set of size k; a trailing matrix of pivot rank
    ``remainder_rank`` < k over the leftover columns is present only when
    that rank is positive.  Every matrix spans exactly the same row space
    as the input generator (columns are never physically permuted).
    """

    gammas: tuple[BitMatrix, ...]
    pivot_sets: tuple[tuple[int, ...], ...]
    full_rank_count: int
    remainder_rank: int

    @property
    def matrix_count(self) -> int:
        return len(self.gammas)


def row_weight(row: int, n: int) -> int:
    """Number of set bits among columns 0..n-1 (padding must be zero)."""
    if row >> n:
        raise ValueError(f"row has nonzero padding past column {n - 1}")
    return row.bit_count()


def row_xor_accumulate(acc: int, src: int) -> int:
    """One GF(2) row addition: acc XOR src."""
    return acc ^ src


def reduce_on_columns(M: BitMatrix,
                      allowed_columns: Iterable[int]) -> tuple[BitMatrix, tuple[int, ...], int]:
    """Row-reduce M using pivots only from allowed_columns.

    Columns are tried in the given order; each pivot column ends up with
    exactly one set bit (full reduction, rows above and below cleared).
    Row operations span the full row width, so the row space is exactly
    preserved.  Returns (reduced matrix, pivot columns, rank).
    """
    work = list(M.rows)
    k = len(work)
    pivots = []
    pivot_row = 0
    for col in allowed_columns:
        if not 0 <= col < M.num_cols:
            raise InvalidDimensions(f"column {col} outside 0..{M.num_cols - 1}")
        mask = 1 << col
        hit = next((r for r in range(pivot_row, k) if work[r] & mask), None)
        if hit is None:
            continue
        work[pivot_row], work[hit] = work[hit], work[pivot_row]
        for r in range(k):
            if r != pivot_row and work[r] & mask:
                work[r] ^= work[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == k:
            break
    return (BitMatrix(work, M.num_cols, M.word_width), tuple(pivots), pivot_row)


def matrix_rank(M: BitMatrix) -> int:
    return reduce_on_columns(M, range(M.num_cols))[2]


def build_gamma_set(G: BitMatrix) -> GammaSet:
    """Greedy construction of the systematic matrix family.

    Repeatedly reduces on the still-unused columns (leftmost pivot
    preference).  Each pass of pivot rank k contributes a full-rank
    matrix and retires its information set; the first deficient pass
    contributes the remainder matrix (dropped entirely at rank 0).
    """
    k, n = G.num_rows, G.num_cols
    gammas: list[BitMatrix] = []
    pivot_sets: list[tuple[int, ...]] = []
    remainder_rank = 0
    used: set[int] = set()
    current = G
    while len(used) < n:
        allowed = [c for c in range(n) if c not in used]
        reduced, pivots, rank = reduce_on_columns(current, allowed)
        if not gammas and rank < k:
            raise RankDeficient(f"generator has rank {rank} < {k}")
        if rank == k:
            gammas.append(reduced)
            pivot_sets.append(pivots)
            used.update(pivots)
            current = reduced
            continue
        if rank > 0:
            gammas.append(reduced)
            pivot_sets.append(pivots)
            remainder_rank = rank
        break
    full = len(gammas) - (1 if remainder_rank else 0)
    return GammaSet(tuple(gammas), tuple(pivot_sets), full, remainder_rank)


def random_systematic_matrix(k: int, n: int, seed: int,
                             word_width: int = DEFAULT_WORD_WIDTH) -> BitMatrix:
    """Seeded random generator in systematic form (identity block followed
    by a uniform redundancy block), so the result always has rank k.

    Uses random.Random (Mersenne Twister) with one getrandbits(n - k) draw
    per row, which CPython keeps reproducible across platforms; the same
    seed therefore always yields the same matrix.
    """
    if not 0 < k < n:
        raise InvalidDimensions(f"need 0 < k < n, got k={k}, n={n}")
    rng = random.Random(seed)
    rows = [(1 << i) | (rng.getrandbits(n - k) << k) for i in range(k)]
    return BitMatrix(rows, n, word_width)


# ---------------------------------------------------------------------------
# matrix text format:
#   optional '#' comment lines, a "k n" header, then k rows of exactly n
#   characters from {0,1}; trailing whitespace tolerated, anything else not.


def parse_matrix_text(text: str, word_width: int = DEFAULT_WORD_WIDTH) -> BitMatrix:
    lines = [(no, line.rstrip()) for no, line in enumerate(text.splitlines(), start=1)
             if not line.lstrip().startswith("#")]
    while lines and not lines[-1][1]:
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"line {header_no}: expected 'k n' header, got {header!r}")
    try:
        k, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"line {header_no}: non-numeric header {header!r}") from None
    if k < 1 or n < 1:
        raise MatrixFormatError(f"line {header_no}: invalid dimensions {k} x {n}")
    body = lines[1:]
    if len(body) != k:
        raise MatrixFormatError(f"expected {k} rows, found {len(body)}")
    rows = []
    for no, line in body:
        if len(line) != n or set(line) - {"0", "1"}:
            raise MatrixFormatError(
                f"line {no}: expected exactly {n} characters from {{0,1}}")
        acc = 0
        for j, ch in enumerate(line):
            if ch == "1":
                acc |= 1 << j
        rows.append(acc)
    return BitMatrix(rows, n, word_width)


def format_matrix_text(M: BitMatrix, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{M.num_rows} {M.num_cols}")
    for i in range(M.num_rows):
        r = M.rows[i]
        out.append("".join("1" if (r >> j) & 1 else "0" for j in range(M.num_cols)))
    return "\n".join(out) + "\n"


def read_matrix_file(path: str, word_width: int = DEFAULT_WORD_WIDTH) -> BitMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix_text(fh.read(), word_width)


def write_matrix_file(path: str, M: BitMatrix, comments: Sequence[str] = ()) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    text = format_matrix_text(M, comments)
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
    os.replace(tmp, path)
