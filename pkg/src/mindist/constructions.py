"""Cyclic codes, matrix-product codes with a polynomial unit, and the
extend/puncture derivations.

Polynomials over F2 are plain ints with bit i holding the coefficient of
x^i; a generator row therefore reads low degree leftmost in the matrix
text format.  The ambient ring for cyclic constructions is
F2[x]/(x^m - 1), with x^m - 1 == x^m + 1 in characteristic two.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InvalidDimensions,
    LengthMismatch,
    NotADivisor,
    NotAUnit,
    ScriptError,
)
from .gf2 import BitMatrix, matrix_rank, read_matrix_file, reduce_on_columns

# ---------------------------------------------------------------------------
# polynomial arithmetic


def poly_from_exponents(exponents: Iterable[int]) -> int:
    """XOR-accumulate x^e terms (a repeated exponent cancels)."""
    p = 0
    for e in exponents:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        p ^= 1 << e
    return p


def poly_exponents(p: int) -> list[int]:
    return [i for i in range(p.bit_length()) if (p >> i) & 1]


def poly_degree(p: int) -> int:
    """Degree; -1 serves as the below-everything sentinel for the zero
    polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product in F2[x]."""
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = poly_degree(b)
    q = 0
    while a and poly_degree(a) >= db:
        shift = poly_degree(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a


def ring_modulus(m: int) -> int:
    """x^m - 1 (== x^m + 1 over F2)."""
    if m < 1:
        raise InvalidDimensions(f"ring length must be >= 1, got {m}")
    return (1 << m) | 1


def poly_mod_ring(p: int, m: int) -> int:
    return poly_divmod(p, ring_modulus(m))[1]


def poly_mul_mod(a: int, b: int, m: int) -> int:
    """a * b with x^m == 1 (cyclic wraparound of exponents)."""
    return poly_mod_ring(poly_mul(a, b), m)


def is_unit(p: int, m: int) -> bool:
    """Invertibility in F2[x]/(x^m - 1): gcd(p, x^m - 1) = 1."""
    if p == 0:
        return False
    return poly_gcd(poly_mod_ring(p, m), ring_modulus(m)) == 1


# ---------------------------------------------------------------------------
# constructions


def cyclic_code_generator(f: int, m: int, word_width: int = 32) -> BitMatrix:
    """Generator of the cyclic code (f) in F2[x]/(x^m - 1): row i holds
    the coefficients of x^i * f, giving an (m - deg f) x m staircase."""
    if f == 0:
        raise NotADivisor("zero polynomial generates nothing")
    if poly_divmod(ring_modulus(m), f)[1] != 0:
        raise NotADivisor(f"polynomial does not divide x^{m} - 1")
    k = m - poly_degree(f)
    if k < 1:
        raise InvalidDimensions(f"x^{m} - 1 itself generates the zero code")
    return BitMatrix([f << i for i in range(k)], m, word_width)


def is_subcode(code_a: BitMatrix, code_b: BitMatrix) -> bool:
    """Whether every row of code_a lies in the row space of code_b."""
    if code_a.num_cols != code_b.num_cols:
        raise LengthMismatch(
            f"lengths differ: {code_a.num_cols} vs {code_b.num_cols}")
    combined = BitMatrix(code_b.rows + code_a.rows, code_b.num_cols,
                         code_b.word_width)
    return matrix_rank(combined) == matrix_rank(code_b)


def matrix_product_code(G1: BitMatrix, G2: BitMatrix, p: int, m: int) -> BitMatrix:
    """Length-2m code with rows (u | u*p) for u in G1 and (0 | v) for v
    in G2, i.e. the product [C1 C2] * ((1, p), (0, 1)) with p a unit.

    The second code not being contained in the first is legal but
    forfeits the usual distance guarantees, so it only warns.
    """
    if G1.num_cols != m or G2.num_cols != m:
        raise LengthMismatch(
            f"both codes must have length {m}, got {G1.num_cols} and {G2.num_cols}")
    if not is_unit(p, m):
        raise NotAUnit(f"p is not invertible in F2[x]/(x^{m} - 1)")
    if not is_subcode(G2, G1):
        warnings.warn("second code is not nested inside the first; "
                      "distance guarantees of the product construction may not hold",
                      stacklevel=2)
    p = poly_mod_ring(p, m)
    rows = [u | (poly_mul_mod(u, p, m) << m) for u in G1.rows]
    rows += [v << m for v in G2.rows]
    return BitMatrix(rows, 2 * m, G1.word_width)


def extend_code(G: BitMatrix) -> BitMatrix:
    """Append an overall parity column: length n+1, same dimension."""
    n = G.num_cols
    rows = [r | ((r.bit_count() & 1) << n) for r in G.rows]
    return BitMatrix(rows, n + 1, G.word_width)


def puncture_code(G: BitMatrix, positions: Iterable[int]) -> BitMatrix:
    """Delete the given (0-based) columns and re-extract a full-rank
    generator; the dimension drops when deletion kills independence."""
    drop = set(positions)
    n = G.num_cols
    bad = [j for j in drop if not 0 <= j < n]
    if bad:
        raise InvalidDimensions(f"positions {bad} outside 0..{n - 1}")
    keep = [j for j in range(n) if j not in drop]
    if not keep:
        raise InvalidDimensions("cannot puncture away every column")
    rows = []
    for r in G.rows:
        acc = 0
        for idx, j in enumerate(keep):
            if (r >> j) & 1:
                acc |= 1 << idx
        rows.append(acc)
    punctured = BitMatrix(rows, len(keep), G.word_width)
    reduced, _, rank = reduce_on_columns(punctured, range(len(keep)))
    if rank == 0:
        raise InvalidDimensions("punctured code is the zero code")
    return BitMatrix(reduced.rows[:rank], len(keep), G.word_width)


# ---------------------------------------------------------------------------
# construction scripts: key=value lines (m=, f1=, f2=, p= with exponent
# lists, or matrix=<path> for a ready generator), then op lines
# "extend" / "puncture=<1-based positions>", applied in order.


@dataclass
class ConstructionScript:
    matrix_path: str | None
    m: int | None
    f1: int | None
    f2: int | None
    p: int | None
    ops: list[tuple]


def _parse_exponents(value: str, line_no: int) -> int:
    try:
        return poly_from_exponents(int(tok) for tok in value.split(",") if tok.strip())
    except ValueError as exc:
        raise ScriptError(line_no, f"bad exponent list: {exc}") from None


def parse_construction_script(text: str) -> ConstructionScript:
    script = ConstructionScript(None, None, None, None, None, [])
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "extend":
            script.ops.append(("extend",))
            continue
        if "=" not in line:
            raise ScriptError(no, f"unrecognized line {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "matrix":
            script.matrix_path = value
        elif key == "m":
            try:
                script.m = int(value)
            except ValueError:
                raise ScriptError(no, f"bad ring length {value!r}") from None
        elif key in ("f1", "f2", "p"):
            setattr(script, key, _parse_exponents(value, no))
        elif key == "puncture":
            try:
                positions = tuple(int(tok) for tok in value.split(",") if tok.strip())
            except ValueError:
                raise ScriptError(no, f"bad position list {value!r}") from None
            if not positions or min(positions) < 1:
                raise ScriptError(no, "puncture positions are 1-based")
            script.ops.append(("puncture", positions))
        else:
            raise ScriptError(no, f"unknown key {key!r}")
    return script


def run_construction_script(text: str, base_dir: str = ".",
                            word_width: int = 32) -> BitMatrix:
    """Build the base code and apply the ops; see parse for the format."""
    import os

    script = parse_construction_script(text)
    if script.matrix_path is not None:
        path = script.matrix_path
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        code = read_matrix_file(path, word_width)
    else:
        missing = [name for name in ("m", "f1", "f2", "p")
                   if getattr(script, name) is None]
        if missing:
            raise ScriptError(0, f"missing keys: {', '.join(missing)}")
        m = script.m
        G1 = cyclic_code_generator(script.f1, m, word_width)
        G2 = cyclic_code_generator(script.f2, m, word_width)
        code = matrix_product_code(G1, G2, poly_mod_ring(script.p, m), m)
    for op in script.ops:
        if op[0] == "extend":
            code = extend_code(code)
        else:
            zero_based = [pos - 1 for pos in op[1]]
            code = puncture_code(code, zero_based)
    return code
