"""Shared fixtures: small known codes and seeded random generators."""

from __future__ import annotations

import pytest

from mindist.gf2 import BitMatrix, random_systematic_matrix

# Systematic Hamming [7,4,3]: rows of (I_4 | A).
HAMMING_7_4_BITS = [
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
]


def random_systematic(k: int, n: int, seed: int, word_width: int = 32) -> BitMatrix:
    return random_systematic_matrix(k, n, seed, word_width)


@pytest.fixture
def hamming74() -> BitMatrix:
    return BitMatrix.from_bits(HAMMING_7_4_BITS)


@pytest.fixture
def repetition5() -> BitMatrix:
    return BitMatrix([0b11111], 5)
