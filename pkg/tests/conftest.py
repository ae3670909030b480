"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's rank/enumeration code
paths: hulls are found by scanning entire vector spaces, distances by
comparing all codeword pairs.
"""

import itertools
from pathlib import Path

import numpy as np
import pytest

from lcdrl import codes, gf

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

KNOWN_CODES = [
    ("binary_37_9_13.txt", 2, 37, 9, 13),
    ("binary_39_9_14.txt", 2, 39, 9, 14),
    ("binary_40_9_13.txt", 2, 40, 9, 13),
    ("ternary_22_4_13.txt", 3, 22, 4, 13),
    ("ternary_23_5_12.txt", 3, 23, 5, 12),
    ("ternary_24_6_12.txt", 3, 24, 6, 12),
]


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


_SPACE_CACHE: dict = {}


def all_vectors(q: int, length: int) -> np.ndarray:
    """Every vector in GF(q)^length, one per row (cached per shape)."""
    key = (q, length)
    if key not in _SPACE_CACHE:
        _SPACE_CACHE[key] = np.array(
            list(itertools.product(range(q), repeat=length)), dtype=np.int64)
    return _SPACE_CACHE[key]


def span_of_rows(rows: np.ndarray, q: int) -> np.ndarray:
    """All linear combinations of the given rows over GF(q)."""
    coeffs = all_vectors(q, rows.shape[0])
    return (coeffs @ rows) % q


def enumerate_codewords(code: codes.LinearCode) -> np.ndarray:
    """All q^k codewords by direct message enumeration."""
    return span_of_rows(code.G.data.astype(np.int64), code.q)


def brute_force_hull_dim(code: codes.LinearCode) -> int:
    """dim(C intersect C-dual) by scanning the whole ambient space.

    C-dual is every vector of GF(q)^n orthogonal to all rows of G; C is
    enumerated from messages. Both are marked in index space and the
    intersection counted, which must be a power of q.
    """
    q, n = code.q, code.n
    space = all_vectors(q, n)
    in_dual = np.all((space @ code.G.data.astype(np.int64).T) % q == 0, axis=1)
    # itertools.product orders rows big-endian: first coordinate is most significant
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    in_code = np.zeros(q**n, dtype=bool)
    in_code[enumerate_codewords(code) @ weights] = True
    count = int(np.sum(in_dual & in_code))
    dim = round(np.log(count) / np.log(q))
    assert q**dim == count, "intersection is not a subspace-sized set"
    return dim


def pairwise_min_distance(code: codes.LinearCode) -> int:
    """Minimum Hamming distance over all pairs of distinct codewords."""
    cws = enumerate_codewords(code)
    best = code.n
    for i in range(len(cws)):
        diff = cws[i + 1:] != cws[i]
        if len(diff):
            best = min(best, int(diff.sum(axis=1).min()))
    return best


def random_code(rng: np.random.Generator, q: int, n: int, k: int) -> codes.LinearCode:
    return codes.make_standard_code(gf.random_matrix(q, k, n - k, rng))
