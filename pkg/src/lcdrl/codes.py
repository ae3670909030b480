"""Linear-code analysis over GF(2) and GF(3).

Standard-form construction G = [I_k | P], the LCD test via nonsingularity
of G G^T, hull dimension, exact minimum distance by message enumeration,
and the code-file text format.
"""

from __future__ import annotations

import csv
import importlib.resources
from dataclasses import dataclass

import numpy as np

from . import gf
from .errors import EnumerationCapError, FieldError
from .gf import GFMatrix

DEFAULT_ENUMERATION_CAP = 2**24


class LinearCode:
    """An [n,k]_q code in standard form G = [I_k | P]."""

    __slots__ = ("q", "n", "k", "P", "G")

    def __init__(self, P: GFMatrix) -> None:
        self.q = P.q
        self.k = P.rows
        self.n = P.rows + P.cols
        self.P = P
        ident = np.eye(self.k, dtype=np.uint8)
        self.G = GFMatrix(self.q, np.hstack([ident, P.data]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.P == other.P

    def __hash__(self) -> int:
        return hash(self.P)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"


@dataclass
class CodeReport:
    """Analysis results for one code; ``min_distance`` is None when skipped."""

    is_lcd: bool
    hull_dim: int
    min_distance: int | None = None
    singleton_slack: int | None = None

    @property
    def detectable_errors(self) -> int | None:
        return None if self.min_distance is None else self.min_distance - 1

    @property
    def correctable_errors(self) -> int | None:
        return None if self.min_distance is None else (self.min_distance - 1) // 2


def make_standard_code(P: GFMatrix) -> LinearCode:
    """Build the [k + P.cols, k]_q code with generator matrix [I_k | P]."""
    if P.q not in gf.SUPPORTED_FIELDS:
        raise FieldError(f"unsupported field order {P.q}")
    return LinearCode(P)


def gram(code: LinearCode) -> GFMatrix:
    """G G^T over GF(q); the code is LCD iff this k x k matrix is nonsingular."""
    return gf.mat_mul(code.G, gf.transpose(code.G))


def is_lcd(code: LinearCode) -> bool:
    return gf.is_nonsingular(gram(code))


def hull_dimension(code: LinearCode) -> int:
    """dim(C intersect C-dual), computed as k - rank(G G^T)."""
    return code.k - gf.rank(gram(code))


def _all_messages(q: int, k: int, lo: int, hi: int) -> np.ndarray:
    """Messages lo..hi-1 (as base-q digit rows, least significant digit first)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k):
        out[:, j] = idx % q
        idx = idx // q
    return out


def min_distance(code: LinearCode, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Exact minimum distance by enumerating all q^k - 1 nonzero codewords.

    By linearity this equals the minimum pairwise Hamming distance. Raises
    EnumerationCapError when q^k exceeds ``cap``.
    """
    total = code.q**code.k
    if total > cap:
        raise EnumerationCapError(
            f"q^k = {total} codewords exceeds the enumeration cap of {cap}"
        )
    G = code.G.data.astype(np.int64)
    best = code.n
    block = 1 << 14
    for lo in range(1, total, block):
        msgs = _all_messages(code.q, code.k, lo, min(lo + block, total))
        words = (msgs @ G) % code.q
        weights = np.count_nonzero(words, axis=1)
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def analyze(code: LinearCode, with_distance: bool = True,
            cap: int = DEFAULT_ENUMERATION_CAP) -> CodeReport:
    """Full report: LCD flag, hull dimension, and (optionally) distance."""
    hull = hull_dimension(code)
    report = CodeReport(is_lcd=(hull == 0), hull_dim=hull)
    if with_distance:
        report.min_distance = min_distance(code, cap=cap)
        report.singleton_slack = (code.n - code.k + 1) - report.min_distance
    return report


def serialize(code: LinearCode, distance: int | None = None) -> str:
    """Code-file text: a name header plus the P matrix (G is reconstructed)."""
    if distance is None:
        name = f"[{code.n},{code.k}]_{code.q}"
    else:
        name = f"[{code.n},{code.k},{distance}]_{code.q}"
    return f"# name: {name}\n" + gf.format_matrix(code.P)


def parse_code(text: str) -> LinearCode:
    """Parse a code file (the stored matrix is P; G is rebuilt as [I_k | P])."""
    return make_standard_code(gf.parse_matrix(text))


def load_code(path) -> LinearCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(code: LinearCode, path, distance: int | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(code, distance=distance))


@dataclass(frozen=True)
class DistanceBound:
    q: int
    n: int
    k: int
    bound_lo: int
    bound_hi: int


def load_distance_bounds() -> list[DistanceBound]:
    """Reference table of known optimal-distance ranges for selected (q,n,k)."""
    ref = importlib.resources.files("lcdrl").joinpath("data/distance_bounds.csv")
    with ref.open("r", encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(fh)]
    return [
        DistanceBound(int(r["q"]), int(r["n"]), int(r["k"]),
                      int(r["bound_lo"]), int(r["bound_hi"]))
        for r in rows
    ]


def lookup_distance_bound(q: int, n: int, k: int) -> tuple[int, int] | None:
    """Widest known bound range for (q,n,k), or None if the table has no entry."""
    matches = [b for b in load_distance_bounds() if (b.q, b.n, b.k) == (q, n, k)]
    if not matches:
        return None
    return min(b.bound_lo for b in matches), max(b.bound_hi for b in matches)
