"""Exact dense linear algebra over the prime fields GF(2) and GF(3).

Matrices are stored densely (one byte per element, row-major) with every
entry already reduced mod q. The field order is runtime data, so a single
code path serves both fields; all results are exact.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldError, MatrixParseError, ShapeError

SUPPORTED_FIELDS = (2, 3)


class GFMatrix:
    """Dense matrix over GF(q), q in {2, 3}.

    ``data`` is a 2-d uint8 array whose entries all lie in [0, q).
    Instances are treated as immutable values; operations return new
    matrices and never modify their inputs.
    """

    __slots__ = ("q", "data")

    def __init__(self, q: int, data) -> None:
        if q not in SUPPORTED_FIELDS:
            raise FieldError(f"unsupported field order {q}; expected one of {SUPPORTED_FIELDS}")
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"matrix must be 2-d and nonempty, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= q:
            raise FieldError(f"entries must lie in [0, {q}); got values outside the field")
        self.q = int(q)
        self.data = np.ascontiguousarray(arr, dtype=np.uint8)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def copy(self) -> "GFMatrix":
        return GFMatrix(self.q, self.data.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.q == other.q and self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"GFMatrix(q={self.q}, shape={self.rows}x{self.cols})"


def identity(q: int, size: int) -> GFMatrix:
    return GFMatrix(q, np.eye(size, dtype=np.uint8))


def zeros(q: int, rows: int, cols: int) -> GFMatrix:
    return GFMatrix(q, np.zeros((rows, cols), dtype=np.uint8))


def random_matrix(q: int, rows: int, cols: int, rng: np.random.Generator) -> GFMatrix:
    return GFMatrix(q, rng.integers(0, q, size=(rows, cols)))


def mat_mul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """Matrix product over GF(q); entry (i,j) = sum_m a[i,m]*b[m,j] mod q."""
    if a.q != b.q:
        raise FieldError(f"field mismatch: GF({a.q}) vs GF({b.q})")
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    prod = (a.data.astype(np.int64) @ b.data.astype(np.int64)) % a.q
    return GFMatrix(a.q, prod)


def transpose(a: GFMatrix) -> GFMatrix:
    return GFMatrix(a.q, a.data.T)


def row_reduce(a: GFMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q).

    Pivots are chosen as the first nonzero entry in column order (no
    heuristics), so the result is deterministic. Returns the RREF array
    (uint8) and the list of pivot columns.
    """
    q = a.q
    m = a.data.astype(np.int64).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        inv = pow(int(m[r, c]), -1, q)
        m[r] = (m[r] * inv) % q
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % q
        pivots.append(c)
        r += 1
    return m.astype(np.uint8), pivots


def rank(a: GFMatrix) -> int:
    """Row rank by Gaussian elimination with modular inverse pivots."""
    return len(row_reduce(a)[1])


def is_nonsingular(a: GFMatrix) -> bool:
    """True iff the square matrix ``a`` has full rank over its field."""
    if a.rows != a.cols:
        raise ShapeError(f"nonsingularity is defined for square matrices, got {a.rows}x{a.cols}")
    return rank(a) == a.rows


def inverse(a: GFMatrix) -> GFMatrix:
    """Inverse of a nonsingular square matrix, via Gauss-Jordan on [A | I]."""
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    aug = GFMatrix(a.q, np.hstack([a.data, np.eye(n, dtype=np.uint8)]))
    rref, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return GFMatrix(a.q, rref[:, n:])


def format_matrix(a: GFMatrix) -> str:
    """Matrix text format: header line ``q rows cols``, then one line per row."""
    lines = [f"{a.q} {a.rows} {a.cols}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in a.data)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> GFMatrix:
    """Parse the matrix text format; comment lines start with ``#``.

    Rejects out-of-field digits and malformed shapes, reporting the
    offending (1-based) line number.
    """
    payload = [
        (lineno, stripped)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if (stripped := raw.strip()) and not stripped.startswith("#")
    ]
    if not payload:
        raise MatrixParseError("empty matrix file")

    header_line, header = payload[0]
    parts = header.split()
    if len(parts) != 3:
        raise MatrixParseError(f"header must be 'q rows cols', got {header!r}", line=header_line)
    try:
        q, rows, cols = (int(p) for p in parts)
    except ValueError:
        raise MatrixParseError(f"header must be three integers, got {header!r}", line=header_line)
    if q not in SUPPORTED_FIELDS:
        raise MatrixParseError(f"unsupported field order {q}", line=header_line)
    if rows < 1 or cols < 1:
        raise MatrixParseError(f"matrix shape {rows}x{cols} is empty", line=header_line)

    body = payload[1:]
    if len(body) < rows:
        raise MatrixParseError(f"expected {rows} rows of data, found {len(body)}")
    if len(body) > rows:
        raise MatrixParseError(
            f"unexpected extra data (expected {rows} rows)", line=body[rows][0]
        )

    data = np.zeros((rows, cols), dtype=np.uint8)
    for i, (lineno, line) in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise MatrixParseError(f"expected {cols} entries, found {len(tokens)}", line=lineno)
        for j, tok in enumerate(tokens):
            try:
                v = int(tok)
            except ValueError:
                raise MatrixParseError(f"non-integer entry {tok!r}", line=lineno)
            if not 0 <= v < q:
                raise MatrixParseError(f"entry {v} out of range for GF({q})", line=lineno)
            data[i, j] = v
    return GFMatrix(q, data)
