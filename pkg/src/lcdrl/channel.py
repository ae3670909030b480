"""Monte-Carlo block error rate estimation for binary codes.

BPSK modulation over an AWGN channel, decoded with ordered-statistics
decoding (OSD). The SNR axis is Eb/N0 in dB with code-rate scaling: the
per-dimension noise variance is 1 / (2 * (k/n) * 10**(snr_db/10)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codes import LinearCode
from .errors import FieldError, ShapeError


@dataclass
class ChannelConfig:
    """Simulation settings for one BLER estimate.

    ``max_errors`` stops the simulation early once that many block errors
    have been seen (variance control); set it >= ``frames`` to disable.
    """

    snr_db: float = 3.0
    frames: int = 10_000
    osd_order: int = 2
    seed: int = 0
    max_errors: int = 100

    def validate(self) -> None:
        if self.frames < 1:
            raise ValueError(f"frames must be >= 1, got {self.frames}")
        if self.osd_order < 0:
            raise ValueError(f"osd_order must be >= 0, got {self.osd_order}")
        if self.max_errors < 1:
            raise ValueError(f"max_errors must be >= 1, got {self.max_errors}")


@dataclass
class BlerEstimate:
    bler: float
    frames_run: int
    errors_seen: int
    half_width_95: float


def noise_variance(snr_db: float, rate: float) -> float:
    """Per-dimension AWGN variance for a given Eb/N0 (dB) and code rate k/n."""
    return 1.0 / (2.0 * rate * 10.0 ** (snr_db / 10.0))


def bpsk_modulate(codeword: np.ndarray) -> np.ndarray:
    """Antipodal map for GF(2) symbols: 0 -> +1, 1 -> -1."""
    bits = np.asarray(codeword)
    if bits.size and bits.max() > 1:
        raise FieldError("BPSK modulation is defined for binary symbols only")
    return 1.0 - 2.0 * bits.astype(np.float64)


def awgn_add(signal: np.ndarray, cfg: ChannelConfig, rate: float,
             rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. zero-mean Gaussian noise at the configured Eb/N0."""
    sigma = np.sqrt(noise_variance(cfg.snr_db, rate))
    return signal + sigma * rng.standard_normal(signal.shape)


@lru_cache(maxsize=32)
def _flip_patterns(k: int, order: int) -> np.ndarray:
    """All 0/1 rows of length k with weight <= order, lowest weight first."""
    rows = [np.zeros(k, dtype=np.uint8)]
    for w in range(1, order + 1):
        for combo in itertools.combinations(range(k), w):
            row = np.zeros(k, dtype=np.uint8)
            row[list(combo)] = 1
            rows.append(row)
    return np.array(rows)


def _reduce_on_reliable_columns(G: np.ndarray, perm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce G (columns permuted by ``perm``) over GF(2).

    Pivot columns are taken greedily in permuted (reliability) order with
    rank checks, which realizes the standard information-set fallback when
    the k most reliable positions are dependent. Returns the reduced
    matrix in the permuted domain and the pivot (information set) columns.
    """
    R = G[:, perm].astype(np.uint8).copy()
    rows, cols = R.shape
    pivots = np.empty(rows, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        mask = R[:, c].copy()
        mask[r] = 0
        R[mask == 1] ^= R[r]
        pivots[r] = c
        r += 1
    return R, pivots


def osd_decode(received: np.ndarray, code: LinearCode, order: int) -> np.ndarray:
    """Ordered-statistics decoding of one received BPSK frame.

    Sorts positions by reliability |y_i|, re-encodes the hard decisions on
    the most reliable information set plus every flip pattern of weight
    <= ``order`` on those k bits, and returns the candidate codeword with
    minimum Euclidean distance to ``received`` (ties go to the earlier
    candidate).
    """
    if code.q != 2:
        raise FieldError("OSD decoding supports binary codes only")
    if order > code.k:
        raise ShapeError(f"order {order} exceeds code dimension {code.k}")
    y = np.asarray(received, dtype=np.float64)
    if y.shape != (code.n,):
        raise ShapeError(f"received vector must have length {code.n}, got {y.shape}")

    perm = np.argsort(-np.abs(y), kind="stable")
    R, pivots = _reduce_on_reliable_columns(code.G.data, perm)
    yp = y[perm]

    hard = (yp < 0).astype(np.uint8)
    base = hard[pivots]
    msgs = base[None, :] ^ _flip_patterns(code.k, order)
    cands = (msgs.astype(np.int64) @ R.astype(np.int64)) % 2
    dists = np.sum((yp[None, :] - (1.0 - 2.0 * cands)) ** 2, axis=1)
    best = cands[int(np.argmin(dists))]

    out = np.empty(code.n, dtype=np.uint8)
    out[perm] = best
    return out


def encode(code: LinearCode, message: np.ndarray) -> np.ndarray:
    """Encode one message row vector: m G mod q."""
    return (np.asarray(message, dtype=np.int64) @ code.G.data.astype(np.int64)) % code.q


def estimate_bler(code: LinearCode, cfg: ChannelConfig) -> BlerEstimate:
    """Monte-Carlo BLER of ``code`` under BPSK/AWGN with OSD decoding.

    Transmits uniformly random messages; a frame counts as an error when
    the decoded codeword differs from the transmitted one. Deterministic
    for a fixed ``cfg.seed``.
    """
    if code.q != 2:
        raise FieldError("BLER estimation supports binary codes only")
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    rate = code.k / code.n

    errors = 0
    frames_run = 0
    for _ in range(cfg.frames):
        message = rng.integers(0, 2, size=code.k)
        sent = encode(code, message)
        noisy = awgn_add(bpsk_modulate(sent), cfg, rate, rng)
        decoded = osd_decode(noisy, code, cfg.osd_order)
        frames_run += 1
        if not np.array_equal(decoded, sent):
            errors += 1
            if errors >= cfg.max_errors:
                break

    bler = errors / frames_run
    half_width = 1.96 * np.sqrt(max(bler * (1.0 - bler), 0.0) / frames_run)
    return BlerEstimate(bler=bler, frames_run=frames_run,
                        errors_seen=errors, half_width_95=half_width)


def sweep_bler(code: LinearCode, snrs_db, cfg: ChannelConfig) -> list[dict]:
    """BLER estimates over a grid of SNR points; rows for the sweep CSV."""
    rows = []
    for snr in snrs_db:
        point = ChannelConfig(snr_db=float(snr), frames=cfg.frames,
                              osd_order=cfg.osd_order, seed=cfg.seed,
                              max_errors=cfg.max_errors)
        est = estimate_bler(code, point)
        rows.append({
            "snr_db": float(snr),
            "frames": est.frames_run,
            "errors": est.errors_seen,
            "bler": est.bler,
            "half_width_95": est.half_width_95,
        })
    return rows
