"""Random-network-distillation novelty rewards.

A frozen randomly initialized target network and a trained predictor share
the same interface; the predictor's error on a state measures how novel
that state is. Raw errors are normalized by a running standard deviation
after a short warm-up.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .codes import LinearCode
from .errors import NumericError
from .mlp import MLP, Adam
from .policy import encode_state


class RunningStat:
    """Welford running mean/variance of a scalar stream."""

    def __init__(self) -> None:
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0

    def push(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (x - self.mean)

    @property
    def std(self) -> float:
        if self.count < 2:
            return 0.0
        return float(np.sqrt(self._m2 / (self.count - 1)))


class RndPair:
    """Frozen target network plus trained predictor of identical interface."""

    def __init__(self, input_dim: int, embed_dim: int = 64, hidden_dim: int = 128,
                 lr: float = 1e-4, warmup: int = 10, seed: int = 0):
        rng = np.random.default_rng(seed)
        self.embed_dim = embed_dim
        self.warmup = warmup
        self.target = MLP([input_dim, hidden_dim, embed_dim])
        self.target.init_params(rng)
        self.predictor = MLP([input_dim, hidden_dim, embed_dim])
        self.predictor.init_params(rng)
        self.optimizer = Adam(self.predictor.size, lr=lr)
        self.normalizer = RunningStat()
        self.updates = 0
        self.history: list[tuple[int, float, float]] = []

    def _features(self, state: LinearCode) -> np.ndarray:
        return encode_state(state)

    def raw_error(self, state: LinearCode) -> float:
        """Mean squared target/predictor gap, ||t(s) - p(s)||^2 / embed_dim."""
        x = self._features(state)
        gap = self.target.forward(x) - self.predictor.forward(x)
        return float(np.mean(gap * gap))

    def _normalize(self, raw: float) -> float:
        std = self.normalizer.std
        if self.updates < self.warmup or std <= 0.0:
            return raw
        return raw / std

    def intrinsic_reward(self, state: LinearCode) -> float:
        """Novelty score: raw error during warm-up, std-normalized afterwards."""
        return self._normalize(self.raw_error(state))

    def update(self, state: LinearCode) -> float:
        """One predictor gradient step toward the target on this state.

        Returns the loss, which by definition equals the pre-step raw
        error; the target and normalizer history stay frozen on failure.
        """
        x = self._features(state)[None, :]
        t = self.target.forward_batch(x)
        p, cache = self.predictor.forward_batch(x, keep_cache=True)
        gap = p - t
        raw = float(np.mean(gap * gap))
        grad = self.predictor.grad_params(cache, 2.0 * gap / self.embed_dim)
        if not (np.isfinite(raw) and np.all(np.isfinite(grad))):
            raise NumericError("non-finite predictor loss; update aborted")
        self.normalizer.push(raw)
        self.predictor.theta = self.optimizer.step(self.predictor.theta, grad)
        self.updates += 1
        self.history.append((self.updates, raw, self._normalize(raw)))
        return raw

    def target_checksum(self) -> str:
        """Digest of the frozen target parameters; constant over a run."""
        return hashlib.sha256(self.target.theta.tobytes()).hexdigest()

    def write_trace(self, path) -> None:
        """CSV of per-update raw and normalized novelty (step,raw_error,normalized_ri)."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("step,raw_error,normalized_ri\n")
            for step, raw, norm in self.history:
                fh.write(f"{step},{raw!r},{norm!r}\n")
