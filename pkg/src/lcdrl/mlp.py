"""Minimal dense feed-forward networks with manual backpropagation.

Serves both the action-mean policy network and the novelty target/predictor
pair. Parameters live in one flat float64 vector (weights then bias, layer
by layer); hidden activations are rectified-linear.
"""

from __future__ import annotations

import numpy as np

HEADS = ("linear", "sigmoid", "softplus")


def sigmoid(z: np.ndarray) -> np.ndarray:
    # tanh form is numerically stable for large |z|
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def softplus(z: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, z)


class MLP:
    """Fully connected network with ReLU hidden layers and a selectable head.

    Heads: ``linear`` (y = z), ``sigmoid`` (y in (0,1)), and ``softplus``
    (y = head_scale * softplus(z), nonnegative).
    """

    def __init__(self, layer_sizes, head: str = "linear", head_scale: float = 1.0):
        if len(layer_sizes) < 2:
            raise ValueError("need at least an input and an output layer")
        if head not in HEADS:
            raise ValueError(f"unknown head {head!r}; expected one of {HEADS}")
        self.layer_sizes = tuple(int(s) for s in layer_sizes)
        self.head = head
        self.head_scale = float(head_scale)
        self._spans = []
        offset = 0
        for fan_in, fan_out in zip(self.layer_sizes, self.layer_sizes[1:]):
            self._spans.append((offset, offset + fan_in * fan_out, fan_in, fan_out))
            offset += fan_in * fan_out + fan_out
        self.size = offset
        self.theta = np.zeros(self.size, dtype=np.float64)

    def init_params(self, rng: np.random.Generator) -> None:
        """Uniform +-sqrt(6/(fan_in+fan_out)) weights, zero biases."""
        for w_lo, w_hi, fan_in, fan_out in self._spans:
            lim = np.sqrt(6.0 / (fan_in + fan_out))
            self.theta[w_lo:w_hi] = rng.uniform(-lim, lim, size=fan_in * fan_out)
            self.theta[w_hi:w_hi + fan_out] = 0.0

    def layers(self, theta: np.ndarray | None = None):
        """(W, b) views into the flat parameter vector, one pair per layer."""
        theta = self.theta if theta is None else theta
        out = []
        for w_lo, w_hi, fan_in, fan_out in self._spans:
            out.append((theta[w_lo:w_hi].reshape(fan_in, fan_out),
                        theta[w_hi:w_hi + fan_out]))
        return out

    def _apply_head(self, z: np.ndarray) -> np.ndarray:
        if self.head == "linear":
            return z
        if self.head == "sigmoid":
            return sigmoid(z)
        return self.head_scale * softplus(z)

    def forward_batch(self, X: np.ndarray, keep_cache: bool = False):
        """Forward pass on a (batch, input) array.

        With ``keep_cache`` returns (Y, cache) where the cache holds the
        per-layer inputs and pre-activations needed by grad_params.
        """
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.layer_sizes[0]:
            raise ValueError(
                f"input must be (batch, {self.layer_sizes[0]}), got {X.shape}")
        layers = self.layers()
        inputs = []
        preacts = []
        A = X
        for i, (W, b) in enumerate(layers):
            inputs.append(A)
            Z = A @ W + b
            preacts.append(Z)
            A = self._apply_head(Z) if i == len(layers) - 1 else np.maximum(Z, 0.0)
        if keep_cache:
            return A, (inputs, preacts)
        return A

    def forward(self, x: np.ndarray) -> np.ndarray:
        return self.forward_batch(np.asarray(x, dtype=np.float64)[None, :])[0]

    def grad_params(self, cache, dY: np.ndarray) -> np.ndarray:
        """Gradient w.r.t. theta of sum_batch <dY_row, y_row>.

        ``cache`` must come from the forward_batch call that produced the
        outputs dY refers to.
        """
        inputs, preacts = cache
        layers = self.layers()
        z_last = preacts[-1]
        if self.head == "linear":
            delta = np.asarray(dY, dtype=np.float64)
        elif self.head == "sigmoid":
            s = sigmoid(z_last)
            delta = dY * s * (1.0 - s)
        else:
            delta = dY * self.head_scale * sigmoid(z_last)

        grad = np.zeros_like(self.theta)
        for i in range(len(layers) - 1, -1, -1):
            w_lo, w_hi, fan_in, fan_out = self._spans[i]
            grad[w_lo:w_hi] = (inputs[i].T @ delta).ravel()
            grad[w_hi:w_hi + fan_out] = delta.sum(axis=0)
            if i > 0:
                W, _ = layers[i]
                delta = (delta @ W.T) * (preacts[i - 1] > 0.0)
        return grad


class Adam:
    """Standard Adam with bias correction; ``step`` performs gradient descent."""

    def __init__(self, size: int, lr: float = 1e-3, beta1: float = 0.9,
                 beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = np.zeros(size, dtype=np.float64)
        self.v = np.zeros(size, dtype=np.float64)

    def step(self, theta: np.ndarray, grad: np.ndarray) -> np.ndarray:
        self.t += 1
        self.m = self.beta1 * self.m + (1.0 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1.0 - self.beta2) * grad * grad
        m_hat = self.m / (1.0 - self.beta1**self.t)
        v_hat = self.v / (1.0 - self.beta2**self.t)
        return theta - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)
