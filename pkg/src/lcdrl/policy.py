"""Gaussian policy over parity-part entries.

A two-hidden-layer MLP maps the current generator matrix to the mean of an
elementwise Gaussian over the k x (n-k) action matrix. Actions are mapped
to field elements by thresholding (GF(2)) or ceiling mod 3 (GF(3)); the
REINFORCE update backpropagates returns-weighted Gaussian score terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import LinearCode
from .errors import FieldError, NumericError, ShapeError
from .gf import GFMatrix
from .mlp import MLP, Adam

CHECKPOINT_VERSION = 1


def encode_state(code: LinearCode) -> np.ndarray:
    """Network input: the k x n generator matrix flattened, scaled to [0,1]."""
    return code.G.data.astype(np.float64).ravel() / (code.q - 1)


class PolicyNet:
    """MLP producing the action mean for an [n,k]_q construction problem.

    Layout: input k*n, two hidden layers of width 2k(n-k), output k(n-k).
    The output head is sigmoid for GF(2) and scaled softplus for GF(3);
    parameters start at zero unless an rng is supplied.
    """

    def __init__(self, q: int, n: int, k: int,
                 rng: np.random.Generator | None = None,
                 ternary_scale: float = 3.0):
        if q not in (2, 3):
            raise FieldError(f"unsupported field order {q}")
        if not 1 <= k < n:
            raise ShapeError(f"need 1 <= k < n, got k={k}, n={n}")
        self.q = q
        self.n = n
        self.k = k
        self.ternary_scale = float(ternary_scale)
        hidden = 2 * k * (n - k)
        head = "sigmoid" if q == 2 else "softplus"
        self.net = MLP([k * n, hidden, hidden, k * (n - k)],
                       head=head, head_scale=self.ternary_scale)
        if rng is not None:
            self.net.init_params(rng)

    @property
    def theta(self) -> np.ndarray:
        return self.net.theta

    def _check_state(self, state: LinearCode) -> None:
        if state.q != self.q:
            raise FieldError(f"state is over GF({state.q}), policy over GF({self.q})")
        if (state.n, state.k) != (self.n, self.k):
            raise ShapeError(
                f"state is [{state.n},{state.k}], policy expects [{self.n},{self.k}]")

    def forward(self, state: LinearCode) -> np.ndarray:
        """Action mean as a k x (n-k) matrix."""
        self._check_state(state)
        out = self.net.forward(encode_state(state))
        return out.reshape(self.k, self.n - self.k)

    def forward_states(self, states) -> tuple[np.ndarray, tuple]:
        """Batched means (flattened, one row per state) plus backprop cache."""
        X = np.stack([encode_state(s) for s in states])
        return self.net.forward_batch(X, keep_cache=True)


def sample_action(mu: np.ndarray, sigma2: float, rng: np.random.Generator) -> np.ndarray:
    """Elementwise Gaussian draw a ~ N(mu, sigma2)."""
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    return mu + np.sqrt(sigma2) * rng.standard_normal(mu.shape)


def map_action_binary(a: np.ndarray) -> GFMatrix:
    """Threshold map to GF(2): entries >= 0.5 become 1 (boundary inclusive)."""
    return GFMatrix(2, (np.asarray(a, dtype=np.float64) >= 0.5).astype(np.uint8))


def map_action_ternary(a: np.ndarray) -> GFMatrix:
    """Ceiling-then-mod map to GF(3); the mod is mathematical (never negative)."""
    lifted = np.ceil(np.asarray(a, dtype=np.float64)).astype(np.int64)
    return GFMatrix(3, np.mod(lifted, 3))


def gaussian_score_wrt_mean(action: np.ndarray, mu: np.ndarray, sigma2: float) -> np.ndarray:
    """d/d(mu) of log N(action | mu, sigma2 I), elementwise (a - mu)/sigma2."""
    return (np.asarray(action, dtype=np.float64) - mu) / sigma2


@dataclass
class TrajectoryStep:
    state: LinearCode
    action: np.ndarray
    reward: float


@dataclass
class Trajectory:
    steps: list[TrajectoryStep]

    def __len__(self) -> int:
        return len(self.steps)

    def rewards(self) -> np.ndarray:
        return np.array([s.reward for s in self.steps], dtype=np.float64)


def returns_to_go(rewards: np.ndarray, gamma: float) -> np.ndarray:
    """G_t = sum_{t'>=t} gamma^(t'-t) r_t' for each step t."""
    out = np.zeros(len(rewards), dtype=np.float64)
    acc = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        acc = rewards[t] + gamma * acc
        out[t] = acc
    return out


def reinforce_log_likelihood(policy: PolicyNet, trajectories, gamma: float,
                             sigma2: float) -> float:
    """Returns-weighted log-density objective for the stored actions.

    Only the mu-dependent part of log N is included (the sigma2 constant
    does not depend on theta). Used by the finite-difference oracle.
    """
    total = 0.0
    for traj in trajectories:
        gains = returns_to_go(traj.rewards(), gamma)
        for step, g in zip(traj.steps, gains):
            mu = policy.forward(step.state).ravel()
            a = step.action.ravel()
            total += g * float(-0.5 * np.sum((a - mu) ** 2) / sigma2)
    return total / len(trajectories)


def reinforce_gradient(policy: PolicyNet, trajectories, gamma: float,
                       sigma2: float, baseline: bool = False) -> np.ndarray:
    """Batch-mean REINFORCE gradient of the returns-weighted log-likelihood."""
    states = []
    actions = []
    gains = []
    for traj in trajectories:
        if not traj.steps:
            raise ValueError("trajectories must be non-empty")
        g = returns_to_go(traj.rewards(), gamma)
        for step, g_t in zip(traj.steps, g):
            states.append(step.state)
            actions.append(step.action.ravel())
            gains.append(g_t)
    gains = np.array(gains, dtype=np.float64)
    if baseline:
        gains = gains - gains.mean()

    mu_flat, cache = policy.forward_states(states)
    A = np.stack(actions)
    seeds = gains[:, None] * gaussian_score_wrt_mean(A, mu_flat, sigma2)
    return policy.net.grad_params(cache, seeds) / len(trajectories)


def reinforce_update(policy: PolicyNet, trajectories, gamma: float,
                     optimizer: Adam, sigma2: float,
                     baseline: bool = False) -> float:
    """One Adam ascent step on the REINFORCE objective; returns the gradient norm.

    Raises NumericError (leaving parameters untouched) if the gradient is
    not finite.
    """
    if not trajectories:
        raise ValueError("need at least one trajectory")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0,1], got {gamma}")
    grad = reinforce_gradient(policy, trajectories, gamma, sigma2, baseline=baseline)
    if not np.all(np.isfinite(grad)):
        raise NumericError("non-finite policy gradient; update aborted")
    policy.net.theta = optimizer.step(policy.net.theta, -grad)
    return float(np.linalg.norm(grad))


def save_checkpoint(policy: PolicyNet, path) -> None:
    """Versioned dump of layout plus flat parameters; round-trips bit-exactly."""
    np.savez(path, version=CHECKPOINT_VERSION, q=policy.q, n=policy.n,
             k=policy.k, ternary_scale=policy.ternary_scale,
             theta=policy.net.theta)


def load_checkpoint(path) -> PolicyNet:
    with np.load(path) as data:
        version = int(data["version"])
        if version != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        policy = PolicyNet(int(data["q"]), int(data["n"]), int(data["k"]),
                           ternary_scale=float(data["ternary_scale"]))
        theta = data["theta"]
        if theta.shape != policy.net.theta.shape:
            raise ValueError("checkpoint parameter count does not match layout")
        policy.net.theta = theta.copy()
    return policy
