"""Constructor-evaluator training loop and experiment harnesses.

Each episode starts from [I_k | 0] and performs ``maxstep`` construction
steps; batches of episodes feed REINFORCE updates. Harnesses cover the
novelty-module ablation and the action-variance sweep, both emitting CSV.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import codes, gf
from .channel import ChannelConfig
from .codes import CodeReport, LinearCode, make_standard_code
from .errors import FieldError
from .evaluator import Evaluator, RewardBreakdown, REWARD_MODES
from .mlp import Adam
from .policy import (
    PolicyNet,
    Trajectory,
    TrajectoryStep,
    map_action_binary,
    map_action_ternary,
    reinforce_update,
    sample_action,
)
from .rnd import RndPair

TRAIN_LOG_HEADER = "episode,step,total_reward,extrinsic,intrinsic,is_lcd,metric_value,best_metric"


@dataclass
class TrainConfig:
    """Hyperparameters and seeds for one training run.

    ``sigma2 = None`` resolves to the per-field default (0.1 for GF(2),
    0.3 for GF(3)). All randomness flows from the four seeds.
    """

    n: int
    k: int
    q: int = 2
    sigma2: float | None = None
    maxstep: int = 8
    episodes: int = 2000
    gamma: float = 0.99
    lam: float = 1.0
    beta: float = 0.01
    reward_mode: str = "distance"
    snr_db: float = 3.0
    frames: int = 10_000
    osd_order: int = 2
    max_errors: int = 100
    lr: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    batch_episodes: int = 16
    seed_policy: int = 1
    seed_rnd: int = 2
    seed_channel: int = 3
    seed_sampling: int = 4
    rnd_enabled: bool = True
    baseline: bool = False
    distance_raw: bool = False
    ri_clamp: float = 50.0
    ternary_scale: float = 3.0
    plateau_episodes: int = 500
    distance_cap: int = codes.DEFAULT_ENUMERATION_CAP

    @property
    def resolved_sigma2(self) -> float:
        if self.sigma2 is not None:
            return self.sigma2
        return 0.1 if self.q == 2 else 0.3

    def validate(self) -> None:
        if self.q not in (2, 3):
            raise FieldError(f"q must be 2 or 3, got {self.q}")
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.resolved_sigma2 <= 0:
            raise ValueError(f"sigma2 must be positive, got {self.resolved_sigma2}")
        if self.maxstep < 1:
            raise ValueError(f"maxstep must be >= 1, got {self.maxstep}")
        if self.episodes < 0:
            raise ValueError(f"episodes must be >= 0, got {self.episodes}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0,1], got {self.gamma}")
        if self.reward_mode not in REWARD_MODES:
            raise ValueError(f"unknown reward_mode {self.reward_mode!r}")
        if self.reward_mode == "bler" and self.q != 2:
            raise FieldError("BLER rewards require q = 2")
        if self.batch_episodes < 1:
            raise ValueError(f"batch_episodes must be >= 1, got {self.batch_episodes}")


_CONFIG_BOOL_KEYS = {"rnd_enabled", "baseline", "distance_raw"}
_CONFIG_INT_KEYS = {
    "n", "k", "q", "maxstep", "episodes", "frames", "osd_order", "max_errors",
    "batch_episodes", "seed_policy", "seed_rnd", "seed_channel", "seed_sampling",
    "plateau_episodes", "distance_cap",
}
_CONFIG_FLOAT_KEYS = {
    "gamma", "lam", "beta", "snr_db", "lr", "adam_beta1", "adam_beta2",
    "adam_eps", "ri_clamp", "ternary_scale",
}
_CONFIG_STR_KEYS = {"reward_mode"}


def config_to_text(cfg: TrainConfig) -> str:
    """Flat ``key = value`` snapshot covering every config field."""
    lines = []
    for f in fields(TrainConfig):
        value = getattr(cfg, f.name)
        if f.name == "sigma2":
            text = "auto" if value is None else repr(value)
        elif isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"{f.name} = {text}")
    return "\n".join(lines) + "\n"


def config_from_text(text: str) -> TrainConfig:
    """Parse a flat key-value config; unknown keys and bad values are errors."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, val = (part.strip() for part in line.partition("="))
        if key == "sigma2":
            values[key] = None if val.lower() in ("auto", "none") else float(val)
        elif key in _CONFIG_BOOL_KEYS:
            if val.lower() not in ("true", "false", "0", "1"):
                raise ValueError(f"line {lineno}: {key} must be true/false, got {val!r}")
            values[key] = val.lower() in ("true", "1")
        elif key in _CONFIG_INT_KEYS:
            values[key] = int(val)
        elif key in _CONFIG_FLOAT_KEYS:
            values[key] = float(val)
        elif key in _CONFIG_STR_KEYS:
            values[key] = val
        else:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
    if "n" not in values or "k" not in values:
        raise ValueError("config must define at least n and k")
    cfg = TrainConfig(**values)
    cfg.validate()
    return cfg


def load_config(path) -> TrainConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_text(fh.read())


def save_config(cfg: TrainConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(config_to_text(cfg))


@dataclass
class TrainResult:
    """Curves, logs, and the best LCD code found (None if none was visited)."""

    episodes_run: int
    best_code: LinearCode | None = None
    best_report: CodeReport | None = None
    best_extrinsic: float | None = None
    best_metric: float | None = None
    best_episode: int | None = None
    episode_mean_total: list[float] = field(default_factory=list)
    episode_mean_extrinsic: list[float] = field(default_factory=list)
    episode_lcd_rate: list[float] = field(default_factory=list)
    log_rows: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def write_log(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(TRAIN_LOG_HEADER + "\n")
            for row in self.log_rows:
                fh.write(row + "\n")


def _map_action(q: int, action: np.ndarray):
    return map_action_binary(action) if q == 2 else map_action_ternary(action)


def run_episode(policy: PolicyNet, evaluator: Evaluator, cfg: TrainConfig,
                rng: np.random.Generator):
    """One rollout of ``maxstep`` construction steps from [I_k | 0].

    Returns the trajectory plus the per-step (constructed state, reward
    breakdown) pairs in step order.
    """
    sigma2 = cfg.resolved_sigma2
    state = make_standard_code(gf.zeros(cfg.q, cfg.k, cfg.n - cfg.k))
    steps: list[TrajectoryStep] = []
    evaluations: list[tuple[LinearCode, RewardBreakdown]] = []
    for _ in range(cfg.maxstep):
        mu = policy.forward(state)
        action = sample_action(mu, sigma2, rng)
        constructed = make_standard_code(_map_action(cfg.q, action))
        breakdown = evaluator.evaluate(constructed)
        steps.append(TrajectoryStep(state=state, action=action, reward=breakdown.total))
        evaluations.append((constructed, breakdown))
        state = constructed
    return Trajectory(steps), evaluations


def _metric_str(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def build_components(cfg: TrainConfig):
    """Policy, optimizer, evaluator, and sampling rng for a config."""
    policy = PolicyNet(cfg.q, cfg.n, cfg.k,
                       rng=np.random.default_rng(cfg.seed_policy),
                       ternary_scale=cfg.ternary_scale)
    optimizer = Adam(policy.net.size, lr=cfg.lr, beta1=cfg.adam_beta1,
                     beta2=cfg.adam_beta2, eps=cfg.adam_eps)
    rnd = RndPair(cfg.k * cfg.n, seed=cfg.seed_rnd) if cfg.rnd_enabled else None
    channel_cfg = ChannelConfig(snr_db=cfg.snr_db, frames=cfg.frames,
                                osd_order=cfg.osd_order, seed=cfg.seed_channel,
                                max_errors=cfg.max_errors)
    evaluator = Evaluator(mode=cfg.reward_mode, lam=cfg.lam, beta=cfg.beta,
                          rnd=rnd, channel_cfg=channel_cfg,
                          distance_raw=cfg.distance_raw, ri_clamp=cfg.ri_clamp,
                          distance_cap=cfg.distance_cap)
    sample_rng = np.random.default_rng(cfg.seed_sampling)
    return policy, optimizer, evaluator, sample_rng


def train(cfg: TrainConfig, rnd_trace_path=None) -> TrainResult:
    """Full training run: batched rollouts alternating with policy updates.

    Tracks the best LCD code seen by extrinsic reward (earliest wins on
    ties) and stops early when that best has not improved for
    ``plateau_episodes`` episodes (0 disables the plateau stop). When
    ``rnd_trace_path`` is given, the per-update novelty trace CSV is
    written there at the end of the run.
    """
    cfg.validate()
    started = time.perf_counter()
    policy, optimizer, evaluator, sample_rng = build_components(cfg)

    result = TrainResult(episodes_run=0)
    best_extrinsic: float | None = None
    best_metric = None
    last_improvement = 0
    batch: list[Trajectory] = []

    for episode in range(1, cfg.episodes + 1):
        trajectory, evaluations = run_episode(policy, evaluator, cfg, sample_rng)
        batch.append(trajectory)

        totals = []
        extrinsics = []
        lcd_hits = 0
        for step_no, (constructed, bd) in enumerate(evaluations, start=1):
            assert np.array_equal(constructed.G.data[:, :cfg.k],
                                  np.eye(cfg.k, dtype=np.uint8)), "state left standard form"
            totals.append(bd.total)
            extrinsics.append(bd.extrinsic)
            lcd_hits += int(bd.lcd)
            if bd.lcd and (best_extrinsic is None or bd.extrinsic > best_extrinsic):
                best_extrinsic = bd.extrinsic
                best_metric = bd.metric_value
                result.best_code = constructed
                result.best_episode = episode
                last_improvement = episode
            result.log_rows.append(
                f"{episode},{step_no},{bd.total!r},{bd.extrinsic!r},{bd.intrinsic!r},"
                f"{int(bd.lcd)},{_metric_str(bd.metric_value)},{_metric_str(best_metric)}"
            )

        result.episodes_run = episode
        result.episode_mean_total.append(float(np.mean(totals)))
        result.episode_mean_extrinsic.append(float(np.mean(extrinsics)))
        result.episode_lcd_rate.append(lcd_hits / cfg.maxstep)

        if len(batch) == cfg.batch_episodes:
            reinforce_update(policy, batch, cfg.gamma, optimizer,
                             cfg.resolved_sigma2, baseline=cfg.baseline)
            batch = []

        if cfg.plateau_episodes and episode - last_improvement >= cfg.plateau_episodes:
            break

    if batch:
        reinforce_update(policy, batch, cfg.gamma, optimizer,
                         cfg.resolved_sigma2, baseline=cfg.baseline)

    if result.best_code is not None:
        result.best_extrinsic = best_extrinsic
        result.best_metric = best_metric
        result.best_report = codes.analyze(result.best_code, cap=cfg.distance_cap)
    if rnd_trace_path is not None and evaluator.rnd is not None:
        evaluator.rnd.write_trace(rnd_trace_path)
    result.wall_time = time.perf_counter() - started
    return result


def last_window_mean(values: list[float], window: int = 100) -> float:
    if not values:
        return float("nan")
    return float(np.mean(values[-window:]))


@dataclass
class AblationResult:
    """Paired runs (novelty bonus on/off) per seed, same seeds otherwise."""

    seeds: list[int]
    last100_with: list[float]
    last100_without: list[float]
    curves_with: list[list[float]]
    curves_without: list[list[float]]

    @property
    def mean_with(self) -> float:
        return float(np.mean(self.last100_with))

    @property
    def mean_without(self) -> float:
        return float(np.mean(self.last100_without))

    @property
    def median_with(self) -> float:
        return float(np.median(self.last100_with))

    @property
    def median_without(self) -> float:
        return float(np.median(self.last100_without))

    @property
    def ratio(self) -> float:
        if self.mean_without == 0.0:
            return float("nan")
        return self.mean_with / self.mean_without


def seeded_variant(cfg: TrainConfig, seed: int) -> TrainConfig:
    """Derive all run seeds from one experiment seed."""
    return replace(cfg, seed_policy=seed, seed_sampling=seed + 10_000,
                   seed_rnd=seed + 20_000)


def run_ablation(cfg: TrainConfig, seeds) -> AblationResult:
    """Train twice per seed (novelty bonus on/off) and compare the mean
    extrinsic reward over the last 100 episodes."""
    seeds = list(seeds)
    if len(seeds) < 2:
        raise ValueError("ablation needs at least 2 seeds")
    result = AblationResult(seeds=seeds, last100_with=[], last100_without=[],
                            curves_with=[], curves_without=[])
    for seed in seeds:
        base = seeded_variant(cfg, seed)
        run_on = train(replace(base, rnd_enabled=True))
        run_off = train(replace(base, rnd_enabled=False))
        result.last100_with.append(last_window_mean(run_on.episode_mean_extrinsic))
        result.last100_without.append(last_window_mean(run_off.episode_mean_extrinsic))
        result.curves_with.append(run_on.episode_mean_extrinsic)
        result.curves_without.append(run_off.episode_mean_extrinsic)
    return result


@dataclass
class VarianceSweepResult:
    sigma2_values: list[float]
    curves_total: list[list[float]]
    curves_extrinsic: list[list[float]]
    lcd_rates: list[list[float]]
    best_metrics: list[float | None]


def run_variance_sweep(cfg: TrainConfig, sigma2_values) -> VarianceSweepResult:
    """Train once per action variance (identical seeds) and keep the curves."""
    sigma2_values = [float(s) for s in sigma2_values]
    result = VarianceSweepResult(sigma2_values=sigma2_values, curves_total=[],
                                 curves_extrinsic=[], lcd_rates=[], best_metrics=[])
    for sigma2 in sigma2_values:
        run = train(replace(cfg, sigma2=sigma2))
        result.curves_total.append(run.episode_mean_total)
        result.curves_extrinsic.append(run.episode_mean_extrinsic)
        result.lcd_rates.append(run.episode_lcd_rate)
        result.best_metrics.append(run.best_metric)
    return result
