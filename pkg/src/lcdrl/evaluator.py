"""Scalar reward composition for constructed codes.

LCD codes earn 1 - lambda*BLER (or a normalized minimum distance); non-LCD
codes earn -1. A clamped novelty bonus beta*r_i is added on top, and the
novelty predictor takes one update per evaluated state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import codes
from .channel import ChannelConfig, estimate_bler
from .codes import LinearCode
from .errors import FieldError
from .rnd import RndPair

REWARD_MODES = ("distance", "bler")


@dataclass
class RewardBreakdown:
    """One evaluated state: total = extrinsic + beta * intrinsic, exactly."""

    total: float
    extrinsic: float
    intrinsic: float
    lcd: bool
    metric_kind: str
    metric_value: float | None
    lam: float
    beta: float


class Evaluator:
    """Turns constructed codes into rewards; owns the novelty pair and BLER cache."""

    def __init__(self, mode: str = "distance", lam: float = 1.0, beta: float = 0.01,
                 rnd: RndPair | None = None, channel_cfg: ChannelConfig | None = None,
                 distance_raw: bool = False, ri_clamp: float = 50.0,
                 distance_cap: int = codes.DEFAULT_ENUMERATION_CAP,
                 cache_bler: bool = True):
        if mode not in REWARD_MODES:
            raise ValueError(f"unknown reward mode {mode!r}; expected one of {REWARD_MODES}")
        self.mode = mode
        self.lam = lam
        self.beta = beta
        self.rnd = rnd
        self.channel_cfg = channel_cfg if channel_cfg is not None else ChannelConfig()
        self.distance_raw = distance_raw
        self.ri_clamp = ri_clamp
        self.distance_cap = distance_cap
        self.cache_bler = cache_bler
        self._bler_cache: dict[tuple, float] = {}

    def _bler(self, code: LinearCode) -> float:
        key = (code.q, code.n, code.k, code.P.data.tobytes())
        if self.cache_bler and key in self._bler_cache:
            return self._bler_cache[key]
        value = estimate_bler(code, self.channel_cfg).bler
        if self.cache_bler:
            self._bler_cache[key] = value
        return value

    def evaluate(self, state: LinearCode) -> RewardBreakdown:
        """Score one constructed code; the only side effect is the novelty update."""
        if self.mode == "bler" and state.q != 2:
            raise FieldError("BLER rewards require a binary code")

        lcd = codes.is_lcd(state)
        metric: float | None = None
        if not lcd:
            extrinsic = -1.0
        elif self.mode == "bler":
            metric = self._bler(state)
            extrinsic = 1.0 - self.lam * metric
        else:
            metric = codes.min_distance(state, cap=self.distance_cap)
            if self.distance_raw:
                extrinsic = float(metric)
            else:
                extrinsic = metric / (state.n - state.k + 1)

        if self.rnd is not None:
            intrinsic = float(np.clip(self.rnd.intrinsic_reward(state), 0.0, self.ri_clamp))
            self.rnd.update(state)
        else:
            intrinsic = 0.0

        return RewardBreakdown(
            total=extrinsic + self.beta * intrinsic,
            extrinsic=extrinsic,
            intrinsic=intrinsic,
            lcd=lcd,
            metric_kind=self.mode,
            metric_value=metric,
            lam=self.lam,
            beta=self.beta,
        )
