"""Figure rendering for the report-producing CLI commands.

Each report command writes its delimited output and, alongside it, a PNG
rendered here. Uses the Agg backend so no display is required.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_bler_sweep(rows: list[dict], path) -> None:
    """Semilog BLER vs Eb/N0 with 95% half-width error bars."""
    snrs = [r["snr_db"] for r in rows]
    blers = [r["bler"] for r in rows]
    halfs = [r["half_width_95"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(snrs, blers, yerr=halfs, marker="o", capsize=3)
    positive = [b for b in blers if b > 0]
    if positive:
        ax.set_yscale("log")
        ax.set_ylim(bottom=min(positive) / 10)
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BLER")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_training_curves(episode_mean_total, episode_mean_extrinsic,
                         episode_lcd_rate, path) -> None:
    """Reward and LCD-rate curves for one training run."""
    episodes = np.arange(1, len(episode_mean_total) + 1)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax1.plot(episodes, episode_mean_total, label="total reward", alpha=0.8)
    ax1.plot(episodes, episode_mean_extrinsic, label="extrinsic", alpha=0.8)
    ax1.set_ylabel("mean step reward")
    ax1.legend()
    ax1.grid(alpha=0.3)
    ax2.plot(episodes, episode_lcd_rate, color="tab:green")
    ax2.set_ylabel("LCD rate")
    ax2.set_xlabel("episode")
    ax2.set_ylim(-0.05, 1.05)
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _mean_curve(curves: list[list[float]]) -> np.ndarray:
    shortest = min(len(c) for c in curves)
    return np.mean([c[:shortest] for c in curves], axis=0)


def plot_ablation(curves_with, curves_without, path) -> None:
    """Seed-averaged extrinsic reward, novelty bonus on vs off."""
    fig, ax = plt.subplots(figsize=(6, 4))
    mean_on = _mean_curve(curves_with)
    mean_off = _mean_curve(curves_without)
    ax.plot(np.arange(1, len(mean_on) + 1), mean_on, label="with novelty bonus")
    ax.plot(np.arange(1, len(mean_off) + 1), mean_off, label="without novelty bonus")
    ax.set_xlabel("episode")
    ax.set_ylabel("mean extrinsic reward")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_variance_sweep(sigma2_values, curves_extrinsic, path) -> None:
    """One extrinsic-reward curve per action variance."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for sigma2, curve in zip(sigma2_values, curves_extrinsic):
        ax.plot(np.arange(1, len(curve) + 1), curve, label=f"sigma2 = {sigma2:g}",
                alpha=0.8)
    ax.set_xlabel("episode")
    ax.set_ylabel("mean extrinsic reward")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
