"""Acceptance suite: one test per release criterion.

Each test prints a single `[ACCEPTANCE n] PASS/FAIL` line with the measured
values (run with `pytest -s` to see them on success). All randomness is
seeded, so every criterion is reproducible bit-for-bit on this platform.
"""

import time

import numpy as np
import pytest

from lcdrl import channel, codes, gf
from lcdrl.channel import ChannelConfig, sweep_bler
from lcdrl.policy import PolicyNet, reinforce_gradient, reinforce_log_likelihood
from lcdrl.rnd import RndPair
from lcdrl.trainer import TrainConfig, run_ablation, seeded_variant, train

from conftest import (
    KNOWN_CODES,
    FIXTURES,
    brute_force_hull_dim,
    enumerate_codewords,
    pairwise_min_distance,
    random_code,
)
from test_policy import _fixed_trajectory


def _report(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"[ACCEPTANCE {num}] {'PASS' if ok else 'FAIL'} {name}: {detail}")


def test_acceptance_1_known_code_fixtures():
    """Six published generator matrices: LCD with exact distances."""
    started = time.time()
    failures = []
    for fname, q, n, k, d in KNOWN_CODES:
        code = codes.load_code(FIXTURES / fname)
        report = codes.analyze(code)
        if (code.q, code.n, code.k) != (q, n, k) or not report.is_lcd \
                or report.min_distance != d:
            failures.append((fname, report.is_lcd, report.min_distance))
    ok = not failures
    _report(1, "known-code fixtures", ok,
            f"6 codes verified in {time.time()-started:.1f}s" if ok else str(failures))
    assert ok, failures


def test_acceptance_2_hull_oracle_equivalence():
    """1000 random codes per field (n<=10, k<=5): hull dimension matches the
    ambient-space brute force exactly and is_lcd <=> hull 0."""
    started = time.time()
    rng = np.random.default_rng(20_240_901)
    checked = 0
    for q in (2, 3):
        for _ in range(1000):
            n = int(rng.integers(2, 11))
            k = int(rng.integers(1, min(n, 6)))
            code = random_code(rng, q, n, k)
            hull = codes.hull_dimension(code)
            assert hull == brute_force_hull_dim(code), (q, n, k, code.P.data)
            assert codes.is_lcd(code) == (hull == 0)
            checked += 1
    elapsed = time.time() - started
    ok = checked == 2000 and elapsed < 60
    _report(2, "hull oracle equivalence", ok, f"{checked} codes in {elapsed:.1f}s")
    assert ok


def test_acceptance_3_distance_oracle():
    """Weight enumeration equals the exhaustive pairwise minimum (n<=10)."""
    started = time.time()
    rng = np.random.default_rng(20_240_902)
    cases = []
    for q, kmax in ((2, 8), (3, 5)):
        for _ in range(40):
            n = int(rng.integers(2, 11))
            k = int(rng.integers(1, min(n, kmax + 1)))
            cases.append(random_code(rng, q, n, k))
    # edge shapes
    cases.append(codes.make_standard_code(gf.zeros(2, 1, 9)))
    cases.append(codes.make_standard_code(gf.GFMatrix(2, np.ones((9, 1), dtype=int))))
    cases.append(codes.make_standard_code(gf.GFMatrix(3, [[1, 2], [2, 1]])))
    for code in cases:
        assert codes.min_distance(code) == pairwise_min_distance(code), code
    elapsed = time.time() - started
    ok = elapsed < 60
    _report(3, "distance oracle", ok, f"{len(cases)} codes in {elapsed:.1f}s")
    assert ok


def test_acceptance_4_osd_matches_ml():
    """Order-4 OSD equals exhaustive ML (in Euclidean distance) on an
    [8,4] code across 1000 noisy frames at 0 dB."""
    started = time.time()
    parity = gf.GFMatrix(2, [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    code = codes.make_standard_code(parity)
    signals = 1.0 - 2.0 * enumerate_codewords(code).astype(np.float64)
    rng = np.random.default_rng(20_240_903)
    cfg = ChannelConfig(snr_db=0.0)
    worst = 0.0
    for _ in range(1000):
        msg = rng.integers(0, 2, size=code.k)
        sent = channel.encode(code, msg)
        y = channel.awgn_add(channel.bpsk_modulate(sent), cfg, 0.5, rng)
        decoded = channel.osd_decode(y, code, order=4)
        achieved = float(np.sum((channel.bpsk_modulate(decoded) - y) ** 2))
        ml = float(np.min(np.sum((signals - y) ** 2, axis=1)))
        worst = max(worst, abs(achieved - ml))
    ok = worst < 1e-9
    _report(4, "OSD order-4 equals ML", ok,
            f"max |distance gap| = {worst:.2e} over 1000 frames "
            f"({time.time()-started:.1f}s)")
    assert ok


@pytest.mark.parametrize("q", [2, 3])
def test_acceptance_5_gradient_check(q):
    """Analytic REINFORCE gradient vs central differences (eps=1e-5) on a
    15-parameter policy: max relative error < 1e-4, both head modes."""
    rng = np.random.default_rng(10 + q)
    policy = PolicyNet(q, 2, 1, rng=rng)
    assert policy.net.size <= 50
    trajectories = [_fixed_trajectory(policy, q, rng) for _ in range(2)]
    gamma, sigma2 = 0.9, 0.2
    analytic = reinforce_gradient(policy, trajectories, gamma, sigma2)
    eps = 1e-5
    fd = np.zeros_like(analytic)
    for i in range(policy.net.size):
        policy.net.theta[i] += eps
        up = reinforce_log_likelihood(policy, trajectories, gamma, sigma2)
        policy.net.theta[i] -= 2 * eps
        down = reinforce_log_likelihood(policy, trajectories, gamma, sigma2)
        policy.net.theta[i] += eps
        fd[i] = (up - down) / (2 * eps)
    denom = np.maximum(np.maximum(np.abs(analytic), np.abs(fd)), 1e-6)
    max_rel = float(np.max(np.abs(analytic - fd) / denom))
    ok = max_rel < 1e-4
    _report(5, f"gradient check (q={q})", ok, f"max relative error = {max_rel:.2e}")
    assert ok


def _random_search_baseline(n, k, q, samples, seed):
    """Random-P oracle: best distance among LCD hits and the LCD rate."""
    rng = np.random.default_rng(seed)
    lcd_hits = 0
    best_d = 0
    for _ in range(samples):
        code = random_code(rng, q, n, k)
        if codes.is_lcd(code):
            lcd_hits += 1
            best_d = max(best_d, codes.min_distance(code))
    return best_d, lcd_hits / samples


def test_acceptance_6_training_efficacy():
    """[10,4] GF(2), distance rewards, 2000 episodes: at least 4 of 5 seeds
    must match the 10^4-sample random-search distance and double its LCD
    rate over the last 100 episodes."""
    started = time.time()
    oracle_d, oracle_rate = _random_search_baseline(10, 4, 2, 10_000, seed=123)
    base = TrainConfig(n=10, k=4, q=2, episodes=2000, plateau_episodes=0,
                       sigma2=0.02, lr=0.01, baseline=True)
    wins = 0
    details = []
    for seed in (1, 2, 3, 4, 5):
        result = train(seeded_variant(base, seed))
        lcd_rate = float(np.mean(result.episode_lcd_rate[-100:]))
        good = (result.best_metric is not None
                and result.best_metric >= oracle_d
                and lcd_rate >= 2 * oracle_rate)
        wins += good
        details.append(f"seed {seed}: d={result.best_metric} lcd100={lcd_rate:.3f}")
    ok = wins >= 4
    _report(6, "training efficacy", ok,
            f"oracle d*={oracle_d} rate={oracle_rate:.3f}; {wins}/5 seeds passed "
            f"({'; '.join(details)}; {time.time()-started:.0f}s)")
    assert ok


def test_acceptance_7_rnd_properties():
    """Prediction error decreases on a retrained state; target stays frozen;
    fresh states score higher novelty than the trained pool."""
    rng = np.random.default_rng(20_240_904)
    pair = RndPair(input_dim=36, embed_dim=32, hidden_dim=64, lr=1e-3, seed=11)
    checksum = pair.target_checksum()

    fixed = random_code(rng, 2, 12, 3)
    series = [pair.update(fixed) for _ in range(201)]
    smooth = np.convolve(series, np.ones(10) / 10, mode="valid")
    decreasing = smooth[-1] < smooth[0] and series[200] < series[0]

    pool = [random_code(rng, 2, 12, 3) for _ in range(100)]
    seen = {c.P for c in pool}
    for i in range(1000):
        pair.update(pool[i % len(pool)])
    fresh = [c for c in (random_code(rng, 2, 12, 3) for _ in range(120))
             if c.P not in seen][:100]
    pool_ri = float(np.mean([pair.intrinsic_reward(s) for s in pool]))
    fresh_ri = float(np.mean([pair.intrinsic_reward(s) for s in fresh]))

    frozen = pair.target_checksum() == checksum

    rerun = RndPair(input_dim=36, embed_dim=32, hidden_dim=64, lr=1e-3, seed=11)
    deterministic = rerun.update(fixed) == series[0]

    ok = decreasing and frozen and fresh_ri > pool_ri and deterministic
    _report(7, "novelty-module properties", ok,
            f"error {series[0]:.4f}->{series[200]:.4f}, frozen={frozen}, "
            f"fresh r_i {fresh_ri:.3f} > pool r_i {pool_ri:.3f}, "
            f"deterministic={deterministic}")
    assert ok


def test_acceptance_8_rnd_ablation_direction():
    """[20,8] over 9 seeds: median last-100-episode extrinsic reward with the
    novelty bonus is at least the median without it."""
    started = time.time()
    cfg = TrainConfig(n=20, k=8, q=2, episodes=1500, plateau_episodes=0,
                      sigma2=0.005, lr=0.02, beta=0.01, baseline=True)
    result = run_ablation(cfg, list(range(1, 10)))
    ok = result.median_with >= result.median_without
    _report(8, "novelty ablation direction", ok,
            f"median with={result.median_with:.4f} >= "
            f"without={result.median_without:.4f} over {len(result.seeds)} seeds "
            f"({time.time()-started:.0f}s)")
    assert ok


def test_acceptance_9_bler_trend():
    """Fixed [24,12] LCD code: BLER non-increasing over 0..5 dB at 10^4
    frames per point, and exactly zero at 30 dB."""
    started = time.time()
    code = codes.load_code(FIXTURES / "binary_24_12_lcd.txt")
    assert codes.is_lcd(code)
    cfg = ChannelConfig(frames=10_000, osd_order=2, seed=7, max_errors=10_000)
    rows = sweep_bler(code, [0, 1, 2, 3, 4, 5, 30], cfg)
    blers = [r["bler"] for r in rows]
    monotone = all(a >= b for a, b in zip(blers[:-1], blers[1:]))
    zero_at_30 = blers[-1] == 0.0
    ok = monotone and zero_at_30
    _report(9, "BLER trend", ok,
            "0-5dB: " + " ".join(f"{b:.4f}" for b in blers[:-1])
            + f"; 30dB={blers[-1]:.4f} ({time.time()-started:.0f}s)")
    assert ok
