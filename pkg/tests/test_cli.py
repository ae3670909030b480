"""CLI subcommands, exit codes, and emitted files."""

import pytest

from lcdrl.cli import main
from lcdrl.trainer import TrainConfig, config_to_text

from conftest import FIXTURES, KNOWN_CODES


def write_config(tmp_path, **kw):
    base = dict(n=8, k=3, q=2, episodes=12, maxstep=3, batch_episodes=4,
                plateau_episodes=0, sigma2=0.05)
    base.update(kw)
    path = tmp_path / "train.cfg"
    path.write_text(config_to_text(TrainConfig(**base)))
    return path


def test_verify_known_code_with_expected_distance(capsys):
    assert main(["verify", str(FIXTURES / "binary_37_9_13.txt"), "--expect-d", "13"]) == 0
    out = capsys.readouterr().out
    assert "lcd: yes" in out
    assert "minimum distance: 13" in out
    assert "known optimal-distance range: 12-14" in out


@pytest.mark.parametrize("fname,q,n,k,d", KNOWN_CODES)
def test_verify_every_shipped_fixture(fname, q, n, k, d):
    assert main(["verify", str(FIXTURES / fname), "--expect-d", str(d)]) == 0


def test_verify_distance_mismatch_fails(capsys):
    assert main(["verify", str(FIXTURES / "binary_37_9_13.txt"), "--expect-d", "12"]) == 1
    assert "!= expected 12" in capsys.readouterr().out


def test_verify_non_lcd_exits_one(capsys):
    assert main(["verify", str(FIXTURES / "not_lcd_4_2.txt")]) == 1
    out = capsys.readouterr().out
    assert "lcd: no" in out
    assert "not LCD" in out


def test_verify_parse_failure_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1 2\n1 7\n")
    assert main(["verify", str(bad)]) == 2
    assert "out of range" in capsys.readouterr().err
    assert main(["verify", str(tmp_path / "missing.txt")]) == 2


def test_distance_command(capsys):
    assert main(["distance", str(FIXTURES / "ternary_22_4_13.txt")]) == 0
    assert capsys.readouterr().out.strip() == "13"


def test_lcd_check_exit_codes(capsys):
    assert main(["lcd-check", str(FIXTURES / "binary_39_9_14.txt")]) == 0
    assert main(["lcd-check", str(FIXTURES / "not_lcd_4_2.txt")]) == 1
    out = capsys.readouterr().out
    assert "hull dimension: 2" in out


def test_train_smoke_and_bundle(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out_dir = tmp_path / "run"
    assert main(["train", str(cfg), "--out", str(out_dir)]) == 0
    assert (out_dir / "config.txt").exists()
    assert (out_dir / "train_log.csv").exists()
    assert (out_dir / "train_log.png").exists()
    stdout = capsys.readouterr().out
    assert "episodes run: 12" in stdout


def test_train_rerun_bundles_identical(tmp_path):
    cfg = write_config(tmp_path)
    dirs = []
    for name in ("a", "b"):
        out_dir = tmp_path / name
        assert main(["train", str(cfg), "--out", str(out_dir), "--no-plot"]) == 0
        dirs.append(out_dir)
    for fname in ("config.txt", "train_log.csv", "best_code.txt"):
        a, b = dirs[0] / fname, dirs[1] / fname
        assert a.exists() == b.exists()
        if a.exists():
            assert a.read_bytes() == b.read_bytes()


def test_train_finds_lcd_best_code(tmp_path, capsys):
    cfg = write_config(tmp_path, episodes=60, batch_episodes=8)
    out_dir = tmp_path / "run"
    assert main(["train", str(cfg), "--out", str(out_dir), "--no-plot"]) == 0
    assert "lcd=True" in capsys.readouterr().out
    assert (out_dir / "best_code.txt").exists()


def test_train_rnd_trace_output(tmp_path):
    cfg = write_config(tmp_path, episodes=5)
    out_dir = tmp_path / "run"
    assert main(["train", str(cfg), "--out", str(out_dir), "--no-plot",
                 "--rnd-trace"]) == 0
    lines = (out_dir / "rnd_trace.csv").read_text().splitlines()
    assert lines[0] == "step,raw_error,normalized_ri"
    assert len(lines) == 1 + 5 * 3  # one update per evaluated state


def test_train_invalid_config_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("n = 8\nk = 3\nwarp = 9\n")
    assert main(["train", str(bad)]) == 2
    assert "invalid config" in capsys.readouterr().err


def test_bler_stdout_high_snr(capsys):
    rc = main(["bler", str(FIXTURES / "binary_24_12_lcd.txt"),
               "--snr-lo", "30", "--snr-hi", "30", "--frames", "200",
               "--order", "1", "--seed", "5"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "snr_db,frames,errors,bler,half_width_95"
    fields = lines[1].split(",")
    assert float(fields[0]) == 30.0
    assert float(fields[3]) == 0.0


def test_bler_ternary_input_exits_one(capsys):
    assert main(["bler", str(FIXTURES / "ternary_22_4_13.txt")]) == 1
    assert "binary" in capsys.readouterr().err


def test_bler_csv_and_plot(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["bler", str(FIXTURES / "binary_24_12_lcd.txt"),
               "--snr-lo", "0", "--snr-hi", "2", "--snr-step", "2",
               "--frames", "150", "--order", "1", "--max-errors", "150",
               "-o", str(out)])
    assert rc == 0
    assert out.exists()
    assert (tmp_path / "sweep.png").exists()
    lines = out.read_text().splitlines()
    assert len(lines) == 3


def test_bler_seed_determinism(capsys):
    argv = ["bler", str(FIXTURES / "binary_24_12_lcd.txt"), "--snr-lo", "2",
            "--snr-hi", "2", "--frames", "100", "--order", "1", "--seed", "9"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_ablation_command(tmp_path, capsys):
    cfg = write_config(tmp_path, episodes=10, maxstep=2)
    out = tmp_path / "ablation.csv"
    rc = main(["ablation", str(cfg), "--seeds", "1,2", "-o", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "seed,last100_with_rnd,last100_without_rnd"
    assert len(lines) == 3
    assert (tmp_path / "ablation.png").exists()
    assert "median last-100" in capsys.readouterr().out


def test_variance_sweep_command(tmp_path, capsys):
    cfg = write_config(tmp_path, episodes=8, maxstep=2)
    out = tmp_path / "var.csv"
    rc = main(["variance-sweep", str(cfg), "--sigmas", "0.05,0.2", "-o", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "sigma2,episode,mean_total,mean_extrinsic,lcd_rate"
    assert len(lines) == 1 + 2 * 8
    assert (tmp_path / "var.png").exists()


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2
