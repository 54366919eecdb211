"""CLI contract: configs, headers, exit codes, determinism."""

import csv
import json
import math

import pytest

from superosc.cli import HEADERS, main


def _write(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def _read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _seq_cfg(out):
    return {
        "physics": {"m": 1.0, "omega": 1.0, "hbar": 1.0},
        "sequence": {"a": 2.0, "p": [1.0], "n": [10]},
        "study": {"x_grid": {"lo": -1.0, "hi": 1.0, "points": 201}},
        "output": {"path": out, "format": "csv"},
    }


def test_sequence_command(tmp_path):
    out = str(tmp_path / "seq.csv")
    cfg = _write(tmp_path, "seq.json", _seq_cfg(out))
    assert main(["sequence", "--config", cfg]) == 0
    header, rows = _read_csv(out)
    assert header == HEADERS["sequence"]
    assert len(rows) == 201
    # dual-form column bounded; limit difference at x = 0 is zero
    dual = [float(r[5]) for r in rows]
    assert max(dual) <= 1e-12
    mid = rows[100]
    assert float(mid[0]) == 0.0
    assert float(mid[6]) < 1e-14
    # sidecar metadata exists and echoes the config
    meta = json.loads((tmp_path / "seq.csv.meta.json").read_text())
    assert meta["config"]["sequence"]["a"] == 2.0


def test_sequence_deterministic(tmp_path):
    cfg = _write(tmp_path, "seq.json", _seq_cfg(str(tmp_path / "a.csv")))
    assert main(["sequence", "--config", cfg]) == 0
    assert main(["sequence", "--config", cfg, "--out", str(tmp_path / "b.csv")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_unknown_key_is_config_error(tmp_path):
    cfg_dict = _seq_cfg(str(tmp_path / "x.csv"))
    cfg_dict["bogus"] = 1
    cfg = _write(tmp_path, "bad.json", cfg_dict)
    assert main(["sequence", "--config", cfg]) == 2


def test_missing_block_is_config_error(tmp_path):
    cfg_dict = _seq_cfg(str(tmp_path / "x.csv"))
    del cfg_dict["sequence"]
    cfg = _write(tmp_path, "bad.json", cfg_dict)
    assert main(["sequence", "--config", cfg]) == 2


def _evolve_cfg(out, t_grid, tol=1e-10):
    return {
        "physics": {"m": 1.0, "omega": 1.0, "hbar": 1.0},
        "force": {"kind": "constant", "f0": [0.3]},
        "sequence": {"a": 2.0, "p": [1.0], "n": [8]},
        "study": {"t_grid": t_grid, "x_grid": {"lo": -1, "hi": 1, "points": 5},
                  "methods": ["mode_sum", "operator_series"], "tolerance": tol},
        "output": {"path": out, "format": "csv"},
    }


def test_evolve_command_agreement(tmp_path):
    out = str(tmp_path / "evo.csv")
    cfg = _write(tmp_path, "evo.json", _evolve_cfg(out, [0.3, 0.6]))
    assert main(["evolve", "--config", cfg]) == 0
    header, rows = _read_csv(out)
    assert header[-1] == "dev_mode_sum_operator_series"
    assert len(rows) == 10
    assert max(float(r[-1]) for r in rows) <= 1e-10


def test_evolve_t_zero_reproduces_datum(tmp_path):
    out = str(tmp_path / "evo0.csv")
    cfg = _write(tmp_path, "evo0.json", _evolve_cfg(out, [0.0]))
    assert main(["evolve", "--config", cfg]) == 0
    _, rows = _read_csv(out)
    for r in rows:
        assert abs(float(r[2]) - float(r[4])) < 1e-12  # both columns equal datum


def test_evolve_caustic_exits_3(tmp_path, capsys):
    out = str(tmp_path / "x.csv")
    cfg = _write(tmp_path, "bad_t.json", _evolve_cfg(out, [math.pi / 2]))
    assert main(["evolve", "--config", cfg]) == 3
    assert "singular time" in capsys.readouterr().err


def test_evolve_tolerance_breach_exits_4(tmp_path):
    out = str(tmp_path / "x.csv")
    cfg = _write(tmp_path, "tight.json", _evolve_cfg(out, [0.6], tol=1e-18))
    assert main(["evolve", "--config", cfg]) == 4


def test_singularity_command(tmp_path):
    out = str(tmp_path / "sing.json")
    cfg = _write(tmp_path, "sing_cfg.json", {
        "physics": {"omega": 1.0},
        "sequence": {"a": 0.5, "p": [1.0]},
        "study": {"t_grid": {"lo": 0.2, "hi": 1.5, "points": 8}, "x0": 0.0},
        "output": {"path": out, "format": "json"},
    })
    assert main(["singularity", "--config", cfg]) == 0
    data = json.loads((tmp_path / "sing.json").read_text())
    assert list(data["rows"][0]) == HEADERS["singularity"]
    for row in data["rows"]:
        assert abs(row["collapsed_amp"] - 1.0) < 1e-12
        assert abs(row["kloc_cos"] - 0.5) < 1e-8
    assert data["meta"]["band_crossing_time"] == pytest.approx(math.acos(0.5))


def test_persistence_command(tmp_path):
    out = str(tmp_path / "pers.csv")
    w = 1.3 / 6
    cfg = _write(tmp_path, "pers.json", {
        "physics": {"m": 1.0, "omega": 0.0, "hbar": 1.0},
        "lattice": {"n": [6], "p": [1.3]},
        "potential": {"kind": "constant", "v0": 0.4},
        "coefficients": {"modes": [[-6, 0.3, 0.1], [-3, 0.2, 0.0], [0, 1.0, 0.0],
                                   [3, 0.0, -0.4], [6, 0.05, 0.0]]},
        "study": {"t_grid": [0.5, 1.1], "period": [2 * math.pi / (3 * w)]},
        "output": {"path": out},
    })
    assert main(["persistence", "--config", cfg]) == 0
    header, rows = _read_csv(out)
    assert header == HEADERS["persistence"]
    for r in rows:
        assert float(r[1]) <= 1e-12           # round trip
        assert float(r[3]) <= float(r[2]) + 1e-10  # period defect growth
        assert r[4] == "1"


def test_persistence_aperiodic_exits_3(tmp_path, capsys):
    out = str(tmp_path / "x.csv")
    cfg = _write(tmp_path, "bad.json", {
        "physics": {"m": 1.0, "omega": 0.0, "hbar": 1.0},
        "lattice": {"n": [6], "p": [1.3]},
        "coefficients": {"modes": [[1, 1.0, 0.0], [2, 0.5, 0.0]]},
        "study": {"t_grid": [0.5], "period": [2 * math.pi / (2 * 1.3 / 6)]},
        "output": {"path": out},
    })
    assert main(["persistence", "--config", cfg]) == 3
    assert "not X-periodic" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["sequence", "--config", str(tmp_path / "nope.json")]) == 2
