import json
import os

import pytest

from ccbeam.cli import (CONVERGE_HEADER, SWEEP_HEADER, config_to_dict, main,
                        parse_config, write_config)
from ccbeam.errors import ConfigurationError
from ccbeam.orchestrator import Scheme, SimConfig


def read_lines(path):
    with open(path) as f:
        return f.read().splitlines()


def tiny_config_file(tmp_path, **extra):
    data = dict(antennas=8, realizations=80, codebook_size=8,
                ga=dict(iterations=15), powers_db=[0, 20, 40], master_seed=42)
    data.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestParseConfig:
    def test_empty_file_gives_full_scale_defaults(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("{}")
        cfg = parse_config(str(path))
        assert cfg.antennas == 32
        assert cfg.realizations == 15000
        assert cfg.ga.iterations == 150
        assert cfg.rate_npcu == 2.0

    def test_overrides_beat_file(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"realizations": 5000}))
        cfg = parse_config(str(path), {"realizations": 2000})
        assert cfg.realizations == 2000

    def test_bad_value_names_key(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"beta_grid_step": 1.5}))
        with pytest.raises(ConfigurationError, match="beta_grid_step"):
            parse_config(str(path))

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"antenas": 8}))
        with pytest.raises(ConfigurationError, match="antenas"):
            parse_config(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            parse_config(str(tmp_path / "nope.json"))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{not json")
        with pytest.raises(ConfigurationError, match="malformed"):
            parse_config(str(path))

    def test_round_trip(self, tmp_path):
        cfg = SimConfig(antennas=16, realizations=123, master_seed=9,
                        powers_db=(0.0, 7.5), schemes=(Scheme.CODED_BF,))
        path = tmp_path / "rt.json"
        write_config(cfg, str(path))
        assert parse_config(str(path)) == cfg

    def test_config_dict_json_serializable(self):
        json.dumps(config_to_dict(SimConfig()))


class TestSweepCommand:
    def test_csv_schema_and_determinism(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        assert main(["sweep", "--config", config, "--out", out1]) == 0
        assert main(["sweep", "--config", config, "--out", out2]) == 0
        assert open(out1, "rb").read() == open(out2, "rb").read()

        lines = read_lines(out1)
        assert lines[0].startswith("# seed=42 config_hash=")
        assert lines[1] == SWEEP_HEADER
        rows = [l.split(",") for l in lines[2:]]
        assert len(rows) == 3 * (2 * 4 + 2)  # powers x (coded x methods + uncoded)
        for r in rows:
            assert len(r) == 8
            stp = float(r[4])
            assert 0.0 <= stp <= 1.0
            assert float(r[5]) >= 0.0
            if r[1] in ("UncodedBf", "UncodedNoBf"):
                assert r[2] == "" and r[3] == ""
            else:
                assert r[2] in ("JointSic", "JointNoSic", "SeparateSic", "SeparateNoSic")
                assert 0.0 <= float(r[3]) <= 1.0

    def test_seed_flag_beats_file(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "s.csv")
        assert main(["sweep", "--config", config, "--out", out, "--seed", "7"]) == 0
        assert read_lines(out)[0].startswith("# seed=7 ")

    def test_powers_flag(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "p.csv")
        assert main(["sweep", "--config", config, "--out", out, "--powers-db", "0:30:60"]) == 0
        powers = {l.split(",")[0] for l in read_lines(out)[2:]}
        assert powers == {"0", "30", "60"}

    def test_bad_config_exit_code(self, tmp_path):
        config = tiny_config_file(tmp_path, beta_grid_step=2.0)
        assert main(["sweep", "--config", config, "--out", str(tmp_path / "x.csv")]) == 1

    def test_unwritable_output_exit_code(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "no" / "such" / "dir" / "x.csv")
        assert main(["sweep", "--config", config, "--out", out]) == 2

    def test_plot_renders_figures(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "fig.csv")
        assert main(["sweep", "--config", config, "--out", out, "--plot"]) == 0
        assert os.path.exists(str(tmp_path / "fig_stp.png"))
        assert os.path.exists(str(tmp_path / "fig_throughput.png"))


class TestConvergeCommand:
    def test_trace_csv(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "t.csv")
        assert main(["converge", "--config", config, "--out", out, "--traces", "3"]) == 0
        lines = read_lines(out)
        assert lines[1] == CONVERGE_HEADER
        rows = [l.split(",") for l in lines[2:]]
        assert len(rows) == 3 * 15  # traces x iterations
        per_trace = {}
        for rid, it, v in rows:
            per_trace.setdefault(rid, []).append((int(it), float(v)))
        for pts in per_trace.values():
            vals = [v for _, v in sorted(pts)]
            assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_seed_change_keeps_monotonicity(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out1, out2 = str(tmp_path / "t1.csv"), str(tmp_path / "t2.csv")
        main(["converge", "--config", config, "--out", out1, "--seed", "1", "--traces", "2"])
        main(["converge", "--config", config, "--out", out2, "--seed", "2", "--traces", "2"])
        assert open(out1).read() != open(out2).read()
        for out in (out1, out2):
            vals = [float(l.split(",")[2]) for l in read_lines(out)[2:] if l.split(",")[0] == "0"]
            assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_plot_renders_trace_figure(self, tmp_path):
        config = tiny_config_file(tmp_path)
        out = str(tmp_path / "tr.csv")
        assert main(["converge", "--config", config, "--out", out, "--traces", "2", "--plot"]) == 0
        assert os.path.exists(str(tmp_path / "tr_traces.png"))
