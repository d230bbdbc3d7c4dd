import csv
import io
import json
import math

import pytest

from jcsc_sim import cli
from jcsc_sim.config import ScenarioConfig, parse_config
from jcsc_sim.experiments import (
    DISCOVERY_COLUMNS,
    JCS_COLUMNS,
    SEMANTICS_COLUMNS,
    derive_seed,
    run_experiments,
    run_fig4_experiment,
    run_fig5_experiment,
    run_fig6_experiment,
    to_csv,
    write_artifacts,
)

SMALL = parse_config("[experiment]\nnode_counts = 2, 10, 20\nreplications = 3\nmaster_seed = 5\n")


class TestSeeds:
    def test_stable(self):
        assert derive_seed(1, "fig4/n=10", 0) == derive_seed(1, "fig4/n=10", 0)

    def test_indices_differ(self):
        assert derive_seed(1, "fig4/n=10", 0) != derive_seed(1, "fig4/n=10", 1)

    def test_no_collisions(self):
        seeds = {derive_seed(42, "fig4/n=100", k) for k in range(10_000)}
        assert len(seeds) == 10_000
        assert all(0 <= s < 2**64 for s in seeds)


class TestFig4:
    def test_two_nodes_assisted(self):
        cfg = parse_config("[geometry]\narea_width = 100\narea_height = 100\n"
                           "[experiment]\nnode_counts = 2\nreplications = 1\n")
        rows = run_fig4_experiment(cfg).rows
        assert [r["policy"] for r in rows] == ["blind", "sensing_assisted"]
        assert rows[1]["slots_used"] == 1

    def test_rows_and_summary(self):
        table = run_fig4_experiment(SMALL)
        assert len(table.rows) == 3 * 3 * 2
        assert [tuple(r) for r in table.rows] == [DISCOVERY_COLUMNS] * len(table.rows)
        assert [s["n_nodes"] for s in table.summary] == [2, 10, 20]
        recorded = {(s["n_nodes"], s["seed"]) for s in table.seeds}
        assert {(r["n_nodes"], r["seed"]) for r in table.rows} == recorded

    def test_deterministic_and_parallel_safe(self):
        a = to_csv(run_fig4_experiment(SMALL).rows, DISCOVERY_COLUMNS)
        b = to_csv(run_fig4_experiment(SMALL).rows, DISCOVERY_COLUMNS)
        c = to_csv(run_fig4_experiment(SMALL, workers=2).rows, DISCOVERY_COLUMNS)
        assert a == b == c

    def test_timeouts_flagged(self):
        cfg = parse_config("[discovery]\nslot_cap = 3\n[experiment]\nnode_counts = 60\nreplications = 2\n")
        table = run_fig4_experiment(cfg)
        blind = [r for r in table.rows if r["policy"] == "blind"]
        assert all(not r["completed"] and r["slots_used"] == 3 for r in blind)
        assert table.summary[0]["timeouts"] >= 2


class TestFig5:
    def test_default_gain(self):
        rows = run_fig5_experiment(ScenarioConfig())
        city = next(r for r in rows if r["source"] == "cityscapes")
        assert city["raw_bits"] == 12_582_912 and city["semantic_bits"] == 1_258_292
        assert city["efficiency_gain"] == pytest.approx(10, rel=1e-5)

    def test_ratio_one(self):
        cfg = parse_config("[payload.id]\nsource = custom\nwidth = 10\nheight = 10\nsemantic_ratio = 1\n"
                           "[jcs]\npayloads = id:raw\n")
        assert run_fig5_experiment(cfg)[0]["efficiency_gain"] == 1.0

    def test_consistent_columns(self):
        for r in run_fig5_experiment(ScenarioConfig()):
            assert r["efficiency_gain"] == r["raw_bits"] / r["semantic_bits"]


class TestFig6:
    def test_default_rows(self):
        table = run_fig6_experiment(ScenarioConfig())
        assert not table.errors
        bits = [r["payload_bits"] for r in table.rows]
        assert bits == sorted(bits) == [1_258_292, 12_582_912, 16_588_800]
        mi = [r["radar_mi_bits"] for r in table.rows]
        assert all(a > b for a, b in zip(mi, mi[1:]))
        assert all(r["comm_time_s"] + r["sensing_time_s"] == 0.03 for r in table.rows)

    def test_zero_payload(self):
        cfg = parse_config("[jcs]\npayloads = 0\n")
        (row,) = run_fig6_experiment(cfg).rows
        assert row["sensing_time_s"] == 0.03 and row["comm_time_s"] == 0.0

    def test_overflow_reported(self):
        cfg = parse_config("[jcs]\npayloads = 0, 999999999999\n")
        table = run_fig6_experiment(cfg)
        assert len(table.rows) == 1
        assert table.errors[0]["payload_bits"] == 999999999999


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestCli:
    def test_all_writes_schemas(self, tmp_path, capsys):
        cfg = tmp_path / "s.ini"
        cfg.write_text("[experiment]\nnode_counts = 5, 10\n")
        assert cli.main(["all", "--config", str(cfg), "--seed", "3", "--replications", "2",
                         "--out-dir", str(tmp_path / "out")]) == 0
        out = tmp_path / "out"
        assert tuple(read_csv(out / "discovery.csv")[0]) == DISCOVERY_COLUMNS
        assert tuple(read_csv(out / "semantics.csv")[0]) == SEMANTICS_COLUMNS
        assert tuple(read_csv(out / "jcs.csv")[0]) == JCS_COLUMNS
        assert len(read_csv(out / "discovery.csv")) == 1 + 2 * 2 * 2
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["master_seed"] == 3
        seeds = {(s["n_nodes"], s["seed"]) for s in manifest["seeds"]}
        rows = read_csv(out / "discovery.csv")[1:]
        assert {(int(r[0]), int(r[1])) for r in rows} <= seeds
        assert manifest["reduction_reference"]["published_at_100_nodes"] == 0.492

    def test_single_commands(self, tmp_path):
        assert cli.main(["semantics", "--out-dir", str(tmp_path)]) == 0
        assert cli.main(["jcs", "--out-dir", str(tmp_path)]) == 0
        assert not (tmp_path / "discovery.csv").exists()
        assert (tmp_path / "jcs.csv").exists()

    def test_config_error_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[geometry]\nbeamwidth = 0\n")
        assert cli.main(["discover", "--config", str(cfg), "--out-dir", str(tmp_path)]) != 0
        assert "geometry.beamwidth" in capsys.readouterr().err

    def test_overflow_exit_code(self, tmp_path):
        cfg = tmp_path / "big.ini"
        cfg.write_text("[jcs]\npayloads = 999999999999\n")
        assert cli.main(["jcs", "--config", str(cfg), "--out-dir", str(tmp_path)]) == 1

    def test_numeric_format_round_trips(self, tmp_path):
        art = run_experiments(ScenarioConfig(), ("fig6",))
        write_artifacts(art, tmp_path)
        rows = read_csv(tmp_path / "jcs.csv")[1:]
        for row, rec in zip(rows, art.jcs_table.rows):
            assert float(row[3]) == rec["comm_time_s"]
            assert not any("," in c or math.isnan(float(c)) for c in row)
