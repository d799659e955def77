import json
from fractions import Fraction

import pytest

from ffdist.gf import make_field
from ffdist.harness import (ExperimentConfig, build_parser, main, sample_set,
                            substream_id, threshold_sweep)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestSampling:
    def test_substream_deterministic(self):
        assert substream_id(42, 0) == substream_id(42, 0)
        assert substream_id(42, 0) != substream_id(42, 1)
        assert substream_id(42, 0) != substream_id(43, 0)
        assert substream_id(42, 0, "xcheck") != substream_id(42, 0)

    def test_sample_reproducible(self):
        f = make_field(5)
        a = sample_set(f, 2, 7, seed=1, trial=0)
        b = sample_set(f, 2, 7, seed=1, trial=0)
        assert [x.idx for x in a] == [x.idx for x in b]
        c = sample_set(f, 2, 7, seed=1, trial=1)
        assert [x.idx for x in a] != [x.idx for x in c]

    def test_sample_full_space(self):
        f = make_field(3)
        E = sample_set(f, 2, 9, seed=0, trial=0)
        assert len(E) == 9

    def test_sample_too_large(self):
        f = make_field(3)
        with pytest.raises(ValueError):
            sample_set(f, 2, 10, seed=0, trial=0)


class TestConfig:
    def test_threshold_exponent(self):
        assert ExperimentConfig(p=5, s=1, d=3, k=1).threshold_exponent == 2
        assert ExperimentConfig(p=7, s=1, d=2, k=1).threshold_exponent == 1.5
        assert ExperimentConfig(p=7, s=1, d=2, k=2).threshold_exponent == 1.5
        assert ExperimentConfig(p=3, s=1, d=5, k=1).threshold_exponent == 4

    def test_threshold_size(self):
        cfg = ExperimentConfig(p=7, s=1, d=2, k=1, C=Fraction(2))
        assert cfg.threshold_size(7) == 38

    def test_auto_grid(self):
        cfg = ExperimentConfig(p=5, s=1, d=3, k=1, C=Fraction(4))
        assert cfg.resolve_sizes(5) == (25, 50, 100, 125)

    def test_explicit_grid_validated(self):
        cfg = ExperimentConfig(p=3, s=1, d=2, k=1, size_grid=(3, 9, 3))
        assert cfg.resolve_sizes(3) == (3, 9)
        bad = ExperimentConfig(p=3, s=1, d=2, k=1, size_grid=(10,))
        with pytest.raises(ValueError):
            bad.resolve_sizes(3)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            ExperimentConfig(p=3, s=1, d=2, k=3)
        with pytest.raises(ValueError):
            ExperimentConfig(p=3, s=1, d=2, k=1, trials=0)


class TestSweep:
    def test_forced_sharpness_misses_everything(self):
        f = make_field(3)
        cfg = ExperimentConfig(p=3, s=1, d=3, k=1, seed=0, trials=2)
        records, summaries = threshold_sweep(f, cfg, force_sharpness=True)
        assert all(r.size == 9 for r in records)
        assert all(not r.full_coverage for r in records)
        assert all(r.missing_radii == (1, 2) for r in records)
        assert summaries == [{"size": 9, "trials": 2, "covered_trials": 0,
                              "coverage_fraction": 0.0}]

    def test_runtime_not_serialized(self):
        f = make_field(3)
        cfg = ExperimentConfig(p=3, s=1, d=2, k=1, trials=1)
        records, _ = threshold_sweep(f, cfg)
        assert "runtime_ms" not in records[0].as_json()

    def test_records_deterministic(self):
        f = make_field(5)
        cfg = ExperimentConfig(p=5, s=1, d=2, k=2, seed=11, trials=3)
        a = [r.as_json() for r in threshold_sweep(f, cfg)[0]]
        b = [r.as_json() for r in threshold_sweep(f, cfg)[0]]
        assert a == b


class TestCli:
    def test_verify_identities_json(self, capsys):
        code, out = run_cli(["verify-identities", "--q", "3"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["all_passed"] is True
        assert payload["field"]["q"] == 3

    def test_verify_identities_csv(self, capsys):
        code, out = run_cli(["verify-identities", "--q", "9", "--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "q,p,s,d,k,t,size,trial,metric,value"
        assert all(line.startswith("9,3,2,") for line in lines[1:])

    def test_sphere_ft_both(self, capsys):
        code, out = run_cli(["sphere-ft", "--q", "3", "--d", "2", "--k", "2",
                             "--t", "1"], capsys)
        assert code == 0
        assert json.loads(out)["all_equal"] is True

    def test_sphere_ft_single_m(self, capsys):
        code, out = run_cli(["sphere-ft", "--q", "5", "--d", "2", "--k", "1",
                             "--t", "2", "--m", "1,3", "--mode", "closed"], capsys)
        assert code == 0
        assert len(json.loads(out)["records"]) == 1

    def test_distance_set(self, capsys):
        code, out = run_cli(["distance-set", "--q", "5", "--d", "2", "--k", "2",
                             "--size", "12", "--seed", "3"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["size"] == 12
        assert set(payload["distances"]) <= set(range(5))

    def test_nu(self, capsys):
        code, out = run_cli(["nu", "--q", "3", "--d", "2", "--k", "1",
                             "--size", "4", "--seed", "7"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["all_equal"] is True
        assert len(payload["records"]) == 3

    def test_bounds(self, capsys):
        code, out = run_cli(["bounds", "--q", "5", "--d", "2", "--k", "1",
                             "--size", "6", "--t", "1"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["b_m2_zero"] is True
        assert payload["a_bound_ok"] is True

    def test_sharpness(self, capsys):
        code, out = run_cli(["sharpness", "--q", "3", "--d", "3", "--k", "1"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["size"] == 9
        assert payload["distances"] == [0]

    def test_threshold_sweep_sharpness(self, capsys):
        code, out = run_cli(["threshold-sweep", "--q", "3", "--d", "2", "--k", "1",
                             "--trials", "2", "--use-sharpness"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert all(r["missing_radii"] == [1, 2] for r in payload["records"])
        assert payload["summary"][0]["coverage_fraction"] == 0.0

    def test_p_s_field_selection(self, capsys):
        code, out = run_cli(["verify-identities", "--p", "3", "--s", "2"], capsys)
        assert code == 0
        assert json.loads(out)["field"]["q"] == 9

    @pytest.mark.parametrize("argv", [
        ["verify-identities", "--q", "12"],
        ["verify-identities"],
        ["sphere-ft", "--q", "3", "--d", "2", "--k", "2"],
        ["sphere-ft", "--q", "3", "--d", "2", "--k", "2", "--t", "0",
         "--mode", "closed"],
        ["nu", "--q", "3", "--d", "2", "--k", "3", "--size", "4"],
        ["nu", "--q", "3", "--d", "2", "--k", "1"],
        ["bounds", "--q", "3", "--d", "2", "--k", "1", "--size", "4", "--t", "0"],
        ["distance-set", "--q", "3", "--d", "2", "--k", "1", "--size", "99"],
    ])
    def test_invalid_parameters_exit_2(self, argv, capsys):
        code, _ = run_cli(argv, capsys)
        assert code == 2

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code = main(["sharpness", "--q", "3", "--d", "2", "--k", "1",
                     "--out", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["size"] == 3


class TestConfigFile:
    def test_config_supplies_flags(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 3, "d": 2, "k": 1, "size": 4, "seed": 5}))
        code, out = run_cli(["nu", "--config", str(cfg)], capsys)
        assert code == 0
        assert json.loads(out)["field"]["q"] == 3

    def test_explicit_flag_wins(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 3, "d": 2, "k": 1}))
        code, out = run_cli(["sharpness", "--config", str(cfg), "--q", "5"], capsys)
        assert code == 0
        assert json.loads(out)["field"]["q"] == 5

    def test_unknown_field_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 3, "bogus": 1}))
        code, _ = run_cli(["verify-identities", "--config", str(cfg)], capsys)
        assert code == 2

    def test_format_alias(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 3, "format": "csv"}))
        code, out = run_cli(["verify-identities", "--config", str(cfg)], capsys)
        assert code == 0
        assert out.startswith("q,p,s,d,k,t,size,trial,metric,value")


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["verify-identities", "--q", "5"],
        ["sphere-ft", "--q", "3", "--d", "2", "--k", "2", "--t", "1"],
        ["distance-set", "--q", "5", "--d", "2", "--k", "1", "--size", "8",
         "--seed", "3"],
        ["nu", "--q", "3", "--d", "2", "--k", "2", "--size", "5", "--seed", "1"],
        ["bounds", "--q", "5", "--d", "2", "--k", "2", "--size", "6",
         "--seed", "2", "--t", "2"],
        ["sharpness", "--q", "3", "--d", "2", "--k", "1"],
        ["threshold-sweep", "--q", "3", "--d", "2", "--k", "1", "--trials", "3",
         "--seed", "9"],
    ])
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_byte_identical_reruns(self, argv, fmt, capsys):
        first = run_cli(argv + ["--format", fmt], capsys)
        second = run_cli(argv + ["--format", fmt], capsys)
        assert first == second
        assert first[0] == 0
