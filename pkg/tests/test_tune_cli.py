import json

import pytest

from results_io import read_results
from tune_cli import build_parser, main, spec_from_args

SMALL_RUN = ["--budget", "20", "--pop", "6", "--repeats", "3", "--seed", "5"]


@pytest.fixture
def landscape_file(tmp_path):
    path = tmp_path / "tiny.json"
    code = main(["-q", "gen-landscape", "--seed", "3", "--levels", "4,4,4", "--bumps", "4",
                 "--ruggedness", "0.2", "--out", str(path), "--csv", str(tmp_path / "tiny.csv")])
    assert code == 0
    return path


def run_results(landscape_file, out, *extra):
    code = main(["-q", "run", "--landscape", str(landscape_file), *SMALL_RUN,
                 "--out", str(out), *extra])
    assert code == 0
    return out


def test_gen_landscape_writes_manifest_and_csv(capsys, landscape_file):
    manifest = json.loads(landscape_file.read_text())
    assert manifest["spec"]["level_counts"] == [4, 4, 4]
    assert manifest["spec"]["name"] == "tiny"
    assert len((landscape_file.parent / "tiny.csv").read_text().splitlines()) == 65
    assert "SYNTHETIC LANDSCAPE tiny" in capsys.readouterr().out


def test_run_writes_one_row_per_repeat(landscape_file, tmp_path, capsys):
    out = run_results(landscape_file, tmp_path / "r.csv")
    results = read_results(out)
    assert len(results.runs) == 3
    assert results.label == "nsga2-mmo-population-w1"
    assert results.header["spec"]["budget"] == 20
    assert (tmp_path / "r.traces.csv").exists()
    assert "nsga2-mmo-population-w1: 3 runs" in capsys.readouterr().out


def test_run_on_exported_dataset(landscape_file, tmp_path):
    out = tmp_path / "d.csv"
    code = main(["-q", "run", "--dataset", str(tmp_path / "tiny.csv"), "--optimizer", "rs",
                 *SMALL_RUN, "--out", str(out)])
    assert code == 0
    assert read_results(out).case == "tiny/target"


def test_zero_weight_is_a_usage_error(landscape_file, tmp_path, capsys):
    code = main(["-q", "run", "--landscape", str(landscape_file), "--weight", "0",
                 "--out", str(tmp_path / "r.csv")])
    assert code == 2
    assert "usage error" in capsys.readouterr().err
    assert not (tmp_path / "r.csv").exists()


def test_budget_below_population_is_a_usage_error(landscape_file, tmp_path):
    code = main(["-q", "run", "--landscape", str(landscape_file), "--budget", "10",
                 "--pop", "50", "--out", str(tmp_path / "r.csv")])
    assert code == 2
    assert not (tmp_path / "r.csv").exists()


def test_flash_sample_above_budget_is_a_usage_error(landscape_file, tmp_path):
    code = main(["-q", "run", "--landscape", str(landscape_file), "--optimizer", "flash",
                 "--budget", "20", "--initial-sample", "30", "--out", str(tmp_path / "r.csv")])
    assert code == 2
    assert not (tmp_path / "r.csv").exists()


def test_missing_source_is_a_usage_error():
    assert main(["-q", "run", "--budget", "10"]) == 2


def test_missing_landscape_file_is_an_error(tmp_path):
    assert main(["-q", "run", "--landscape", str(tmp_path / "absent.json")]) == 1


def test_unknown_optimizer_is_rejected_by_argparse():
    with pytest.raises(SystemExit) as info:
        main(["run", "--optimizer", "tabu"])
    assert info.value.code == 2


def test_compare_against_itself_is_a_tie(landscape_file, tmp_path, capsys):
    out = run_results(landscape_file, tmp_path / "r.csv")
    verdicts = tmp_path / "v.json"
    assert main(["-q", "compare", str(out), str(out), "--out", str(verdicts)]) == 0
    [row] = json.loads(verdicts.read_text())
    assert (row["outcome"], row["a12"], row["p"]) == ("tie", 0.5, 1.0)
    assert row["case"] == "tiny/target"
    assert "COMPARISON VERDICTS" in capsys.readouterr().out


def test_paired_compare_needs_equal_run_counts(landscape_file, tmp_path, capsys):
    three = run_results(landscape_file, tmp_path / "three.csv")
    two = run_results(landscape_file, tmp_path / "two.csv", "--repeats", "2")
    assert main(["-q", "compare", str(three), str(two), "--paired"]) == 1
    assert "equal run counts" in capsys.readouterr().err


def test_compare_rejects_different_cases(landscape_file, tmp_path):
    tiny = run_results(landscape_file, tmp_path / "tiny-r.csv")
    other = tmp_path / "other.json"
    assert main(["-q", "gen-landscape", "--seed", "4", "--levels", "3,3",
                 "--out", str(other)]) == 0
    elsewhere = run_results(other, tmp_path / "other-r.csv", "--budget", "9")
    assert main(["-q", "compare", str(tiny), str(elsewhere)]) == 1


def test_report_with_speedup(landscape_file, tmp_path, capsys):
    out = run_results(landscape_file, tmp_path / "r.csv")
    trajectory = tmp_path / "t.csv"
    assert main(["-q", "report", str(out), "--baseline", str(out),
                 "--out", str(trajectory)]) == 0
    printed = capsys.readouterr().out
    assert "1.00x (equal)" in printed
    lines = trajectory.read_text().splitlines()
    assert lines[0] == "measurements,mean_best_ft,stderr"
    assert 1 < len(lines) <= 21


def test_sweep_weights_command(landscape_file, capsys):
    code = main(["-q", "sweep-weights", "--landscape", str(landscape_file), *SMALL_RUN,
                 "--weights", "0.5,1"])
    assert code == 0
    assert "WEIGHT SWEEP" in capsys.readouterr().out


def test_sweep_weights_needs_nsga2(landscape_file):
    assert main(["-q", "sweep-weights", "--landscape", str(landscape_file),
                 "--optimizer", "soga", *SMALL_RUN]) == 2


def test_calibrate_budget_command(landscape_file, capsys):
    code = main(["-q", "calibrate-budget", "--landscape", str(landscape_file),
                 "--pop", "6", "--repeats", "2", "--grid", "10,20",
                 "--optimizers", "nsga2,rs", "--populations", "4,6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "BUDGET CALIBRATION" in out
    assert "POPULATION CALIBRATION" in out


def test_spec_from_config_file_and_overrides(tmp_path):
    config = tmp_path / "spec.json"
    config.write_text(json.dumps({"dataset": "d.csv", "optimizer": "sa", "budget": 100,
                                  "repeats": 4}))
    args = build_parser().parse_args(["run", "--config", str(config), "--landscape", "l.json",
                                      "--optimizer", "nsga2", "--preset", "storm-wc",
                                      "--repeats", "7"])
    spec = spec_from_args(args)
    assert (spec.landscape, spec.dataset) == ("l.json", None)
    assert (spec.optimizer, spec.model) == ("nsga2", "mmo")
    assert (spec.population, spec.budget, spec.repeats) == (50, 600, 7)
