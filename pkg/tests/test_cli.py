import json

import pytest
from conftest import make_samples

from pathloss_fit import (
    AbgModel,
    CiModel,
    GeneratorSpec,
    dynamic_range_filter,
    evaluate,
    fit_abg,
    fit_ci,
    fspl_1m,
    generate,
    run_distance_sweep,
    run_environment_cross,
    run_frequency_loo,
)
from pathloss_fit.cli import main
from pathloss_fit.datafiles import dataset_to_text, file_digest, read_dataset, read_table_csv, render_table, write_dataset
from pathloss_fit.synth import dump_specs


@pytest.fixture
def fixture_file(tmp_path, two_sample_ci):
    path = tmp_path / "two.csv"
    write_dataset(two_sample_ci, path)
    return path


@pytest.fixture
def aalborg_file(tmp_path):
    path = tmp_path / "aalborg.csv"
    assert main(["generate", "--spec", "aalborg-like", "--output", str(path)]) == 0
    return path


@pytest.fixture
def both_file(tmp_path):
    path = tmp_path / "both.csv"
    assert main(["generate", "--spec", "aalborg-like", "--spec", "madrid-like", "-o", str(path)]) == 0
    return path


def test_fit_ci_fixture(fixture_file, capsys):
    assert main(["fit", "--model", "ci", "--input", str(fixture_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["model"] == {"kind": "ci", "n": pytest.approx(2.4, abs=1e-12)}
    assert doc["stats"]["sf_std"] == pytest.approx((20 / 2) ** 0.5, abs=1e-6)
    assert f"{doc['stats']['sf_std']:.6g}" == "3.16228"
    assert doc["sample_count"] == 2


def test_fit_abg_matches_library(aalborg_file, capsys):
    assert main(["fit", "--model", "abg", "-i", str(aalborg_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    r = fit_abg(read_dataset(aalborg_file))
    assert doc["model"] == {"kind": "abg", "alpha": r.model.alpha, "beta": r.model.beta, "gamma": r.model.gamma}
    assert doc["stats"] == r.stats.to_dict()


def test_fit_degenerate_exit_3(tmp_path, capsys):
    path = tmp_path / "one_freq.csv"
    write_dataset(make_samples([28] * 3, [10, 20, 40], [90.0, 95.0, 101.0]), path)
    assert main(["fit", "--model", "abg", "-i", str(path)]) == 3
    assert "frequency" in capsys.readouterr().err


def test_eval_inline_params(fixture_file, two_sample_ci, capsys):
    assert main(["eval", "--params", '{"n": 2.4}', "-i", str(fixture_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == evaluate(CiModel(2.4), two_sample_ci).to_dict()
    assert main(["eval", "--params", '{"alpha": 2.62, "beta": 34.9, "gamma": 1.9}', "-i", str(fixture_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == evaluate(AbgModel(2.62, 34.9, 1.9), two_sample_ci).to_dict()


def test_eval_bad_params_exit_2(fixture_file, capsys):
    assert main(["eval", "--params", "{n: 2}", "-i", str(fixture_file)]) == 2
    assert main(["eval", "--params", '{"q": 2}', "-i", str(fixture_file)]) == 2
    assert "params" in capsys.readouterr().err


def test_filter(tmp_path):
    f1 = fspl_1m(1.0)
    s = make_samples([1, 1, 1], [10, 10, 10], [f1 + 50, f1 + 150, f1 + 60])
    s += make_samples([1], [10], [f1 + 10], state="LOS")
    src, out = tmp_path / "in.csv", tmp_path / "out.csv"
    write_dataset(s, src)
    assert main(["filter", "-i", str(src), "-o", str(out)]) == 0
    assert read_dataset(out) == dynamic_range_filter(s)
    assert main(["filter", "-i", str(src), "-o", str(out), "--nlos-only"]) == 0
    assert read_dataset(out) == [s[0], s[2]]


def test_generate_deterministic(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(dump_specs([GeneratorSpec(AbgModel(2.62, 34.9, 1.9), 8.9, [2, 28], [10, 1000], 100, 7)]))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["generate", "--spec", str(spec), "-o", str(a)]) == 0
    assert main(["generate", "--spec", str(spec), "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_dataset(a) == generate(GeneratorSpec(AbgModel(2.62, 34.9, 1.9), 8.9, [2, 28], [10, 1000], 100, 7))


def test_sweep_distance_first_column_is_grid(aalborg_file, capsys):
    assert main(["sweep-distance", "--mode", "near", "-i", str(aalborg_file)]) == 0
    meta, rows = read_table_csv(capsys.readouterr().out)
    assert [r["sweep_key"] for r in rows] == [str(v) for v in range(0, 701, 50)]
    assert meta["input_sha256"] == file_digest(aalborg_file)


def test_sweep_custom_grid_matches_library(aalborg_file, capsys):
    assert main(["sweep-distance", "--mode", "far", "--grid", "0,100,200", "--d-min", "800",
                 "--format", "json", "-i", str(aalborg_file)]) == 0
    out = capsys.readouterr().out
    table = run_distance_sweep(read_dataset(aalborg_file), "far", [0, 100, 200], d_min=800)
    assert out == render_table(table, "json", file_digest(aalborg_file))


def test_loo_frequency_matches_library(both_file, capsys):
    assert main(["loo-frequency", "-i", str(both_file), "--bands", "2,5.6,10,18,28,39.3,73.5"]) == 0
    out = capsys.readouterr().out
    assert out == render_table(run_frequency_loo(read_dataset(both_file)), "csv", file_digest(both_file))


def test_cross_env_matches_library(both_file, capsys):
    argv = ["cross-env", "--measurement-env", "aalborg", "--prediction-env", "madrid", "-i", str(both_file)]
    assert main(argv) == 0
    out = capsys.readouterr().out
    table = run_environment_cross(read_dataset(both_file), "aalborg", "madrid")
    assert out == render_table(table, "csv", file_digest(both_file))
    _, rows = read_table_csv(out)
    assert len(rows) == 12


def test_usage_errors_exit_1(capsys):
    assert main([]) == 1
    assert main(["bogus"]) == 1
    assert main(["fit", "--model", "xyz", "-i", "x.csv"]) == 1
    assert main(["sweep-distance", "--mode", "near", "--grid", "a,b", "-i", "x.csv"]) == 1


def test_jobs_must_be_positive(aalborg_file):
    assert main(["loo-frequency", "-i", str(aalborg_file), "--jobs", "0"]) == 1


def test_data_errors_exit_2(tmp_path, capsys):
    assert main(["fit", "--model", "ci", "-i", str(tmp_path / "missing.csv")]) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("environment,tx_height_class,frequency_ghz,distance_m,path_loss_db,link_state\nA,low,2,0,100,NLOS\n")
    assert main(["fit", "--model", "ci", "-i", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "distance_m" in err
    assert main(["generate", "--spec", "nowhere-like"]) == 2


def test_los_rows_rejected_by_experiments(tmp_path):
    s = make_samples([2, 10, 28], [50, 300, 900], [100, 120, 140])
    s += make_samples([2], [500], [110], state="LOS")
    path = tmp_path / "los.csv"
    path.write_text(dataset_to_text(s))
    assert main(["sweep-distance", "--mode", "near", "--grid", "0", "-i", str(path)]) == 2


def test_quiet_suppresses_warnings(tmp_path, capsys):
    s = generate(GeneratorSpec(CiModel(2.7), 2.0, [2, 10], [10, 1000], 40, 2))
    path = tmp_path / "d.csv"
    write_dataset(s, path)
    assert main(["loo-frequency", "-i", str(path), "-q"]) == 0
    assert "WARNING" not in capsys.readouterr().err
