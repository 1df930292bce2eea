"""Command-line interface: exit codes, composition, and determinism."""

import json
import subprocess
import sys

import pytest

from chamberlens import cli
from chamberlens.cli import PipelineConfig, load_config, main, run_pipeline
from chamberlens.errors import FormatError, ValidationError

from benchmark_tables import bench_6x6
from chamberlens.concordance import write_confusion_csv


# ------------------------------------------------------------- fixtures


def small_synth(outdir, k=3, size=12, seed=2):
    rc = main(["synth", "--quiet", "--outdir", str(outdir), "--k", str(k),
               "--size", str(size), "--p-in", "0.5", "--seed", str(seed)])
    assert rc == 0
    return outdir


@pytest.fixture()
def dataset(tmp_path):
    return small_synth(tmp_path / "data")


def read_bytes(path):
    return path.read_bytes()


# ------------------------------------------------------------ exit codes


def test_no_arguments_prints_usage_and_fails(capsys):
    assert main([]) == 1
    assert "usage" in capsys.readouterr().err.lower()


def test_unknown_subcommand_fails(capsys):
    assert main(["frobnicate"]) == 1
    assert "error" in capsys.readouterr().err.lower()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "chamberlens" in capsys.readouterr().out


def test_version_exits_zero(capsys):
    assert main(["--version"]) == 0


def test_missing_input_file_is_io_error(tmp_path):
    rc = main(["graph", "--quiet", "--in", str(tmp_path / "absent.jsonl"),
               "--out", str(tmp_path / "g.json")])
    assert rc == 2


def test_validation_problem_is_exit_one(tmp_path, dataset):
    rc = main(["cluster", "--quiet", "--in", str(dataset / "features.jsonl"),
               "--out", str(tmp_path / "c.json")])  # neither --k nor --partition
    assert rc == 1


def test_score_import_requires_features(tmp_path, dataset):
    rc = main(["score", "--quiet", "--in", str(dataset / "tweets.jsonl"),
               "--out", str(tmp_path / "f.jsonl"), "--scorer", "import"])
    assert rc == 1


# ---------------------------------------------------------------- config


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"input": "x.jsonl", "outdir": "out", "clusters": 4}',
                    encoding="utf-8")
    with pytest.raises(FormatError):
        load_config(path)


def test_config_requires_input_and_outdir(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"outdir": "out"}', encoding="utf-8")
    with pytest.raises(FormatError):
        load_config(path)


def test_config_paths_resolve_relative_to_the_config_file(tmp_path):
    sub = tmp_path / "nested"
    sub.mkdir()
    path = sub / "cfg.json"
    path.write_text('{"input": "tweets.jsonl", "outdir": "out"}',
                    encoding="utf-8")
    cfg = load_config(path)
    assert cfg.input == (sub / "tweets.jsonl").resolve()
    assert cfg.outdir == (sub / "out").resolve()


def test_config_validates_values(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(
        '{"input": "x", "outdir": "o", "scorer": "import"}', encoding="utf-8")
    with pytest.raises(ValidationError):
        load_config(path)
    path.write_text(
        '{"input": "x", "outdir": "o", "restarts": 0}', encoding="utf-8")
    with pytest.raises(ValidationError):
        load_config(path)


def test_bad_config_json_is_exit_one(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{broken", encoding="utf-8")
    assert main(["pipeline", "--quiet", "--config", str(path)]) == 1


def test_default_restart_count_is_four():
    assert PipelineConfig(input="x", outdir="o").restarts == 4


# -------------------------------------------------------------- pipeline


def pipeline_config(dataset, outdir, **extra):
    cfg = {
        "input": str(dataset / "tweets.jsonl"),
        "outdir": str(outdir),
        "scorer": "import",
        "features_in": str(dataset / "features.jsonl"),
        "min_weight": 1,
        "top_k": 3,
        "min_size": 5,
        "seed": 0,
    }
    cfg.update(extra)
    path = outdir.parent / f"{outdir.name}.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return path


def test_pipeline_produces_every_artifact(tmp_path, dataset):
    cfg = pipeline_config(dataset, tmp_path / "run")
    assert main(["pipeline", "--quiet", "--config", str(cfg)]) == 0
    for name in ("tweets.jsonl", "graph.json", "partition.json",
                 "features.jsonl", "clusters.json", "report.json",
                 "confusion.csv", "means.csv"):
        assert (tmp_path / "run" / name).exists(), name
    report = json.loads((tmp_path / "run" / "report.json").read_text())
    assert 0.0 <= report["matched_accuracy"] <= 1.0
    assert set(report["matching"]) == set(report["confusion"]["row_ids"])


def test_pipeline_is_byte_deterministic(tmp_path, dataset):
    cfg_a = pipeline_config(dataset, tmp_path / "a")
    cfg_b = pipeline_config(dataset, tmp_path / "b")
    assert main(["pipeline", "--quiet", "--config", str(cfg_a)]) == 0
    assert main(["pipeline", "--quiet", "--config", str(cfg_b)]) == 0
    for name in ("tweets.jsonl", "graph.json", "partition.json",
                 "features.jsonl", "clusters.json", "report.json",
                 "confusion.csv", "means.csv"):
        assert read_bytes(tmp_path / "a" / name) \
            == read_bytes(tmp_path / "b" / name), name


def test_pipeline_matches_the_subcommand_chain(tmp_path, dataset):
    run = tmp_path / "piped"
    cfg = pipeline_config(dataset, run, restarts=1)
    assert main(["pipeline", "--quiet", "--config", str(cfg)]) == 0

    step = tmp_path / "steps"
    step.mkdir()
    q = "--quiet"
    assert main(["ingest", q, "--in", str(dataset / "tweets.jsonl"),
                 "--format", "jsonl", "--out", str(step / "tweets.jsonl")]) == 0
    assert main(["graph", q, "--in", str(step / "tweets.jsonl"),
                 "--out", str(step / "graph.json"), "--min-weight", "1"]) == 0
    assert main(["communities", q, "--in", str(step / "graph.json"),
                 "--out", str(step / "partition.json"), "--seed", "0",
                 "--top-k", "3", "--min-size", "5"]) == 0
    assert main(["score", q, "--in", str(step / "tweets.jsonl"),
                 "--out", str(step / "features.jsonl"), "--scorer", "import",
                 "--features-in", str(dataset / "features.jsonl")]) == 0
    assert main(["cluster", q, "--in", str(step / "features.jsonl"),
                 "--out", str(step / "clusters.json"),
                 "--partition", str(step / "partition.json"),
                 "--seed", "0"]) == 0
    assert main(["evaluate", q, "--clusters", str(step / "clusters.json"),
                 "--partition", str(step / "partition.json"),
                 "--tweets", str(step / "tweets.jsonl"),
                 "--features", str(step / "features.jsonl"),
                 "--outdir", str(step)]) == 0
    for name in ("tweets.jsonl", "graph.json", "partition.json",
                 "features.jsonl", "clusters.json", "report.json",
                 "confusion.csv", "means.csv"):
        assert read_bytes(run / name) == read_bytes(step / name), name


def test_include_rest_adds_a_rest_community(tmp_path, dataset):
    run = tmp_path / "rest"
    cfg = pipeline_config(dataset, run, top_k=2, include_rest=True)
    assert main(["pipeline", "--quiet", "--config", str(cfg)]) == 0
    report = json.loads((run / "report.json").read_text())
    assert "rest" in report["confusion"]["col_ids"]


def test_score_baseline_writes_features(tmp_path, dataset):
    out = tmp_path / "f.jsonl"
    rc = main(["score", "--quiet", "--in", str(dataset / "tweets.jsonl"),
               "--out", str(out)])
    assert rc == 0
    n_tweets = sum(1 for ln in (dataset / "tweets.jsonl").open() if ln.strip())
    n_feats = sum(1 for ln in out.open() if ln.strip())
    assert n_feats == n_tweets


def test_import_scorer_reemits_vectors_verbatim(tmp_path, dataset):
    out = tmp_path / "f.jsonl"
    rc = main(["score", "--quiet", "--in", str(dataset / "tweets.jsonl"),
               "--out", str(out), "--scorer", "import",
               "--features-in", str(dataset / "features.jsonl")])
    assert rc == 0
    assert read_bytes(out) == read_bytes(dataset / "features.jsonl")


def test_threads_env_var_does_not_change_output(tmp_path, dataset, monkeypatch):
    out1 = tmp_path / "f1.jsonl"
    monkeypatch.setenv("CHAMBERLENS_THREADS", "1")
    assert main(["score", "--quiet", "--in", str(dataset / "tweets.jsonl"),
                 "--out", str(out1)]) == 0
    out8 = tmp_path / "f8.jsonl"
    monkeypatch.setenv("CHAMBERLENS_THREADS", "8")
    assert main(["score", "--quiet", "--in", str(dataset / "tweets.jsonl"),
                 "--out", str(out8)]) == 0
    assert read_bytes(out1) == read_bytes(out8)


# -------------------------------------------------- confusion evaluation


def test_evaluate_confusion_prints_pure_json(tmp_path):
    path = tmp_path / "confusion.csv"
    write_confusion_csv(bench_6x6(), path)
    proc = subprocess.run(
        [sys.executable, "-m", "chamberlens", "evaluate", "--quiet",
         "--confusion", str(path)],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)  # stdout must be nothing but the report
    assert abs(obj["matched_accuracy"] - 0.3532) <= 0.0005
    assert obj["matched_sum"] == 4627
    assert obj["total"] == 13099


def test_evaluate_confusion_with_drop(tmp_path, capsys):
    path = tmp_path / "confusion.csv"
    write_confusion_csv(bench_6x6(), path)
    assert main(["evaluate", "--quiet", "--confusion", str(path),
                 "--drop", "2,2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert abs(obj["matched_accuracy"] - 0.4347) <= 0.0005
    assert obj["total"] == 4288


def test_evaluate_confusion_report_file(tmp_path):
    path = tmp_path / "confusion.csv"
    write_confusion_csv(bench_6x6(), path)
    report = tmp_path / "report.json"
    assert main(["evaluate", "--quiet", "--confusion", str(path),
                 "--report", str(report)]) == 0
    obj = json.loads(report.read_text())
    assert obj["matched_sum"] == 4627


def test_evaluate_drop_unknown_id_fails(tmp_path):
    path = tmp_path / "confusion.csv"
    write_confusion_csv(bench_6x6(), path)
    assert main(["evaluate", "--quiet", "--confusion", str(path),
                 "--drop", "9,9"]) == 1
    assert main(["evaluate", "--quiet", "--confusion", str(path),
                 "--drop", "nonsense"]) == 1


# ------------------------------------------------------------------ plot


def test_plot_means_and_layout(tmp_path, dataset):
    run = tmp_path / "run"
    cfg = pipeline_config(dataset, run)
    assert main(["pipeline", "--quiet", "--config", str(cfg)]) == 0
    means_svg = tmp_path / "means.svg"
    assert main(["plot", "--quiet", "--means", str(run / "means.csv"),
                 "--out", str(means_svg)]) == 0
    assert means_svg.read_text().count('class="pt"') >= 1

    assert main(["layout", "--quiet", "--in", str(run / "graph.json"),
                 "--out", str(tmp_path / "layout.csv"), "--iters", "50"]) == 0
    layout_svg = tmp_path / "layout.svg"
    assert main(["plot", "--quiet", "--layout", str(tmp_path / "layout.csv"),
                 "--partition", str(run / "partition.json"),
                 "--out", str(layout_svg)]) == 0
    text = layout_svg.read_text()
    assert text.count('class="pt"') >= 30


def test_plot_needs_exactly_one_source(tmp_path):
    assert main(["plot", "--quiet", "--out", str(tmp_path / "x.svg")]) == 1
    assert main(["plot", "--quiet", "--means", "a.csv", "--layout", "b.csv",
                 "--out", str(tmp_path / "x.svg")]) == 1


# ----------------------------------------------------------------- synth


def test_synth_writes_the_three_files(tmp_path):
    out = tmp_path / "synthed"
    assert main(["synth", "--quiet", "--outdir", str(out), "--k", "2",
                 "--size", "5", "--seed", "7"]) == 0
    assert (out / "tweets.jsonl").exists()
    assert (out / "features.jsonl").exists()
    assert (out / "truth.json").exists()
    truth = json.loads((out / "truth.json").read_text())
    assert len(truth["community_of_user"]) == 10


def test_synth_k_beyond_builtin_means_needs_a_spec(tmp_path):
    assert main(["synth", "--quiet", "--outdir", str(tmp_path / "x"),
                 "--k", "7"]) == 1


def test_entrypoint_raises_systemexit(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["chamberlens"])
    with pytest.raises(SystemExit) as exc:
        cli.entrypoint()
    assert exc.value.code == 1
