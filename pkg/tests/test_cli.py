import json

import pytest

from mesotext import cli
from mesotext.config import ConfigError, RunConfig, parse_k_list
from mesotext.features import DatasetMatrix


def test_parse_k_list():
    assert parse_k_list("5:50:5") == tuple(float(k) for k in range(5, 51, 5))
    assert parse_k_list("10,5,5") == (5.0, 10.0)
    for bad in ("5:1:1", "a,b", "0,5", "5:10:0"):
        with pytest.raises(ConfigError):
            parse_k_list(bad)


def test_config_roundtrip():
    cfg = RunConfig(manifest="m.csv", k_values=(5, 10), classifier="svm")
    assert RunConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ConfigError):
        RunConfig(classifier="knn")
    with pytest.raises(ConfigError):
        RunConfig(measurements=("degree", "pagerank"))


def test_missing_manifest_is_config_error(tmp_path):
    assert cli.main(["ingest", "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert cli.main(["ingest", "--manifest", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert cli.main(["build", "--manifest", "x", "--k-list", "0", "--out", str(tmp_path)]) == cli.EXIT_CONFIG


def test_stage_without_inputs(tmp_path):
    assert cli.main(["classify", "--out", str(tmp_path)]) == cli.EXIT_PARTIAL


def test_stages_on_toy_corpus(synthetic_corpus, tmp_path):
    out = tmp_path / "run"
    common = ["--manifest", str(synthetic_corpus), "--out", str(out), "--cache-dir", str(tmp_path / "cache"),
              "--k-list", "5,10", "--trees", "10", "--layout-iterations", "20"]
    for stage in ("ingest", "build", "measure", "features", "classify", "pairwise", "pca"):
        assert cli.main([stage, *common]) == cli.EXIT_OK, stage
    assert cli.main(["render", *common, "--book", "linear1"]) == cli.EXIT_OK
    assert (out / "svg" / "linear1_k10.svg").exists()
    assert not (out / "svg" / "linear2_k10.svg").exists()
    data = DatasetMatrix.read_csv(out / "features.csv")
    assert data.X.shape == (12, 66)
    table = (out / "reports" / "accuracy_table.tsv").read_text().splitlines()
    assert table[0] == "average_degree\trandom_forest\tsvm"
    assert [r.split("\t")[0] for r in table[1:]] == ["k=5", "k=10", "All combined", "chance"]
    assert json.loads((out / "config.json").read_text())["k_values"] == [5.0, 10.0]
    log = (out / "build_log.tsv").read_text().splitlines()
    assert len(log) == 1 + 12 * 2


def test_short_book_is_skipped(tmp_path):
    (tmp_path / "short.txt").write_text("one\n\ntwo\n")
    (tmp_path / "m.csv").write_text("book_id,author,title,source\nshort,A,T,short.txt\n")
    args = ["--manifest", str(tmp_path / "m.csv"), "--out", str(tmp_path / "o"), "--cache-dir", str(tmp_path / "c")]
    assert cli.main(["ingest", *args]) == cli.EXIT_OK
    assert cli.main(["build", *args]) == cli.EXIT_PARTIAL
    assert "SKIPPED" in (tmp_path / "o" / "build_log.tsv").read_text()
