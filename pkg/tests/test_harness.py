import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from fbfmi.cli import bundled_fixture, main
from fbfmi.dataset import Dataset
from fbfmi.errors import AlreadyMissing, MissingResponse, ParseError, UnknownColumn
from fbfmi.fbf import enumerate_models
from fbfmi.harness.experiment import ExperimentSpec, emit_results, inject_mcar, run_experiment
from fbfmi.harness.io import five_numbers, ingest_csv, read_results_csv, read_summary, summarize
from fbfmi.harness.plot import emit_boxplot_svg

OZONE_NAMES = ["x4", "x5", "x6", "x7", "x8", "x9", "x10"]


def _write(tmp_path, text, name="d.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_ingest_complete(tmp_path):
    path = _write(tmp_path, "y,x1,x2\n1,2,3\n4,5,6\n7,8,9.5\n")
    d = ingest_csv(path, "y")
    assert d.mask.all() and d.names == ("x1", "x2")
    np.testing.assert_array_equal(d.X[:, 1], [3, 6, 9.5])


def test_ingest_missing_tokens(tmp_path):
    path = _write(tmp_path, "y,x1,x2,x3\n1,1,1,1\n2,2,2,2\n3,3,3,NA\n4,,4,4\n")
    d = ingest_csv(path, "y", ["x1", "x2", "x3"])
    assert not d.mask[2, 2] and not d.mask[3, 0]
    assert d.mask.sum() == 10


def test_ingest_errors(tmp_path):
    with pytest.raises(ParseError) as info:
        ingest_csv(_write(tmp_path, "y,x\n1,2\n2,abc\n"), "y")
    assert info.value.row == 1 and info.value.col == "x"
    with pytest.raises(MissingResponse) as info:
        ingest_csv(_write(tmp_path, "y,x\n1,2\nNA,3\n"), "y")
    assert info.value.row == 1
    with pytest.raises(UnknownColumn):
        ingest_csv(_write(tmp_path, "y,x\n1,2\n"), "y", ["z"])


def test_bundled_fixture_has_seven_predictors():
    d = ingest_csv(bundled_fixture(), "y")
    assert d.names == tuple(OZONE_NAMES) and d.n == 178 and d.is_complete
    assert len(enumerate_models(d.p)) == 128


def _complete(n=100, p=3, seed=0):
    rng = np.random.default_rng(seed)
    return Dataset.from_arrays(rng.normal(size=(n, p)), rng.normal(size=n), ["a", "b", "c"][:p])


def test_inject_mcar_counts_and_determinism():
    d = _complete()
    for seed in range(50):
        out = inject_mcar(d, ["b"], 0.2, seed)
        assert 5 <= (~out.mask[:, 1]).sum() <= 40
        assert out.mask[:, [0, 2]].all()
        np.testing.assert_array_equal(out.y, d.y)
    np.testing.assert_array_equal(inject_mcar(d, [1], 0.2, 3).mask, inject_mcar(d, ["b"], 0.2, 3).mask)


def test_inject_heaviest_setting():
    d = ingest_csv(bundled_fixture(), "y")
    out = inject_mcar(d, ["x6", "x7", "x8", "x9", "x10"], 0.30, 11)
    frac = (~out.mask[:, 2:]).mean()
    assert 0.25 < frac < 0.35 and out.mask[:, :2].all()


def test_inject_rejects_existing_missing():
    d = _complete()
    once = inject_mcar(d, ["a"], 0.3, 1)
    with pytest.raises(AlreadyMissing):
        inject_mcar(once, ["a"], 0.3, 2)


def _small_spec(tmp_path, **kw):
    rng = np.random.default_rng(42)
    X = rng.normal(size=(60, 3))
    y = X @ [1.0, 0.0, 0.5] + rng.normal(size=60)
    path = tmp_path / "small.csv"
    lines = ["y,a,b,c"] + [",".join(f"{v:.6f}" for v in (yi, *row)) for yi, row in zip(y, X)]
    path.write_text("\n".join(lines) + "\n")
    args = dict(data=str(path), response="y", predictors=["a", "b", "c"], miss_cols=["b", "c"],
                rates=[0.1, 0.2, 0.3], reps=2, m=3, seed=5, burn_in=10, spacing=2)
    args.update(kw)
    return ExperimentSpec(**args)


def test_experiment_counts_and_oracle_independence(tmp_path):
    spec = _small_spec(tmp_path)
    records = run_experiment(spec)
    assert len(records) == 9 * spec.reps
    assert all(r.ok for r in records)
    oracle = [r.inclusion for r in records if r.method == "oracle"]
    for inc in oracle[1:]:
        np.testing.assert_array_equal(inc, oracle[0])
    for r in records:
        assert np.all((r.inclusion >= 0) & (r.inclusion <= 1))


def test_experiment_isolates_failures(tmp_path):
    spec = _small_spec(tmp_path, rates=[0.75], miss_cols=["a", "b", "c"], reps=1)
    records = run_experiment(spec)
    by_method = {r.method: r for r in records}
    assert by_method["oracle"].ok and by_method["imputed"].ok
    assert not by_method["listwise"].ok and "InsufficientRows" in by_method["listwise"].error


def test_experiment_worker_pool_matches_serial(tmp_path):
    spec = _small_spec(tmp_path, rates=[0.2], reps=2)
    serial = run_experiment(spec)
    pooled = run_experiment(spec, workers=2)
    for a, b in zip(serial, pooled):
        assert (a.rate, a.rep, a.method) == (b.rate, b.rep, b.method)
        np.testing.assert_array_equal(a.inclusion, b.inclusion)


def test_five_numbers_type7():
    s = five_numbers([1, 2, 3, 4])
    assert (s["min"], s["q1"], s["median"], s["q3"], s["max"]) == (1.0, 1.75, 2.5, 3.25, 4.0)


def test_emit_results_round_trip(tmp_path):
    spec = _small_spec(tmp_path, rates=[0.1, 0.3], reps=2)
    records = run_experiment(spec)
    summary = emit_results(records, tmp_path / "r.csv", tmp_path / "s.json", spec.predictors, spec.miss_cols)
    lines = (tmp_path / "r.csv").read_text().splitlines()
    assert lines[0] == "rate,rep,method,variable,inclusion_prob"
    assert len(lines) == 1 + len(records) * 3
    again = summarize(read_results_csv(tmp_path / "r.csv"), spec.miss_cols)
    assert again == summary
    assert read_summary(tmp_path / "s.json") == json.loads(json.dumps(summary))


def test_one_record_seven_rows(tmp_path):
    d = ingest_csv(bundled_fixture(), "y")
    from fbfmi.harness.experiment import RunRecord
    from fbfmi.fbf import select

    res = select(d.X, d.y)
    rec = RunRecord(0.1, 0, "oracle", res.inclusion, res.log_fbf)
    emit_results([rec], tmp_path / "r.csv", tmp_path / "s.json", d.names)
    assert len((tmp_path / "r.csv").read_text().splitlines()) == 8


def _summary_for_plot():
    rows = []
    for rate in (0.1, 0.2, 0.3):
        for rep in range(4):
            for j, v in enumerate(OZONE_NAMES):
                rows.append((rate, rep, "oracle", v, 0.5))
                rows.append((rate, rep, "listwise", v, 0.1 * j + 0.05 * rep))
                rows.append((rate, rep, "imputed", v, 0.1 * j + 0.01 * rep))
    return summarize(rows, corrupted=["x6", "x7", "x8", "x9", "x10"])


def test_svg_layout(tmp_path):
    paths = emit_boxplot_svg(_summary_for_plot(), tmp_path)
    assert len(paths) == 3
    ns = {"s": "http://www.w3.org/2000/svg"}
    for path in paths:
        root = ET.parse(path).getroot()
        groups = root.findall("s:g", ns)
        assert len(groups) == 7
        labels = [g.findall("s:text", ns)[-1].text for g in groups]
        assert labels == ["x4", "x5", "x6*", "x7*", "x8*", "x9*", "x10*"]
        assert len(root.findall(".//s:rect[@class='oracle']", ns)) == 7


def test_svg_omits_empty_group(tmp_path):
    summary = _summary_for_plot()
    summary["stats"] = [s for s in summary["stats"] if s["method"] != "listwise"]
    (path, *_) = emit_boxplot_svg(summary, tmp_path)
    root = ET.parse(path).getroot()
    text = path.read_text()
    assert "#2ca02c" not in text and "#1f77b4" in text
    assert root.tag.endswith("svg")


def test_cli_select(tmp_path, capsys):
    out = tmp_path / "sel.json"
    assert main(["select", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["log_fbf"]) == 128 and payload["names"] == OZONE_NAMES
    assert "x7" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path):
    assert main(["select", "--data", str(_write(tmp_path, "y,x\n1,2\n2,zz\n"))]) == 2
    assert main(["select", "--data", str(_write(tmp_path, "y,x\n1,2\n2,3\n", "short.csv"))]) == 3
    assert main(["select", "--data", str(tmp_path / "nope.csv")]) == 4
    incomplete = _write(tmp_path, "y,x\n1,2\n2,NA\n3,1\n4,5\n", "inc.csv")
    assert main(["select", "--data", str(incomplete)]) == 2


def test_cli_impute_select_and_plot(tmp_path):
    spec = _small_spec(tmp_path)
    assert main(["impute-select", "--data", spec.data, "--m", "2", "--burn-in", "5", "--spacing", "1"]) == 0
    out = tmp_path / "exp"
    argv = ["experiment", "--data", spec.data, "--miss-cols", "b,c", "--reps", "1", "--m", "2",
            "--burn-in", "5", "--spacing", "1", "--rates", "0.2,0.3", "--out-dir", str(out)]
    assert main(argv) == 0
    assert main(["plot", str(out / "summary.json")]) == 0
    assert sorted(p.name for p in out.glob("*.svg")) == ["inclusion_rate_0.2.svg", "inclusion_rate_0.3.svg"]
