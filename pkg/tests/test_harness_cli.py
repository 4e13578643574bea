"""Tests for the batch evaluation harness and the command-line interface."""

import json

import numpy as np
import pytest

from wpdenoise import (EXCLUDED_IDS, MethodSpec, RunPlan, default_methods,
                       evaluate_plan, evaluate_record, from_json,
                       load_records, parse_method, pearson, read_record,
                       synth_record, to_json, write_record)
from wpdenoise.cli import main
from wpdenoise.harness import PreprocessSettings, apply_preprocess

SUITE_KW = dict(suite_records=2, suite_duration_s=120.0)


def tiny_record(seed, record_id, modality="eeg", fs=256.0):
    return synth_record(seed, duration_s=120.0, fs=fs, modality=modality,
                        record_id=record_id)


# ---------------------------------------------------------------- MethodSpec

def test_method_spec_validates_its_fields():
    assert MethodSpec("wpd", "sym4", "blind").label() == "wpd:sym4:blind"
    with pytest.raises(ValueError, match="method"):
        MethodSpec("emd", "db1")
    with pytest.raises(ValueError, match="unsupported wavelet"):
        MethodSpec("wpd", "db9")
    with pytest.raises(ValueError, match="selector"):
        MethodSpec("wpd", "db1", "auto")


def test_blind_selection_is_wavelet_only():
    with pytest.raises(ValueError, match="blind"):
        MethodSpec("wpd-cca", "db1", "blind")


def test_two_stage_wavelets_are_restricted():
    for name in ("db1", "db2", "db3", "fk4", "fk6", "fk8"):
        MethodSpec("wpd-cca", name)
    with pytest.raises(ValueError, match="coif1"):
        MethodSpec("wpd-cca", "coif1")


def test_parse_method_accepts_two_and_three_part_specs():
    assert parse_method("wpd:db1") == MethodSpec("wpd", "db1")
    assert parse_method("wpd:sym4:blind") == MethodSpec("wpd", "sym4", "blind")
    spec = MethodSpec("wpd-cca", "fk4")
    assert parse_method(spec) is spec
    with pytest.raises(ValueError, match="method spec"):
        parse_method("wpd-db1")


def test_default_method_sets_match_the_protocols():
    assert len(default_methods("synthetic")) == 2
    assert len(default_methods("full23")) == 18  # 12 single + 6 two-stage
    assert len(default_methods("fnirs16")) == 18
    table2 = default_methods("table2")
    assert len(table2) == 4
    assert all(m.selector == "blind" for m in table2)


# ------------------------------------------------------------------- RunPlan

def test_plan_validates_protocol_workers_and_mode():
    with pytest.raises(ValueError, match="protocol"):
        RunPlan(protocol="full99")
    with pytest.raises(ValueError, match="workers"):
        RunPlan(protocol="synthetic", workers=0)
    with pytest.raises(ValueError, match="snr_mode"):
        RunPlan(protocol="synthetic", snr_mode="peak")
    with pytest.raises(ValueError, match="preprocess"):
        RunPlan(protocol="synthetic", preprocess="maybe")


def test_plan_fills_in_the_protocol_method_set():
    plan = RunPlan(protocol="synthetic")
    assert plan.methods == default_methods("synthetic")
    explicit = RunPlan(protocol="synthetic", methods=("wpd:db2",))
    assert explicit.methods == (MethodSpec("wpd", "db2"),)


def test_synthetic_protocol_skips_preprocessing_by_default():
    assert RunPlan(protocol="synthetic").resolved_preprocess() is None
    assert RunPlan(protocol="full23").resolved_preprocess() is not None
    assert RunPlan(protocol="full23", preprocess="off").resolved_preprocess() \
        is None


# -------------------------------------------------------------- load_records

def test_synthetic_suite_loads_ten_sorted_records():
    records = load_records(RunPlan(protocol="synthetic"))
    assert len(records) == 10
    assert [r.id for r in records] == sorted(r.id for r in records)


def test_disk_protocols_require_a_data_dir():
    with pytest.raises(ValueError, match="WPDENOISE_DATA_DIR"):
        load_records(RunPlan(protocol="full23"))


def test_table2_drops_the_excluded_trials(tmp_path):
    for seed, rid in ((1, "eeg_11"), (2, "eeg_12"), (3, "eeg_15")):
        write_record(tiny_record(seed, rid), tmp_path / f"{rid}.csv")
    assert EXCLUDED_IDS["table2"] == ("eeg_12", "eeg_15")
    records = load_records(RunPlan(protocol="table2",
                                   data_dir=str(tmp_path)))
    assert [r.id for r in records] == ["eeg_11"]


def test_protocols_filter_by_modality(tmp_path):
    write_record(tiny_record(1, "eeg_01"), tmp_path / "eeg_01.csv")
    write_record(tiny_record(2, "fnirs_01", modality="fnirs", fs=25.0),
                 tmp_path / "fnirs_01.csv")
    eeg = load_records(RunPlan(protocol="full23", data_dir=str(tmp_path)))
    fnirs = load_records(RunPlan(protocol="fnirs16", data_dir=str(tmp_path)))
    assert [r.id for r in eeg] == ["eeg_01"]
    assert [r.id for r in fnirs] == ["fnirs_01"]


def test_duplicate_record_ids_are_rejected(tmp_path):
    write_record(tiny_record(1, "eeg_01"), tmp_path / "a.csv")
    write_record(tiny_record(2, "eeg_01"), tmp_path / "b.csv")
    with pytest.raises(ValueError, match="duplicate"):
        load_records(RunPlan(protocol="full23", data_dir=str(tmp_path)))


# ----------------------------------------------------------- evaluate_record

def test_per_record_failures_become_error_rows():
    rec = synth_record(1, duration_s=0.05, fs=256.0, artifact_amp=0.0,
                       record_id="short")  # 12 samples
    rows = evaluate_record(rec, (MethodSpec("wpd", "coif3"),
                                 MethodSpec("wpd", "db1")))
    assert rows[0].error is not None and "coif3" in rows[0].error
    assert rows[1].error is None  # db1 still fits 12 samples


def test_preprocessing_failures_mark_every_method_row():
    rec = tiny_record(1, "odd_rate", fs=300.0)
    settings = PreprocessSettings(target_fs=256.0)
    rows = evaluate_record(rec, (MethodSpec("wpd", "db1"),), settings=settings)
    assert rows[0].error is not None and "integer factor" in rows[0].error


def test_apply_preprocess_decimates_notches_and_detrends():
    rec = tiny_record(5, "eeg_hf", fs=2048.0)
    out = apply_preprocess(rec, PreprocessSettings(target_fs=256.0))
    assert out.fs == 256.0
    assert out.corrupted.size == rec.corrupted.size // 8
    assert abs(out.reference.mean()) < 1e-8  # detrended


# -------------------------------------------------------------- evaluate_plan

def test_small_synthetic_plan_produces_sorted_rows():
    plan = RunPlan(protocol="synthetic", **SUITE_KW)
    report = evaluate_plan(plan)
    assert len(report.rows) == 4  # 2 records x 2 methods
    keys = [(r.record_id, r.method) for r in report.rows]
    assert keys == sorted(keys)
    assert len(report.summaries) == 2
    assert all(r.error is None for r in report.rows)


def test_worker_count_does_not_change_the_report():
    serial = evaluate_plan(RunPlan(protocol="synthetic", workers=1, **SUITE_KW))
    parallel = evaluate_plan(RunPlan(protocol="synthetic", workers=2,
                                     **SUITE_KW))
    assert to_json(serial) == to_json(parallel)


# ----------------------------------------------------------------------- CLI

def test_cli_synth_writes_a_valid_record(tmp_path, capsys):
    out = tmp_path / "rec.csv"
    assert main(["synth", "--out", str(out), "--seed", "42",
                 "--duration-s", "120"]) == 0
    assert "wrote synth_0042" in capsys.readouterr().out
    rec = read_record(out)
    assert rec.fs == 256.0
    assert rec.corrupted.size == 120 * 256


def test_cli_synth_zero_amplitude_gives_a_perfect_record(tmp_path):
    out = tmp_path / "clean.csv"
    assert main(["synth", "--out", str(out), "--artifact-amp", "0",
                 "--duration-s", "60"]) == 0
    rec = read_record(out)
    assert pearson(rec.corrupted, rec.reference) == pytest.approx(1.0)


def test_cli_synth_seeds_differ_only_in_data_and_id(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["synth", "--out", str(a), "--seed", "1", "--duration-s", "120"])
    main(["synth", "--out", str(b), "--seed", "2", "--duration-s", "120"])
    head_a = a.read_text().splitlines()[:4]
    head_b = b.read_text().splitlines()[:4]
    assert head_a[0] != head_b[0]  # ids differ
    assert head_a[1:] == head_b[1:]  # same modality/fs/column header
    ra, rb = read_record(a), read_record(b)
    assert not np.array_equal(ra.corrupted, rb.corrupted)


def test_cli_preprocess_decimates_a_record(tmp_path):
    raw = tmp_path / "raw.csv"
    cooked = tmp_path / "cooked.csv"
    main(["synth", "--out", str(raw), "--fs", "2048", "--duration-s", "30",
          "--artifact-amp", "0"])
    assert main(["preprocess", "--in", str(raw), "--out", str(cooked),
                 "--decim", "8", "--poly-order", "-1"]) == 0
    rec = read_record(cooked)
    assert rec.fs == 256.0


def test_cli_denoise_prints_scores_and_writes_the_cleaned_record(
        tmp_path, capsys):
    rec_path = tmp_path / "rec.csv"
    cleaned_path = tmp_path / "cleaned.csv"
    main(["synth", "--out", str(rec_path), "--seed", "3",
          "--duration-s", "120"])
    capsys.readouterr()
    assert main(["denoise", "--in", str(rec_path), "--method", "wpd",
                 "--wavelet", "db1", "--out", str(cleaned_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["record_id"] == "synth_0003"
    assert payload["eta_percent"] > 0.0
    assert payload["removed_components"]
    cleaned = read_record(cleaned_path)
    assert cleaned.id == "synth_0003_cleaned"
    assert cleaned.corrupted.size == 120 * 256


def test_cli_denoise_is_deterministic(tmp_path, capsys):
    rec_path = tmp_path / "rec.csv"
    main(["synth", "--out", str(rec_path), "--seed", "4",
          "--duration-s", "120"])
    capsys.readouterr()
    main(["denoise", "--in", str(rec_path), "--method", "wpd-cca"])
    first = capsys.readouterr().out
    main(["denoise", "--in", str(rec_path), "--method", "wpd-cca"])
    assert capsys.readouterr().out == first


def test_cli_denoise_rejects_blind_two_stage(tmp_path, capsys):
    rec_path = tmp_path / "rec.csv"
    main(["synth", "--out", str(rec_path), "--duration-s", "120"])
    assert main(["denoise", "--in", str(rec_path), "--method", "wpd-cca",
                 "--selector", "blind"]) == 1
    assert "blind" in capsys.readouterr().err


def test_cli_missing_input_fails_with_a_message(tmp_path, capsys):
    assert main(["denoise", "--in", str(tmp_path / "nope.csv")]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_evaluate_writes_all_three_report_files(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    assert main(["evaluate", "--protocol", "synthetic",
                 "--suite-records", "2", "--suite-duration-s", "120",
                 "--out-dir", str(out_dir)]) == 0
    assert "## Summary" in capsys.readouterr().out
    report = from_json((out_dir / "report.json").read_text())
    assert len(report.rows) == 4
    assert (out_dir / "report.csv").exists()
    assert (out_dir / "report.md").exists()


def test_cli_evaluate_reads_the_data_dir_env_var(tmp_path, capsys,
                                                 monkeypatch):
    data = tmp_path / "data"
    data.mkdir()
    for seed, rid in ((1, "eeg_11"), (2, "eeg_12")):
        write_record(tiny_record(seed, rid), data / f"{rid}.csv")
    monkeypatch.setenv("WPDENOISE_DATA_DIR", str(data))
    out_dir = tmp_path / "reports"
    assert main(["evaluate", "--protocol", "table2",
                 "--methods", "wpd:db1:blind",
                 "--out-dir", str(out_dir)]) == 0
    capsys.readouterr()
    report = from_json((out_dir / "report.json").read_text())
    assert [r.record_id for r in report.rows] == ["eeg_11"]
    assert report.excluded_ids == ("eeg_12", "eeg_15")


def test_cli_report_rerenders_saved_json(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    main(["evaluate", "--protocol", "synthetic", "--suite-records", "2",
          "--suite-duration-s", "120", "--out-dir", str(out_dir)])
    capsys.readouterr()
    assert main(["report", "--in", str(out_dir / "report.json"),
                 "--format", "markdown"]) == 0
    rendered = capsys.readouterr().out
    assert rendered == (out_dir / "report.md").read_text()
