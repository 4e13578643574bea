"""Evaluation result rows, per-method summaries, and report serialization.

Reports serialize to canonical JSON (sorted keys, no whitespace, no
timestamps) so that repeated runs of the same plan produce byte-identical
files regardless of worker count.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class EvalRow:
    """Outcome of one (record, method) evaluation; exactly one row each."""

    record_id: str
    method: str
    wavelet: str
    selector: str
    delta_snr_db: Optional[float] = None
    eta_percent: Optional[float] = None
    rho_before: Optional[float] = None
    rho_after: Optional[float] = None
    removed_components: Optional[Tuple[int, ...]] = None
    error: Optional[str] = None

    def __post_init__(self):
        if (self.error is None) == (self.delta_snr_db is None):
            raise ValueError("a row must carry either scores or an error, not both")
        if self.removed_components is not None:
            object.__setattr__(self, "removed_components",
                               tuple(int(i) for i in self.removed_components))

    def sort_key(self):
        return (self.record_id, self.method, self.wavelet, self.selector)


@dataclass(frozen=True)
class SummaryRow:
    """Mean/std of scores for one method over all scored, non-excluded records."""

    method: str
    wavelet: str
    selector: str
    n_records: int
    delta_snr_mean: float
    delta_snr_std: float
    eta_mean: float
    eta_std: float


@dataclass(frozen=True)
class EvalReport:
    protocol: str
    excluded_ids: Tuple[str, ...]
    rows: Tuple[EvalRow, ...]
    summaries: Tuple[SummaryRow, ...] = field(default=())


def _mean_std(values):
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, var ** 0.5


def build_report(rows, protocol, excluded_ids=()):
    """Assemble a report: sort rows deterministically and summarize by method.

    Summaries cover rows that scored successfully and whose record is not in
    ``excluded_ids``; error rows stay visible in ``rows`` but never enter a
    summary.
    """
    rows = tuple(sorted(rows, key=EvalRow.sort_key))
    excluded = tuple(sorted(set(excluded_ids)))
    groups = {}
    for row in rows:
        if row.error is not None or row.record_id in excluded:
            continue
        groups.setdefault((row.method, row.wavelet, row.selector), []).append(row)
    summaries = []
    for (method, wavelet, selector), members in sorted(groups.items()):
        snr_mean, snr_std = _mean_std([r.delta_snr_db for r in members])
        eta_mean, eta_std = _mean_std([r.eta_percent for r in members])
        summaries.append(SummaryRow(
            method=method, wavelet=wavelet, selector=selector,
            n_records=len(members), delta_snr_mean=snr_mean, delta_snr_std=snr_std,
            eta_mean=eta_mean, eta_std=eta_std))
    return EvalReport(protocol=protocol, excluded_ids=excluded, rows=rows,
                      summaries=tuple(summaries))


def to_json(report):
    """Canonical JSON: sorted keys, compact separators, trailing newline."""
    payload = {
        "protocol": report.protocol,
        "excluded_ids": list(report.excluded_ids),
        "rows": [_row_dict(r) for r in report.rows],
        "summaries": [asdict(s) for s in report.summaries],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _row_dict(row):
    d = asdict(row)
    if d["removed_components"] is not None:
        d["removed_components"] = list(d["removed_components"])
    return d


def from_json(text):
    payload = json.loads(text)
    rows = []
    for d in payload["rows"]:
        if d.get("removed_components") is not None:
            d["removed_components"] = tuple(d["removed_components"])
        rows.append(EvalRow(**d))
    summaries = tuple(SummaryRow(**d) for d in payload["summaries"])
    return EvalReport(protocol=payload["protocol"],
                      excluded_ids=tuple(payload["excluded_ids"]),
                      rows=tuple(rows), summaries=summaries)


_CSV_COLUMNS = ("kind", "record_id", "method", "wavelet", "selector",
                "delta_snr_db", "delta_snr_std", "eta_percent", "eta_std",
                "rho_before", "rho_after", "n_records", "removed_components",
                "error")


def to_csv(report):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report.rows:
        removed = "" if row.removed_components is None else \
            " ".join(str(i) for i in row.removed_components)
        writer.writerow({
            "kind": "record", "record_id": row.record_id, "method": row.method,
            "wavelet": row.wavelet, "selector": row.selector,
            "delta_snr_db": _num(row.delta_snr_db), "delta_snr_std": "",
            "eta_percent": _num(row.eta_percent), "eta_std": "",
            "rho_before": _num(row.rho_before), "rho_after": _num(row.rho_after),
            "n_records": "", "removed_components": removed,
            "error": row.error or ""})
    for s in report.summaries:
        writer.writerow({
            "kind": "summary", "record_id": "", "method": s.method,
            "wavelet": s.wavelet, "selector": s.selector,
            "delta_snr_db": repr(s.delta_snr_mean),
            "delta_snr_std": repr(s.delta_snr_std),
            "eta_percent": repr(s.eta_mean), "eta_std": repr(s.eta_std),
            "rho_before": "", "rho_after": "", "n_records": s.n_records,
            "removed_components": "", "error": ""})
    return buf.getvalue()


def _num(value):
    return "" if value is None else repr(float(value))


def to_markdown(report):
    """Human-readable tables; summary cells use ``mean (std)`` at 2 decimals."""
    lines = [f"# Evaluation report: {report.protocol}", ""]
    if report.excluded_ids:
        lines.append("Excluded from summaries: " + ", ".join(report.excluded_ids))
        lines.append("")
    lines.append("## Summary")
    lines.append("")
    lines.append("| method | wavelet | selector | records | delta SNR (dB) "
                 "| artifact reduction (%) |")
    lines.append("|---|---|---|---|---|---|")
    for s in report.summaries:
        lines.append(
            f"| {s.method} | {s.wavelet} | {s.selector} | {s.n_records} "
            f"| {s.delta_snr_mean:.2f} ({s.delta_snr_std:.2f}) "
            f"| {s.eta_mean:.2f} ({s.eta_std:.2f}) |")
    lines.append("")
    lines.append("## Per-record results")
    lines.append("")
    lines.append("| record | method | wavelet | selector | delta SNR (dB) "
                 "| artifact reduction (%) | corr before | corr after | removed |")
    lines.append("|---|---|---|---|---|---|---|---|---|")
    for row in report.rows:
        if row.error is not None:
            lines.append(f"| {row.record_id} | {row.method} | {row.wavelet} "
                         f"| {row.selector} | error: {row.error} | | | | |")
            continue
        removed = " ".join(str(i) for i in row.removed_components)
        lines.append(
            f"| {row.record_id} | {row.method} | {row.wavelet} | {row.selector} "
            f"| {row.delta_snr_db:.2f} | {row.eta_percent:.2f} "
            f"| {row.rho_before:.4f} | {row.rho_after:.4f} | {removed} |")
    return "\n".join(lines) + "\n"
