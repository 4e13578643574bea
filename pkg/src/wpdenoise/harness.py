"""Batch evaluation: run denoising methods over record suites and score them.

A :class:`RunPlan` names a protocol (which fixes the record suite, the
exclusion list, and the preprocessing defaults), the methods to run, and the
worker count.  Evaluation is deterministic: records are processed
independently, rows are sorted by (record id, method, wavelet, selector),
and the resulting report serializes byte-identically for any worker count.
"""

import glob
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .filters import get_filter, list_filters
from .metrics import score
from .pipeline import CCA_WAVELETS, denoise_wpd, denoise_wpd_cca
from .preprocess import decimate, detrend_poly, notch
from .records import default_suite, read_record
from .reports import EvalRow, build_report
from .signals import Signal

PROTOCOLS = ("synthetic", "full23", "table2", "fnirs16")

# Records whose summaries a protocol must ignore; they are dropped before
# evaluation so no rows are produced for them either.
EXCLUDED_IDS = {
    "synthetic": (),
    "full23": (),
    "table2": ("eeg_12", "eeg_15"),
    "fnirs16": (),
}

_PROTOCOL_MODALITY = {"full23": "eeg", "table2": "eeg", "fnirs16": "fnirs"}
_TARGET_FS = {"eeg": 256.0, "fnirs": 25.0}


@dataclass(frozen=True)
class MethodSpec:
    """One denoising configuration: method family, wavelet, and selector."""

    method: str
    wavelet: str
    selector: str = "oracle"

    def __post_init__(self):
        if self.method not in ("wpd", "wpd-cca"):
            raise ValueError(f"method must be 'wpd' or 'wpd-cca', got {self.method!r}")
        get_filter(self.wavelet)
        if self.selector not in ("oracle", "blind"):
            raise ValueError(
                f"selector must be 'oracle' or 'blind', got {self.selector!r}")
        if self.method == "wpd-cca":
            if self.selector == "blind":
                raise ValueError(
                    "the blind selector applies only to wavelet-only denoising")
            if self.wavelet not in CCA_WAVELETS:
                raise ValueError(
                    f"wpd-cca supports wavelets {CCA_WAVELETS}, got {self.wavelet!r}")

    def label(self):
        return f"{self.method}:{self.wavelet}:{self.selector}"


def parse_method(spec):
    """Parse ``'wpd:db1'`` / ``'wpd-cca:fk4'`` / ``'wpd:sym4:blind'`` strings."""
    if isinstance(spec, MethodSpec):
        return spec
    parts = spec.split(":")
    if len(parts) == 2:
        return MethodSpec(parts[0], parts[1])
    if len(parts) == 3:
        return MethodSpec(parts[0], parts[1], parts[2])
    raise ValueError(
        f"method spec {spec!r} must look like 'method:wavelet[:selector]'")


def default_methods(protocol):
    """The method set a protocol runs when none is given explicitly."""
    if protocol == "synthetic":
        return (MethodSpec("wpd", "db1"), MethodSpec("wpd-cca", "db1"))
    if protocol == "table2":
        return tuple(MethodSpec("wpd", w, "blind")
                     for w in ("db1", "sym4", "coif1", "fk4"))
    wpd = tuple(MethodSpec("wpd", w) for w in list_filters())
    cca = tuple(MethodSpec("wpd-cca", w) for w in CCA_WAVELETS)
    return wpd + cca


@dataclass(frozen=True)
class PreprocessSettings:
    """Per-record conditioning applied before denoising (None disables a step)."""

    target_fs: Optional[float] = None
    notch_base_hz: Optional[float] = 50.0
    notch_order: int = 3
    poly_order: Optional[int] = 5
    zero_phase: bool = True


def default_preprocess(protocol):
    """Benchmark protocols condition records; the synthetic suite is used as-is."""
    modality = _PROTOCOL_MODALITY.get(protocol)
    if modality is None:
        return None
    return PreprocessSettings(target_fs=_TARGET_FS[modality])


def apply_preprocess(record, settings):
    """Decimate, notch, and detrend both channels of a record identically."""
    channels = []
    fs = record.fs
    for column in (record.corrupted, record.reference):
        sig = Signal(column, record.fs)
        if settings.target_fs is not None and record.fs != settings.target_fs:
            ratio = record.fs / settings.target_fs
            factor = int(round(ratio))
            if factor < 1 or abs(ratio - factor) > 1e-9:
                raise ValueError(
                    f"record {record.id!r}: cannot decimate {record.fs:g} Hz to "
                    f"{settings.target_fs:g} Hz by an integer factor")
            sig = decimate(sig, factor)
        if settings.notch_base_hz is not None:
            sig = notch(sig, settings.notch_base_hz, order=settings.notch_order,
                        zero_phase=settings.zero_phase)
        if settings.poly_order is not None:
            sig = detrend_poly(sig, settings.poly_order)
        channels.append(sig.samples)
        fs = sig.fs
    return record.with_channels(channels[0], channels[1], fs=fs)


@dataclass(frozen=True)
class RunPlan:
    """Everything needed to reproduce one evaluation run."""

    protocol: str
    methods: Tuple[Union[MethodSpec, str], ...] = ()
    data_dir: Optional[str] = None
    workers: int = 1
    snr_mode: str = "residual"
    level: int = 4
    suite_records: int = 10
    suite_seed: int = 2024
    suite_duration_s: float = 540.0
    preprocess: Union[str, PreprocessSettings, None] = "auto"

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"protocol must be one of {PROTOCOLS}, "
                             f"got {self.protocol!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.snr_mode not in ("residual", "raw"):
            raise ValueError(f"snr_mode must be 'residual' or 'raw', "
                             f"got {self.snr_mode!r}")
        methods = tuple(parse_method(m) for m in self.methods)
        if not methods:
            methods = default_methods(self.protocol)
        object.__setattr__(self, "methods", methods)
        if isinstance(self.preprocess, str) and self.preprocess not in ("auto", "off"):
            raise ValueError("preprocess must be 'auto', 'off', or settings, "
                             f"got {self.preprocess!r}")

    def resolved_preprocess(self):
        if self.preprocess == "auto":
            return default_preprocess(self.protocol)
        if self.preprocess == "off":
            return None
        return self.preprocess


def load_records(plan):
    """Load and order the record suite for a plan, dropping excluded ids."""
    if plan.protocol == "synthetic":
        records = default_suite(plan.suite_records, plan.suite_seed,
                                duration_s=plan.suite_duration_s)
    else:
        if plan.data_dir is None:
            raise ValueError(
                f"protocol {plan.protocol!r} reads recordings from disk; "
                "set data_dir (or the WPDENOISE_DATA_DIR environment variable)")
        paths = sorted(glob.glob(os.path.join(plan.data_dir, "*.csv")))
        modality = _PROTOCOL_MODALITY[plan.protocol]
        records = [r for r in map(read_record, paths) if r.modality == modality]
        if not records:
            raise ValueError(f"no {modality} records found in {plan.data_dir!r}")
    seen = set()
    for record in records:
        if record.id in seen:
            raise ValueError(f"duplicate record id {record.id!r}")
        seen.add(record.id)
    excluded = set(EXCLUDED_IDS[plan.protocol])
    kept = [r for r in records if r.id not in excluded]
    return sorted(kept, key=lambda r: r.id)


def _run_method(record, spec, snr_mode, level):
    corrupted = record.corrupted_signal()
    reference = record.reference_signal()
    if spec.method == "wpd":
        result = denoise_wpd(corrupted,
                             None if spec.selector == "blind" else reference,
                             wavelet=spec.wavelet, level=level,
                             selector=spec.selector)
    else:
        result = denoise_wpd_cca(corrupted, reference, wavelet=spec.wavelet,
                                 level=level)
    pair = score(record.reference, record.corrupted, result.cleaned.samples,
                 snr_mode=snr_mode)
    return EvalRow(record_id=record.id, method=spec.method, wavelet=spec.wavelet,
                   selector=spec.selector, delta_snr_db=pair.delta_snr_db,
                   eta_percent=pair.eta_percent, rho_before=pair.rho_before,
                   rho_after=pair.rho_after,
                   removed_components=result.removed_components)


def evaluate_record(record, methods, snr_mode="residual", settings=None,
                    expected_fs=None, level=4):
    """Score every method on one record; failures become error rows."""
    prep_error = None
    if settings is not None:
        try:
            record = apply_preprocess(record, settings)
        except ValueError as exc:
            prep_error = str(exc)
    if prep_error is None and expected_fs is not None and record.fs != expected_fs:
        prep_error = (f"record {record.id!r} is at {record.fs:g} Hz after "
                      f"preprocessing, expected {expected_fs:g} Hz")
    rows = []
    for spec in methods:
        if prep_error is not None:
            rows.append(EvalRow(record_id=record.id, method=spec.method,
                                wavelet=spec.wavelet, selector=spec.selector,
                                error=prep_error))
            continue
        try:
            rows.append(_run_method(record, spec, snr_mode, level))
        except Exception as exc:
            rows.append(EvalRow(record_id=record.id, method=spec.method,
                                wavelet=spec.wavelet, selector=spec.selector,
                                error=str(exc)))
    return tuple(rows)


def _evaluate_task(args):
    return evaluate_record(*args)


def evaluate_plan(plan):
    """Run a plan end to end and return the assembled report.

    Parallelism splits across records only, so per-record results (and the
    serialized report) are identical for any ``workers`` value.
    """
    records = load_records(plan)
    settings = plan.resolved_preprocess()
    modality = _PROTOCOL_MODALITY.get(plan.protocol)
    expected_fs = _TARGET_FS[modality] if (modality and settings) else None
    tasks = [(record, plan.methods, plan.snr_mode, settings, expected_fs,
              plan.level) for record in records]
    if plan.workers == 1 or len(records) <= 1:
        per_record = [_evaluate_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(plan.workers, len(records))) as pool:
            per_record = list(pool.map(_evaluate_task, tasks))
    rows = [row for group in per_record for row in group]
    return build_report(rows, plan.protocol, EXCLUDED_IDS[plan.protocol])
