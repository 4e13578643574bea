"""Wavelet-packet motion-artifact removal for single-channel EEG and fNIRS.

The package decomposes a recording into full-rate sub-band components with a
wavelet packet filter bank, optionally separates the sub-band stack further
with canonical correlation analysis, zeroes the artifact-dominated
components, and scores the cleaned signal against a paired ground-truth
reference.
"""

from .cca import CompanionCCA, build_delayed
from .filters import (WaveletFilter, get_filter, highpass_from_lowpass,
                      list_filters, resolve_filter)
from .harness import (EXCLUDED_IDS, PROTOCOLS, MethodSpec, PreprocessSettings,
                      RunPlan, default_methods, evaluate_plan, evaluate_record,
                      load_records, parse_method)
from .metrics import (ScorePair, delta_snr, eta, eta_from_correlations,
                      eta_general, pearson, score)
from .pipeline import (CCA_WAVELETS, CleanResult, WpdCcaDenoiser, WpdDenoiser,
                       denoise_wpd, denoise_wpd_cca, select_greedy_oracle)
from .preprocess import decimate, detrend_poly, notch
from .records import (Record, default_suite, read_record, synth_record,
                      write_record)
from .reports import (EvalReport, EvalRow, SummaryRow, build_report, from_json,
                      to_csv, to_json, to_markdown)
from .signals import Signal
from .wpd import SubbandSet, WpdTree, decompose, reconstruct, subband_components

__version__ = "0.1.0"

__all__ = [
    "CCA_WAVELETS", "CleanResult", "CompanionCCA", "EXCLUDED_IDS",
    "EvalReport", "EvalRow", "MethodSpec", "PROTOCOLS", "PreprocessSettings",
    "Record", "RunPlan", "ScorePair", "Signal", "SubbandSet", "SummaryRow",
    "WaveletFilter", "WpdCcaDenoiser", "WpdDenoiser", "WpdTree",
    "build_delayed", "build_report", "decimate", "decompose",
    "default_methods", "default_suite", "delta_snr", "denoise_wpd",
    "denoise_wpd_cca", "detrend_poly", "eta", "eta_from_correlations",
    "eta_general", "evaluate_plan", "evaluate_record", "from_json",
    "get_filter", "highpass_from_lowpass", "list_filters", "load_records",
    "notch", "parse_method", "pearson", "read_record", "reconstruct",
    "resolve_filter", "score", "select_greedy_oracle", "subband_components",
    "synth_record", "to_csv", "to_json", "to_markdown", "write_record",
]
