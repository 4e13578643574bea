"""Command-line interface.

Subcommands::

    wpdenoise synth       write a synthetic corrupted/reference record
    wpdenoise preprocess  decimate / notch / detrend a record file
    wpdenoise denoise     clean one record and print its scores as JSON
    wpdenoise evaluate    run a protocol over a record suite, write reports
    wpdenoise report      re-render a saved JSON report as markdown or CSV

``evaluate`` looks for recordings in ``--data-dir`` or, failing that, the
``WPDENOISE_DATA_DIR`` environment variable.
"""

import argparse
import json
import os
import sys
from dataclasses import replace

from . import reports
from .harness import (PROTOCOLS, PreprocessSettings, RunPlan, evaluate_plan,
                      parse_method)
from .metrics import score
from .pipeline import denoise_wpd, denoise_wpd_cca
from .preprocess import decimate, detrend_poly, notch
from .records import read_record, synth_record, write_record
from .signals import Signal


def _add_synth(sub):
    p = sub.add_parser("synth", help="generate a synthetic record")
    p.add_argument("--out", required=True, help="output record CSV path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--duration-s", type=float, default=540.0)
    p.add_argument("--fs", type=float, default=256.0)
    p.add_argument("--artifact-amp", type=float, default=4.0,
                   help="burst amplitude relative to clean RMS (0 = no artifact)")
    p.add_argument("--burst-period-s", type=float, default=120.0)
    p.add_argument("--burst-duration-s", type=float, default=None,
                   help="fixed burst length in seconds (default: drawn from 10-25 s)")
    p.add_argument("--modality", choices=("eeg", "fnirs"), default="eeg")
    p.add_argument("--id", dest="record_id", default=None)
    p.add_argument("--wavelength-nm", type=int, default=None)
    p.set_defaults(func=cmd_synth)


def cmd_synth(args):
    record = synth_record(args.seed, duration_s=args.duration_s, fs=args.fs,
                          artifact_amp=args.artifact_amp,
                          burst_period_s=args.burst_period_s,
                          burst_duration_s=args.burst_duration_s,
                          modality=args.modality, record_id=args.record_id,
                          wavelength_nm=args.wavelength_nm)
    write_record(record, args.out)
    print(f"wrote {record.id} ({record.corrupted.size} samples at "
          f"{record.fs:g} Hz) to {args.out}")
    return 0


def _add_preprocess(sub):
    p = sub.add_parser("preprocess", help="condition a record file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--decim", type=int, default=1,
                   help="integer decimation factor (1 = keep rate)")
    p.add_argument("--notch-hz", type=float, default=50.0,
                   help="power-line base frequency (0 disables the notch)")
    p.add_argument("--notch-order", type=int, default=3)
    p.add_argument("--poly-order", type=int, default=5,
                   help="detrending polynomial order (negative disables)")
    p.add_argument("--no-zero-phase", action="store_true",
                   help="use causal notch filtering instead of zero-phase")
    p.set_defaults(func=cmd_preprocess)


def cmd_preprocess(args):
    record = read_record(args.infile)
    channels = []
    fs = record.fs
    for column in (record.corrupted, record.reference):
        sig = Signal(column, record.fs)
        sig = decimate(sig, args.decim)
        if args.notch_hz > 0:
            sig = notch(sig, args.notch_hz, order=args.notch_order,
                        zero_phase=not args.no_zero_phase)
        if args.poly_order >= 0:
            sig = detrend_poly(sig, args.poly_order)
        channels.append(sig.samples)
        fs = sig.fs
    write_record(record.with_channels(channels[0], channels[1], fs=fs), args.out)
    print(f"wrote {record.id} ({channels[0].size} samples at {fs:g} Hz) "
          f"to {args.out}")
    return 0


def _add_denoise(sub):
    p = sub.add_parser("denoise", help="clean one record and score it")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None,
                   help="optional path for the cleaned record CSV")
    p.add_argument("--method", choices=("wpd", "wpd-cca"), default="wpd")
    p.add_argument("--wavelet", default="db1")
    p.add_argument("--level", type=int, default=4)
    p.add_argument("--selector", choices=("oracle", "blind"), default="oracle")
    p.add_argument("--snr-mode", choices=("residual", "raw"), default="residual")
    p.set_defaults(func=cmd_denoise)


def cmd_denoise(args):
    record = read_record(args.infile)
    corrupted = record.corrupted_signal()
    reference = record.reference_signal()
    if args.method == "wpd":
        result = denoise_wpd(corrupted,
                             None if args.selector == "blind" else reference,
                             wavelet=args.wavelet, level=args.level,
                             selector=args.selector)
    else:
        if args.selector == "blind":
            raise ValueError("the blind selector applies only to --method wpd")
        result = denoise_wpd_cca(corrupted, reference, wavelet=args.wavelet,
                                 level=args.level)
    pair = score(record.reference, record.corrupted, result.cleaned.samples,
                 snr_mode=args.snr_mode)
    payload = {
        "record_id": record.id,
        "method": args.method,
        "wavelet": args.wavelet,
        "selector": args.selector,
        "delta_snr_db": pair.delta_snr_db,
        "eta_percent": pair.eta_percent,
        "rho_before": pair.rho_before,
        "rho_after": pair.rho_after,
        "removed_components": list(result.removed_components),
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    if args.out is not None:
        cleaned = replace(record, id=record.id + "_cleaned",
                          corrupted=result.cleaned.samples)
        write_record(cleaned, args.out)
    return 0


def _add_evaluate(sub):
    p = sub.add_parser("evaluate", help="run an evaluation protocol")
    p.add_argument("--protocol", choices=PROTOCOLS, required=True)
    p.add_argument("--methods", default=None,
                   help="comma-separated method specs like "
                        "'wpd:db1,wpd-cca:fk4' (default: protocol set)")
    p.add_argument("--data-dir", default=None,
                   help="record directory (default: $WPDENOISE_DATA_DIR)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--snr-mode", choices=("residual", "raw"), default="residual")
    p.add_argument("--level", type=int, default=4)
    p.add_argument("--suite-records", type=int, default=10)
    p.add_argument("--suite-seed", type=int, default=2024)
    p.add_argument("--suite-duration-s", type=float, default=540.0)
    p.add_argument("--no-preprocess", action="store_true",
                   help="skip the protocol's decimate/notch/detrend defaults")
    p.add_argument("--notch-hz", type=float, default=None,
                   help="override the preprocessing notch base frequency")
    p.add_argument("--poly-order", type=int, default=None,
                   help="override the preprocessing detrend order")
    p.add_argument("--out-dir", default=".",
                   help="directory for report.json/report.csv/report.md")
    p.set_defaults(func=cmd_evaluate)


def cmd_evaluate(args):
    methods = ()
    if args.methods:
        methods = tuple(parse_method(tok.strip())
                        for tok in args.methods.split(",") if tok.strip())
    data_dir = args.data_dir or os.environ.get("WPDENOISE_DATA_DIR") or None
    preprocess = "auto"
    if args.no_preprocess:
        preprocess = "off"
    elif args.notch_hz is not None or args.poly_order is not None:
        base = PreprocessSettings()
        preprocess = replace(
            base,
            notch_base_hz=args.notch_hz if args.notch_hz is not None
            else base.notch_base_hz,
            poly_order=args.poly_order if args.poly_order is not None
            else base.poly_order)
    plan = RunPlan(protocol=args.protocol, methods=methods, data_dir=data_dir,
                   workers=args.workers, snr_mode=args.snr_mode,
                   level=args.level, suite_records=args.suite_records,
                   suite_seed=args.suite_seed,
                   suite_duration_s=args.suite_duration_s,
                   preprocess=preprocess)
    report = evaluate_plan(plan)
    expected = len({r.record_id for r in report.rows}) * len(plan.methods)
    if report.rows and len(report.rows) != expected:
        raise ValueError(f"report has {len(report.rows)} rows, "
                         f"expected {expected} (records x methods)")
    os.makedirs(args.out_dir, exist_ok=True)
    for name, text in (("report.json", reports.to_json(report)),
                       ("report.csv", reports.to_csv(report)),
                       ("report.md", reports.to_markdown(report))):
        with open(os.path.join(args.out_dir, name), "w", encoding="ascii") as fh:
            fh.write(text)
    print(reports.to_markdown(report), end="")
    return 0


def _add_report(sub):
    p = sub.add_parser("report", help="re-render a saved JSON report")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("markdown", "csv", "json"),
                   default="markdown")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_report)


def cmd_report(args):
    with open(args.infile, "r", encoding="ascii") as fh:
        report = reports.from_json(fh.read())
    text = {"markdown": reports.to_markdown, "csv": reports.to_csv,
            "json": reports.to_json}[args.format](report)
    if args.out is None:
        print(text, end="")
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wpdenoise",
        description="Wavelet-packet motion-artifact removal for single-channel "
                    "EEG and fNIRS recordings.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_synth(sub)
    _add_preprocess(sub)
    _add_denoise(sub)
    _add_evaluate(sub)
    _add_report(sub)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
