"""Paired-record file format, validation, and synthetic record generation.

A record file is CSV with a small comment header::

    # id=eeg_03
    # modality=eeg
    # fs=256.0
    # wavelength_nm=690        (optional, fNIRS only)
    corrupted,reference
    1.25,1.5
    ...

Both columns must be finite and of equal length; numbers are written with
full double precision so a write/read round trip is bit-exact.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .signals import Signal, as_finite_array

MODALITIES = ("eeg", "fnirs")


@dataclass(frozen=True)
class Record:
    """A motion-corrupted recording paired with its clean ground truth."""

    id: str
    modality: str
    fs: float
    corrupted: np.ndarray
    reference: np.ndarray
    wavelength_nm: Optional[int] = None

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ValueError(
                f"modality must be one of {MODALITIES}, got {self.modality!r}")
        if not (self.fs > 0):
            raise ValueError(f"fs must be positive, got {self.fs}")
        corrupted = as_finite_array(self.corrupted, "corrupted")
        reference = as_finite_array(self.reference, "reference")
        if corrupted.size != reference.size:
            raise ValueError(
                f"corrupted ({corrupted.size}) and reference ({reference.size}) "
                "must have equal length")
        corrupted.flags.writeable = False
        reference.flags.writeable = False
        object.__setattr__(self, "corrupted", corrupted)
        object.__setattr__(self, "reference", reference)

    def corrupted_signal(self):
        return Signal(self.corrupted, self.fs)

    def reference_signal(self):
        return Signal(self.reference, self.fs)

    def with_channels(self, corrupted, reference, fs=None):
        """Copy of the record with replaced sample columns (and optionally fs)."""
        return replace(self, corrupted=np.asarray(corrupted, dtype=np.float64),
                       reference=np.asarray(reference, dtype=np.float64),
                       fs=self.fs if fs is None else fs)


def write_record(record, path):
    """Serialize a record to the CSV format above."""
    lines = [f"# id={record.id}",
             f"# modality={record.modality}",
             f"# fs={record.fs!r}"]
    if record.wavelength_nm is not None:
        lines.append(f"# wavelength_nm={record.wavelength_nm}")
    lines.append("corrupted,reference")
    for c, r in zip(record.corrupted, record.reference):
        lines.append(f"{float(c)!r},{float(r)!r}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_error(path, lineno, message):
    return ValueError(f"{path}:{lineno}: {message}")


def read_record(path):
    """Parse and validate a record file; errors carry the offending line number."""
    header = {}
    corrupted = []
    reference = []
    saw_columns = False
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not saw_columns:
                if line.startswith("# "):
                    body = line[2:]
                    if "=" not in body:
                        raise _parse_error(path, lineno, f"malformed header line {line!r}")
                    key, _, value = body.partition("=")
                    if key not in ("id", "modality", "fs", "wavelength_nm"):
                        raise _parse_error(path, lineno, f"unknown header key {key!r}")
                    if key in header:
                        raise _parse_error(path, lineno, f"duplicate header key {key!r}")
                    header[key] = value
                    continue
                if line != "corrupted,reference":
                    raise _parse_error(
                        path, lineno,
                        f"expected column header 'corrupted,reference', got {line!r}")
                saw_columns = True
                continue
            if line == "":
                raise _parse_error(path, lineno, "blank line in data section")
            fields = line.split(",")
            if len(fields) != 2:
                short = "reference" if len(fields) < 2 else "corrupted/reference"
                raise _parse_error(
                    path, lineno,
                    f"expected 2 columns, got {len(fields)} (missing {short} value)")
            row = []
            for name, tok in zip(("corrupted", "reference"), fields):
                try:
                    value = float(tok)
                except ValueError:
                    raise _parse_error(
                        path, lineno, f"{name} value {tok!r} is not a number") from None
                if not np.isfinite(value):
                    raise _parse_error(path, lineno, f"{name} value {tok!r} is not finite")
                row.append(value)
            corrupted.append(row[0])
            reference.append(row[1])

    if not saw_columns:
        raise _parse_error(path, 0, "missing column header 'corrupted,reference'")
    for key in ("id", "modality", "fs"):
        if key not in header:
            raise _parse_error(path, 0, f"missing required header key {key!r}")
    if not corrupted:
        raise _parse_error(path, 0, "record has no data rows")
    try:
        fs = float(header["fs"])
    except ValueError:
        raise _parse_error(path, 0, f"fs value {header['fs']!r} is not a number") from None
    wavelength = None
    if "wavelength_nm" in header:
        try:
            wavelength = int(header["wavelength_nm"])
        except ValueError:
            raise _parse_error(
                path, 0, f"wavelength_nm value {header['wavelength_nm']!r} "
                "is not an integer") from None
    return Record(id=header["id"], modality=header["modality"], fs=fs,
                  corrupted=np.array(corrupted), reference=np.array(reference),
                  wavelength_nm=wavelength)


def synth_record(seed, duration_s=540.0, fs=256.0, artifact_amp=4.0,
                 burst_period_s=120.0, burst_duration_s=None, noise_amp=0.02,
                 modality="eeg", record_id=None, wavelength_nm=None):
    """Generate a deterministic synthetic record with periodic drift bursts.

    The clean reference is a pair of jittered rhythmic tones (near 11.5 and
    21.5 Hz at 256 Hz; the frequencies scale with ``fs``) over a small white
    noise floor.  The corrupted channel adds Hann-windowed slow sinusoidal
    drift bursts (0.25-0.45 Hz) of 10-25 s, one per ``burst_period_s``,
    starting at half a period.  ``artifact_amp`` scales each burst relative
    to the clean signal's RMS; zero produces an artifact-free pair.
    ``burst_duration_s`` fixes the burst length instead of drawing it.
    """
    if duration_s <= 0 or fs <= 0:
        raise ValueError("duration_s and fs must be positive")
    if burst_duration_s is not None and burst_duration_s > burst_period_s:
        raise ValueError("burst_duration_s cannot exceed burst_period_s")
    n = int(round(duration_s * fs))
    first_onset = burst_period_s / 2.0
    min_duration = burst_duration_s if burst_duration_s is not None else 10.0
    if artifact_amp != 0 and first_onset + min_duration > duration_s:
        raise ValueError(
            f"burst epoch ({first_onset:g}s + {min_duration:g}s) does not fit "
            f"in a {duration_s:g}s record")

    rng = np.random.default_rng(seed)
    t = np.arange(n) / fs

    reference = np.zeros(n)
    for amp, lo, hi in ((1.0, 10.5, 12.5), (0.4, 19.0, 24.0)):
        freq = rng.uniform(lo, hi) * fs / 256.0
        reference += amp * np.sin(2 * np.pi * freq * t + rng.uniform(0, 2 * np.pi))
    if noise_amp:
        reference += noise_amp * rng.standard_normal(n)

    corrupted = reference.copy()
    if artifact_amp != 0:
        clean_rms = float(np.sqrt(np.mean(reference ** 2)))
        onset = first_onset
        while True:
            if burst_duration_s is not None:
                length = burst_duration_s
            else:
                length = rng.uniform(10.0, 25.0)
            if onset + length > duration_s + 1e-9:
                break
            n_burst = int(round(length * fs))
            start = int(round(onset * fs))
            f_drift = rng.uniform(0.25, 0.45)
            phase = rng.uniform(0, 2 * np.pi)
            tb = t[start:start + n_burst]
            burst = np.hanning(n_burst) * np.sin(2 * np.pi * f_drift * (tb - tb[0]) + phase)
            corrupted[start:start + n_burst] += artifact_amp * clean_rms * burst
            onset += burst_period_s

    if record_id is None:
        record_id = f"synth_{int(seed):04d}"
    return Record(id=record_id, modality=modality, fs=fs, corrupted=corrupted,
                  reference=reference, wavelength_nm=wavelength_nm)


def default_suite(n_records=10, base_seed=2024, **kwargs):
    """The seeded synthetic evaluation suite: ``n_records`` drift-burst records."""
    return tuple(synth_record(base_seed + i, **kwargs) for i in range(n_records))
