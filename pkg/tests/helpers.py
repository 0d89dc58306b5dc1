"""Shared test fixtures: hand-built WAV bytes and published-table constants."""

from __future__ import annotations

import struct

import numpy as np

# --- published table values used as fixtures and expected cells ---

# mean durations (ms) by gemination form and burst count:
# Vd, Cd, C1d, C2d, Cld, Cl1d, Cl2d, Bd, B1d, B2d
DURATION_TABLE = {
    ("lexical", "single_burst"): [70.9, 114.8, None, None, 89.1, None, None, 25.7, None, None],
    ("lexical", "double_burst"): [78.8, 129.1, 61.4, 67.7, 87.9, 48.9, 39.0, 41.2, 12.5, 28.7],
    ("lexical", "combined"): [71.9, 116.6, None, None, 88.9, None, None, 27.6, None, None],
    ("syntactic", "single_burst"): [56.3, 102.8, None, None, 83.0, None, None, 19.8, None, None],
    ("syntactic", "double_burst"): [59.7, 97.2, 46.2, 50.9, 57.7, 35.3, 22.4, 39.5, 10.9, 28.6],
    ("syntactic", "combined"): [56.6, 102.2, None, None, 80.5, None, None, 21.7, None, None],
}
DURATION_COLUMNS = ["Vd_ms", "Cd_ms", "C1d_ms", "C2d_ms", "Cld_ms",
                    "Cl1d_ms", "Cl2d_ms", "Bd_ms", "B1d_ms", "B2d_ms"]

# single/double burst counts by speaker and form
BURST_COUNT_TABLE = {
    ("MS", "lexical"): (105, 15),
    ("MS", "syntactic"): (69, 7),
    ("FS", "lexical"): (105, 15),
    ("FS", "syntactic"): (68, 8),
}

# singleton vs geminate: Vd, Cd, Cld, Bd, ratio
SINGLETON_ROW = [85.07, 55.48, 35.9, 19.58, 0.75]
GEMINATE_ROW = [65.98, 111.01, 85.69, 25.32, 1.84]

# mean per-token ratios by form and burst count
RATIO_BY_CLASS = {
    ("lexical", "single_burst"): 1.76,
    ("lexical", "double_burst"): 1.78,
    ("syntactic", "single_burst"): 1.99,
    ("syntactic", "double_burst"): 1.73,
}


def mk_wav_bytes(
    data: bytes,
    *,
    magic: bytes = b"RIFF",
    wave_id: bytes = b"WAVE",
    fmt_code: int = 1,
    channels: int = 1,
    rate: int = 44100,
    bits: int = 16,
    declared_data_size: int | None = None,
    extra_chunk: bytes | None = None,
) -> bytes:
    """Hand-packed WAV container for reader tests."""
    if declared_data_size is None:
        declared_data_size = len(data)
    block_align = channels * bits // 8
    fmt = struct.pack(
        "<HHIIHH", fmt_code, channels, rate, rate * block_align, block_align, bits
    )
    body = b"fmt " + struct.pack("<I", len(fmt)) + fmt
    if extra_chunk is not None:
        body += extra_chunk
    body += b"data" + struct.pack("<I", declared_data_size) + data
    return magic + struct.pack("<I", 4 + len(body)) + wave_id + body


def pcm16(values) -> bytes:
    return np.asarray(values, dtype="<i2").tobytes()


def fixture_rows() -> list[dict[str, str]]:
    """Token CSV rows reconstructed from the published group means/counts.

    Every token of a (speaker, form, burst-count) cell carries that cell's
    printed mean values verbatim, so report group means echo the tables.
    """
    power = {"single_burst": (7.5e-3, None), "double_burst": (4.8e-3, 1.92e-2)}
    rows: list[dict[str, str]] = []
    sentence = 0

    def add(speaker, gem_type, burst_count, count, durations, ratio, label):
        nonlocal sentence
        p1, p2 = power[burst_count]
        for _ in range(count):
            sentence += 1
            row = {
                "speaker": speaker,
                "sentence_id": str(sentence),
                "repetition": "1",
                "word": f"{gem_type}_{burst_count}",
                "consonant": label,
                "gem_type": gem_type,
                "burst_count": "single" if burst_count == "single_burst" else "double",
                "P_burst1": f"{p1:.5e}",
                "P_burst2": "" if p2 is None else f"{p2:.5e}",
                "ratio": f"{ratio:.6g}",
            }
            for col, value in zip(DURATION_COLUMNS, durations):
                row[col] = "" if value is None else f"{value:.2f}"
            rows.append(row)

    for (speaker, gem_type), (n_single, n_double) in sorted(BURST_COUNT_TABLE.items()):
        add(speaker, gem_type, "single_burst", n_single,
            DURATION_TABLE[(gem_type, "single_burst")],
            RATIO_BY_CLASS[(gem_type, "single_burst")], "tt")
        add(speaker, gem_type, "double_burst", n_double,
            DURATION_TABLE[(gem_type, "double_burst")],
            RATIO_BY_CLASS[(gem_type, "double_burst")], "tt")

    vd, cd, cld, bd, ratio = SINGLETON_ROW
    for speaker in ("FS", "MS"):
        add(speaker, "none", "single_burst", 100,
            [vd, cd, None, None, cld, None, None, bd, None, None], ratio, "t")
    return rows
