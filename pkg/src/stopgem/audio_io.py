"""WAV reading and writing.

Only mono 16-bit integer PCM is accepted.  Anything else (stereo, float,
compressed, 8/24-bit) is rejected rather than coerced, so that burst-power
values stay comparable across files.  Samples are normalized to [-1, 1]
by dividing the 16-bit integers by 32768.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NotWavError, TruncatedFileError, UnsupportedFormatError

INT16_SCALE = 32768.0


@dataclass(frozen=True)
class Waveform:
    """Mono audio with sample-rate metadata.

    ``samples`` is a float64 array in [-1, 1]; ``source_path`` is a label
    only (never reopened).
    """

    samples: np.ndarray = field(repr=False)
    sample_rate_hz: int
    source_path: str = ""

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ValueError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        arr = np.asarray(self.samples, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __eq__(self, other):
        if not isinstance(other, Waveform):
            return NotImplemented
        return (
            self.sample_rate_hz == other.sample_rate_hz
            and self.samples.shape == other.samples.shape
            and bool(np.all(self.samples == other.samples))
        )

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz

    def sample_index(self, t_s: float) -> int:
        """Nearest sample index for a time, clipped to the valid range."""
        return int(min(max(round(t_s * self.sample_rate_hz), 0), len(self.samples)))


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) < n:
        raise TruncatedFileError(f"file ends inside {what} ({len(data)} of {n} bytes)")
    return data


def load_waveform(path: str | Path) -> Waveform:
    """Load a mono 16-bit PCM WAV file.

    Raises NotWavError for non-RIFF/WAVE files, UnsupportedFormatError for
    stereo/non-PCM/non-16-bit content, TruncatedFileError when the file is
    shorter than its declared chunk sizes.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.read(12)
        if len(header) < 12 or header[:4] != b"RIFF" or header[8:12] != b"WAVE":
            raise NotWavError(f"{path}: not a RIFF/WAVE file")

        fmt = None
        while True:
            chunk_header = fh.read(8)
            if len(chunk_header) == 0:
                break
            if len(chunk_header) < 8:
                raise TruncatedFileError(f"{path}: dangling chunk header")
            chunk_id, chunk_size = struct.unpack("<4sI", chunk_header)

            if chunk_id == b"fmt ":
                body = _read_exact(fh, chunk_size, "fmt chunk")
                if chunk_size < 16:
                    raise UnsupportedFormatError(f"{path}: fmt chunk too short")
                audio_format, n_channels, sample_rate, _, _, bits = struct.unpack(
                    "<HHIIHH", body[:16]
                )
                if audio_format != 1:
                    raise UnsupportedFormatError(
                        f"{path}: format code {audio_format}, only PCM (1) supported"
                    )
                if n_channels != 1:
                    raise UnsupportedFormatError(
                        f"{path}: {n_channels} channels, only mono supported"
                    )
                if bits != 16:
                    raise UnsupportedFormatError(
                        f"{path}: {bits} bits/sample, only 16 supported"
                    )
                fmt = (sample_rate, bits)
            elif chunk_id == b"data":
                if fmt is None:
                    raise UnsupportedFormatError(f"{path}: data chunk before fmt chunk")
                raw = _read_exact(fh, chunk_size, "data chunk")
                if chunk_size % 2 != 0:
                    raise TruncatedFileError(f"{path}: odd data chunk size {chunk_size}")
                ints = np.frombuffer(raw, dtype="<i2")
                samples = ints.astype(np.float64) / INT16_SCALE
                return Waveform(samples, fmt[0], source_path=str(path))
            else:
                # skip unknown chunks (LIST, fact, ...), padded to even size
                skip = chunk_size + (chunk_size % 2)
                _read_exact(fh, skip, f"{chunk_id!r} chunk")

        raise TruncatedFileError(f"{path}: no data chunk found")


def write_waveform(path: str | Path, wave: Waveform) -> None:
    """Write a Waveform as canonical mono 16-bit PCM (44-byte header).

    Samples are clipped to [-1, 1) grid values; a waveform produced by the
    synthesizer (already on the int16 grid) round-trips exactly.
    """
    ints = np.clip(np.rint(wave.samples * INT16_SCALE), -32768, 32767).astype("<i2")
    data = ints.tobytes()
    n = len(data)
    header = b"RIFF" + struct.pack("<I", 36 + n) + b"WAVE"
    header += b"fmt " + struct.pack(
        "<IHHIIHH", 16, 1, 1, wave.sample_rate_hz, wave.sample_rate_hz * 2, 2, 16
    )
    header += b"data" + struct.pack("<I", n)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data)
