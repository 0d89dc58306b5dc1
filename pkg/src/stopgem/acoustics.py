"""Short-time energy analysis and closure/burst event detection.

The detector operationalizes what a phonetician does by eye on a waveform
and spectrogram: inside an annotated consonant interval, a burst is a run
of frames whose energy rises above a threshold derived from the closure
floor and the preceding vowel's peak energy.  Up to two bursts per
consonant are expected; the sub-threshold gap between them is the second
consonant's closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .audio_io import Waveform
from .errors import (
    DegenerateWindowError,
    EmptyIntervalError,
    InconsistentEventsError,
    IntervalOutOfRangeError,
    MoreThanTwoBurstsError,
    NoBurstFoundError,
)

CLOSURE = "closure"
BURST = "burst"

SINGLE_BURST = "single"
DOUBLE_BURST = "double"


@dataclass(frozen=True)
class DetectorConfig:
    """Thresholds for burst detection.  SI units / dimensionless factors.

    The 5 ms window and 1 ms hop resolve bursts down to ~10 ms.  The
    energy thresholds have no counterpart in manual analysis; they were
    tuned against the synthetic-stimulus oracle and are all overridable.
    """

    window_s: float = 0.005
    hop_s: float = 0.001
    rise_factor: float = 10.0       # threshold over the closure-floor median
    rel_floor: float = 0.001        # threshold relative to vowel peak (-30 dB)
    min_gap_s: float = 0.015        # sub-threshold gap that separates two bursts
    min_offset_s: float = 0.003     # sub-threshold time that closes a burst
    floor_run_s: float = 0.020      # run length for the closure-floor estimate

    def __post_init__(self):
        for name in ("window_s", "hop_s", "rise_factor", "rel_floor",
                     "min_gap_s", "min_offset_s", "floor_run_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"DetectorConfig.{name} must be positive")


@dataclass(frozen=True)
class EnergyContour:
    frame_energies: np.ndarray
    frame_hop_s: float
    frame_len_s: float
    origin_s: float

    def __post_init__(self):
        arr = np.asarray(self.frame_energies, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "frame_energies", arr)

    def time_of(self, i: int) -> float:
        return self.origin_s + i * self.frame_hop_s

    def times(self) -> np.ndarray:
        return self.origin_s + np.arange(len(self.frame_energies)) * self.frame_hop_s


@dataclass(frozen=True)
class AcousticEvent:
    kind: str               # CLOSURE or BURST
    start_s: float
    end_s: float
    peak_power: float = 0.0  # bursts: mean squared amplitude over the event

    def __post_init__(self):
        if self.kind not in (CLOSURE, BURST):
            raise InconsistentEventsError(f"unknown event kind {self.kind!r}")
        if self.end_s <= self.start_s:
            raise InconsistentEventsError(
                f"{self.kind} event has end {self.end_s} <= start {self.start_s}"
            )
        if self.kind == BURST and self.peak_power < 0:
            raise InconsistentEventsError("burst with negative power")

    @property
    def duration_ms(self) -> float:
        return (self.end_s - self.start_s) * 1000.0


@dataclass(frozen=True)
class EventSequence:
    """Alternating closure/burst events inside one consonant interval."""

    events: tuple[AcousticEvent, ...]
    consonant_interval: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(
            self, "consonant_interval", tuple(float(t) for t in self.consonant_interval)
        )
        check_alternation(self.events, self.consonant_interval)

    def bursts(self) -> list[AcousticEvent]:
        return [e for e in self.events if e.kind == BURST]

    def closures(self) -> list[AcousticEvent]:
        return [e for e in self.events if e.kind == CLOSURE]


def check_alternation(events, interval) -> None:
    """Raise InconsistentEventsError unless events are a legal sequence.

    Legal: closure, burst  or  closure, burst, closure, burst; time-ordered,
    non-overlapping, inside the interval.
    """
    kinds = [e.kind for e in events]
    if kinds not in ([CLOSURE, BURST], [CLOSURE, BURST, CLOSURE, BURST]):
        raise InconsistentEventsError(
            f"expected closure/burst alternation with 1 or 2 bursts, got {kinds}"
        )
    lo, hi = interval
    eps = 1e-9
    prev_end = lo - eps
    for e in events:
        if e.start_s < prev_end - eps:
            raise InconsistentEventsError(
                f"{e.kind} at {e.start_s:.4f} overlaps the previous event"
            )
        if e.start_s < lo - eps or e.end_s > hi + eps:
            raise InconsistentEventsError(
                f"{e.kind} [{e.start_s:.4f}, {e.end_s:.4f}] outside interval [{lo:.4f}, {hi:.4f}]"
            )
        prev_end = e.end_s


def _check_interval(wave: Waveform, interval, what: str = "interval") -> tuple[int, int]:
    start_s, end_s = interval
    if not (start_s < end_s):
        raise EmptyIntervalError(f"{what} [{start_s}, {end_s}] is empty")
    if start_s < 0 or end_s > wave.duration_s + 1e-9:
        raise IntervalOutOfRangeError(
            f"{what} [{start_s}, {end_s}] outside waveform of {wave.duration_s:.4f}s"
        )
    i0 = wave.sample_index(start_s)
    i1 = wave.sample_index(end_s)
    return i0, i1


def _hann(m: int) -> np.ndarray:
    # raised cosine, symmetric
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(m) / (m - 1))


def short_time_energy(
    wave: Waveform, window_s: float, hop_s: float, interval: tuple[float, float]
) -> EnergyContour:
    """Windowed mean-square energy contour over an interval.

    Frame i is centered at interval_start + i*hop_s; its energy is the mean
    of the squared raised-cosine-windowed samples.  Windows near the
    waveform edges are zero-padded.
    """
    if window_s <= 0 or hop_s <= 0:
        raise DegenerateWindowError("window_s and hop_s must be positive")
    _check_interval(wave, interval)
    fs = wave.sample_rate_hz
    m = int(round(window_s * fs))
    if m < 2:
        raise DegenerateWindowError(f"window of {m} samples (need >= 2)")

    start_s, end_s = interval
    n_frames = int(np.floor((end_s - start_s) / hop_s + 1e-9)) + 1
    centers = np.rint((start_s + np.arange(n_frames) * hop_s) * fs).astype(np.int64)
    base = centers - m // 2

    padded = np.concatenate([np.zeros(m), wave.samples, np.zeros(m)])
    rows = padded[(base + m)[:, None] + np.arange(m)[None, :]]
    w = _hann(m)
    energies = np.mean((rows * w) ** 2, axis=1)
    return EnergyContour(energies, frame_hop_s=hop_s, frame_len_s=m / fs, origin_s=start_s)


def burst_power(wave: Waveform, interval: tuple[float, float]) -> float:
    """Mean squared amplitude over the interval: (1/N) * sum(x_i^2)."""
    i0, i1 = _check_interval(wave, interval)
    if i1 - i0 < 1:
        raise EmptyIntervalError(f"interval [{interval[0]}, {interval[1]}] has no samples")
    x = wave.samples[i0:i1]
    return float(np.dot(x, x) / len(x))


def _closure_floor(energies: np.ndarray, run_frames: int) -> float:
    """Median frame energy of the lowest-energy run (robust to murmur)."""
    n = len(energies)
    run = min(max(run_frames, 1), n)
    sums = np.convolve(energies, np.ones(run), mode="valid")
    j = int(np.argmin(sums))
    return float(np.median(energies[j : j + run]))


def detect_acoustic_events(
    wave: Waveform,
    consonant_interval: tuple[float, float],
    vowel_ref_interval: Optional[tuple[float, float]],
    config: DetectorConfig = DetectorConfig(),
) -> EventSequence:
    """Segment a consonant interval into alternating closures and bursts.

    A burst opens at a frame whose energy rises above
    ``max(closure_floor * rise_factor, vowel_peak * rel_floor)`` and closes
    once energy stays below that threshold for at least ``min_offset_s``.
    Two above-threshold regions separated by a sub-threshold gap shorter
    than ``min_gap_s`` belong to the same burst; a gap of at least
    ``min_gap_s`` makes the later region a second burst and the gap itself
    the second closure.  Supra-threshold energy already present at the
    interval start (bleed from the preceding segment) is not a burst: an
    onset requires a below-to-above transition.

    Boundaries are snapped to frame centers, except that the sequence
    starts at the interval start and a burst still open at the last frame
    ends at the interval end.
    """
    contour = short_time_energy(wave, config.window_s, config.hop_s, consonant_interval)
    energies = contour.frame_energies
    n = len(energies)
    hop = config.hop_s

    floor_frames = int(round(config.floor_run_s / hop))
    closure_floor = _closure_floor(energies, floor_frames)

    vowel_peak = 0.0
    if vowel_ref_interval is not None:
        vowel_contour = short_time_energy(
            wave, config.window_s, config.hop_s, vowel_ref_interval
        )
        vowel_peak = float(np.max(vowel_contour.frame_energies))

    threshold = max(closure_floor * config.rise_factor, vowel_peak * config.rel_floor)

    above = energies > threshold

    # contiguous above-threshold runs as (first_frame, last_frame)
    runs: list[tuple[int, int]] = []
    i = 0
    while i < n:
        if above[i]:
            j = i
            while j + 1 < n and above[j + 1]:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1

    # leading run with no rise before it is carry-over, not a burst onset
    if runs and runs[0][0] == 0:
        runs.pop(0)

    # merge runs separated by gaps shorter than min_gap_s into one burst
    min_gap_frames = max(1, int(round(config.min_gap_s / hop)))
    candidates: list[tuple[int, int]] = []
    for run in runs:
        if candidates and run[0] - candidates[-1][1] - 1 < min_gap_frames:
            candidates[-1] = (candidates[-1][0], run[1])
        else:
            candidates.append(run)

    if not candidates:
        raise NoBurstFoundError(
            f"no burst onset above threshold {threshold:.3e} in "
            f"[{consonant_interval[0]:.4f}, {consonant_interval[1]:.4f}]"
        )

    start_s, end_s = consonant_interval

    def onset_time(first_frame: int) -> float:
        return contour.time_of(first_frame)

    def offset_time(last_frame: int) -> float:
        if last_frame + 1 < n:
            return contour.time_of(last_frame + 1)
        return end_s  # burst still open at the last frame

    burst_bounds = [(onset_time(a), offset_time(b)) for a, b in candidates]

    if len(candidates) > 2:
        raise MoreThanTwoBurstsError(burst_bounds)

    events = [AcousticEvent(CLOSURE, start_s, burst_bounds[0][0])]
    events.append(
        AcousticEvent(
            BURST, *burst_bounds[0], peak_power=burst_power(wave, burst_bounds[0])
        )
    )
    if len(burst_bounds) == 2:
        events.append(AcousticEvent(CLOSURE, burst_bounds[0][1], burst_bounds[1][0]))
        events.append(
            AcousticEvent(
                BURST, *burst_bounds[1], peak_power=burst_power(wave, burst_bounds[1])
            )
        )
    return EventSequence(tuple(events), (start_s, end_s))


def classify_burst_count(events: EventSequence) -> str:
    """SINGLE_BURST or DOUBLE_BURST depending on the number of burst events."""
    return DOUBLE_BURST if len(events.bursts()) == 2 else SINGLE_BURST
