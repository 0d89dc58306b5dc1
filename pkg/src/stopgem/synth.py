"""Synthetic VCV/VCCV stop-consonant stimuli with exact ground truth.

Stimuli are schematic: a harmonically simple vowel, a silent or murmured
closure, and a noise burst.  Everything the analysis pipeline measures
(energy landmarks, durations, burst powers) is controlled here to the
sample, so synthesized corpora serve as the oracle for the detector and
classifier tests.  Waveforms are quantized to the int16 grid before the
ground truth is computed, so a write/reload round trip is bit-exact.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import acoustics
from .acoustics import AcousticEvent, EventSequence
from .annotations import AnnotationSet, Segment, write_annotations
from .audio_io import Waveform, write_waveform
from .errors import SpecInfeasibleError
from .gemination import (
    TOKEN_COLUMNS,
    DurationRecord,
    extract_durations,
    _fmt_ms,
    _fmt_power,
    _fmt_ratio,
)
from .rng import SplitMix64, derive_seed

RAMP_MS = 10.0              # raised-cosine on/off ramps of the vowels
MURMUR_HZ = 120.0
MURMUR_AMPLITUDE = 0.02     # of full scale, when voiced_closure is set
BURST_END_FRACTION = 0.85   # exponential decay endpoint (amplitude ratio)
VOWEL_HARMONICS = 12


@dataclass(frozen=True)
class StimulusSpec:
    """Parameters of one VCV (single burst) or VCCV (double burst) token.

    Provide cld_ms+bd_ms for a single burst, or all of cl1d_ms, b1d_ms,
    cl2d_ms, b2d_ms for a double burst; burst_amplitudes must match
    (one or two values in (0, 1]).  The Eq-style burst power target is
    amplitude^2 / 3 per burst.
    """

    vd_ms: float
    cld_ms: Optional[float] = None
    bd_ms: Optional[float] = None
    cl1d_ms: Optional[float] = None
    b1d_ms: Optional[float] = None
    cl2d_ms: Optional[float] = None
    b2d_ms: Optional[float] = None
    burst_amplitudes: tuple[float, ...] = (0.15,)
    vowel_amplitude: float = 0.5
    f0_hz: float = 120.0
    post_vowel_ms: float = 60.0
    voiced_closure: bool = True
    sample_rate_hz: int = 44100
    seed: int = 0
    gem_type: str = "none"
    phone_label: str = "t"

    def __post_init__(self):
        split = (self.cl1d_ms, self.b1d_ms, self.cl2d_ms, self.b2d_ms)
        have_split = [v is not None for v in split]
        have_single = [v is not None for v in (self.cld_ms, self.bd_ms)]
        if any(have_split):
            if not all(have_split) or any(have_single):
                raise SpecInfeasibleError(
                    "double-burst specs need cl1d/b1d/cl2d/b2d and no cld/bd"
                )
        elif not all(have_single):
            raise SpecInfeasibleError("single-burst specs need cld_ms and bd_ms")
        durations = [self.vd_ms, self.post_vowel_ms] + [
            v for v in (self.cld_ms, self.bd_ms, *split) if v is not None
        ]
        if any(d <= 0 for d in durations):
            raise SpecInfeasibleError("all durations must be positive")
        if self.vd_ms < 2 * RAMP_MS or self.post_vowel_ms < 2 * RAMP_MS:
            raise SpecInfeasibleError(
                f"vowels must cover both {RAMP_MS} ms ramps "
                f"(vd={self.vd_ms}, post={self.post_vowel_ms})"
            )
        want = 2 if self.is_double else 1
        if len(self.burst_amplitudes) != want:
            raise SpecInfeasibleError(
                f"{want} burst amplitude(s) required, got {len(self.burst_amplitudes)}"
            )
        if any(not 0.0 < a <= 1.0 for a in self.burst_amplitudes):
            raise SpecInfeasibleError("burst amplitudes must be in (0, 1]")
        if not 0.0 < self.vowel_amplitude <= 1.0:
            raise SpecInfeasibleError("vowel amplitude must be in (0, 1]")
        if self.sample_rate_hz <= 0 or self.f0_hz <= 0:
            raise SpecInfeasibleError("sample_rate_hz and f0_hz must be positive")

    @property
    def is_double(self) -> bool:
        return self.cl1d_ms is not None


@dataclass(frozen=True)
class GroundTruth:
    """Exact construction record of a synthetic token."""

    annotations: AnnotationSet
    events: EventSequence
    record: DurationRecord
    burst_powers: tuple[float, ...]
    vowel_interval: tuple[float, float]
    consonant_interval: tuple[float, float]


def _vowel(n: int, amp: float, f0: float, fs: int, t0_samples: int) -> np.ndarray:
    k = np.arange(1, VOWEL_HARMONICS + 1)[:, None]
    t = (t0_samples + np.arange(n)[None, :]) / fs
    x = np.sum(np.sin(2.0 * np.pi * f0 * k * t) / k, axis=0)
    peak = np.max(np.abs(x))
    x *= amp / peak
    ramp_n = int(round(RAMP_MS * fs / 1000.0))
    ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp_n) / (ramp_n - 1))
    x[:ramp_n] *= ramp
    x[n - ramp_n:] *= ramp[::-1]
    return x


def _closure(n: int, voiced: bool, fs: int, t0_samples: int) -> np.ndarray:
    if not voiced:
        return np.zeros(n)
    t = (t0_samples + np.arange(n)) / fs
    return MURMUR_AMPLITUDE * np.sin(2.0 * np.pi * MURMUR_HZ * t)


def _burst(n: int, amp: float, rng: SplitMix64) -> np.ndarray:
    noise = rng.normals(n)
    if n > 1:
        envelope = BURST_END_FRACTION ** (np.arange(n) / (n - 1))
        noise = noise * envelope
    target_power = amp * amp / 3.0
    noise *= math.sqrt(target_power * n / float(np.dot(noise, noise)))
    return noise


def synthesize_vcv(spec: StimulusSpec) -> tuple[Waveform, GroundTruth]:
    """Render a stimulus and its exact ground truth.

    Segment boundaries land exactly on sample ticks.  Burst powers in the
    ground truth are the realized mean squared amplitudes of the quantized
    samples (within 5% of the amplitude^2/3 target).
    """
    fs = spec.sample_rate_hz

    def n_of(ms: float) -> int:
        n = int(round(ms * fs / 1000.0))
        if n < 1:
            raise SpecInfeasibleError(f"{ms} ms is shorter than one sample at {fs} Hz")
        return n

    rng = SplitMix64(derive_seed(spec.seed, 0xB0))

    if spec.is_double:
        plan = [
            ("vowel", n_of(spec.vd_ms)),
            ("closure", n_of(spec.cl1d_ms)),
            ("burst", n_of(spec.b1d_ms)),
            ("closure", n_of(spec.cl2d_ms)),
            ("burst", n_of(spec.b2d_ms)),
            ("post", n_of(spec.post_vowel_ms)),
        ]
    else:
        plan = [
            ("vowel", n_of(spec.vd_ms)),
            ("closure", n_of(spec.cld_ms)),
            ("burst", n_of(spec.bd_ms)),
            ("post", n_of(spec.post_vowel_ms)),
        ]

    pieces = []
    boundaries = [0]
    pos = 0
    burst_index = 0
    for kind, n in plan:
        if kind in ("vowel", "post"):
            pieces.append(_vowel(n, spec.vowel_amplitude, spec.f0_hz, fs, pos))
        elif kind == "closure":
            pieces.append(_closure(n, spec.voiced_closure, fs, pos))
        else:
            pieces.append(_burst(n, spec.burst_amplitudes[burst_index], rng))
            burst_index += 1
        pos += n
        boundaries.append(pos)

    x = np.concatenate(pieces)
    ints = np.clip(np.rint(x * 32768.0), -32768, 32767)
    samples = ints / 32768.0
    wave = Waveform(samples, fs, source_path="<synth>")

    t = [b / fs for b in boundaries]
    vowel_iv = (t[0], t[1])
    consonant_iv = (t[1], t[-2])

    events = []
    if spec.is_double:
        events.append(AcousticEvent(acoustics.CLOSURE, t[1], t[2]))
        events.append(
            AcousticEvent(acoustics.BURST, t[2], t[3], peak_power=acoustics.burst_power(wave, (t[2], t[3])))
        )
        events.append(AcousticEvent(acoustics.CLOSURE, t[3], t[4]))
        events.append(
            AcousticEvent(acoustics.BURST, t[4], t[5], peak_power=acoustics.burst_power(wave, (t[4], t[5])))
        )
    else:
        events.append(AcousticEvent(acoustics.CLOSURE, t[1], t[2]))
        events.append(
            AcousticEvent(acoustics.BURST, t[2], t[3], peak_power=acoustics.burst_power(wave, (t[2], t[3])))
        )
    event_seq = EventSequence(tuple(events), consonant_iv)

    label = spec.phone_label
    vowel_seg = Segment("phone", "a", *vowel_iv)
    consonant_seg = Segment(
        "phone", label, *consonant_iv, attrs={"gem_type": spec.gem_type}
    )
    post_seg = Segment("phone", "a", consonant_iv[1], t[-1])
    ann = AnnotationSet((vowel_seg, consonant_seg, post_seg))

    record = extract_durations(event_seq, vowel_seg)
    gt = GroundTruth(
        annotations=ann,
        events=event_seq,
        record=record,
        burst_powers=tuple(e.peak_power for e in event_seq.bursts()),
        vowel_interval=vowel_iv,
        consonant_interval=consonant_iv,
    )
    return wave, gt


# ---------------------------------------------------------------------------
# corpus generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassSpec:
    """Distributional spec of one token class.

    Duration fields are class means; draws are truncated normals with
    relative spread ``rel_spread`` floored at 20% of the mean.  When
    ``ratio_mean`` is set (single-burst classes only), the Cd/Vd ratio is
    drawn around it and the closure derived as cd - bd.
    """

    name: str
    gem_type: str                       # lexical | syntactic | none
    weight: float
    vd_ms: float
    cld_ms: Optional[float] = None
    bd_ms: Optional[float] = None
    cl1d_ms: Optional[float] = None
    b1d_ms: Optional[float] = None
    cl2d_ms: Optional[float] = None
    b2d_ms: Optional[float] = None
    ratio_mean: Optional[float] = None
    rel_spread: float = 0.15
    burst_amplitudes: tuple[float, ...] = (0.15,)
    phone_label: str = "t"
    voiced_closure: bool = True

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError(f"class {self.name}: weight must be positive")
        if self.ratio_mean is not None and self.is_double:
            raise ValueError(f"class {self.name}: ratio_mean only supports single-burst classes")
        if self.ratio_mean is None and not self.is_double and (
            self.cld_ms is None or self.bd_ms is None
        ):
            raise ValueError(f"class {self.name}: needs cld_ms+bd_ms or ratio_mean")

    @property
    def is_double(self) -> bool:
        return self.cl1d_ms is not None


@dataclass(frozen=True)
class CorpusSpec:
    classes: tuple[ClassSpec, ...]
    n_tokens: int = 200
    speakers: tuple[str, ...] = ("S1", "S2")
    sample_rate_hz: int = 44100

    def class_counts(self) -> list[int]:
        """Largest-remainder apportionment of n_tokens by class weight."""
        total = sum(c.weight for c in self.classes)
        shares = [self.n_tokens * c.weight / total for c in self.classes]
        counts = [int(math.floor(s)) for s in shares]
        remainder = self.n_tokens - sum(counts)
        order = sorted(
            range(len(shares)), key=lambda i: (counts[i] - shares[i], i)
        )
        for i in order[:remainder]:
            counts[i] += 1
        return counts


def default_corpus_spec(n_tokens: int = 200, rel_spread: float = 0.15) -> CorpusSpec:
    """Geminate corpus around the published class means and proportions
    (210/30/137/15 single/double bursts for lexical/syntactic)."""
    mk = lambda **kw: ClassSpec(rel_spread=rel_spread, **kw)
    return CorpusSpec(
        classes=(
            mk(name="lexical_sb", gem_type="lexical", weight=210,
               vd_ms=70.9, cld_ms=89.1, bd_ms=25.7,
               burst_amplitudes=(0.15,), phone_label="tt"),
            mk(name="lexical_db", gem_type="lexical", weight=30,
               vd_ms=78.8, cl1d_ms=48.9, b1d_ms=12.5, cl2d_ms=39.0, b2d_ms=28.7,
               burst_amplitudes=(0.12, 0.24), phone_label="tt"),
            mk(name="syntactic_sb", gem_type="syntactic", weight=137,
               vd_ms=56.3, cld_ms=83.0, bd_ms=19.8,
               burst_amplitudes=(0.15,), phone_label="t"),
            mk(name="syntactic_db", gem_type="syntactic", weight=15,
               vd_ms=59.7, cl1d_ms=35.3, b1d_ms=10.9, cl2d_ms=22.4, b2d_ms=28.6,
               burst_amplitudes=(0.12, 0.24), phone_label="t"),
        ),
        n_tokens=n_tokens,
    )


def ratio_corpus_spec(n_tokens: int = 400, rel_spread: float = 0.15) -> CorpusSpec:
    """Singleton vs. geminate corpus with the published Cd/Vd ratio means
    (0.75 vs 1.84) drawn directly, for discriminant testing."""
    return CorpusSpec(
        classes=(
            ClassSpec(name="singleton", gem_type="none", weight=1,
                      vd_ms=85.07, bd_ms=19.58, ratio_mean=0.75,
                      rel_spread=rel_spread, burst_amplitudes=(0.15,), phone_label="t"),
            ClassSpec(name="geminate", gem_type="lexical", weight=1,
                      vd_ms=65.98, bd_ms=25.32, ratio_mean=1.84,
                      rel_spread=rel_spread, burst_amplitudes=(0.15,), phone_label="tt"),
        ),
        n_tokens=n_tokens,
    )


def draw_stimulus(cls: ClassSpec, token_seed: int, sample_rate_hz: int = 44100) -> StimulusSpec:
    """Deterministic stimulus draw for one token of a class."""
    rng = SplitMix64(derive_seed(token_seed, 0xD7A))

    def draw(mean: float, floor: Optional[float] = None) -> float:
        if floor is None:
            floor = 0.2 * mean
        return rng.truncated_normal(mean, cls.rel_spread * mean, floor)

    vd = draw(cls.vd_ms, floor=max(0.2 * cls.vd_ms, 2 * RAMP_MS + 1.0))
    common = dict(
        vd_ms=vd,
        burst_amplitudes=cls.burst_amplitudes,
        voiced_closure=cls.voiced_closure,
        sample_rate_hz=sample_rate_hz,
        seed=token_seed,
        gem_type=cls.gem_type,
        phone_label=cls.phone_label,
    )
    if cls.is_double:
        return StimulusSpec(
            cl1d_ms=draw(cls.cl1d_ms), b1d_ms=draw(cls.b1d_ms),
            cl2d_ms=draw(cls.cl2d_ms), b2d_ms=draw(cls.b2d_ms),
            **common,
        )
    bd = draw(cls.bd_ms)
    if cls.ratio_mean is not None:
        for _ in range(100):
            ratio = draw(cls.ratio_mean)
            cld = ratio * vd - bd
            if cld >= 5.0:
                break
        else:
            raise SpecInfeasibleError(
                f"class {cls.name}: could not draw a feasible closure duration"
            )
        return StimulusSpec(cld_ms=cld, bd_ms=bd, **common)
    return StimulusSpec(cld_ms=draw(cls.cld_ms), bd_ms=bd, **common)


MANIFEST_GT_COLUMNS = [
    "gt_class", "gt_file",
    "gt_vowel_start_s", "gt_vowel_end_s",
    "gt_consonant_start_s", "gt_consonant_end_s",
    "gt_burst1_start_s", "gt_burst1_end_s",
    "gt_burst2_start_s", "gt_burst2_end_s",
    "gt_seed",
]
MANIFEST_COLUMNS = TOKEN_COLUMNS + MANIFEST_GT_COLUMNS


def _manifest_row(
    cls: ClassSpec, gt: GroundTruth, *, speaker: str, sentence_id: str,
    stem: str, token_seed: int
) -> dict[str, str]:
    r = gt.record
    bursts = gt.events.bursts()
    row = {
        "speaker": speaker,
        "sentence_id": sentence_id,
        "repetition": "1",
        "word": cls.name,
        "consonant": cls.phone_label,
        "gem_type": cls.gem_type,
        "burst_count": acoustics.DOUBLE_BURST if r.is_double else acoustics.SINGLE_BURST,
        "Vd_ms": _fmt_ms(r.vd_ms),
        "Cd_ms": _fmt_ms(r.cd_ms),
        "Cld_ms": _fmt_ms(r.cld_ms),
        "Bd_ms": _fmt_ms(r.bd_ms),
        "C1d_ms": _fmt_ms(r.c1d_ms),
        "C2d_ms": _fmt_ms(r.c2d_ms),
        "Cl1d_ms": _fmt_ms(r.cl1d_ms),
        "Cl2d_ms": _fmt_ms(r.cl2d_ms),
        "B1d_ms": _fmt_ms(r.b1d_ms),
        "B2d_ms": _fmt_ms(r.b2d_ms),
        "P_burst1": _fmt_power(gt.burst_powers[0]),
        "P_burst2": _fmt_power(gt.burst_powers[1]) if len(gt.burst_powers) > 1 else "",
        "ratio": _fmt_ratio(r.ratio),
        "gt_class": cls.name,
        "gt_file": stem,
        "gt_vowel_start_s": repr(gt.vowel_interval[0]),
        "gt_vowel_end_s": repr(gt.vowel_interval[1]),
        "gt_consonant_start_s": repr(gt.consonant_interval[0]),
        "gt_consonant_end_s": repr(gt.consonant_interval[1]),
        "gt_burst1_start_s": repr(bursts[0].start_s),
        "gt_burst1_end_s": repr(bursts[0].end_s),
        "gt_burst2_start_s": repr(bursts[1].start_s) if len(bursts) > 1 else "",
        "gt_burst2_end_s": repr(bursts[1].end_s) if len(bursts) > 1 else "",
        "gt_seed": str(token_seed),
    }
    return row


def corpus_tokens(spec: CorpusSpec, seed: int):
    """Yield (index, class, speaker, sentence_id, stem, token_seed) plans."""
    counts = spec.class_counts()
    index = 0
    for cls, count in zip(spec.classes, counts):
        for _ in range(count):
            speaker = spec.speakers[index % len(spec.speakers)]
            yield (
                index, cls, speaker, str(index + 1), f"tok{index:04d}",
                derive_seed(seed, index),
            )
            index += 1


def generate_corpus(spec: CorpusSpec, seed: int, out_dir: str | Path) -> Path:
    """Write WAVs, annotation files, and the ground-truth manifest.

    Layout: ``out_dir/audio/tokNNNN.wav``, ``out_dir/ann/tokNNNN.ann``,
    ``out_dir/manifest.csv``.  Regeneration with the same spec and seed is
    byte-identical.  Returns the manifest path.
    """
    out_dir = Path(out_dir)
    audio_dir = out_dir / "audio"
    ann_dir = out_dir / "ann"
    audio_dir.mkdir(parents=True, exist_ok=True)
    ann_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    for index, cls, speaker, sentence_id, stem, token_seed in corpus_tokens(spec, seed):
        stim = draw_stimulus(cls, token_seed, spec.sample_rate_hz)
        wave, gt = synthesize_vcv(stim)
        write_waveform(audio_dir / f"{stem}.wav", wave)

        segs = []
        for s in gt.annotations.segments:
            if s.attrs.get("gem_type") is not None and s.label == cls.phone_label:
                attrs = dict(s.attrs)
                attrs.update(
                    speaker=speaker, sentence_id=sentence_id,
                    repetition="1", word=cls.name,
                )
                s = replace(s, attrs=attrs)
            segs.append(s)
        write_annotations(ann_dir / f"{stem}.ann", AnnotationSet(tuple(segs), audio_ref=stem))
        rows.append(
            _manifest_row(
                cls, gt, speaker=speaker, sentence_id=sentence_id,
                stem=stem, token_seed=token_seed,
            )
        )

    manifest = out_dir / "manifest.csv"
    with open(manifest, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=MANIFEST_COLUMNS, lineterminator="\n", restval="")
        writer.writeheader()
        writer.writerows(rows)
    return manifest


# --- JSON corpus-spec files (nested per-class structure) ---

def corpus_spec_to_json(spec: CorpusSpec) -> str:
    def cls_dict(c: ClassSpec) -> dict:
        d = {k: v for k, v in c.__dict__.items() if v is not None}
        d["burst_amplitudes"] = list(c.burst_amplitudes)
        return d

    return json.dumps(
        {
            "n_tokens": spec.n_tokens,
            "speakers": list(spec.speakers),
            "sample_rate_hz": spec.sample_rate_hz,
            "classes": [cls_dict(c) for c in spec.classes],
        },
        indent=2,
        sort_keys=True,
    )


def corpus_spec_from_json(text: str) -> CorpusSpec:
    data = json.loads(text)
    classes = []
    for c in data["classes"]:
        c = dict(c)
        if "burst_amplitudes" in c:
            c["burst_amplitudes"] = tuple(c["burst_amplitudes"])
        classes.append(ClassSpec(**c))
    return CorpusSpec(
        classes=tuple(classes),
        n_tokens=int(data.get("n_tokens", 200)),
        speakers=tuple(data.get("speakers", ("S1", "S2"))),
        sample_rate_hz=int(data.get("sample_rate_hz", 44100)),
    )
