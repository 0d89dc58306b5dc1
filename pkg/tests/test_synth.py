import csv
import math

import numpy as np
import pytest

from stopgem.acoustics import classify_burst_count, detect_acoustic_events, DOUBLE_BURST
from stopgem.annotations import parse_annotations
from stopgem.audio_io import load_waveform, write_waveform
from stopgem.errors import SpecInfeasibleError
from stopgem.gemination import extract_durations
from stopgem.rng import SplitMix64, derive_seed
from stopgem.synth import (
    ClassSpec,
    CorpusSpec,
    StimulusSpec,
    corpus_spec_from_json,
    corpus_spec_to_json,
    corpus_tokens,
    default_corpus_spec,
    draw_stimulus,
    generate_corpus,
    ratio_corpus_spec,
    synthesize_vcv,
)

FS = 44100


def n_of(ms):
    return int(round(ms * FS / 1000))


def test_sample_counts_and_ground_truth_snap_to_ticks():
    spec = StimulusSpec(vd_ms=70.9, cld_ms=89.1, bd_ms=25.7, post_vowel_ms=60.0, seed=1)
    wave, gt = synthesize_vcv(spec)
    expected = n_of(70.9) + n_of(89.1) + n_of(25.7) + n_of(60.0)
    assert len(wave.samples) == expected
    # ground-truth durations are the snapped sample counts
    assert gt.record.vd_ms == pytest.approx(n_of(70.9) / FS * 1000, abs=1e-9)
    assert gt.record.cld_ms == pytest.approx(n_of(89.1) / FS * 1000, abs=1e-9)
    assert gt.record.bd_ms == pytest.approx(n_of(25.7) / FS * 1000, abs=1e-9)
    assert gt.record.vd_ms == pytest.approx(70.9, abs=0.02)
    # samples already on the int16 grid
    assert np.array_equal(wave.samples, np.rint(wave.samples * 32768) / 32768)


def test_same_seed_same_bytes(tmp_path):
    spec = StimulusSpec(vd_ms=60, cld_ms=70, bd_ms=20, seed=99)
    w1, _ = synthesize_vcv(spec)
    w2, _ = synthesize_vcv(spec)
    assert np.array_equal(w1.samples, w2.samples)
    p1, p2 = tmp_path / "a.wav", tmp_path / "b.wav"
    write_waveform(p1, w1)
    write_waveform(p2, w2)
    assert p1.read_bytes() == p2.read_bytes()
    w3, _ = synthesize_vcv(StimulusSpec(vd_ms=60, cld_ms=70, bd_ms=20, seed=100))
    assert not np.array_equal(w1.samples, w3.samples)


def test_double_amplitude_quadruples_power():
    spec = StimulusSpec(
        vd_ms=70, cl1d_ms=45, b1d_ms=16, cl2d_ms=30, b2d_ms=25,
        burst_amplitudes=(0.1, 0.2), seed=5,
    )
    _, gt = synthesize_vcv(spec)
    p1, p2 = gt.burst_powers
    assert 3.6 <= p2 / p1 <= 4.4


def test_burst_power_hits_target_within_five_percent():
    spec = StimulusSpec(vd_ms=70, cld_ms=60, bd_ms=22, burst_amplitudes=(0.18,), seed=6)
    wave, gt = synthesize_vcv(spec)
    target = 0.18**2 / 3
    assert gt.burst_powers[0] == pytest.approx(target, rel=0.05)
    # ground truth power equals a direct oracle over the true interval
    b = gt.events.bursts()[0]
    i0, i1 = round(b.start_s * FS), round(b.end_s * FS)
    oracle = math.fsum(v * v for v in wave.samples[i0:i1]) / (i1 - i0)
    assert gt.burst_powers[0] == pytest.approx(oracle, rel=1e-12)


def test_ground_truth_additivity_exact():
    spec = StimulusSpec(
        vd_ms=78.8, cl1d_ms=48.9, b1d_ms=12.5, cl2d_ms=39.0, b2d_ms=28.7,
        burst_amplitudes=(0.12, 0.24), seed=7,
    )
    _, gt = synthesize_vcv(spec)
    r = gt.record
    assert r.c1d_ms == pytest.approx(r.cl1d_ms + r.b1d_ms, abs=1e-9)
    assert r.c2d_ms == pytest.approx(r.cl2d_ms + r.b2d_ms, abs=1e-9)
    assert r.cd_ms == pytest.approx(r.c1d_ms + r.c2d_ms, abs=1e-9)
    iv = gt.consonant_interval
    assert r.cd_ms == pytest.approx((iv[1] - iv[0]) * 1000, abs=1e-9)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(vd_ms=15.0, cld_ms=60, bd_ms=20),               # vowel shorter than ramps
        dict(vd_ms=60.0, cld_ms=60, bd_ms=20, post_vowel_ms=5.0),
        dict(vd_ms=60.0),                                     # no consonant plan
        dict(vd_ms=60.0, cld_ms=60, bd_ms=20, cl1d_ms=40),    # mixed single/double
        dict(vd_ms=60.0, cld_ms=60, bd_ms=20, burst_amplitudes=(0.1, 0.2)),
        dict(vd_ms=60.0, cld_ms=60, bd_ms=20, burst_amplitudes=(1.5,)),
        dict(vd_ms=60.0, cld_ms=-3, bd_ms=20),
    ],
)
def test_spec_infeasible(kwargs):
    with pytest.raises(SpecInfeasibleError):
        StimulusSpec(**kwargs)


def test_full_loop_recovery_on_random_specs():
    # analyze(synthesize(spec)): durations within 2 ms, powers within 10%.
    # Burst amplitudes stay in the band where the default detector threshold
    # (10x the closure murmur) falls mid-way up the burst's dynamic range;
    # frame-accurate onsets need that, and the stock corpus specs use it too.
    rng = SplitMix64(1234)
    n_tokens = 40
    ok = 0
    for i in range(n_tokens):
        double = rng.uniform() < 0.3
        if double:
            amp = 0.10 + rng.uniform() * 0.045
            spec = StimulusSpec(
                vd_ms=45 + rng.uniform() * 60,
                cl1d_ms=30 + rng.uniform() * 40,
                b1d_ms=10 + rng.uniform() * 15,
                cl2d_ms=18 + rng.uniform() * 30,
                b2d_ms=15 + rng.uniform() * 25,
                burst_amplitudes=(amp, amp * 1.8),
                seed=derive_seed(1234, i),
            )
        else:
            amp = 0.10 + rng.uniform() * 0.15
            spec = StimulusSpec(
                vd_ms=45 + rng.uniform() * 60,
                cld_ms=35 + rng.uniform() * 60,
                bd_ms=10 + rng.uniform() * 30,
                burst_amplitudes=(amp,),
                seed=derive_seed(1234, i),
            )
        wave, gt = synthesize_vcv(spec)
        try:
            events = detect_acoustic_events(wave, gt.consonant_interval, gt.vowel_interval)
        except Exception:
            continue
        rec = extract_durations(events)
        if rec.is_double != gt.record.is_double:
            continue
        pairs = [(rec.cld_ms, gt.record.cld_ms), (rec.bd_ms, gt.record.bd_ms)]
        if rec.is_double:
            pairs += [
                (rec.cl1d_ms, gt.record.cl1d_ms), (rec.b1d_ms, gt.record.b1d_ms),
                (rec.cl2d_ms, gt.record.cl2d_ms), (rec.b2d_ms, gt.record.b2d_ms),
            ]
        if any(abs(a - b) > 2.0 for a, b in pairs):
            continue
        power_ok = all(
            abs(d.peak_power - p) / p <= 0.10
            for d, p in zip(events.bursts(), gt.burst_powers)
            if (d.end_s - d.start_s) * 1000 >= 8.0
        )
        if power_ok:
            ok += 1
    assert ok / n_tokens >= 0.95


# --- corpus generation ---

def test_empty_corpus_manifest(tmp_path):
    spec = default_corpus_spec(n_tokens=0)
    manifest = generate_corpus(spec, seed=1, out_dir=tmp_path / "c")
    lines = manifest.read_text().splitlines()
    assert len(lines) == 1  # header only
    assert lines[0].startswith("speaker,")


def test_class_counts_exact_at_380(tmp_path):
    spec = default_corpus_spec(n_tokens=380)
    # largest-remainder apportionment of 210/30/137/15 weights
    assert spec.class_counts() == [204, 29, 133, 14]
    assert sum(spec.class_counts()) == 380


def test_corpus_regeneration_identical(tmp_path):
    spec = default_corpus_spec(n_tokens=12)
    m1 = generate_corpus(spec, seed=9, out_dir=tmp_path / "a")
    m2 = generate_corpus(spec, seed=9, out_dir=tmp_path / "b")
    assert m1.read_bytes() == m2.read_bytes()
    wav1 = sorted((tmp_path / "a" / "audio").glob("*.wav"))
    wav2 = sorted((tmp_path / "b" / "audio").glob("*.wav"))
    assert [p.name for p in wav1] == [p.name for p in wav2]
    for p1, p2 in zip(wav1, wav2):
        assert p1.read_bytes() == p2.read_bytes()
    m3 = generate_corpus(spec, seed=10, out_dir=tmp_path / "c")
    assert m1.read_bytes() != m3.read_bytes()


def test_corpus_files_parse_and_match_manifest(tmp_path):
    spec = default_corpus_spec(n_tokens=10)
    manifest = generate_corpus(spec, seed=3, out_dir=tmp_path / "c")
    with open(manifest, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 10
    for row in rows:
        stem = row["gt_file"]
        wave = load_waveform(tmp_path / "c" / "audio" / f"{stem}.wav")
        ann = parse_annotations(tmp_path / "c" / "ann" / f"{stem}.ann")
        consonant = [s for s in ann.phones() if s.attrs.get("gem_type") is not None]
        assert len(consonant) == 1
        seg = consonant[0]
        assert seg.start_s == pytest.approx(float(row["gt_consonant_start_s"]), abs=1e-9)
        assert seg.end_s == pytest.approx(float(row["gt_consonant_end_s"]), abs=1e-9)
        assert seg.end_s <= wave.duration_s + 1e-9
        assert (seg.duration_ms) == pytest.approx(float(row["Cd_ms"]), abs=0.005)
        assert row["speaker"] in spec.speakers


def test_ratio_corpus_spec_draws_target_ratio():
    spec = ratio_corpus_spec(n_tokens=300)
    ratios = {"singleton": [], "geminate": []}
    for _, cls, _, _, _, token_seed in corpus_tokens(spec, seed=21):
        stim = draw_stimulus(cls, token_seed)
        ratios[cls.name].append((stim.cld_ms + stim.bd_ms) / stim.vd_ms)
    assert np.mean(ratios["singleton"]) == pytest.approx(0.75, abs=0.02)
    assert np.mean(ratios["geminate"]) == pytest.approx(1.84, abs=0.04)


def test_corpus_spec_json_round_trip():
    spec = default_corpus_spec(n_tokens=33)
    text = corpus_spec_to_json(spec)
    again = corpus_spec_from_json(text)
    assert again == spec
    assert corpus_spec_to_json(again) == text


def test_class_spec_validation():
    with pytest.raises(ValueError):
        ClassSpec(name="x", gem_type="lexical", weight=0, vd_ms=60, cld_ms=70, bd_ms=20)
    with pytest.raises(ValueError):
        ClassSpec(name="x", gem_type="lexical", weight=1, vd_ms=60)  # no durations
    with pytest.raises(ValueError):
        ClassSpec(name="x", gem_type="lexical", weight=1, vd_ms=60, ratio_mean=1.5,
                  cl1d_ms=30, b1d_ms=10, cl2d_ms=20, b2d_ms=15)  # ratio + double
