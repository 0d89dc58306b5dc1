import numpy as np
import pytest

from stopgem.annotations import (
    AnnotationSet,
    Segment,
    parse_annotation_text,
    parse_annotations,
    serialize_annotations,
    validate_annotations,
    write_annotations,
)
from stopgem.audio_io import Waveform
from stopgem.errors import AnnotationSyntaxError, NonMonotonicError, OverlapError
from stopgem.rng import SplitMix64


def one_second_wave():
    return Waveform(np.zeros(44100), 44100)


def test_empty_and_comment_only():
    assert parse_annotation_text("").segments == ()
    assert parse_annotation_text("# a comment\n\n  # another\n").segments == ()


def test_single_line():
    ann = parse_annotation_text(
        "phone\ttt\t1.530\t1.632\tgem_type=lexical;word=filetto\n"
    )
    (seg,) = ann.segments
    assert seg.tier == "phone"
    assert seg.label == "tt"
    assert seg.start_s == 1.530
    assert seg.end_s == 1.632
    assert seg.attrs == {"gem_type": "lexical", "word": "filetto"}
    assert seg.duration_ms == pytest.approx(102.0)


def test_overlap_reports_line():
    text = "phone\tt\t0.1\t0.3\t\nphone\td\t0.2\t0.4\t\n"
    with pytest.raises(OverlapError, match="line 2"):
        parse_annotation_text(text)


def test_overlap_across_tiers_is_fine():
    ann = parse_annotation_text("word\tciao\t0.1\t0.4\t\nphone\ta\t0.1\t0.2\t\n")
    assert len(ann.segments) == 2


def test_non_monotonic():
    with pytest.raises(NonMonotonicError):
        parse_annotation_text("phone\tt\t0.5\t0.5\t\n")
    with pytest.raises(NonMonotonicError):
        parse_annotation_text("phone\tt\t0.5\t0.4\t\n")


@pytest.mark.parametrize(
    "line,column",
    [
        ("phone\tt\t0.1\t0.2", 1),            # 4 fields
        ("stanza\tt\t0.1\t0.2\t", 1),         # unknown tier
        ("phone\t\t0.1\t0.2\t", 7),           # empty label
        ("phone\tt\tzero\t0.2\t", 9),         # bad float
        ("phone\tt\t0.1\t0.2\tnoequals", 17), # bad attr
        ("phone\tt\t-0.1\t0.2\t", 9),         # negative time
    ],
)
def test_syntax_errors_carry_position(line, column):
    with pytest.raises(AnnotationSyntaxError) as info:
        parse_annotation_text(line + "\n")
    assert info.value.line == 1
    assert info.value.column == column


def random_annotation_set(seed: int) -> AnnotationSet:
    rng = SplitMix64(seed)
    segments = []
    for tier in ("word", "phone"):
        t = 0.0
        for _ in range(int(rng.uniform() * 6)):
            t += rng.uniform() * 0.2
            dur = 0.01 + rng.uniform() * 0.3
            attrs = {}
            if rng.uniform() < 0.5:
                attrs["gem_type"] = ("lexical", "syntactic", "none")[int(rng.uniform() * 3)]
            if rng.uniform() < 0.5:
                attrs["word"] = f"w{int(rng.uniform() * 100)}"
            segments.append(Segment(tier, f"l{int(rng.uniform() * 10)}", t, t + dur, attrs))
            t += dur
    return AnnotationSet(tuple(segments))


def test_serialize_parse_round_trip():
    for seed in range(30):
        ann = random_annotation_set(seed)
        text = serialize_annotations(ann)
        again = parse_annotation_text(text)
        assert again == ann
        assert serialize_annotations(again) == text


def test_write_and_parse_file(tmp_path):
    ann = random_annotation_set(7)
    path = tmp_path / "a.ann"
    write_annotations(path, ann)
    assert parse_annotations(path).segments == ann.segments


def test_serialize_rejects_reserved_characters():
    ann = AnnotationSet((Segment("phone", "t", 0.0, 0.1, {"word": "a;b"}),))
    with pytest.raises(ValueError):
        serialize_annotations(ann)


# --- validation ---

def consistent_pair():
    ann = parse_annotation_text(
        "phone\ta\t0.10\t0.18\t\n"
        "phone\ttt\t0.18\t0.29\tgem_type=lexical\n"
        "phone\to\t0.29\t0.35\t\n"
    )
    return ann, one_second_wave()


def test_validate_consistent_pair():
    ann, wave = consistent_pair()
    report = validate_annotations(ann, wave)
    assert report.ok
    assert report.errors == ()
    assert report.warnings == ()


def test_segment_past_eof():
    ann = parse_annotation_text("phone\ta\t0.5\t1.5\t\n")
    report = validate_annotations(ann, one_second_wave())
    assert [code for code, _, _ in report.errors] == ["SEGMENT_PAST_EOF"]


def test_illegal_geminate_on_z():
    ann = parse_annotation_text(
        "phone\ta\t0.1\t0.2\t\nphone\tzz\t0.2\t0.3\tgem_type=lexical\n"
    )
    report = validate_annotations(ann, one_second_wave())
    assert [code for code, _, _ in report.errors] == ["ILLEGAL_GEMINATE"]


def test_stop_only_mode():
    ann = parse_annotation_text(
        "phone\ta\t0.1\t0.2\t\nphone\tmm\t0.2\t0.3\tgem_type=lexical\n"
    )
    assert validate_annotations(ann, one_second_wave()).ok
    report = validate_annotations(ann, one_second_wave(), stop_only=True)
    assert [code for code, _, _ in report.errors] == ["NON_STOP_GEMINATE"]


def test_missing_pre_vowel_warning():
    ann = parse_annotation_text("phone\ttt\t0.2\t0.3\tgem_type=lexical\n")
    report = validate_annotations(ann, one_second_wave())
    assert report.ok  # warning, not error
    assert [code for code, _, _ in report.warnings] == ["MISSING_PRE_VOWEL"]

    flagged = parse_annotation_text(
        "phone\ttt\t0.2\t0.3\tgem_type=lexical;utterance_initial=1\n"
    )
    assert validate_annotations(flagged, one_second_wave()).warnings == ()


def test_invalid_gem_type_value():
    ann = parse_annotation_text("phone\ttt\t0.2\t0.3\tgem_type=maybe\n")
    report = validate_annotations(ann, one_second_wave())
    assert [code for code, _, _ in report.errors] == ["INVALID_GEM_TYPE"]


def test_validation_is_monotone_under_added_segments():
    # adding a segment never removes an existing error
    wave = one_second_wave()
    for seed in range(20):
        ann = random_annotation_set(seed)
        base_errors = set(validate_annotations(ann, wave).errors)
        last_end = max((s.end_s for s in ann.segments), default=0.0)
        extra = Segment("phone", "zz", last_end + 0.01, last_end + 0.5,
                        {"gem_type": "lexical"})
        grown_errors = set(validate_annotations(ann.with_segment(extra), wave).errors)
        assert base_errors <= grown_errors
