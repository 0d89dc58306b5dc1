import pytest

from stopgem.acoustics import BURST, CLOSURE, AcousticEvent, EventSequence
from stopgem.annotations import Segment
from stopgem.errors import InconsistentEventsError, MissingMetadataError
from stopgem.gemination import (
    GEMINATE,
    INDETERMINATE,
    SINGLETON,
    TOKEN_COLUMNS,
    DurationRecord,
    build_token,
    classify_gemination,
    classify_ratio,
    error_row,
    extract_durations,
    parse_tokens_csv,
    token_to_row,
    write_token_rows,
)

MS = 1e-3


def events_from_ms(boundaries_ms, interval_ms):
    kinds = [CLOSURE, BURST, CLOSURE, BURST]
    events = []
    for i, (a, b) in enumerate(zip(boundaries_ms, boundaries_ms[1:])):
        events.append(AcousticEvent(kinds[i], a * MS, b * MS))
    return EventSequence(tuple(events), (interval_ms[0] * MS, interval_ms[1] * MS))


def test_extract_single_burst_published_means():
    # closure 89.1 ms + burst 25.7 ms, vowel 70.9 ms
    events = events_from_ms([0.0, 89.1, 114.8], (0.0, 114.8))
    vowel = Segment("phone", "a", 10.0, 10.0 + 70.9 * MS)
    record = extract_durations(events, vowel)
    assert record.vd_ms == pytest.approx(70.9, abs=1e-9)
    assert record.cld_ms == pytest.approx(89.1, abs=1e-9)
    assert record.bd_ms == pytest.approx(25.7, abs=1e-9)
    assert record.cd_ms == pytest.approx(114.8, abs=1e-9)
    assert not record.is_double


def test_extract_double_burst_syntactic_means():
    # Cl1 35.3, B1 10.9, Cl2 22.4, B2 28.6: per-consonant sums are exact,
    # so C2d is 51.0 (the published row prints an independently rounded 50.94)
    events = events_from_ms([0.0, 35.3, 46.2, 68.6, 97.2], (0.0, 97.2))
    record = extract_durations(events, Segment("phone", "a", 0.0, 59.7 * MS))
    assert record.c1d_ms == pytest.approx(46.2, abs=1e-9)
    assert record.c2d_ms == pytest.approx(51.0, abs=1e-9)
    assert record.cd_ms == pytest.approx(97.2, abs=1e-9)
    assert record.cld_ms == pytest.approx(57.7, abs=1e-9)
    assert record.bd_ms == pytest.approx(39.5, abs=1e-9)
    assert record.is_double


def test_extract_without_vowel():
    events = events_from_ms([0.0, 50.0, 70.0], (0.0, 70.0))
    record = extract_durations(events, None)
    assert record.vd_ms is None
    assert record.ratio is None
    assert record.cd_ms == pytest.approx(70.0)


def test_extract_rejects_bad_alternation():
    c = AcousticEvent(CLOSURE, 0.0, 0.05)
    b = AcousticEvent(BURST, 0.05, 0.07)
    with pytest.raises(InconsistentEventsError):
        EventSequence((b,), (0.0, 0.07))
    good = EventSequence((c, b), (0.0, 0.07))
    assert extract_durations(good).cd_ms == pytest.approx(70.0)


def test_duration_record_additivity_enforced():
    with pytest.raises(ValueError):
        DurationRecord(vd_ms=70.0, cd_ms=100.0, cld_ms=80.0, bd_ms=19.0)
    DurationRecord(vd_ms=70.0, cd_ms=100.0, cld_ms=80.0, bd_ms=20.005)  # within 0.01
    with pytest.raises(ValueError):
        DurationRecord(vd_ms=70.0, cd_ms=100.0, cld_ms=80.0, bd_ms=20.0, c1d_ms=50.0)


def test_classify_published_rows():
    # singleton row: 85.07 / 55.48 / 35.9 / 19.58
    singleton = DurationRecord(vd_ms=85.07, cd_ms=55.48, cld_ms=35.9, bd_ms=19.58)
    call = classify_gemination(singleton)
    assert call.verdict == SINGLETON
    assert call.ratio_used == pytest.approx(55.48 / 85.07)
    # the published table's ratio column (mean of per-token ratios) is 0.75,
    # while the ratio of these row means is ~0.652; both are singleton calls
    assert classify_ratio(0.75).verdict == SINGLETON

    geminate = DurationRecord(vd_ms=65.98, cd_ms=111.01, cld_ms=85.69, bd_ms=25.32)
    assert classify_gemination(geminate).verdict == GEMINATE
    assert classify_ratio(1.84).verdict == GEMINATE


def test_classify_boundary_and_threshold():
    assert classify_ratio(1.0).verdict == GEMINATE  # tie goes to geminate
    assert classify_ratio(0.999999).verdict == SINGLETON
    assert classify_ratio(1.2, threshold=1.5).verdict == SINGLETON
    record = DurationRecord(vd_ms=None, cd_ms=100.0, cld_ms=80.0, bd_ms=20.0)
    call = classify_gemination(record)
    assert call.verdict == INDETERMINATE
    assert call.ratio_used is None


def test_ratio_monotone_in_cd():
    vd = 80.0
    last = SINGLETON
    for cd in range(40, 160, 2):
        record = DurationRecord(vd_ms=vd, cd_ms=float(cd), cld_ms=float(cd) - 15.0, bd_ms=15.0)
        verdict = classify_gemination(record).verdict
        if last == GEMINATE:
            assert verdict == GEMINATE  # never flips back
        last = verdict
    assert last == GEMINATE


def make_token(double=False):
    if double:
        record = DurationRecord(
            vd_ms=78.8, cd_ms=129.1, cld_ms=87.9, bd_ms=41.2,
            c1d_ms=61.4, c2d_ms=67.7, cl1d_ms=48.9, cl2d_ms=39.0, b1d_ms=12.5, b2d_ms=28.7,
        )
        powers = (2.1e-3, 8.2e-3)
    else:
        record = DurationRecord(vd_ms=70.9, cd_ms=114.8, cld_ms=89.1, bd_ms=25.7)
        powers = (7.4e-3,)
    return build_token(
        record, powers, classify_gemination(record),
        speaker="MS", sentence_id="100", repetition="1",
        word="filetto", consonant="tt", gem_type="lexical",
    )


def test_build_token_full_row():
    row = token_to_row(make_token(double=True))
    assert list(row) == TOKEN_COLUMNS
    assert all(row[c] != "" for c in TOKEN_COLUMNS)  # every column populated
    assert row["Cd_ms"] == "129.10"
    assert row["P_burst2"] == "8.20000e-03"
    assert row["burst_count"] == "double"


def test_build_token_single_leaves_split_empty():
    row = token_to_row(make_token(double=False))
    for column in ("C1d_ms", "C2d_ms", "Cl1d_ms", "Cl2d_ms", "B1d_ms", "B2d_ms", "P_burst2"):
        assert row[column] == ""
    assert row["ratio"] == f"{114.8 / 70.9:.6g}"


def test_build_token_requires_metadata():
    record = DurationRecord(vd_ms=70.0, cd_ms=100.0, cld_ms=80.0, bd_ms=20.0)
    with pytest.raises(MissingMetadataError):
        build_token(record, (1e-3,), classify_gemination(record), speaker="", sentence_id="5")
    with pytest.raises(MissingMetadataError):
        build_token(record, (1e-3,), classify_gemination(record), speaker="MS", sentence_id="")


def test_fig2_filetto_interval_arithmetic():
    # double burst at 1530-1549 ms and 1610-1632 ms: B1=19, B2=22, Cl2=61
    events = events_from_ms([1450.0, 1530.0, 1549.0, 1610.0, 1632.0], (1450.0, 1632.0))
    record = extract_durations(events, Segment("phone", "e", 1.38, 1.45))
    assert record.b1d_ms == pytest.approx(19.0, abs=1e-9)
    assert record.b2d_ms == pytest.approx(22.0, abs=1e-9)
    assert record.cl2d_ms == pytest.approx(61.0, abs=1e-9)


def test_token_csv_round_trip(tmp_path):
    rows = [token_to_row(make_token(False)), token_to_row(make_token(True))]
    rows.append(error_row("NoBurstFoundError: silent", speaker="FS", sentence_id="3"))
    path = tmp_path / "tokens.csv"
    write_token_rows(path, rows, with_error_column=True)
    parsed = parse_tokens_csv(path)
    assert len(parsed) == 3
    assert parsed[0].values["Cd_ms"] == 114.8
    assert parsed[1].values["B2d_ms"] == 28.7
    assert parsed[1].values["P_burst2"] == pytest.approx(8.2e-3)
    assert parsed[2].error.startswith("NoBurstFoundError")
    assert parsed[2].values["Cd_ms"] is None


def test_parse_tokens_csv_diagnostics(tmp_path):
    bad_header = tmp_path / "bad1.csv"
    bad_header.write_text("speaker,what\nMS,1\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_tokens_csv(bad_header)

    bad_cell = tmp_path / "bad2.csv"
    rows = [token_to_row(make_token(False))]
    write_token_rows(bad_cell, rows)
    text = bad_cell.read_text().replace("114.80", "not-a-number")
    bad_cell.write_text(text)
    with pytest.raises(ValueError, match="line 2"):
        parse_tokens_csv(bad_cell)
