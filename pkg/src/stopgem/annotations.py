"""Tier-based time annotations: parsing, serialization, validation.

File format (UTF-8, LF): ``#`` starts a comment line, data lines carry 5
tab-separated fields::

    tier <TAB> label <TAB> start_s <TAB> end_s <TAB> attrs

``tier`` is ``word`` or ``phone``; times are decimal seconds; ``attrs`` is
a semicolon-separated list of key=value pairs and may be empty.
Recognized attr keys: gem_type (lexical|syntactic|none), speaker,
sentence_id, repetition, word, utterance_initial.

Gemination status comes only from ``gem_type`` attrs; it is never inferred
from the phone label or the audio.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import phonemes
from .audio_io import Waveform
from .errors import AnnotationSyntaxError, NonMonotonicError, OverlapError

TIERS = ("word", "phone")
GEM_TYPES = ("lexical", "syntactic", "none")

# times are stored in seconds; tolerance well below the 0.1 ms precision
# the format guarantees
_TIME_EPS = 1e-9


@dataclass(frozen=True)
class Segment:
    tier: str
    label: str
    start_s: float
    end_s: float
    attrs: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.end_s <= self.start_s:
            raise NonMonotonicError(
                f"segment '{self.label}' has end {self.end_s} <= start {self.start_s}"
            )

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s

    @property
    def duration_ms(self) -> float:
        return (self.end_s - self.start_s) * 1000.0

    @property
    def gem_type(self) -> str:
        return self.attrs.get("gem_type", "none")

    @property
    def utterance_initial(self) -> bool:
        return self.attrs.get("utterance_initial", "").lower() in ("1", "true", "yes")

    def location(self) -> str:
        return f"{self.tier} '{self.label}' [{self.start_s:.4f}, {self.end_s:.4f}]"


@dataclass(frozen=True)
class AnnotationSet:
    """Segments sorted by (tier, start) with per-tier non-overlap enforced."""

    segments: tuple[Segment, ...]
    audio_ref: str = ""

    def __post_init__(self):
        ordered = tuple(sorted(self.segments, key=lambda s: (s.tier, s.start_s, s.end_s)))
        prev_by_tier: dict[str, Segment] = {}
        for seg in ordered:
            prev = prev_by_tier.get(seg.tier)
            if prev is not None and seg.start_s < prev.end_s - _TIME_EPS:
                raise OverlapError(
                    f"{seg.location()} overlaps {prev.location()} on tier '{seg.tier}'"
                )
            prev_by_tier[seg.tier] = seg
        object.__setattr__(self, "segments", ordered)

    def tier(self, name: str) -> list[Segment]:
        return [s for s in self.segments if s.tier == name]

    def phones(self) -> list[Segment]:
        return self.tier("phone")

    def with_segment(self, seg: Segment) -> "AnnotationSet":
        return AnnotationSet(self.segments + (seg,), audio_ref=self.audio_ref)


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[tuple[str, str, str], ...] = ()    # (code, message, location)
    warnings: tuple[tuple[str, str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def lines(self) -> list[str]:
        out = [f"ERROR {code} at {loc}: {msg}" for code, msg, loc in self.errors]
        out += [f"WARNING {code} at {loc}: {msg}" for code, msg, loc in self.warnings]
        return out


def _parse_attrs(text: str, line_no: int, col: int) -> dict[str, str]:
    attrs: dict[str, str] = {}
    if not text:
        return attrs
    for item in text.split(";"):
        if not item:
            continue
        key, eq, value = item.partition("=")
        if not eq or not key:
            raise AnnotationSyntaxError(f"bad attr {item!r}, expected key=value", line_no, col)
        attrs[key.strip()] = value.strip()
    return attrs


def parse_annotation_text(text: str, audio_ref: str = "") -> AnnotationSet:
    """Parse the annotation format from a string.  See module docstring."""
    segments: list[Segment] = []
    lines_of: dict[int, int] = {}
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise AnnotationSyntaxError(
                f"expected 5 tab-separated fields, got {len(fields)}", line_no, 1
            )
        # 1-based column of each field start, for error messages
        cols = [1]
        for f_ in fields[:-1]:
            cols.append(cols[-1] + len(f_) + 1)

        tier = fields[0].strip()
        if tier not in TIERS:
            raise AnnotationSyntaxError(f"unknown tier {tier!r}", line_no, cols[0])
        label = fields[1].strip()
        if not label:
            raise AnnotationSyntaxError("empty label", line_no, cols[1])
        times = []
        for idx in (2, 3):
            try:
                times.append(float(fields[idx]))
            except ValueError:
                raise AnnotationSyntaxError(
                    f"bad time {fields[idx]!r}", line_no, cols[idx]
                ) from None
        start_s, end_s = times
        if start_s < 0:
            raise AnnotationSyntaxError(f"negative time {start_s}", line_no, cols[2])
        if end_s <= start_s:
            raise NonMonotonicError(
                f"line {line_no}: end {end_s} <= start {start_s} for '{label}'"
            )
        attrs = _parse_attrs(fields[4].strip(), line_no, cols[4])
        segments.append(Segment(tier, label, start_s, end_s, attrs))
        lines_of[len(segments) - 1] = line_no

    # overlap check with line numbers before handing off to AnnotationSet
    by_tier: dict[str, list[int]] = {}
    for i, seg in enumerate(segments):
        by_tier.setdefault(seg.tier, []).append(i)
    for tier_name, idxs in by_tier.items():
        idxs = sorted(idxs, key=lambda i: (segments[i].start_s, segments[i].end_s))
        for a, b in zip(idxs, idxs[1:]):
            if segments[b].start_s < segments[a].end_s - _TIME_EPS:
                raise OverlapError(
                    f"line {lines_of[b]}: {segments[b].location()} overlaps "
                    f"{segments[a].location()} (line {lines_of[a]}) on tier '{tier_name}'"
                )
    return AnnotationSet(tuple(segments), audio_ref=audio_ref)


def parse_annotations(path: str | Path) -> AnnotationSet:
    path = Path(path)
    return parse_annotation_text(path.read_text(encoding="utf-8"), audio_ref=path.stem)


def _format_time(t: float) -> str:
    return repr(float(t))


def serialize_annotations(ann: AnnotationSet) -> str:
    """Render an AnnotationSet back to the file format.

    Reparsing the result yields an equal AnnotationSet (times use
    shortest-round-trip float formatting, attrs are key-sorted).
    """
    lines = []
    for seg in ann.segments:
        for key, value in seg.attrs.items():
            if any(ch in key + value for ch in "\t\n;="):
                raise ValueError(f"attr {key}={value!r} contains a reserved character")
        attrs = ";".join(f"{k}={seg.attrs[k]}" for k in sorted(seg.attrs))
        lines.append(
            "\t".join(
                (seg.tier, seg.label, _format_time(seg.start_s), _format_time(seg.end_s), attrs)
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def write_annotations(path: str | Path, ann: AnnotationSet) -> None:
    Path(path).write_text(serialize_annotations(ann), encoding="utf-8", newline="\n")


def validate_annotations(
    ann: AnnotationSet, wave: Waveform, stop_only: bool = False
) -> ValidationReport:
    """Semantic checks of an annotation set against its waveform.

    Never raises; returns a report.  Empty ``errors`` means the pair is
    analyzable.  ``stop_only`` additionally flags gemination marks on
    non-stop phones.
    """
    errors = []
    warnings = []
    duration = wave.duration_s

    for seg in ann.segments:
        if seg.end_s > duration + _TIME_EPS:
            errors.append(
                (
                    "SEGMENT_PAST_EOF",
                    f"segment ends at {seg.end_s:.4f}s but audio ends at {duration:.4f}s",
                    seg.location(),
                )
            )

    phones = ann.phones()
    for i, seg in enumerate(phones):
        gem = seg.attrs.get("gem_type")
        if gem is None:
            continue
        if gem not in GEM_TYPES:
            errors.append(
                ("INVALID_GEM_TYPE", f"gem_type {gem!r} not one of {GEM_TYPES}", seg.location())
            )
            continue
        if gem == "none":
            continue
        if not phonemes.may_geminate(seg.label):
            errors.append(
                (
                    "ILLEGAL_GEMINATE",
                    f"phone '{seg.label}' never occurs geminated",
                    seg.location(),
                )
            )
        if stop_only and not phonemes.is_stop(seg.label):
            errors.append(
                (
                    "NON_STOP_GEMINATE",
                    f"gem_type={gem} on non-stop phone '{seg.label}' (stop-only mode)",
                    seg.location(),
                )
            )
        if not seg.utterance_initial:
            prev = phones[i - 1] if i > 0 else None
            if prev is None or not phonemes.is_vowel(prev.label):
                warnings.append(
                    (
                        "MISSING_PRE_VOWEL",
                        "no preceding vowel phone (and not flagged utterance_initial)",
                        seg.location(),
                    )
                )

    return ValidationReport(tuple(errors), tuple(warnings))
