"""Command-line front end: validate, analyze, synth, report.

Exit codes: 0 success, 1 data error, 2 I/O error.  Every threshold can be
set in a flat key=value config file and overridden by the flag of the
same name; flags win.  Parallel analysis (--jobs) merges per-file results
in sorted order, so the output bytes never depend on the worker count.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import phonemes
from .acoustics import DetectorConfig, classify_burst_count, detect_acoustic_events
from .annotations import parse_annotations, validate_annotations
from .audio_io import load_waveform
from .errors import StopgemError
from .gemination import (
    build_token,
    classify_gemination,
    error_row,
    extract_durations,
    parse_tokens_csv,
    token_to_row,
    write_token_rows,
)
from .report import build_report
from .synth import corpus_spec_from_json, default_corpus_spec, generate_corpus

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_IO_ERROR = 2

_DETECTOR_KEYS = ("window_s", "hop_s", "rise_factor", "rel_floor",
                  "min_gap_s", "min_offset_s", "floor_run_s")
_FLOAT_KEYS = _DETECTOR_KEYS + ("ratio_threshold", "significance")
_INT_KEYS = ("jobs", "seed")
_BOOL_KEYS = ("paper_df", "stop_only")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    detector: DetectorConfig = DetectorConfig()
    ratio_threshold: float = 1.0
    significance: float = 0.05
    paper_df: bool = False
    stop_only: bool = False
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.ratio_threshold <= 0 or self.significance <= 0:
            raise ValueError("thresholds must be positive")


def load_config_file(path: str | Path) -> dict:
    """Flat key=value file; '#' starts a comment; keys match the CLI flags."""
    values: dict = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not eq or not key:
            raise ValueError(f"{path}: line {line_no}: expected key=value, got {line!r}")
        if key in _FLOAT_KEYS:
            values[key] = float(raw)
        elif key in _INT_KEYS:
            values[key] = int(raw)
        elif key in _BOOL_KEYS:
            if raw.lower() not in ("0", "1", "true", "false", "yes", "no"):
                raise ValueError(f"{path}: line {line_no}: bad boolean {raw!r}")
            values[key] = raw.lower() in ("1", "true", "yes")
        else:
            raise ValueError(f"{path}: line {line_no}: unknown key {key!r}")
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """defaults < config file < command-line flags."""
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(load_config_file(args.config))
    for key in _FLOAT_KEYS + _INT_KEYS + _BOOL_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    detector = DetectorConfig(
        **{k: merged.pop(k) for k in _DETECTOR_KEYS if k in merged}
    )
    return RunConfig(detector=detector, **merged)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat key=value config file")
    parser.add_argument("--seed", type=int, default=None, help="base random seed")
    parser.add_argument("--jobs", type=int, default=None, help="parallel workers")
    parser.add_argument("--ratio-threshold", dest="ratio_threshold", type=float, default=None,
                        help="Cd/Vd threshold for the geminate call (default 1.0)")
    parser.add_argument("--paper-df", dest="paper_df", action="store_const", const=True,
                        default=None, help="also print N-1 style df for table comparison")
    parser.add_argument("--significance", type=float, default=None,
                        help="ANOVA significance threshold p* (default 0.05)")
    parser.add_argument("--stop-only", dest="stop_only", action="store_const", const=True,
                        default=None, help="flag gemination marks on non-stop phones")
    for key in _DETECTOR_KEYS:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float, default=None,
                            help=f"detector {key}")


def _pairs(audio_dir: Path, ann_dir: Path) -> list[tuple[str, Path, Path]]:
    """(stem, wav, ann) for every annotation file, sorted by stem."""
    pairs = []
    for ann_path in sorted(ann_dir.glob("*.ann")):
        stem = ann_path.stem
        pairs.append((stem, audio_dir / f"{stem}.wav", ann_path))
    return pairs


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    audio_dir, ann_dir = Path(args.audio_dir), Path(args.annotation_dir)
    if not audio_dir.is_dir() or not ann_dir.is_dir():
        print(f"error: {audio_dir} or {ann_dir} is not a directory", file=sys.stderr)
        return EXIT_IO_ERROR
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    any_errors = False
    for stem, wav_path, ann_path in _pairs(audio_dir, ann_dir):
        lines: list[str] = []
        if not wav_path.exists():
            lines.append(f"ERROR PAIRING_ERROR at {ann_path}: no audio file {wav_path.name}")
        else:
            try:
                ann = parse_annotations(ann_path)
                wave = load_waveform(wav_path)
            except StopgemError as exc:
                lines.append(f"ERROR {type(exc).__name__} at {ann_path}: {exc}")
            else:
                report = validate_annotations(ann, wave, stop_only=config.stop_only)
                lines.extend(report.lines())
        has_error = any(line.startswith("ERROR") for line in lines)
        any_errors = any_errors or has_error
        text = "\n".join([f"pair {stem}: {'FAIL' if has_error else 'ok'}"] + lines) + "\n"
        if out_dir:
            (out_dir / f"{stem}.validation.txt").write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return EXIT_DATA_ERROR if any_errors else EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _analyze_pair(task) -> list[tuple[tuple, dict]]:
    """Analyze one (wav, ann) pair; returns (sort_key, csv_row) tuples.

    Runs in worker processes; must stay picklable and side-effect free.
    """
    stem, wav_path, ann_path, detector, ratio_threshold = task
    rows: list[tuple[tuple, dict]] = []
    try:
        ann = parse_annotations(ann_path)
        wave = load_waveform(wav_path)
    except (StopgemError, OSError) as exc:
        key = ("", "", "", 0.0, stem)
        return [(key, error_row(f"{type(exc).__name__}: {exc}", word=stem))]

    phones = ann.phones()
    for i, seg in enumerate(phones):
        if not phonemes.is_stop(seg.label):
            continue
        speaker = seg.attrs.get("speaker", "")
        sentence = seg.attrs.get("sentence_id", "")
        repetition = seg.attrs.get("repetition", "1")
        word = seg.attrs.get("word", "")
        sid_key = (0, int(sentence)) if sentence.isdigit() else (1, sentence)
        key = (speaker, sid_key, repetition, seg.start_s, stem)
        meta = dict(
            speaker=speaker, sentence_id=sentence, repetition=repetition,
            word=word, consonant=seg.label, gem_type=seg.gem_type,
        )
        vowel = None
        if i > 0 and phonemes.is_vowel(phones[i - 1].label):
            vowel = phones[i - 1]
        try:
            events = detect_acoustic_events(
                wave,
                (seg.start_s, seg.end_s),
                (vowel.start_s, vowel.end_s) if vowel else None,
                detector,
            )
            record = extract_durations(events, vowel)
            call = classify_gemination(record, threshold=ratio_threshold)
            token = build_token(
                record,
                [e.peak_power for e in events.bursts()],
                call,
                **meta,
            )
        except StopgemError as exc:
            rows.append((key, error_row(f"{type(exc).__name__}: {exc}", **meta)))
            continue
        row = token_to_row(token)
        row["error"] = ""
        rows.append((key, row))
    return rows


def cmd_analyze(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    audio_dir, ann_dir = Path(args.audio_dir), Path(args.annotation_dir)
    if not audio_dir.is_dir() or not ann_dir.is_dir():
        print(f"error: {audio_dir} or {ann_dir} is not a directory", file=sys.stderr)
        return EXIT_IO_ERROR

    tasks = [
        (stem, wav, ann, config.detector, config.ratio_threshold)
        for stem, wav, ann in _pairs(audio_dir, ann_dir)
    ]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            per_file = list(pool.map(_analyze_pair, tasks, chunksize=8))
    else:
        per_file = [_analyze_pair(t) for t in tasks]

    keyed = [item for file_rows in per_file for item in file_rows]
    keyed.sort(key=lambda kr: kr[0])
    write_token_rows(args.out_csv, [row for _, row in keyed], with_error_column=True)
    n_err = sum(1 for _, row in keyed if row.get("error"))
    print(f"analyzed {len(keyed)} consonants ({n_err} with errors) -> {args.out_csv}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def cmd_synth(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    try:
        if args.spec_file:
            spec = corpus_spec_from_json(Path(args.spec_file).read_text(encoding="utf-8"))
        else:
            spec = default_corpus_spec(n_tokens=args.tokens)
        manifest = generate_corpus(spec, config.seed, args.out_dir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    except (StopgemError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    print(f"wrote {spec.n_tokens} tokens under {args.out_dir} (manifest {manifest})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def cmd_report(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    try:
        rows = parse_tokens_csv(args.tokens_csv)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR

    report = build_report(
        rows, significance=config.significance, paper_df=config.paper_df
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.txt").write_text(report.render_text(), encoding="utf-8")
    (out_dir / "report.json").write_text(report.to_json(), encoding="utf-8")
    for name, text in report.plot_series().items():
        (out_dir / f"plot_{name}.csv").write_text(text, encoding="utf-8")
    print(f"report written to {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stopgem",
        description="Acoustic analysis of stop-consonant gemination",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check audio/annotation pairs")
    p.add_argument("audio_dir")
    p.add_argument("annotation_dir")
    p.add_argument("--out-dir", default=None, help="write one report file per pair")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="measure every annotated stop consonant")
    p.add_argument("audio_dir")
    p.add_argument("annotation_dir")
    p.add_argument("out_csv")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="generate a synthetic ground-truth corpus")
    p.add_argument("out_dir")
    p.add_argument("--spec-file", default=None, help="JSON corpus spec")
    p.add_argument("--tokens", type=int, default=200, help="corpus size for the default spec")
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="build tables and ANOVA battery from a token CSV")
    p.add_argument("tokens_csv")
    p.add_argument("out_dir")
    _add_common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
