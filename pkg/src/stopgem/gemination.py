"""Durational parameters per consonant token and the ratio discriminant.

Naming follows the durational-parameter convention used throughout:
Vd = pre-consonant vowel duration, Cd = consonant duration, Cld = total
closure, Bd = total burst; C1/C2-prefixed fields are the per-consonant
split of a double-burst token.  All durations are milliseconds.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .acoustics import BURST, CLOSURE, DOUBLE_BURST, SINGLE_BURST, EventSequence, check_alternation
from .annotations import Segment
from .errors import InconsistentEventsError, MissingMetadataError

SINGLETON = "singleton"
GEMINATE = "geminate"
INDETERMINATE = "indeterminate"

ADDITIVITY_TOL_MS = 0.01


@dataclass(frozen=True)
class DurationRecord:
    """Durational parameters of one consonant token, in ms.

    Single burst: cd == cld + bd.  Double burst: the C1/C2 split fields are
    all present, per-consonant durations are closure + burst, and the
    totals are the sums over both consonants.  vd is None for a consonant
    with no preceding vowel (utterance-initial).
    """

    vd_ms: Optional[float]
    cd_ms: float
    cld_ms: float
    bd_ms: float
    c1d_ms: Optional[float] = None
    c2d_ms: Optional[float] = None
    cl1d_ms: Optional[float] = None
    cl2d_ms: Optional[float] = None
    b1d_ms: Optional[float] = None
    b2d_ms: Optional[float] = None

    def __post_init__(self):
        split = (self.c1d_ms, self.c2d_ms, self.cl1d_ms, self.cl2d_ms, self.b1d_ms, self.b2d_ms)
        present = [v is not None for v in split]
        if any(present) and not all(present):
            raise ValueError("double-burst split fields must be all present or all absent")
        for name in ("cd_ms", "cld_ms", "bd_ms"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.vd_ms is not None and self.vd_ms < 0:
            raise ValueError("vd_ms must be >= 0")

        def off(a, b):
            return abs(a - b) > ADDITIVITY_TOL_MS

        if self.is_double:
            if (
                off(self.c1d_ms, self.cl1d_ms + self.b1d_ms)
                or off(self.c2d_ms, self.cl2d_ms + self.b2d_ms)
                or off(self.cd_ms, self.c1d_ms + self.c2d_ms)
                or off(self.cld_ms, self.cl1d_ms + self.cl2d_ms)
                or off(self.bd_ms, self.b1d_ms + self.b2d_ms)
            ):
                raise ValueError("double-burst additivity violated beyond 0.01 ms")
        elif off(self.cd_ms, self.cld_ms + self.bd_ms):
            raise ValueError(
                f"cd {self.cd_ms} != cld {self.cld_ms} + bd {self.bd_ms} beyond 0.01 ms"
            )

    @property
    def is_double(self) -> bool:
        return self.c1d_ms is not None

    @property
    def ratio(self) -> Optional[float]:
        """Consonant/vowel duration ratio, None without a vowel."""
        if self.vd_ms is None or self.vd_ms == 0:
            return None
        return self.cd_ms / self.vd_ms


@dataclass(frozen=True)
class GeminationCall:
    verdict: str                    # SINGLETON, GEMINATE or INDETERMINATE
    ratio_used: Optional[float]
    threshold: float


@dataclass(frozen=True)
class Token:
    """One measured consonant: durations, burst powers, ratio, metadata."""

    record: DurationRecord
    burst_powers: tuple[float, ...]
    call: GeminationCall
    gem_type: str
    burst_count: str                # SINGLE_BURST or DOUBLE_BURST
    speaker: str
    sentence_id: str
    repetition: str
    word: str
    consonant: str

    def __post_init__(self):
        if not self.speaker or not self.sentence_id:
            raise MissingMetadataError(
                f"token needs speaker and sentence_id, got speaker={self.speaker!r} "
                f"sentence_id={self.sentence_id!r}"
            )
        want = 2 if self.burst_count == DOUBLE_BURST else 1
        if len(self.burst_powers) != want:
            raise ValueError(
                f"{self.burst_count}-burst token with {len(self.burst_powers)} powers"
            )
        if self.record.is_double != (self.burst_count == DOUBLE_BURST):
            raise ValueError("burst_count disagrees with the duration record")

    @property
    def ratio(self) -> Optional[float]:
        return self.record.ratio


def extract_durations(events: EventSequence, vowel: Optional[Segment] = None) -> DurationRecord:
    """Sum event durations into a DurationRecord (additivity by construction)."""
    check_alternation(events.events, events.consonant_interval)
    closures = [e.duration_ms for e in events.events if e.kind == CLOSURE]
    bursts = [e.duration_ms for e in events.events if e.kind == BURST]
    if len(bursts) not in (1, 2):
        raise InconsistentEventsError(f"{len(bursts)} bursts, expected 1 or 2")

    vd = vowel.duration_ms if vowel is not None else None
    if len(bursts) == 1:
        cld, bd = closures[0], bursts[0]
        return DurationRecord(vd_ms=vd, cd_ms=cld + bd, cld_ms=cld, bd_ms=bd)

    cl1, cl2 = closures
    b1, b2 = bursts
    c1, c2 = cl1 + b1, cl2 + b2
    return DurationRecord(
        vd_ms=vd,
        cd_ms=c1 + c2,
        cld_ms=cl1 + cl2,
        bd_ms=b1 + b2,
        c1d_ms=c1,
        c2d_ms=c2,
        cl1d_ms=cl1,
        cl2d_ms=cl2,
        b1d_ms=b1,
        b2d_ms=b2,
    )


def classify_ratio(ratio: Optional[float], threshold: float = 1.0) -> GeminationCall:
    """Geminate iff ratio >= threshold; ratio at the threshold counts as
    geminate (the boundary is a convention and the threshold configurable)."""
    if ratio is None:
        return GeminationCall(INDETERMINATE, None, threshold)
    verdict = GEMINATE if ratio >= threshold else SINGLETON
    return GeminationCall(verdict, ratio, threshold)


def classify_gemination(record: DurationRecord, threshold: float = 1.0) -> GeminationCall:
    """Classify a token as singleton vs. geminate from its Cd/Vd ratio.

    Tokens without a pre-consonant vowel are indeterminate rather than
    forced to a default ratio.
    """
    return classify_ratio(record.ratio, threshold)


def build_token(
    record: DurationRecord,
    powers: Iterable[float],
    call: GeminationCall,
    *,
    speaker: str,
    sentence_id: str,
    repetition: str = "1",
    word: str = "",
    consonant: str = "",
    gem_type: str = "none",
) -> Token:
    powers = tuple(float(p) for p in powers)
    burst_count = DOUBLE_BURST if record.is_double else SINGLE_BURST
    return Token(
        record=record,
        burst_powers=powers,
        call=call,
        gem_type=gem_type,
        burst_count=burst_count,
        speaker=speaker,
        sentence_id=sentence_id,
        repetition=repetition,
        word=word,
        consonant=consonant,
    )


# ---------------------------------------------------------------------------
# token CSV format
# ---------------------------------------------------------------------------

TOKEN_COLUMNS = [
    "speaker", "sentence_id", "repetition", "word", "consonant",
    "gem_type", "burst_count",
    "Vd_ms", "Cd_ms", "Cld_ms", "Bd_ms",
    "C1d_ms", "C2d_ms", "Cl1d_ms", "Cl2d_ms", "B1d_ms", "B2d_ms",
    "P_burst1", "P_burst2", "ratio",
]
ERROR_COLUMN = "error"

DURATION_COLUMNS = ["Vd_ms", "Cd_ms", "Cld_ms", "Bd_ms",
                    "C1d_ms", "C2d_ms", "Cl1d_ms", "Cl2d_ms", "B1d_ms", "B2d_ms"]
POWER_COLUMNS = ["P_burst1", "P_burst2"]


def _fmt_ms(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.2f}"


def _fmt_power(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.5e}"


def _fmt_ratio(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.6g}"


def token_to_row(token: Token) -> dict[str, str]:
    r = token.record
    p1 = token.burst_powers[0]
    p2 = token.burst_powers[1] if len(token.burst_powers) > 1 else None
    return {
        "speaker": token.speaker,
        "sentence_id": token.sentence_id,
        "repetition": token.repetition,
        "word": token.word,
        "consonant": token.consonant,
        "gem_type": token.gem_type,
        "burst_count": token.burst_count,
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
        "P_burst1": _fmt_power(p1),
        "P_burst2": _fmt_power(p2),
        "ratio": _fmt_ratio(token.ratio),
    }


def error_row(
    error: str,
    *,
    speaker: str = "",
    sentence_id: str = "",
    repetition: str = "",
    word: str = "",
    consonant: str = "",
    gem_type: str = "",
) -> dict[str, str]:
    """Row for a consonant whose analysis failed; measurements stay empty."""
    row = {c: "" for c in TOKEN_COLUMNS}
    row.update(
        speaker=speaker, sentence_id=sentence_id, repetition=repetition,
        word=word, consonant=consonant, gem_type=gem_type,
    )
    row[ERROR_COLUMN] = error
    return row


def write_token_rows(
    path: str | Path, rows: Iterable[dict[str, str]], with_error_column: bool = False
) -> None:
    columns = TOKEN_COLUMNS + ([ERROR_COLUMN] if with_error_column else [])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n", restval="")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row.get(c, "") for c in columns})


@dataclass
class TokenRow:
    """One parsed token-CSV row.

    This is the permissive, report-facing view: values are taken as
    written, so fixture CSVs built from published table cells (which are
    independently rounded and need not be exactly additive) parse fine.
    Invariants are enforced on pipeline-emitted Tokens, not re-checked here.
    """

    speaker: str = ""
    sentence_id: str = ""
    repetition: str = ""
    word: str = ""
    consonant: str = ""
    gem_type: str = "none"
    burst_count: str = SINGLE_BURST
    values: dict[str, Optional[float]] = field(default_factory=dict)
    error: str = ""

    def value(self, column: str) -> Optional[float]:
        return self.values.get(column)


def parse_tokens_csv(path: str | Path) -> list[TokenRow]:
    """Read a token CSV (with or without the trailing error column).

    Raises ValueError with a line number for unknown headers or
    unparseable numeric cells.
    """
    rows: list[TokenRow] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, expected a token CSV header")
        unknown = [c for c in reader.fieldnames if c not in TOKEN_COLUMNS + [ERROR_COLUMN]]
        missing = [c for c in TOKEN_COLUMNS if c not in reader.fieldnames]
        if unknown or missing:
            raise ValueError(
                f"{path}: line 1: bad token CSV header"
                + (f"; unknown columns {unknown}" if unknown else "")
                + (f"; missing columns {missing}" if missing else "")
            )
        for line_no, raw in enumerate(reader, start=2):
            values: dict[str, Optional[float]] = {}
            for col in DURATION_COLUMNS + POWER_COLUMNS + ["ratio"]:
                cell = (raw.get(col) or "").strip()
                if cell == "":
                    values[col] = None
                    continue
                try:
                    values[col] = float(cell)
                except ValueError:
                    raise ValueError(
                        f"{path}: line {line_no}: bad numeric cell {col}={cell!r}"
                    ) from None
            rows.append(
                TokenRow(
                    speaker=(raw.get("speaker") or "").strip(),
                    sentence_id=(raw.get("sentence_id") or "").strip(),
                    repetition=(raw.get("repetition") or "").strip(),
                    word=(raw.get("word") or "").strip(),
                    consonant=(raw.get("consonant") or "").strip(),
                    gem_type=(raw.get("gem_type") or "none").strip(),
                    burst_count=(raw.get("burst_count") or SINGLE_BURST).strip(),
                    values=values,
                    error=(raw.get(ERROR_COLUMN) or "").strip(),
                )
            )
    return rows
