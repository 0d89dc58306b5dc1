"""Italian consonant inventory used for annotation sanity checks.

Phone labels in annotation files are free text; this table only backs
validation (is a label a stop? may it be geminated?).  Labels are
IPA-as-text with ASCII stand-ins for the non-ASCII symbols:

    S = esh, Z = ezh-affricate second half is not needed; the affricates
    are written ts, dz, tS, dZ; L = palatal lateral, J = palatal nasal.

A doubled label ("tt", "tsts") denotes a geminate realization of its base.
"""

from __future__ import annotations

from dataclasses import dataclass

# gemination behavior values
BOTH = "single_and_geminate"        # occurs singleton and geminated intervocalically
GEMINATE_ONLY = "geminate_only"     # always geminated intervocalically
NEVER = "never_geminate"            # no geminated form exists


@dataclass(frozen=True)
class ConsonantInfo:
    label: str
    is_stop: bool
    gemination: str


_CONSONANTS = [
    ConsonantInfo("p", True, BOTH),
    ConsonantInfo("b", True, BOTH),
    ConsonantInfo("t", True, BOTH),
    ConsonantInfo("d", True, BOTH),
    ConsonantInfo("k", True, BOTH),
    ConsonantInfo("g", True, BOTH),
    ConsonantInfo("f", False, BOTH),
    ConsonantInfo("v", False, BOTH),
    ConsonantInfo("s", False, BOTH),
    ConsonantInfo("z", False, NEVER),
    ConsonantInfo("m", False, BOTH),
    ConsonantInfo("n", False, BOTH),
    ConsonantInfo("l", False, BOTH),
    ConsonantInfo("r", False, BOTH),
    ConsonantInfo("tS", False, BOTH),
    ConsonantInfo("dZ", False, BOTH),
    ConsonantInfo("ts", False, GEMINATE_ONLY),
    ConsonantInfo("dz", False, GEMINATE_ONLY),
    ConsonantInfo("S", False, GEMINATE_ONLY),
    ConsonantInfo("J", False, GEMINATE_ONLY),
    ConsonantInfo("L", False, GEMINATE_ONLY),
]

CONSONANTS: dict[str, ConsonantInfo] = {c.label: c for c in _CONSONANTS}

# unicode IPA aliases accepted in annotation labels
_ALIASES = {
    "ʃ": "S",      # ʃ
    "ʎ": "L",      # ʎ
    "ɲ": "J",      # ɲ
    "tʃ": "tS",    # tʃ
    "dʒ": "dZ",    # dʒ
    "ʦ": "ts",     # ʦ
    "ʣ": "dz",     # ʣ
    "c": "k",           # orthographic hard c
    "q": "k",
}

VOWELS = frozenset({"a", "e", "E", "i", "o", "O", "u", "ɛ", "ɔ"})
GLIDES = frozenset({"j", "w"})


def base_label(label: str) -> str:
    """Strip geminate doubling: 'tt' -> 't', 'tsts' -> 'ts'.

    A label is treated as doubled when it is some string repeated twice.
    Unknown labels pass through unchanged.
    """
    label = label.strip()
    if len(label) >= 2 and len(label) % 2 == 0:
        half = label[: len(label) // 2]
        if half + half == label:
            label = half
    return _ALIASES.get(label, label)


def lookup(label: str) -> ConsonantInfo | None:
    """Consonant info for a phone label (de-doubled), or None if unknown."""
    return CONSONANTS.get(base_label(label))


def is_stop(label: str) -> bool:
    info = lookup(label)
    return info is not None and info.is_stop


def is_vowel(label: str) -> bool:
    return base_label(label) in VOWELS


def may_geminate(label: str) -> bool:
    """False only for consonants that never occur geminated (/z/)."""
    info = lookup(label)
    return info is None or info.gemination != NEVER
