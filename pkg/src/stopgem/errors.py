"""Exception hierarchy for the stopgem package."""


class StopgemError(Exception):
    """Base class for all package errors."""


# --- audio file errors ---

class NotWavError(StopgemError):
    """File is not a RIFF/WAVE container."""


class UnsupportedFormatError(StopgemError):
    """WAV file is not mono 16-bit integer PCM."""


class TruncatedFileError(StopgemError):
    """WAV file ends before the declared chunk sizes."""


# --- annotation file errors ---

class AnnotationSyntaxError(StopgemError):
    """Malformed annotation line.  Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonMonotonicError(StopgemError):
    """Segment with end <= start."""


class OverlapError(StopgemError):
    """Two segments on the same tier overlap in time."""


# --- acoustic analysis errors ---

class IntervalOutOfRangeError(StopgemError):
    """Requested time interval falls outside the waveform."""


class EmptyIntervalError(StopgemError):
    """Interval contains no samples."""


class DegenerateWindowError(StopgemError):
    """Analysis window shorter than two samples."""


class NoBurstFoundError(StopgemError):
    """No supra-threshold burst onset inside the consonant interval."""


class MoreThanTwoBurstsError(StopgemError):
    """Detector found more than two distinct bursts.

    ``candidates`` holds the (start_s, end_s) of every candidate burst so
    the caller can inspect what the detector saw.
    """

    def __init__(self, candidates):
        super().__init__(
            f"{len(candidates)} burst candidates at "
            + ", ".join(f"[{s:.4f}, {e:.4f}]" for s, e in candidates)
        )
        self.candidates = list(candidates)


class InconsistentEventsError(StopgemError):
    """Event sequence violates the closure/burst alternation invariant."""


# --- token/metadata errors ---

class MissingMetadataError(StopgemError):
    """Token is missing required metadata (speaker or sentence id)."""


# --- statistics errors ---

class EmptyInputError(StopgemError):
    """Descriptive statistics of an empty sample."""


class TooFewGroupsError(StopgemError):
    """ANOVA needs at least two groups."""


class ZeroWithinVarianceError(StopgemError):
    """All groups are internally constant; F is undefined."""


class NonConvergenceError(StopgemError):
    """Continued-fraction evaluation hit its iteration cap."""


# --- synthesis errors ---

class SpecInfeasibleError(StopgemError):
    """Stimulus spec cannot be realized (e.g. ramps longer than the vowel)."""
