"""Acoustic analysis of stop-consonant gemination.

Measures closure/burst segmentation, burst power, durational parameters,
and the consonant/vowel duration ratio over annotated speech corpora, and
reproduces the associated descriptive and ANOVA tables.  A synthetic
stimulus generator provides exact ground truth for end-to-end testing.
"""

from .acoustics import (
    BURST,
    CLOSURE,
    DOUBLE_BURST,
    SINGLE_BURST,
    AcousticEvent,
    DetectorConfig,
    EnergyContour,
    EventSequence,
    burst_power,
    classify_burst_count,
    detect_acoustic_events,
    short_time_energy,
)
from .annotations import (
    AnnotationSet,
    Segment,
    ValidationReport,
    parse_annotation_text,
    parse_annotations,
    serialize_annotations,
    validate_annotations,
    write_annotations,
)
from .audio_io import Waveform, load_waveform, write_waveform
from .gemination import (
    GEMINATE,
    INDETERMINATE,
    SINGLETON,
    DurationRecord,
    GeminationCall,
    Token,
    build_token,
    classify_gemination,
    classify_ratio,
    extract_durations,
    parse_tokens_csv,
    token_to_row,
    write_token_rows,
)
from .report import Report, build_report
from .stats import (
    AnovaResult,
    Descriptives,
    GroupedSample,
    classify_effect_size,
    descriptive,
    f_cdf,
    one_way_anova,
    regularized_incomplete_beta,
)
from .synth import (
    ClassSpec,
    CorpusSpec,
    GroundTruth,
    StimulusSpec,
    default_corpus_spec,
    generate_corpus,
    ratio_corpus_spec,
    synthesize_vcv,
)

__version__ = "0.1.0"
