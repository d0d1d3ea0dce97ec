"""Syllable tokenization for Austronesian languages written in Latin script.

Words are split into syllables with rules taken from Indonesian abugida
scripts, syllables are looked up in a frequency-trained vocabulary with
per-character fallback, and tokenizations are compared by tokens per character
and Smith-Waterman similarity across parallel sentences.
"""

__version__ = "0.1.0"

from .baseline_bpe import BpeModel, bpe_encode, load_bpe
from .corpus import ParallelCorpus, load_parallel, save_parallel, unique_words
from .metrics import (
    AlignmentParams,
    SimilarityReport,
    compare_reports,
    pair_report,
    similarity,
    smith_waterman,
    tpc,
)
from .segmentation import (
    PhonologyConfig,
    Segment,
    cluster_pass,
    load_phonology,
    scan,
    segment,
    syllables,
    virama_pass,
)
from .tokenizer import SyllableTokenizer, TokenSequence, decode, encode
from .vocab import (
    SyllableCensus,
    Vocabulary,
    build_vocabulary,
    census,
    fit_power_law,
    load_vocabulary,
    write_vocabulary,
)
