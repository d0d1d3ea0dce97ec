"""Exception hierarchy.

Every error raised on bad input data derives from :class:`AksaraTokError`, so the
CLI can map them all to the "data error" exit code in one place.
"""


class AksaraTokError(Exception):
    """Base class for data errors raised by this package."""


class InvalidConfig(AksaraTokError, ValueError):
    pass


class InvalidCharacter(AksaraTokError, ValueError):
    def __init__(self, char, position, word):
        self.char = char
        self.position = position
        self.word = word
        super().__init__(
            f"character {char!r} at position {position} of {word!r} is neither a vowel nor a consonant"
        )


# vocab
class TargetTooSmall(AksaraTokError, ValueError):
    pass


class InsufficientData(AksaraTokError, ValueError):
    pass


class DegenerateDistribution(AksaraTokError, ValueError):
    pass


# tokenizer
class InvalidTokenId(AksaraTokError, ValueError):
    pass


# baseline_bpe
class MalformedVocab(AksaraTokError, ValueError):
    pass


class MalformedMerges(AksaraTokError, ValueError):
    pass


class InconsistentModel(AksaraTokError, ValueError):
    pass


# metrics
class EmptyText(AksaraTokError, ValueError):
    pass


class EmptySequence(AksaraTokError, ValueError):
    pass


class NoValidSamples(AksaraTokError, ValueError):
    pass


class PairMismatch(AksaraTokError, ValueError):
    pass


# corpus
class MissingColumn(AksaraTokError, ValueError):
    pass


class RowCountMismatch(AksaraTokError, ValueError):
    pass


class EncodingError(AksaraTokError, ValueError):
    pass


class UnknownLanguage(AksaraTokError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown language"
