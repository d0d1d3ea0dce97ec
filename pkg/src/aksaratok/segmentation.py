"""Syllabic segmentation of Latin-script words following abugida (aksara) logic.

A word is segmented in three passes:

1. :func:`scan` walks the word left to right and emits ``(onset, nucleus, coda)``
   units, the way a reader of an aksara script picks out base consonants and their
   vowel signs. Consonants not followed by a vowel become nucleus-less units.
2. :func:`virama_pass` folds nucleus-less units backwards into the coda of the
   preceding unit, mirroring the vowel-killer mark.
3. :func:`cluster_pass` pushes whatever is still nucleus-less (word-initial
   clusters such as the ``s`` in ``struktur``) forward into the next onset.

:func:`segment` composes the three.

The character classes live in :class:`PhonologyConfig`, which can be loaded from a
small sectioned text file (see :func:`parse_phonology`).
"""

from __future__ import annotations

import hashlib
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import InvalidCharacter, InvalidConfig

SECTIONS = ("vowels", "consonants", "digraphs", "medials", "special_codas")

_DEFAULT_VOWELS = frozenset("aeiou")


def _fs(items: Iterable[str]) -> frozenset:
    return frozenset(items)


@dataclass(frozen=True)
class PhonologyConfig:
    """Character classes that drive segmentation.

    ``vowels`` and ``consonants`` are single characters and together define which
    characters a word may contain. ``digraphs`` are two-consonant strings scanned
    as one unit (``ng``, ``ny``). ``medials`` are the semivowels that may join a
    preceding consonant in a single onset (``tr`` in ``putra``). ``special_codas``
    are consonant strings that attach directly to a preceding nucleus.
    """

    vowels: frozenset = _DEFAULT_VOWELS
    consonants: frozenset = frozenset(set(string.ascii_lowercase) - _DEFAULT_VOWELS)
    digraphs: frozenset = frozenset({"ng", "ny", "kh", "sy", "th", "dh"})
    medials: frozenset = frozenset({"r", "l", "w", "y"})
    special_codas: frozenset = frozenset({"ng", "h", "r", "l"})
    # longest-first, precomputed for scan()
    _codas_by_length: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in SECTIONS:
            object.__setattr__(self, name, _fs(getattr(self, name)))
        self._validate()
        codas = tuple(sorted(self.special_codas, key=lambda s: (-len(s), s)))
        object.__setattr__(self, "_codas_by_length", codas)

    def _validate(self):
        for name in ("vowels", "consonants", "medials"):
            bad = sorted(c for c in getattr(self, name) if len(c) != 1)
            if bad:
                raise InvalidConfig(f"{name} must be single characters, got {bad}")
        if not self.vowels:
            raise InvalidConfig("vowel set is empty")
        both = self.vowels & self.consonants
        if both:
            raise InvalidConfig(f"characters listed as both vowel and consonant: {sorted(both)}")
        for d in self.digraphs:
            if len(d) != 2:
                raise InvalidConfig(f"digraph {d!r} does not have exactly two characters")
            if any(c not in self.consonants for c in d):
                raise InvalidConfig(f"digraph {d!r} contains a non-consonant")
        stray = sorted(m for m in self.medials if m not in self.consonants)
        if stray:
            raise InvalidConfig(f"medials must be consonants: {stray}")
        for h in self.special_codas:
            if not h or any(c not in self.consonants for c in h):
                raise InvalidConfig(f"special coda {h!r} must be a non-empty consonant string")

    @classmethod
    def default(cls) -> "PhonologyConfig":
        return cls()

    def is_vowel(self, ch: str) -> bool:
        return ch in self.vowels

    def is_letter(self, ch: str) -> bool:
        """True if ``ch`` is a vowel or a consonant under this config."""
        return ch in self.vowels or ch in self.consonants

    @property
    def alphabet(self) -> str:
        return "".join(sorted(self.vowels | self.consonants))

    def to_text(self) -> str:
        """Canonical file form; :func:`parse_phonology` reads it back."""
        lines = []
        for name in SECTIONS:
            lines.append(f"[{name}]")
            lines.append(" ".join(sorted(getattr(self, name))))
        return "\n".join(lines) + "\n"

    def config_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()


def parse_phonology(text: str) -> PhonologyConfig:
    """Parse the sectioned config format.

    ::

        # comment
        [vowels]
        a e i o u
        [digraphs]
        ng ny

    Entries are whitespace separated and may span several lines. Sections that
    are absent keep their defaults; a present but empty section means the empty set.
    """
    found: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in SECTIONS:
                raise InvalidConfig(f"line {lineno}: unknown section [{current}]")
            found.setdefault(current, [])
            continue
        if current is None:
            raise InvalidConfig(f"line {lineno}: entries before the first [section]")
        found[current].extend(line.split())
    return PhonologyConfig(**{k: frozenset(v) for k, v in found.items()})


def load_phonology(path) -> PhonologyConfig:
    if path is None:
        return PhonologyConfig.default()
    return parse_phonology(Path(path).read_text(encoding="utf-8"))


def default_phonology_text() -> str:
    return resources.files("aksaratok.data").joinpath("phonology_default.txt").read_text(encoding="utf-8")


@dataclass(frozen=True)
class Segment:
    onset: str = ""
    nucleus: str = ""
    coda: str = ""

    @property
    def surface(self) -> str:
        return self.onset + self.nucleus + self.coda

    def __str__(self):
        return self.surface


def _check_word(word: str, cfg: PhonologyConfig):
    for pos, ch in enumerate(word):
        if not cfg.is_letter(ch):
            raise InvalidCharacter(ch, pos, word)


def _unit_end(word: str, start: int, stop: int, digraphs) -> int:
    # advance over consonant units (digraph first) from start until reaching stop
    pos = start
    while pos < stop:
        pos += 2 if word[pos:pos + 2] in digraphs else 1
    return pos


def _match_coda(word: str, i: int, cfg: PhonologyConfig) -> str:
    n = len(word)
    for h in cfg._codas_by_length:
        if not word.startswith(h, i):
            continue
        end = i + len(h)
        # a consonant that opens the next syllable is not a coda
        if end < n and word[end] in cfg.vowels:
            continue
        # must not cut through a digraph, e.g. "n" out of "ng"
        if _unit_end(word, i, end, cfg.digraphs) != end:
            continue
        return h
    return ""


def scan(word: str, cfg: PhonologyConfig | None = None) -> list[Segment]:
    """Left-to-right pass that identifies onsets, nuclei and special codas.

    The onset candidate at the cursor is a digraph if one starts there, otherwise
    a single consonant. It grows into a medial cluster when the next character is
    a medial followed by a vowel, unless the candidate is itself a special coda or
    a medial. A consonant (cluster) with no vowel after it is emitted on its own.
    """
    cfg = cfg or PhonologyConfig.default()
    _check_word(word, cfg)
    vowels, digraphs, medials = cfg.vowels, cfg.digraphs, cfg.medials
    n = len(word)
    out: list[Segment] = []
    i = 0
    while i < n:
        if word[i] in vowels:
            onset = ""
            j = i
        else:
            alpha = word[i:i + 2] if word[i:i + 2] in digraphs else word[i]
            j = i + len(alpha)
            onset = alpha
            if (
                j + 1 < n
                and word[j] in medials
                and word[j + 1] in vowels
                and alpha not in cfg.special_codas
                and alpha not in medials
            ):
                onset = alpha + word[j]
                j += 1
            if j >= n or word[j] not in vowels:
                out.append(Segment(onset, "", ""))
                i = j
                continue
        nucleus = word[j]
        i = j + 1
        coda = _match_coda(word, i, cfg)
        i += len(coda)
        out.append(Segment(onset, nucleus, coda))
    return out


def virama_pass(segments: list[Segment]) -> list[Segment]:
    """Fold each nucleus-less unit into the coda of the unit before it.

    Runs from the last unit back to the second. Because the merge target is
    always the immediate predecessor, a run of trailing consonants collapses
    onto the last vowel-bearing unit (``teks`` -> ``teks``, not ``tek`` + ``s``).
    A nucleus-less first unit is left for :func:`cluster_pass`.
    """
    segs = list(segments)
    for i in range(len(segs) - 1, 0, -1):
        if segs[i].nucleus:
            continue
        prev = segs[i - 1]
        segs[i - 1] = Segment(prev.onset, prev.nucleus, prev.coda + segs[i].surface)
        del segs[i]
    return segs


def cluster_pass(segments: list[Segment]) -> list[Segment]:
    """Prepend each nucleus-less unit to the onset of the unit after it.

    A nucleus-less final unit has nowhere to go and is kept as is.
    """
    out: list[Segment] = []
    carry = ""
    last = len(segments) - 1
    for idx, seg in enumerate(segments):
        if carry:
            seg = Segment(carry + seg.onset, seg.nucleus, seg.coda)
            carry = ""
        if not seg.nucleus and idx < last:
            carry = seg.surface
            continue
        out.append(seg)
    return out


def segment(word: str, cfg: PhonologyConfig | None = None) -> list[Segment]:
    return cluster_pass(virama_pass(scan(word, cfg)))


def syllables(word: str, cfg: PhonologyConfig | None = None) -> list[str]:
    """Surface strings of :func:`segment`, e.g. ``"struktur"`` -> ``["struk", "tur"]``."""
    return [s.surface for s in segment(word, cfg)]
