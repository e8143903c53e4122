"""Turning raw identifier names into clean lowercase words.

The pipeline has three stages that can be switched off independently for
the staged evaluation: decomposition (splitting on case changes and
non-letter separators), normalization (abbreviation expansion), and
filtering (stop-word removal).  Lowercasing is not a stage; it always
happens, otherwise the output would not be made of valid Words.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .model import Word

# Splits one letter run at case boundaries.  The first alternative peels
# an uppercase acronym off a following capitalized word (XMLParser ->
# XML, Parser); the rest take capitalized words, lowercase runs, and
# trailing acronyms.
_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")

_LOWER_WORD_RE = re.compile(r"[a-z]+")


class ConfigError(ValueError):
    """A config file or config value that cannot be used."""


class Stage(Enum):
    DECOMPOSE = "decompose"
    NORMALIZE = "normalize"
    FILTER = "filter"


ALL_STAGES = frozenset(Stage)


@dataclass(frozen=True)
class PreprocessConfig:
    abbreviations: dict[str, str] = field(default_factory=dict)
    stop_words: frozenset[str] = frozenset()
    enabled_stages: frozenset[Stage] = ALL_STAGES

    def __post_init__(self):
        for key, value in self.abbreviations.items():
            if not _LOWER_WORD_RE.fullmatch(key):
                raise ConfigError(f"abbreviation key must be lowercase letters: {key!r}")
            if not _LOWER_WORD_RE.fullmatch(value):
                raise ConfigError(f"abbreviation expansion must be a word: {value!r}")
        for entry in self.stop_words:
            if not _LOWER_WORD_RE.fullmatch(entry):
                raise ConfigError(f"stop word must be lowercase letters: {entry!r}")


def _fold_to_letters(raw: str) -> str:
    """ASCII letters kept, diacritics folded, everything else becomes a space."""
    decomposed = unicodedata.normalize("NFD", raw)
    out = []
    for ch in decomposed:
        if unicodedata.category(ch) == "Mn":
            continue
        out.append(ch if ch.isascii() and ch.isalpha() else " ")
    return "".join(out)


def decompose(raw: str) -> list[str]:
    """Split an identifier into letter tokens.

    'GetCityNameById_42' -> ['Get', 'City', 'Name', 'By', 'Id']
    """
    tokens = []
    for segment in _fold_to_letters(raw).split():
        tokens.extend(_CAMEL_RE.findall(segment))
    return tokens


def normalize(tokens: list[str], config: PreprocessConfig) -> list[Word]:
    """Lowercase and expand abbreviations (whole token, exactly once)."""
    words = []
    for token in tokens:
        lowered = token.lower()
        words.append(Word(config.abbreviations.get(lowered, lowered)))
    return words


def filter_words(words: list[Word], config: PreprocessConfig) -> list[Word]:
    """Drop stop words; order of the survivors is unchanged."""
    return [word for word in words if word.text not in config.stop_words]


def preprocess(raw: str, config: PreprocessConfig) -> list[Word]:
    """Run the enabled stages over one raw name.

    With decomposition off the name collapses to a single letters-only
    token, so camel-cased names usually miss the lexicon.  Lowercasing
    still applies even with normalization off.
    """
    if Stage.DECOMPOSE in config.enabled_stages:
        tokens = decompose(raw)
    else:
        collapsed = _fold_to_letters(raw).replace(" ", "")
        tokens = [collapsed] if collapsed else []
    if Stage.NORMALIZE in config.enabled_stages:
        words = normalize(tokens, config)
    else:
        words = [Word(token.lower()) for token in tokens]
    if Stage.FILTER in config.enabled_stages:
        words = filter_words(words, config)
    return words


def parse_abbreviations(text: str, source: str = "<string>") -> dict[str, str]:
    """Parse 'short=expansion' lines; '#' starts a comment, blanks ignored."""
    table: dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{number}: expected 'short=expansion'")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip().lower()
        if not _LOWER_WORD_RE.fullmatch(key) or not _LOWER_WORD_RE.fullmatch(value):
            raise ConfigError(f"{source}:{number}: abbreviation entries must be letters only")
        table[key] = value
    return table


def parse_stop_words(text: str, source: str = "<string>") -> frozenset[str]:
    """Parse one stop word per line; '#' starts a comment, blanks ignored."""
    entries = set()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entry = line.lower()
        if not _LOWER_WORD_RE.fullmatch(entry):
            raise ConfigError(f"{source}:{number}: stop words must be letters only")
        entries.add(entry)
    return frozenset(entries)


def _data_text(filename: str) -> str:
    return resources.files("semwsdl.data").joinpath(filename).read_text("utf-8")


def default_config(enabled_stages: frozenset[Stage] = ALL_STAGES) -> PreprocessConfig:
    """Config backed by the packaged abbreviation and stop-word files."""
    return PreprocessConfig(
        abbreviations=parse_abbreviations(_data_text("abbreviations.txt"), "abbreviations.txt"),
        stop_words=parse_stop_words(_data_text("stopwords.txt"), "stopwords.txt"),
        enabled_stages=enabled_stages,
    )
