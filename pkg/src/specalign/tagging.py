"""Word-class tagging behind a minimal interface.

The pipeline only needs to know whether a token behaves as a NOUN, a VERB,
or something else. The default tagger is rule based and fully deterministic:
closed-class word lists, a verb-form lexicon (inflections listed explicitly,
so third-person forms like "rents" or "provides" tag as verbs), and suffix
heuristics. Anything unknown is assumed to be a noun, which suits concept
extraction: over-generating candidates is tolerated downstream.

A different tagger can be swapped in by implementing ``tag_sentence``.
"""

from __future__ import annotations

from enum import Enum
from importlib import resources


class Tag(Enum):
    NOUN = "noun"
    VERB = "verb"
    OTHER = "other"


def _load_words(filename: str) -> frozenset[str]:
    text = resources.files("specalign.data").joinpath(filename).read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.update(line.lower().split())
    return frozenset(words)


def _load_pairs(filename: str) -> dict[str, str]:
    text = resources.files("specalign.data").joinpath(filename).read_text("utf-8")
    pairs = {}
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            key, value = line.lower().split()
            pairs[key] = value
    return pairs


STOPWORDS = _load_words("stopwords.txt")
ADJECTIVES = _load_words("adjectives.txt")
VERB_FORMS = _load_words("verbs.txt")
IRREGULAR_NOUN_SINGULARS = _load_pairs("irregular_nouns.txt")
ABBREVIATIONS = _load_words("abbreviations.txt")

# words that mark the start of a noun phrase: the next open-class word is a
# noun ("the record"). "that"/"which" are absent on purpose; they introduce
# relative clauses whose first word is usually a verb ("a garage that offers").
_NP_STARTERS = frozenset(
    "the a an this these those each every all some any both either neither "
    "no his her its their our your my".split()
)
_AUXILIARIES = frozenset(
    "is are was were be been being am do does did has have had will would "
    "can could may might shall should must".split()
)

_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ance", "ence", "ity", "ship", "age")


class RuleBasedTagger:
    """Deterministic lexicon-and-suffix tagger."""

    def tag_word(self, word: str, previous: str | None = None) -> Tag:
        lower = word.lower()
        if not any(ch.isalpha() for ch in lower):
            return Tag.OTHER
        if lower in STOPWORDS:
            return Tag.OTHER
        if lower in ADJECTIVES:
            return Tag.OTHER
        prev = previous.lower() if previous else None
        if prev in _NP_STARTERS or (prev and prev in ADJECTIVES):
            # inside a noun phrase even for ambiguous words ("the record")
            return Tag.NOUN if lower not in _AUXILIARIES else Tag.OTHER
        if lower in VERB_FORMS:
            return Tag.VERB
        if lower.endswith(("ed", "ing")) and prev in _AUXILIARIES:
            return Tag.VERB
        if lower.endswith(_NOUN_SUFFIXES):
            return Tag.NOUN
        return Tag.NOUN

    def tag_sentence(self, words: list[str]) -> list[Tag]:
        tags = []
        previous = None
        for word in words:
            tags.append(self.tag_word(word, previous))
            previous = word
        return tags


DEFAULT_TAGGER = RuleBasedTagger()
