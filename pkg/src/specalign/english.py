"""Small rule-based English helpers: number inflection, articles, name splitting."""

from __future__ import annotations

import re

_IRREGULAR_PLURALS = {
    "person": "people",
    "child": "children",
    "man": "men",
    "woman": "women",
    "foot": "feet",
    "tooth": "teeth",
    "mouse": "mice",
    "goose": "geese",
    "criterion": "criteria",
    "analysis": "analyses",
    "status": "statuses",
    "datum": "data",
}
_IRREGULAR_SINGULARS = {plural: singular for singular, plural in _IRREGULAR_PLURALS.items()}
# nouns whose singular and plural forms coincide
_INVARIANT_NOUNS = {"series", "species", "news", "data", "information", "equipment", "software"}

_VOWELS = "aeiou"

_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|\d+")


def pluralize(word: str) -> str:
    lower = word.lower()
    if lower in _INVARIANT_NOUNS:
        return word
    if lower in _IRREGULAR_PLURALS:
        return _IRREGULAR_PLURALS[lower]
    if lower.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if lower.endswith("y") and len(lower) > 1 and lower[-2] not in _VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def singularize(word: str) -> str:
    lower = word.lower()
    if lower in _INVARIANT_NOUNS:
        return lower
    if lower in _IRREGULAR_SINGULARS:
        return _IRREGULAR_SINGULARS[lower]
    if lower.endswith("ies") and len(lower) > 4:
        return lower[:-3] + "y"
    if lower.endswith(("sses", "xes", "zes", "ches", "shes")):
        return lower[:-2]
    if (
        lower.endswith("s")
        and len(lower) > 3
        and not lower.endswith(("ss", "us", "is"))
    ):
        return lower[:-1]
    return lower


# vowel-initial words pronounced with a leading consonant sound ("a user"),
# and consonant-initial words pronounced with a vowel sound ("an hour")
_A_PREFIXES = ("use", "user", "usu", "uni", "ubi", "ute", "uti", "eu", "one", "once")
_AN_PREFIXES = ("hour", "honest", "honor", "honour", "heir")


def article(phrase: str) -> str:
    """Indefinite article for a noun phrase, chosen by the sound of its first word."""
    word = phrase.lstrip().split(" ", 1)[0].lower()
    if word.startswith(_AN_PREFIXES):
        return "an"
    if word.startswith(_A_PREFIXES):
        return "a"
    return "an" if word[:1] in _VOWELS else "a"


def split_name(name: str) -> list[str]:
    """Break an identifier on case boundaries, underscores, hyphens, and spaces.

    "PartType" -> ["part", "type"]; "valid_until" -> ["valid", "until"].
    """
    parts: list[str] = []
    for chunk in re.split(r"[\s_\-.]+", name):
        parts.extend(match.group(0) for match in _CAMEL_RE.finditer(chunk))
    return [part.lower() for part in parts if part]


def words_of(name: str) -> str:
    """Identifier rendered as space-separated lower-case words."""
    return " ".join(split_name(name))


def sentence_case(text: str) -> str:
    return text[:1].upper() + text[1:] if text else text
