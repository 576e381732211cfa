"""Specification text preprocessing.

Turns raw requirement text into sentence-traceable textual concepts and
relations: segment sentences, resolve third-person pronouns to the nouns
they stand for, then collect noun concepts and verb-linked concept pairs.
Concept and relation tuples always reference the original sentence indices
even though extraction runs over the pronoun-resolved text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .english import singularize
from .tagging import ABBREVIATIONS, DEFAULT_TAGGER, STOPWORDS, Tag

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'-]*|\d+(?:\.\d+)?|[^\sA-Za-z0-9]")
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s|$)")

_SINGULAR_PRONOUNS = {"it", "its"}
_PLURAL_PRONOUNS = {"they", "them", "their"}
_PRONOUNS = _SINGULAR_PRONOUNS | _PLURAL_PRONOUNS
# tokens that open a subordinate clause; mentions inside one are skipped
# when searching for a pronoun antecedent
_CLAUSE_OPENERS = {"that", "which", "who", "whom", "whose"}
_CLAUSE_CLOSERS = {",", ";", ":", "-", "--", "–", "—"}


@dataclass
class Sentence:
    """One specification sentence; indices are 1-based and contiguous."""

    index: int
    original_text: str
    resolved_text: str = ""

    def text(self) -> str:
        return self.resolved_text or self.original_text


@dataclass
class TextualConcept:
    name: str  # lower-cased singular lemma
    sentences: set[int] = field(default_factory=set)


@dataclass
class TextualRelation:
    token: str  # verb as written, lower-cased
    source: str
    target: str
    sentences: set[int] = field(default_factory=set)


@dataclass
class Extraction:
    sentences: list[Sentence]
    concepts: list[TextualConcept]
    relations: list[TextualRelation]

    def concept(self, name: str) -> TextualConcept | None:
        for concept in self.concepts:
            if concept.name == name:
                return concept
        return None


def _ends_with_abbreviation(text: str, stop: int) -> bool:
    # text[stop] is the first char of the boundary punctuation
    head = text[: stop + 1]
    tail = head[max(0, stop - 11) :].lower()
    return any(tail.endswith(abbr) for abbr in ABBREVIATIONS)


def segment(text: str) -> list[Sentence]:
    """Split text into sentences on ., ! or ? followed by whitespace or EOF.

    A small abbreviation list guards against false splits; decimal points
    never match because they are not followed by whitespace.
    """
    sentences: list[Sentence] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        if match.group(0).startswith(".") and _ends_with_abbreviation(text, match.start()):
            continue
        chunk = text[start : match.end()].strip()
        if chunk:
            sentences.append(Sentence(index=len(sentences) + 1, original_text=chunk))
        start = match.end()
    trailing = text[start:].strip()
    if trailing:
        sentences.append(Sentence(index=len(sentences) + 1, original_text=trailing))
    return sentences


def _tokens(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(0), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def _subordinate_spans(tokens) -> list[tuple[int, int]]:
    """Token index ranges covered by that/which/who clauses."""
    spans = []
    open_at = None
    for i, (word, _, _) in enumerate(tokens):
        lower = word.lower()
        if open_at is None and lower in _CLAUSE_OPENERS:
            open_at = i
        elif open_at is not None and lower in _CLAUSE_CLOSERS:
            spans.append((open_at, i))
            open_at = None
    if open_at is not None:
        spans.append((open_at, len(tokens)))
    return spans


def _is_plural(word: str) -> bool:
    lower = word.lower()
    return lower != singularize(lower)


def resolve_references(sentences: list[Sentence], tagger=DEFAULT_TAGGER) -> list[Sentence]:
    """Fill ``resolved_text`` by replacing third-person pronouns in place.

    The antecedent is the nearest preceding noun in the same sentence with
    matching number, skipping nouns inside subordinate clauses (in "each car
    that comes to the garage, ... its plate" the antecedent is "car", not
    "garage"). Pronouns without an antecedent are left untouched.
    """
    for sentence in sentences:
        tokens = _tokens(sentence.original_text)
        words = [tok[0] for tok in tokens]
        tags = tagger.tag_sentence(words)
        spans = _subordinate_spans(tokens)

        def buried(i: int) -> bool:
            return any(lo < i <= hi for lo, hi in spans)

        replacements: list[tuple[int, int, str]] = []
        for i, (word, start, end) in enumerate(tokens):
            lower = word.lower()
            if lower not in _PRONOUNS:
                continue
            want_plural = lower in _PLURAL_PRONOUNS
            antecedent = None
            for j in range(i - 1, -1, -1):
                if tags[j] is not Tag.NOUN or buried(j):
                    continue
                if _is_plural(words[j]) != want_plural:
                    continue
                antecedent = singularize(words[j]) if not want_plural else words[j].lower()
                break
            if antecedent is None:
                continue
            if word[0].isupper():
                antecedent = antecedent.capitalize()
            replacements.append((start, end, antecedent))

        resolved = sentence.original_text
        for start, end, replacement in reversed(replacements):
            resolved = resolved[:start] + replacement + resolved[end:]
        sentence.resolved_text = resolved
    return sentences


def _noun_runs(words, tags) -> list[list[int]]:
    """Indices of maximal runs of adjacent nouns (compound candidates)."""
    runs, current = [], []
    for i, tag in enumerate(tags):
        if tag is Tag.NOUN and len(words[i]) > 1:
            current.append(i)
        else:
            if current:
                runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def extract_concepts(sentences: list[Sentence], tagger=DEFAULT_TAGGER) -> list[TextualConcept]:
    """Collect noun lemmas per sentence; equal lemmas merge their sentence sets.

    Adjacent noun pairs additionally emit a joined bigram lemma so that
    two-word model names ("plate number", "braking system") can match.
    """
    table: dict[str, TextualConcept] = {}

    def record(lemma: str, index: int):
        if not lemma or lemma in STOPWORDS:
            return
        concept = table.get(lemma)
        if concept is None:
            concept = table[lemma] = TextualConcept(name=lemma)
        concept.sentences.add(index)

    for sentence in sentences:
        tokens = _tokens(sentence.text())
        words = [tok[0] for tok in tokens]
        tags = tagger.tag_sentence(words)
        for run in _noun_runs(words, tags):
            lemmas = [singularize(words[i]) for i in run]
            for lemma in lemmas:
                record(lemma, sentence.index)
            for left, right in zip(lemmas, lemmas[1:]):
                record(f"{left} {right}", sentence.index)
    return sorted(table.values(), key=lambda c: c.name)


def extract_relations(
    sentences: list[Sentence],
    concepts: list[TextualConcept],
    tagger=DEFAULT_TAGGER,
) -> list[TextualRelation]:
    """Derive (verb, source, target) triples per sentence.

    Source and target are the nearest concept nouns on each side of the
    verb. When the nearest following noun heads an "of" phrase ("two types
    of services"), the object of the "of" is used instead, since it carries
    the meaning. Relations whose source equals their target are dropped.
    """
    lemma_names = {concept.name for concept in concepts}
    table: dict[tuple[str, str, str], TextualRelation] = {}

    for sentence in sentences:
        tokens = _tokens(sentence.text())
        words = [tok[0] for tok in tokens]
        tags = tagger.tag_sentence(words)
        lemmas = [singularize(word) if tag is Tag.NOUN else "" for word, tag in zip(words, tags)]

        def concept_at(i: int) -> str | None:
            lemma = lemmas[i]
            return lemma if lemma and lemma in lemma_names else None

        for i, tag in enumerate(tags):
            if tag is not Tag.VERB:
                continue
            source = next(
                (concept_at(j) for j in range(i - 1, -1, -1) if concept_at(j)), None
            )
            target = None
            for j in range(i + 1, len(tokens)):
                if not concept_at(j):
                    continue
                target = concept_at(j)
                # prefer the object of a trailing "of" phrase
                k = j + 1
                while k < len(tokens) and words[k].lower() == "of":
                    shifted = next(
                        (concept_at(m) for m in range(k + 1, len(tokens)) if concept_at(m)),
                        None,
                    )
                    if shifted is None:
                        break
                    target = shifted
                    j = next(
                        m for m in range(k + 1, len(tokens)) if concept_at(m) == shifted
                    )
                    k = j + 1
                break
            if source and target and source != target:
                key = (words[i].lower(), source, target)
                relation = table.get(key)
                if relation is None:
                    relation = table[key] = TextualRelation(
                        token=words[i].lower(), source=source, target=target
                    )
                relation.sentences.add(sentence.index)
    return sorted(table.values(), key=lambda r: (r.token, r.source, r.target))


def preprocess(text: str, tagger=DEFAULT_TAGGER) -> Extraction:
    """Run the full pipeline: segment, resolve, extract."""
    sentences = resolve_references(segment(text), tagger)
    concepts = extract_concepts(sentences, tagger)
    relations = extract_relations(sentences, concepts, tagger)
    return Extraction(sentences=sentences, concepts=concepts, relations=relations)


def dump_extraction(extraction: Extraction) -> str:
    """Human-readable listing of concepts and relations with sentence indices."""
    lines = ["TextualConcepts ="]
    for concept in extraction.concepts:
        indices = ",".join(f"s{i}" for i in sorted(concept.sentences))
        lines.append(f"  ({concept.name}, {{{indices}}})")
    lines.append("TextualRelations =")
    for relation in extraction.relations:
        indices = ",".join(f"s{i}" for i in sorted(relation.sentences))
        lines.append(f"  ({relation.token}, {relation.source}, {relation.target}, {{{indices}}})")
    return "\n".join(lines) + "\n"
