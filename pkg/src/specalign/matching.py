"""Decide which specification sentences talk about which model element.

Element names and concept lemmas are normalized into token stems and
compared with a blend of exact stem-set equality, Jaccard overlap, and
normalized edit distance. A concept counts as matching a name when the
blended score reaches the threshold tau.

Per element kind, the matched sentence set is:

    attribute / literal  sentences of concepts matching the name, narrowed
                         to sentences that also mention the owning class or
                         enumeration (the narrowing is skipped when it
                         would empty the set);
    association end      sentences of concepts matching the role name, plus
                         sentences of relations whose verb matches the role
                         and that touch a connected class, plus sentences
                         where both connected classes are mentioned;
    composition /        sentences where both participating classes are
    inheritance          mentioned.

Empty sets are normal; unmatched elements simply end up unclassified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .english import singularize, split_name
from .model import DomainModel, ElementKind, ModelElement, RelationshipKind
from .preprocess import Extraction

DEFAULT_TAU = 0.85


@dataclass(frozen=True)
class MatchedSentenceSet:
    element_id: str
    sentences: frozenset[int]


def _stem(token: str) -> str:
    stem = singularize(token.lower())
    if stem.endswith("ing") and len(stem) > 5:
        stem = stem[:-3]
    elif stem.endswith("ed") and len(stem) > 4:
        stem = stem[:-2]
    if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
        stem = stem[:-1]  # doubling repair: stopped -> stop
    return stem


def normalize_name(raw: str) -> list[str]:
    """Split an identifier and stem each token. "PartType" -> [part, type]."""
    return [_stem(token) for token in split_name(raw)]


def _edit_distance(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: list[str], b: list[str]) -> float:
    """Blended stem similarity in [0, 1]; symmetric."""
    set_a, set_b = set(a), set(b)
    if not set_a or not set_b:
        return 0.0
    if set_a == set_b:
        return 1.0
    jaccard = len(set_a & set_b) / len(set_a | set_b)
    joined_a, joined_b = " ".join(a), " ".join(b)
    edit = 1.0 - _edit_distance(joined_a, joined_b) / max(len(joined_a), len(joined_b))
    return max(jaccard, edit)


class Matcher:
    def __init__(self, extraction: Extraction, tau: float = DEFAULT_TAU):
        self.extraction = extraction
        self.tau = tau
        self._concept_stems = [
            (normalize_name(concept.name), concept) for concept in extraction.concepts
        ]

    def sentences_matching(self, name: str) -> set[int]:
        """Union of the sentence sets of every concept similar to ``name``."""
        target = normalize_name(name)
        matched: set[int] = set()
        for stems, concept in self._concept_stems:
            if similarity(target, stems) >= self.tau:
                matched.update(concept.sentences)
        return matched

    def _narrowed(self, name_sentences: set[int], context: str) -> set[int]:
        if not name_sentences:
            return name_sentences
        context_sentences = self.sentences_matching(context)
        narrowed = name_sentences & context_sentences
        # an owning class that is only implied must not starve the element
        return narrowed if narrowed else name_sentences

    def _co_mentioned(self, class_a: str, class_b: str) -> set[int]:
        return self.sentences_matching(class_a) & self.sentences_matching(class_b)

    def match_element(self, model: DomainModel, element: ModelElement) -> MatchedSentenceSet:
        kind = element.kind
        if kind is ElementKind.ATTRIBUTE:
            class_name, attr_name = element.anchor
            sentences = self._narrowed(self.sentences_matching(attr_name), class_name)
        elif kind is ElementKind.ENUM_LITERAL:
            enum_name, literal = element.anchor
            sentences = self._narrowed(self.sentences_matching(literal), enum_name)
        elif kind is ElementKind.ASSOCIATION_END:
            index, slot = element.anchor
            rel = model.relationships[index]
            end = rel.end_a if slot == "a" else rel.end_b
            classes = (rel.end_a.target_class, rel.end_b.target_class)
            sentences = set()
            if end.role:
                sentences |= self.sentences_matching(end.role)
                sentences |= self._relation_sentences(end.role, classes)
            sentences |= self._co_mentioned(*classes)
        elif kind is ElementKind.COMPOSITION:
            (index,) = element.anchor
            rel = model.relationships[index]
            sentences = self._co_mentioned(rel.whole, rel.part)
        else:  # INHERITANCE
            (index,) = element.anchor
            rel = model.relationships[index]
            sentences = self._co_mentioned(rel.subclass, rel.superclass)
        return MatchedSentenceSet(element_id=element.element_id, sentences=frozenset(sentences))

    def _relation_sentences(self, role: str, classes: tuple[str, str]) -> set[int]:
        """Sentences of relations whose verb matches the role and that touch
        one of the connected classes."""
        role_stems = normalize_name(role)
        class_stems = [normalize_name(name) for name in classes]
        matched: set[int] = set()
        for relation in self.extraction.relations:
            if similarity(normalize_name(relation.token), role_stems) < self.tau:
                continue
            endpoints = (normalize_name(relation.source), normalize_name(relation.target))
            if any(
                similarity(endpoint, stems) >= self.tau
                for endpoint in endpoints
                for stems in class_stems
            ):
                matched.update(relation.sentences)
        return matched


def match(
    model: DomainModel,
    elements: list[ModelElement],
    extraction: Extraction,
    tau: float = DEFAULT_TAU,
) -> list[MatchedSentenceSet]:
    matcher = Matcher(extraction, tau)
    return [matcher.match_element(model, element) for element in elements]
