"""Render each model slice as a single English sentence.

One sentence per classifiable element:

    attribute        "A car has a plate."
    association end  "A garage provides services." (role contains a verb)
                     "A service has a place which is a garage." (noun role)
                     "A user can have reservations." (no role, optional many)
    composition      "A car is made up of parts."
    inheritance      "Repair is a type of service."
    enum literal     "Engine is a part type."

Names are split on case boundaries and lower-cased; the subject of an
association-end sentence is the class on the opposite side of the end in
focus. Generation is total: every slice yields exactly one sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .english import article, pluralize, sentence_case, words_of
from .model import DomainModel, ElementKind, Multiplicity
from .slicing import ModelSlice
from .tagging import DEFAULT_TAGGER, Tag


@dataclass(frozen=True)
class GeneratedSentence:
    element_id: str
    text: str


def _role_is_verbal(role: str, tagger) -> bool:
    words = words_of(role).split()
    return bool(words) and tagger.tag_word(words[0]) is Tag.VERB


def _object_phrase(noun_words: str, multiplicity: Multiplicity | None) -> str:
    many = multiplicity.many if multiplicity is not None else True
    if many:
        head_words = noun_words.split()
        head_words[-1] = pluralize(head_words[-1])
        return " ".join(head_words)
    return f"{article(noun_words)} {noun_words}"


def generate(model: DomainModel, slice_: ModelSlice, tagger=DEFAULT_TAGGER) -> GeneratedSentence:
    element = slice_.focus
    kind = element.kind

    if kind is ElementKind.ATTRIBUTE:
        class_name, attr_name = element.anchor
        subject = words_of(class_name)
        text = f"{article(subject)} {subject} has {article(words_of(attr_name))} {words_of(attr_name)}."
    elif kind is ElementKind.ASSOCIATION_END:
        index, slot = element.anchor
        rel = model.relationships[index]
        focus_end = rel.end_a if slot == "a" else rel.end_b
        opposite_end = rel.end_b if slot == "a" else rel.end_a
        subject = words_of(opposite_end.target_class)
        target = words_of(focus_end.target_class)
        multiplicity = focus_end.multiplicity
        if focus_end.role and _role_is_verbal(focus_end.role, tagger):
            predicate = words_of(focus_end.role)
            text = f"{article(subject)} {subject} {predicate} {_object_phrase(target, multiplicity)}."
        else:
            many = multiplicity.many if multiplicity is not None else False
            verb = "can have" if multiplicity is not None and multiplicity.optional and many else "has"
            if focus_end.role:
                noun = words_of(focus_end.role)
                obj = _object_phrase(noun, multiplicity)
                text = (
                    f"{article(subject)} {subject} {verb} {obj}"
                    f" which is {article(target)} {target}."
                )
            else:
                text = f"{article(subject)} {subject} {verb} {_object_phrase(target, multiplicity)}."
    elif kind is ElementKind.COMPOSITION:
        (index,) = element.anchor
        rel = model.relationships[index]
        whole = words_of(rel.whole)
        part = words_of(rel.part)
        if rel.part_multiplicity is None or rel.part_multiplicity.many:
            part_words = part.split()
            part_words[-1] = pluralize(part_words[-1])
            part = " ".join(part_words)
        text = f"{article(whole)} {whole} is made up of {part}."
    elif kind is ElementKind.INHERITANCE:
        (index,) = element.anchor
        rel = model.relationships[index]
        text = f"{words_of(rel.subclass)} is a type of {words_of(rel.superclass)}."
    else:  # ENUM_LITERAL
        enum_name, literal = element.anchor
        enum_words = words_of(enum_name)
        text = f"{words_of(literal)} is {article(enum_words)} {enum_words}."

    return GeneratedSentence(element_id=element.element_id, text=sentence_case(text))


def generate_all(model: DomainModel, slices) -> list[GeneratedSentence]:
    return [generate(model, slice_) for slice_ in slices]
