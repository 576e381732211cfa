"""Prompt catalogs for the three check families.

Every check asks an odd number of differently worded questions about the
same pair of statements and takes a relative majority of the answers.
Statement 1 is always the generated sentence, Statement 2 the original
specification sentence. Each prompt is answered in a fresh session.
"""

from __future__ import annotations

from enum import Enum

from .model import ElementKind


class CheckKind(Enum):
    EQUIVALENCE = "equivalence"
    CONTRADICTION = "contradiction"
    INCLUSION = "inclusion"


EQUIVALENCE_QUESTIONS = (
    "Are the following two statements semantically equivalent?",
    "Do the following two statements convey the same information?",
    "Are the following two statements conveying the same meaning?",
    "Are these statements synonymous?",
    "Do statement 1 and statement 2 have identical implications?",
)

CONTRADICTION_QUESTIONS = (
    "Do these statements contradict each other?",
    "Are these statements mutually exclusive?",
    "Do these statements clash or conflict with each other?",
    "Do these statements negate each other?",
    "Are these statements inconsistent?",
    "Are these statements in disagreement?",
    "Are these statements incompatible?",
)

INCLUSION_QUESTIONS = (
    "Can Statement 1 be inferred from Statement 2?",
    "Can Statement 1 be implied from Statement 2?",
    "Can Statement 1 be determined from Statement 2?",
    "Can Statement 1 be derived from Statement 2?",
    "Does Statement 1 logically follow from Statement 2?",
    "Can Statement 1 be concluded based on Statement 2?",
    "Does Statement 2 support Statement 1?",
)

QUESTIONS = {
    CheckKind.EQUIVALENCE: EQUIVALENCE_QUESTIONS,
    CheckKind.CONTRADICTION: CONTRADICTION_QUESTIONS,
    CheckKind.INCLUSION: INCLUSION_QUESTIONS,
}

ANSWER_INSTRUCTION = "Answer with exactly one of: Yes, No, Not Sure."


def catalog_size(kind: CheckKind) -> int:
    return len(QUESTIONS[kind])


def build_prompts(
    kind: CheckKind,
    element_kind: ElementKind | None,
    generated_sentence: str,
    specification_sentence: str,
) -> list[str]:
    """Assemble the full ordered prompt list for one check.

    ``element_kind`` is accepted as a hook for kind-specific preambles;
    the default templates do not vary by element kind.
    """
    del element_kind
    return [
        (
            f"{question}\n"
            f"Statement 1: {generated_sentence}\n"
            f"Statement 2: {specification_sentence}\n"
            f"{ANSWER_INSTRUCTION}"
        )
        for question in QUESTIONS[kind]
    ]
