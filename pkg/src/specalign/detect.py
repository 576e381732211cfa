"""Classify model elements by comparing generated and matched sentences.

For every element and each of its matched sentences, three checks run in
priority order: equivalence, contradiction, inclusion. Each check asks its
whole prompt catalog and passes only when YES answers strictly outnumber
both NO and NOT-SURE answers. Sentence outcomes fold into the element
verdict: any equivalent sentence wins ALIGNED; otherwise a contradiction
found while nothing was aligned yet wins MISALIGNED; otherwise an included
sentence wins ALIGNED; otherwise the element stays UNCLASSIFIED.

Two execution modes exist. Parallel mode dispatches every prompt of all
three checks eagerly (19 per sentence pair) and discards what the decision
logic does not need; sequential mode issues prompts one by one and stops a
check as soon as its outcome is mathematically settled, and skips checks
whose result cannot influence the verdict. Both modes produce identical
verdicts for the same per-prompt answers.
"""

from __future__ import annotations

import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .errors import BackendError
from .matching import DEFAULT_TAU, match
from .model import DomainModel, ElementKind, ModelElement, enumerate_elements
from .preprocess import Extraction, preprocess
from .prompts import CheckKind, build_prompts
from .slicing import slice_element


class Vote(Enum):
    YES = "yes"
    NO = "no"
    UNSURE = "unsure"


class Verdict(Enum):
    ALIGNED = "ALIGNED"
    MISALIGNED = "MISALIGNED"
    UNCLASSIFIED = "UNCLASSIFIED"


class Basis(Enum):
    EQUIVALENT = "EQUIVALENT"
    INCLUDED = "INCLUDED"
    CONTRADICTED = "CONTRADICTED"
    NONE = "NONE"


@dataclass
class VoteTally:
    yes: int = 0
    no: int = 0
    unsure: int = 0

    def add(self, vote: Vote):
        if vote is Vote.YES:
            self.yes += 1
        elif vote is Vote.NO:
            self.no += 1
        else:
            self.unsure += 1

    @property
    def total(self) -> int:
        return self.yes + self.no + self.unsure


@dataclass(frozen=True)
class Classification:
    element_id: str
    verdict: Verdict
    basis: Basis
    evidence: frozenset[int]
    queries: int


@dataclass
class AlignmentReport:
    model_name: str
    classifications: list[Classification]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def total_queries(self) -> int:
        return sum(c.queries for c in self.classifications)

    def counts(self) -> dict[str, int]:
        out = {v.value: 0 for v in Verdict}
        for c in self.classifications:
            out[c.verdict.value] += 1
        return out


_FIRST_WORD_RE = re.compile(r"[A-Za-z]+")


def parse_response(text: str) -> Vote:
    """Map a raw completion onto a vote by its first alphabetic token."""
    match_ = _FIRST_WORD_RE.search(text or "")
    if not match_:
        return Vote.UNSURE
    word = match_.group(0).lower()
    if word == "yes":
        return Vote.YES
    if word == "no":
        return Vote.NO
    return Vote.UNSURE


def majority(tally: VoteTally) -> bool:
    """Relative majority: YES must strictly beat both NO and NOT-SURE."""
    return tally.yes > tally.no and tally.yes > tally.unsure


def _decided(tally: VoteTally, remaining: int) -> bool:
    """True when no distribution of the remaining votes can flip the result."""
    outcomes = set()
    for yes_extra in range(remaining + 1):
        for no_extra in range(remaining - yes_extra + 1):
            unsure_extra = remaining - yes_extra - no_extra
            outcomes.add(
                majority(
                    VoteTally(
                        tally.yes + yes_extra,
                        tally.no + no_extra,
                        tally.unsure + unsure_extra,
                    )
                )
            )
            if len(outcomes) > 1:
                return False
    return True


def _ask(backend, prompt: str) -> Vote:
    try:
        return parse_response(backend.complete(prompt))
    except BackendError:
        return Vote.UNSURE  # a failed prompt degrades, it never aborts the element


def check(
    kind: CheckKind,
    specification_sentence: str,
    generated_sentence: str,
    element_kind: ElementKind | None,
    backend,
    sequential: bool = False,
) -> tuple[bool, int]:
    """Run one prompt-catalog check; returns (passed, queries issued)."""
    prompts = build_prompts(kind, element_kind, generated_sentence, specification_sentence)
    tally = VoteTally()
    issued = 0
    for position, prompt in enumerate(prompts):
        if sequential and _decided(tally, len(prompts) - position):
            break
        tally.add(_ask(backend, prompt))
        issued += 1
    return majority(tally), issued


class _SentenceChecks:
    """Lazy per-sentence check runner shared by both execution modes."""

    def __init__(self, element_kind, generated, sentence_text, backend, sequential):
        self.element_kind = element_kind
        self.generated = generated
        self.sentence_text = sentence_text
        self.backend = backend
        self.sequential = sequential
        self.queries = 0
        self._results: dict[CheckKind, bool] = {}

    def run(self, kind: CheckKind) -> bool:
        if kind not in self._results:
            passed, issued = check(
                kind,
                self.sentence_text,
                self.generated,
                self.element_kind,
                self.backend,
                sequential=self.sequential,
            )
            self._results[kind] = passed
            self.queries += issued
        return self._results[kind]

    def run_all(self):
        for kind in CheckKind:
            self.run(kind)


def classify_element(
    element: ModelElement,
    generated_sentence: str,
    matched_sentences,
    sentence_texts: dict[int, str],
    backend,
    mode: str = "parallel",
) -> Classification:
    """Fold per-sentence check outcomes into one element verdict.

    ``matched_sentences`` is processed in ascending index order; an empty
    set short-circuits to UNCLASSIFIED without any backend calls.
    """
    aligned: list[int] = []
    misaligned: list[int] = []
    included: list[int] = []
    queries = 0

    for index in sorted(matched_sentences):
        runner = _SentenceChecks(
            element.kind,
            generated_sentence,
            sentence_texts[index],
            backend,
            sequential=(mode == "sequential"),
        )
        if mode != "sequential":
            runner.run_all()  # eager dispatch; unused answers are discarded
        if runner.run(CheckKind.EQUIVALENCE):
            aligned.append(index)
        elif not aligned and runner.run(CheckKind.CONTRADICTION):
            misaligned.append(index)
        elif runner.run(CheckKind.INCLUSION):
            included.append(index)
        queries += runner.queries

    if aligned:
        verdict, basis, evidence = Verdict.ALIGNED, Basis.EQUIVALENT, aligned
    elif misaligned:
        verdict, basis, evidence = Verdict.MISALIGNED, Basis.CONTRADICTED, misaligned
    elif included:
        verdict, basis, evidence = Verdict.ALIGNED, Basis.INCLUDED, included
    else:
        verdict, basis, evidence = Verdict.UNCLASSIFIED, Basis.NONE, []
    return Classification(
        element_id=element.element_id,
        verdict=verdict,
        basis=basis,
        evidence=frozenset(evidence),
        queries=queries,
    )


def classify_model(
    model: DomainModel,
    specification_text: str,
    backend,
    mode: str = "parallel",
    tau: float = DEFAULT_TAU,
    jobs: int = 1,
    extraction: Extraction | None = None,
) -> AlignmentReport:
    """Run the full pipeline and classify every element of the model."""
    timings: dict[str, float] = {}

    started = time.perf_counter()
    if extraction is None:
        extraction = preprocess(specification_text)
    timings["preprocess"] = time.perf_counter() - started

    started = time.perf_counter()
    elements = enumerate_elements(model)
    slices = [slice_element(model, element) for element in elements]
    timings["slice"] = time.perf_counter() - started

    started = time.perf_counter()
    matched = match(model, elements, extraction, tau)
    timings["match"] = time.perf_counter() - started

    started = time.perf_counter()
    from .generate import generate  # local import avoids a module cycle

    generated = [generate(model, slice_) for slice_ in slices]
    timings["generate"] = time.perf_counter() - started

    sentence_texts = {s.index: s.original_text for s in extraction.sentences}

    started = time.perf_counter()

    def classify(position: int) -> Classification:
        return classify_element(
            elements[position],
            generated[position].text,
            matched[position].sentences,
            sentence_texts,
            backend,
            mode=mode,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            classifications = list(pool.map(classify, range(len(elements))))
    else:
        classifications = [classify(i) for i in range(len(elements))]
    timings["detect"] = time.perf_counter() - started

    return AlignmentReport(
        model_name=model.name,
        classifications=classifications,
        timings=timings,
    )
