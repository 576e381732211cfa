import itertools

from specalign.backends import CountingBackend, MockBackend
from specalign.detect import (
    Basis,
    Verdict,
    Vote,
    VoteTally,
    check,
    classify_element,
    classify_model,
    majority,
    parse_response,
)
from specalign.model import ElementKind, ModelElement
from specalign.prompts import CheckKind, build_prompts

ELEMENT = ModelElement(ElementKind.ATTRIBUTE, "attr:Car.plate", ("Car", "plate"))

EQ = "(equivalent|convey the same|conveying the same|synonymous|identical implications)"
CONTRA = "(contradict|mutually exclusive|clash|negate|inconsistent|disagreement|incompatible)"
INCL = "(inferred|implied|determined|derived|logically follow|concluded|support)"


def scripted(*rules):
    return MockBackend(list(rules))


class TestPrompts:
    def test_catalog_sizes_are_odd(self):
        sizes = {kind: len(build_prompts(kind, None, "m.", "s.")) for kind in CheckKind}
        assert sizes[CheckKind.EQUIVALENCE] == 5
        assert sizes[CheckKind.CONTRADICTION] == 7
        assert sizes[CheckKind.INCLUSION] == 7

    def test_first_equivalence_prompt_layout(self):
        prompt = build_prompts(CheckKind.EQUIVALENCE, ElementKind.ATTRIBUTE,
                               "A car has a plate.", "For each car ...")[0]
        lines = prompt.splitlines()
        assert lines[0] == "Are the following two statements semantically equivalent?"
        assert lines[1] == "Statement 1: A car has a plate."
        assert lines[2] == "Statement 2: For each car ..."
        assert lines[3] == "Answer with exactly one of: Yes, No, Not Sure."

    def test_contradiction_and_inclusion_question_order(self):
        contra = build_prompts(CheckKind.CONTRADICTION, None, "m.", "s.")
        assert contra[0].startswith("Do these statements contradict each other?")
        incl = build_prompts(CheckKind.INCLUSION, None, "m.", "s.")
        assert incl[0].startswith("Can Statement 1 be inferred from Statement 2?")
        assert incl[-1].startswith("Does Statement 2 support Statement 1?")


class TestParseResponse:
    def test_verbose_yes(self):
        assert parse_response(
            "Yes, the generated statement can be implied from the original statement."
        ) is Vote.YES

    def test_verbose_no(self):
        assert parse_response(
            "No, the generated statement cannot be derived from the original."
        ) is Vote.NO

    def test_not_sure_variants(self):
        assert parse_response("Not Sure.") is Vote.UNSURE
        assert parse_response("Unsure") is Vote.UNSURE
        assert parse_response("I would need more context.") is Vote.UNSURE
        assert parse_response("") is Vote.UNSURE
        assert parse_response("42") is Vote.UNSURE

    def test_case_insensitive(self):
        assert parse_response("YES!") is Vote.YES
        assert parse_response("nO") is Vote.NO


class TestMajority:
    def test_examples(self):
        assert majority(VoteTally(3, 1, 1)) is True
        assert majority(VoteTally(2, 2, 1)) is False
        assert majority(VoteTally(0, 0, 5)) is False

    def test_exhaustive_against_definition(self):
        # every tally that sums to a catalog size, checked against the rule
        for total in (5, 7):
            for yes, no in itertools.product(range(total + 1), repeat=2):
                unsure = total - yes - no
                if unsure < 0:
                    continue
                expected = yes > no and yes > unsure
                assert majority(VoteTally(yes, no, unsure)) is expected


class TestCheck:
    def test_all_yes_passes(self):
        backend = scripted((r".", "Yes."))
        passed, queries = check(CheckKind.EQUIVALENCE, "s.", "m.", None, backend)
        assert passed is True and queries == 5

    def test_mixed_votes_fail(self):
        # alternating yes/no/yes/no/unsure -> (2,2,1), no majority
        answers = iter(["Yes", "No", "Yes", "No", "Not Sure"])

        class Seq:
            def complete(self, prompt):
                return next(answers)

        passed, queries = check(CheckKind.EQUIVALENCE, "s.", "m.", None, Seq())
        assert passed is False and queries == 5

    def test_sequential_stops_when_decided(self):
        backend = CountingBackend(scripted((r".", "Yes.")))
        passed, queries = check(
            CheckKind.EQUIVALENCE, "s.", "m.", None, backend, sequential=True
        )
        assert passed is True
        assert queries == 3 == backend.calls

    def test_sequential_negative_early_stop(self):
        backend = CountingBackend(scripted((r".", "No.")))
        passed, queries = check(
            CheckKind.EQUIVALENCE, "s.", "m.", None, backend, sequential=True
        )
        assert passed is False
        assert queries == 3

    def test_backend_failure_counts_as_unsure(self):
        from specalign.errors import BackendError

        class Flaky:
            def __init__(self):
                self.calls = 0

            def complete(self, prompt):
                self.calls += 1
                if self.calls % 2:
                    raise BackendError("boom")
                return "Yes."

        passed, _ = check(CheckKind.EQUIVALENCE, "s.", "m.", None, Flaky())
        # votes: unsure,yes,unsure,yes,unsure -> (2,0,3) -> no majority
        assert passed is False


SENTENCES = {1: "First sentence.", 2: "Second sentence.", 3: "Third sentence."}


def classify(backend, matched=(1,), mode="parallel"):
    return classify_element(ELEMENT, "A car has a plate.", set(matched), SENTENCES, backend, mode)


class TestClassifyElement:
    def test_equivalent(self):
        result = classify(scripted((EQ, "Yes.")))
        assert result.verdict is Verdict.ALIGNED and result.basis is Basis.EQUIVALENT
        assert result.evidence == {1}

    def test_contradicted(self):
        result = classify(scripted((CONTRA, "Yes.")))
        assert result.verdict is Verdict.MISALIGNED and result.basis is Basis.CONTRADICTED
        assert result.evidence == {1}

    def test_included(self):
        result = classify(scripted((INCL, "Yes.")))
        assert result.verdict is Verdict.ALIGNED and result.basis is Basis.INCLUDED
        assert result.evidence == {1}

    def test_unclassified(self):
        result = classify(scripted())
        assert result.verdict is Verdict.UNCLASSIFIED and result.basis is Basis.NONE
        assert result.evidence == set()

    def test_empty_matched_set_short_circuits(self):
        backend = CountingBackend(scripted((r".", "Yes.")))
        result = classify(backend, matched=())
        assert result.verdict is Verdict.UNCLASSIFIED
        assert result.queries == 0 == backend.calls

    def test_equivalence_beats_later_contradiction(self):
        # sentence 1 equivalent, sentence 2 contradicting: ALIGNED wins and
        # the contradiction evidence is discarded
        backend = scripted(
            (EQ + r"(?s:.*)Statement 2: First", "Yes."),
            (CONTRA + r"(?s:.*)Statement 2: Second", "Yes."),
        )
        result = classify(backend, matched=(1, 2))
        assert result.verdict is Verdict.ALIGNED and result.basis is Basis.EQUIVALENT
        assert result.evidence == {1}

    def test_contradiction_before_equivalence_is_overridden(self):
        # the contradiction on sentence 1 is recorded first, but the later
        # equivalent sentence still wins at the decision block
        backend = scripted(
            (CONTRA + r"(?s:.*)Statement 2: First", "Yes."),
            (EQ + r"(?s:.*)Statement 2: Second", "Yes."),
        )
        result = classify(backend, matched=(1, 2))
        assert result.verdict is Verdict.ALIGNED and result.basis is Basis.EQUIVALENT
        assert result.evidence == {2}

    def test_sentences_processed_in_ascending_order(self):
        seen = []

        class Recorder:
            def complete(self, prompt):
                seen.append(prompt)
                return "Not Sure."

        classify(Recorder(), matched=(3, 1, 2))
        order = [prompt.splitlines()[2] for prompt in seen]
        first_1 = order.index("Statement 2: First sentence.")
        first_2 = order.index("Statement 2: Second sentence.")
        first_3 = order.index("Statement 2: Third sentence.")
        assert first_1 < first_2 < first_3

    def test_mode_equivalence(self):
        # same scripted answers, same verdicts in both modes
        for rules in ((EQ, "Yes."), (CONTRA, "Yes."), (INCL, "Yes.")):
            parallel = classify(scripted(rules), matched=(1, 2))
            sequential = classify(scripted(rules), matched=(1, 2), mode="sequential")
            assert parallel.verdict == sequential.verdict
            assert parallel.basis == sequential.basis
            assert parallel.evidence == sequential.evidence


class TestQueryBudget:
    def test_parallel_is_19_per_sentence(self):
        backend = CountingBackend(scripted())
        result = classify(backend, matched=(1, 2, 3))
        assert backend.calls == 19 * 3
        assert result.queries == 19 * 3

    def test_sequential_minimum_is_3(self):
        backend = CountingBackend(scripted((r".", "Yes.")))
        result = classify(backend, matched=(1,), mode="sequential")
        assert result.queries == 3 == backend.calls

    def test_sequential_skips_contradiction_once_aligned(self):
        # sentence 1 equivalent; sentence 2 not: contradiction prompts for
        # sentence 2 must not be issued because the aligned set is non-empty
        backend = CountingBackend(
            scripted((EQ + r"(?s:.*)Statement 2: First", "Yes."))
        )
        classify(backend, matched=(1, 2), mode="sequential")
        contra_for_second = [
            p
            for p in backend.prompts
            if "contradict" in p and "Statement 2: Second" in p
        ]
        assert contra_for_second == []


class TestClassifyModel:
    def test_fixture_report(self, car_model, car_spec_text):
        backend = MockBackend.from_script("tests/data/car_service.mock.json")
        report = classify_model(car_model, car_spec_text, backend, jobs=1)
        assert len(report.classifications) == 14
        by_id = {c.element_id: c for c in report.classifications}
        assert by_id["attr:Car.plate"].verdict is Verdict.ALIGNED
        assert by_id["attr:Car.plate"].basis is Basis.EQUIVALENT
        assert by_id["attr:Service.date"].basis is Basis.INCLUDED
        assert by_id["attr:Maintenance.validUntil"].verdict is Verdict.UNCLASSIFIED
        assert set(report.timings) == {"preprocess", "slice", "match", "generate", "detect"}

    def test_jobs_do_not_change_results(self, car_model, car_spec_text):
        backend = MockBackend.from_script("tests/data/car_service.mock.json")
        serial = classify_model(car_model, car_spec_text, backend, jobs=1)
        threaded = classify_model(car_model, car_spec_text, backend, jobs=8)
        assert serial.classifications == threaded.classifications
