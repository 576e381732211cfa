from specalign.matching import DEFAULT_TAU, Matcher, match, normalize_name, similarity
from specalign.model import enumerate_elements
from specalign.preprocess import preprocess


def matched_map(model, text, tau=DEFAULT_TAU):
    extraction = preprocess(text)
    elements = enumerate_elements(model)
    return {
        m.element_id: set(m.sentences)
        for m in match(model, elements, extraction, tau)
    }


class TestNormalize:
    def test_camel_case_split(self):
        assert normalize_name("PartType") == ["part", "type"]

    def test_third_person_verb(self):
        assert normalize_name("provides") == ["provide"]

    def test_identity(self):
        assert normalize_name("plate") == ["plate"]

    def test_gerund_and_past_strip_with_doubling_repair(self):
        assert normalize_name("stopped") == ["stop"]
        assert normalize_name("running") == ["run"]

    def test_underscores(self):
        assert normalize_name("BRAKING_SYSTEM")[1] == "system"


class TestSimilarity:
    def test_equal_stems(self):
        assert similarity(["service"], ["service"]) == 1.0

    def test_jaccard_overlap(self):
        assert similarity(["part", "type"], ["part"]) == 0.5

    def test_unrelated_names_stay_low(self):
        assert similarity(["engine"], ["garage"]) < 0.5

    def test_symmetry(self):
        pairs = [(["part", "type"], ["part"]), (["plate"], ["place"]), (["a"], ["b"])]
        for a, b in pairs:
            assert similarity(a, b) == similarity(b, a)

    def test_close_spellings_score_high_but_below_default_tau(self):
        # "plate" vs "place": one substitution, must not match by default
        score = similarity(["plate"], ["place"])
        assert 0.75 <= score < DEFAULT_TAU


class TestMatch:
    def test_fixture_attribute_plate(self, car_model, car_spec_text):
        matched = matched_map(car_model, car_spec_text)
        assert matched["attr:Car.plate"] == {2}

    def test_fixture_place_end(self, car_model, car_spec_text):
        matched = matched_map(car_model, car_spec_text)
        assert matched["end:Service--Garage#place"] == {1, 6}

    def test_unmatched_element_gets_empty_set(self, car_model, car_spec_text):
        matched = matched_map(car_model, car_spec_text)
        assert matched["attr:Maintenance.validUntil"] == set()

    def test_context_class_narrows_attribute_sets(self, car_model, car_spec_text):
        # "date" appears only with Service sentences once narrowed
        matched = matched_map(car_model, car_spec_text)
        assert matched["attr:Service.date"] == {3}
        assert matched["attr:Service.type"] == {1, 3}

    def test_relation_verb_feeds_role_ends(self, car_model, car_spec_text):
        # "For each service provided ..." reaches the provides end through
        # the (provided, service, date) relation
        matched = matched_map(car_model, car_spec_text)
        assert 3 in matched["end:Service--Garage#provides"]
        assert {1, 6} <= matched["end:Service--Garage#provides"]

    def test_co_mention_drives_structure_elements(self, car_model, car_spec_text):
        matched = matched_map(car_model, car_spec_text)
        assert matched["comp:Car◇Part"] == {4}
        assert matched["inh:Repair<:Service"] == {1}
        assert matched["inh:Maintenance<:Service"] == {1, 5}

    def test_monotone_in_tau(self, car_model, car_spec_text):
        taus = (0.95, 0.85, 0.75, 0.6, 0.4)
        previous = None
        for tau in taus:
            matched = matched_map(car_model, car_spec_text, tau)
            if previous is not None:
                for element_id, sentences in previous.items():
                    assert sentences <= matched[element_id], (element_id, tau)
            previous = matched

    def test_exact_name_guarantee(self, car_spec_text):
        # an element whose normalized name equals a concept lemma always
        # receives that concept's sentences
        extraction = preprocess(car_spec_text)
        matcher = Matcher(extraction)
        for concept in extraction.concepts:
            assert concept.sentences <= matcher.sentences_matching(concept.name)

    def test_purity(self, car_model, car_spec_text):
        assert matched_map(car_model, car_spec_text) == matched_map(car_model, car_spec_text)
