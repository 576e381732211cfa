from specalign.english import singularize
from specalign.preprocess import (
    dump_extraction,
    extract_concepts,
    extract_relations,
    preprocess,
    resolve_references,
    segment,
)


def concept_map(extraction):
    return {c.name: sorted(c.sentences) for c in extraction.concepts}


def relation_set(extraction):
    return {(r.token, r.source, r.target, tuple(sorted(r.sentences))) for r in extraction.relations}


class TestSegment:
    def test_empty_input(self):
        assert segment("") == []
        assert segment("   \n ") == []

    def test_fixture_has_six_sentences(self, car_spec_text):
        sentences = segment(car_spec_text)
        assert len(sentences) == 6
        assert [s.index for s in sentences] == [1, 2, 3, 4, 5, 6]
        assert sentences[3].original_text.endswith("braking system.")

    def test_decimal_point_is_not_a_boundary(self):
        sentences = segment("It costs 3.50 per day. Done.")
        assert [s.original_text for s in sentences] == ["It costs 3.50 per day.", "Done."]

    def test_abbreviations_do_not_split(self):
        sentences = segment("Vehicles, e.g. vans, are stored. Done.")
        assert len(sentences) == 2

    def test_original_text_is_verbatim_substring(self, car_spec_text):
        for sentence in segment(car_spec_text):
            assert sentence.original_text in car_spec_text

    def test_question_and_exclamation_marks(self):
        assert len(segment("Really? Yes! Fine.")) == 3


class TestResolve:
    def test_its_resolves_to_car(self, car_spec_text):
        sentences = resolve_references(segment(car_spec_text))
        assert "to register car plate number" in sentences[1].resolved_text
        assert "its plate number" in sentences[1].original_text  # original untouched

    def test_no_pronouns_means_identity(self):
        sentences = resolve_references(segment("A garage offers services."))
        assert sentences[0].resolved_text == sentences[0].original_text

    def test_leading_pronoun_without_antecedent_is_kept(self):
        sentences = resolve_references(segment("It is required to park."))
        assert sentences[0].resolved_text == "It is required to park."

    def test_plural_pronoun_needs_plural_antecedent(self):
        # "them" is plural, so the singular "garage" is skipped in favor of "cars"
        sentences = resolve_references(segment("The garage stores cars and cleans them weekly."))
        assert "cleans cars weekly" in sentences[0].resolved_text

    def test_subordinate_clause_nouns_are_skipped(self, car_spec_text):
        # "garage" inside "that comes to the garage" must not win over "car"
        sentences = resolve_references(segment(car_spec_text))
        assert "garage plate number" not in sentences[1].resolved_text


class TestConcepts:
    def test_fixture_concepts(self, car_spec_text):
        extraction = preprocess(car_spec_text)
        concepts = concept_map(extraction)
        assert concepts["car"] == [1, 2, 4]
        assert concepts["service"] == [1, 3, 5, 6]
        assert concepts["plate"] == [2]
        assert concepts["date"] == [3]
        assert concepts["garage"] == [1, 2, 6]

    def test_no_two_concepts_share_a_lemma(self, car_spec_text):
        extraction = preprocess(car_spec_text)
        names = [c.name for c in extraction.concepts]
        assert len(names) == len(set(names))

    def test_sentence_without_nouns(self):
        sentences = resolve_references(segment("Stop."))
        assert extract_concepts(sentences) == []

    def test_plural_noun_is_singularized(self):
        sentences = resolve_references(segment("The garages have addresses."))
        concepts = {c.name: sorted(c.sentences) for c in extract_concepts(sentences)}
        assert concepts["garage"] == [1]
        assert concepts["address"] == [1]

    def test_compound_nouns_emit_bigram_lemma(self, car_spec_text):
        extraction = preprocess(car_spec_text)
        concepts = concept_map(extraction)
        assert concepts["plate number"] == [2]
        assert concepts["braking system"] == [4]

    def test_traceability(self, car_spec_text):
        # every recorded index points at a sentence whose resolved text
        # really contains the lemma after normalization
        extraction = preprocess(car_spec_text)
        by_index = {s.index: s for s in extraction.sentences}
        for concept in extraction.concepts:
            for index in concept.sentences:
                words = [singularize(w) for w in by_index[index].resolved_text.lower().split()]
                for token in concept.name.split():
                    assert any(token in word for word in words), (concept.name, index)

    def test_determinism(self, car_spec_text):
        first = preprocess(car_spec_text)
        second = preprocess(car_spec_text)
        assert concept_map(first) == concept_map(second)
        assert relation_set(first) == relation_set(second)


class TestRelations:
    def test_fixture_relations(self, car_spec_text):
        extraction = preprocess(car_spec_text)
        relations = relation_set(extraction)
        assert ("offers", "garage", "service", (1,)) in relations
        assert ("happens", "service", "garage", (6,)) in relations

    def test_verb_without_both_sides_yields_nothing(self):
        extraction = preprocess("The garage closed.")
        assert extraction.relations == []

    def test_nearest_concepts_win(self):
        extraction = preprocess("A garage provides services.")
        relations = relation_set(extraction)
        assert ("provides", "garage", "service", (1,)) in relations

    def test_relation_verbs_normalize_to_their_stem(self):
        from specalign.matching import normalize_name

        extraction = preprocess("A garage provides services.")
        assert [normalize_name(r.token) for r in extraction.relations] == [["provide"]]

    def test_of_phrase_target_shifts_to_object(self):
        extraction = preprocess("The shop offers two kinds of discounts.")
        relations = relation_set(extraction)
        assert ("offers", "shop", "discount", (1,)) in relations


def test_dump_layout(car_spec_text):
    text = dump_extraction(preprocess(car_spec_text))
    assert "TextualConcepts =" in text
    assert "(car, {s1,s2,s4})" in text
    assert "(offers, garage, service, {s1})" in text
