"""specalign: semantic alignment between requirement texts and domain models.

The pipeline preprocesses the specification text, slices the model into
minimal per-element fragments, matches sentences to elements, renders each
fragment as an English sentence, and asks an LLM prompt ensemble whether
the pair is equivalent, contradictory, or included, classifying every model
element as ALIGNED, MISALIGNED, or UNCLASSIFIED with evidence sentences.
"""

from .detect import (
    AlignmentReport,
    Basis,
    Classification,
    Verdict,
    Vote,
    VoteTally,
    check,
    classify_element,
    classify_model,
    majority,
    parse_response,
)
from .errors import (
    BackendError,
    CassetteMissError,
    ModelReferenceError,
    ModelSyntaxError,
    ModelValidationError,
    MultiplicityError,
    SpecAlignError,
    UniverseMismatchError,
)
from .generate import GeneratedSentence, generate
from .matching import DEFAULT_TAU, MatchedSentenceSet, match, normalize_name, similarity
from .metrics import MetricsRow, Summary, aggregate, score
from .model import (
    AssociationEnd,
    Attribute,
    DomainModel,
    ElementKind,
    Enumeration,
    ModelElement,
    Multiplicity,
    Relationship,
    RelationshipKind,
    UmlClass,
    enumerate_elements,
    parse_model,
    serialize_model,
    validate_model,
)
from .mutate import GroundTruth, MutationOperator, applicable_elements, mutate, mutate_all
from .preprocess import (
    Extraction,
    Sentence,
    TextualConcept,
    TextualRelation,
    extract_concepts,
    extract_relations,
    preprocess,
    resolve_references,
    segment,
)
from .prompts import CheckKind, build_prompts
from .slicing import ModelSlice, slice_all, slice_element

__version__ = "0.1.0"
