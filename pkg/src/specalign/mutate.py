"""Seeded mutation operators that fabricate known-bad models.

Three operators cover the error classes the classifier can detect:

    WAS2  flip a relationship kind between association and composition
    WAS4  flip an end multiplicity (0..1 <-> 0..*, 1 <-> 1..*)
    WGE   re-target one end of an inheritance to a different class

Each operator picks ceil(20%) of its applicable targets uniformly without
replacement and labels the resulting elements MISALIGNED; everything else
stays ALIGNED. Mutated models always revalidate.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import SpecAlignError
from .model import (
    AssociationEnd,
    DomainModel,
    Multiplicity,
    Relationship,
    RelationshipKind,
    enumerate_elements,
    validate_model,
)

log = logging.getLogger(__name__)

ALIGNED = "ALIGNED"
MISALIGNED = "MISALIGNED"


class MutationOperator(Enum):
    WAS2 = "was2"  # association <-> composition kind change
    WAS4 = "was4"  # multiplicity change
    WGE = "wge"  # generalization end change


# WAS4 flip table over (lower, upper) pairs; None is the unbounded upper bound
_WAS4_FLIPS = {
    (0, 1): Multiplicity(0, None),
    (0, None): Multiplicity(0, 1),
    (1, 1): Multiplicity(1, None),
    (1, None): Multiplicity(1, 1),
}


@dataclass
class GroundTruth:
    """Per-element alignment labels for a (possibly mutated) model."""

    labels: dict[str, str] = field(default_factory=dict)

    def misaligned_ids(self) -> set[str]:
        return {eid for eid, label in self.labels.items() if label == MISALIGNED}


def applicable_elements(model: DomainModel, op: MutationOperator) -> list[tuple]:
    """Targets the operator can touch.

    WAS2 targets are relationship indices, WAS4 targets are (index, slot)
    pairs where slot is "a", "b", or "part", WGE targets are inheritance
    relationship indices.
    """
    targets: list[tuple] = []
    for index, rel in enumerate(model.relationships):
        if op is MutationOperator.WAS2:
            if rel.kind in (RelationshipKind.ASSOCIATION, RelationshipKind.COMPOSITION):
                targets.append((index,))
        elif op is MutationOperator.WAS4:
            if rel.kind is RelationshipKind.ASSOCIATION:
                for slot, end in (("a", rel.end_a), ("b", rel.end_b)):
                    if end.multiplicity is not None and _flippable(end.multiplicity):
                        targets.append((index, slot))
            elif rel.kind is RelationshipKind.COMPOSITION:
                if rel.part_multiplicity is not None and _flippable(rel.part_multiplicity):
                    targets.append((index, "part"))
        else:
            if rel.kind is RelationshipKind.INHERITANCE:
                targets.append((index,))
    return targets


def _flippable(mult: Multiplicity) -> bool:
    return (mult.lower, mult.upper) in _WAS4_FLIPS


def _flip_kind(rel: Relationship) -> Relationship:
    if rel.kind is RelationshipKind.ASSOCIATION:
        return Relationship(
            kind=RelationshipKind.COMPOSITION,
            whole=rel.end_a.target_class,
            part=rel.end_b.target_class,
            part_multiplicity=rel.end_b.multiplicity,
        )
    return Relationship(
        kind=RelationshipKind.ASSOCIATION,
        end_a=AssociationEnd(rel.whole),
        end_b=AssociationEnd(rel.part, multiplicity=rel.part_multiplicity),
    )


def _flip_multiplicity(rel: Relationship, slot: str) -> Relationship:
    if slot == "part":
        return Relationship(
            kind=rel.kind,
            whole=rel.whole,
            part=rel.part,
            part_multiplicity=_WAS4_FLIPS[(rel.part_multiplicity.lower, rel.part_multiplicity.upper)],
        )
    end = rel.end_a if slot == "a" else rel.end_b
    flipped = AssociationEnd(
        end.target_class,
        role=end.role,
        multiplicity=_WAS4_FLIPS[(end.multiplicity.lower, end.multiplicity.upper)],
    )
    if slot == "a":
        return Relationship(kind=rel.kind, end_a=flipped, end_b=rel.end_b)
    return Relationship(kind=rel.kind, end_a=rel.end_a, end_b=flipped)


def _would_cycle(relationships, candidate: Relationship) -> bool:
    parents: dict[str, set[str]] = {}
    for rel in list(relationships) + [candidate]:
        if rel.kind is RelationshipKind.INHERITANCE:
            parents.setdefault(rel.subclass, set()).add(rel.superclass)
    stack, seen = [candidate.subclass], set()
    while stack:
        node = stack.pop()
        for parent in parents.get(node, ()):
            if parent == candidate.subclass:
                return True
            if parent not in seen:
                seen.add(parent)
                stack.append(parent)
    return False


def _retarget_inheritance(model, relationships, index, rng) -> Relationship | None:
    rel = relationships[index]
    others = [rel2 for i, rel2 in enumerate(relationships) if i != index]
    existing = {
        (r.subclass, r.superclass)
        for r in others
        if r.kind is RelationshipKind.INHERITANCE
    }
    class_names = [cls.name for cls in model.classes]

    ends = ["superclass", "subclass"]
    rng.shuffle(ends)
    for end in ends:
        candidates = [
            name
            for name in class_names
            if name not in (rel.subclass, rel.superclass)
        ]
        rng.shuffle(candidates)
        for name in candidates:
            sub = name if end == "subclass" else rel.subclass
            sup = name if end == "superclass" else rel.superclass
            candidate = Relationship(RelationshipKind.INHERITANCE, subclass=sub, superclass=sup)
            if (sub, sup) in existing or sub == sup:
                continue
            if _would_cycle(others, candidate):
                continue
            return candidate
    return None


def quota(n: int) -> int:
    """Number of targets to mutate: 20% of the applicable set, rounded up."""
    return math.ceil(0.2 * n)


def mutate(
    model: DomainModel,
    op: MutationOperator,
    seed: int,
    exclude: set[int] | None = None,
) -> tuple[DomainModel, GroundTruth]:
    """Apply one operator to a fresh copy of the model.

    Raises when the operator has nothing to mutate. ``exclude`` hides
    relationship indices that an earlier operator already touched.
    """
    rng = random.Random(seed)
    mutated_model, mutated_ids, _ = _apply(model, op, rng, exclude or set())
    return mutated_model, _truth(mutated_model, mutated_ids)


def mutate_all(
    model: DomainModel,
    ops: list[MutationOperator],
    seed: int,
) -> tuple[DomainModel, GroundTruth]:
    """Apply several operators in sequence with per-operator quotas.

    Each operator draws its quota from the current model state, skipping
    relationships already mutated by an earlier operator. Operators with an
    empty applicable set are skipped with a warning.
    """
    rng = random.Random(seed)
    current = model
    touched: set[int] = set()
    all_mutated: set[str] = set()
    for op in ops:
        if not [t for t in applicable_elements(current, op) if t[0] not in touched]:
            log.warning("operator %s has no applicable elements; skipped", op.value)
            continue
        current, mutated_ids, indices = _apply(current, op, rng, touched)
        touched |= indices
        all_mutated |= mutated_ids
    return current, _truth(current, all_mutated)


def _apply(model, op, rng, exclude):
    targets = [t for t in applicable_elements(model, op) if t[0] not in exclude]
    if not targets:
        raise SpecAlignError(f"operator {op.value} is not applicable to this model")
    chosen = rng.sample(targets, quota(len(targets)))

    relationships = list(model.relationships)
    mutated_indices: set[int] = set()
    exact_anchors: set[tuple] = set()  # WAS4 marks one end, not the whole relationship
    for target in sorted(chosen):
        index = target[0]
        if op is MutationOperator.WAS2:
            relationships[index] = _flip_kind(relationships[index])
        elif op is MutationOperator.WAS4:
            slot = target[1]
            relationships[index] = _flip_multiplicity(relationships[index], slot)
            exact_anchors.add((index,) if slot == "part" else (index, slot))
        else:
            replacement = _retarget_inheritance(model, relationships, index, rng)
            if replacement is None:
                log.warning(
                    "no valid retarget for inheritance %s; element skipped",
                    relationships[index],
                )
                continue
            relationships[index] = replacement
        mutated_indices.add(index)

    mutated = DomainModel(
        name=model.name,
        classes=model.classes,
        enumerations=model.enumerations,
        relationships=tuple(relationships),
    )
    validate_model(mutated)

    def is_mutated(anchor: tuple) -> bool:
        if not anchor or not isinstance(anchor[0], int):
            return False  # attributes and literals are never mutation targets
        if op is MutationOperator.WAS4:
            return anchor in exact_anchors
        return anchor[0] in mutated_indices

    mutated_ids = {
        element.element_id
        for element in enumerate_elements(mutated)
        if is_mutated(element.anchor)
    }
    return mutated, mutated_ids, mutated_indices


def _truth(model: DomainModel, mutated_ids: set[str]) -> GroundTruth:
    labels = {
        element.element_id: (MISALIGNED if element.element_id in mutated_ids else ALIGNED)
        for element in enumerate_elements(model)
    }
    return GroundTruth(labels=labels)
