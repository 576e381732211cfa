"""Minimal model slices: the smallest valid fragment around one element.

Slice contents by element kind:

    attribute        -> owning class + the attribute
    association end  -> the association, both ends, both connected classes
    composition      -> the composition, whole class, part class
    inheritance      -> the inheritance, subclass, superclass
    enum literal     -> the enumeration + the literal

Members carry human-readable ids ("class:Car", "attr:Car.plate", ...);
removing any non-focus member leaves an invalid fragment, which is what
makes the slice minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ElementLookupError
from .model import (
    DomainModel,
    ElementKind,
    ModelElement,
    Relationship,
    RelationshipKind,
    enumerate_elements,
)


@dataclass(frozen=True)
class SliceMember:
    member_id: str
    kind: str  # class | attribute | relationship | end | enumeration | literal
    payload: tuple


@dataclass(frozen=True)
class ModelSlice:
    focus: ModelElement
    members: tuple[SliceMember, ...]

    def member_ids(self) -> list[str]:
        return [member.member_id for member in self.members]


def _class_member(name: str) -> SliceMember:
    return SliceMember(f"class:{name}", "class", (name,))


def _relationship_id(rel: Relationship, index: int) -> str:
    if rel.kind is RelationshipKind.ASSOCIATION:
        return f"assoc:{rel.end_a.target_class}--{rel.end_b.target_class}@{index}"
    if rel.kind is RelationshipKind.COMPOSITION:
        return f"comp:{rel.whole}◇{rel.part}@{index}"
    return f"inh:{rel.subclass}<:{rel.superclass}@{index}"


def slice_element(model: DomainModel, element: ModelElement) -> ModelSlice:
    """Build the minimal slice for one element of the model."""
    by_anchor = {el.anchor: el.element_id for el in enumerate_elements(model)}
    if by_anchor.get(element.anchor) != element.element_id:
        raise ElementLookupError(f"element {element.element_id!r} is not part of this model")

    members: list[SliceMember] = []
    if element.kind is ElementKind.ATTRIBUTE:
        class_name, attr_name = element.anchor
        members.append(_class_member(class_name))
        members.append(
            SliceMember(element.element_id, "attribute", (class_name, attr_name))
        )
    elif element.kind is ElementKind.ASSOCIATION_END:
        index, slot = element.anchor
        rel = model.relationships[index]
        members.append(SliceMember(_relationship_id(rel, index), "relationship", (index,)))
        pair = f"{rel.end_a.target_class}--{rel.end_b.target_class}"
        for end_slot, end in (("a", rel.end_a), ("b", rel.end_b)):
            member_id = by_anchor.get((index, end_slot))
            if member_id is None:  # end without multiplicity, not itself an element
                tag = end.role if end.role else ("0" if end_slot == "a" else "1")
                member_id = f"end:{pair}#{tag}"
            members.append(SliceMember(member_id, "end", (index, end_slot)))
        members.append(_class_member(rel.end_a.target_class))
        if rel.end_b.target_class != rel.end_a.target_class:
            members.append(_class_member(rel.end_b.target_class))
    elif element.kind is ElementKind.COMPOSITION:
        (index,) = element.anchor
        rel = model.relationships[index]
        members.append(SliceMember(element.element_id, "relationship", (index,)))
        members.append(_class_member(rel.whole))
        if rel.part != rel.whole:
            members.append(_class_member(rel.part))
    elif element.kind is ElementKind.INHERITANCE:
        (index,) = element.anchor
        rel = model.relationships[index]
        members.append(SliceMember(element.element_id, "relationship", (index,)))
        members.append(_class_member(rel.subclass))
        members.append(_class_member(rel.superclass))
    else:  # ENUM_LITERAL
        enum_name, literal = element.anchor
        members.append(SliceMember(f"enum:{enum_name}", "enumeration", (enum_name,)))
        members.append(SliceMember(element.element_id, "literal", (enum_name, literal)))

    return ModelSlice(focus=element, members=tuple(members))


def slice_all(model: DomainModel) -> list[ModelSlice]:
    """One slice per classifiable element, in element order."""
    return [slice_element(model, element) for element in enumerate_elements(model)]


def fragment_is_valid(model: DomainModel, slice_: ModelSlice, members) -> bool:
    """Would this member subset still form a self-contained model fragment?

    Used to check minimality: every dangling reference (attribute without
    its class, end without its class, relationship with a missing end, a
    literal without its enumeration) makes the fragment invalid.
    """
    members = list(members)
    classes = {m.payload[0] for m in members if m.kind == "class"}
    enums = {m.payload[0] for m in members if m.kind == "enumeration"}

    for member in members:
        if member.kind == "attribute":
            if member.payload[0] not in classes:
                return False
        elif member.kind == "literal":
            if member.payload[0] not in enums:
                return False
        elif member.kind == "end":
            index, slot = member.payload
            rel = model.relationships[index]
            end = rel.end_a if slot == "a" else rel.end_b
            if end.target_class not in classes:
                return False
            if not any(m.kind == "relationship" and m.payload[0] == index for m in members):
                return False
        elif member.kind == "relationship":
            index = member.payload[0]
            rel = model.relationships[index]
            if rel.kind is RelationshipKind.ASSOCIATION:
                for slot in ("a", "b"):
                    if not any(
                        m.kind == "end" and m.payload == (index, slot) for m in members
                    ):
                        return False
            elif rel.kind is RelationshipKind.COMPOSITION:
                if rel.whole not in classes or rel.part not in classes:
                    return False
            else:
                if rel.subclass not in classes or rel.superclass not in classes:
                    return False
    return True


def is_minimal(model: DomainModel, slice_: ModelSlice) -> bool:
    """True when the full slice is valid but every member-removed subset is not."""
    if not fragment_is_valid(model, slice_, slice_.members):
        return False
    focus_id = slice_.focus.element_id
    for member in slice_.members:
        if member.member_id == focus_id:
            continue
        remaining = [m for m in slice_.members if m is not member]
        if fragment_is_valid(model, slice_, remaining):
            return False
    return True
