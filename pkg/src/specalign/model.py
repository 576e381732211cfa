"""In-memory domain model, canonical JSON document format, and element enumeration.

A model document is a JSON object:

    { "name": "CarService",
      "classes": [ {"name": "Car", "attributes": [{"name": "plate", "type": "String"}]} ],
      "enumerations": [ {"name": "PartType", "literals": ["ENGINE", ...]} ],
      "relationships": [
        {"kind": "association",
         "endA": {"class": "Service", "role": "provides", "multiplicity": "*"},
         "endB": {"class": "Garage", "role": "place", "multiplicity": "1"}},
        {"kind": "composition", "whole": "Car", "part": "Part", "partMultiplicity": "*"},
        {"kind": "inheritance", "subclass": "Repair", "superclass": "Service"} ] }

Aggregations are accepted on input and normalized to plain associations.
Models are immutable after parsing and safe to share between workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    ModelReferenceError,
    ModelSyntaxError,
    ModelValidationError,
    MultiplicityError,
)

UNBOUNDED = None  # upper bound sentinel inside Multiplicity


@dataclass(frozen=True)
class Multiplicity:
    """Cardinality of an association or composition end.

    ``upper`` is an int or None for an unbounded upper limit.
    """

    lower: int
    upper: int | None

    def __post_init__(self):
        if self.lower < 0:
            raise MultiplicityError(f"negative lower bound: {self.lower}")
        if self.upper is not None and self.upper < self.lower:
            raise MultiplicityError(f"upper bound {self.upper} below lower bound {self.lower}")

    @classmethod
    def parse(cls, text: str) -> "Multiplicity":
        text = text.strip()
        if not text:
            raise MultiplicityError("empty multiplicity")
        if text == "*":
            return cls(0, UNBOUNDED)
        if ".." in text:
            low, _, high = text.partition("..")
            try:
                lower = int(low)
            except ValueError:
                raise MultiplicityError(f"bad lower bound in {text!r}") from None
            if high == "*":
                return cls(lower, UNBOUNDED)
            try:
                upper = int(high)
            except ValueError:
                raise MultiplicityError(f"bad upper bound in {text!r}") from None
            return cls(lower, upper)
        try:
            value = int(text)
        except ValueError:
            raise MultiplicityError(f"bad multiplicity {text!r}") from None
        return cls(value, value)

    def render(self) -> str:
        if self.lower == 0 and self.upper is UNBOUNDED:
            return "*"
        if self.upper is UNBOUNDED:
            return f"{self.lower}..*"
        if self.lower == self.upper:
            return str(self.lower)
        return f"{self.lower}..{self.upper}"

    @property
    def many(self) -> bool:
        """True when more than one target is allowed."""
        return self.upper is UNBOUNDED or self.upper > 1

    @property
    def optional(self) -> bool:
        return self.lower == 0

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Attribute:
    name: str
    declared_type: str = ""  # parsed but never interpreted


@dataclass(frozen=True)
class UmlClass:
    name: str
    attributes: tuple[Attribute, ...] = ()


@dataclass(frozen=True)
class AssociationEnd:
    target_class: str
    role: str | None = None
    multiplicity: Multiplicity | None = None


class RelationshipKind(Enum):
    ASSOCIATION = "association"
    COMPOSITION = "composition"
    INHERITANCE = "inheritance"


@dataclass(frozen=True)
class Relationship:
    kind: RelationshipKind
    # association
    end_a: AssociationEnd | None = None
    end_b: AssociationEnd | None = None
    # composition
    whole: str | None = None
    part: str | None = None
    part_multiplicity: Multiplicity | None = None
    # inheritance
    subclass: str | None = None
    superclass: str | None = None


@dataclass(frozen=True)
class Enumeration:
    name: str
    literals: tuple[str, ...]


class ElementKind(Enum):
    ATTRIBUTE = "attribute"
    ASSOCIATION_END = "association_end"
    COMPOSITION = "composition"
    INHERITANCE = "inheritance"
    ENUM_LITERAL = "enum_literal"


@dataclass(frozen=True)
class ModelElement:
    """One classifiable unit of the model.

    ``anchor`` locates the element: for attributes (class, attribute name),
    for association ends (relationship index, "a" or "b"), for compositions
    and inheritances the relationship index, for literals (enum, literal).
    """

    kind: ElementKind
    element_id: str
    anchor: tuple


@dataclass(frozen=True)
class DomainModel:
    name: str
    classes: tuple[UmlClass, ...] = ()
    enumerations: tuple[Enumeration, ...] = ()
    relationships: tuple[Relationship, ...] = ()

    def class_named(self, name: str) -> UmlClass:
        for cls in self.classes:
            if cls.name == name:
                return cls
        raise ModelReferenceError(f"no class named {name!r}")

    def enumeration_named(self, name: str) -> Enumeration:
        for enum in self.enumerations:
            if enum.name == name:
                return enum
        raise ModelReferenceError(f"no enumeration named {name!r}")


def _expect(mapping, key, kind, location):
    if not isinstance(mapping, dict):
        raise ModelSyntaxError(f"expected an object, got {type(mapping).__name__}", location)
    if key not in mapping:
        raise ModelSyntaxError(f"missing {key!r}", location)
    value = mapping[key]
    if not isinstance(value, kind):
        raise ModelSyntaxError(f"{key!r} must be {kind.__name__}", location)
    return value


def _parse_end(raw, location) -> AssociationEnd:
    target = _expect(raw, "class", str, location)
    role = raw.get("role")
    if role is not None and not isinstance(role, str):
        raise ModelSyntaxError("'role' must be a string", location)
    mult_text = raw.get("multiplicity")
    multiplicity = None
    if mult_text is not None:
        if not isinstance(mult_text, str):
            raise ModelSyntaxError("'multiplicity' must be a string", location)
        multiplicity = Multiplicity.parse(mult_text)
    return AssociationEnd(target_class=target, role=role or None, multiplicity=multiplicity)


def parse_model(document: str) -> DomainModel:
    """Parse and validate a canonical model document."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(raw, dict):
        raise ModelSyntaxError("top level must be an object")

    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ModelSyntaxError("'name' must be a string")

    classes = []
    for i, raw_cls in enumerate(raw.get("classes", [])):
        loc = f"classes[{i}]"
        cls_name = _expect(raw_cls, "name", str, loc)
        if not cls_name:
            raise ModelSyntaxError("class name must be non-empty", loc)
        attrs = []
        for j, raw_attr in enumerate(raw_cls.get("attributes", [])):
            attr_loc = f"{loc}.attributes[{j}]"
            attr_name = _expect(raw_attr, "name", str, attr_loc)
            if not attr_name:
                raise ModelSyntaxError("attribute name must be non-empty", attr_loc)
            attrs.append(Attribute(name=attr_name, declared_type=raw_attr.get("type", "")))
        classes.append(UmlClass(name=cls_name, attributes=tuple(attrs)))

    enums = []
    for i, raw_enum in enumerate(raw.get("enumerations", [])):
        loc = f"enumerations[{i}]"
        enum_name = _expect(raw_enum, "name", str, loc)
        if not enum_name:
            raise ModelSyntaxError("enumeration name must be non-empty", loc)
        literals = _expect(raw_enum, "literals", list, loc)
        for lit in literals:
            if not isinstance(lit, str) or not lit:
                raise ModelSyntaxError("literals must be non-empty strings", loc)
        enums.append(Enumeration(name=enum_name, literals=tuple(literals)))

    relationships = []
    for i, raw_rel in enumerate(raw.get("relationships", [])):
        loc = f"relationships[{i}]"
        kind = _expect(raw_rel, "kind", str, loc).lower()
        if kind in ("association", "aggregation"):
            # aggregation semantics are not distinguished from plain associations
            end_a = _parse_end(_expect(raw_rel, "endA", dict, loc), f"{loc}.endA")
            end_b = _parse_end(_expect(raw_rel, "endB", dict, loc), f"{loc}.endB")
            relationships.append(
                Relationship(kind=RelationshipKind.ASSOCIATION, end_a=end_a, end_b=end_b)
            )
        elif kind == "composition":
            whole = _expect(raw_rel, "whole", str, loc)
            part = _expect(raw_rel, "part", str, loc)
            mult_text = raw_rel.get("partMultiplicity")
            part_mult = None
            if mult_text is not None:
                if not isinstance(mult_text, str):
                    raise ModelSyntaxError("'partMultiplicity' must be a string", loc)
                part_mult = Multiplicity.parse(mult_text)
            relationships.append(
                Relationship(
                    kind=RelationshipKind.COMPOSITION,
                    whole=whole,
                    part=part,
                    part_multiplicity=part_mult,
                )
            )
        elif kind == "inheritance":
            relationships.append(
                Relationship(
                    kind=RelationshipKind.INHERITANCE,
                    subclass=_expect(raw_rel, "subclass", str, loc),
                    superclass=_expect(raw_rel, "superclass", str, loc),
                )
            )
        else:
            raise ModelSyntaxError(f"unknown relationship kind {kind!r}", loc)

    model = DomainModel(
        name=name,
        classes=tuple(classes),
        enumerations=tuple(enums),
        relationships=tuple(relationships),
    )
    validate_model(model)
    return model


def validate_model(model: DomainModel) -> None:
    """Check referential integrity and structural invariants; raise on violation."""
    names_seen = set()
    for cls in model.classes:
        if cls.name in names_seen:
            raise ModelValidationError(f"duplicate class name {cls.name!r}")
        names_seen.add(cls.name)
        attr_names = set()
        for attr in cls.attributes:
            if attr.name in attr_names:
                raise ModelValidationError(f"duplicate attribute {attr.name!r} in class {cls.name!r}")
            attr_names.add(attr.name)
    for enum in model.enumerations:
        if enum.name in names_seen:
            raise ModelValidationError(f"duplicate type name {enum.name!r}")
        names_seen.add(enum.name)
        if len(set(enum.literals)) != len(enum.literals):
            raise ModelValidationError(f"duplicate literal in enumeration {enum.name!r}")

    class_names = {cls.name for cls in model.classes}

    def check_class(name: str | None, context: str):
        if name not in class_names:
            raise ModelReferenceError(f"{context} references missing class {name!r}")

    inheritances = []
    for rel in model.relationships:
        if rel.kind is RelationshipKind.ASSOCIATION:
            if rel.end_a is None or rel.end_b is None:
                raise ModelValidationError("association must have two ends")
            check_class(rel.end_a.target_class, "association end")
            check_class(rel.end_b.target_class, "association end")
        elif rel.kind is RelationshipKind.COMPOSITION:
            check_class(rel.whole, "composition")
            check_class(rel.part, "composition")
        else:
            check_class(rel.subclass, "inheritance")
            check_class(rel.superclass, "inheritance")
            if rel.subclass == rel.superclass:
                raise ModelValidationError(f"class {rel.subclass!r} cannot inherit from itself")
            pair = (rel.subclass, rel.superclass)
            if pair in inheritances:
                raise ModelValidationError(f"duplicate inheritance {rel.subclass!r} -> {rel.superclass!r}")
            inheritances.append(pair)

    # inheritance graph must be acyclic
    parents: dict[str, list[str]] = {}
    for sub, sup in inheritances:
        parents.setdefault(sub, []).append(sup)
    for start in parents:
        stack, seen = [start], set()
        while stack:
            node = stack.pop()
            for parent in parents.get(node, []):
                if parent == start:
                    raise ModelValidationError(f"inheritance cycle through {start!r}")
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)


def serialize_model(model: DomainModel) -> str:
    """Render a model back to its canonical document text.

    ``parse_model(serialize_model(m)) == m`` for every valid model.
    """
    doc: dict = {"name": model.name, "classes": [], "enumerations": [], "relationships": []}
    for cls in model.classes:
        raw_cls: dict = {"name": cls.name, "attributes": []}
        for attr in cls.attributes:
            raw_attr: dict = {"name": attr.name}
            if attr.declared_type:
                raw_attr["type"] = attr.declared_type
            raw_cls["attributes"].append(raw_attr)
        doc["classes"].append(raw_cls)
    for enum in model.enumerations:
        doc["enumerations"].append({"name": enum.name, "literals": list(enum.literals)})
    for rel in model.relationships:
        if rel.kind is RelationshipKind.ASSOCIATION:
            raw_rel = {"kind": "association"}
            for key, end in (("endA", rel.end_a), ("endB", rel.end_b)):
                raw_end: dict = {"class": end.target_class}
                if end.role:
                    raw_end["role"] = end.role
                if end.multiplicity is not None:
                    raw_end["multiplicity"] = end.multiplicity.render()
                raw_rel[key] = raw_end
        elif rel.kind is RelationshipKind.COMPOSITION:
            raw_rel = {"kind": "composition", "whole": rel.whole, "part": rel.part}
            if rel.part_multiplicity is not None:
                raw_rel["partMultiplicity"] = rel.part_multiplicity.render()
        else:
            raw_rel = {"kind": "inheritance", "subclass": rel.subclass, "superclass": rel.superclass}
        doc["relationships"].append(raw_rel)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _unique_id(base: str, taken: set[str]) -> str:
    # parallel relationships between the same classes would collide otherwise
    candidate = base
    counter = 2
    while candidate in taken:
        candidate = f"{base}~{counter}"
        counter += 1
    taken.add(candidate)
    return candidate


def enumerate_elements(model: DomainModel) -> list[ModelElement]:
    """List every classifiable element in deterministic document order.

    Association and composition ends without a multiplicity are not
    classified and therefore never appear in the result.
    """
    elements: list[ModelElement] = []
    taken: set[str] = set()

    for cls in model.classes:
        for attr in cls.attributes:
            eid = _unique_id(f"attr:{cls.name}.{attr.name}", taken)
            elements.append(ModelElement(ElementKind.ATTRIBUTE, eid, (cls.name, attr.name)))

    for index, rel in enumerate(model.relationships):
        if rel.kind is RelationshipKind.ASSOCIATION:
            pair = f"{rel.end_a.target_class}--{rel.end_b.target_class}"
            for slot, end in (("a", rel.end_a), ("b", rel.end_b)):
                if end.multiplicity is None:
                    continue
                tag = end.role if end.role else ("0" if slot == "a" else "1")
                eid = _unique_id(f"end:{pair}#{tag}", taken)
                elements.append(ModelElement(ElementKind.ASSOCIATION_END, eid, (index, slot)))
        elif rel.kind is RelationshipKind.COMPOSITION:
            eid = _unique_id(f"comp:{rel.whole}◇{rel.part}", taken)
            elements.append(ModelElement(ElementKind.COMPOSITION, eid, (index,)))
        else:
            eid = _unique_id(f"inh:{rel.subclass}<:{rel.superclass}", taken)
            elements.append(ModelElement(ElementKind.INHERITANCE, eid, (index,)))

    for enum in model.enumerations:
        for literal in enum.literals:
            eid = _unique_id(f"lit:{enum.name}.{literal}", taken)
            elements.append(ModelElement(ElementKind.ENUM_LITERAL, eid, (enum.name, literal)))

    return elements
