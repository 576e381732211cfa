import random
from pathlib import Path

import pytest

from specalign.model import parse_model

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def car_model():
    return parse_model((DATA / "car_service.model.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def car_spec_text():
    return (DATA / "car_service.spec.txt").read_text("utf-8")


@pytest.fixture(scope="session")
def reservation_model():
    return parse_model((DATA / "user_reservation.model.json").read_text("utf-8"))


def random_model_document(rng: random.Random) -> str:
    """A random but always valid model document for property-style tests."""
    import json

    n_classes = rng.randint(2, 8)
    class_names = [f"Cls{i}" for i in range(n_classes)]
    word_pool = ["name", "price", "owner", "status", "count", "startDate", "level"]
    role_pool = [None, "owns", "manages", "items", "holder", "provides", "place"]
    mult_pool = [None, "1", "*", "0..1", "1..*", "2..5", "0..*"]

    classes = []
    for name in class_names:
        attrs = rng.sample(word_pool, rng.randint(0, 3))
        classes.append(
            {"name": name, "attributes": [{"name": a, "type": "String"} for a in attrs]}
        )

    relationships = []
    for _ in range(rng.randint(0, 5)):
        end_a = {"class": rng.choice(class_names)}
        end_b = {"class": rng.choice(class_names)}
        for end in (end_a, end_b):
            role = rng.choice(role_pool)
            if role:
                end["role"] = role
            mult = rng.choice(mult_pool)
            if mult:
                end["multiplicity"] = mult
        relationships.append({"kind": "association", "endA": end_a, "endB": end_b})
    for _ in range(rng.randint(0, 3)):
        whole, part = rng.sample(class_names, 2)
        rel = {"kind": "composition", "whole": whole, "part": part}
        mult = rng.choice(mult_pool)
        if mult:
            rel["partMultiplicity"] = mult
        relationships.append(rel)
    inheritance_pairs = set()
    for _ in range(rng.randint(0, 3)):
        # subclass index above superclass index keeps the hierarchy acyclic
        sup, sub = sorted(rng.sample(range(n_classes), 2))
        if (sub, sup) in inheritance_pairs:
            continue
        inheritance_pairs.add((sub, sup))
        relationships.append(
            {
                "kind": "inheritance",
                "subclass": class_names[sub],
                "superclass": class_names[sup],
            }
        )

    enumerations = []
    if rng.random() < 0.5:
        enumerations.append(
            {"name": "Level", "literals": ["LOW", "MEDIUM", "HIGH"][: rng.randint(1, 3)]}
        )

    return json.dumps(
        {
            "name": f"Random{rng.randint(0, 999)}",
            "classes": classes,
            "enumerations": enumerations,
            "relationships": relationships,
        }
    )
