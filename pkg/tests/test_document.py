import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from lowprev import CategorySpace, Domain, InvalidCategoryError
from lowprev.document import ModelDocument, ModelError, dumps, fmt, load, loads, parse_counts, point_key
from lowprev.errors import ValidationError
from lowprev.previsions import AssessmentSet
from helpers import ABC, random_credal, random_gamble, random_simplex_lp

DATA = Path(__file__).parent / "data"
FILES = sorted(DATA.glob("*.json"))


def doc_text(**sections) -> str:
    return json.dumps({"version": "1", "space": ["a", "b"], **sections})


def test_fmt():
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(Fraction(-4, 2)) == "-2"
    assert fmt(0) == "0"


def test_point_keys():
    counts = Domain.counts(ABC, 3)
    m = parse_counts(ABC, "c=2,a=1")
    assert point_key(counts, m) == "a=1,c=2"
    assert point_key(Domain.tuples(ABC, 2), ("c", "a")) == "c,a"


@pytest.mark.parametrize("path", FILES, ids=[p.stem for p in FILES])
def test_round_trip_of_fixture_documents(path):
    doc = load(path)
    text = dumps(doc)
    again = loads(text)
    assert again == doc
    assert dumps(again) == text


@pytest.mark.parametrize("seed", range(8))
def test_round_trip_of_random_documents(seed):
    rng = random.Random(seed)
    tuples = Domain.tuples(ABC, 2)
    counts = Domain.counts(ABC, 3)
    doc = ModelDocument(space=ABC)
    doc.credal = random_credal(rng, counts if seed % 2 else tuples, sparsity=0.3)
    doc.assessments = AssessmentSet(tuples, tuple((random_gamble(rng, tuples), Fraction(-1, 3)) for _ in range(2)))
    doc.simplex_lp = random_simplex_lp(rng, ABC)
    doc.gambles = {"g": random_gamble(rng, tuples)}
    again = loads(dumps(doc))
    assert again == doc
    # exact rationals survive the wire, with nothing rounded
    assert again.gambles["g"].values == doc.gambles["g"].values


def test_mass_error_names_the_vertex():
    text = doc_text(credal={"kind": "tuple", "N": 1, "vertices": [{"a": "1/2", "b": "1/2"}, {"a": "1/2", "b": "2/5"}]})
    with pytest.raises(ModelError) as info:
        loads(text)
    message = str(info.value)
    assert "credal.vertices[1]" in message and "9/10" in message


def test_unknown_category_in_tuple():
    text = doc_text(gambles={"g": {"kind": "tuple", "N": 2, "values": {"a,z": 1}}})
    with pytest.raises(InvalidCategoryError):
        loads(text)


def test_syntax_error_reports_position():
    with pytest.raises(ModelError) as info:
        loads('{\n  "version": "1",\n  "space": ["a" "b"]\n}')
    assert "line 3" in str(info.value)


@pytest.mark.parametrize(
    "sections, fragment",
    [
        ({"surprise": 1}, "surprise"),
        ({"version": "7"}, "version"),
        ({"exprs": {"h": "theta.q"}}, "exprs.h"),
        ({"polys": {"p": {"bernstein": {"degree": 1, "coeffs": {"a=2": 1}}}}}, "polys.p"),
        ({"simplex_lp": {"vertices": [[{"theta": {"a": "1/2", "b": "1/3"}, "weight": 1}]]}}, "simplex_lp"),
        ({"gambles": {"g": {"kind": "tuple", "N": 1, "values": {"a": "x"}}}}, "gambles.g"),
    ],
)
def test_invalid_documents(sections, fragment):
    with pytest.raises(ValidationError) as info:
        loads(doc_text(**sections))
    assert fragment in str(info.value)


def test_space_is_canonically_sorted():
    doc = loads(json.dumps({"version": "1", "space": ["b", "a"]}))
    assert doc.space == CategorySpace(["a", "b"])


def test_decimal_literals_are_exact():
    doc = loads(doc_text(gambles={"g": {"kind": "tuple", "N": 1, "values": {"a": 0.1}}}))
    assert doc.gambles["g"].values[0] == Fraction(1, 10)


def test_missing_file():
    with pytest.raises(ModelError):
        load(DATA / "does-not-exist.json")
