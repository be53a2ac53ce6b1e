import json
import pathlib

from jsonschema import validate

from elemcomm.algebra.elemgroup import GroupWord
from elemcomm.algebra.freering import RingElem
from elemcomm.dsl.traces import build_trace, check_trace, load_trace
from elemcomm.rewrite.decompose import GeneratorTerm, theorem1_decompose

SCHEMA = json.loads(pathlib.Path("schemas/trace.schema.json").read_text())
EXAMPLE_PATH = pathlib.Path("tests/fixtures/trace_example.json")


def test_example_validates_against_schema():
    validate(instance=json.loads(EXAMPLE_PATH.read_text()), schema=SCHEMA)


def test_example_checks():
    assert check_trace(load_trace(EXAMPLE_PATH)) == (True, [])


def test_built_trace_validates_against_schema():
    a, b, c = RingElem.sym("a1"), RingElem.sym("b1"), RingElem.sym("c")
    terms = [
        GeneratorTerm.of(
            "c3", 2, 3, a, b, c, conjugator=GroupWord.of(3, (3, 1, c))
        ),
        GeneratorTerm.of("zba", 1, 3, a, b, c, n=3),
    ]
    doc = build_trace(terms, theorem1_decompose(terms, 3))
    validate(instance=json.loads(doc.model_dump_json()), schema=SCHEMA)
    assert doc.verdict == "pass"
