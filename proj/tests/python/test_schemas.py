import json
import os

import jsonschema
import pytest

import symflat

HERE = os.path.dirname(os.path.abspath(__file__))
SCHEMAS = os.path.join(HERE, "..", "..", "docs", "schemas")
FIXTURES = os.environ.get("SYMFLAT_FIXTURE_DIR", os.path.join(HERE, "..", "fixtures"))


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def fixture(name):
    return symflat.Connection.load(os.path.join(FIXTURES, name))


def reports():
    flat = fixture("flat_rank2.json")
    nonflat = fixture("nonflat_rank1.json")
    nonflat2 = fixture("nonflat_rank2.json")
    yield "decompose", symflat.decompose_report(2, "x1*dx1/\\dy1 + dx2/\\dy2")
    yield "flatness", symflat.flatness(flat)
    yield "flatness", symflat.flatness(nonflat, require_flat=True)
    yield "flatness", symflat.flatness(nonflat2, require_flat=True)
    yield "ainfty-check", symflat.ainfty_check(1, trials=5, seed=2, max_deg=3)
    yield "ainfty-check", symflat.ainfty_check(2, trials=5, seed=2, rank=2)
    yield "twist-square", symflat.twist_square(flat, trials=5)
    yield "twist-square", symflat.twist_square(nonflat, trials=5)
    yield "cohomology", symflat.cohomology(flat, "prim", truncation=3)
    yield "cohomology", symflat.cohomology(flat, "cone", truncation=3)
    yield "cohomology", symflat.cohomology(nonflat)
    yield "cone-verify", symflat.cone_verify(flat, trials=6)
    yield "cone-verify", symflat.cone_verify(nonflat2, trials=6)


@pytest.mark.parametrize("name,report", list(reports()))
def test_report_matches_schema(name, report):
    jsonschema.validate(dict(report), schema(name))


def test_error_schema():
    doc = {"error": "line 1, column 10: coordinate index 3 out of range 1..2", "line": 1, "column": 10}
    jsonschema.validate(doc, schema("error"))
