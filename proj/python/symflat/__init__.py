"""Exact symbolic checks for symplectically flat connections.

Forms carry exact rational coefficients. The report functions return the
same JSON documents as the ``symflat`` command-line tool, decoded into
dictionaries, together with the exit code the tool would use.
"""

import json
from fractions import Fraction

from ._core import (
    L,
    Connection,
    Form,
    ParseError,
    Pi,
    decompose,
    del_minus,
    del_plus,
    reassemble,
)
from . import _core

__all__ = [
    "Connection",
    "Form",
    "L",
    "ParseError",
    "Pi",
    "ainfty_check",
    "cohomology",
    "cone_verify",
    "decompose",
    "decompose_report",
    "del_minus",
    "del_plus",
    "flat_connection",
    "flatness",
    "reassemble",
    "twist_square",
]


class Report(dict):
    """Decoded JSON report with the tool's exit code attached."""

    def __init__(self, code, text):
        super().__init__(json.loads(text))
        self.code = code
        self.text = text

    @property
    def ok(self):
        return self.code == 0


def _report(pair):
    return Report(*pair)


def flat_connection(n, rank, phi0, gauge=None, lambda_="standard"):
    """g(Phi0 lambda)g^-1 + g d(g^-1) for a constant Phi0 (nested lists of
    ints, Fractions or "p/q" strings) and an optional strictly upper
    triangular gauge given as DSL function strings."""
    doc = {
        "n": n,
        "rank": rank,
        "Phi0": [[str(Fraction(x)) for x in row] for row in phi0],
        "lambda": lambda_,
    }
    if gauge is not None:
        doc["gauge"] = gauge
    return Connection.from_json(json.dumps(doc))


def decompose_report(n, form):
    return _report(_core.decompose_report(n, form))


def flatness(connection, require_flat=False):
    return _report(_core.flatness_report(connection, require_flat))


def ainfty_check(n, trials=100, seed=1, max_deg=2, rank=1):
    return _report(_core.ainfty_report(n, trials, seed, max_deg, rank))


def twist_square(connection, trials=100, seed=1, max_deg=2):
    return _report(_core.twist_square_report(connection, trials, seed, max_deg))


def cohomology(connection, complex="prim", truncation=5, margins=(2, 3)):
    return _report(_core.cohomology_report(connection, complex, truncation, list(margins)))


def cone_verify(connection, trials=100, seed=1, max_deg=2):
    return _report(_core.cone_verify_report(connection, trials, seed, max_deg))
