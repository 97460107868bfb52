"""JSON documents for matrices and certificates.

Matrix document::

    {"rows": 2, "cols": 2, "entries": [["1/4", "1/4"], ["1/4", "1/4"]]}

Each entry matches ``[+-]?[0-9]+(/[0-9]+)?`` with a nonzero denominator.
Plain JSON integers are accepted on input; floats never are.  Output is
canonical: lowest terms, positive denominator, no "/1".
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .exact_matrix import Matrix
from .flanders import SimilarityCertificate

_RATIONAL = re.compile(r"[+-]?[0-9]+(?:/[0-9]+)?")


class ParseError(ValueError):
    pass


def parse_scalar(text) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text.strip()):
        raise ParseError(f"not a rational: {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_scalar(x: Fraction) -> str:
    return str(x)


def matrix_to_doc(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]}


def matrix_from_doc(doc) -> Matrix:
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be an object")
    try:
        rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    except KeyError as e:
        raise ParseError(f"matrix document lacks {e.args[0]!r}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ParseError("rows and cols must be non-negative integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ParseError(f"expected {rows} rows of entries")
    flat = []
    for r in entries:
        if not isinstance(r, list) or len(r) != cols:
            raise ParseError(f"expected {cols} entries per row")
        flat.extend(parse_scalar(x) for x in r)
    return Matrix(rows, cols, flat)


def certificate_to_doc(cert: SimilarityCertificate, meta: dict | None = None) -> dict:
    return {
        "relation": cert.relation,
        "u": matrix_to_doc(cert.u),
        "u_inv": matrix_to_doc(cert.u_inv),
        "lhs": matrix_to_doc(cert.lhs),
        "rhs": matrix_to_doc(cert.rhs),
        "meta": meta or {},
    }


def certificate_from_doc(doc) -> SimilarityCertificate:
    if not isinstance(doc, dict):
        raise ParseError("certificate document must be an object")
    relation = doc.get("relation")
    if not isinstance(relation, str):
        raise ParseError("certificate lacks a relation tag")
    try:
        parts = [matrix_from_doc(doc[k]) for k in ("u", "u_inv", "lhs", "rhs")]
    except KeyError as e:
        raise ParseError(f"certificate lacks {e.args[0]!r}") from None
    return SimilarityCertificate(*parts, relation=relation)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from None


def load_matrix(path) -> Matrix:
    return matrix_from_doc(load_json(path))


def load_certificate(path) -> SimilarityCertificate:
    return certificate_from_doc(load_json(path))
