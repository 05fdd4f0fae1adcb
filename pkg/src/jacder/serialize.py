"""Canonical text and JSON-ready rendering of core values.

Polynomial text uses the same grammar the parser accepts and lists
monomials in descending graded-lex order, so parse(serialize(p)) == p.
Rationals inside JSON documents are encoded as strings ("3/2", "-1", "7").
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from jacder.centralizer import (
    CentralizerResult,
    CriterionReport,
    EigenPair,
    OdeSystem,
)
from jacder.derivation import Derivation
from jacder.kernel import Decomposition, KernelBasis
from jacder.poly import BivarPoly, UnivarPoly


def rational_text(value: Union[Fraction, int]) -> str:
    return str(Fraction(value))


def _term_text(coeff: Fraction, powers: list[tuple[str, int]]) -> str:
    factors = [f"{var}^{n}" if n > 1 else var for var, n in powers if n > 0]
    if not factors:
        return str(abs(coeff))
    c = abs(coeff)
    if c != 1:
        factors.insert(0, str(c))
    return "*".join(factors)


def poly_text(p: BivarPoly) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        body = _term_text(c, [("x", m.ex), ("y", m.ey)])
        if i == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"-{body}" if c < 0 else f"+{body}")
    return "".join(pieces)


def univar_text(u: UnivarPoly) -> str:
    if u.is_zero:
        return "0"
    pieces = []
    first = True
    for k in range(int(u.degree), -1, -1):
        c = u.coeff(k)
        if not c:
            continue
        body = _term_text(c, [("t", k)])
        if first:
            pieces.append(f"-{body}" if c < 0 else body)
            first = False
        else:
            pieces.append(f"-{body}" if c < 0 else f"+{body}")
    return "".join(pieces)


def jsonable(value):
    """Convert a core value into JSON-ready data (plain dicts and strings)."""
    if value is None or isinstance(value, bool) or isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return rational_text(value)
    if isinstance(value, BivarPoly):
        return poly_text(value)
    if isinstance(value, UnivarPoly):
        return univar_text(value)
    if isinstance(value, Derivation):
        return {"P": poly_text(value.P), "Q": poly_text(value.Q)}
    if isinstance(value, KernelBasis):
        return {"p": poly_text(value.p), "degree_bound": value.degree_bound}
    if isinstance(value, Decomposition):
        return {"p": poly_text(value.p), "theta": univar_text(value.theta)}
    if isinstance(value, CriterionReport):
        return {
            "commutes": value.commutes,
            "psi": None if value.psi is None else univar_text(value.psi),
            "lhs": None if value.lhs is None else poly_text(value.lhs),
            "rhs": None if value.rhs is None else poly_text(value.rhs),
        }
    if isinstance(value, CentralizerResult):
        return {
            "rank": value.rank,
            "certified": value.certified.value,
            "degree_bound": value.degree_bound,
            "generator_dp": jsonable(value.generator_dp),
            "generator_t0": jsonable(value.generator_t0),
            "psi0": None if value.psi0 is None else univar_text(value.psi0),
        }
    if isinstance(value, EigenPair):
        return {"g": poly_text(value.g), "lambda": rational_text(value.lam)}
    if isinstance(value, OdeSystem):
        return {
            "rhs_x": poly_text(value.rhs_x),
            "rhs_y": poly_text(value.rhs_y),
            "first_integrals": [poly_text(h) for h in value.first_integrals],
            "commuting_fields": [jsonable(d) for d in value.commuting_fields],
        }
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize(value, format: str = "text") -> str:
    """Render a core value as canonical text or as a JSON document."""
    if format == "json":
        return json.dumps(jsonable(value))
    if format == "text":
        data = jsonable(value)
        return data if isinstance(data, str) else json.dumps(data)
    raise ValueError(f"unknown format {format!r}")
