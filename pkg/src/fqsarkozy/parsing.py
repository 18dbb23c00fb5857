"""Text forms of univariate polynomials.

Two notations are accepted:

* a comma-separated list of element encodings, little-endian:
  ``"0,1,1"`` is x + x^2;
* a symbolic sum such as ``"b^2+b"``, ``"2*T^3 - T"`` or ``"x^2 + [3]x"``.
  Integer coefficients are reduced into the prime subfield; ``[e]`` is the
  element with encoding e.  Any single letter can serve as the variable.
"""

from __future__ import annotations

import re

from .errors import CoefficientOutOfRange, ParseError
from .field import FieldSpec
from .polynomial import UniPoly

_LIST = re.compile(r"\s*-?\d+\s*(,\s*-?\d+\s*)*$")
_TERM = re.compile(
    r"""\s*
    (?P<coef>\d+|\[\d+\])?\s*\*?\s*
    (?:(?P<var>[A-Za-z])\s*(?:\^\s*(?P<exp>\d+))?)?
    \s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str, spec: FieldSpec) -> UniPoly:
    if _LIST.match(text):
        coeffs = []
        pos = 0
        for part in text.split(","):
            value = int(part)
            if not 0 <= value < spec.q:
                raise CoefficientOutOfRange(f"coefficient {value} is not an element of F_{spec.q}", pos)
            coeffs.append(value)
            pos += len(part) + 1
        return UniPoly(spec, coeffs)
    return _parse_symbolic(text, spec)


def _parse_symbolic(text: str, spec: FieldSpec) -> UniPoly:
    coeffs: dict[int, int] = {}
    var = None
    pos = 0
    sign = 1
    expect_term = True
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-":
            if not expect_term and ch in "+-":
                sign = 1 if ch == "+" else -1
                expect_term = True
                pos += 1
                continue
            if expect_term and ch == "-":
                sign = -sign
                pos += 1
                continue
            raise ParseError(f"unexpected {ch!r}", pos)
        if not expect_term:
            raise ParseError(f"expected '+' or '-' before {ch!r}", pos)
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("var")):
            raise ParseError(f"cannot parse term starting with {ch!r}", pos)
        coef_txt, v, exp_txt = m.group("coef"), m.group("var"), m.group("exp")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ParseError(f"mixed variables {var!r} and {v!r}", m.start("var"))
            exp = int(exp_txt) if exp_txt is not None else 1
        else:
            if exp_txt is not None:
                raise ParseError("exponent without variable", pos)
            exp = 0
        if coef_txt is None:
            c = 1
        elif coef_txt.startswith("["):
            c = int(coef_txt[1:-1])
            if not 0 <= c < spec.q:
                raise CoefficientOutOfRange(f"element encoding {c} is not in F_{spec.q}", m.start("coef"))
        else:
            c = spec.embed_int(int(coef_txt))
        if sign < 0:
            c = spec.neg(c)
        coeffs[exp] = spec.add(coeffs.get(exp, 0), c)
        sign = 1
        expect_term = False
        pos = m.end()
    if expect_term:
        raise ParseError("expression ends without a term", pos)
    top = max(coeffs, default=-1)
    return UniPoly(spec, [coeffs.get(i, 0) for i in range(top + 1)])
