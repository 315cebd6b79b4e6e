"""Text encoding of abelian fields.

Accepted forms::

    Q
    quad:D                      Q(sqrt(D)), D a nonzero integer
    zeta:m                      the m-th cyclotomic field, m >= 1
    chars:mod=M;gens=a/b,c/d    characters mod M given by exponent vectors

Exponent vectors are read against the cyclic decomposition of (Z/M)*
produced by :func:`rdlab.characters.unit_group_structure`.  Formatting
always emits "Q" or the canonical ``chars:`` form, which parses back to the
identical field.
"""

from __future__ import annotations

import re

from rdlab.characters import unit_group_structure
from rdlab.fields import (
    AbelianField,
    cyclotomic_field,
    from_generators,
    quadratic_field,
    rational_field,
    to_spec,
)

KINDS = ("Q", "quad", "zeta", "chars")

_INT = re.compile(r"[+-]?\d+")
_NAT = re.compile(r"\d+")


class FieldSpecError(ValueError):
    """Malformed spec; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.reason = message
        self.text = text
        self.position = position

    def caret(self) -> str:
        return f"  {self.text}\n  {' ' * self.position}^"


class UnsupportedSpec(ValueError):
    """Well-formed prefix naming a field kind this package cannot build."""


def _expect_int(text: str, pos: int, end: int, signed: bool) -> int:
    m = (_INT if signed else _NAT).fullmatch(text, pos, end)
    if not m:
        raise FieldSpecError("expected an integer", text, pos)
    return int(m.group())


def parse_field_spec(text: str) -> AbelianField:
    if text == "Q":
        return rational_field()
    colon = text.find(":")
    if colon < 0:
        if re.fullmatch(r"[A-Za-z_]+", text):
            raise UnsupportedSpec(f"unsupported field kind {text!r}")
        raise FieldSpecError("expected 'Q' or KIND:ARGS", text, 0)
    kind = text[:colon]
    body = colon + 1
    if kind == "quad":
        d = _expect_int(text, body, len(text), signed=True)
        if d == 0:
            raise FieldSpecError("quad:D needs D != 0", text, body)
        return quadratic_field(d)
    if kind == "zeta":
        m = _expect_int(text, body, len(text), signed=False)
        if m < 1:
            raise FieldSpecError("zeta:m needs m >= 1", text, body)
        return cyclotomic_field(m)
    if kind == "chars":
        return _parse_chars(text, body)
    if re.fullmatch(r"[A-Za-z_]+", kind):
        raise UnsupportedSpec(f"unsupported field kind {kind!r}")
    raise FieldSpecError("bad field kind", text, 0)


def _parse_chars(text: str, pos: int) -> AbelianField:
    if not text.startswith("mod=", pos):
        raise FieldSpecError("expected 'mod='", text, pos)
    pos += 4
    semi = text.find(";", pos)
    if semi < 0:
        raise FieldSpecError("expected ';gens=' after the modulus", text, len(text))
    modulus = _expect_int(text, pos, semi, signed=False)
    if modulus < 1:
        raise FieldSpecError("modulus must be >= 1", text, pos)
    pos = semi + 1
    if not text.startswith("gens=", pos):
        raise FieldSpecError("expected 'gens='", text, pos)
    pos += 5
    k = len(unit_group_structure(modulus).orders)
    gens = []
    if pos < len(text):
        for chunk in _split_positions(text, pos, len(text), ","):
            entries = list(_split_positions(text, chunk[0], chunk[1], "/"))
            if len(entries) != k:
                raise FieldSpecError(
                    f"generator has {len(entries)} entries, (Z/{modulus})* has {k} components",
                    text,
                    chunk[0],
                )
            gens.append([_expect_int(text, a, b, signed=True) for a, b in entries])
    return from_generators(modulus, gens)


def _split_positions(text: str, start: int, end: int, sep: str):
    pos = start
    while True:
        nxt = text.find(sep, pos, end)
        if nxt < 0:
            yield pos, end
            return
        yield pos, nxt
        pos = nxt + 1


def format_field_spec(F: AbelianField) -> str:
    return to_spec(F)
