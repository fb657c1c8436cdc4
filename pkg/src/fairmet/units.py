"""Minimal UCUM-flavoured unit-string checker.

Accepts products/quotients of prefixed atoms with integer exponents, e.g.
``Cel``, ``m/s``, ``W/m2``, ``mm/h``, ``%``. This is deliberately a small
allowlisted grammar, not a full UCUM implementation: it exists so the FAIR
rubric can ask "do the declared units parse" deterministically.
"""

from __future__ import annotations

import re

#: Unit atoms accepted without a prefix.
UNIT_ATOMS = frozenset({
    "m", "s", "g", "A", "K", "mol", "cd",
    "Hz", "N", "Pa", "J", "W", "C", "V", "F", "Ohm", "S", "T", "lm", "lx",
    "L", "t", "bar", "eV",
    "Cel", "deg", "rad", "sr",
    "min", "h", "d", "a", "wk",
    "%", "1",
})

#: SI prefixes allowed in front of a prefixable atom.
UNIT_PREFIXES = ("da", "y", "z", "a", "f", "p", "n", "u", "m", "c", "d", "h", "k", "M", "G", "T")

#: Atoms that accept an SI prefix (counted units and e.g. Cel do not).
PREFIXABLE_ATOMS = frozenset({
    "m", "s", "g", "A", "K", "mol", "Hz", "N", "Pa", "J", "W", "V", "L", "bar", "eV", "t",
})

_FACTOR_RE = re.compile(r"^([A-Za-z%]+|1)(-?[0-9]+)?$")


class UnitsError(ValueError):
    """Raised when a unit string does not parse."""


def _atom_ok(atom: str) -> bool:
    if atom in UNIT_ATOMS:
        return True
    for prefix in UNIT_PREFIXES:
        rest = atom[len(prefix):]
        if atom.startswith(prefix) and rest in PREFIXABLE_ATOMS:
            return True
    return False


def parse_units(units: str) -> str:
    """Validate a unit string, returning it unchanged.

    Raises ``UnitsError`` if the string is empty or contains an unknown atom.
    """
    if not units or not units.strip():
        raise UnitsError("unit string is empty")
    text = units.strip()
    for factor in re.split(r"[./]", text):
        match = _FACTOR_RE.match(factor)
        if not match:
            raise UnitsError(f"malformed unit factor {factor!r} in {units!r}")
        atom = match.group(1)
        if atom != "1" and not _atom_ok(atom):
            raise UnitsError(f"unknown unit atom {atom!r} in {units!r}")
    return text


def units_valid(units: str) -> bool:
    try:
        parse_units(units)
    except UnitsError:
        return False
    return True
