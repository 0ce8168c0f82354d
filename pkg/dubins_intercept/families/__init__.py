"""
Defines the ten residual families in tie-break order and the `get_family`
lookup used by the command-line interface
"""

import re

from .family_base import ResidualFamily
from .csc import CscFamily, CscIntermediates, Lsl, Lsr, Rsl, Rsr, csc_intermediates, residual_csc
from .ccc import CccFamily, CccIntermediates, LrlShort, LrlLong, RlrShort, RlrLong, ccc_intermediates, residual_ccc
from .cycled import Sc, Cc, ScFamily, CcFamily, residual_sc, residual_cc
from ..errors import UnknownFamilyError

FamilyId = ResidualFamily

FAMILIES: tuple[ResidualFamily, ...] = (Lsl, Lsr, Rsl, Rsr, LrlShort, LrlLong, RlrShort, RlrLong, Sc, Cc)

__all__ = [
    "FAMILIES",
    "FamilyId",
    "Lsl",
    "Lsr",
    "Rsl",
    "Rsr",
    "LrlShort",
    "LrlLong",
    "RlrShort",
    "RlrLong",
    "Sc",
    "Cc",
    "get_family",
    "family_order",
    "ResidualFamily",
    "CscFamily",
    "CccFamily",
    "ScFamily",
    "CcFamily",
    "CscIntermediates",
    "CccIntermediates",
    "csc_intermediates",
    "ccc_intermediates",
    "residual_csc",
    "residual_ccc",
    "residual_sc",
    "residual_cc",
]

_SIGNED = re.compile(r"^(CSC|CCC)\(\s*([+-]?1)\s*,\s*([+-]?1)\s*\)$")


def family_order(family: ResidualFamily) -> int:
    """Position of ``family`` in the tie-break order"""
    return FAMILIES.index(family)


def get_family(name: str) -> ResidualFamily:
    """Resolve a family from its label or path name.

    Accepts ``CSC(+1,-1)``-style labels, Dubins path names such as ``LSR``
    or ``RLR-long``, and ``SC``/``CC``. Matching is case-insensitive.

    Args:
      name: Label to resolve

    Returns:
      ResidualFamily: The matching family

    Raises:
      UnknownFamilyError: No family matches
    """
    key = name.strip().upper().replace(" ", "")
    m = _SIGNED.match(key)
    if m:
        kind, a, b = m.group(1), int(m.group(2)), int(m.group(3))
        for fam in FAMILIES:
            if fam.kind == kind and fam.signs == (a, b):
                return fam
    for fam in FAMILIES:
        if key in (fam.label.upper(), fam.path_name.upper()):
            return fam
    raise UnknownFamilyError(
        f"Unknown family {name}. Known families are:\n"
        + "\n".join(f"{fam.label} ({fam.path_name})" for fam in FAMILIES)
    )
