"""Text descriptors for chains.

Grammar (whitespace is ignored)::

    chain  := 'omega*' atom | atom ('++' atom)*
    atom   := 'C' | 'LukStd' | 'GodStd' | 'ProdStd' | 'Canc' | 'V'
            | 'MV(' k ')' | 'G(' k ')' | 'Rot(' atom ')'

Sums list the lowest component first.
"""

from __future__ import annotations

import re
from functools import lru_cache

from ..errors import DescriptorSyntaxError
from .chains import (
    Chain,
    Chang,
    FiniteGodel,
    FiniteMV,
    OmegaSum,
    OrdinalSum,
    Rotation,
    StandardCancellativeHoop,
    StandardGodel,
    StandardMV,
    StandardProduct,
)

CATALOGUE = {
    "C": "Chang's MV-algebra; elements a<n> (co-infinitesimals, a0 = 1) and b<n> (infinitesimals, b0 = 0)",
    "LukStd": "standard MV-algebra [0,1]_Ł on rationals; elements p/q",
    "GodStd": "standard Gödel algebra [0,1]_G on rationals; elements p/q",
    "ProdStd": "standard product algebra [0,1]_Π, built as MV(2) ++ Canc; elements p/q",
    "Canc": "standard cancellative hoop (0,1]_C (unbounded, no 0); elements p/q with p > 0",
    "V": "disconnected rotation of Canc; elements 'pos p/q' and 'neg p/q'",
    "MV(k)": "k-element Łukasiewicz chain {0, 1/(k-1), ..., 1}",
    "G(k)": "k-element Gödel chain {0, 1/(k-1), ..., 1}",
    "Rot(Canc)": "same chain as V",
    "A ++ B ++ ...": "ordinal sum, first summand lowest; elements c<i>:<payload> and 1 for the top",
    "omega*V": "ordinal sum of ω copies of V; elements c<i>:<payload> for any i >= 0",
}

_SIMPLE = {
    "C": Chang,
    "LukStd": StandardMV,
    "GodStd": StandardGodel,
    "ProdStd": StandardProduct,
    "Canc": StandardCancellativeHoop,
}

_INDEXED = re.compile(r"(MV|G)\((\d+)\)")


def _parse_atom(text: str, whole: str) -> Chain:
    if text in _SIMPLE:
        return _SIMPLE[text]()
    if text == "V":
        return Rotation(StandardCancellativeHoop())
    m = _INDEXED.fullmatch(text)
    if m:
        k = int(m.group(2))
        return FiniteMV(k) if m.group(1) == "MV" else FiniteGodel(k)
    if text.startswith("Rot(") and text.endswith(")"):
        return Rotation(_parse_atom(text[4:-1], whole))
    raise DescriptorSyntaxError(f"unknown algebra {text!r} in descriptor {whole!r}")


@lru_cache(maxsize=256)
def _parse(compact: str, whole: str) -> Chain:
    if not compact:
        raise DescriptorSyntaxError("empty algebra descriptor")
    if compact.startswith("omega*"):
        return OmegaSum(_parse_atom(compact[len("omega*"):], whole))
    parts = compact.split("++")
    if any(not p for p in parts):
        raise DescriptorSyntaxError(f"empty summand in descriptor {whole!r}")
    if len(parts) == 1:
        return _parse_atom(parts[0], whole)
    return OrdinalSum([_parse_atom(p, whole) for p in parts])


def make_chain(descriptor: str | Chain) -> Chain:
    """Build the chain named by a descriptor string (chains pass through)."""
    if isinstance(descriptor, Chain):
        return descriptor
    compact = re.sub(r"\s+", "", descriptor)
    return _parse(compact, descriptor)
