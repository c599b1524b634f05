"""Element encodings for the chains in :mod:`blchang.algebra.chains`.

Rational-valued chains use :class:`fractions.Fraction` directly. The other
carriers get small frozen dataclasses so that elements are hashable and
compare by value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

from ..errors import EncodingError

_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"3/5"``, ``"0"`` or ``"1"`` into an exact fraction."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise EncodingError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise EncodingError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(x: Any) -> Fraction:
    """Coerce an exact rational (int or Fraction) to Fraction; reject floats."""
    if isinstance(x, bool) or not isinstance(x, Rational):
        raise EncodingError(f"expected an exact rational, got {x!r}")
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, slots=True)
class ChangElement:
    """``a_n`` (side ``"a"``) or ``b_n`` (side ``"b"``) of Chang's algebra."""

    side: str
    index: int

    def __post_init__(self):
        if self.side not in ("a", "b"):
            raise EncodingError(f"Chang side must be 'a' or 'b', got {self.side!r}")
        if isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 0:
            raise EncodingError(f"Chang index must be a natural number, got {self.index!r}")

    def __repr__(self):
        return f"{self.side}{self.index}"


def a(n: int) -> ChangElement:
    return ChangElement("a", n)


def b(n: int) -> ChangElement:
    return ChangElement("b", n)


@dataclass(frozen=True, slots=True)
class RotationElement:
    """An element of a disconnected rotation.

    ``sign == "pos"`` is the original copy of the hoop, ``"neg"`` the primed
    copy placed below it with the order reversed.
    """

    sign: str
    value: Any

    def __post_init__(self):
        if self.sign not in ("pos", "neg"):
            raise EncodingError(f"rotation sign must be 'pos' or 'neg', got {self.sign!r}")

    def __repr__(self):
        v = render_rational(self.value) if isinstance(self.value, Rational) else repr(self.value)
        return f"{self.sign} {v}"


def pos(q) -> RotationElement:
    return RotationElement("pos", as_fraction(q) if isinstance(q, (int, Fraction)) else q)


def neg(q) -> RotationElement:
    return RotationElement("neg", as_fraction(q) if isinstance(q, (int, Fraction)) else q)


@dataclass(frozen=True, slots=True)
class SumElement:
    """A non-top element of an ordinal sum: ``payload`` lives in ``component``.

    The payload is never the local top of its component; that value is
    always folded into :data:`SUM_TOP`.
    """

    component: int
    payload: Any

    def __repr__(self):
        return f"c{self.component}:{self.payload!r}"


class _SumTop:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (_SumTop, ())


SUM_TOP = _SumTop()
"""The shared top element of every ordinal sum."""
