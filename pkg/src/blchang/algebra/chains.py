"""Concrete BL-chains and totally ordered hoops with exact operations.

Every chain implements three primitives over its own element encoding
(``_cmp``, ``_mul``, ``_imp``); the rest of the algebra (lattice operations,
negation, the strong disjunctions, powers, order of an element) is derived
in :class:`Chain` from those primitives. Public methods validate their
arguments, the underscore versions assume canonical input.
"""

from __future__ import annotations

import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Iterable, Sequence

from ..errors import ArgumentError, ConstructionError, EncodingError, StrategyError, UnsupportedOperation
from .elements import (
    SUM_TOP,
    ChangElement,
    RotationElement,
    SumElement,
    as_fraction,
    parse_rational,
    render_rational,
)

ONE = Fraction(1)
ZERO = Fraction(0)

DEFAULT_ORD_CUTOFF = 1000


@dataclass(frozen=True)
class Order:
    """Result of :meth:`Chain.ord`.

    ``n`` is the least power that reaches the bottom, or ``None``. When ``n``
    is ``None`` and ``cutoff`` is ``None`` the order is known to be infinite;
    with a cutoff it only means no power up to ``cutoff`` vanished.
    """

    n: int | None
    cutoff: int | None = None

    @property
    def finite(self) -> bool:
        return self.n is not None

    @property
    def exact(self) -> bool:
        return self.n is not None or self.cutoff is None

    def __str__(self):
        if self.n is not None:
            return f"Finite({self.n})"
        if self.cutoff is None:
            return "Infinite"
        return f"InfiniteUpTo({self.cutoff})"


class Chain(ABC):
    """A totally ordered BL-algebra, or a totally ordered hoop when unbounded."""

    bounded: bool = True
    finite: bool = False
    cancellative: bool = False
    mv: bool = False
    descriptor: str = "?"

    top: Any

    # -- primitives -------------------------------------------------------

    @abstractmethod
    def validate(self, x):
        """Return ``x`` if it is a canonical element, else raise EncodingError."""

    @abstractmethod
    def _cmp(self, x, y) -> int: ...

    @abstractmethod
    def _mul(self, x, y): ...

    @abstractmethod
    def _imp(self, x, y): ...

    @abstractmethod
    def parse_element(self, text: str):
        """Read an element written in the descriptor's element syntax."""

    @abstractmethod
    def render(self, x) -> str:
        """Write an element in the syntax accepted by :meth:`parse_element`."""

    @abstractmethod
    def points(self, denom: int | None = None, index: int | None = None) -> list:
        """Ascending grid of elements.

        Rational-valued parts use the grid ``i/denom``; Chang parts use all
        indices up to ``index``. A part whose bound is ``None`` contributes
        nothing. Finite chains ignore both bounds and return every element.
        """

    @abstractmethod
    def sample(self, rng, bound: int):
        """Draw a random element; ``bound`` caps denominators and Chang indices."""

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor}>"

    def __eq__(self, other):
        return isinstance(other, Chain) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(("Chain", self.descriptor))

    # -- carrier helpers --------------------------------------------------

    @property
    def bottom(self):
        if not self.bounded:
            raise UnsupportedOperation(f"{self.descriptor} is unbounded and has no bottom")
        return self._bottom

    def elements(self) -> list:
        if not self.finite:
            raise StrategyError(f"{self.descriptor} is infinite; it has no exhaustive carrier")
        return self.points()

    def sort_key(self):
        return cmp_to_key(self._cmp)

    def sorted(self, xs: Iterable) -> list:
        return sorted(xs, key=self.sort_key())

    def _require_bounded(self, what: str):
        if not self.bounded:
            raise UnsupportedOperation(f"{what} needs a bounded chain; {self.descriptor} is an unbounded hoop")

    # -- public primitive operations ----------------------------------------

    def cmp(self, x, y) -> int:
        """-1, 0 or 1 as ``x`` is below, equal to or above ``y``."""
        return self._cmp(self.validate(x), self.validate(y))

    def leq(self, x, y) -> bool:
        return self.cmp(x, y) <= 0

    def lt(self, x, y) -> bool:
        return self.cmp(x, y) < 0

    def mul(self, x, y):
        return self._mul(self.validate(x), self.validate(y))

    def imp(self, x, y):
        return self._imp(self.validate(x), self.validate(y))

    def meet(self, x, y):
        return self._meet(self.validate(x), self.validate(y))

    def join(self, x, y):
        return self._join(self.validate(x), self.validate(y))

    def neg(self, x):
        self._require_bounded("negation")
        return self._neg(self.validate(x))

    def oplus(self, x, y):
        self._require_bounded("oplus")
        return self._oplus(self.validate(x), self.validate(y))

    def uplus(self, x, y):
        return self._uplus(self.validate(x), self.validate(y))

    def power(self, x, n: int):
        _check_fold(n)
        x = self.validate(x)
        return self._fold(self._mul, x, n)

    def nfold_oplus(self, x, n: int):
        _check_fold(n)
        self._require_bounded("nfold_oplus")
        x = self.validate(x)
        return self._fold(self._oplus, x, n)

    def nfold_uplus(self, x, n: int):
        _check_fold(n)
        x = self.validate(x)
        return self._fold(self._uplus, x, n)

    # -- derived operations (canonical input) -------------------------------

    def _meet(self, x, y):
        return x if self._cmp(x, y) <= 0 else y

    def _join(self, x, y):
        return y if self._cmp(x, y) <= 0 else x

    def _neg(self, x):
        return self._imp(x, self._bottom)

    def _oplus(self, x, y):
        return self._neg(self._mul(self._neg(x), self._neg(y)))

    def _uplus(self, x, y):
        xy = self._mul(x, y)
        left = self._imp(self._imp(x, xy), y)
        right = self._imp(self._imp(y, xy), x)
        return self._meet(left, right)

    @staticmethod
    def _fold(op, x, n):
        acc = x
        for _ in range(n - 1):
            acc = op(acc, x)
        return acc

    # -- order of an element, perfectness, positive part --------------------

    def ord(self, x, cutoff: int = DEFAULT_ORD_CUTOFF) -> Order:
        """Least ``n`` with ``x**n`` equal to the bottom.

        The generic rule iterates powers up to ``cutoff``; a power sequence
        that becomes stationary above the bottom proves the order infinite.
        Chains whose order is decidable in closed form override this.
        """
        self._require_bounded("ord")
        if cutoff < 1:
            raise ArgumentError("cutoff must be at least 1")
        return self._ord(self.validate(x), cutoff)

    def _ord(self, x, cutoff: int) -> Order:
        bot = self._bottom
        p = x
        for n in range(1, cutoff + 1):
            if self._cmp(p, bot) == 0:
                return Order(n)
            nxt = self._mul(p, x)
            if self._cmp(nxt, p) == 0:
                return Order(None)
            p = nxt
        return Order(None, cutoff)

    def perfect_condition(self, x, cutoff: int = DEFAULT_ORD_CUTOFF) -> bool:
        """True iff exactly one of ``ord(x)`` and ``ord(~x)`` is finite."""
        self._require_bounded("perfect_condition")
        x = self.validate(x)
        return self._ord(x, cutoff).finite != self._ord(self._neg(x), cutoff).finite

    def positive_part(self, x) -> bool:
        """Membership in ``{x : x > (x => 0)}``."""
        self._require_bounded("positive_part")
        x = self.validate(x)
        return self._cmp(x, self._neg(x)) > 0


def _check_fold(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ArgumentError(f"fold count must be a positive integer, got {n!r}")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------------------
# rational-valued chains


class _RationalChain(Chain):
    """Chains whose carrier is a set of rationals in [0, 1]."""

    def _cmp(self, x, y):
        return _sign(x - y)

    def _meet(self, x, y):
        return x if x <= y else y

    def _join(self, x, y):
        return y if x <= y else x

    def _member(self, q: Fraction) -> bool:
        return ZERO <= q <= ONE

    def validate(self, x):
        q = as_fraction(x)
        if not self._member(q):
            raise EncodingError(f"{render_rational(q)} is not an element of {self.descriptor}")
        return q

    def parse_element(self, text):
        return self.validate(parse_rational(text))

    def render(self, x):
        return render_rational(x)

    def points(self, denom=None, index=None):
        if denom is None:
            return []
        if denom < 1:
            raise ArgumentError("grid denominator must be positive")
        return [q for q in (Fraction(i, denom) for i in range(denom + 1)) if self._member(q)]

    def sample(self, rng, bound):
        while True:
            den = rng.randint(1, bound)
            q = Fraction(rng.randint(0, den), den)
            if self._member(q):
                return q


class _FiniteRationalChain(_RationalChain):
    finite = True

    def __init__(self, k: int):
        if isinstance(k, bool) or not isinstance(k, int) or k < 2:
            raise ConstructionError(f"a finite chain needs at least 2 elements, got {k!r}")
        self.k = k
        self._carrier = [Fraction(i, k - 1) for i in range(k)]
        self._bottom = ZERO
        self.top = ONE

    def _member(self, q):
        return ZERO <= q <= ONE and (q * (self.k - 1)).denominator == 1

    def points(self, denom=None, index=None):
        return list(self._carrier)

    def sample(self, rng, bound):
        return rng.choice(self._carrier)


class _LukasiewiczOps:
    def _mul(self, x, y):
        s = x + y - ONE
        return s if s > ZERO else ZERO

    def _imp(self, x, y):
        if x <= y:
            return ONE
        return ONE - x + y

    def _neg(self, x):
        return ONE - x

    def _oplus(self, x, y):
        s = x + y
        return s if s < ONE else ONE


class _GodelOps:
    def _mul(self, x, y):
        return x if x <= y else y

    def _imp(self, x, y):
        return ONE if x <= y else y


class FiniteMV(_LukasiewiczOps, _FiniteRationalChain):
    """The Łukasiewicz chain ``{0, 1/(k-1), ..., 1}``."""

    mv = True

    def __init__(self, k: int):
        super().__init__(k)
        self.descriptor = f"MV({k})"


class FiniteGodel(_GodelOps, _FiniteRationalChain):
    """The ``k``-element Gödel chain on ``{0, 1/(k-1), ..., 1}``."""

    def __init__(self, k: int):
        super().__init__(k)
        self.descriptor = f"G({k})"
        self.mv = k == 2


class StandardMV(_LukasiewiczOps, _RationalChain):
    """``[0,1]_Ł`` restricted to rationals."""

    mv = True
    descriptor = "LukStd"

    def __init__(self):
        self._bottom = ZERO
        self.top = ONE

    def _ord(self, x, cutoff):
        # x**n = max(0, n*x - (n-1)), which vanishes once n >= 1/(1-x)
        if x == ONE:
            return Order(None)
        n = math.ceil(ONE / (ONE - x))
        return Order(n) if n <= cutoff else Order(None, cutoff)


class StandardGodel(_GodelOps, _RationalChain):
    """``[0,1]_G`` restricted to rationals."""

    descriptor = "GodStd"

    def __init__(self):
        self._bottom = ZERO
        self.top = ONE


class StandardCancellativeHoop(_RationalChain):
    """``(0,1]_C``: rationals in (0, 1] under ordinary multiplication."""

    bounded = False
    cancellative = True
    descriptor = "Canc"

    def __init__(self):
        self.top = ONE

    def _member(self, q):
        return ZERO < q <= ONE

    def _mul(self, x, y):
        return x * y

    def _imp(self, x, y):
        if x <= y:
            return ONE
        return y / x


# ---------------------------------------------------------------------------
# Chang's algebra


class Chang(Chain):
    """Chang's MV-algebra on ``{a_n} ∪ {b_n}``.

    ``b_n`` are the infinitesimals (``b_0`` is the bottom) and ``a_n`` the
    co-infinitesimals (``a_0`` is the top).
    """

    mv = True
    descriptor = "C"

    def __init__(self):
        self.top = ChangElement("a", 0)
        self._bottom = ChangElement("b", 0)

    def validate(self, x):
        if not isinstance(x, ChangElement):
            raise EncodingError(f"{x!r} is not an element of Chang's algebra")
        return x

    def _cmp(self, x, y):
        if x.side != y.side:
            return -1 if x.side == "b" else 1
        if x.side == "b":
            return _sign(x.index - y.index)
        return _sign(y.index - x.index)

    def _mul(self, x, y):
        if x.side == "a" and y.side == "a":
            return ChangElement("a", x.index + y.index)
        if x.side == "b" and y.side == "b":
            return self._bottom
        n, m = (x.index, y.index) if x.side == "b" else (y.index, x.index)
        return ChangElement("b", max(0, n - m))

    def _imp(self, x, y):
        if x.side == "a" and y.side == "a":
            return ChangElement("a", max(0, y.index - x.index))
        if x.side == "b" and y.side == "b":
            return ChangElement("a", max(0, x.index - y.index))
        if x.side == "a":
            return ChangElement("b", x.index + y.index)
        return self.top

    def _neg(self, x):
        return ChangElement("b" if x.side == "a" else "a", x.index)

    def _ord(self, x, cutoff):
        if x.side == "a":
            return Order(None)
        return Order(1 if x.index == 0 else 2)

    def parse_element(self, text):
        m = re.fullmatch(r"\s*([ab])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise EncodingError(f"not a Chang element: {text!r} (use a3 or b3)")
        return ChangElement(m.group(1), int(m.group(2)))

    def render(self, x):
        return f"{x.side}{x.index}"

    def points(self, denom=None, index=None):
        if index is None:
            return []
        return [ChangElement("b", i) for i in range(index + 1)] + [
            ChangElement("a", i) for i in range(index, -1, -1)
        ]

    def sample(self, rng, bound):
        return ChangElement(rng.choice("ab"), rng.randint(0, bound))


# ---------------------------------------------------------------------------
# disconnected rotation


class Rotation(Chain):
    """Disconnected rotation of a cancellative hoop.

    The positive copy keeps the hoop's order, the negative copy sits entirely
    below it with the order reversed; top is ``pos(1)``, bottom ``neg(1)``.
    """

    mv = True

    def __init__(self, inner: Chain):
        if not getattr(inner, "cancellative", False):
            raise ConstructionError(f"rotation needs a cancellative hoop, got {inner.descriptor}")
        self.inner = inner
        self.descriptor = "V" if isinstance(inner, StandardCancellativeHoop) else f"Rot({inner.descriptor})"
        self.top = RotationElement("pos", inner.top)
        self._bottom = RotationElement("neg", inner.top)

    def validate(self, x):
        if not isinstance(x, RotationElement):
            raise EncodingError(f"{x!r} is not an element of {self.descriptor}")
        try:
            v = self.inner.validate(x.value)
        except EncodingError as exc:
            raise EncodingError(f"{x!r} is not an element of {self.descriptor}: {exc}") from None
        if v is not x.value:
            return RotationElement(x.sign, v)
        return x

    def _cmp(self, x, y):
        if x.sign != y.sign:
            return -1 if x.sign == "neg" else 1
        if x.sign == "pos":
            return self.inner._cmp(x.value, y.value)
        return self.inner._cmp(y.value, x.value)

    def _mul(self, x, y):
        h = self.inner
        if x.sign == "pos" and y.sign == "pos":
            return RotationElement("pos", h._mul(x.value, y.value))
        if x.sign == "neg" and y.sign == "neg":
            return self._bottom
        p, n = (x, y) if x.sign == "pos" else (y, x)
        return RotationElement("neg", h._imp(p.value, n.value))

    def _imp(self, x, y):
        h = self.inner
        if x.sign == "pos" and y.sign == "pos":
            return RotationElement("pos", h._imp(x.value, y.value))
        if x.sign == "pos":
            return RotationElement("neg", h._mul(x.value, y.value))
        if y.sign == "pos":
            return self.top
        return RotationElement("pos", h._imp(y.value, x.value))

    def _neg(self, x):
        return RotationElement("neg" if x.sign == "pos" else "pos", x.value)

    def _ord(self, x, cutoff):
        if x.sign == "pos":
            return Order(None)
        return Order(1 if x == self._bottom else 2)

    def parse_element(self, text):
        m = re.fullmatch(r"\s*(pos|neg)\s*(?:\(\s*(.*?)\s*\)|(.*?))\s*", text)
        if not m:
            raise EncodingError(f"not a rotation element: {text!r} (use 'pos 1/8' or 'neg 1/8')")
        payload = m.group(2) if m.group(2) is not None else m.group(3)
        return self.validate(RotationElement(m.group(1), self.inner.parse_element(payload)))

    def render(self, x):
        return f"{x.sign} {self.inner.render(x.value)}"

    def points(self, denom=None, index=None):
        inner = self.inner.points(denom, index)
        return [RotationElement("neg", v) for v in reversed(inner)] + [RotationElement("pos", v) for v in inner]

    def sample(self, rng, bound):
        return RotationElement(rng.choice(("pos", "neg")), self.inner.sample(rng, bound))


# ---------------------------------------------------------------------------
# ordinal sums


class OrdinalSum(Chain):
    """Ordinal sum of hoops glued at their common top.

    Elements are :data:`SUM_TOP` or ``SumElement(i, payload)`` with the
    payload a non-top element of component ``i``. The first component must be
    bounded; its bottom is the bottom of the sum.
    """

    def __init__(self, components: Sequence[Chain], descriptor: str | None = None):
        parts = list(components)
        if not parts:
            raise ConstructionError("an ordinal sum needs at least one component")
        flat: list[Chain] = []
        for part in parts:
            if isinstance(part, OmegaSum):
                raise ConstructionError("omega-sums can only appear as a whole chain")
            if isinstance(part, OrdinalSum):
                flat.extend(part.components)
            else:
                flat.append(part)
        if not flat[0].bounded:
            raise ConstructionError(f"the first summand must be bounded; {flat[0].descriptor} is not")
        self.components = tuple(flat)
        self.descriptor = descriptor or " ++ ".join(p.descriptor for p in parts)
        self.finite = all(c.finite for c in flat)
        self.mv = len(flat) == 1 and flat[0].mv
        self.top = SUM_TOP
        self._bottom = SumElement(0, flat[0].bottom)

    def component(self, i: int) -> Chain:
        return self.components[i]

    @property
    def component_range(self) -> range:
        return range(len(self.components))

    def _has_component(self, i) -> bool:
        return 0 <= i < len(self.components)

    def lift(self, i: int, payload):
        """Place a component element into the sum, folding local tops."""
        comp = self.component(i)
        if comp._cmp(payload, comp.top) == 0:
            return SUM_TOP
        return SumElement(i, payload)

    def validate(self, x):
        if x is SUM_TOP:
            return x
        if not isinstance(x, SumElement) or isinstance(x.component, bool) or not isinstance(x.component, int):
            raise EncodingError(f"{x!r} is not an element of {self.descriptor}")
        if not self._has_component(x.component):
            raise EncodingError(f"{self.descriptor} has no component {x.component}")
        comp = self.component(x.component)
        payload = comp.validate(x.payload)
        if comp._cmp(payload, comp.top) == 0:
            raise EncodingError(f"{x!r} is a local top; use the sum's top instead")
        if payload is not x.payload:
            return SumElement(x.component, payload)
        return x

    def _cmp(self, x, y):
        if x is SUM_TOP:
            return 0 if y is SUM_TOP else 1
        if y is SUM_TOP:
            return -1
        if x.component != y.component:
            return -1 if x.component < y.component else 1
        return self.component(x.component)._cmp(x.payload, y.payload)

    def _mul(self, x, y):
        if x is SUM_TOP:
            return y
        if y is SUM_TOP:
            return x
        i, j = x.component, y.component
        if i == j:
            return self.lift(i, self.component(i)._mul(x.payload, y.payload))
        return x if i < j else y

    def _imp(self, x, y):
        if x is SUM_TOP:
            return y
        if y is SUM_TOP:
            return SUM_TOP
        i, j = x.component, y.component
        if i == j:
            return self.lift(i, self.component(i)._imp(x.payload, y.payload))
        return y if i > j else SUM_TOP

    def _ord(self, x, cutoff):
        # powers of an element never leave its component
        if x is SUM_TOP or x.component != 0:
            return Order(None)
        return self.component(0)._ord(x.payload, cutoff)

    def parse_element(self, text):
        t = text.strip()
        if t == "1":
            return SUM_TOP
        m = re.fullmatch(r"c\s*(\d+)\s*:(.*)", t, flags=re.S)
        if not m:
            raise EncodingError(f"not an ordinal-sum element: {text!r} (use c2:3/5 or 1)")
        i = int(m.group(1))
        if not self._has_component(i):
            raise EncodingError(f"{self.descriptor} has no component {i}")
        return self.validate(SumElement(i, self.component(i).parse_element(m.group(2))))

    def render(self, x):
        if x is SUM_TOP:
            return "1"
        return f"c{x.component}:{self.component(x.component).render(x.payload)}"

    def points(self, denom=None, index=None):
        out = []
        for i in self.component_range:
            comp = self.component(i)
            for p in comp.points(denom, index):
                if comp._cmp(p, comp.top) != 0:
                    out.append(SumElement(i, p))
        if out:
            out.append(SUM_TOP)
        return out

    def sample(self, rng, bound):
        if rng.random() < 0.02:
            return SUM_TOP
        i = rng.choice(self.component_range)
        comp = self.component(i)
        while True:
            p = comp.sample(rng, bound)
            if comp._cmp(p, comp.top) != 0:
                return SumElement(i, p)

    def same_component(self, x, y) -> bool:
        """True iff neither is top and both lie in the same summand."""
        return x is not SUM_TOP and y is not SUM_TOP and x.component == y.component


class StandardProduct(OrdinalSum):
    """``[0,1]_Π`` realized as ``2 ⊕ (0,1]_C``.

    Elements are read and written as plain rationals: ``0`` is the bottom,
    ``1`` the top and any ``q`` in between the cancellative-component value.
    """

    def __init__(self):
        super().__init__([FiniteMV(2), StandardCancellativeHoop()], descriptor="ProdStd")

    def parse_element(self, text):
        if ":" in text:
            return super().parse_element(text)
        q = parse_rational(text)
        return self.from_rational(q)

    def from_rational(self, q) -> Any:
        q = as_fraction(q)
        if q == ZERO:
            return self._bottom
        if q == ONE:
            return SUM_TOP
        if not ZERO < q < ONE:
            raise EncodingError(f"{render_rational(q)} is not in [0,1]")
        return SumElement(1, q)

    def render(self, x):
        if x is SUM_TOP:
            return "1"
        if x.component == 0:
            return "0"
        return render_rational(x.payload)


class OmegaSum(OrdinalSum):
    """Ordinal sum of ω copies of one bounded chain, built lazily.

    Any natural number is a valid component index. Grids and random samples
    only visit the first ``sample_components`` copies.
    """

    def __init__(self, component: Chain, sample_components: int = 5):
        if isinstance(component, (OrdinalSum,)):
            raise ConstructionError("omega-sum of an ordinal sum is not supported")
        if not component.bounded:
            raise ConstructionError(f"the first summand must be bounded; {component.descriptor} is not")
        if sample_components < 1:
            raise ConstructionError("sample_components must be positive")
        self.base = component
        self.components = (component,)
        self.sample_components = sample_components
        self.descriptor = f"omega*{component.descriptor}"
        self.finite = False
        self.mv = False
        self.top = SUM_TOP
        self._bottom = SumElement(0, component.bottom)

    def component(self, i):
        return self.base

    @property
    def component_range(self):
        return range(self.sample_components)

    def _has_component(self, i):
        return i >= 0
