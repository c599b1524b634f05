"""Propositional BL formulas: AST, parser, printers, evaluation and schemas.

The primitive basis is ``{Var, Bottom, Conj, Impl}``. Every other connective
is its own node so that formulas print the way they were written;
:meth:`Formula.expand` rewrites any formula into the primitive basis.

Concrete syntax (loosest binding first)::

    f <-> g        biconditional, left associative
    f -> g         implication, right associative
    f \\/ g         join (weak disjunction)
    f /\\ g         meet (weak conjunction)
    f & g          strong conjunction
    !f             negation
    0  1  p  q1    constants and variables
    oplus(f,g)  uplus(f,g)  pow(f,n)  nsum(n,f)  nuplus(n,f)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .algebra.chains import Chain
from .errors import EvaluationError, ParseError, UnsupportedOperation
from .valuation import Fails, Holds, ValuationSource

__all__ = [
    "Formula", "Var", "Bottom", "Top", "Conj", "Impl", "Neg", "Meet", "Join",
    "StrongDisj", "VeeBar", "Iff", "Power", "NSum", "NUplus",
    "parse", "render", "pretty", "evaluate", "is_tautology",
    "Schema", "schemas", "schema", "PHI", "PSI", "CHI",
]


class Formula:
    """Base class of all formula nodes (frozen dataclasses)."""

    prec = 7

    def children(self) -> tuple["Formula", ...]:
        return ()

    def rebuild(self, children) -> "Formula":
        return self

    def variables(self) -> list[str]:
        """Variable names in order of first occurrence."""
        seen: dict[str, None] = {}
        for node in self.walk():
            if isinstance(node, Var):
                seen.setdefault(node.name, None)
        return list(seen)

    def walk(self) -> Iterator["Formula"]:
        yield self
        for ch in self.children():
            yield from ch.walk()

    def substitute(self, mapping: Mapping[str, "Formula"]) -> "Formula":
        return self.rebuild([ch.substitute(mapping) for ch in self.children()])

    def expand(self) -> "Formula":
        """Equivalent formula over ``Var``, ``Bottom``, ``Conj`` and ``Impl`` only."""
        return self.rebuild([ch.expand() for ch in self.children()])._expand_self()

    def _expand_self(self) -> "Formula":
        return self

    def __str__(self):
        return render(self)

    # operator sugar for building formulas in Python
    def __and__(self, other):
        return Conj(self, other)

    def __rshift__(self, other):
        return Impl(self, other)

    def __invert__(self):
        return Neg(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def substitute(self, mapping):
        return mapping.get(self.name, self)

    def _eval(self, c, env):
        try:
            return env[self.name]
        except KeyError:
            raise EvaluationError(f"variable {self.name!r} has no value") from None


@dataclass(frozen=True)
class Bottom(Formula):
    def _eval(self, c, env):
        return c._bottom


@dataclass(frozen=True)
class Top(Formula):
    def _expand_self(self):
        return Impl(Bottom(), Bottom())

    def _eval(self, c, env):
        return c.top


@dataclass(frozen=True)
class _Unary(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return type(self)(children[0])


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return type(self)(children[0], children[1])


@dataclass(frozen=True)
class Neg(_Unary):
    prec = 6

    def _expand_self(self):
        return Impl(self.arg, Bottom())

    def _eval(self, c, env):
        return c._neg(self.arg._eval(c, env))


@dataclass(frozen=True)
class Conj(_Binary):
    prec = 5

    def _eval(self, c, env):
        return c._mul(self.left._eval(c, env), self.right._eval(c, env))


@dataclass(frozen=True)
class Meet(_Binary):
    prec = 4

    def _expand_self(self):
        return Conj(self.left, Impl(self.left, self.right))

    def _eval(self, c, env):
        return c._meet(self.left._eval(c, env), self.right._eval(c, env))


@dataclass(frozen=True)
class Join(_Binary):
    prec = 3

    def _expand_self(self):
        f, g = self.left, self.right
        return Meet(Impl(Impl(f, g), g), Impl(Impl(g, f), f))._expand_self()

    def _eval(self, c, env):
        return c._join(self.left._eval(c, env), self.right._eval(c, env))


@dataclass(frozen=True)
class Impl(_Binary):
    prec = 2

    def _eval(self, c, env):
        return c._imp(self.left._eval(c, env), self.right._eval(c, env))


@dataclass(frozen=True)
class Iff(_Binary):
    prec = 1

    def _expand_self(self):
        f, g = self.left, self.right
        return Meet(Impl(f, g), Impl(g, f))._expand_self()

    def _eval(self, c, env):
        x = self.left._eval(c, env)
        y = self.right._eval(c, env)
        return c._meet(c._imp(x, y), c._imp(y, x))


@dataclass(frozen=True)
class StrongDisj(_Binary):
    """``¬(¬f & ¬g)``, the Łukasiewicz strong disjunction."""

    def _expand_self(self):
        return Impl(Conj(Impl(self.left, Bottom()), Impl(self.right, Bottom())), Bottom())

    def _eval(self, c, env):
        return c._oplus(self.left._eval(c, env), self.right._eval(c, env))


def _veebar(f, g):
    fg = Conj(f, g)
    return Meet(Impl(Impl(f, fg), g), Impl(Impl(g, fg), f))._expand_self()


@dataclass(frozen=True)
class VeeBar(_Binary):
    """``((f -> f&g) -> g) /\\ ((g -> f&g) -> f)``; evaluates to ``uplus``."""

    def _expand_self(self):
        return _veebar(self.left, self.right)

    def _eval(self, c, env):
        return c._uplus(self.left._eval(c, env), self.right._eval(c, env))


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"repetition count must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class Power(Formula):
    arg: Formula
    n: int

    def __post_init__(self):
        _check_n(self.n)

    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return Power(children[0], self.n)

    def _expand_self(self):
        acc = self.arg
        for _ in range(self.n - 1):
            acc = Conj(acc, self.arg)
        return acc

    def _eval(self, c, env):
        return c._fold(c._mul, self.arg._eval(c, env), self.n)


@dataclass(frozen=True)
class NSum(Formula):
    """``n``-fold strong disjunction of ``arg`` with itself."""

    n: int
    arg: Formula

    def __post_init__(self):
        _check_n(self.n)

    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return NSum(self.n, children[0])

    def _expand_self(self):
        acc = self.arg
        for _ in range(self.n - 1):
            acc = StrongDisj(acc, self.arg)._expand_self()
        return acc

    def _eval(self, c, env):
        return c._fold(c._oplus, self.arg._eval(c, env), self.n)


@dataclass(frozen=True)
class NUplus(Formula):
    """``n``-fold ``⊻`` of ``arg`` with itself."""

    n: int
    arg: Formula

    def __post_init__(self):
        _check_n(self.n)

    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return NUplus(self.n, children[0])

    def _expand_self(self):
        acc = self.arg
        for _ in range(self.n - 1):
            acc = _veebar(acc, self.arg)
        return acc

    def _eval(self, c, env):
        return c._fold(c._uplus, self.arg._eval(c, env), self.n)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(<->)|(->)|(/\\)|(\\/)|([&!(),])|([a-z][a-zA-Z0-9_]*)|(\d+))")
_FUNCTIONS = {"oplus", "uplus", "pow", "nsum", "nuplus"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", text, i,
                             {"variable", "0", "1", "!", "("})
        start = m.start(m.lastindex)
        groups = m.groups()
        if groups[5] is not None:
            kind = "name"
        elif groups[6] is not None:
            kind = "number"
        else:
            kind = m.group(m.lastindex)
        toks.append(_Tok(kind, m.group(m.lastindex), start))
        i = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", self.text, t.pos, expected)

    def take(self, kind):
        if self.tok.kind != kind:
            self.fail({kind})
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok.kind != "end":
            self.fail({"<->", "->", "\\/", "/\\", "&", "end of input"})
        return f

    def iff(self):
        f = self.imp()
        while self.accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.join()
        if self.accept("->"):
            return Impl(f, self.imp())
        return f

    def join(self):
        f = self.meet()
        while self.accept("\\/"):
            f = Join(f, self.meet())
        return f

    def meet(self):
        f = self.conj()
        while self.accept("/\\"):
            f = Meet(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.accept("&"):
            f = Conj(f, self.unary())
        return f

    def unary(self):
        if self.accept("!"):
            return Neg(self.unary())
        return self.atom()

    def count(self) -> int:
        t = self.take("number")
        n = int(t.text)
        if n < 1:
            raise ParseError("repetition count must be at least 1", self.text, t.pos, {"positive integer"})
        return n

    def atom(self):
        t = self.tok
        if t.kind == "(":
            self.i += 1
            f = self.iff()
            self.take(")")
            return f
        if t.kind == "number":
            self.i += 1
            if t.text == "0":
                return Bottom()
            if t.text == "1":
                return Top()
            raise ParseError(f"only 0 and 1 are constants, got {t.text}", self.text, t.pos, {"0", "1"})
        if t.kind == "name":
            self.i += 1
            if t.text in _FUNCTIONS and self.tok.kind == "(":
                return self.call(t.text)
            return Var(t.text)
        self.fail({"variable", "0", "1", "!", "(", *(f + "(" for f in _FUNCTIONS)})

    def call(self, name):
        self.take("(")
        if name in ("oplus", "uplus"):
            f = self.iff()
            self.take(",")
            g = self.iff()
            node = StrongDisj(f, g) if name == "oplus" else VeeBar(f, g)
        elif name == "pow":
            f = self.iff()
            self.take(",")
            node = Power(f, self.count())
        else:
            n = self.count()
            self.take(",")
            f = self.iff()
            node = NSum(n, f) if name == "nsum" else NUplus(n, f)
        self.take(")")
        return node


def parse(text: str) -> Formula:
    """Parse formula text; raises :class:`ParseError` with position info."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_BIN_SYM = {Conj: "&", Meet: "/\\", Join: "\\/", Impl: "->", Iff: "<->"}


def render(f: Formula) -> str:
    """Concrete syntax with minimal parentheses; ``parse(render(f)) == f``."""
    return _render(f, 0)


def _render(f: Formula, need: int) -> str:
    s = _render_node(f)
    return f"({s})" if f.prec < need else s


def _render_node(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bottom):
        return "0"
    if isinstance(f, Top):
        return "1"
    if isinstance(f, Neg):
        return "!" + _render(f.arg, Neg.prec)
    if type(f) in _BIN_SYM:
        p = f.prec
        if isinstance(f, Impl):
            lp, rp = p + 1, p
        else:
            lp, rp = p, p + 1
        return f"{_render(f.left, lp)} {_BIN_SYM[type(f)]} {_render(f.right, rp)}"
    if isinstance(f, StrongDisj):
        return f"oplus({render(f.left)}, {render(f.right)})"
    if isinstance(f, VeeBar):
        return f"uplus({render(f.left)}, {render(f.right)})"
    if isinstance(f, Power):
        return f"pow({render(f.arg)}, {f.n})"
    if isinstance(f, NSum):
        return f"nsum({f.n}, {render(f.arg)})"
    if isinstance(f, NUplus):
        return f"nuplus({f.n}, {render(f.arg)})"
    raise TypeError(f"not a formula node: {f!r}")


_PRETTY_SYM = {Conj: "&", Meet: "∧", Join: "∨", Impl: "→", Iff: "↔", StrongDisj: "⋎", VeeBar: "⊻"}
_GREEK = {"phi": "φ", "psi": "ψ", "chi": "χ"}


def pretty(f: Formula) -> str:
    """Conventional notation (¬, →, ⊻, ...); for reports only, not parseable."""
    if isinstance(f, Var):
        return _GREEK.get(f.name, f.name)
    if isinstance(f, Bottom):
        return "⊥"
    if isinstance(f, Top):
        return "⊤"
    if isinstance(f, Neg):
        return "¬" + _pretty_arg(f.arg)
    if isinstance(f, _Binary):
        return f"{_pretty_arg(f.left)} {_PRETTY_SYM[type(f)]} {_pretty_arg(f.right)}"
    if isinstance(f, Power):
        return f"{_pretty_arg(f.arg)}^{f.n}"
    if isinstance(f, NSum):
        return f"{f.n}{_pretty_arg(f.arg)}"
    if isinstance(f, NUplus):
        return f"{f.n}̄{_pretty_arg(f.arg)}"
    raise TypeError(f"not a formula node: {f!r}")


def _pretty_arg(f):
    s = pretty(f)
    return s if isinstance(f, (Var, Bottom, Top, Neg)) else f"({s})"


# ---------------------------------------------------------------------------
# semantics


def evaluate(f: Formula, chain: Chain, valuation: Mapping[str, object]):
    """Truth value of ``f`` in ``chain`` under ``valuation``.

    Only bounded chains interpret formulas, since ``0`` must denote.
    """
    if not chain.bounded:
        raise UnsupportedOperation(f"formulas need a bounded chain; {chain.descriptor} has no 0")
    env = {k: chain.validate(v) for k, v in valuation.items()}
    return f._eval(chain, env)


def is_tautology(f: Formula, chain: Chain, source: ValuationSource):
    """``Holds`` if every valuation from ``source`` sends ``f`` to the top.

    On a finite chain with :class:`~blchang.valuation.Exhaustive` this is a
    decision procedure; otherwise the verdict is relative to the source.
    """
    if not chain.bounded:
        raise UnsupportedOperation(f"formulas need a bounded chain; {chain.descriptor} has no 0")
    variables = f.variables()
    top = chain.top
    count = 0
    for val in source.valuations(chain, variables):
        v = f._eval(chain, val)
        if chain._cmp(v, top) != 0:
            return Fails(val, v, top, source.describe(chain))
        count += 1
    return Holds(count, source.describe(chain), decided=source.decides(chain))


# ---------------------------------------------------------------------------
# axiom and equation schemas

PHI, PSI, CHI = Var("phi"), Var("psi"), Var("chi")


@dataclass(frozen=True)
class Schema:
    """A named formula template over the metavariables phi, psi, chi."""

    name: str
    template: Formula
    description: str = ""

    @property
    def metavariables(self) -> list[str]:
        return self.template.variables()

    def instantiate(self, **formulas: Formula | str) -> Formula:
        unknown = set(formulas) - set(self.metavariables)
        if unknown:
            raise ValueError(f"{self.name} has no metavariable(s) {sorted(unknown)}")
        subst = {k: parse(v) if isinstance(v, str) else v for k, v in formulas.items()}
        return self.template.substitute(subst)


def _schemas() -> list[Schema]:
    f, g, h = PHI, PSI, CHI
    return [
        Schema("A1", Impl(Impl(f, g), Impl(Impl(g, h), Impl(f, h))), "suffixing"),
        Schema("A2", Impl(Conj(f, g), f), "&-weakening"),
        Schema("A3", Impl(Conj(f, g), Conj(g, f)), "&-commutativity"),
        Schema("A4", Impl(Conj(f, Impl(f, g)), Conj(g, Impl(g, f))), "divisibility"),
        Schema("A5a", Impl(Impl(f, Impl(g, h)), Impl(Conj(f, g), h)), "residuation, uncurrying"),
        Schema("A5b", Impl(Impl(Conj(f, g), h), Impl(f, Impl(g, h))), "residuation, currying"),
        Schema("A6", Impl(Impl(Impl(f, g), h), Impl(Impl(Impl(g, f), h), h)), "prelinearity"),
        Schema("A7", Impl(Bottom(), f), "ex falso"),
        Schema("INV", Impl(Neg(Neg(f)), f), "involutive negation (Łukasiewicz)"),
        Schema("CHA", Iff(Power(NUplus(2, f), 2), NUplus(2, Power(f, 2))), "(2̄φ)² ↔ 2̄(φ²)"),
        Schema("P0", Iff(Neg(Power(Neg(Power(f, 2)), 2)), Power(Neg(Power(Neg(f), 2)), 2)),
               "¬((¬(φ²))²) ↔ (¬((¬φ)²))²"),
    ]


_SCHEMAS = {s.name: s for s in _schemas()}
_SCHEMAS_CI = {k.lower(): v for k, v in _SCHEMAS.items()}
BL_AXIOMS = ("A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7")


def schemas() -> list[Schema]:
    """The BL axioms plus INV, CHA and P0."""
    return list(_SCHEMAS.values())


def schema(name: str) -> Schema:
    try:
        return _SCHEMAS_CI[name.lower()]
    except KeyError:
        raise KeyError(f"unknown schema {name!r}; known: {', '.join(_SCHEMAS)}") from None
