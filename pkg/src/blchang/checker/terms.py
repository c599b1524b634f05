"""Algebraic terms and equations.

Unlike formulas, terms may be evaluated on unbounded hoops as long as they
avoid ``0``, negation and ``oplus``. The concrete syntax is the formula
syntax: ``&`` is the monoid product, ``->`` the residuum, ``!`` negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .. import formula as fm
from ..algebra.chains import Chain
from ..errors import EvaluationError, ParseError, UnsupportedOperation


class Term:
    bounded_only = False

    def children(self) -> tuple["Term", ...]:
        return ()

    def walk(self):
        yield self
        for ch in self.children():
            yield from ch.walk()

    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for node in self.walk():
            if isinstance(node, EVar):
                seen.setdefault(node.name, None)
        return list(seen)

    def needs_bottom(self) -> bool:
        return any(node.bounded_only for node in self.walk())

    def __str__(self):
        return fm.render(to_formula(self))


@dataclass(frozen=True)
class EVar(Term):
    name: str

    def _eval(self, c, env):
        try:
            return env[self.name]
        except KeyError:
            raise EvaluationError(f"variable {self.name!r} has no value") from None


@dataclass(frozen=True)
class Zero(Term):
    bounded_only = True

    def _eval(self, c, env):
        return c._bottom


@dataclass(frozen=True)
class One(Term):
    def _eval(self, c, env):
        return c.top


@dataclass(frozen=True)
class _Bin(Term):
    left: Term
    right: Term

    def children(self):
        return (self.left, self.right)

    def _eval(self, c, env):
        return getattr(c, self.op)(self.left._eval(c, env), self.right._eval(c, env))


@dataclass(frozen=True)
class Mul(_Bin):
    op = "_mul"


@dataclass(frozen=True)
class Imp(_Bin):
    op = "_imp"


@dataclass(frozen=True)
class Meet(_Bin):
    op = "_meet"


@dataclass(frozen=True)
class Join(_Bin):
    op = "_join"


@dataclass(frozen=True)
class Oplus(_Bin):
    op = "_oplus"
    bounded_only = True


@dataclass(frozen=True)
class Uplus(_Bin):
    op = "_uplus"


@dataclass(frozen=True)
class Neg(Term):
    arg: Term
    bounded_only = True

    def children(self):
        return (self.arg,)

    def _eval(self, c, env):
        return c._neg(self.arg._eval(c, env))


@dataclass(frozen=True)
class Pow(Term):
    arg: Term
    n: int

    def children(self):
        return (self.arg,)

    def _eval(self, c, env):
        return c._fold(c._mul, self.arg._eval(c, env), self.n)


@dataclass(frozen=True)
class NOplus(Term):
    n: int
    arg: Term
    bounded_only = True

    def children(self):
        return (self.arg,)

    def _eval(self, c, env):
        return c._fold(c._oplus, self.arg._eval(c, env), self.n)


@dataclass(frozen=True)
class NUplus(Term):
    n: int
    arg: Term

    def children(self):
        return (self.arg,)

    def _eval(self, c, env):
        return c._fold(c._uplus, self.arg._eval(c, env), self.n)


def eval_term(t: Term, chain: Chain, valuation: Mapping[str, object]):
    """Value of ``t`` in ``chain``; hoop terms work on unbounded chains."""
    _require_support(t, chain)
    env = {k: chain.validate(v) for k, v in valuation.items()}
    return t._eval(chain, env)


def _require_support(t: Term, chain: Chain):
    if not chain.bounded and t.needs_bottom():
        raise UnsupportedOperation(
            f"term {t} uses 0, negation or oplus, which {chain.descriptor} (unbounded) lacks")


# ---------------------------------------------------------------------------
# conversion to and from formulas


def from_formula(f: fm.Formula, rename: Mapping[str, str] | None = None) -> Term:
    rename = rename or {}
    rec = lambda g: from_formula(g, rename)  # noqa: E731
    if isinstance(f, fm.Var):
        return EVar(rename.get(f.name, f.name))
    if isinstance(f, fm.Bottom):
        return Zero()
    if isinstance(f, fm.Top):
        return One()
    if isinstance(f, fm.Neg):
        return Neg(rec(f.arg))
    if isinstance(f, fm.Iff):
        left, right = rec(f.left), rec(f.right)
        return Meet(Imp(left, right), Imp(right, left))
    pairs = {fm.Conj: Mul, fm.Impl: Imp, fm.Meet: Meet, fm.Join: Join,
             fm.StrongDisj: Oplus, fm.VeeBar: Uplus}
    if type(f) in pairs:
        return pairs[type(f)](rec(f.left), rec(f.right))
    if isinstance(f, fm.Power):
        return Pow(rec(f.arg), f.n)
    if isinstance(f, fm.NSum):
        return NOplus(f.n, rec(f.arg))
    if isinstance(f, fm.NUplus):
        return NUplus(f.n, rec(f.arg))
    raise TypeError(f"not a formula: {f!r}")


def to_formula(t: Term) -> fm.Formula:
    if isinstance(t, EVar):
        return fm.Var(t.name)
    if isinstance(t, Zero):
        return fm.Bottom()
    if isinstance(t, One):
        return fm.Top()
    if isinstance(t, Neg):
        return fm.Neg(to_formula(t.arg))
    pairs = {Mul: fm.Conj, Imp: fm.Impl, Meet: fm.Meet, Join: fm.Join, Oplus: fm.StrongDisj, Uplus: fm.VeeBar}
    if type(t) in pairs:
        return pairs[type(t)](to_formula(t.left), to_formula(t.right))
    if isinstance(t, Pow):
        return fm.Power(to_formula(t.arg), t.n)
    if isinstance(t, NOplus):
        return fm.NSum(t.n, to_formula(t.arg))
    if isinstance(t, NUplus):
        return fm.NUplus(t.n, to_formula(t.arg))
    raise TypeError(f"not a term: {t!r}")


def parse_term(text: str) -> Term:
    return from_formula(fm.parse(text))


# ---------------------------------------------------------------------------
# equations


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    name: str = ""
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        declared = list(self.variables)
        for v in self.lhs.variables() + self.rhs.variables():
            if v not in declared:
                declared.append(v)
        object.__setattr__(self, "variables", tuple(declared))

    def needs_bottom(self) -> bool:
        return self.lhs.needs_bottom() or self.rhs.needs_bottom()

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def parse_equation(text: str, name: str = "") -> Equation:
    """Read ``lhs = rhs``; a bare term ``t`` means ``t = 1``."""
    if text.count("=") > 1:
        raise ParseError("an equation has exactly one '='", text, text.index("=", text.index("=") + 1), {"term"})
    if "=" in text:
        i = text.index("=")
        lhs, rhs = text[:i], text[i + 1:]
        try:
            left = parse_term(lhs)
        except ParseError as exc:
            raise ParseError(exc.message, text, exc.position, exc.expected) from None
        try:
            right = parse_term(rhs)
        except ParseError as exc:
            raise ParseError(exc.message, text, exc.position + i + 1, exc.expected) from None
        return Equation(left, right, name or text.strip())
    return Equation(parse_term(text), One(), name or text.strip())


x, y = EVar("x"), EVar("y")


def _named() -> dict[str, Equation]:
    eqs = [
        Equation(Pow(NUplus(2, x), 2), NUplus(2, Pow(x, 2)), "cha"),
        Equation(Pow(NOplus(2, x), 2), NOplus(2, Pow(x, 2)), "cha-mv"),
        Equation(Neg(Pow(Neg(Pow(x, 2)), 2)), Pow(Neg(Pow(Neg(x), 2)), 2), "p0"),
        Equation(Neg(Neg(x)), x, "inv"),
        Equation(Uplus(x, y), Oplus(x, y), "uplus-oplus"),
        Equation(Uplus(x, y), One(), "uplus-one"),
        Equation(x, Imp(y, Mul(x, y)), "cancellative"),
        Equation(Imp(Imp(x, y), y), Imp(Imp(y, x), x), "wajsberg"),
        Equation(Meet(x, y), Mul(x, Imp(x, y)), "div"),
        Equation(Join(Imp(x, y), Imp(y, x)), One(), "pl"),
    ]
    return {e.name: e for e in eqs}


EQUATIONS = _named()

_METAVARS = {"phi": "x", "psi": "y", "chi": "z"}


def schema_equation(name: str) -> Equation:
    """A formula schema ``s`` read as the equation ``s = 1`` over x, y, z."""
    s = fm.schema(name)
    return Equation(from_formula(s.template, _METAVARS), One(), s.name)


def equation(spec: str | Equation) -> Equation:
    """Look up a named equation or schema, or parse inline ``lhs = rhs`` text."""
    if isinstance(spec, Equation):
        return spec
    key = spec.strip().lower()
    if key in EQUATIONS:
        return EQUATIONS[key]
    try:
        return schema_equation(key)
    except KeyError:
        pass
    return parse_equation(spec)
