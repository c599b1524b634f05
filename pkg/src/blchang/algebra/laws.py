"""Pointwise checks of the defining laws of BL-chains and hoops.

Each law is a predicate on a triple ``(x, y, z)``; :func:`check_laws` runs
a set of them over a valuation source and reports the first violation.
Hoop laws never mention the bottom, so they apply to unbounded chains too.
"""

from __future__ import annotations

from typing import Callable

from ..valuation import Fails, Holds, ValuationSource
from .chains import Chain

LawFn = Callable[[Chain, object, object, object], "tuple[object, object] | None"]


def _eq(c, lhs, rhs):
    return None if c._cmp(lhs, rhs) == 0 else (lhs, rhs)


def residuation(c, x, y, z):
    # z*x <= y  iff  z <= x=>y
    left = c._cmp(c._mul(z, x), y) <= 0
    right = c._cmp(z, c._imp(x, y)) <= 0
    if left != right:
        return (f"z*x<=y is {left}", f"z<=x=>y is {right}")
    return None


def residuum_is_attained(c, x, y, z):
    r = c._mul(c._imp(x, y), x)
    return None if c._cmp(r, y) <= 0 else (r, y)


def divisibility(c, x, y, z):
    return _eq(c, c._meet(x, y), c._mul(x, c._imp(x, y)))


def prelinearity(c, x, y, z):
    return _eq(c, c._join(c._imp(x, y), c._imp(y, x)), c.top)


def mul_commutative(c, x, y, z):
    return _eq(c, c._mul(x, y), c._mul(y, x))


def mul_associative(c, x, y, z):
    return _eq(c, c._mul(c._mul(x, y), z), c._mul(x, c._mul(y, z)))


def mul_identity(c, x, y, z):
    return _eq(c, c._mul(x, c.top), x)


def imp_reflexive(c, x, y, z):
    return _eq(c, c._imp(x, x), c.top)


def imp_currying(c, x, y, z):
    # x=>(y=>z) = (x*y)=>z
    return _eq(c, c._imp(x, c._imp(y, z)), c._imp(c._mul(x, y), z))


def imp_top_iff_leq(c, x, y, z):
    top = c._cmp(c._imp(x, y), c.top) == 0
    leq = c._cmp(x, y) <= 0
    return None if top == leq else (f"x=>y=1 is {top}", f"x<=y is {leq}")


def lattice_absorption(c, x, y, z):
    bad = _eq(c, c._meet(x, c._join(x, y)), x)
    return bad or _eq(c, c._join(x, c._meet(x, y)), x)


def lattice_associative(c, x, y, z):
    bad = _eq(c, c._meet(c._meet(x, y), z), c._meet(x, c._meet(y, z)))
    return bad or _eq(c, c._join(c._join(x, y), z), c._join(x, c._join(y, z)))


def lattice_commutative(c, x, y, z):
    bad = _eq(c, c._meet(x, y), c._meet(y, x))
    return bad or _eq(c, c._join(x, y), c._join(y, x))


def mul_monotone(c, x, y, z):
    if c._cmp(x, y) <= 0 and c._cmp(c._mul(x, z), c._mul(y, z)) > 0:
        return (c._mul(x, z), c._mul(y, z))
    return None


def bottom_is_least(c, x, y, z):
    return None if c._cmp(c.bottom, x) <= 0 else (c.bottom, x)


def mv_involution(c, x, y, z):
    return _eq(c, c._neg(c._neg(x)), x)


def wajsberg(c, x, y, z):
    return _eq(c, c._imp(c._imp(x, y), y), c._imp(c._imp(y, x), x))


def cancellative(c, x, y, z):
    return _eq(c, x, c._imp(y, c._mul(x, y)))


HOOP_LAWS: dict[str, LawFn] = {
    "residuation": residuation,
    "residuum-attained": residuum_is_attained,
    "divisibility": divisibility,
    "prelinearity": prelinearity,
    "mul-commutative": mul_commutative,
    "mul-associative": mul_associative,
    "mul-identity": mul_identity,
    "mul-monotone": mul_monotone,
    "imp-reflexive": imp_reflexive,
    "imp-currying": imp_currying,
    "imp-top-iff-leq": imp_top_iff_leq,
    "lattice-absorption": lattice_absorption,
    "lattice-associative": lattice_associative,
    "lattice-commutative": lattice_commutative,
}

BL_LAWS: dict[str, LawFn] = {**HOOP_LAWS, "bottom-least": bottom_is_least}


def laws_for(chain: Chain) -> dict[str, LawFn]:
    """The laws every element triple of ``chain`` must satisfy."""
    laws = dict(BL_LAWS if chain.bounded else HOOP_LAWS)
    if chain.mv:
        laws["mv-involution"] = mv_involution
        laws["wajsberg"] = wajsberg
    if chain.cancellative:
        laws["wajsberg"] = wajsberg
        laws["cancellative"] = cancellative
    return laws


def check_laws(chain: Chain, source: ValuationSource, laws: dict[str, LawFn] | None = None):
    """Run ``laws`` (default :func:`laws_for`) on triples from ``source``."""
    laws = laws_for(chain) if laws is None else laws
    fns = list(laws.items())
    count = 0
    for val in source.valuations(chain, ("x", "y", "z")):
        x, y, z = val["x"], val["y"], val["z"]
        for name, fn in fns:
            bad = fn(chain, x, y, z)
            if bad is not None:
                return Fails(val, bad[0], bad[1], source.describe(chain), note=name)
        count += 1
    return Holds(count, source.describe(chain), decided=source.decides(chain))

