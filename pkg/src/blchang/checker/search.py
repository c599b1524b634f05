"""Identity checking and counterexample search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..algebra.chains import Chain
from ..valuation import (
    DEFAULT_CHANG_BOUND,
    DEFAULT_DENOM,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    Exhaustive,
    Fails,
    Holds,
    Random,
    ValuationSource,
)
from .terms import Equation, _require_support, equation as _equation


def check_equation(e: Equation | str, chain: Chain, source: ValuationSource):
    """First valuation from ``source`` where the two sides differ, else ``Holds``."""
    e = _equation(e)
    _require_support(e.lhs, chain)
    _require_support(e.rhs, chain)
    count = 0
    for val in source.valuations(chain, e.variables):
        lhs = e.lhs._eval(chain, val)
        rhs = e.rhs._eval(chain, val)
        if chain._cmp(lhs, rhs) != 0:
            return Fails(val, lhs, rhs, source.describe(chain), note=e.name)
        count += 1
    return Holds(count, source.describe(chain), decided=source.decides(chain))


@dataclass(frozen=True)
class Budget:
    """Limits for :func:`find_counterexample`."""

    denom: int = DEFAULT_DENOM
    index: int = DEFAULT_CHANG_BOUND
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    def describe(self) -> str:
        return f"Deepening(d<={self.denom}, N<={self.index}) + Random({self.samples}, seed={self.seed:#x})"


def _deepening(chain: Chain, variables, budget: Budget):
    """Grids of growing size; each valuation is produced once.

    Level ``k`` uses denominators up to ``k`` and Chang indices up to ``k``.
    Only valuations touching a point new at level ``k`` are emitted there, so
    witnesses with small denominators (then early variables) come first.
    """
    seen: set = set()
    top = max(budget.denom, budget.index, 1)
    for k in range(1, top + 1):
        pts = chain.points(denom=min(k, budget.denom), index=min(k, budget.index))
        fresh = [p for p in pts if p not in seen]
        if not fresh:
            continue
        if not variables:
            if k == 1 or not seen:
                yield {}
        else:
            for combo in itertools.product(pts, repeat=len(variables)):
                if any(p not in seen for p in combo):
                    yield dict(zip(variables, combo))
        seen.update(pts)


def find_counterexample(e: Equation | str, chain: Chain, budget: Budget | None = None):
    """Search for a violation of ``e`` on ``chain`` within ``budget``.

    Finite chains are searched exhaustively, which decides the question.
    Infinite chains get an iterative-deepening grid and then a seeded
    random stream; ``Holds`` then only means none was found.
    """
    e = _equation(e)
    budget = budget or Budget()
    if chain.finite:
        return check_equation(e, chain, Exhaustive())
    _require_support(e.lhs, chain)
    _require_support(e.rhs, chain)
    desc = budget.describe()
    count = 0
    randoms = Random(budget.samples, budget.seed, budget.denom).valuations(chain, e.variables)
    for val in itertools.chain(_deepening(chain, list(e.variables), budget), randoms):
        lhs = e.lhs._eval(chain, val)
        rhs = e.rhs._eval(chain, val)
        if chain._cmp(lhs, rhs) != 0:
            return Fails(val, lhs, rhs, desc, note=e.name)
        count += 1
    return Holds(count, desc, decided=False)
