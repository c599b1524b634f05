"""Valuation sources and verdicts shared by the formula and checker layers.

A source is a deterministic recipe for a stream of valuations (dicts from
variable names to chain elements). Point-based sources enumerate the
cartesian product of an ascending element grid, so the first variable
changes slowest; random sources draw from a seeded generator.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence

from .algebra.chains import Chain
from .errors import StrategyError

DEFAULT_SEED = 0xB1C
DEFAULT_SAMPLES = 10_000
DEFAULT_DENOM = 64
DEFAULT_CHANG_BOUND = 50


class ValuationSource:
    """Base class; subclasses are frozen dataclasses."""

    point_based = False

    def describe(self, chain: Chain | None = None) -> str:
        raise NotImplementedError

    def valuations(self, chain: Chain, variables: Sequence[str]) -> Iterator[dict]:
        raise NotImplementedError

    def points(self, chain: Chain) -> list:
        raise StrategyError(f"{self.describe()} does not enumerate points")

    def decides(self, chain: Chain) -> bool:
        """True when a Holds verdict from this source is a proof, not a sample."""
        return False

    def __str__(self):
        return self.describe()


def _product(chain, pts, variables):
    if not variables:
        yield {}
        return
    for combo in itertools.product(pts, repeat=len(variables)):
        yield dict(zip(variables, combo))


@dataclass(frozen=True)
class Exhaustive(ValuationSource):
    point_based = True

    def describe(self, chain=None):
        return "Exhaustive"

    def points(self, chain):
        return chain.elements()

    def valuations(self, chain, variables):
        return _product(chain, self.points(chain), list(variables))

    def decides(self, chain):
        return chain.finite


@dataclass(frozen=True)
class Grid(ValuationSource):
    """Every grid point ``i/denom`` (finite chains: every element)."""

    denom: int
    point_based = True

    def describe(self, chain=None):
        return f"Grid({self.denom})"

    def points(self, chain):
        pts = chain.points(denom=self.denom)
        if not pts:
            raise StrategyError(f"{self.describe()} yields no points on {chain.descriptor}")
        return pts

    def valuations(self, chain, variables):
        return _product(chain, self.points(chain), list(variables))

    def decides(self, chain):
        return chain.finite


@dataclass(frozen=True)
class ChangIndices(ValuationSource):
    """All Chang elements ``a_n``, ``b_n`` with ``n <= bound``."""

    bound: int
    point_based = True

    def describe(self, chain=None):
        return f"ChangIndices({self.bound})"

    def points(self, chain):
        pts = chain.points(index=self.bound)
        if not pts:
            raise StrategyError(f"{self.describe()} yields no points on {chain.descriptor}")
        return pts

    def valuations(self, chain, variables):
        return _product(chain, self.points(chain), list(variables))


@dataclass(frozen=True)
class Random(ValuationSource):
    """``count`` independent valuations from ``random.Random(seed)``.

    ``bound`` caps denominators of rational values and Chang indices.
    """

    count: int
    seed: int = DEFAULT_SEED
    bound: int = DEFAULT_DENOM

    def describe(self, chain=None):
        return f"Random({self.count}, seed={self.seed:#x}, bound={self.bound})"

    def valuations(self, chain, variables):
        rng = _random.Random(self.seed)
        variables = list(variables)
        for _ in range(self.count):
            yield {v: chain.sample(rng, self.bound) for v in variables}


@dataclass(frozen=True)
class CrossComponents(ValuationSource):
    """``count`` random valuations whose values lie in pairwise distinct
    summands of an ordinal sum (top excluded), by rejection from a seeded
    stream."""

    count: int
    seed: int = DEFAULT_SEED
    bound: int = DEFAULT_DENOM

    def describe(self, chain=None):
        return f"CrossComponents({self.count}, seed={self.seed:#x}, bound={self.bound})"

    def valuations(self, chain, variables):
        if not hasattr(chain, "same_component"):
            raise StrategyError(f"{self.describe()} needs an ordinal sum, got {chain.descriptor}")
        variables = list(variables)
        if len(variables) > len(chain.component_range):
            raise StrategyError(f"{chain.descriptor} has too few components for {len(variables)} variables")
        rng = _random.Random(self.seed)
        made = 0
        while made < self.count:
            vals = [chain.sample(rng, self.bound) for _ in variables]
            if any(v is chain.top for v in vals):
                continue
            if len({v.component for v in vals}) < len(vals):
                continue
            made += 1
            yield dict(zip(variables, vals))


@dataclass(frozen=True)
class Points(ValuationSource):
    """Explicit valuations, checked in the given order."""

    assignments: tuple[tuple[tuple[str, Any], ...], ...]

    @classmethod
    def of(cls, *valuations: Mapping[str, Any]) -> "Points":
        return cls(tuple(tuple(sorted(v.items())) for v in valuations))

    def describe(self, chain=None):
        def show(val):
            if chain is None:
                return ", ".join(f"{k}={v!r}" for k, v in val)
            return ", ".join(f"{k}={chain.render(v)}" for k, v in val)

        return "Points(" + "; ".join(show(v) for v in self.assignments) + ")"

    def valuations(self, chain, variables):
        for val in self.assignments:
            d = {k: chain.validate(v) for k, v in val}
            missing = [v for v in variables if v not in d]
            if missing:
                raise StrategyError(f"explicit valuation leaves {', '.join(missing)} unassigned")
            yield d


@dataclass(frozen=True)
class Mixed(ValuationSource):
    """Union of sources.

    Point-based members pool their points into one ascending grid whose
    full product is enumerated first (so cross pairs between the members'
    points are covered); the remaining members follow in order.
    """

    sources: tuple[ValuationSource, ...] = field(default_factory=tuple)

    def __init__(self, *sources):
        if len(sources) == 1 and isinstance(sources[0], (list, tuple)):
            sources = tuple(sources[0])
        object.__setattr__(self, "sources", tuple(sources))

    def describe(self, chain=None):
        return "Mixed(" + " + ".join(s.describe(chain) for s in self.sources) + ")"

    def _pooled(self, chain):
        seen = set()
        pooled = []
        for s in self.sources:
            if not s.point_based:
                continue
            try:
                pts = s.points(chain)
            except StrategyError:
                if isinstance(s, Exhaustive):
                    raise
                continue
            for p in pts:
                if p not in seen:
                    seen.add(p)
                    pooled.append(p)
        return chain.sorted(pooled)

    def valuations(self, chain, variables):
        variables = list(variables)
        pooled = self._pooled(chain)
        others = [s for s in self.sources if not s.point_based]
        if not pooled and not others:
            raise StrategyError(f"{self.describe()} yields no valuations on {chain.descriptor}")
        if pooled:
            yield from _product(chain, pooled, variables)
        for s in others:
            yield from s.valuations(chain, variables)

    def decides(self, chain):
        return any(s.decides(chain) for s in self.sources)


def default_source(chain: Chain, arity: int = 1, *, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES,
                   denom: int = DEFAULT_DENOM, chang_bound: int = DEFAULT_CHANG_BOUND,
                   grid_cap: int = 20_000) -> ValuationSource:
    """The standard source for checking an ``arity``-variable identity on ``chain``.

    Finite chains are checked exhaustively. Otherwise the grid denominator
    and Chang index bound are shrunk until the grid product has at most
    ``grid_cap`` valuations, and a seeded random stream is appended.
    """
    if chain.finite:
        return Exhaustive()
    arity = max(1, arity)
    d, n = denom, chang_bound
    while True:
        size = len(set(chain.points(denom=d)) | set(chain.points(index=n)))
        if size ** arity <= grid_cap or (d <= 1 and n <= 1):
            break
        d, n = max(1, d * 2 // 3), max(1, n * 2 // 3)
    members: list[ValuationSource] = []
    if chain.points(denom=d):
        members.append(Grid(d))
    if chain.points(index=n):
        members.append(ChangIndices(n))
    members.append(Random(samples, seed, denom))
    return Mixed(*members)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Holds:
    """No violation among ``count`` valuations from ``source``.

    ``decided`` is set only when the source enumerated a finite carrier
    completely; otherwise the verdict means "holds up to the source".
    """

    count: int
    source: str
    decided: bool = False
    holds = True

    def __bool__(self):
        return True

    def describe(self, chain: Chain | None = None) -> str:
        scope = "decided" if self.decided else "up to source"
        return f"Holds({self.count} valuations, {scope}: {self.source})"


@dataclass(frozen=True)
class Fails:
    """First violating valuation, with both sides as computed there."""

    valuation: Mapping[str, Any]
    lhs: Any
    rhs: Any
    source: str = ""
    note: str = ""
    holds = False

    def __bool__(self):
        return False

    def witness(self, chain: Chain) -> str:
        return render_valuation(chain, self.valuation)

    def describe(self, chain: Chain | None = None) -> str:
        if chain is None:
            return f"Fails({dict(self.valuation)!r}: {self.lhs!r} != {self.rhs!r})"
        extra = f" [{self.note}]" if self.note else ""
        return (f"Fails({self.witness(chain)}: lhs={render_value(chain, self.lhs)}, "
                f"rhs={render_value(chain, self.rhs)}){extra}")


Verdict = Holds | Fails


def render_value(chain: Chain, x) -> str:
    if isinstance(x, str):
        return x
    return chain.render(x)


def render_valuation(chain: Chain, valuation: Mapping[str, Any]) -> str:
    return ", ".join(f"{k}={render_value(chain, v)}" for k, v in valuation.items())
