"""Finite partial subalgebras and partial embeddings between chains.

A partial subalgebra keeps the product and residuum of its source chain
only where the result stays in the carrier. An embedding must be injective,
strictly monotone and respect every defined table entry, plus the bounds
when the carrier contains them. Meets and joins are order-determined in a
chain and are not tabulated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.chains import Chain, Chang, Rotation, StandardCancellativeHoop
from .algebra.descriptors import make_chain
from .algebra.elements import RotationElement, a, b, as_fraction
from .errors import ArgumentError, EncodingError

DEFAULT_EMBED_DENOM = 16
DEFAULT_EMBED_INDEX = 16
DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class PartialAlgebra:
    """A finite carrier of ``chain`` with partial ``*`` and ``=>`` tables.

    Tables map index pairs ``(i, j)`` into the carrier to the index of the
    result; a missing key means the result leaves the carrier.
    """

    chain: Chain
    carrier: tuple
    mul_table: dict = field(compare=False)
    imp_table: dict = field(compare=False)
    has_bottom: bool
    has_top: bool

    def __len__(self):
        return len(self.carrier)

    def index(self, x) -> int:
        return self.carrier.index(x)

    def mul(self, x, y):
        """Product inside the fragment, or ``None`` when undefined."""
        k = self.mul_table.get((self.index(x), self.index(y)))
        return None if k is None else self.carrier[k]

    def imp(self, x, y):
        k = self.imp_table.get((self.index(x), self.index(y)))
        return None if k is None else self.carrier[k]

    def defined_entries(self) -> int:
        return len(self.mul_table) + len(self.imp_table)

    def render(self) -> str:
        return "{" + ", ".join(self.chain.render(x) for x in self.carrier) + "}"


def partial_subalgebra(chain: Chain, elements: Iterable) -> PartialAlgebra:
    """Restrict ``chain`` to ``elements`` (distinct, any order)."""
    items = [chain.validate(x) for x in elements]
    if not items:
        raise ArgumentError("a partial subalgebra needs at least one element")
    if len(set(items)) != len(items):
        raise ArgumentError("carrier elements must be distinct")
    carrier = tuple(chain.sorted(items))
    pos = {x: i for i, x in enumerate(carrier)}
    mul, imp = {}, {}
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            k = pos.get(chain._mul(x, y))
            if k is not None:
                mul[(i, j)] = k
            k = pos.get(chain._imp(x, y))
            if k is not None:
                imp[(i, j)] = k
    has_bottom = chain.bounded and chain._cmp(carrier[0], chain.bottom) == 0
    has_top = chain._cmp(carrier[-1], chain.top) == 0
    return PartialAlgebra(chain, carrier, mul, imp, has_bottom, has_top)


def closure(chain: Chain, elements: Iterable, limit: int = 1000) -> list:
    """Smallest superset closed under ``*``, ``=>`` (and so ``!`` and ``oplus``
    when the carrier holds the bottom), in ascending order.

    Raises :class:`ArgumentError` if it would exceed ``limit`` elements.
    """
    found = {chain.validate(x) for x in elements}
    found.add(chain.top)
    frontier = list(found)
    while frontier:
        current = list(found)
        new = []
        for x in frontier:
            for y in current:
                for z in (chain._mul(x, y), chain._mul(y, x), chain._imp(x, y), chain._imp(y, x)):
                    if z not in found:
                        found.add(z)
                        new.append(z)
        if len(found) > limit:
            raise ArgumentError(f"closure exceeds {limit} elements")
        frontier = new
    return chain.sorted(found)


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class EmbeddingMap:
    """An assignment of target elements to a fragment's carrier, in carrier order."""

    source: Chain
    target: Chain
    pairs: tuple

    def __getitem__(self, x):
        for s, t in self.pairs:
            if s == x:
                return t
        raise KeyError(x)

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return True

    def items(self):
        return list(self.pairs)

    def render_pairs(self) -> list[tuple[str, str]]:
        return [(self.source.render(s), self.target.render(t)) for s, t in self.pairs]

    def serialize(self) -> str:
        return ", ".join(f"{s} -> {t}" for s, t in self.render_pairs())


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def check_embedding(m: EmbeddingMap, p: PartialAlgebra, target: Chain | None = None) -> EmbeddingCheck:
    """Report every way ``m`` fails to embed ``p`` into ``target``."""
    target = target or m.target
    src, tgt = p.chain, target
    image = {}
    bad: list[str] = []
    for s, t in m.pairs:
        try:
            image[s] = tgt.validate(t)
        except EncodingError as exc:
            bad.append(f"{src.render(s)} -> {t!r}: {exc}")
    missing = [x for x in p.carrier if x not in image]
    if missing:
        bad.append("undefined on " + ", ".join(src.render(x) for x in missing))
        return EmbeddingCheck(False, tuple(bad))
    if len(image) != len(p.carrier):
        bad.append("map has entries outside the carrier")
    imgs = [image[x] for x in p.carrier]
    show = src.render
    for i in range(len(imgs)):
        for j in range(i + 1, len(imgs)):
            c = tgt._cmp(imgs[i], imgs[j])
            if c == 0:
                bad.append(f"not injective: {show(p.carrier[i])} and {show(p.carrier[j])} share an image")
            elif c > 0:
                bad.append(f"order: {show(p.carrier[i])} < {show(p.carrier[j])} but images are reversed")
    for name, table, op in (("*", p.mul_table, tgt._mul), ("=>", p.imp_table, tgt._imp)):
        for (i, j), k in sorted(table.items()):
            got = op(imgs[i], imgs[j])
            if tgt._cmp(got, imgs[k]) != 0:
                bad.append(f"{show(p.carrier[i])} {name} {show(p.carrier[j])} = {show(p.carrier[k])} "
                           f"maps to {tgt.render(got)}, expected {tgt.render(imgs[k])}")
    if p.has_bottom and (not tgt.bounded or tgt._cmp(imgs[0], tgt.bottom) != 0):
        bad.append("bottom is not sent to the bottom")
    if p.has_top and tgt._cmp(imgs[-1], tgt.top) != 0:
        bad.append("top is not sent to the top")
    return EmbeddingCheck(not bad, tuple(bad))


@dataclass(frozen=True)
class NotFoundUpToBudget:
    """No embedding among the candidates; ``decided`` only for finite targets."""

    target: str
    budget: str
    nodes: int
    exhausted: bool
    decided: bool

    def __bool__(self):
        return False

    def describe(self) -> str:
        why = "search space exhausted" if self.exhausted else "node limit reached"
        scope = "decided" if self.decided else "up to budget"
        return f"NotFoundUpToBudget({self.target}, {self.budget}; {why}, {scope})"


# ---------------------------------------------------------------------------
# search


class _Search:
    def __init__(self, p: PartialAlgebra, target: Chain, candidates: list, node_limit: int):
        self.p = p
        self.t = target
        self.cands = candidates
        self.node_limit = node_limit
        self.nodes = 0
        n = len(p.carrier)
        # entries indexed by each argument, for propagation
        self.by_arg: list[list] = [[] for _ in range(n)]
        for name, table in (("mul", p.mul_table), ("imp", p.imp_table)):
            op = target._mul if name == "mul" else target._imp
            for (i, j), k in table.items():
                entry = (i, j, k, op)
                self.by_arg[i].append(entry)
                if j != i:
                    self.by_arg[j].append(entry)

    def consistent(self, assign: dict, i: int) -> bool:
        v = assign[i]
        cmp = self.t._cmp
        for j, w in assign.items():
            if j == i:
                continue
            c = cmp(v, w)
            if c == 0 or (c < 0) != (i < j):
                return False
        return True

    def place(self, assign: dict, i: int, v) -> list | None:
        """Assign ``i := v`` and everything it forces; the list of new keys, or None."""
        added = []
        queue = [(i, v)]
        while queue:
            i, v = queue.pop()
            if i in assign:
                if self.t._cmp(assign[i], v) != 0:
                    return self._undo(assign, added)
                continue
            assign[i] = v
            added.append(i)
            if not self.consistent(assign, i):
                return self._undo(assign, added)
            for x, y, k, op in self.by_arg[i]:
                if x in assign and y in assign:
                    queue.append((k, op(assign[x], assign[y])))
        return added

    @staticmethod
    def _undo(assign, added):
        for k in added:
            del assign[k]
        return None

    def bounds(self, assign, i):
        lo = hi = None
        for j, w in assign.items():
            if j < i and (lo is None or j > lo[0]):
                lo = (j, w)
            if j > i and (hi is None or j < hi[0]):
                hi = (j, w)
        return (lo and lo[1]), (hi and hi[1])

    def run(self, assign: dict):
        n = len(self.p.carrier)
        free = next((i for i in range(n) if i not in assign), None)
        if free is None:
            return dict(assign)
        lo, hi = self.bounds(assign, free)
        cmp = self.t._cmp
        for v in self.cands:
            if lo is not None and cmp(v, lo) <= 0:
                continue
            if hi is not None and cmp(v, hi) >= 0:
                break
            self.nodes += 1
            if self.nodes > self.node_limit:
                raise _LimitReached
            added = self.place(assign, free, v)
            if added is None:
                continue
            found = self.run(assign)
            if found is not None:
                return found
            self._undo(assign, added)
        return None


class _LimitReached(Exception):
    pass


def find_embedding(p: PartialAlgebra, target: Chain | str, denom: int = DEFAULT_EMBED_DENOM,
                   index: int = DEFAULT_EMBED_INDEX, node_limit: int = DEFAULT_NODE_LIMIT):
    """First embedding of ``p`` into ``target`` in ascending candidate order.

    Candidates are the target's grid (``i/denom``, Chang indices up to
    ``index``; the whole carrier of a finite target). Table entries whose
    arguments are already mapped force the image of their result, which
    may lie off the grid. Returns :class:`NotFoundUpToBudget` on failure.
    """
    target = make_chain(target)
    if target.finite:
        cands = target.elements()
        budget = "whole carrier"
    else:
        cands = target.points(denom=denom, index=index)
        budget = f"denom<={denom}, index<={index}"
    search = _Search(p, target, cands, node_limit)
    assign: dict = {}
    n = len(p.carrier)
    ok = True
    if p.has_bottom:
        if not target.bounded:
            ok = False
        else:
            ok = search.place(assign, 0, target.bottom) is not None
    if ok and p.has_top:
        ok = search.place(assign, n - 1, target.top) is not None
    exhausted = True
    found = None
    if ok:
        try:
            found = search.run(assign)
        except _LimitReached:
            exhausted = False
    if found is None:
        return NotFoundUpToBudget(target.descriptor, budget, search.nodes, exhausted,
                                  decided=exhausted and target.finite)
    pairs = tuple((p.carrier[i], found[i]) for i in range(n))
    return EmbeddingMap(p.chain, target, pairs)


def chang_into_rotation(n_max: int, ratio=Fraction(1, 2)) -> EmbeddingMap:
    """The map ``a_n -> pos(ratio^n)``, ``b_n -> neg(ratio^n)`` for ``n <= n_max``."""
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 0:
        raise ArgumentError(f"n_max must be a natural number, got {n_max!r}")
    r = as_fraction(ratio)
    if not 0 < r < 1:
        raise ArgumentError(f"ratio must lie strictly between 0 and 1, got {r}")
    source = Chang()
    target = Rotation(StandardCancellativeHoop())
    pairs = [(b(n), RotationElement("neg", r ** n)) for n in range(n_max + 1)]
    pairs += [(a(n), RotationElement("pos", r ** n)) for n in range(n_max + 1)]
    carrier = source.sorted([s for s, _ in pairs])
    lookup = dict(pairs)
    return EmbeddingMap(source, target, tuple((s, lookup[s]) for s in carrier))


def chang_fragment(n_max: int) -> PartialAlgebra:
    """``{a_0..a_n, b_0..b_n}`` as a partial subalgebra of Chang's algebra."""
    return partial_subalgebra(Chang(), [a(n) for n in range(n_max + 1)] + [b(n) for n in range(n_max + 1)])


def inclusion(p: PartialAlgebra, target: Chain) -> EmbeddingMap:
    """Identity map of the carrier, for fragments of a subchain of ``target``."""
    return EmbeddingMap(p.chain, target, tuple((x, target.validate(x)) for x in p.carrier))


def parse_carrier(chain: Chain, spec: str | Sequence[str]) -> list:
    """Read a carrier such as ``"a0..a5,b0..b5"`` or ``"0,2/5,1"``.

    A range ``xN..xM`` expands over the trailing index; everything else is
    parsed with the chain's element syntax.
    """
    parts = spec.split(",") if isinstance(spec, str) else list(spec)
    out = []
    for part in parts:
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(.*?)(\d+)\s*\.\.\s*(.*?)(\d+)", part)
        if m and m.group(1) == m.group(3) and m.group(1):
            lo, hi = int(m.group(2)), int(m.group(4))
            if lo > hi:
                raise ArgumentError(f"empty range {part!r}")
            out.extend(chain.parse_element(f"{m.group(1)}{k}") for k in range(lo, hi + 1))
        else:
            out.append(chain.parse_element(part))
    return out
