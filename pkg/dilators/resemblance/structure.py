"""Finite L_D-structures and their relation ``<=_1``.

A structure is a finite set of ordinals carrying the order, the
representation relations of a normal dilator and a ``<=_1`` table. The table
is filled by recursion on the right-hand element: ``alpha <=_1 beta`` holds
when every pair ``X`` below ``alpha``, ``Y`` in ``[alpha, beta)`` reflects
to some ``Y'`` below ``alpha`` by a map fixing ``X``.

Under ``exact`` semantics the universe is ``{0, ..., N}`` and the table is
the true relation. Under ``relativized`` semantics the quantifiers range
over the universe, and ``Y'`` may also use a pool of fresh natural numbers
placed above every finite element of the universe.
"""
from __future__ import annotations
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import get_settings
from ..core.dilator import Dilator, enumerate_trace
from ..domain import Semantics
from ..errors import ArityError, InfiniteFiberError, NotNormalError, UniverseError
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..schemas import TableHeader
from ..terms.term import Representation
from ..terms.values import represent

logger = logging.getLogger(__name__)

# (position, sigma, argument positions)
Fact = Tuple[int, object, Tuple[int, ...]]
# (<=_1 pairs by position, representation facts)
Diagram = Tuple[FrozenSet[Tuple[int, int]], FrozenSet[Fact]]


def _is_initial_segment(universe: Sequence[ExtendedBase]) -> bool:
    return all(u.is_finite and u.to_int() == i for i, u in enumerate(universe))


def _trace_is_empty(d: Dilator) -> bool:
    limit = get_settings().ARITY_LIMIT
    if d.bound is not None:
        limit = min(limit, d.bound)
    try:
        return not enumerate_trace(d, limit)
    except (InfiniteFiberError, ArityError):
        return False


@dataclass(frozen=True)
class PatternStructure:
    """A finite universe with its representation relations.

    ``pool`` holds the fresh natural numbers a relativized search may use;
    ``reps`` maps every element of the universe and the pool to its
    representation, or to None for trace-empty dilators.
    """

    dilator: Dilator
    universe: Tuple[ExtendedBase, ...]
    semantics: Semantics
    padding: int
    pool: Tuple[ExtendedBase, ...]
    reps: Mapping[ExtendedBase, Optional[Representation]] = field(compare=False, repr=False)

    def __contains__(self, x: object) -> bool:
        return x in self.reps and x not in self.pool

    def below(self, alpha: ExtendedBase) -> List[ExtendedBase]:
        return [u for u in self.universe if u < alpha]

    def header(self) -> TableHeader:
        return TableHeader(
            dilator=self.dilator.name,
            semantics=self.semantics,
            universe=[str(u) for u in self.universe],
            padding=self.padding,
        )


def pattern_structure(
    d: Dilator,
    universe: Iterable[BaseLike],
    semantics: Optional[Semantics] = None,
    padding: Optional[int] = None,
) -> PatternStructure:
    """Build a structure; the semantics defaults to exact on initial segments."""
    elements = tuple(sorted({as_base(u) for u in universe}))
    cap = get_settings().MAX_UNIVERSE
    if len(elements) > cap:
        raise UniverseError(f"universe of {len(elements)} elements exceeds the cap of {cap}")
    segment = _is_initial_segment(elements)
    if semantics is None:
        semantics = Semantics.exact if segment and not padding else Semantics.relativized
    if semantics is Semantics.exact:
        if not segment:
            raise UniverseError("exact semantics needs a universe of the form 0..N")
        if padding:
            raise UniverseError("exact semantics takes no padding")
        padding = 0
    elif padding is None:
        padding = len(elements)
    if padding < 0:
        raise UniverseError(f"padding must be non-negative, got {padding}")

    finite = [u.to_int() for u in elements if u.is_finite]
    first_fresh = max(finite) + 1 if finite else 0
    pool = tuple(ExtendedBase.plain(first_fresh + i) for i in range(padding))

    if d.normality is None:
        if not _trace_is_empty(d):
            raise NotNormalError(f"{d.name} is neither normal nor trace-empty")
        reps: Dict[ExtendedBase, Optional[Representation]] = {x: None for x in elements + pool}
    else:
        reps = {x: represent(d, x) for x in elements + pool}
    logger.debug(
        "structure for %s: %d elements, pool of %d, %s semantics",
        d.name, len(elements), len(pool), semantics,
    )
    return PatternStructure(d, elements, semantics, padding, pool, reps)


@dataclass
class Leq1Table:
    """The ``<=_1`` verdicts of a structure for every pair ``alpha <= beta``."""

    structure: PatternStructure
    verdicts: Dict[Tuple[ExtendedBase, ExtendedBase], bool]
    criterion: bool = False

    def holds(self, alpha: BaseLike, beta: BaseLike) -> bool:
        alpha, beta = as_base(alpha), as_base(beta)
        if alpha == beta:
            return True
        if beta < alpha:
            return False
        key = (alpha, beta)
        if key not in self.verdicts:
            raise UniverseError(f"{alpha} or {beta} is outside the universe")
        return self.verdicts[key]

    def pairs(self) -> Iterator[Tuple[ExtendedBase, ExtendedBase, bool]]:
        """All ``(alpha, beta, verdict)`` with ``alpha <= beta``, ordered by ``beta`` then ``alpha``."""
        for beta in self.structure.universe:
            for alpha in self.structure.universe:
                if beta < alpha:
                    break
                yield alpha, beta, self.holds(alpha, beta)

    def related(self) -> List[Tuple[ExtendedBase, ExtendedBase]]:
        return [(a, b) for a, b, ok in self.pairs() if ok and a != b]


class _Reflector:
    """Decides ``alpha <=_1 beta`` once every pair with a smaller right side is known."""

    def __init__(self, structure: PatternStructure, criterion: bool):
        self.structure = structure
        self.criterion = criterion
        self.verdicts: Dict[Tuple[ExtendedBase, ExtendedBase], bool] = {}
        self.memo: Dict[tuple, bool] = {}
        self.candidates = tuple(sorted(structure.universe + structure.pool))

    def leq1(self, a: ExtendedBase, b: ExtendedBase) -> bool:
        if a == b:
            return True
        if b < a or a in self.structure.pool or b in self.structure.pool:
            return False
        return self.verdicts[(a, b)]

    def diagram(self, elements: Sequence[ExtendedBase]) -> Diagram:
        position = {z: i for i, z in enumerate(elements)}
        pairs = frozenset(
            (i, j)
            for i, j in combinations(range(len(elements)), 2)
            if self.leq1(elements[i], elements[j])
        )
        facts = set()
        for i, z in enumerate(elements):
            rep = self.structure.reps[z]
            if rep is not None and all(a in position for a in rep.args):
                facts.add((i, rep.sigma, tuple(position[a] for a in rep.args)))
        return pairs, frozenset(facts)

    def matches(self, source: Diagram, target: Diagram) -> bool:
        if self.criterion:
            return source[0] == target[0] and source[1] <= target[1]
        return source == target

    def reflects(self, alpha: ExtendedBase, xs: Tuple[ExtendedBase, ...], ys: Tuple[ExtendedBase, ...]) -> bool:
        """Is there ``Y'`` below ``alpha`` and above ``xs`` with ``xs + Y'`` like ``xs + ys``?"""
        key = (alpha, xs, self.diagram(xs + ys))
        if key in self.memo:
            return self.memo[key]
        floor = xs[-1] if xs else None
        room = [c for c in self.candidates if c < alpha and (floor is None or floor < c)]
        sources = [self.diagram(xs + ys[:k]) for k in range(len(ys) + 1)]
        found = self._extend(xs, (), room, sources)
        self.memo[key] = found
        return found

    def _extend(self, xs, chosen, room, sources) -> bool:
        k = len(chosen)
        if k == len(sources) - 1:
            return True
        for i, c in enumerate(room):
            if len(room) - i < len(sources) - 1 - k:
                return False
            image = chosen + (c,)
            if self.matches(sources[k + 1], self.diagram(xs + image)):
                if self._extend(xs, image, room[i + 1:], sources):
                    return True
        return False

    def decide(self, alpha: ExtendedBase, beta: ExtendedBase) -> bool:
        below = self.structure.below(alpha)
        window = [u for u in self.structure.universe if not u < alpha and u < beta]
        for size in range(1, len(window) + 1):
            for ys in combinations(window, size):
                for xsize in range(len(below), -1, -1):
                    for xs in combinations(below, xsize):
                        if not self.reflects(alpha, xs, ys):
                            return False
        return True


def _compute(structure: PatternStructure, criterion: bool, workers: Optional[int]) -> Leq1Table:
    workers = workers or get_settings().WORKERS
    reflector = _Reflector(structure, criterion)
    for beta in structure.universe:
        lower = structure.below(beta)
        if workers > 1 and len(lower) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda a: reflector.decide(a, beta), lower))
        else:
            results = [reflector.decide(a, beta) for a in lower]
        for alpha, ok in zip(lower, results):
            reflector.verdicts[(alpha, beta)] = ok
        reflector.verdicts[(beta, beta)] = True
        logger.debug("row %s done: %d of %d below are <=_1", beta, sum(results), len(lower))
    return Leq1Table(structure, reflector.verdicts, criterion)


def leq1_table(structure: PatternStructure, workers: Optional[int] = None) -> Leq1Table:
    """``<=_1`` with full L_D-isomorphisms."""
    return _compute(structure, False, workers)


def leq1_criterion(structure: PatternStructure, workers: Optional[int] = None) -> Leq1Table:
    """``<=_1`` with ``{<=, <=_1}``-isomorphisms that only carry representation facts forward."""
    return _compute(structure, True, workers)
