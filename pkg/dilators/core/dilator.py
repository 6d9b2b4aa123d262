"""The presentation interface shared by finite tables and combinators."""
from __future__ import annotations
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import get_settings
from ..errors import ArityError, InfiniteFiberError, PresentationError
from ..ordinals.cnf import Ordinal
from .morphisms import Morphism, coface, factor_cofaces

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceElement:
    sigma: Ordinal
    arity: int

    @property
    def key(self) -> Tuple[int, Ordinal]:
        return (self.arity, self.sigma)

    def __str__(self) -> str:
        return f"({self.sigma}, {self.arity})"


@dataclass(frozen=True, eq=False)
class NormalityData:
    """``mu_n : n -> D(n)``, given either by a rule or by an explicit table."""

    rule: Callable[[int, int], Ordinal]
    table: Optional[Mapping[int, Tuple[int, ...]]] = None

    @classmethod
    def from_table(cls, table: Mapping[int, Sequence[int]]) -> "NormalityData":
        frozen = {n: tuple(row) for n, row in table.items()}

        def rule(n: int, k: int) -> Ordinal:
            try:
                return Ordinal.of(frozen[n][k])
            except (KeyError, IndexError) as exc:
                raise ArityError(f"mu_{n}({k}) is not tabulated") from exc

        return cls(rule, frozen)

    def mu(self, n: int, k: int) -> Ordinal:
        if not 0 <= k < n:
            raise ArityError(f"mu_{n}({k}) is undefined")
        return self.rule(n, k)

    @property
    def root(self) -> Ordinal:
        """``mu_1(0)``, the constructor of every value ``E(rho)``."""
        return self.mu(1, 0)


class Dilator(ABC):
    """A functor on finite ordinals with supports.

    Subclasses implement either :meth:`coface` (tables) or :meth:`act`
    (combinators with closed forms); the default of each is written in
    terms of the other.
    """

    # set by every presentation: a field on tables, a property on combinators
    bound: Optional[int]
    name: str

    @abstractmethod
    def value(self, n: int) -> Ordinal:
        ...

    @abstractmethod
    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        ...

    @property
    def normality(self) -> Optional[NormalityData]:
        return None

    def check_arity(self, n: int) -> None:
        if n < 0 or (self.bound is not None and n > self.bound):
            raise ArityError(f"arity {n} exceeds the bound {self.bound} of {self.name}")

    def contains(self, n: int, sigma: Ordinal) -> bool:
        return sigma < self.value(n)

    def coface(self, n: int, i: int, sigma: Ordinal) -> Ordinal:
        return self.act(coface(n, i), sigma)

    def act(self, f: Morphism, sigma: Ordinal) -> Ordinal:
        self.check_arity(f.codomain)
        for n, i in factor_cofaces(f):
            sigma = self.coface(n, i, sigma)
        return sigma

    def elements(self, n: int) -> Iterator[Ordinal]:
        size = self.value(n)
        if not size.is_finite:
            raise InfiniteFiberError(f"{self.name}({n}) = {size} is infinite")
        return (Ordinal.of(i) for i in range(size.to_int()))

    def is_finite(self, n: int) -> bool:
        return self.value(n).is_finite

    def pullback(self, f: Morphism, sigma: Ordinal) -> Optional[Ordinal]:
        """The ``tau`` with ``D(f)(tau) == sigma``, or None outside the range."""
        for tau in self.elements(f.domain):
            image = self.act(f, tau)
            if image == sigma:
                return tau
            if sigma < image:
                return None
        return None

    def __str__(self) -> str:
        return self.name


def apply_morphism(
    d: Dilator, f: Morphism, sigma: Ordinal, decomposition: Optional[str] = None
) -> Ordinal:
    """``D(f)(sigma)``.

    With ``decomposition`` set to ``"ascending"`` or ``"descending"`` the
    action is composed from coface actions along that factorization of ``f``;
    otherwise the presentation's own action is used.
    """
    d.check_arity(f.codomain)
    if not d.contains(f.domain, sigma):
        raise ArityError(f"{sigma} is not an element of {d.name}({f.domain})")
    if decomposition is None:
        return d.act(f, sigma)
    for n, i in factor_cofaces(f, descending=decomposition == "descending"):
        sigma = d.coface(n, i, sigma)
    return sigma


def is_trace(d: Dilator, sigma: Ordinal, n: int) -> bool:
    return d.contains(n, sigma) and d.support(n, sigma) == tuple(range(n))


def enumerate_trace(d: Dilator, bound: int) -> List[TraceElement]:
    found = []
    for n in range(bound + 1):
        d.check_arity(n)
        for sigma in d.elements(n):
            if d.support(n, sigma) == tuple(range(n)):
                found.append(TraceElement(sigma, n))
    logger.debug("trace of %s up to %d: %d elements", d.name, bound, len(found))
    return sorted(found, key=lambda t: t.key)


@dataclass(frozen=True, eq=False)
class FiniteTable(Dilator):
    """D(0..bound) with explicit coface maps and supports; all fibers finite."""

    bound: int
    values: Tuple[int, ...]
    cofaces: Mapping[Tuple[int, int], Tuple[int, ...]]
    supports: Mapping[int, Tuple[Tuple[int, ...], ...]]
    mu: Optional[Mapping[int, Tuple[int, ...]]] = None
    name: str = "table"
    _normality: Optional[NormalityData] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.values) != self.bound + 1:
            raise PresentationError(f"expected {self.bound + 1} values, got {len(self.values)}")
        for n in range(self.bound):
            for i in range(n + 1):
                row = self.cofaces.get((n, i))
                if row is None or len(row) != self.values[n]:
                    raise PresentationError(f"coface ({n},{i}) must list {self.values[n]} images")
                if any(not 0 <= x < self.values[n + 1] for x in row):
                    raise PresentationError(f"coface ({n},{i}) leaves {self.name}({n + 1})")
        for n in range(self.bound + 1):
            rows = self.supports.get(n, ())
            if len(rows) != self.values[n]:
                raise PresentationError(f"supports of {self.name}({n}) must list {self.values[n]} sets")
        if self.mu is not None:
            object.__setattr__(self, "_normality", NormalityData.from_table(self.mu))

    def value(self, n: int) -> Ordinal:
        self.check_arity(n)
        return Ordinal.of(self.values[n])

    def _index(self, n: int, sigma: Ordinal) -> int:
        s = sigma.to_int() if sigma.is_finite else -1
        if not 0 <= s < self.values[n]:
            raise ArityError(f"{sigma} is not an element of {self.name}({n})")
        return s

    def coface(self, n: int, i: int, sigma: Ordinal) -> Ordinal:
        if n >= self.bound:
            raise ArityError(f"no coface out of {self.name}({n}); the bound is {self.bound}")
        return Ordinal.of(self.cofaces[(n, i)][self._index(n, sigma)])

    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        self.check_arity(n)
        return tuple(self.supports[n][self._index(n, sigma)])

    @property
    def normality(self) -> Optional[NormalityData]:
        return self._normality


def tabulate(d: Dilator, bound: int, name: Optional[str] = None) -> FiniteTable:
    """Freeze a presentation with finite fibers into a :class:`FiniteTable`."""
    values = []
    for n in range(bound + 1):
        d.check_arity(n)
        size = d.value(n)
        if not size.is_finite:
            raise InfiniteFiberError(f"{d.name}({n}) = {size} cannot be tabulated")
        values.append(size.to_int())
    cofaces: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for n in range(bound):
        for i in range(n + 1):
            f = coface(n, i)
            cofaces[(n, i)] = tuple(d.act(f, Ordinal.of(s)).to_int() for s in range(values[n]))
    supports = {
        n: tuple(tuple(d.support(n, Ordinal.of(s))) for s in range(values[n]))
        for n in range(bound + 1)
    }
    mu = None
    if d.normality is not None:
        mu = {n: tuple(d.normality.mu(n, k).to_int() for k in range(n)) for n in range(1, bound + 1)}
    return FiniteTable(bound, tuple(values), cofaces, supports, mu, name or f"table({d.name})")


def effective_bound(d: Dilator, bound: Optional[int] = None) -> int:
    """An explicit bound must fit the presentation; the default is clipped to it."""
    if bound is None:
        bound = get_settings().DEFAULT_BOUND
        if d.bound is not None:
            bound = min(bound, d.bound)
    d.check_arity(bound)
    return bound
