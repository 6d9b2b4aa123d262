"""Terms ``(sigma ; g0, ..., g_{n-1} ; base)`` of the extension of a dilator to all ordinals."""
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Optional, Sequence, Tuple

from ..core.dilator import Dilator, NormalityData, is_trace
from ..core.morphisms import Morphism, inclusion_pattern
from ..domain import Ordering
from ..errors import EmbeddingError, NotNormalError, PresentationError, TermError
from ..ordinals.cnf import ExtendedBase, Ordinal, ZERO, BaseLike, as_base
from ..ordinals.grammar import (
    parse_representation_parts,
    parse_term_parts,
    render_representation,
    render_term,
)

logger = logging.getLogger(__name__)


def _check_increasing(args: Sequence[ExtendedBase]) -> None:
    for a, b in zip(args, args[1:]):
        if not a < b:
            raise TermError(f"arguments {', '.join(map(str, args))} are not strictly increasing")


@dataclass(frozen=True)
class Representation:
    """A base-free term ``(sigma ; g0, ..., g_{n-1})``."""

    sigma: Ordinal
    args: Tuple[ExtendedBase, ...] = ()

    def __post_init__(self) -> None:
        _check_increasing(self.args)

    @classmethod
    def parse(cls, text: str) -> "Representation":
        sigma, args = parse_representation_parts(text)
        return cls(sigma, tuple(args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def last(self) -> Optional[ExtendedBase]:
        return self.args[-1] if self.args else None

    def __str__(self) -> str:
        return render_representation(self.sigma, self.args)


@dataclass(frozen=True)
class DilatorTerm:
    sigma: Ordinal
    args: Tuple[ExtendedBase, ...]
    base: ExtendedBase

    def __post_init__(self) -> None:
        _check_increasing(self.args)
        if self.args and not self.args[-1] < self.base:
            raise TermError(f"argument {self.args[-1]} is not below the base {self.base}")

    @classmethod
    def parse(cls, text: str) -> "DilatorTerm":
        sigma, args, base = parse_term_parts(text)
        return cls(sigma, tuple(args), base)

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return render_term(self.sigma, self.args, self.base)


def make_term(d: Dilator, sigma: Ordinal, args: Sequence[BaseLike], base: BaseLike) -> DilatorTerm:
    """A term whose constructor is checked against the trace of ``d``."""
    args = tuple(as_base(a) for a in args)
    d.check_arity(len(args))
    if not is_trace(d, sigma, len(args)):
        raise TermError(f"({sigma}, {len(args)}) is not in the trace of {d.name}")
    return DilatorTerm(sigma, args, as_base(base))


def check_term(d: Dilator, t: DilatorTerm) -> DilatorTerm:
    return make_term(d, t.sigma, t.args, t.base)


@lru_cache(maxsize=65536)
def _pushforward(d: Dilator, sigma: Ordinal, pattern: Morphism) -> Ordinal:
    return d.act(pattern, sigma)


def term_compare(d: Dilator, s: DilatorTerm, t: DilatorTerm) -> Ordering:
    """Compare by pushing both constructors forward into ``D(|c u d|)``."""
    if s.base != t.base:
        raise TermError(f"cannot compare terms over {s.base} and {t.base}")
    if s == t:
        return Ordering.equal
    union = tuple(sorted(set(s.args) | set(t.args)))
    d.check_arity(len(union))
    a = _pushforward(d, s.sigma, inclusion_pattern(s.args, union))
    b = _pushforward(d, t.sigma, inclusion_pattern(t.args, union))
    if a == b:
        raise PresentationError(f"distinct terms {s} and {t} push forward to the same {a}")
    return Ordering.less if a < b else Ordering.greater


def term_less(d: Dilator, s: DilatorTerm, t: DilatorTerm) -> bool:
    return term_compare(d, s, t) is Ordering.less


@dataclass(frozen=True)
class Embedding:
    """A strictly increasing map between bases given by finitely many points and a tail.

    Explicit ``points`` take precedence; any other ``x >= start`` goes to
    ``target + (x - start)``; everything below ``start`` is fixed.
    """

    domain: ExtendedBase
    codomain: ExtendedBase
    points: Tuple[Tuple[ExtendedBase, ExtendedBase], ...] = ()
    start: Optional[ExtendedBase] = None
    target: Optional[ExtendedBase] = None

    @classmethod
    def identity(cls, domain: BaseLike, codomain: Optional[BaseLike] = None) -> "Embedding":
        domain = as_base(domain)
        return cls(domain, as_base(codomain) if codomain is not None else domain)

    @classmethod
    def shift(cls, domain: BaseLike, codomain: BaseLike, start: BaseLike, target: BaseLike) -> "Embedding":
        start, target = as_base(start), as_base(target)
        if target < start:
            raise EmbeddingError(f"shift from {start} to {target} is not increasing")
        return cls(as_base(domain), as_base(codomain), (), start, target)

    def __call__(self, x: BaseLike) -> ExtendedBase:
        x = as_base(x)
        if not x < self.domain:
            raise EmbeddingError(f"{x} is outside the domain {self.domain}")
        image = dict(self.points).get(x)
        if image is None:
            if self.start is not None and not x < self.start:
                image = self.target + x.left_subtract(self.start)
            else:
                image = x
        if not image < self.codomain:
            raise EmbeddingError(f"{x} maps to {image}, outside the codomain {self.codomain}")
        return image

    def __str__(self) -> str:
        parts = [f"{a}->{b}" for a, b in self.points]
        if self.start is not None:
            parts.append(f"x>={self.start}: x->{self.target}+(x-{self.start})")
        return f"{self.domain}->{self.codomain} [{'; '.join(parts) or 'identity'}]"


def term_map(d: Dilator, f: Embedding, t: DilatorTerm) -> DilatorTerm:
    """``D(f)(t)``: the constructor stays, the arguments move pointwise."""
    if t.base != f.domain:
        raise EmbeddingError(f"{t} does not live over the domain {f.domain} of the embedding")
    images = tuple(f(a) for a in t.args)
    for a, b in zip(images, images[1:]):
        if not a < b:
            raise EmbeddingError(f"embedding is not increasing on the arguments of {t}")
    return DilatorTerm(t.sigma, images, f.codomain)


def term_support(t: DilatorTerm) -> FrozenSet[ExtendedBase]:
    return frozenset(t.args)


def normality_of(d: Dilator, mu: Optional[NormalityData] = None) -> NormalityData:
    mu = mu or d.normality
    if mu is None:
        raise NotNormalError(f"{d.name} carries no normality data")
    return mu


def mu_bar(d: Dilator, alpha: BaseLike, gamma: BaseLike, mu: Optional[NormalityData] = None) -> DilatorTerm:
    """``(mu_1(0) ; gamma ; alpha)``."""
    alpha, gamma = as_base(alpha), as_base(gamma)
    root = normality_of(d, mu).root
    if not gamma < alpha:
        raise TermError(f"{gamma} is not below {alpha}")
    return DilatorTerm(root, (gamma,), alpha)


def representation(d: Dilator, t: DilatorTerm) -> Representation:
    """The base-free form of ``t``; only meaningful for normal dilators."""
    normality_of(d)
    return Representation(t.sigma, t.args)


def reattach(r: Representation, base: BaseLike) -> DilatorTerm:
    base = as_base(base)
    if r.args and not r.args[-1] < base:
        raise TermError(f"{r} cannot be placed over {base}")
    return DilatorTerm(r.sigma, r.args, base)


def element_to_term(d: Dilator, n: int, sigma: Ordinal) -> DilatorTerm:
    """``sigma`` in ``D(n)`` as a term over ``n``: its support and its pullback along it."""
    supp = d.support(n, sigma)
    en = Morphism(tuple(supp), n)
    core = d.pullback(en, sigma)
    if core is None:
        raise PresentationError(f"{sigma} in {d.name}({n}) is not in the range of its support")
    return DilatorTerm(core, tuple(ExtendedBase.plain(k) for k in supp), ExtendedBase.plain(n))


def term_to_element(d: Dilator, t: DilatorTerm) -> Ordinal:
    if not t.base.is_finite:
        raise TermError(f"{t} does not live over a natural number")
    f = Morphism(tuple(a.to_int() for a in t.args), t.base.to_int())
    return d.act(f, t.sigma)


def nullary(sigma: Ordinal, base: BaseLike = ZERO) -> DilatorTerm:
    return DilatorTerm(sigma, (), as_base(base))
