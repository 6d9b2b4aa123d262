"""The order of ordinals in ``[E(W), E(W + 1))`` written without their final ``W``.

``<sigma ; g0, ..., g_{n-1}>`` stands for ``(sigma ; g0, ..., g_{n-1}, W)``,
so it is compared as a term over ``W + 1``.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, List, Optional, Tuple

from ..config import get_settings
from ..core.dilator import Dilator, is_trace
from ..domain import Ordering
from ..errors import ArityError, SubstitutionError, TermError, UniverseError
from ..ordinals.cnf import ExtendedBase, Ordinal, OMEGA_BASE, BaseLike, as_base
from ..ordinals.grammar import parse_dd_parts, render_dd
from ..terms.term import DilatorTerm, Representation, term_compare

_TOP = OMEGA_BASE.successor()


@dataclass(frozen=True)
class DDElement:
    sigma: Ordinal
    args: Tuple[ExtendedBase, ...] = ()

    def __post_init__(self) -> None:
        for a in self.args:
            if not a.is_plain:
                raise TermError(f"argument {a} of {self} is not below W")
        for a, b in zip(self.args, self.args[1:]):
            if not a < b:
                raise TermError(f"arguments of {self} are not strictly increasing")

    @classmethod
    def parse(cls, text: str) -> "DDElement":
        sigma, args = parse_dd_parts(text)
        return cls(sigma, tuple(args))

    @classmethod
    def of(cls, r: Representation) -> "DDElement":
        """Drop the final argument of ``r``."""
        if not r.args:
            raise TermError(f"{r} has no final argument")
        return cls(r.sigma, r.args[:-1])

    @property
    def plus(self) -> ExtendedBase:
        return self.args[-1].successor() if self.args else ExtendedBase.plain(0)

    def at(self, delta: BaseLike) -> Representation:
        """``(sigma ; g0, ..., g_{n-1}, delta)`` for ``delta >= plus``."""
        delta = as_base(delta)
        if delta < self.plus:
            raise SubstitutionError(f"{delta} is below {self.plus} = {self}+")
        return Representation(self.sigma, self.args + (delta,))

    def term(self) -> DilatorTerm:
        return DilatorTerm(self.sigma, self.args + (OMEGA_BASE,), _TOP)

    def __str__(self) -> str:
        return render_dd(self.sigma, self.args)


def dd_contains(d: Dilator, rho: DDElement) -> bool:
    try:
        return is_trace(d, rho.sigma, len(rho.args) + 1)
    except ArityError:
        return False


def dd_check(d: Dilator, rho: DDElement) -> DDElement:
    if not dd_contains(d, rho):
        raise TermError(f"({rho.sigma}, {len(rho.args) + 1}) is not in the trace of {d.name}")
    return rho


def dd_compare(d: Dilator, rho: DDElement, other: DDElement) -> Ordering:
    dd_check(d, rho)
    dd_check(d, other)
    return term_compare(d, rho.term(), other.term())


def dd_members(
    d: Dilator,
    eta: BaseLike,
    bound: Optional[int] = None,
    candidates: Optional[Iterable[BaseLike]] = None,
) -> List[DDElement]:
    """Elements of ``D(eta)``: constructors of arity at most ``bound`` with all
    arguments below ``eta``, drawn from ``candidates`` when given. Sorted."""
    eta = as_base(eta)
    if candidates is None:
        if not eta.is_finite:
            raise UniverseError(f"enumerating below the infinite {eta} needs a candidate set")
        pool = [ExtendedBase.plain(i) for i in range(eta.to_int())]
    else:
        pool = sorted({as_base(c) for c in candidates if as_base(c) < eta})
    limit = get_settings().ARITY_LIMIT if bound is None else bound
    if d.bound is not None:
        limit = min(limit, d.bound)
    found = []
    for n in range(1, limit + 1):
        constructors = [s for s in d.elements(n) if d.support(n, s) == tuple(range(n))]
        for sigma in constructors:
            for args in combinations(pool, n - 1):
                found.append(DDElement(sigma, args))
    return sorted(found, key=cmp_to_key(lambda a, b: int(dd_compare(d, a, b))))
