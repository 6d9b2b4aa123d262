"""Order structure inside ``D-bar(rho)``: least and greatest terms, successors, limits.

Over a natural number base the natural isomorphism with ``D(n)`` answers
everything. Over infinite bases only the combinators have closed forms;
``SigmaOf`` is read window by window: ``E(lambda)`` first, then the image of
``D-bar(lambda)`` under ``xi_lambda``.
"""
from __future__ import annotations
from functools import singledispatch
from typing import Optional

from ..core.combinators import Const, Identity, SigmaOf, Sum
from ..core.dilator import Dilator
from ..domain import OrdinalKind
from ..errors import NotRepresentableError
from ..ordinals.cnf import ExtendedBase, Ordinal, ZERO, BaseLike, as_base
from .term import DilatorTerm, element_to_term, term_to_element


def _finite_least(d: Dilator, n: int) -> Optional[DilatorTerm]:
    return None if d.value(n).is_zero else element_to_term(d, n, ZERO)


def _finite_greatest(d: Dilator, n: int) -> Optional[DilatorTerm]:
    size = d.value(n)
    if size.classify() is not OrdinalKind.successor:
        return None
    return element_to_term(d, n, size.predecessor())


def least(d: Dilator, rho: BaseLike) -> Optional[DilatorTerm]:
    rho = as_base(rho)
    if rho.is_finite:
        return _finite_least(d, rho.to_int())
    return _least(d, rho)


def greatest(d: Dilator, rho: BaseLike) -> Optional[DilatorTerm]:
    rho = as_base(rho)
    if rho.is_finite:
        return _finite_greatest(d, rho.to_int())
    return _greatest(d, rho)


def successor(d: Dilator, t: DilatorTerm) -> Optional[DilatorTerm]:
    """The next term of ``D-bar(t.base)``, or None when ``t`` is the greatest."""
    if t.base.is_finite:
        n = t.base.to_int()
        nxt = term_to_element(d, t).successor()
        return element_to_term(d, n, nxt) if nxt < d.value(n) else None
    return _successor(d, t)


def classify(d: Dilator, t: DilatorTerm) -> OrdinalKind:
    """Whether ``t`` is the least term, a successor or a limit inside its base."""
    if t.base.is_finite:
        return term_to_element(d, t).classify()
    return _classify(d, t)


def _no_closed_form(d: Dilator, rho: ExtendedBase):
    raise NotRepresentableError(f"no closed form for the terms of {d.name} over {rho}")


@singledispatch
def _least(d: Dilator, rho: ExtendedBase) -> Optional[DilatorTerm]:
    _no_closed_form(d, rho)


@singledispatch
def _greatest(d: Dilator, rho: ExtendedBase) -> Optional[DilatorTerm]:
    _no_closed_form(d, rho)


@singledispatch
def _successor(d: Dilator, t: DilatorTerm) -> Optional[DilatorTerm]:
    _no_closed_form(d, t.base)


@singledispatch
def _classify(d: Dilator, t: DilatorTerm) -> OrdinalKind:
    _no_closed_form(d, t.base)


# Const(nu): nullary terms (sigma ;; rho), ordered like sigma

@_least.register
def _(d: Const, rho: ExtendedBase) -> Optional[DilatorTerm]:
    return None if d.nu.is_zero else DilatorTerm(ZERO, (), rho)


@_greatest.register
def _(d: Const, rho: ExtendedBase) -> Optional[DilatorTerm]:
    if d.nu.classify() is not OrdinalKind.successor:
        return None
    return DilatorTerm(d.nu.predecessor(), (), rho)


@_successor.register
def _(d: Const, t: DilatorTerm) -> Optional[DilatorTerm]:
    nxt = t.sigma.successor()
    return DilatorTerm(nxt, (), t.base) if nxt < d.nu else None


@_classify.register
def _(d: Const, t: DilatorTerm) -> OrdinalKind:
    return t.sigma.classify()


# Identity: (0 ; g ; rho) for g < rho, ordered like g

@_least.register
def _(d: Identity, rho: ExtendedBase) -> Optional[DilatorTerm]:
    return DilatorTerm(ZERO, (ExtendedBase.plain(0),), rho)


@_greatest.register
def _(d: Identity, rho: ExtendedBase) -> Optional[DilatorTerm]:
    if rho.classify() is not OrdinalKind.successor:
        return None
    return DilatorTerm(ZERO, (rho.predecessor(),), rho)


@_successor.register
def _(d: Identity, t: DilatorTerm) -> Optional[DilatorTerm]:
    nxt = t.args[0].successor()
    return DilatorTerm(ZERO, (nxt,), t.base) if nxt < t.base else None


@_classify.register
def _(d: Identity, t: DilatorTerm) -> OrdinalKind:
    return t.args[0].classify()


# Sum(A, B): the terms of A-bar(rho), then those of B-bar(rho) shifted by A(n)

def _in_left(d: Sum, t: DilatorTerm) -> bool:
    return t.sigma < d.left.value(t.arity)


def _to_right(d: Sum, t: DilatorTerm) -> DilatorTerm:
    return DilatorTerm(t.sigma.left_subtract(d.left.value(t.arity)), t.args, t.base)


def _from_right(d: Sum, u: Optional[DilatorTerm]) -> Optional[DilatorTerm]:
    if u is None:
        return None
    return DilatorTerm(d.left.value(u.arity) + u.sigma, u.args, u.base)


@_least.register
def _(d: Sum, rho: ExtendedBase) -> Optional[DilatorTerm]:
    first = least(d.left, rho)
    return first if first is not None else _from_right(d, least(d.right, rho))


@_greatest.register
def _(d: Sum, rho: ExtendedBase) -> Optional[DilatorTerm]:
    if least(d.right, rho) is None:
        return greatest(d.left, rho)
    return _from_right(d, greatest(d.right, rho))


@_successor.register
def _(d: Sum, t: DilatorTerm) -> Optional[DilatorTerm]:
    if _in_left(d, t):
        nxt = successor(d.left, t)
        return nxt if nxt is not None else _from_right(d, least(d.right, t.base))
    return _from_right(d, successor(d.right, _to_right(d, t)))


@_classify.register
def _(d: Sum, t: DilatorTerm) -> OrdinalKind:
    if _in_left(d, t):
        return classify(d.left, t)
    kind = classify(d.right, _to_right(d, t))
    if kind is not OrdinalKind.zero:
        return kind
    if least(d.left, t.base) is None:
        return OrdinalKind.zero
    if greatest(d.left, t.base) is not None:
        return OrdinalKind.successor
    return OrdinalKind.limit


# SigmaOf(D): E(lambda) = (0 ; lambda), then xi_lambda(u) for u in D-bar(lambda)

def _window_start(rho: ExtendedBase, lam: ExtendedBase) -> DilatorTerm:
    return DilatorTerm(ZERO, (lam,), rho)


def _xi(d: SigmaOf, u: Optional[DilatorTerm], rho: ExtendedBase) -> Optional[DilatorTerm]:
    if u is None:
        return None
    return DilatorTerm(d.compose(u.arity, u.sigma), u.args + (u.base,), rho)


def _unxi(d: SigmaOf, t: DilatorTerm) -> Optional[DilatorTerm]:
    """The ``u`` with ``xi(u) == t``, or None when ``t`` starts its window."""
    k, beta = d.decompose(t.arity, t.sigma)
    if beta is None:
        return None
    return DilatorTerm(beta, t.args[:-1], t.args[-1])


def _next_window(rho: ExtendedBase, lam: ExtendedBase) -> Optional[DilatorTerm]:
    nxt = lam.successor()
    return _window_start(rho, nxt) if nxt < rho else None


@_least.register
def _(d: SigmaOf, rho: ExtendedBase) -> Optional[DilatorTerm]:
    return None if rho.is_zero else _window_start(rho, ExtendedBase.plain(0))


@_greatest.register
def _(d: SigmaOf, rho: ExtendedBase) -> Optional[DilatorTerm]:
    if rho.classify() is not OrdinalKind.successor:
        return None
    lam = rho.predecessor()
    if least(d.underlying, lam) is None:
        return _window_start(rho, lam)
    return _xi(d, greatest(d.underlying, lam), rho)


@_successor.register
def _(d: SigmaOf, t: DilatorTerm) -> Optional[DilatorTerm]:
    lam = t.args[-1]
    u = _unxi(d, t)
    nxt = least(d.underlying, lam) if u is None else successor(d.underlying, u)
    if nxt is not None:
        return _xi(d, nxt, t.base)
    return _next_window(t.base, lam)


@_classify.register
def _(d: SigmaOf, t: DilatorTerm) -> OrdinalKind:
    lam = t.args[-1]
    u = _unxi(d, t)
    if u is not None:
        if u == least(d.underlying, lam):
            return OrdinalKind.successor
        return classify(d.underlying, u)
    kind = lam.classify()
    if kind is not OrdinalKind.successor:
        return kind
    previous = lam.predecessor()
    if least(d.underlying, previous) is None or greatest(d.underlying, previous) is not None:
        return OrdinalKind.successor
    return OrdinalKind.limit
