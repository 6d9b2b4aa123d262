"""Ordinal values of normal dilators and their representations.

Finite values go through the natural isomorphism ``D(n) ~ D-bar(n)``; the
combinators Identity, ``Sum(Const(c), B)`` and ``SigmaOf(Const(c))`` with
finite ``c`` also have closed forms at infinite values, including values
above the symbolic ``W``.
"""
from __future__ import annotations
from functools import singledispatch

from ..core.combinators import Const, Identity, SigmaOf, Sum
from ..core.dilator import Dilator
from ..core.morphisms import Morphism
from ..errors import NotRepresentableError
from ..ordinals.cnf import ExtendedBase, Ordinal, BaseLike, as_base
from .term import Representation, normality_of


def _finite_represent(e: Dilator, x: int) -> Representation:
    sigma = Ordinal.of(x)
    # mu_m is injective, so E(x + 1) > x
    for m in range(x + 2):
        if e.bound is not None and m > e.bound:
            break
        if sigma < e.value(m):
            supp = e.support(m, sigma)
            core = e.pullback(Morphism(tuple(supp), m), sigma)
            if core is None:
                break
            return Representation(core, tuple(ExtendedBase.plain(k) for k in supp))
    raise NotRepresentableError(f"{x} is beyond the presentation of {e.name}")


def represent(e: Dilator, x: BaseLike) -> Representation:
    """The unique ``(sigma ; g0, ...)`` with value ``x``."""
    x = as_base(x)
    normality_of(e)
    if x.is_finite:
        return _finite_represent(e, x.to_int())
    return _represent_infinite(e, x)


@singledispatch
def _represent_infinite(e: Dilator, x: ExtendedBase) -> Representation:
    raise NotRepresentableError(f"no closed form for values of {e.name} at {x}")


@_represent_infinite.register
def _(e: Identity, x: ExtendedBase) -> Representation:
    return Representation(Ordinal(), (x,))


@_represent_infinite.register
def _(e: Sum, x: ExtendedBase) -> Representation:
    if not isinstance(e.left, Const):
        raise NotRepresentableError(f"no closed form for values of {e.name}")
    c = ExtendedBase.plain(e.left.nu)
    if x < c:
        return Representation(x.ordinal(), ())
    inner = represent(e.right, x.left_subtract(c))
    return Representation(e.left.nu + inner.sigma, inner.args)


@_represent_infinite.register
def _(e: SigmaOf, x: ExtendedBase) -> Representation:
    width = _const_width(e)
    q, r = x.divmod_nat(width)
    return Representation(Ordinal.of(r), (q,))


def _const_width(e: SigmaOf) -> int:
    inner = e.underlying
    if not isinstance(inner, Const) or not inner.nu.is_finite:
        raise NotRepresentableError(f"no closed form for values of {e.name}")
    return 1 + inner.nu.to_int()


def evaluate(e: Dilator, r: Representation) -> ExtendedBase:
    """The ordinal that ``r`` denotes."""
    normality_of(e)
    if all(a.is_finite for a in r.args):
        n = r.args[-1].to_int() + 1 if r.args else 0
        e.check_arity(n)
        value = e.act(Morphism(tuple(a.to_int() for a in r.args), n), r.sigma)
        return ExtendedBase.plain(value)
    return _evaluate_infinite(e, r)


@singledispatch
def _evaluate_infinite(e: Dilator, r: Representation) -> ExtendedBase:
    raise NotRepresentableError(f"no closed form for {r} under {e.name}")


@_evaluate_infinite.register
def _(e: Identity, r: Representation) -> ExtendedBase:
    return r.args[0]


@_evaluate_infinite.register
def _(e: Sum, r: Representation) -> ExtendedBase:
    if not isinstance(e.left, Const):
        raise NotRepresentableError(f"no closed form for {r} under {e.name}")
    c = e.left.nu
    inner = Representation(r.sigma.left_subtract(c), r.args)
    return ExtendedBase.plain(c) + evaluate(e.right, inner)


@_evaluate_infinite.register
def _(e: SigmaOf, r: Representation) -> ExtendedBase:
    width = _const_width(e)
    return r.args[0].lmul_nat(width) + r.sigma


def value_at(e: Dilator, delta: BaseLike) -> ExtendedBase:
    """``E(delta)``, the value of ``(mu_1(0) ; delta)``."""
    return evaluate(e, Representation(normality_of(e).root, (as_base(delta),)))
