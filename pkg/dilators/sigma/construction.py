"""The normalization SigmaD, the embedding xi and the star/substitution calculus."""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Optional

from ..core.combinators import SigmaOf
from ..core.dilator import Dilator, NormalityData
from ..core.validate import validate_predilator
from ..domain import Ordering, OrdinalKind
from ..errors import PresentationError, SubstitutionError, TermError
from ..ordinals.cnf import ExtendedBase, Ordinal, BaseLike, as_base
from ..terms import order
from ..terms.term import DilatorTerm, Representation, normality_of, reattach, term_compare

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SigmaPresentation:
    underlying: Dilator
    derived: SigmaOf

    @property
    def normality(self) -> NormalityData:
        return self.derived.normality

    def value(self, n: int) -> Ordinal:
        return self.derived.value(n)

    def decompose(self, n: int, alpha: Ordinal):
        return self.derived.decompose(n, alpha)

    def compose(self, k: int, beta: Optional[Ordinal]) -> Ordinal:
        return self.derived.compose(k, beta)


def sigma_dilator(d: Dilator, check_bound: Optional[int] = None) -> SigmaPresentation:
    """Wrap ``d`` into SigmaD; with ``check_bound`` the laws of ``d`` are validated first."""
    if check_bound is not None:
        report = validate_predilator(d, check_bound)
        if not report.passed:
            failed = ", ".join(law.law for law in report.failures())
            raise PresentationError(f"{d.name} violates {failed}")
    return SigmaPresentation(d, SigmaOf(d))


def xi_embed(d: Dilator, alpha: BaseLike, t: DilatorTerm) -> DilatorTerm:
    """``(SigmaD(n) + 1 + sigma ; g0, ..., g_{n-1}, alpha ; alpha + 1)``."""
    alpha = as_base(alpha)
    if t.base != alpha:
        raise TermError(f"{t} does not live over {alpha}")
    s = SigmaOf(d)
    return DilatorTerm(s.compose(t.arity, t.sigma), t.args + (alpha,), alpha.successor())


def star(e: Dilator, r: Representation) -> ExtendedBase:
    """``sup { g_i + 1 }`` over all but the last argument."""
    normality_of(e)
    if not r.args:
        raise TermError(f"{r} lies below E(0) and has no star")
    head = r.args[:-1]
    return max((a.successor() for a in head), default=ExtendedBase.plain(0))


def substitute_last(e: Dilator, r: Representation, delta: BaseLike) -> Representation:
    delta = as_base(delta)
    bound = star(e, r)
    if delta < bound:
        raise SubstitutionError(f"{delta} is below the star {bound} of {r}")
    return Representation(r.sigma, r.args[:-1] + (delta,))


def window_value(e: Dilator, rho: BaseLike) -> Representation:
    """``E(rho)`` as the representation ``(mu_1(0) ; rho)``."""
    return Representation(normality_of(e).root, (as_base(rho),))


def _base_above(*reps: Representation) -> ExtendedBase:
    args = [a for r in reps for a in r.args]
    return max(args).successor() if args else ExtendedBase.plain(0)


def rep_compare(e: Dilator, r: Representation, s: Representation) -> Ordering:
    base = _base_above(r, s)
    return term_compare(e, reattach(r, base), reattach(s, base))


def rep_successor(e: Dilator, r: Representation) -> Representation:
    """``r + 1``; it is at most ``E(last + 1)``, so base ``last + 2`` holds it."""
    base = r.last.successor().successor() if r.args else ExtendedBase.plain(1)
    nxt = order.successor(e, reattach(r, base))
    if nxt is None:
        raise PresentationError(f"{r} has no successor under {e.name}")
    return Representation(nxt.sigma, nxt.args)


def rep_classify(e: Dilator, r: Representation) -> OrdinalKind:
    return order.classify(e, reattach(r, _base_above(r)))


def in_window(e: Dilator, r: Representation, rho: BaseLike) -> bool:
    """``E(rho) <= r < E(rho + 1)``."""
    rho = as_base(rho)
    return (
        rep_compare(e, window_value(e, rho), r) is not Ordering.greater
        and rep_compare(e, r, window_value(e, rho.successor())) is Ordering.less
    )
