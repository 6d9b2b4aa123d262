"""A refutation-only search for ill-founded term orders.

A term ``t`` over ``alpha`` and an increasing shift ``f : alpha -> alpha``
with ``D(f)(t) < t`` give the infinite descent ``t > D(f)(t) > D(f)^2(t) > ...``.
The search looks for such a pair; failing to find one proves nothing.
"""
from __future__ import annotations
import logging
from typing import List, Optional

from ..config import get_settings
from ..core.dilator import Dilator
from ..domain import Ordering, WfStatus
from ..errors import ArityError, EmbeddingError, NotRepresentableError
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..schemas import WfReport
from ..utils.sampling import derive_rng
from .sampling import random_term
from .term import DilatorTerm, Embedding, term_compare, term_map

logger = logging.getLogger(__name__)

CHAIN_LENGTH = 3


def _shifts(t: DilatorTerm) -> List[Embedding]:
    alpha = t.base
    starts = [ExtendedBase.plain(0)] + list(t.args)
    shifts = []
    for start in starts:
        for target in (start.successor(), start.successor().successor()):
            shifts.append(Embedding.shift(alpha, alpha, start, target))
    return shifts


def _descends(d: Dilator, f: Embedding, t: DilatorTerm) -> Optional[List[DilatorTerm]]:
    chain = [t]
    try:
        for _ in range(CHAIN_LENGTH - 1):
            chain.append(term_map(d, f, chain[-1]))
        if all(term_compare(d, b, a) is Ordering.less for a, b in zip(chain, chain[1:])):
            return chain
    except (EmbeddingError, ArityError):
        return None
    return None


def find_descent(d: Dilator, alpha: BaseLike, budget: Optional[int] = None, seed: Optional[int] = None) -> WfReport:
    settings = get_settings()
    alpha = as_base(alpha)
    budget = settings.WF_BUDGET if budget is None else budget
    seed = settings.DEFAULT_SEED if seed is None else seed
    report = WfReport(dilator=d.name, base=str(alpha), budget=budget, status=WfStatus.unknown)
    if alpha.is_finite:
        # D-bar(n) is isomorphic to the ordinal D(n)
        return report
    rng = derive_rng(seed, f"wf:{d.name}:{alpha}")
    for step in range(budget):
        t = random_term(d, alpha, rng)
        if t is None:
            break
        for f in _shifts(t):
            try:
                chain = _descends(d, f, t)
            except NotRepresentableError:
                chain = None
            if chain is not None:
                logger.info("descending chain for %s over %s after %d steps", d.name, alpha, step + 1)
                report.status = WfStatus.refuted
                report.term = str(t)
                report.embedding = str(f)
                report.chain = [str(c) for c in chain]
                return report
    logger.debug("no descent found for %s over %s within %d steps", d.name, alpha, budget)
    return report
