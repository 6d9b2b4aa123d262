"""Building collapses: the closed form for normal dilators and the search
``theta(gamma) = min { delta < alpha | delta >= xi(gamma)* and delta <=_1 xi(gamma)[delta] }``."""
from __future__ import annotations
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional

from ..config import get_settings
from ..core.combinators import SigmaOf
from ..core.dilator import Dilator
from ..domain import OrdinalKind, Provenance
from ..errors import CollapseError, NotRepresentableError
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..schemas import MinimalityViolation
from ..sigma.construction import star, substitute_last, xi_embed
from ..terms.term import DilatorTerm, Representation, normality_of, reattach
from ..terms.values import represent, value_at
from .oracles import ResemblanceOracle
from .table import CollapseTable

logger = logging.getLogger(__name__)


def normal_collapse(e: Dilator, lam: BaseLike, truncation: Iterable[BaseLike]) -> CollapseTable:
    """``theta(gamma) = E(gamma + 1)`` on the given ``gamma < lam``."""
    lam = as_base(lam)
    normality_of(e)
    if lam.classify() is not OrdinalKind.limit:
        raise CollapseError(f"{lam} is not a limit")
    try:
        fixed = value_at(e, lam)
    except NotRepresentableError:
        logger.warning("cannot evaluate %s at %s; assuming a fixed point", e.name, lam)
    else:
        if fixed != lam:
            raise CollapseError(f"{lam} is not a fixed point of {e.name}: E({lam}) = {fixed}")
    entries = {}
    for gamma in truncation:
        gamma = as_base(gamma)
        if not gamma < lam:
            raise CollapseError(f"{gamma} is not below {lam}")
        term = reattach(represent(e, gamma), lam)
        entries[term] = value_at(e, gamma.successor())
    return CollapseTable(e, lam, entries, Provenance.constructed_normal)


def xi_representation(d: Dilator, alpha: BaseLike, t: DilatorTerm) -> Representation:
    """``xi_alpha(t)`` as a representation of the normalization."""
    image = xi_embed(d, alpha, t)
    return Representation(image.sigma, image.args)


def witness_floor(d: Dilator, alpha: BaseLike, t: DilatorTerm) -> ExtendedBase:
    """``xi_alpha(t)*``, the least candidate for ``theta(t)``."""
    return star(SigmaOf(d), xi_representation(d, alpha, t))


def _passes(d: Dilator, r: Representation, floor: ExtendedBase, delta: ExtendedBase, oracle: ResemblanceOracle) -> bool:
    return not delta < floor and oracle(delta, substitute_last(SigmaOf(d), r, delta))


def _search_range(alpha: ExtendedBase, oracle: ResemblanceOracle, search: Optional[Iterable[BaseLike]]) -> List[ExtendedBase]:
    if search is not None:
        values = [as_base(s) for s in search]
    elif oracle.universe is not None:
        values = list(oracle.universe)
    elif alpha.is_finite:
        values = [ExtendedBase.plain(i) for i in range(alpha.to_int())]
    else:
        raise CollapseError(f"a search range is needed below the infinite {alpha}")
    return sorted({v for v in values if v < alpha})


def build_collapse(
    d: Dilator,
    alpha: BaseLike,
    oracle: ResemblanceOracle,
    truncation: Iterable[DilatorTerm],
    search: Optional[Iterable[BaseLike]] = None,
    workers: Optional[int] = None,
) -> CollapseTable:
    alpha = as_base(alpha)
    candidates = _search_range(alpha, oracle, search)
    terms = list(truncation)

    def entry(t: DilatorTerm) -> Optional[ExtendedBase]:
        r = xi_representation(d, alpha, t)
        floor = star(SigmaOf(d), r)
        for delta in candidates:
            if _passes(d, r, floor, delta, oracle):
                return delta
        logger.warning("no witness for %s among %d candidates", t, len(candidates))
        return None

    workers = workers or get_settings().WORKERS
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(entry, terms))
    else:
        values = [entry(t) for t in terms]
    return CollapseTable(d, alpha, dict(zip(terms, values)), Provenance.constructed_oracle)


def minimality_rescan(
    table: CollapseTable,
    oracle: ResemblanceOracle,
    search: Optional[Iterable[BaseLike]] = None,
) -> List[MinimalityViolation]:
    """Entries for which a smaller candidate passes both tests."""
    d, alpha = table.dilator, table.alpha
    candidates = _search_range(alpha, oracle, search)
    found = []
    for t, value in table.ordered():
        r = xi_representation(d, alpha, t)
        floor = star(SigmaOf(d), r)
        for delta in candidates:
            if value is not None and not delta < value:
                break
            if _passes(d, r, floor, delta, oracle):
                found.append(MinimalityViolation(
                    term=str(t),
                    recorded="-" if value is None else str(value),
                    smaller=str(delta),
                ))
                break
    return found
