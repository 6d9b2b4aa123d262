"""Finite slices of the classes ``C_D(gamma)`` and their intersections ``F_D(gamma, eta)``."""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from ..core.dilator import Dilator
from ..domain import Ordering
from ..errors import NotRepresentableError, TermError
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..sigma.construction import star, substitute_last
from ..terms.term import Representation
from ..terms.values import evaluate
from .ddorder import DDElement, dd_compare, dd_members
from .structure import Leq1Table

logger = logging.getLogger(__name__)


@dataclass
class ClubSlice:
    """Members of a slice, and the elements whose ``gamma[delta]`` lies outside the universe."""

    members: List[ExtendedBase] = field(default_factory=list)
    undetermined: List[ExtendedBase] = field(default_factory=list)


def club_slice(e: Dilator, gamma: Representation, table: Leq1Table) -> ClubSlice:
    """``{delta | delta >= gamma* and delta <=_1 gamma[delta]}`` within the universe."""
    s = star(e, gamma)
    result = ClubSlice()
    for delta in table.structure.universe:
        if delta < s:
            continue
        try:
            value = evaluate(e, substitute_last(e, gamma, delta))
        except NotRepresentableError:
            result.undetermined.append(delta)
            continue
        if value not in table.structure:
            result.undetermined.append(delta)
        elif table.holds(delta, value):
            result.members.append(delta)
    if result.undetermined:
        logger.debug("slice of %s: %d elements undetermined", gamma, len(result.undetermined))
    return result


def fd_index(
    e: Dilator,
    gamma: Representation,
    eta: BaseLike,
    table: Leq1Table,
    window_base: Optional[BaseLike] = None,
) -> List[Representation]:
    """The ``beta`` of ``F_D(gamma, eta)``: window members below ``gamma`` with ``beta* <= eta``."""
    if not gamma.args:
        raise TermError(f"{gamma} lies below E(0)")
    base = gamma.last if window_base is None else as_base(window_base)
    top = DDElement.of(gamma)
    candidates = [u for u in table.structure.universe if u < base]
    index = []
    for pi in dd_members(e, eta, candidates=candidates):
        if dd_compare(e, pi, top) is Ordering.less:
            index.append(pi.at(base))
    return index


def fd_slice(
    e: Dilator,
    gamma: Representation,
    eta: BaseLike,
    table: Leq1Table,
    window_base: Optional[BaseLike] = None,
) -> ClubSlice:
    universe = list(table.structure.universe)
    members = set(universe)
    undetermined = set()
    for beta in fd_index(e, gamma, eta, table, window_base):
        part = club_slice(e, beta, table)
        undetermined |= members & set(part.undetermined)
        members &= set(part.members)
        undetermined = {d for d in undetermined if d in part.members or d in part.undetermined}
    return ClubSlice(
        members=[u for u in universe if u in members],
        undetermined=[u for u in universe if u in undetermined],
    )
