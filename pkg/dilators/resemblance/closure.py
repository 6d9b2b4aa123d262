from __future__ import annotations
from functools import lru_cache
from typing import FrozenSet, Iterable

from ..core.dilator import Dilator
from ..ordinals.cnf import ExtendedBase, BaseLike, as_base
from ..terms.term import normality_of
from ..terms.values import represent


@lru_cache(maxsize=16384)
def _cl(e: Dilator, gamma: ExtendedBase) -> FrozenSet[ExtendedBase]:
    normality_of(e)
    found = {gamma}
    for a in represent(e, gamma).args:
        if a < gamma:
            found |= _cl(e, a)
    return frozenset(found)


def cl(e: Dilator, gamma: BaseLike) -> FrozenSet[ExtendedBase]:
    """``{gamma}`` together with the closures of the representation arguments below ``gamma``."""
    return _cl(e, as_base(gamma))


def closure(e: Dilator, zs: Iterable[BaseLike]) -> FrozenSet[ExtendedBase]:
    result: FrozenSet[ExtendedBase] = frozenset()
    for z in zs:
        result |= cl(e, z)
    return result


def is_closed(e: Dilator, zs: Iterable[BaseLike]) -> bool:
    zs = frozenset(as_base(z) for z in zs)
    return closure(e, zs) == zs
