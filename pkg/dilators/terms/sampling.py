from __future__ import annotations
import random
from functools import lru_cache
from typing import List, Optional, Tuple

from ..config import get_settings
from ..core.dilator import Dilator
from ..errors import ArityError
from ..ordinals.cnf import Ordinal, BaseLike, as_base
from ..utils.sampling import derive_rng, random_below, random_increasing
from .term import DilatorTerm


@lru_cache(maxsize=1024)
def _finite_trace(d: Dilator, n: int) -> Tuple[Ordinal, ...]:
    full = tuple(range(n))
    return tuple(s for s in d.elements(n) if d.support(n, s) == full)


def trace_at(d: Dilator, n: int, rng: Optional[random.Random] = None, draws: int = 64) -> List[Ordinal]:
    """Constructors of arity ``n``: all of them, or those found among random draws
    when ``D(n)`` is infinite."""
    try:
        d.check_arity(n)
    except ArityError:
        return []
    size = d.value(n)
    if size.is_finite:
        return list(_finite_trace(d, n))
    rng = rng or derive_rng(0, f"trace:{d.name}:{n}")
    full = tuple(range(n))
    found = set()
    for _ in range(draws):
        s = random_below(size, rng).rest
        if d.support(n, s) == full:
            found.add(s)
    return sorted(found)


def random_term(
    d: Dilator,
    base: BaseLike,
    rng: random.Random,
    arity_limit: Optional[int] = None,
    min_arity: int = 0,
    attempts: int = 16,
) -> Optional[DilatorTerm]:
    """A random term over ``base``, or None when none can be found."""
    base = as_base(base)
    limit = get_settings().ARITY_LIMIT if arity_limit is None else arity_limit
    if d.bound is not None:
        limit = min(limit, d.bound)
    arities = list(range(min_arity, limit + 1))
    for _ in range(attempts):
        if not arities:
            return None
        n = rng.choice(arities)
        constructors = trace_at(d, n, rng)
        args = random_increasing(n, base, rng)
        if not constructors or args is None:
            continue
        return DilatorTerm(rng.choice(constructors), tuple(args), base)
    return None
