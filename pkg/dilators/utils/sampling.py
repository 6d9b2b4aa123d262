from __future__ import annotations
import random
from typing import List, Optional

from ..ordinals.cnf import ExtendedBase, Ordinal, ZERO, as_base, BaseLike

# exponents and coefficients drawn by random_below; keeps samples below w^3 by default
MAX_EXPONENT = 2
MAX_COEFFICIENT = 4
OMEGA_CUBED = ExtendedBase.plain(Ordinal.omega_power(Ordinal.of(3)))


def derive_rng(seed: int, label: str) -> random.Random:
    # string seeds hash deterministically across interpreter runs
    return random.Random(f"{seed}:{label}")


def _random_plain(rng: random.Random, max_exponent: int) -> Ordinal:
    value = ZERO
    for exp in range(max_exponent, -1, -1):
        if rng.random() < 0.5:
            continue
        value = value + Ordinal.omega_power(Ordinal.of(exp), rng.randint(1, MAX_COEFFICIENT))
    return value


def random_below(bound: BaseLike, rng: random.Random, attempts: int = 32) -> Optional[ExtendedBase]:
    """A random ordinal strictly below ``bound``; None when ``bound`` is zero."""
    bound = as_base(bound)
    if bound.is_zero:
        return None
    if bound.is_finite:
        return ExtendedBase.plain(rng.randrange(bound.to_int()))
    if bound.omega and (bound.rest.is_zero or rng.random() < 0.75):
        return ExtendedBase.plain(_random_plain(rng, MAX_EXPONENT))
    if bound.omega:
        below = random_below(ExtendedBase.plain(bound.rest), rng, attempts)
        return ExtendedBase.omega_plus(below.rest)
    lead = bound.rest.terms[0][0]
    max_exponent = lead.to_int() if lead.is_finite else MAX_EXPONENT
    for _ in range(attempts):
        candidate = ExtendedBase.plain(_random_plain(rng, max_exponent))
        if candidate < bound:
            return candidate
    # fall back to a finite value, always below an infinite bound
    return ExtendedBase.plain(rng.randrange(MAX_COEFFICIENT * 4))


def random_between(lo: BaseLike, hi: BaseLike, rng: random.Random) -> ExtendedBase:
    """A random ordinal in the closed interval ``[lo, hi]``."""
    lo, hi = as_base(lo), as_base(hi)
    gap = hi.left_subtract(lo)
    return lo + random_below(gap.successor(), rng)


def random_increasing(count: int, bound: BaseLike, rng: random.Random, attempts: int = 64) -> Optional[List[ExtendedBase]]:
    """``count`` distinct ordinals below ``bound`` in increasing order, or None."""
    bound = as_base(bound)
    if count == 0:
        return []
    if bound.is_finite:
        if count > bound.to_int():
            return None
        return [ExtendedBase.plain(n) for n in sorted(rng.sample(range(bound.to_int()), count))]
    chosen = set()
    for _ in range(attempts * count):
        chosen.add(random_below(bound, rng))
        if len(chosen) == count:
            return sorted(chosen)
    return None
