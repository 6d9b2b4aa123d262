"""Randomized battery for the basic laws of star and substitution.

Each clause draws instances whose premises hold by construction: a window
``[E(rho), E(rho + 1))`` is fixed first and its members are built as
representations whose last argument is ``rho``. Every clause gets its own
generator derived from the seed, so clauses can run in any order or in
parallel with identical results.
"""
from __future__ import annotations
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from ..config import get_settings
from ..core.dilator import Dilator
from ..domain import ClauseStatus, Ordering, OrdinalKind
from ..ordinals.cnf import OMEGA, ExtendedBase
from ..schemas import ClauseResult, FundamentalReport
from ..terms.sampling import trace_at
from ..terms.term import Representation, normality_of
from ..utils.sampling import OMEGA_CUBED, derive_rng, random_below, random_between, random_increasing
from .construction import (
    rep_classify,
    rep_compare,
    rep_successor,
    star,
    substitute_last,
    window_value,
)

logger = logging.getLogger(__name__)

# attempts per requested sample before a clause gives up on its premise
ATTEMPTS_PER_SAMPLE = 20
FIRST_LIMIT = ExtendedBase.plain(OMEGA)

Outcome = Optional[Tuple[bool, Dict[str, str]]]


def _base(rng: random.Random) -> ExtendedBase:
    return random_below(OMEGA_CUBED, rng)


def _above(lo: ExtendedBase, rng: random.Random) -> ExtendedBase:
    return lo + random_below(OMEGA_CUBED, rng)


@lru_cache(maxsize=256)
def _window_arities(e: Dilator, limit: int) -> Tuple[int, ...]:
    """Arities ``1..limit`` at which ``e`` has constructors."""
    return tuple(n for n in range(1, limit + 1) if trace_at(e, n))


def _in_window(e: Dilator, rho: ExtendedBase, rng: random.Random) -> Optional[Representation]:
    """A random representation with last argument ``rho``."""
    limit = get_settings().ARITY_LIMIT
    if e.bound is not None:
        limit = min(limit, e.bound)
    arities = _window_arities(e, max(limit, 1))
    if not arities:
        return None
    n = rng.choice(arities)
    constructors = trace_at(e, n, rng)
    head = random_increasing(n - 1, rho, rng)
    if not constructors or head is None:
        return None
    return Representation(rng.choice(constructors), tuple(head) + (rho,))


def _clause_a(e: Dilator, rng: random.Random) -> Outcome:
    gamma = _in_window(e, _base(rng), rng)
    if gamma is None:
        return None
    delta = _above(star(e, gamma), rng)
    sub = substitute_last(e, gamma, delta)
    ok = (
        rep_compare(e, window_value(e, delta), sub) is not Ordering.greater
        and rep_compare(e, sub, window_value(e, delta.successor())) is Ordering.less
    )
    return ok, {"gamma": str(gamma), "delta": str(delta), "gamma[delta]": str(sub)}


def _clause_b(e: Dilator, rng: random.Random) -> Outcome:
    rho = _base(rng)
    gamma = _in_window(e, rho, rng)
    if gamma is None:
        return None
    inside = (
        rep_compare(e, window_value(e, rho), gamma) is not Ordering.greater
        and rep_compare(e, gamma, window_value(e, rho.successor())) is Ordering.less
    )
    s = star(e, gamma)
    ok = inside and not rho < s and substitute_last(e, gamma, rho) == gamma
    return ok, {"gamma": str(gamma), "delta": str(rho), "star": str(s)}


def _clause_c(e: Dilator, rng: random.Random) -> Outcome:
    gamma = _in_window(e, _base(rng), rng)
    if gamma is None:
        return None
    s = star(e, gamma)
    delta, rho = _above(s, rng), _above(s, rng)
    once = substitute_last(e, gamma, delta)
    ok = star(e, once) == s and substitute_last(e, once, rho) == substitute_last(e, gamma, rho)
    return ok, {"gamma": str(gamma), "delta": str(delta), "rho": str(rho)}


def _clause_d(e: Dilator, rng: random.Random) -> Outcome:
    rho = _base(rng)
    beta, gamma = _in_window(e, rho, rng), _in_window(e, rho, rng)
    if beta is None or gamma is None:
        return None
    delta = _above(max(star(e, beta), star(e, gamma)), rng)
    before = rep_compare(e, beta, gamma)
    after = rep_compare(e, substitute_last(e, beta, delta), substitute_last(e, gamma, delta))
    return before == after, {
        "beta": str(beta), "gamma": str(gamma), "delta": str(delta),
        "before": before.symbol, "after": after.symbol,
    }


def _clause_e(e: Dilator, rng: random.Random) -> Outcome:
    rho = _base(rng)
    gamma = _in_window(e, rho, rng)
    if gamma is None:
        return None
    nxt = rep_successor(e, gamma)
    if nxt.last != rho:
        return None
    lo = max(star(e, gamma), star(e, nxt))
    if rho < lo:
        return None
    delta = random_between(lo, rho, rng)
    lhs = substitute_last(e, nxt, delta)
    rhs = rep_successor(e, substitute_last(e, gamma, delta))
    return lhs == rhs, {
        "gamma": str(gamma), "delta": str(delta), "(gamma+1)[delta]": str(lhs), "gamma[delta]+1": str(rhs),
    }


def _clause_f(e: Dilator, rng: random.Random) -> Outcome:
    rho, delta = _base(rng), _base(rng)
    top = window_value(e, rho)
    s = star(e, top)
    ok = s.is_zero and substitute_last(e, top, delta) == window_value(e, delta)
    return ok, {"rho": str(rho), "delta": str(delta), "star": str(s)}


def _clause_g(e: Dilator, rng: random.Random) -> Outcome:
    # finite windows hold no limits
    rho = _above(FIRST_LIMIT, rng)
    gamma = _in_window(e, rho, rng)
    if gamma is None or gamma == window_value(e, rho):
        return None
    if rep_classify(e, gamma) is not OrdinalKind.limit:
        return None
    s = star(e, gamma)
    if rho < s:
        return None
    delta = random_between(s, rho, rng).limit_part()
    if delta < s or delta.is_zero:
        delta = rho.limit_part()
        if delta < s or delta.is_zero:
            return None
    sub = substitute_last(e, gamma, delta)
    kind = rep_classify(e, sub)
    return kind is OrdinalKind.limit, {
        "gamma": str(gamma), "delta": str(delta), "gamma[delta]": str(sub), "kind": str(kind),
    }


CLAUSES: Dict[str, Callable[[Dilator, random.Random], Outcome]] = {
    "a": _clause_a,
    "b": _clause_b,
    "c": _clause_c,
    "d": _clause_d,
    "e": _clause_e,
    "f": _clause_f,
    "g": _clause_g,
}


def _run_clause(e: Dilator, clause: str, samples: int, seed: int) -> ClauseResult:
    rng = derive_rng(seed, f"fund:{e.name}:{clause}")
    check = CLAUSES[clause]
    instances = passed = 0
    counterexample = None
    for _ in range(samples * ATTEMPTS_PER_SAMPLE):
        if instances >= samples:
            break
        outcome = check(e, rng)
        if outcome is None:
            continue
        instances += 1
        ok, witness = outcome
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = witness
    if instances == 0:
        status = ClauseStatus.vacuous
        logger.warning("clause (%s) found no instance for %s", clause, e.name)
    elif passed < instances:
        status = ClauseStatus.failed
    else:
        status = ClauseStatus.passed
    if 0 < instances < samples:
        logger.warning("clause (%s) reached %d of %d instances for %s", clause, instances, samples, e.name)
    return ClauseResult(
        clause=clause,
        requested=samples,
        instances=instances,
        passed=passed,
        status=status,
        counterexample=counterexample,
    )


def check_fund_basic(
    e: Dilator,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    clauses: Optional[List[str]] = None,
) -> FundamentalReport:
    settings = get_settings()
    normality_of(e)
    samples = settings.FUND_SAMPLES if samples is None else samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    workers = workers or settings.WORKERS
    names = clauses or list(CLAUSES)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _run_clause(e, c, samples, seed), names))
    else:
        results = [_run_clause(e, c, samples, seed) for c in names]
    return FundamentalReport(dilator=e.name, seed=seed, clauses=results)
