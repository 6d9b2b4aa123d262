"""Law checks for pre-dilator presentations and their normality data.

Every law is checked exhaustively where the fibers involved are finite and on
a seeded sample otherwise; the report records which. Iteration runs over
``n``, then the element, then the source arity and finally the morphism, so
the first counterexample found is the least one in that order.
"""
from __future__ import annotations
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

from ..config import get_settings
from ..domain import LawMode
from ..errors import DilatorsError
from ..ordinals.cnf import Ordinal
from ..schemas import LawReport, LawResult
from ..utils.sampling import derive_rng, random_below
from .dilator import Dilator, NormalityData, effective_bound
from .morphisms import Morphism, coface, factor_cofaces, morphisms

logger = logging.getLogger(__name__)

Fiber = Tuple[List[Ordinal], bool]


class _Fibers:
    """Elements of ``D(n)``: all of them, or a seeded sample of an infinite fiber."""

    def __init__(self, d: Dilator, seed: int, sample_size: int):
        self.d = d
        self.seed = seed
        self.sample_size = sample_size
        self._cache: Dict[int, Fiber] = {}

    def __call__(self, n: int) -> Fiber:
        if n not in self._cache:
            size = self.d.value(n)
            if size.is_finite:
                self._cache[n] = (list(self.d.elements(n)), True)
            else:
                rng = derive_rng(self.seed, f"fiber:{self.d.name}:{n}")
                drawn = {random_below(size, rng).rest for _ in range(self.sample_size)}
                logger.debug("sampling %d elements of infinite %s(%d)", len(drawn), self.d.name, n)
                self._cache[n] = (sorted(drawn), False)
        return self._cache[n]


class _Law:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.exhaustive = True
        self.counterexample: Optional[dict] = None

    def note(self, exhaustive: bool) -> None:
        self.exhaustive = self.exhaustive and exhaustive

    def fail(self, **witness) -> None:
        self.counterexample = {k: _plain(v) for k, v in witness.items()}

    def result(self) -> LawResult:
        return LawResult(
            law=self.name,
            mode=LawMode.exhaustive if self.exhaustive else LawMode.sampled,
            checked=self.checked,
            passed=self.counterexample is None,
            counterexample=self.counterexample,
        )


def _plain(value):
    if isinstance(value, Ordinal):
        return str(value)
    if isinstance(value, Morphism):
        return {"images": list(value.images), "codomain": value.codomain}
    if isinstance(value, (tuple, list, frozenset, set)):
        return [_plain(v) for v in (sorted(value) if isinstance(value, (set, frozenset)) else value)]
    return value


def _coface_monotone(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("coface-monotone")
    for n in range(bound):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for i in range(n + 1):
            previous = None
            for sigma in elements:
                law.checked += 1
                image = d.coface(n, i, sigma)
                if not d.contains(n + 1, image) or (previous is not None and not previous[1] < image):
                    law.fail(n=n, i=i, sigma=sigma, image=image, previous=previous)
                    return law
                previous = (sigma, image)
    return law


def _simplicial_identities(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("simplicial-identities")
    for n in range(bound - 1):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for sigma in elements:
            for j in range(1, n + 2):
                for i in range(j):
                    law.checked += 1
                    lhs = d.coface(n + 1, j, d.coface(n, i, sigma))
                    rhs = d.coface(n + 1, i, d.coface(n, j - 1, sigma))
                    if lhs != rhs:
                        law.fail(n=n, i=i, j=j, sigma=sigma, lhs=lhs, rhs=rhs)
                        return law
    return law


def _support_bounds(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("support-bounds")
    for n in range(bound + 1):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for sigma in elements:
            law.checked += 1
            supp = d.support(n, sigma)
            if any(not 0 <= k < n for k in supp) or list(supp) != sorted(set(supp)):
                law.fail(n=n, sigma=sigma, support=supp)
                return law
    return law


def _support_naturality(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("support-naturality")
    for n in range(bound):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for sigma in elements:
            for i in range(n + 1):
                law.checked += 1
                f = coface(n, i)
                image = d.coface(n, i, sigma)
                expected = f.image_of(d.support(n, sigma))
                actual = d.support(n + 1, image)
                if tuple(actual) != tuple(expected):
                    law.fail(n=n, i=i, sigma=sigma, image=image, expected=expected, actual=actual)
                    return law
    return law


def _support_condition(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("support-condition")
    for n in range(bound + 1):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for sigma in elements:
            supp = set(d.support(n, sigma))
            for m in range(len(supp), n + 1):
                for f in morphisms(m, n):
                    if not supp <= f.range():
                        continue
                    law.checked += 1
                    tau = d.pullback(f, sigma)
                    if tau is None or d.act(f, tau) != sigma:
                        law.fail(n=n, sigma=sigma, f=f, support=tuple(sorted(supp)))
                        return law
    return law


def _decomposition_independence(d: Dilator, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("decomposition-independence")
    for n in range(bound + 1):
        for m in range(n + 1):
            elements, exhaustive = fibers(m)
            law.note(exhaustive)
            for sigma in elements:
                for f in morphisms(m, n):
                    law.checked += 1
                    direct = d.act(f, sigma)
                    ascending = descending = sigma
                    for k, i in factor_cofaces(f):
                        ascending = d.coface(k, i, ascending)
                    for k, i in factor_cofaces(f, descending=True):
                        descending = d.coface(k, i, descending)
                    if not direct == ascending == descending:
                        law.fail(
                            m=m, sigma=sigma, f=f, direct=direct,
                            ascending=ascending, descending=descending,
                        )
                        return law
    return law


PREDILATOR_LAWS: List[Callable[[Dilator, int, _Fibers], _Law]] = [
    _coface_monotone,
    _simplicial_identities,
    _support_bounds,
    _support_naturality,
    _support_condition,
    _decomposition_independence,
]


def _run(laws, d: Dilator, bound: int, fibers: _Fibers, workers: int) -> List[LawResult]:
    def check(law_fn) -> LawResult:
        try:
            law = law_fn(d, bound, fibers)
        except DilatorsError as exc:
            law = _Law(law_fn.__name__.strip("_").replace("_", "-"))
            law.fail(error=str(exc))
        if not law.exhaustive:
            logger.warning("%s for %s was sampled, not checked exhaustively", law.name, d.name)
        return law.result()

    if workers > 1:
        # the fiber cache is filled up front so threads only read it
        for n in range(bound + 1):
            fibers(n)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(check, laws))
    return [check(law_fn) for law_fn in laws]


def validate_predilator(
    d: Dilator,
    bound: Optional[int] = None,
    seed: Optional[int] = None,
    sample_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> LawReport:
    settings = get_settings()
    bound = effective_bound(d, bound)
    fibers = _Fibers(
        d,
        settings.DEFAULT_SEED if seed is None else seed,
        sample_size or settings.SAMPLE_SIZE,
    )
    results = _run(PREDILATOR_LAWS, d, bound, fibers, workers or settings.WORKERS)
    return LawReport(subject=d.name, bound=bound, laws=results)


def _mu_range(d: Dilator, mu: NormalityData, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("mu-range")
    for n in range(1, bound + 1):
        previous = None
        for k in range(n):
            law.checked += 1
            value = mu.mu(n, k)
            if not d.contains(n, value) or (previous is not None and not previous < value):
                law.fail(n=n, k=k, mu=value)
                return law
            previous = value
    return law


def _mu_naturality(d: Dilator, mu: NormalityData, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("mu-naturality")
    for n in range(1, bound):
        for k in range(n):
            for i in range(n + 1):
                law.checked += 1
                image = d.coface(n, i, mu.mu(n, k))
                expected = mu.mu(n + 1, coface(n, i)(k))
                if image != expected:
                    law.fail(n=n, k=k, i=i, image=image, expected=expected)
                    return law
    return law


def _normality_condition(d: Dilator, mu: NormalityData, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("normality-condition")
    for n in range(1, bound + 1):
        elements, exhaustive = fibers(n)
        law.note(exhaustive)
        for sigma in elements:
            supp = d.support(n, sigma)
            for k in range(n):
                law.checked += 1
                below = sigma < mu.mu(n, k)
                bounded = all(x < k for x in supp)
                if below != bounded:
                    law.fail(n=n, k=k, sigma=sigma, mu=mu.mu(n, k), support=supp)
                    return law
    return law


def _trace_root(d: Dilator, mu: NormalityData, bound: int, fibers: _Fibers) -> _Law:
    law = _Law("trace-root")
    if bound < 1:
        return law
    law.checked = 1
    root = mu.mu(1, 0)
    if not d.contains(1, root) or d.support(1, root) != (0,):
        law.fail(sigma=root, support=d.support(1, root) if d.contains(1, root) else None)
    return law


NORMALITY_LAWS = [_mu_range, _mu_naturality, _normality_condition, _trace_root]


def validate_normality(
    d: Dilator,
    mu: Optional[NormalityData],
    bound: Optional[int] = None,
    seed: Optional[int] = None,
    sample_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> LawReport:
    """Check ``mu`` against ``d``; without any ``mu`` the report carries one failed law."""
    settings = get_settings()
    bound = effective_bound(d, bound)
    if mu is None:
        missing = LawResult(
            law="normality-data",
            mode=LawMode.exhaustive,
            checked=0,
            passed=False,
            counterexample={"reason": f"{d.name} carries no normality data"},
        )
        return LawReport(subject=d.name, bound=bound, laws=[missing])
    fibers = _Fibers(
        d,
        settings.DEFAULT_SEED if seed is None else seed,
        sample_size or settings.SAMPLE_SIZE,
    )
    laws = [lambda d_, b, f, fn=fn: fn(d_, mu, b, f) for fn in NORMALITY_LAWS]
    for wrapper, fn in zip(laws, NORMALITY_LAWS):
        wrapper.__name__ = fn.__name__
    results = _run(laws, d, bound, fibers, workers or settings.WORKERS)
    return LawReport(subject=d.name, bound=bound, laws=results)
