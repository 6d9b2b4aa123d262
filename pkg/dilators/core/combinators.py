"""Dilators given by closed forms: Const, Identity, Sum and SigmaOf."""
from __future__ import annotations
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from ..errors import ArityError, NotationError
from ..ordinals.cnf import ONE, ZERO, Ordinal
from ..ordinals.grammar import cnf_parse
from .dilator import Dilator, NormalityData
from .morphisms import Morphism


@dataclass(frozen=True)
class Const(Dilator):
    nu: Ordinal

    bound = None

    @property
    def name(self) -> str:
        return f"const:{self.nu}"

    def value(self, n: int) -> Ordinal:
        self.check_arity(n)
        return self.nu

    def act(self, f: Morphism, sigma: Ordinal) -> Ordinal:
        return sigma

    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        return ()

    def pullback(self, f: Morphism, sigma: Ordinal) -> Optional[Ordinal]:
        return sigma if sigma < self.nu else None


@dataclass(frozen=True)
class Identity(Dilator):
    bound = None

    @property
    def name(self) -> str:
        return "identity"

    def value(self, n: int) -> Ordinal:
        return Ordinal.of(n)

    def act(self, f: Morphism, sigma: Ordinal) -> Ordinal:
        return Ordinal.of(f(sigma.to_int()))

    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        return (sigma.to_int(),)

    def pullback(self, f: Morphism, sigma: Ordinal) -> Optional[Ordinal]:
        k = sigma.to_int()
        return Ordinal.of(f.preimage(k)) if k in f.range() else None

    @property
    def normality(self) -> Optional[NormalityData]:
        return NormalityData(lambda n, k: Ordinal.of(k))


def _min_bound(*bounds: Optional[int]) -> Optional[int]:
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class Sum(Dilator):
    """Pointwise ``A(n) + B(n)``: the A-part first, then the B-part."""

    left: Dilator
    right: Dilator

    @property
    def name(self) -> str:
        return f"sum({self.left.name},{self.right.name})"

    @property
    def bound(self) -> Optional[int]:
        return _min_bound(self.left.bound, self.right.bound)

    def value(self, n: int) -> Ordinal:
        return self.left.value(n) + self.right.value(n)

    def split(self, n: int, sigma: Ordinal) -> Tuple[bool, Ordinal]:
        """``(True, sigma)`` inside the A-part, ``(False, beta)`` for ``A(n) + beta``."""
        head = self.left.value(n)
        if sigma < head:
            return True, sigma
        return False, sigma.left_subtract(head)

    def act(self, f: Morphism, sigma: Ordinal) -> Ordinal:
        in_left, rest = self.split(f.domain, sigma)
        if in_left:
            return self.left.act(f, rest)
        return self.left.value(f.codomain) + self.right.act(f, rest)

    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        in_left, rest = self.split(n, sigma)
        return self.left.support(n, rest) if in_left else self.right.support(n, rest)

    def pullback(self, f: Morphism, sigma: Ordinal) -> Optional[Ordinal]:
        in_left, rest = self.split(f.codomain, sigma)
        if in_left:
            return self.left.pullback(f, rest)
        tau = self.right.pullback(f, rest)
        return None if tau is None else self.left.value(f.domain) + tau

    @property
    def normality(self) -> Optional[NormalityData]:
        inner = self.right.normality
        if not isinstance(self.left, Const) or inner is None:
            return None
        c = self.left.nu
        return NormalityData(lambda n, k: c + inner.mu(n, k))


@lru_cache(maxsize=4096)
def _partial_sums(d: Dilator, n: int) -> Tuple[Ordinal, ...]:
    """``(SigmaD(0), ..., SigmaD(n))``."""
    sums: List[Ordinal] = [ZERO]
    for k in range(n):
        sums.append(sums[-1] + (ONE + d.value(k)))
    return tuple(sums)


@dataclass(frozen=True)
class SigmaOf(Dilator):
    """``SigmaD(n) = sum_{k<n} (1 + D(k))``, normal with ``mu_n(k) = SigmaD(k)``.

    An element is either ``SigmaD(k)`` or ``SigmaD(k) + 1 + beta`` with
    ``beta < D(k)``; :meth:`decompose` returns ``(k, None)`` resp. ``(k, beta)``.
    """

    underlying: Dilator

    @property
    def name(self) -> str:
        return f"sigma:{self.underlying.name}"

    @property
    def bound(self) -> Optional[int]:
        inner = self.underlying.bound
        return None if inner is None else inner + 1

    def partial_sum(self, k: int) -> Ordinal:
        return _partial_sums(self.underlying, k)[k]

    def value(self, n: int) -> Ordinal:
        self.check_arity(n)
        return self.partial_sum(n)

    def decompose(self, n: int, alpha: Ordinal) -> Tuple[int, Optional[Ordinal]]:
        sums = _partial_sums(self.underlying, n)
        if not alpha < sums[n]:
            raise ArityError(f"{alpha} is not an element of {self.name}({n})")
        k = max(i for i in range(n) if sums[i] <= alpha)
        if alpha == sums[k]:
            return k, None
        return k, alpha.left_subtract(sums[k]).left_subtract(ONE)

    def compose(self, k: int, beta: Optional[Ordinal]) -> Ordinal:
        head = self.partial_sum(k)
        return head if beta is None else head + ONE + beta

    def act(self, f: Morphism, sigma: Ordinal) -> Ordinal:
        k, beta = self.decompose(f.domain, sigma)
        if beta is None:
            return self.partial_sum(f(k))
        return self.compose(f(k), self.underlying.act(f.restrict(k), beta))

    def support(self, n: int, sigma: Ordinal) -> Tuple[int, ...]:
        k, beta = self.decompose(n, sigma)
        if beta is None:
            return (k,)
        return tuple(self.underlying.support(k, beta)) + (k,)

    def pullback(self, f: Morphism, sigma: Ordinal) -> Optional[Ordinal]:
        top, beta = self.decompose(f.codomain, sigma)
        if top not in f.range():
            return None
        k = f.preimage(top)
        if beta is None:
            return self.partial_sum(k)
        tau = self.underlying.pullback(f.restrict(k), beta)
        return None if tau is None else self.compose(k, tau)

    @property
    def normality(self) -> Optional[NormalityData]:
        return NormalityData(lambda n, k: self.partial_sum(k))


def _split_top_level(text: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def builtin_dilator(expr: str) -> Dilator:
    """Build a combinator from ``none``, ``identity``, ``const:ORD``, ``sigma:EXPR``
    or ``sum(EXPR, EXPR)``; ``none`` is the trace-empty ``Const(0)``."""
    expr = expr.strip()
    if expr == "none":
        return Const(ZERO)
    if expr == "identity":
        return Identity()
    if expr.startswith("const:"):
        return Const(cnf_parse(expr[len("const:"):].strip()))
    if expr.startswith("sigma:"):
        return SigmaOf(builtin_dilator(expr[len("sigma:"):]))
    if expr.startswith("sum(") and expr.endswith(")"):
        parts = _split_top_level(expr[4:-1])
        if len(parts) != 2:
            raise NotationError(f"sum takes two arguments in {expr!r}")
        return Sum(builtin_dilator(parts[0]), builtin_dilator(parts[1]))
    raise NotationError(f"unknown dilator expression {expr!r}")
