"""Cantor normal forms below epsilon_0 and the symbolic-Omega extension.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` summands with
strictly decreasing exponents; structural equality is ordinal equality.
:class:`ExtendedBase` adds a single symbolic ``W`` (Omega) above every plain
value, so that ``W + nu`` can serve as the base of a term extension.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import total_ordering
from typing import Tuple, Union

from ..domain import OrdinalKind
from ..errors import NotationError


def _cmp(a: "Ordinal", b: "Ordinal") -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for exp, coeff in self.terms:
            if coeff < 1:
                raise NotationError(f"coefficient {coeff} is not positive")
            if prev is not None and _cmp(exp, prev) >= 0:
                raise NotationError("exponents must be strictly decreasing")
            prev = exp

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise NotationError(f"negative ordinal {n}")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_power(cls, exponent: "Ordinal", coefficient: int = 1) -> "Ordinal":
        return cls(((exponent, coefficient),))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) < 0

    def __str__(self) -> str:
        return cnf_render(self)

    def __repr__(self) -> str:
        return f"Ordinal({cnf_render(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(exp.is_zero for exp, _ in self.terms)

    def to_int(self) -> int:
        if not self.is_finite:
            raise NotationError(f"{self} is not a natural number")
        return self.terms[0][1] if self.terms else 0

    def classify(self) -> OrdinalKind:
        return cnf_classify(self)

    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "Ordinal":
        """The largest limit (or zero) below or equal to self."""
        if self.terms and self.terms[-1][0].is_zero:
            return Ordinal(self.terms[:-1])
        return self

    def __add__(self, other: Union["Ordinal", int]) -> "Ordinal":
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return cnf_add(self, other)

    def __radd__(self, other: int) -> "Ordinal":
        if isinstance(other, int):
            return cnf_add(Ordinal.of(other), self)
        return NotImplemented

    def successor(self) -> "Ordinal":
        return cnf_add(self, ONE)

    def predecessor(self) -> "Ordinal":
        if self.classify() is not OrdinalKind.successor:
            raise NotationError(f"{self} has no predecessor")
        *head, (exp, coeff) = self.terms
        tail = ((exp, coeff - 1),) if coeff > 1 else ()
        return Ordinal(tuple(head) + tail)

    def left_subtract(self, other: "Ordinal") -> "Ordinal":
        return cnf_left_subtract(self, other)

    def lmul_nat(self, k: int) -> "Ordinal":
        """``k * self`` for a natural number ``k`` (left factor)."""
        if k < 0:
            raise NotationError("negative factor")
        if k == 0 or self.is_zero:
            return ZERO
        head, tail = self.limit_part(), self.finite_part()
        return cnf_add(head, Ordinal.of(k * tail))

    def divmod_nat(self, m: int) -> Tuple["Ordinal", int]:
        """``(q, r)`` with ``m * q + r == self`` and ``r < m``."""
        if m < 1:
            raise NotationError("divisor must be positive")
        head, tail = self.limit_part(), self.finite_part()
        return cnf_add(head, Ordinal.of(tail // m)), tail % m


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega_power(ONE)


def cnf_compare(a: Ordinal, b: Ordinal) -> int:
    return _cmp(a, b)


def cnf_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead, coeff = b.terms[0]
    kept = []
    for exp, c in a.terms:
        order = _cmp(exp, lead)
        if order > 0:
            kept.append((exp, c))
        elif order == 0:
            coeff += c
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead, coeff),) + b.terms[1:])


def cnf_classify(a: Ordinal) -> OrdinalKind:
    if a.is_zero:
        return OrdinalKind.zero
    if a.terms[-1][0].is_zero:
        return OrdinalKind.successor
    return OrdinalKind.limit


def cnf_left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique ``c`` with ``b + c == a``; requires ``b <= a``."""
    if _cmp(b, a) > 0:
        raise NotationError(f"{b} exceeds {a}")
    for i, (ea, ca) in enumerate(a.terms):
        if i >= len(b.terms):
            return Ordinal(a.terms[i:])
        eb, cb = b.terms[i]
        if ea == eb and ca == cb:
            continue
        if ea == eb and ca > cb:
            return Ordinal(((ea, ca - cb),) + a.terms[i + 1:])
        return Ordinal(a.terms[i:])
    return ZERO


def _render_exponent(e: Ordinal) -> str:
    if e.is_finite:
        return str(e.to_int())
    if e == OMEGA:
        return "w"
    return f"({cnf_render(e)})"


def cnf_render(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero:
            parts.append(str(coeff))
            continue
        text = "w" if exp == ONE else f"w^{_render_exponent(exp)}"
        if coeff > 1:
            text += f"*{coeff}"
        parts.append(text)
    return " + ".join(parts)


@total_ordering
@dataclass(frozen=True)
class ExtendedBase:
    """A plain ordinal, or ``W + rest`` when ``omega`` is set."""

    rest: Ordinal = ZERO
    omega: bool = False

    @classmethod
    def plain(cls, value: Union[Ordinal, int]) -> "ExtendedBase":
        if isinstance(value, int):
            value = Ordinal.of(value)
        return cls(value, False)

    @classmethod
    def omega_plus(cls, nu: Union[Ordinal, int] = 0) -> "ExtendedBase":
        if isinstance(nu, int):
            nu = Ordinal.of(nu)
        return cls(nu, True)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ExtendedBase):
            return NotImplemented
        if self.omega != other.omega:
            return other.omega
        return _cmp(self.rest, other.rest) < 0

    def __str__(self) -> str:
        if not self.omega:
            return cnf_render(self.rest)
        return "W" if self.rest.is_zero else f"W+{cnf_render(self.rest)}"

    def __repr__(self) -> str:
        return f"ExtendedBase({str(self)!r})"

    @property
    def is_plain(self) -> bool:
        return not self.omega

    @property
    def is_zero(self) -> bool:
        return not self.omega and self.rest.is_zero

    @property
    def is_finite(self) -> bool:
        return not self.omega and self.rest.is_finite

    def to_int(self) -> int:
        if self.omega:
            raise NotationError(f"{self} is not a natural number")
        return self.rest.to_int()

    def ordinal(self) -> Ordinal:
        if self.omega:
            raise NotationError(f"{self} is not a plain ordinal")
        return self.rest

    def classify(self) -> OrdinalKind:
        if self.omega and self.rest.is_zero:
            return OrdinalKind.limit
        return cnf_classify(self.rest)

    def __add__(self, other: Union["ExtendedBase", Ordinal, int]) -> "ExtendedBase":
        other = as_base(other)
        if other.omega:
            if self.omega:
                raise NotationError("W + W lies outside the notation")
            return other
        return ExtendedBase(cnf_add(self.rest, other.rest), self.omega)

    def successor(self) -> "ExtendedBase":
        return ExtendedBase(cnf_add(self.rest, ONE), self.omega)

    def predecessor(self) -> "ExtendedBase":
        if self.classify() is not OrdinalKind.successor:
            raise NotationError(f"{self} has no predecessor")
        return ExtendedBase(self.rest.predecessor(), self.omega)

    def left_subtract(self, other: "ExtendedBase") -> "ExtendedBase":
        """The unique ``c`` with ``other + c == self``."""
        if other > self:
            raise NotationError(f"{other} exceeds {self}")
        if self.omega and not other.omega:
            return self
        return ExtendedBase(cnf_left_subtract(self.rest, other.rest), False)

    def lmul_nat(self, k: int) -> "ExtendedBase":
        if k == 0:
            return ExtendedBase()
        return ExtendedBase(self.rest.lmul_nat(k), self.omega)

    def divmod_nat(self, m: int) -> Tuple["ExtendedBase", int]:
        q, r = self.rest.divmod_nat(m)
        return ExtendedBase(q, self.omega), r

    def limit_part(self) -> "ExtendedBase":
        return ExtendedBase(self.rest.limit_part(), self.omega)


OMEGA_BASE = ExtendedBase.omega_plus(0)

BaseLike = Union[ExtendedBase, Ordinal, int]


def as_base(value: BaseLike) -> ExtendedBase:
    if isinstance(value, ExtendedBase):
        return value
    if isinstance(value, Ordinal):
        return ExtendedBase(value, False)
    if isinstance(value, int):
        return ExtendedBase.plain(value)
    raise TypeError(f"not an ordinal: {value!r}")
