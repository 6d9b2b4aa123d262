"""Existential formulas over ``<=``, ``<=_1`` and the representation relations.

Satisfaction is decided by exhaustive witness search inside a finite
structure, optionally cut down to the elements below some ordinal (the
structure an ordinal ``alpha`` induces on the universe).
"""
from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import FormulaError
from ..ordinals.cnf import ExtendedBase, Ordinal, BaseLike, as_base
from ..ordinals.grammar import cnf_render
from .structure import Leq1Table


@dataclass(frozen=True)
class Le:
    left: str
    right: str

    def __str__(self) -> str:
        return f"{self.left} <= {self.right}"


@dataclass(frozen=True)
class Leq1:
    left: str
    right: str

    def __str__(self) -> str:
        return f"{self.left} <=1 {self.right}"


@dataclass(frozen=True)
class Rep:
    """``head ~ (sigma ; args...)``."""

    head: str
    sigma: Ordinal
    args: Tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.head} ~ ({cnf_render(self.sigma)} ; {', '.join(self.args)})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        return f"not ({self.body})"


@dataclass(frozen=True)
class And:
    parts: Tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " & ".join(map(str, self.parts)) + ")" if self.parts else "true"


@dataclass(frozen=True)
class Or:
    parts: Tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.parts)) + ")" if self.parts else "false"


Formula = Union[Le, Leq1, Rep, Not, And, Or]


@dataclass(frozen=True)
class Exists:
    """``exists variables . matrix`` with the free variables listed in parameter order."""

    variables: Tuple[str, ...]
    matrix: Formula
    free: Tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.variables:
            return str(self.matrix)
        return f"exists {', '.join(self.variables)} . {self.matrix}"


def _names(phi: Formula) -> Iterator[str]:
    if isinstance(phi, (Le, Leq1)):
        yield phi.left
        yield phi.right
    elif isinstance(phi, Rep):
        yield phi.head
        yield from phi.args
    elif isinstance(phi, Not):
        yield from _names(phi.body)
    elif isinstance(phi, (And, Or)):
        for part in phi.parts:
            yield from _names(part)
    else:
        raise FormulaError(f"{phi!r} is not a quantifier-free formula")


def check_formula(phi: Exists) -> None:
    if not isinstance(phi, Exists):
        raise FormulaError(f"expected an existential formula, got {phi!r}")
    bound, free = set(phi.variables), set(phi.free)
    if len(bound) != len(phi.variables) or len(free) != len(phi.free):
        raise FormulaError(f"repeated variable in {phi}")
    if bound & free:
        raise FormulaError(f"{', '.join(sorted(bound & free))} is both free and bound in {phi}")
    unknown = set(_names(phi.matrix)) - bound - free
    if unknown:
        raise FormulaError(f"unbound variable {', '.join(sorted(unknown))} in {phi}")


def _holds(phi: Formula, env: Mapping[str, ExtendedBase], table: Leq1Table) -> bool:
    if isinstance(phi, Le):
        return not env[phi.right] < env[phi.left]
    if isinstance(phi, Leq1):
        a, b = env[phi.left], env[phi.right]
        return not b < a and table.holds(a, b)
    if isinstance(phi, Rep):
        rep = table.structure.reps[env[phi.head]]
        return (
            rep is not None
            and rep.sigma == phi.sigma
            and rep.args == tuple(env[a] for a in phi.args)
        )
    if isinstance(phi, Not):
        return not _holds(phi.body, env, table)
    if isinstance(phi, And):
        return all(_holds(p, env, table) for p in phi.parts)
    return any(_holds(p, env, table) for p in phi.parts)


def sigma1_holds(
    table: Leq1Table,
    phi: Exists,
    params: Sequence[BaseLike],
    within: Optional[BaseLike] = None,
) -> bool:
    """``S |= phi(params)``; with ``within`` the structure is cut to the elements below it."""
    check_formula(phi)
    params = [as_base(p) for p in params]
    if len(params) != len(phi.free):
        raise FormulaError(f"{phi} takes {len(phi.free)} parameters, got {len(params)}")
    domain = list(table.structure.universe)
    if within is not None:
        domain = [u for u in domain if u < as_base(within)]
    for p in params:
        if p not in domain:
            raise FormulaError(f"parameter {p} is outside the structure")
    env: Dict[str, ExtendedBase] = dict(zip(phi.free, params))
    for witness in product(domain, repeat=len(phi.variables)):
        env.update(zip(phi.variables, witness))
        if _holds(phi.matrix, env, table):
            return True
    return False


def reflects(
    table: Leq1Table,
    alpha: BaseLike,
    beta: BaseLike,
    phi: Exists,
    params: Sequence[BaseLike],
) -> bool:
    """``beta |= phi(params)`` implies ``alpha |= phi(params)``."""
    if not sigma1_holds(table, phi, params, within=beta):
        return True
    return sigma1_holds(table, phi, params, within=alpha)


def diagram_formula(
    table: Leq1Table,
    xs: Sequence[BaseLike],
    ys: Sequence[BaseLike],
) -> Exists:
    """``exists y . theta_0 & theta_1``: the order and ``<=_1`` type of ``xs + ys``
    and the representation facts that hold among them, with ``xs`` as parameters."""
    xs, ys = [as_base(x) for x in xs], [as_base(y) for y in ys]
    if len(set(xs) | set(ys)) != len(xs) + len(ys):
        raise FormulaError("parameters and witnesses must be distinct elements")
    names: Dict[ExtendedBase, str] = {x: f"x{i}" for i, x in enumerate(xs)}
    names.update({y: f"y{j}" for j, y in enumerate(ys)})
    for z in names:
        if z not in table.structure:
            raise FormulaError(f"{z} is outside the structure")
    elements = sorted(names)
    literals: List[Formula] = []
    for a, b in combinations(elements, 2):
        literals.append(Le(names[a], names[b]))
        literals.append(Not(Le(names[b], names[a])))
        atom = Leq1(names[a], names[b])
        literals.append(atom if table.holds(a, b) else Not(atom))
    for z in elements:
        rep = table.structure.reps[z]
        if rep is not None and all(a in names for a in rep.args):
            literals.append(Rep(names[z], rep.sigma, tuple(names[a] for a in rep.args)))
    return Exists(tuple(names[y] for y in ys), And(tuple(literals)), tuple(names[x] for x in xs))


def diagram_formulas(
    table: Leq1Table,
    alpha: BaseLike,
    beta: BaseLike,
    max_witnesses: int = 2,
) -> Iterator[Tuple[Exists, Tuple[ExtendedBase, ...]]]:
    """Every diagram formula of ``X`` below ``alpha`` and ``Y`` in ``[alpha, beta)``
    with at most ``max_witnesses`` elements in ``Y``, paired with its parameters."""
    if max_witnesses < 1:
        raise FormulaError(f"at least one witness is needed, got {max_witnesses}")
    alpha, beta = as_base(alpha), as_base(beta)
    below = table.structure.below(alpha)
    window = [u for u in table.structure.universe if not u < alpha and u < beta]
    for size in range(1, min(max_witnesses, len(window)) + 1):
        for ys in combinations(window, size):
            for xsize in range(len(below) + 1):
                for xs in combinations(below, xsize):
                    yield diagram_formula(table, xs, ys), xs
