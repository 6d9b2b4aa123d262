"""JSON dilator specs: loading, dumping and conversion to and from presentations."""
from __future__ import annotations
import logging
import os
from typing import Dict, List, Optional, Tuple

from pydantic import TypeAdapter, ValidationError

from ..core.combinators import Const, Identity, SigmaOf, Sum, builtin_dilator
from ..core.dilator import Dilator, FiniteTable, tabulate
from ..errors import NotationError, PresentationError, SpecFileError
from ..ordinals.cnf import cnf_render
from ..ordinals.grammar import cnf_parse
from ..schemas import (
    CombinatorExpr,
    CombinatorSpec,
    ConstExpr,
    DilatorSpec,
    IdentityExpr,
    SigmaExpr,
    SumExpr,
    TableSpec,
)

logger = logging.getLogger(__name__)

_adapter = TypeAdapter(DilatorSpec)


def parse_spec(text: str) -> DilatorSpec:
    try:
        return _adapter.validate_json(text)
    except ValidationError as exc:
        raise SpecFileError(f"invalid dilator spec: {exc.errors()[0]['msg']}") from exc


def load_spec(path: str) -> DilatorSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    return parse_spec(text)


def dump_spec(spec: DilatorSpec) -> str:
    return spec.model_dump_json(indent=2, exclude_none=True) + "\n"


def save_spec(spec: DilatorSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_spec(spec))


def _nat(text: str, where: str) -> int:
    try:
        value = cnf_parse(text)
    except NotationError as exc:
        raise SpecFileError(f"{where}: {exc}") from exc
    if not value.is_finite:
        raise SpecFileError(f"{where}: table entries must be natural numbers, got {text}")
    return value.to_int()


def _key(text: str, parts: int, where: str) -> Tuple[int, ...]:
    try:
        key = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise SpecFileError(f"{where}: bad key {text!r}") from exc
    if len(key) != parts:
        raise SpecFileError(f"{where}: key {text!r} needs {parts} numbers")
    return key


def _table(spec: TableSpec) -> FiniteTable:
    values = tuple(_nat(v, "values") for v in spec.values)
    cofaces = {
        _key(k, 2, "cofaces"): tuple(_nat(x, f"cofaces[{k}]") for x in row)
        for k, row in spec.cofaces.items()
    }
    supports: Dict[int, List[Tuple[int, ...]]] = {n: [None] * size for n, size in enumerate(values)}
    for k, supp in spec.supports.items():
        n, sigma = _key(k, 2, "supports")
        if n not in supports or not 0 <= sigma < values[n]:
            raise SpecFileError(f"supports: {k!r} names no element of the table")
        supports[n][sigma] = tuple(supp)
    for n, rows in supports.items():
        if any(row is None for row in rows):
            raise SpecFileError(f"supports: some element of D({n}) has no support")
    mu = None
    if spec.mu is not None:
        mu = {_key(k, 1, "mu")[0]: tuple(_nat(x, f"mu[{k}]") for x in row) for k, row in spec.mu.items()}
    try:
        return FiniteTable(
            spec.bound,
            values,
            cofaces,
            {n: tuple(rows) for n, rows in supports.items()},
            mu,
            spec.name or "table",
        )
    except PresentationError as exc:
        raise SpecFileError(str(exc)) from exc


def _combinator(expr) -> Dilator:
    if isinstance(expr, ConstExpr):
        try:
            return Const(cnf_parse(expr.value))
        except NotationError as exc:
            raise SpecFileError(f"const: {exc}") from exc
    if isinstance(expr, IdentityExpr):
        return Identity()
    if isinstance(expr, SumExpr):
        return Sum(_combinator(expr.args[0]), _combinator(expr.args[1]))
    return SigmaOf(_combinator(expr.args[0]))


def spec_to_dilator(spec: DilatorSpec) -> Dilator:
    if isinstance(spec, TableSpec):
        return _table(spec)
    return _combinator(spec.expr)


def _expr(d: Dilator) -> CombinatorExpr:
    if isinstance(d, Const):
        return ConstExpr(op="const", value=cnf_render(d.nu))
    if isinstance(d, Identity):
        return IdentityExpr(op="identity")
    if isinstance(d, Sum):
        return SumExpr(op="sum", args=[_expr(d.left), _expr(d.right)])
    if isinstance(d, SigmaOf):
        return SigmaExpr(op="sigma", args=[_expr(d.underlying)])
    raise SpecFileError(f"{d.name} is not a combinator")


def _table_spec(t: FiniteTable) -> TableSpec:
    return TableSpec(
        kind="table",
        name=t.name,
        bound=t.bound,
        values=[str(v) for v in t.values],
        cofaces={f"{n},{i}": [str(x) for x in row] for (n, i), row in sorted(t.cofaces.items())},
        supports={
            f"{n},{s}": list(supp)
            for n in sorted(t.supports)
            for s, supp in enumerate(t.supports[n])
        },
        mu=None if t.mu is None else {str(n): [str(x) for x in row] for n, row in sorted(t.mu.items())},
    )


def dilator_to_spec(d: Dilator, bound: Optional[int] = None) -> DilatorSpec:
    """A combinator spec for combinators, a table spec for tables; ``bound`` forces a table."""
    if bound is not None:
        return _table_spec(tabulate(d, bound, d.name))
    if isinstance(d, FiniteTable):
        return _table_spec(d)
    return CombinatorSpec(kind="combinator", expr=_expr(d))


def resolve_dilator(selector: str) -> Dilator:
    """A spec file path, or one of the builtin expressions such as ``identity``."""
    if os.path.exists(selector):
        d = spec_to_dilator(load_spec(selector))
    else:
        try:
            d = builtin_dilator(selector)
        except NotationError as exc:
            raise SpecFileError(f"{selector!r} is neither a spec file nor a builtin dilator: {exc}") from exc
    logger.debug("using dilator %s", d.name)
    return d
