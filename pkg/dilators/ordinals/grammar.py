"""Parsing and rendering of ordinals, bases, terms and representations.

Every parsed string is checked against its canonical rendering, so that
``render(parse(s)) == s`` up to whitespace and non-canonical spellings such
as ``w^1`` or ``3 + w`` are refused with the column of the first deviation.
"""
from __future__ import annotations
from functools import lru_cache
from typing import List, Optional, Tuple

import lark

from ..errors import NotationError
from .cnf import ExtendedBase, Ordinal, ZERO, OMEGA, cnf_add, cnf_render

GRAMMAR = r"""
ordinal: summand ("+" summand)*

summand: OMEGA exponent? coefficient?   -> power
       | NAT                            -> finite

exponent: "^" exp_atom
exp_atom: NAT                           -> nat_exponent
        | OMEGA                         -> omega_exponent
        | "(" ordinal ")"               -> nested_exponent
coefficient: "*" NAT

base: BIG_OMEGA ("+" ordinal)?          -> symbolic
    | ordinal                           -> plain

args: (base ("," base)*)?

term: "(" ordinal ";" args ";" base ")"
representation: "(" ordinal ";" args ")"
dd_element: "<" ordinal ";" args ">"

OMEGA: "w"
BIG_OMEGA: "W"
NAT: /[0-9]+/

%import common.WS
%ignore WS
"""


class _ToValues(lark.Transformer):
    def NAT(self, token):
        return int(token)

    def ordinal(self, items):
        value = ZERO
        exps = []
        for summand in items:
            lead = summand.terms[0][0] if summand.terms else None
            if lead is not None and exps and not lead < exps[-1]:
                raise NotationError("exponents must be strictly decreasing")
            if lead is not None:
                exps.append(lead)
            value = cnf_add(value, summand)
        return value

    def finite(self, items):
        return Ordinal.of(items[0])

    def power(self, items):
        exponent = Ordinal.of(1)
        coefficient = 1
        for item in items[1:]:
            if isinstance(item, tuple) and item[0] == "exp":
                exponent = item[1]
            elif isinstance(item, tuple) and item[0] == "coeff":
                coefficient = item[1]
        if coefficient < 1:
            raise NotationError("coefficient must be positive")
        if exponent.is_zero:
            return Ordinal.of(coefficient)
        return Ordinal.omega_power(exponent, coefficient)

    def exponent(self, items):
        return ("exp", items[0])

    def coefficient(self, items):
        return ("coeff", items[0])

    def nat_exponent(self, items):
        return Ordinal.of(items[0])

    def omega_exponent(self, _items):
        return OMEGA

    def nested_exponent(self, items):
        return items[0]

    def symbolic(self, items):
        rest = items[1] if len(items) > 1 else ZERO
        return ExtendedBase.omega_plus(rest)

    def plain(self, items):
        return ExtendedBase.plain(items[0])

    def args(self, items):
        return tuple(items)

    def term(self, items):
        return ("term", items[0], items[1], items[2])

    def representation(self, items):
        return ("representation", items[0], items[1])

    def dd_element(self, items):
        return ("dd", items[0], items[1])


@lru_cache(maxsize=1)
def _parser() -> lark.Lark:
    return lark.Lark(
        GRAMMAR,
        start=["ordinal", "base", "term", "representation", "dd_element"],
        parser="lalr",
    )


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
    except lark.exceptions.UnexpectedInput as exc:
        raise NotationError(f"syntax error in {text!r}", position=exc.column) from exc
    try:
        return _ToValues().transform(tree)
    except lark.exceptions.VisitError as exc:
        if isinstance(exc.orig_exc, NotationError):
            raise NotationError(f"{exc.orig_exc} in {text!r}") from exc
        raise


def _check_canonical(text: str, rendered: str) -> None:
    columns = [i + 1 for i, ch in enumerate(text) if not ch.isspace()]
    squeezed = "".join(ch for ch in text if not ch.isspace())
    canonical = "".join(ch for ch in rendered if not ch.isspace())
    if squeezed == canonical:
        return
    at = next(
        (i for i, (a, b) in enumerate(zip(squeezed, canonical)) if a != b),
        min(len(squeezed), len(canonical)),
    )
    column = columns[at] if at < len(columns) else (columns[-1] + 1 if columns else 1)
    raise NotationError(f"non-canonical notation {text!r}, expected {rendered!r}", position=column)


def cnf_parse(text: str) -> Ordinal:
    value = _parse(text, "ordinal")
    _check_canonical(text, cnf_render(value))
    return value


def parse_base(text: str) -> ExtendedBase:
    value = _parse(text, "base")
    _check_canonical(text, str(value))
    return value


def render_args(args) -> str:
    return ", ".join(str(a) for a in args)


def render_term(sigma: Ordinal, args, base: ExtendedBase) -> str:
    middle = f" {render_args(args)}" if args else ""
    return f"({cnf_render(sigma)} ;{middle} ; {base})"


def render_representation(sigma: Ordinal, args) -> str:
    middle = f" {render_args(args)}" if args else ""
    return f"({cnf_render(sigma)} ;{middle})"


def render_dd(sigma: Ordinal, args) -> str:
    middle = f" {render_args(args)}" if args else ""
    return f"<{cnf_render(sigma)} ;{middle}>"


def parse_term_parts(text: str) -> Tuple[Ordinal, Tuple[ExtendedBase, ...], ExtendedBase]:
    _, sigma, args, base = _parse(text, "term")
    _check_canonical(text, render_term(sigma, args, base))
    return sigma, args, base


def parse_representation_parts(text: str) -> Tuple[Ordinal, Tuple[ExtendedBase, ...]]:
    _, sigma, args = _parse(text, "representation")
    _check_canonical(text, render_representation(sigma, args))
    return sigma, args


def parse_dd_parts(text: str) -> Tuple[Ordinal, Tuple[ExtendedBase, ...]]:
    _, sigma, args = _parse(text, "dd_element")
    _check_canonical(text, render_dd(sigma, args))
    return sigma, args


def parse_universe(text: str) -> List[ExtendedBase]:
    """``"0..12"`` for an initial segment, otherwise a comma-separated list."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            start, stop = int(lo), int(hi)
        except ValueError as exc:
            raise NotationError(f"bad range {text!r}") from exc
        if stop < start:
            raise NotationError(f"empty range {text!r}")
        return [ExtendedBase.plain(n) for n in range(start, stop + 1)]
    items = [part for part in text.split(",") if part.strip()]
    return sorted({parse_base(part.strip()) for part in items})


def parse_optional_base(text: Optional[str]) -> Optional[ExtendedBase]:
    return parse_base(text) if text else None
