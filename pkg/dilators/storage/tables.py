"""Relation tables and collapse tables on disk: TSV, DOT and XLSX."""
from __future__ import annotations
import io
import os
from typing import Dict, List, Optional, Tuple

import pandas as pd
from openpyxl.utils import get_column_letter

from ..core.combinators import builtin_dilator
from ..core.dilator import Dilator
from ..domain import Provenance, Semantics
from ..errors import NotationError, SpecFileError, TermError
from ..ordinals.cnf import ExtendedBase
from ..ordinals.grammar import parse_base
from ..resemblance.structure import Leq1Table
from ..schemas import TableHeader
from ..terms.term import DilatorTerm, Representation
from ..collapse.table import CollapseTable

LEQ1_COLUMNS = ["alpha", "beta", "leq1"]
COLLAPSE_COLUMNS = ["term", "ordinal"]
NO_WITNESS = "-"


def _header_lines(fields: Dict[str, str]) -> str:
    return "".join(f"# {k}: {v}\n" for k, v in fields.items())


def _read_header(text: str) -> Dict[str, str]:
    fields = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, sep, value = line[1:].partition(":")
        if not sep:
            raise SpecFileError(f"malformed header line {line!r}")
        fields[key.strip()] = value.strip()
    return fields


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc


def _frame(text: str, columns: List[str]) -> pd.DataFrame:
    df = pd.read_csv(io.StringIO(text), sep="\t", comment="#", dtype=str, keep_default_na=False)
    if list(df.columns) != columns:
        raise SpecFileError(f"expected columns {', '.join(columns)}, got {', '.join(df.columns)}")
    return df


# -- <=_1 tables ---------------------------------------------------------------

def leq1_frame(table: Leq1Table) -> pd.DataFrame:
    rows = [(str(a), str(b), "true" if ok else "false") for a, b, ok in table.pairs()]
    return pd.DataFrame(rows, columns=LEQ1_COLUMNS)


def leq1_header(table: Leq1Table) -> Dict[str, str]:
    header = table.structure.header()
    return {
        "dilator": header.dilator,
        "semantics": str(header.semantics),
        "universe": ",".join(header.universe),
        "padding": str(header.padding),
    }


def leq1_to_tsv(table: Leq1Table) -> str:
    body = leq1_frame(table).to_csv(sep="\t", index=False, lineterminator="\n")
    return _header_lines(leq1_header(table)) + body


def parse_leq1_tsv(text: str) -> Tuple[TableHeader, Dict[Tuple[ExtendedBase, ExtendedBase], bool]]:
    fields = _read_header(text)
    try:
        header = TableHeader(
            dilator=fields["dilator"],
            semantics=Semantics(fields["semantics"]),
            universe=[u for u in fields["universe"].split(",") if u],
            padding=int(fields.get("padding", "0")),
        )
    except (KeyError, ValueError) as exc:
        raise SpecFileError(f"incomplete table header: {exc}") from exc
    verdicts = {}
    try:
        for row in _frame(text, LEQ1_COLUMNS).itertuples(index=False):
            if row.leq1 not in ("true", "false"):
                raise SpecFileError(f"verdict must be true or false, got {row.leq1!r}")
            verdicts[(parse_base(row.alpha), parse_base(row.beta))] = row.leq1 == "true"
    except NotationError as exc:
        raise SpecFileError(str(exc)) from exc
    return header, verdicts


def read_leq1_tsv(path: str):
    return parse_leq1_tsv(_read_text(path))


def leq1_to_dot(table: Leq1Table) -> str:
    lines = ["digraph leq1 {"]
    lines.extend(f'  "{u}";' for u in table.structure.universe)
    lines.extend(f'  "{a}" -> "{b}";' for a, b in table.related())
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_leq1_xlsx(table: Leq1Table, path: str) -> None:
    df = leq1_frame(table)
    header = pd.DataFrame(list(leq1_header(table).items()), columns=["field", "value"])
    try:
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            df.to_excel(writer, index=False, sheet_name="leq1")
            _set_column_widths(writer.sheets["leq1"], df)
            header.to_excel(writer, index=False, sheet_name="structure")
            _set_column_widths(writer.sheets["structure"], header)
    except OSError as exc:
        raise SpecFileError(f"cannot write {path}: {exc}") from exc


def _set_column_widths(ws, df: pd.DataFrame) -> None:
    widths = {
        "alpha": 24,
        "beta": 24,
        "leq1": 8,
        "field": 12,
        "value": 60,
    }
    for idx, col_name in enumerate(df.columns, start=1):
        letter = get_column_letter(idx)
        ws.column_dimensions[letter].width = widths.get(col_name, 20)


# -- collapse tables -----------------------------------------------------------

def collapse_to_tsv(table: CollapseTable) -> str:
    rows = [(str(t), NO_WITNESS if v is None else str(v)) for t, v in table.ordered()]
    body = pd.DataFrame(rows, columns=COLLAPSE_COLUMNS).to_csv(sep="\t", index=False, lineterminator="\n")
    fields = {
        "dilator": table.dilator.name,
        "alpha": str(table.alpha),
        "provenance": str(table.provenance),
    }
    return _header_lines(fields) + body


def parse_collapse_tsv(text: str, dilator: Optional[Dilator] = None) -> CollapseTable:
    """Read a collapse table; without ``dilator`` the header's name must be a builtin."""
    fields = _read_header(text)
    if "alpha" not in fields:
        raise SpecFileError("collapse table has no '# alpha:' line")
    try:
        if dilator is None:
            dilator = builtin_dilator(fields.get("dilator", ""))
        alpha = parse_base(fields["alpha"])
        provenance = Provenance(fields.get("provenance", Provenance.user_supplied))
        entries = {}
        for row in _frame(text, COLLAPSE_COLUMNS).itertuples(index=False):
            value = None if row.ordinal == NO_WITNESS else parse_base(row.ordinal)
            entries[DilatorTerm.parse(row.term)] = value
        return CollapseTable(dilator, alpha, entries, provenance)
    except (NotationError, TermError) as exc:
        raise SpecFileError(str(exc)) from exc
    except ValueError as exc:
        raise SpecFileError(f"bad collapse table: {exc}") from exc


def read_collapse_tsv(path: str, dilator: Optional[Dilator] = None) -> CollapseTable:
    return parse_collapse_tsv(_read_text(path), dilator)


def write_text(text: str, path: str) -> None:
    folder = os.path.dirname(path)
    try:
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise SpecFileError(f"cannot write {path}: {exc}") from exc


# -- oracle fixtures -----------------------------------------------------------

FIXTURE_COLUMNS = ["delta", "representation"]


def parse_fixture_tsv(text: str) -> List[Tuple[ExtendedBase, Representation]]:
    """Pairs ``(delta, r)`` for which ``delta <=_1 r`` is asserted to hold."""
    try:
        return [
            (parse_base(row.delta), Representation.parse(row.representation))
            for row in _frame(text, FIXTURE_COLUMNS).itertuples(index=False)
        ]
    except (NotationError, TermError) as exc:
        raise SpecFileError(str(exc)) from exc


def read_fixture_tsv(path: str) -> List[Tuple[ExtendedBase, Representation]]:
    return parse_fixture_tsv(_read_text(path))
