from __future__ import annotations
import json
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import typer

from ..collapse.construct import build_collapse, minimality_rescan, normal_collapse
from ..collapse.oracles import AssumeOracle, FixtureOracle, ResemblanceOracle, TableOracle
from ..collapse.validate import validate_collapse
from ..config import get_settings
from ..core.combinators import SigmaOf
from ..core.dilator import Dilator, FiniteTable, enumerate_trace, effective_bound
from ..core.validate import validate_predilator, validate_normality
from ..domain import ExitCode, OutputFormat, Semantics, TableFormat
from ..errors import (
    ArityError,
    CollapseError,
    DilatorsError,
    FormulaError,
    NotationError,
    NotNormalError,
    NotRepresentableError,
    SpecFileError,
    SubstitutionError,
    TermError,
    UniverseError,
)
from ..ordinals.grammar import parse_base, parse_optional_base, parse_universe
from ..resemblance.clubs import ClubSlice, club_slice, fd_slice
from ..resemblance.structure import Leq1Table, leq1_criterion, leq1_table, pattern_structure
from ..schemas import LawReport
from ..sigma.construction import sigma_dilator
from ..sigma.fundamental import CLAUSES, check_fund_basic
from ..storage.spec_files import dilator_to_spec, dump_spec, resolve_dilator
from ..storage.tables import (
    collapse_to_tsv,
    leq1_to_dot,
    leq1_to_tsv,
    read_collapse_tsv,
    read_fixture_tsv,
    write_leq1_xlsx,
    write_text,
)
from ..terms.term import DilatorTerm, Representation, check_term, element_to_term, term_compare
from ..terms.values import evaluate, represent
from ..terms.wellfounded import find_descent
from ..utils.logging import configure_logging

cli = typer.Typer(help="Dilators, patterns of resemblance and Bachmann-Howard collapses")
collapse_cli = typer.Typer(help="Build and check collapses theta : D(alpha) -> alpha")
cli.add_typer(collapse_cli, name="collapse")

USAGE_ERRORS = (
    NotationError,
    SpecFileError,
    UniverseError,
    FormulaError,
    NotNormalError,
    NotRepresentableError,
    TermError,
    SubstitutionError,
    ArityError,
    CollapseError,
)


@cli.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging")):
    settings = get_settings()
    configure_logging(debug=verbose or settings.DEBUG)


@contextmanager
def _guarded() -> Iterator[None]:
    """Map package errors to exit codes 2 (bad input) and 3 (broken invariant)."""
    try:
        yield
    except USAGE_ERRORS as e:
        typer.secho(f"Error: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=ExitCode.usage)
    except DilatorsError as e:
        typer.secho(f"Internal error: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=ExitCode.internal)


def _counterexample(payload: Dict[str, Any]) -> None:
    typer.echo("counterexample:")
    typer.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _emit_text(text: str, out: Optional[str]) -> None:
    if out:
        with _guarded():
            write_text(text, out)
        typer.secho(f"Wrote {out}", fg=typer.colors.GREEN, err=True)
    else:
        typer.echo(text, nl=False)


def _law_report(report: LawReport, format: OutputFormat) -> None:
    if format is OutputFormat.json:
        typer.echo(report.model_dump_json(indent=2))
    else:
        for law in report.laws:
            tag = "PASS" if law.passed else "FAIL"
            color = typer.colors.GREEN if law.passed else typer.colors.RED
            typer.secho(f"{tag} {law.law} ({law.mode}, {law.checked} checked)", fg=color)
    if not report.passed:
        if format is OutputFormat.text:
            _counterexample({law.law: law.counterexample for law in report.failures()})
        raise typer.Exit(code=ExitCode.violation)


def _structure_table(
    d: Dilator,
    universe: str,
    semantics: Optional[Semantics],
    padding: Optional[int],
    criterion: bool = False,
    workers: Optional[int] = None,
) -> Leq1Table:
    structure = pattern_structure(d, parse_universe(universe), semantics, padding)
    build = leq1_criterion if criterion else leq1_table
    return build(structure, workers=workers)


def _print_slice(result: ClubSlice) -> None:
    typer.echo("members: " + ", ".join(str(u) for u in result.members))
    if result.undetermined:
        typer.secho(
            "undetermined: " + ", ".join(str(u) for u in result.undetermined),
            fg=typer.colors.YELLOW,
        )


@cli.command("validate")
def validate_cmd(
    dilator: str = typer.Argument(..., help="Spec file or builtin such as identity, const:2, sigma:identity"),
    bound: Optional[int] = typer.Option(None, help="Largest arity to check (default: DILATORS_DEFAULT_BOUND)"),
    seed: Optional[int] = typer.Option(None, help="Seed for sampled laws"),
    workers: Optional[int] = typer.Option(None, help="Check laws on this many threads"),
    format: OutputFormat = typer.Option(OutputFormat.text, "--format", help="text or json"),
):
    """Check the pre-dilator laws up to the bound."""
    with _guarded():
        d = resolve_dilator(dilator)
        report = validate_predilator(d, bound, seed=seed, workers=workers)
    _law_report(report, format)


@cli.command("normality")
def normality_cmd(
    dilator: str,
    bound: Optional[int] = typer.Option(None),
    seed: Optional[int] = typer.Option(None),
    format: OutputFormat = typer.Option(OutputFormat.text, "--format"),
):
    """Check the normality data of a dilator."""
    with _guarded():
        d = resolve_dilator(dilator)
        report = validate_normality(d, d.normality, bound, seed=seed)
    _law_report(report, format)


@cli.command("trace")
def trace_cmd(dilator: str, bound: Optional[int] = typer.Option(None)):
    """List the constructors (sigma, n) with full support."""
    with _guarded():
        d = resolve_dilator(dilator)
        elements = enumerate_trace(d, effective_bound(d, bound))
    if not elements:
        typer.secho("Trace is empty.", fg=typer.colors.YELLOW)
    for t in elements:
        typer.echo(str(t))


@cli.command("compare")
def compare_cmd(dilator: str, left: str, right: str):
    """Compare two terms such as '(0 ; 1 ; w)' over the same base."""
    with _guarded():
        d = resolve_dilator(dilator)
        s = check_term(d, DilatorTerm.parse(left))
        t = check_term(d, DilatorTerm.parse(right))
        result = term_compare(d, s, t)
    typer.echo(f"{s} {result.symbol} {t}")


@cli.command("repr")
def repr_cmd(
    dilator: str,
    value: str = typer.Argument(..., help="An ordinal, or a representation '(sigma ; args)' to evaluate"),
):
    """Representation of an ordinal value of a normal dilator, or the value of a representation."""
    with _guarded():
        e = resolve_dilator(dilator)
        if value.strip().startswith("("):
            r = Representation.parse(value)
            typer.echo(f"{r} = {evaluate(e, r)}")
        else:
            x = parse_base(value)
            typer.echo(f"{x} = {represent(e, x)}")


@cli.command("sigma")
def sigma_cmd(
    dilator: str,
    bound: Optional[int] = typer.Option(None, help="Emit a finite table up to this arity"),
    check: bool = typer.Option(False, help="Validate the dilator before normalizing it"),
    out: Optional[str] = typer.Option(None, help="Output file path"),
):
    """Emit a JSON spec file for the normalization SigmaD."""
    with _guarded():
        d = resolve_dilator(dilator)
        if check:
            report = validate_predilator(d)
            if not report.passed:
                typer.secho(f"{d.name} is not a pre-dilator.", fg=typer.colors.RED)
                _counterexample({law.law: law.counterexample for law in report.failures()})
                raise typer.Exit(code=ExitCode.violation)
        derived = sigma_dilator(d).derived
        if bound is None and isinstance(d, FiniteTable):
            bound = derived.bound
        spec = dilator_to_spec(derived, bound)
    _emit_text(dump_spec(spec), out)


@cli.command("leq1")
def leq1_cmd(
    dilator: str = typer.Option("none", "--dilator", "-d", help="Spec file or builtin; 'none' is the pure signature"),
    universe: str = typer.Option(..., help="'0..N' or a comma-separated list of ordinals"),
    semantics: Optional[Semantics] = typer.Option(None, help="exact or relativized (default: exact on 0..N)"),
    padding: Optional[int] = typer.Option(None, help="Fresh naturals available to relativized searches"),
    criterion: bool = typer.Option(False, help="Carry representation facts forward only"),
    workers: Optional[int] = typer.Option(None),
    format: TableFormat = typer.Option(TableFormat.tsv, "--format", help="tsv, dot or xlsx"),
    out: Optional[str] = typer.Option(None, help="Output file path (required for xlsx)"),
):
    """Compute the <=_1 table of a finite structure."""
    if format is TableFormat.xlsx and not out:
        typer.secho("xlsx output needs --out", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=ExitCode.usage)
    with _guarded():
        d = resolve_dilator(dilator)
        table = _structure_table(d, universe, semantics, padding, criterion, workers)
    if format is TableFormat.xlsx:
        with _guarded():
            write_leq1_xlsx(table, out)
        typer.secho(f"Exported to {out}", fg=typer.colors.GREEN)
    elif format is TableFormat.dot:
        _emit_text(leq1_to_dot(table), out)
    else:
        _emit_text(leq1_to_tsv(table), out)


@cli.command("club")
def club_cmd(
    gamma: str = typer.Argument(..., help="A representation such as '(0 ; 3)'"),
    dilator: str = typer.Option(..., "--dilator", "-d"),
    universe: str = typer.Option(...),
    semantics: Optional[Semantics] = typer.Option(None),
    padding: Optional[int] = typer.Option(None),
):
    """Members of C_D(gamma) within the universe."""
    with _guarded():
        e = resolve_dilator(dilator)
        table = _structure_table(e, universe, semantics, padding)
        result = club_slice(e, Representation.parse(gamma), table)
    _print_slice(result)


@cli.command("fd")
def fd_cmd(
    gamma: str = typer.Argument(..., help="A representation such as '(1 ; 2, 5)'"),
    eta: str = typer.Option(..., help="Bound on the star of the intersected indices"),
    dilator: str = typer.Option(..., "--dilator", "-d"),
    universe: str = typer.Option(...),
    window_base: Optional[str] = typer.Option(None, help="Base of the window (default: last argument of gamma)"),
    semantics: Optional[Semantics] = typer.Option(None),
    padding: Optional[int] = typer.Option(None),
):
    """Members of F_D(gamma, eta) within the universe."""
    with _guarded():
        e = resolve_dilator(dilator)
        table = _structure_table(e, universe, semantics, padding)
        base = parse_optional_base(window_base)
        result = fd_slice(e, Representation.parse(gamma), parse_base(eta), table, base)
    _print_slice(result)


@collapse_cli.command("normal")
def collapse_normal_cmd(
    dilator: str = typer.Option(..., "--dilator", "-d"),
    lam: str = typer.Option("w", "--lambda", help="A limit fixed point of the dilator"),
    upto: int = typer.Option(10, help="Tabulate theta(gamma) for gamma = 0..upto"),
    out: Optional[str] = typer.Option(None),
):
    """theta(gamma) = E(gamma + 1) for a normal dilator."""
    with _guarded():
        e = resolve_dilator(dilator)
        table = normal_collapse(e, parse_base(lam), range(upto + 1))
    _emit_text(collapse_to_tsv(table), out)


def _truncation(d: Dilator, alpha, terms: Optional[str]) -> List[DilatorTerm]:
    if terms:
        try:
            with open(terms, encoding="utf-8") as fh:
                lines = [line for line in fh if line.strip()]
        except OSError as exc:
            raise SpecFileError(f"cannot read {terms}: {exc}") from exc
        return [check_term(d, DilatorTerm.parse(line)) for line in lines]
    if not alpha.is_finite:
        raise UniverseError(f"terms over the infinite {alpha} must be listed with --terms")
    n = alpha.to_int()
    return [element_to_term(d, n, sigma) for sigma in d.elements(n)]


@collapse_cli.command("build")
def collapse_build_cmd(
    dilator: str = typer.Option(..., "--dilator", "-d"),
    alpha: str = typer.Option(..., help="Base of the terms to collapse"),
    universe: Optional[str] = typer.Option(None, help="Structure for the <=_1 table of SigmaD; also the search range"),
    fixture: Optional[str] = typer.Option(None, help="TSV of 'delta<TAB>representation' pairs that hold"),
    assume: Optional[bool] = typer.Option(None, "--assume/--refute", help="Answer every query the same way"),
    terms: Optional[str] = typer.Option(None, help="File with one term per line (default: all terms over a finite alpha)"),
    padding: Optional[int] = typer.Option(None),
    workers: Optional[int] = typer.Option(None),
    out: Optional[str] = typer.Option(None),
):
    """theta(gamma) = least delta >= xi(gamma)* with delta <=_1 xi(gamma)[delta]."""
    with _guarded():
        d = resolve_dilator(dilator)
        base = parse_base(alpha)
        search = parse_universe(universe) if universe else None
        oracle: ResemblanceOracle
        if fixture:
            oracle = FixtureOracle(read_fixture_tsv(fixture), search)
        elif assume is not None:
            oracle = AssumeOracle(assume, search)
        elif universe:
            e = SigmaOf(d)
            structure = pattern_structure(e, search, padding=padding)
            oracle = TableOracle(e, leq1_table(structure, workers=workers))
        else:
            raise UniverseError("give --universe, --fixture or --assume/--refute")
        table = build_collapse(d, base, oracle, _truncation(d, base, terms), workers=workers)
        violations = minimality_rescan(table, oracle)
    missing = [t for t, v in table.entries.items() if v is None]
    if missing:
        typer.secho(f"{len(missing)} entries have no witness in range", fg=typer.colors.YELLOW, err=True)
    _emit_text(collapse_to_tsv(table), out)
    if violations:
        typer.secho("Minimality re-scan failed.", fg=typer.colors.RED, err=True)
        _counterexample({"minimality": [v.model_dump() for v in violations]})
        raise typer.Exit(code=ExitCode.violation)


@collapse_cli.command("check")
def collapse_check_cmd(
    path: str,
    dilator: Optional[str] = typer.Option(None, "--dilator", "-d", help="Needed when the header names no builtin"),
    format: OutputFormat = typer.Option(OutputFormat.text, "--format"),
):
    """Validate conditions (a) and (b) on a collapse table."""
    with _guarded():
        d = resolve_dilator(dilator) if dilator else None
        report = validate_collapse(read_collapse_tsv(path, d))
    if format is OutputFormat.json:
        typer.echo(report.model_dump_json(indent=2))
    elif report.valid:
        typer.secho(f"Valid: {report.entries} entries of {report.dilator} over {report.alpha}", fg=typer.colors.GREEN)
        if report.skipped:
            typer.secho(f"Skipped {report.skipped} entries with no witness", fg=typer.colors.YELLOW)
    else:
        for v in report.violations:
            typer.secho(f"({v.condition}) {' / '.join(v.pair)}: {v.lhs} vs {v.rhs}", fg=typer.colors.RED)
        _counterexample({"violations": [v.model_dump() for v in report.violations]})
    if not report.valid:
        raise typer.Exit(code=ExitCode.violation)


@cli.command("fundlemma")
def fundlemma_cmd(
    dilator: str,
    samples: Optional[int] = typer.Option(None, help="Instances per clause (default: DILATORS_FUND_SAMPLES)"),
    seed: Optional[int] = typer.Option(None),
    workers: Optional[int] = typer.Option(None),
    clause: Optional[List[str]] = typer.Option(None, help="Run only these clauses (a-g); repeatable"),
    format: OutputFormat = typer.Option(OutputFormat.text, "--format"),
):
    """Randomized battery for the laws of star and substitution."""
    if clause and any(c not in CLAUSES for c in clause):
        typer.secho(f"Clauses are {', '.join(CLAUSES)}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=ExitCode.usage)
    with _guarded():
        e = resolve_dilator(dilator)
        report = check_fund_basic(e, samples, seed, workers, clause)
    if format is OutputFormat.json:
        typer.echo(report.model_dump_json(indent=2))
    else:
        colors = {"passed": typer.colors.GREEN, "failed": typer.colors.RED, "vacuous": typer.colors.YELLOW}
        for c in report.clauses:
            typer.secho(
                f"({c.clause}) {c.status}: {c.passed}/{c.instances} of {c.requested} requested",
                fg=colors[str(c.status)],
            )
    if not report.passed:
        if format is OutputFormat.text:
            _counterexample({c.clause: c.counterexample for c in report.clauses if c.counterexample})
        raise typer.Exit(code=ExitCode.violation)


@cli.command("wf")
def wf_cmd(
    dilator: str,
    alpha: str = typer.Option("w", help="Base of the term order to search"),
    budget: Optional[int] = typer.Option(None),
    seed: Optional[int] = typer.Option(None),
    format: OutputFormat = typer.Option(OutputFormat.text, "--format"),
):
    """Look for a descending sequence in the terms over alpha."""
    with _guarded():
        d = resolve_dilator(dilator)
        report = find_descent(d, parse_base(alpha), budget, seed)
    if format is OutputFormat.json:
        typer.echo(report.model_dump_json(indent=2))
    elif report.status == "refuted":
        typer.secho(f"Ill-founded over {report.base}", fg=typer.colors.RED)
        _counterexample({"term": report.term, "embedding": report.embedding, "chain": report.chain})
    else:
        typer.secho(f"No descent found within {report.budget} steps", fg=typer.colors.YELLOW)
    if report.status == "refuted":
        raise typer.Exit(code=ExitCode.violation)


if __name__ == "__main__":
    # Allow running via: python -m dilators.cli.main [COMMANDS]
    cli()
