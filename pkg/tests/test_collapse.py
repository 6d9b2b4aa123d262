import pytest

from dilators.collapse.construct import build_collapse, minimality_rescan, normal_collapse, witness_floor
from dilators.collapse.oracles import AssumeOracle, FixtureOracle, PredicateOracle, TableOracle
from dilators.collapse.table import CollapseTable
from dilators.collapse.validate import validate_collapse
from dilators.core.combinators import Identity, SigmaOf
from dilators.domain import EntryStatus, Provenance
from dilators.errors import CollapseError, OracleError, TermError
from dilators.ordinals.cnf import ExtendedBase, as_base
from dilators.resemblance.structure import leq1_table, pattern_structure
from dilators.sigma.construction import star
from dilators.terms.term import DilatorTerm, Representation, element_to_term, term_support
from tests.strategies import bases

W = bases("w")[0]
ALPHA = 6


def truncation(d, alpha=ALPHA):
    return [element_to_term(d, alpha, s) for s in d.elements(alpha)]


def witnesses(table):
    return [value for _, value in table.ordered()]


class TestNormalCollapse:
    def test_identity_collapse_is_valid(self):
        table = normal_collapse(Identity(), W, range(11))
        assert table.provenance is Provenance.constructed_normal
        assert witnesses(table) == bases(*range(1, 12))
        assert validate_collapse(table).valid

    def test_constant_collapse_breaks_support(self):
        good = normal_collapse(Identity(), W, range(11))
        zero = CollapseTable(good.dilator, good.alpha, {t: ExtendedBase.plain(0) for t in good.entries})
        report = validate_collapse(zero)
        assert {v.condition for v in report.violations} == {"b"}

    def test_swapped_values_break_the_order(self):
        good = normal_collapse(Identity(), W, range(11))
        entries = dict(good.entries)
        two, five = DilatorTerm.parse("(0 ; 2 ; w)"), DilatorTerm.parse("(0 ; 5 ; w)")
        entries[two], entries[five] = entries[five], entries[two]
        report = validate_collapse(CollapseTable(good.dilator, good.alpha, entries))
        assert "a" in {v.condition for v in report.violations}
        assert not report.valid

    def test_needs_a_limit_above_the_truncation(self):
        with pytest.raises(CollapseError):
            normal_collapse(Identity(), 5, range(3))
        with pytest.raises(CollapseError):
            normal_collapse(Identity(), W, bases(2, "w+1"))


class TestOracleCollapse:
    d = Identity()

    def test_search_matches_the_predicate(self):
        oracle = PredicateOracle(lambda delta, t: delta == star(SigmaOf(self.d), t))
        table = build_collapse(self.d, ALPHA, oracle, truncation(self.d))
        assert table.provenance is Provenance.constructed_oracle
        assert witnesses(table) == bases(1, 2, 3, 4, 5) + [None]
        report = validate_collapse(table)
        assert report.valid
        assert (report.entries, report.skipped) == (5, 1)
        assert minimality_rescan(table, oracle) == []

    def test_assumed_resemblance_takes_the_floor(self):
        oracle = AssumeOracle(True)
        table = build_collapse(self.d, ALPHA, oracle, truncation(self.d), workers=2)
        assert witnesses(table) == bases(1, 2, 3, 4, 5) + [None]
        for t, value in table.defined():
            floor = witness_floor(self.d, ALPHA, t)
            assert all(a < floor for a in term_support(t))
            assert not value < floor
        assert minimality_rescan(table, oracle) == []

    def test_refuted_resemblance_leaves_gaps(self):
        table = build_collapse(self.d, ALPHA, AssumeOracle(False), truncation(self.d))
        assert witnesses(table) == [None] * ALPHA
        report = validate_collapse(table)
        assert report.entries == 0
        assert report.skipped == ALPHA
        assert report.valid

    def test_rescan_finds_a_smaller_witness(self):
        table = build_collapse(self.d, ALPHA, AssumeOracle(False), truncation(self.d))
        violations = minimality_rescan(table, AssumeOracle(True))
        assert [v.smaller for v in violations] == ["1", "2", "3", "4", "5"]
        assert all(v.recorded == "-" for v in violations)

    def test_table_oracle(self):
        e = SigmaOf(self.d)
        oracle = TableOracle(e, leq1_table(pattern_structure(e, range(6))))
        table = build_collapse(self.d, ALPHA, oracle, truncation(self.d), search=range(3))
        assert witnesses(table) == [None] * ALPHA
        assert oracle.queries == 3
        with pytest.raises(OracleError):
            oracle(0, Representation.parse("(2 ; 0, 4)"))

    def test_fixture_oracle(self):
        oracle = FixtureOracle([(3, Representation.parse("(2 ; 2, 3)"))])
        table = build_collapse(self.d, ALPHA, oracle, truncation(self.d))
        t = DilatorTerm.parse("(0 ; 2 ; 6)")
        assert table.entries[t] == as_base(3)
        assert table.status(t) is EntryStatus.ok
        assert table.status(DilatorTerm.parse("(0 ; 1 ; 6)")) is EntryStatus.no_witness
        assert validate_collapse(table).valid

    def test_infinite_alpha_needs_a_search_range(self):
        with pytest.raises(CollapseError):
            build_collapse(self.d, W, AssumeOracle(True), [DilatorTerm.parse("(0 ; 2 ; w)")])


class TestCollapseTable:
    def test_terms_must_share_the_base(self):
        with pytest.raises(TermError):
            CollapseTable(Identity(), as_base(ALPHA), {DilatorTerm.parse("(0 ; 1 ; 5)"): None})

    def test_entries_are_ordered(self):
        terms = truncation(Identity())
        table = CollapseTable(Identity(), as_base(ALPHA), {t: None for t in reversed(terms)})
        assert [t for t, _ in table.ordered()] == terms
