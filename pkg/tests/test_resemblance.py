from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from dilators.core.combinators import Const, Identity, SigmaOf, builtin_dilator
from dilators.domain import Ordering, Semantics
from dilators.errors import NotNormalError, SubstitutionError, TermError, UniverseError
from dilators.ordinals.cnf import ExtendedBase, Ordinal
from dilators.resemblance.closure import _cl, cl, closure, is_closed
from dilators.resemblance.clubs import club_slice, fd_index, fd_slice
from dilators.resemblance.ddorder import DDElement, dd_check, dd_compare, dd_contains, dd_members
from dilators.resemblance.structure import leq1_criterion, leq1_table, pattern_structure
from dilators.sigma.construction import star, substitute_last, window_value
from dilators.terms.term import Representation, reattach, term_compare
from dilators.terms.values import evaluate, value_at
from tests.strategies import ARGUMENTS, NORMAL_DILATORS, bases

NONE = builtin_dilator("none")
SIGMA_ONE = SigmaOf(Const(Ordinal.of(1)))
SIGMA_ID = SigmaOf(Identity())
CLOSURE_POOLS = {
    "identity": ARGUMENTS,
    "sigma:const:1": ARGUMENTS,
    "sum(const:1,identity)": ARGUMENTS,
    "sigma:identity": bases(0, 1, 2, 3, 4, 5, 6, 7),
}


def segment(n):
    return range(n + 1)


def closed_universes(e, generators, max_size=6):
    """Every closure of a set of generators with at most ``max_size`` elements."""
    found = set()
    for r in range(1, len(generators) + 1):
        for zs in combinations(generators, r):
            z = closure(e, zs)
            if len(z) <= max_size:
                found.add(tuple(sorted(z)))
    return sorted(found)


def assert_preorder(table):
    universe = table.structure.universe
    assert all(not b < a for a, b in table.verdicts)
    assert all(table.holds(a, a) for a in universe)
    for a, b, c in combinations(universe, 3):
        if table.holds(a, b) and table.holds(b, c):
            assert table.holds(a, c), (a, b, c)


GENERATED = [
    (e, universe)
    for e, generators in [
        (Identity(), bases(0, 1, 2, 3, "w", "w+1")),
        (SIGMA_ONE, bases(0, 1, 2, 3, 4, 5, "w", "w+1", "w+2")),
    ]
    for universe in closed_universes(e, generators)
]


class TestStructures:
    def test_default_semantics(self):
        assert pattern_structure(NONE, segment(4)).semantics is Semantics.exact
        s = pattern_structure(NONE, bases(0, 1, 2, "w", "w+1"))
        assert s.semantics is Semantics.relativized
        assert s.padding == 5
        assert s.pool == tuple(bases(3, 4, 5, 6, 7))
        assert bases(4)[0] not in s and bases("w")[0] in s

    def test_exact_needs_an_initial_segment(self):
        with pytest.raises(UniverseError):
            pattern_structure(NONE, bases(0, 2), Semantics.exact)
        with pytest.raises(UniverseError):
            pattern_structure(NONE, segment(3), Semantics.exact, padding=2)

    def test_universe_cap(self, settings_env):
        settings_env(MAX_UNIVERSE=4)
        with pytest.raises(UniverseError):
            pattern_structure(NONE, segment(4))

    def test_signature_needs_normality_or_an_empty_trace(self):
        with pytest.raises(NotNormalError):
            pattern_structure(Const(Ordinal.of(2)), segment(3))

    @pytest.mark.parametrize(
        "e,universe",
        [
            (Identity(), bases(0, 1, 2, "w", "w+1")),
            (SIGMA_ONE, bases(0, 1, 2, 3, "w", "w+1", "w+2")),
            (SIGMA_ID, segment(9)),
            (NORMAL_DILATORS["sum(const:1,identity)"], bases(0, 1, 2, 3, "w", "w+1")),
        ],
        ids=str,
    )
    def test_representations_are_unique(self, e, universe):
        s = pattern_structure(e, universe)
        elements = s.universe + s.pool
        reps = [s.reps[x] for x in elements]
        assert len(set(reps)) == len(reps)
        for x, r in zip(elements, reps):
            assert evaluate(e, r) == x

    def test_header(self):
        header = pattern_structure(Identity(), segment(2)).header()
        assert header.dilator == "identity"
        assert header.universe == ["0", "1", "2"]


class TestExactTables:
    @pytest.mark.parametrize("n", [0, 5, 12])
    def test_pure_signature_is_equality(self, n):
        table = leq1_table(pattern_structure(NONE, segment(n)))
        assert table.related() == []
        assert all(ok == (a == b) for a, b, ok in table.pairs())

    def test_restriction_stable(self):
        small = leq1_table(pattern_structure(NONE, segment(6)))
        large = leq1_table(pattern_structure(NONE, segment(9)))
        for (a, b), ok in small.verdicts.items():
            assert large.holds(a, b) == ok

    @pytest.mark.parametrize("e", [Identity(), SIGMA_ONE, SIGMA_ID], ids=str)
    def test_finite_ordinals_never_resemble_larger_ones(self, e):
        table = leq1_table(pattern_structure(e, segment(6)))
        assert table.related() == []

    @pytest.mark.parametrize("name", sorted(NORMAL_DILATORS))
    def test_only_fixed_points_resemble_their_value(self, name):
        e = NORMAL_DILATORS[name]
        table = leq1_table(pattern_structure(e, segment(8)))
        checked = 0
        for delta in table.structure.universe:
            value = value_at(e, delta)
            if value in table.structure:
                assert table.holds(delta, value) == (value == delta), delta
                checked += 1
        assert checked

    @pytest.mark.parametrize(
        "e,universe",
        [
            (NONE, segment(6)),
            (NONE, bases(0, 1, 2, "w", "w+1", "w+2")),
            (Identity(), bases(0, 1, "w", "w+1", "w+2")),
            (SIGMA_ONE, bases("w", "w+1", "w+2")),
            (SIGMA_ID, segment(6)),
        ],
        ids=str,
    )
    def test_tables_are_preorders_inside_the_order(self, e, universe):
        assert_preorder(leq1_table(pattern_structure(e, universe)))

    def test_parallel_rows_agree(self, settings_env):
        serial = leq1_table(pattern_structure(Identity(), segment(7)))
        settings_env(WORKERS=3)
        parallel = leq1_table(pattern_structure(Identity(), segment(7)))
        assert parallel.verdicts == serial.verdicts

    def test_lookup_outside_universe(self):
        table = leq1_table(pattern_structure(NONE, segment(3)))
        assert table.holds(5, 2) is False
        with pytest.raises(UniverseError):
            table.holds(2, 5)


class TestRelativizedTables:
    def test_omega_resembles_its_successor(self):
        table = leq1_table(pattern_structure(NONE, bases(0, 1, 2, "w", "w+1")))
        assert table.related() == [tuple(bases("w", "w+1"))]

    def test_no_room_without_padding(self):
        s = pattern_structure(NONE, bases(0, 1, 2, "w", "w+1"), Semantics.relativized, padding=0)
        assert leq1_table(s).related() == []

    def test_fixed_point_found_in_the_pool(self):
        table = leq1_table(pattern_structure(SIGMA_ONE, bases("w", "w+1")))
        assert table.related() == [tuple(bases("w", "w+1"))]

    def test_self_referential_fact_blocks_reflection(self):
        table = leq1_table(pattern_structure(SIGMA_ONE, bases(0, 1, "w", "w+1")))
        assert table.related() == []


class TestCriterion:
    CLOSED = [
        (Identity(), bases(0, 1, 2, 3, 4, 5)),
        (Identity(), bases(0, 1, 2, "w", "w+1")),
        (Identity(), bases(3, "w", "w+1", "w+2")),
        (SIGMA_ONE, bases(0, 1, 2, 3, 4, 5)),
        (SIGMA_ONE, bases("w", "w+1")),
        (SIGMA_ONE, bases(0, 1, "w", "w+1")),
    ]

    @pytest.mark.parametrize("e,universe", CLOSED, ids=lambda x: str(x) if not isinstance(x, list) else ",".join(map(str, x)))
    def test_agrees_with_full_isomorphisms(self, e, universe):
        assert is_closed(e, universe)
        s = pattern_structure(e, universe)
        assert leq1_criterion(s).verdicts == leq1_table(s).verdicts

    @pytest.mark.parametrize(
        "e,universe", GENERATED, ids=lambda x: ",".join(map(str, x)) if isinstance(x, tuple) else str(x)
    )
    def test_agrees_on_every_small_closed_universe(self, e, universe):
        assert is_closed(e, universe)
        s = pattern_structure(e, universe)
        full, criterion = leq1_table(s), leq1_criterion(s)
        assert criterion.verdicts == full.verdicts
        assert_preorder(full)


class TestClosure:
    def test_closure(self):
        assert cl(SIGMA_ONE, 4) == frozenset(bases(0, 1, 2, 4))
        assert cl(SIGMA_ONE, bases("w+2")[0]) == frozenset(bases("w", "w+1", "w+2"))
        assert cl(Identity(), 9) == frozenset(bases(9))
        assert closure(SIGMA_ONE, [3, 5]) == frozenset(bases(0, 1, 2, 3, 5))
        assert not is_closed(SIGMA_ONE, [2])

    @pytest.mark.parametrize("name", sorted(CLOSURE_POOLS))
    @settings(max_examples=200)
    @given(st.data())
    def test_closure_is_idempotent(self, name, data):
        e = NORMAL_DILATORS[name]
        zs = data.draw(st.lists(st.sampled_from(CLOSURE_POOLS[name]), max_size=5))
        z = closure(e, zs)
        assert set(zs) <= z
        assert closure(e, z) == z
        assert is_closed(e, z)

    def test_closure_cache_is_bounded(self):
        assert _cl.cache_info().maxsize is not None
        cl(SIGMA_ONE, 12)
        hits = _cl.cache_info().hits
        cl(SIGMA_ONE, 12)
        assert _cl.cache_info().hits == hits + 1


class TestDDOrder:
    def test_plus_and_substitution(self):
        rho = DDElement(Ordinal.of(2), tuple(bases(3, 7)))
        assert rho.plus == ExtendedBase.plain(8)
        assert rho.at(8) == Representation.parse("(2 ; 3, 7, 8)")
        with pytest.raises(SubstitutionError):
            rho.at(5)
        assert DDElement.parse("<2 ; 3, 7>") == rho
        assert str(rho) == "<2 ; 3, 7>"
        assert DDElement.of(Representation.parse("(2 ; 3, 7, 9)")) == rho

    def test_arguments_stay_below_omega(self):
        with pytest.raises(TermError):
            DDElement(Ordinal.of(0), tuple(bases("W")))

    def test_membership_and_order(self):
        assert dd_contains(SIGMA_ID, DDElement.parse("<2 ; 1>"))
        assert not dd_contains(SIGMA_ID, DDElement.parse("<1 ; 1>"))
        with pytest.raises(TermError):
            dd_check(SIGMA_ID, DDElement.parse("<1 ; 1>"))
        assert dd_compare(SIGMA_ID, DDElement.parse("<0 ;>"), DDElement.parse("<2 ; 0>")) is Ordering.less
        assert dd_compare(SIGMA_ID, DDElement.parse("<2 ; 0>"), DDElement.parse("<2 ; 1>")) is Ordering.less

    def test_members(self):
        members = dd_members(SIGMA_ID, 3)
        assert [str(m) for m in members] == ["<0 ;>", "<2 ; 0>", "<2 ; 1>", "<2 ; 2>"]
        with pytest.raises(UniverseError):
            dd_members(SIGMA_ID, bases("w")[0])
        assert dd_members(SIGMA_ID, bases("w")[0], candidates=bases(5, "w")) == [
            DDElement.parse("<0 ;>"),
            DDElement.parse("<2 ; 5>"),
        ]

    @pytest.mark.parametrize("e", [Identity(), SIGMA_ONE, SIGMA_ID], ids=str)
    def test_order_matches_terms_over_a_large_natural(self, e):
        top = 10
        members = dd_members(e, 4)
        for a, b in product(members, repeat=2):
            expected = term_compare(e, reattach(a.at(top), top + 1), reattach(b.at(top), top + 1))
            assert dd_compare(e, a, b) is expected, (a, b)


class TestClubs:
    def test_identity_clubs_are_everything(self):
        table = leq1_table(pattern_structure(Identity(), segment(8)))
        for rho in range(4):
            result = club_slice(Identity(), window_value(Identity(), rho), table)
            fixed = [u for u in table.structure.universe if value_at(Identity(), u) == u]
            assert result.members == fixed
            assert result.undetermined == []

    def test_values_outside_the_universe_are_undetermined(self):
        table = leq1_table(pattern_structure(SIGMA_ONE, segment(5)))
        result = club_slice(SIGMA_ONE, window_value(SIGMA_ONE, 2), table)
        assert result.members == bases(0)
        assert result.undetermined == bases(3, 4, 5)

    def test_side_conditions(self):
        table = leq1_table(pattern_structure(SIGMA_ID, segment(8)))
        gamma = Representation.parse("(2 ; 1, 3)")
        result = club_slice(SIGMA_ID, gamma, table)
        assert result.members == []
        assert result.undetermined == bases(4, 5, 6, 7, 8)
        for universe, e in [(bases(0, 1, 2, "w", "w+1"), Identity()), (bases("w", "w+1"), SIGMA_ONE)]:
            t = leq1_table(pattern_structure(e, universe))
            for delta in club_slice(e, window_value(e, 0), t).members:
                assert not delta < star(e, window_value(e, 0))
                assert t.holds(delta, evaluate(e, substitute_last(e, window_value(e, 0), delta)))

    def test_fd_slice_is_the_intersection(self):
        table = leq1_table(pattern_structure(SIGMA_ID, segment(8)))
        gamma = Representation.parse("(2 ; 1, 3)")
        index = fd_index(SIGMA_ID, gamma, 3, table)
        assert index == [Representation.parse("(0 ; 3)"), Representation.parse("(2 ; 0, 3)")]
        expected = set(table.structure.universe)
        for beta in index:
            expected &= set(club_slice(SIGMA_ID, beta, table).members)
        result = fd_slice(SIGMA_ID, gamma, 3, table)
        assert result.members == [u for u in table.structure.universe if u in expected]

    def test_fd_needs_a_final_argument(self):
        table = leq1_table(pattern_structure(SIGMA_ID, segment(3)))
        with pytest.raises(TermError):
            fd_index(SIGMA_ID, Representation.parse("(0 ;)"), 2, table)

    def test_fd_slices_shrink_as_eta_grows(self):
        table = leq1_table(pattern_structure(SIGMA_ID, segment(8)))
        for text in ["(2 ; 1, 3)", "(2 ; 2, 5)", "(0 ; 4)", "(2 ; 0, 6)"]:
            gamma = Representation.parse(text)
            previous = None
            for eta in range(9):
                members = set(fd_slice(SIGMA_ID, gamma, eta, table).members)
                if previous is not None:
                    assert members <= previous, (text, eta)
                previous = members
