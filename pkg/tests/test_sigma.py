import pytest
from hypothesis import given, strategies as st

from dilators.core.combinators import Const, Identity, SigmaOf, builtin_dilator
from dilators.core.dilator import FiniteTable, tabulate
from dilators.core.validate import validate_normality, validate_predilator
from dilators.domain import ClauseStatus, Ordering, OrdinalKind
from dilators.errors import PresentationError, SubstitutionError, TermError
from dilators.ordinals.cnf import ExtendedBase, Ordinal
from dilators.sigma.construction import (
    in_window,
    rep_classify,
    rep_compare,
    rep_successor,
    sigma_dilator,
    star,
    substitute_last,
    window_value,
    xi_embed,
)
from dilators.sigma.fundamental import CLAUSES, check_fund_basic
from dilators.terms.term import DilatorTerm, Representation, element_to_term, term_compare, term_support
from dilators.terms.values import evaluate
from tests.strategies import TERM_BASES, bases, dilator_terms

UNDERLYING = {
    "identity": Identity(),
    "const:2": Const(Ordinal.of(2)),
    "sigma:identity": SigmaOf(Identity()),
}
NORMALIZED = ["identity", "const:0", "const:1", "const:2", "sum(const:1,identity)", "sigma:identity"]


def rep(text):
    return Representation.parse(text)


class TestXi:
    @pytest.mark.parametrize("name", sorted(UNDERLYING))
    @pytest.mark.parametrize("alpha", range(7))
    def test_range_is_the_open_interval(self, name, alpha):
        d = UNDERLYING[name]
        e = SigmaOf(d)
        values = sorted(
            evaluate(e, Representation(x.sigma, x.args))
            for x in (xi_embed(d, alpha, element_to_term(d, alpha, s)) for s in d.elements(alpha))
        )
        low = e.partial_sum(alpha)
        size = d.value(alpha).to_int()
        assert values == [ExtendedBase.plain(low + Ordinal.of(1 + i)) for i in range(size)]
        assert not values or values[-1] < ExtendedBase.plain(e.partial_sum(alpha + 1))

    @pytest.mark.parametrize("name", sorted(UNDERLYING))
    def test_support(self, name):
        d = UNDERLYING[name]
        for alpha in range(6):
            for s in d.elements(alpha):
                t = element_to_term(d, alpha, s)
                image = xi_embed(d, alpha, t)
                assert term_support(image) == term_support(t) | {ExtendedBase.plain(alpha)}

    @pytest.mark.parametrize("name", sorted(UNDERLYING))
    @given(st.data())
    def test_order_is_preserved(self, name, data):
        d = UNDERLYING[name]
        alpha = data.draw(st.sampled_from(TERM_BASES))
        s, t = data.draw(dilator_terms(d, alpha)), data.draw(dilator_terms(d, alpha))
        e = SigmaOf(d)
        assert term_compare(e, xi_embed(d, alpha, s), xi_embed(d, alpha, t)) is term_compare(d, s, t)

    @pytest.mark.parametrize("name", sorted(UNDERLYING))
    def test_star_is_the_least_bound_of_the_support(self, name):
        d = UNDERLYING[name]
        e = SigmaOf(d)
        for alpha in range(6):
            for s in d.elements(alpha):
                t = element_to_term(d, alpha, s)
                x = xi_embed(d, alpha, t)
                least = next(k for k in range(alpha + 1) if all(a < ExtendedBase.plain(k) for a in t.args))
                assert star(e, Representation(x.sigma, x.args)) == ExtendedBase.plain(least)

    @pytest.mark.parametrize("name", sorted(NORMALIZED))
    def test_normalization_is_normal(self, name):
        derived = sigma_dilator(builtin_dilator(name)).derived
        assert validate_predilator(derived, 6).passed
        report = validate_normality(derived, derived.normality, 6)
        assert report.passed, report.failures()

    def test_base_must_match(self):
        with pytest.raises(TermError):
            xi_embed(Identity(), 5, DilatorTerm.parse("(0 ; 1 ; 4)"))

    def test_sigma_dilator_checks_laws(self):
        good = tabulate(Identity(), 3)
        supports = dict(good.supports)
        supports[2] = ((0,), (0,))
        broken = FiniteTable(good.bound, good.values, good.cofaces, supports, None, "broken")
        assert sigma_dilator(good, check_bound=3).derived == SigmaOf(good)
        with pytest.raises(PresentationError):
            sigma_dilator(broken, check_bound=3)

    def test_presentation_delegates(self):
        s = sigma_dilator(Identity())
        assert s.value(3) == Ordinal.of(6)
        assert s.decompose(3, Ordinal.of(4)) == (2, Ordinal.of(0))
        assert s.compose(2, Ordinal.of(0)) == Ordinal.of(4)
        assert s.normality.root == Ordinal.of(0)


class TestStarAndSubstitution:
    sid = SigmaOf(Identity())

    def test_star(self):
        assert star(self.sid, rep("(2 ; 3, 7)")) == ExtendedBase.plain(4)
        assert star(self.sid, rep("(0 ; 7)")) == ExtendedBase.plain(0)
        with pytest.raises(TermError):
            star(self.sid, rep("(0 ;)"))

    def test_substitution(self):
        assert substitute_last(self.sid, rep("(2 ; 3, 7)"), 5) == rep("(2 ; 3, 5)")
        assert substitute_last(self.sid, rep("(2 ; 3, 7)"), bases("w")[0]) == rep("(2 ; 3, w)")
        with pytest.raises(SubstitutionError):
            substitute_last(self.sid, rep("(2 ; 3, 7)"), 3)

    def test_windows(self):
        e = SigmaOf(Const(Ordinal.of(1)))
        w = bases("w")[0]
        assert window_value(e, w) == rep("(0 ; w)")
        assert in_window(e, rep("(1 ; w)"), w)
        assert not in_window(e, rep("(0 ; w+1)"), w)
        assert rep_compare(e, rep("(1 ; w)"), rep("(0 ; w+1)")) is Ordering.less
        assert rep_successor(e, rep("(0 ; w)")) == rep("(1 ; w)")
        assert rep_classify(e, rep("(0 ; w)")) is OrdinalKind.limit
        assert rep_classify(e, rep("(1 ; w)")) is OrdinalKind.successor


class TestFundamentalBattery:
    @pytest.mark.parametrize("e", [SigmaOf(Const(Ordinal.of(1))), SigmaOf(Identity())], ids=str)
    def test_no_counterexamples(self, e):
        report = check_fund_basic(e, samples=1000, seed=7)
        assert report.passed, [c for c in report.clauses if c.counterexample]
        assert [c.clause for c in report.clauses] == list(CLAUSES)
        for c in report.clauses:
            if c.clause == "g" and e == SigmaOf(Const(Ordinal.of(1))):
                # every limit below E(rho + 1) is E(rho) itself
                assert (c.status, c.instances) == (ClauseStatus.vacuous, 0)
            else:
                assert c.status is ClauseStatus.passed
                assert c.instances == c.requested == c.passed == 1000

    def test_seeded_runs_repeat(self):
        e = SigmaOf(Identity())
        first = check_fund_basic(e, samples=50, seed=11, clauses=["a", "d"])
        again = check_fund_basic(e, samples=50, seed=11, clauses=["d", "a"], workers=2)
        assert {c.clause: c for c in first.clauses} == {c.clause: c for c in again.clauses}
