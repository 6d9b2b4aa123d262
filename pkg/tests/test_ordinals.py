import pytest
from hypothesis import given, strategies as st

from dilators.domain import OrdinalKind
from dilators.errors import NotationError, TermError
from dilators.ordinals.cnf import ExtendedBase, Ordinal, OMEGA, OMEGA_BASE, ZERO, cnf_compare, cnf_render
from dilators.ordinals.grammar import cnf_parse, parse_base, parse_universe
from dilators.terms.term import DilatorTerm, Representation
from tests.strategies import bases, extended_bases, ordinals


class TestCantorNormalForm:
    @given(ordinals())
    def test_render_then_parse(self, a):
        assert cnf_parse(cnf_render(a)) == a

    @given(ordinals(), ordinals())
    def test_comparison_is_total(self, a, b):
        c = cnf_compare(a, b)
        assert c == -cnf_compare(b, a)
        assert (c == 0) == (a == b)
        assert (c < 0) == (a < b)

    @given(ordinals(), ordinals(), ordinals())
    def test_addition_is_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(ordinals(), ordinals())
    def test_left_subtraction_inverts_addition(self, a, b):
        assert (a + b).left_subtract(a) == b
        assert not (a + b) < a

    @given(ordinals(), st.integers(min_value=1, max_value=7))
    def test_division_by_natural(self, a, m):
        q, r = a.divmod_nat(m)
        assert 0 <= r < m
        assert q.lmul_nat(m) + Ordinal.of(r) == a

    @given(ordinals())
    def test_successor_is_a_successor(self, a):
        assert a.successor().classify() is OrdinalKind.successor
        assert a.successor().predecessor() == a

    def test_absorption(self):
        assert Ordinal.of(3) + OMEGA == OMEGA
        assert OMEGA + Ordinal.of(3) != OMEGA

    def test_classify(self):
        assert ZERO.classify() is OrdinalKind.zero
        assert cnf_parse("w^2 + 1").classify() is OrdinalKind.successor
        assert cnf_parse("w^w*2").classify() is OrdinalKind.limit

    def test_rendering(self):
        a = Ordinal.omega_power(Ordinal.of(2), 3) + OMEGA + Ordinal.of(4)
        assert cnf_render(a) == "w^2*3 + w + 4"
        assert cnf_render(Ordinal.omega_power(OMEGA + Ordinal.of(1))) == "w^(w + 1)"


class TestNotation:
    @pytest.mark.parametrize("text", ["3 + w", "w + w^2"])
    def test_increasing_exponents_are_refused(self, text):
        with pytest.raises(NotationError):
            cnf_parse(text)

    @pytest.mark.parametrize("text", ["w^1", "w*1"])
    def test_non_canonical_spelling_reports_its_column(self, text):
        with pytest.raises(NotationError) as exc:
            cnf_parse(text)
        assert exc.value.position == 2

    def test_syntax_error(self):
        with pytest.raises(NotationError):
            cnf_parse("w +")

    def test_symbolic_base(self):
        assert parse_base("W") == OMEGA_BASE
        assert str(parse_base("W+3")) == "W+3"
        assert parse_base("W+w") == ExtendedBase.omega_plus(OMEGA)

    @given(ordinals(), ordinals())
    def test_symbolic_base_is_above_every_plain_value(self, a, b):
        assert ExtendedBase.plain(a) < ExtendedBase.omega_plus(b)

    @given(extended_bases())
    def test_base_render_then_parse(self, x):
        assert parse_base(str(x)) == x

    def test_universes(self):
        assert parse_universe("0..3") == bases(0, 1, 2, 3)
        assert parse_universe("w+1, w, 2") == bases(2, "w", "w+1")
        with pytest.raises(NotationError):
            parse_universe("3..1")

    def test_terms_and_representations(self):
        t = DilatorTerm.parse("(0 ; 1, 4 ; w)")
        assert t.args == tuple(bases(1, 4)) and t.base == parse_base("w")
        assert str(t) == "(0 ; 1, 4 ; w)"
        assert str(Representation.parse("(1 ; 3)")) == "(1 ; 3)"
        assert str(DilatorTerm.parse("(2 ; ; 5)")) == "(2 ; ; 5)"

    @pytest.mark.parametrize("text", ["(0 ; 4, 1 ; w)", "(0 ; 5 ; 5)"])
    def test_malformed_terms(self, text):
        with pytest.raises(TermError):
            DilatorTerm.parse(text)
