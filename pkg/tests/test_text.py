"""Concrete syntax: parsing, printing and the two text renderings."""

import random

import pytest

from rigdiff.carrier import FreeMonoid, MonoidElem, MonomialBasis
from rigdiff.derive import d_n
from rigdiff.gen import random_term_rng
from rigdiff.normal import (
    GenAtom, Monomial, NormalForm, as_monoid_element, normalize, render_nf,
)
from rigdiff.terms import App, Prod, Sum, Var, ONE, ZERO
from rigdiff.text import ParseError, emit_nf, parse, print_term, render_tensor

N1 = FreeMonoid(1)
N2 = FreeMonoid(2)
L2 = MonomialBasis(N1)


class TestParse:
    def test_variables_carry_coordinate_vectors(self):
        t = parse("x[2,0]", N2)
        assert t == Var(MonoidElem.from_dict(N2, {0: 2}))

    def test_sum_of_variables(self):
        assert parse("x[2]+x[3]", N1) == \
            Sum(Var(MonoidElem.from_dict(N1, {0: 2})),
                Var(MonoidElem.from_dict(N1, {0: 3})))

    def test_precedence_product_binds_tighter(self):
        assert parse("1+x[1]*x[1]", N1) == \
            Sum(ONE, Prod(parse("x[1]", N1), parse("x[1]", N1)))

    def test_parentheses_group(self):
        t = parse("(1+x[1])*x[1]", N1)
        assert isinstance(t, Prod) and isinstance(t.left, Sum)

    def test_nat_literals_are_repeated_ones(self):
        assert parse("0", N1) == ZERO
        assert parse("1", N1) == ONE
        assert normalize(parse("3", N1), N1) == normalize(
            Sum(Sum(ONE, ONE), ONE), N1)

    def test_coefficient_syntax_reads_back(self):
        assert normalize(parse("5*x[1]", N1), N1) == \
            normalize(parse("x[5]", N1), N1)

    def test_operation_application(self):
        assert parse("f(x[1])", N1) == App(parse("x[1]", N1))

    def test_letters_are_interchangeable(self):
        assert parse("y[1]", N1) == parse("x[1]", N1)
        assert parse("g(z[1])", N1) == parse("f(x[1])", N1)

    def test_rank_zero_payload(self):
        assert parse("x[]", FreeMonoid(0)) == \
            Var(MonoidElem.zero(FreeMonoid(0)))

    def test_level2_payload_is_an_expression_over_the_base(self):
        t = parse("y[x[1]+1]", L2)
        assert isinstance(t, Var)
        assert t.elem == as_monoid_element(normalize(parse("x[1]+1", N1), N1))

    def test_level2_payload_normalizes_on_the_spot(self):
        assert parse("y[x[1]+x[1]]", L2) == parse("y[2*x[1]]", L2)

    def test_whitespace_and_newlines_ignored(self):
        assert parse(" x[1]\n + 1 ", N1) == parse("x[1]+1", N1)


class TestParseErrors:
    def test_unexpected_character_with_position(self):
        with pytest.raises(ParseError, match="line 2, column 1"):
            parse("x[1] +\n@", N1)

    def test_trailing_input(self):
        with pytest.raises(ParseError, match="trailing input"):
            parse("x[1] x[1]", N1)

    def test_wrong_coordinate_count(self):
        with pytest.raises(ParseError, match="carrier rank is 2"):
            parse("x[1]", N2)

    def test_missing_bracket(self):
        with pytest.raises(ParseError, match="expected"):
            parse("x[1", N1)

    def test_missing_operand(self):
        with pytest.raises(ParseError, match="expected an expression"):
            parse("x[1]+", N1)

    def test_coordinate_must_be_a_natural(self):
        with pytest.raises(ParseError, match="expected a coordinate"):
            parse("x[x[1]]", N1)

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse("", N1)


class TestPrintTerm:
    def test_round_trip_examples(self):
        for src, carrier in (
            ("(x[1]+1)*f(x[1])", N1),
            ("x[1,2]*x[0,1]+0", N2),
            ("g(y[x[1]*x[1]+1])*y[2*x[1]]", L2),
        ):
            t = parse(src, carrier)
            assert parse(print_term(t, carrier), carrier) == t

    def test_round_trip_random_terms(self):
        rng = random.Random(11)
        for carrier in (N1, N2, L2, MonomialBasis(N2)):
            for _ in range(40):
                t = random_term_rng(rng, carrier, 4, 2, 5)
                assert parse(print_term(t, carrier), carrier) == t

    def test_infers_carrier_from_a_variable(self):
        t = parse("x[1,0]+x[0,2]", N2)
        assert parse(print_term(t), N2) == t

    def test_level2_payload_prints_as_input_syntax(self):
        t = parse("y[x[2]]", L2)
        assert print_term(t, L2) == "y[2*x[1]]"


class TestEmitNf:
    def test_round_trip_random_values(self):
        rng = random.Random(23)
        for carrier in (N1, N2, L2):
            for _ in range(40):
                nf = normalize(random_term_rng(rng, carrier, 4, 2, 5), carrier)
                assert normalize(parse(emit_nf(nf), carrier), carrier) == nf

    def test_generator_atoms_emit_as_unit_vectors(self):
        nf = normalize(parse("x[0,1]", N2), N2)
        assert emit_nf(nf) == "x[0,1]"

    def test_zero_and_constants(self):
        assert emit_nf(NormalForm.zero(N1)) == "0"
        assert emit_nf(normalize(parse("3", N1), N1)) == "3"


class TestRenderings:
    def test_render_nf_pins_the_display_style(self):
        assert render_nf(normalize(parse("x[2]+x[3]", N1), N1)) == "5*x[0]"
        assert render_nf(NormalForm.zero(N1)) == "0"
        assert render_nf(NormalForm.one(N1)) == "1"
        assert render_nf(normalize(parse("x[1]*x[1]+x[1]", N1), N1)) \
            == "x[0] + x[0]*x[0]"

    def test_render_nf_orders_monomials_canonically(self):
        a = normalize(parse("f(x[1])+x[1]*x[1]+2", N1), N1)
        assert render_nf(a) == "2 + f(x[0]) + x[0]*x[0]"

    def test_render_tensor_examples(self):
        nf = normalize(parse("f(x[1])", N1), N1)
        assert render_tensor(d_n(nf, 2)) == "2*(1 ⊗ e[0])"
        square = normalize(parse("x[1]*x[1]", N1), N1)
        assert render_tensor(d_n(square, 0)) == "2*(x[0] ⊗ e[0])"
        assert render_tensor(d_n(NormalForm.zero(N1), 1)) == "0"

    def test_render_tensor_level2_keys_use_monomial_text(self):
        nf2 = normalize(parse("g(y[1])", L2), L2)
        assert render_tensor(d_n(nf2, 3)) == "3*(1 ⊗ 1)"
        var2 = normalize(parse("y[x[1]]", L2), L2)
        assert render_tensor(d_n(var2, 3)) == "1 ⊗ x[0]"
