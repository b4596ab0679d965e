import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamlogic import geometry as g
from streamlogic import ltl
from streamlogic.streams import FiniteElement
from streamlogic.syntax import ParseError, parse_finite, parse_formula, parse_geom, parse_sequent, parse_stream, parse_theory

from conftest import AB, finite_elements


def test_precedence():
    a, b, c = (ltl.Atom(x) for x in "abc")
    assert parse_formula("a | b & c") == ltl.Or(a, ltl.And(b, c))
    assert parse_formula("a U b U c") == ltl.Until(a, ltl.Until(b, c))
    assert parse_formula("a | b U c") == ltl.Until(ltl.Or(a, b), c)
    assert parse_formula("X a & b") == ltl.And(ltl.Next(a), b)
    assert parse_formula("F G a") == ltl.eventually(ltl.always(a))
    assert parse_formula("~(a W b)") == ltl.Not(ltl.WeakUntil(a, b))


@pytest.mark.parametrize(
    "text, position",
    [("a U", 3), ("(a | b", 6), ("a b", 2), ("ab", 0), ("a & )", 4), ("", 0), ("a # b", 2)],
)
def test_formula_errors_report_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.position == position


def test_stream_literals():
    s = parse_stream("a_|b")
    assert s.prefix == ("a", None) and s.cycle == ("b",)
    for bad in ["ab", "a||b", "a|", "A|b", "a|b?"]:
        with pytest.raises(ParseError):
            parse_stream(bad)
    with pytest.raises(ParseError):
        parse_stream("c|a", alphabet=AB)


def test_finite_literals():
    assert parse_finite("{0:a, 3:b}") == FiniteElement.of({0: "a", 3: "b"})
    assert parse_finite("_a_^ω") == FiniteElement.of({1: "a"})
    assert parse_finite("_a^w") == FiniteElement.of({1: "a"})
    assert parse_finite("{}") == FiniteElement()
    for bad in ["{0:a", "{x:a}", "{0:a,0:b}", "", "A"]:
        with pytest.raises(ParseError):
            parse_finite(bad)


@given(finite_elements)
def test_finite_round_trip(d):
    assert parse_finite(d.to_literal()) == d
    if d.entries:
        assert parse_finite(d.pretty()) == d


joins = st.lists(st.lists(finite_elements, max_size=3), max_size=3).map(
    lambda dss: g.Join(tuple(g.Conj(frozenset(ds)) for ds in dss))
)


@given(joins)
def test_geom_round_trip(phi):
    assert parse_geom(g.format_geom(phi)) == phi


@given(joins, joins)
def test_sequent_round_trip(ante, cons):
    seq = g.Sequent(ante, cons)
    assert parse_sequent(g.format_sequent(seq)) == seq


def test_theory_text():
    t = parse_theory(
        """
        # two sequents
        a_^ω |- _b_^ω | {0:b}
        |- true
        """
    )
    assert len(t.sequents) == 2
    assert t.sequents[1] == g.entails(g.TOP)
    assert t.sequents[0].consequent == g.or_geom([g.atom({1: "b"}), g.atom({0: "b"})])
    with pytest.raises(ParseError):
        parse_sequent("a_^ω")
