import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from streamlogic.streams import (
    BOTTOM_STREAM,
    Alphabet,
    FiniteElement,
    IncompatibleError,
    UPStream,
    atom_leq,
    constant,
    embed,
    leq,
    sup,
    window,
)
from streamlogic.syntax import parse_stream

from conftest import finite_elements, streams

# every lasso drawn below has P + Q ≤ 6, so two of them agree everywhere iff
# they agree on the first 6 + lcm(1..6) positions
FAR = 80


def unrolled(s, n=FAR):
    return [s.at(i) for i in range(n)]


def test_canonical_form_examples():
    assert UPStream(("a", "b"), ("a", "b")) == UPStream((), ("a", "b"))
    assert UPStream((), ("a", "a", "a")).lasso == (0, 1)
    assert UPStream(("b", "a"), ("b", "a")).lasso == (0, 2)
    assert UPStream(("a",), (None, None)) == UPStream(("a",), (None,))
    assert str(parse_stream("a_|b")) == "a_b^ω"
    assert parse_stream("|ab").pretty() == "(ab)^ω"


@given(streams())
def test_canonical_form_preserves_positions(s):
    rebuilt = UPStream(s.prefix + s.cycle, s.cycle + s.cycle)
    assert rebuilt == s
    assert unrolled(rebuilt) == unrolled(s)


@given(streams(), streams())
def test_equality_is_extensional(s, t):
    assert (s == t) == (unrolled(s) == unrolled(t))


@given(streams())
def test_literal_round_trip(s):
    assert parse_stream(s.to_literal()) == s


@given(streams(), st.integers(0, 12))
def test_suffix(s, k):
    assert unrolled(s.suffix(k), FAR - 12) == unrolled(s)[k : k + FAR - 12]


@given(streams(), streams())
def test_leq_matches_pointwise_order(s, t):
    pointwise = all(x is None or x == y for x, y in zip(unrolled(s), unrolled(t)))
    assert leq(s, t) == pointwise


@given(streams(), streams())
def test_sup_is_least_upper_bound(s, t):
    try:
        u = sup(s, t)
    except IncompatibleError as exc:
        assert s.at(exc.position) not in (None, t.at(exc.position))
        return
    assert leq(s, u) and leq(t, u)
    for i, (x, y, z) in enumerate(zip(unrolled(s), unrolled(t), unrolled(u))):
        assert z == (x if x is not None else y)


def test_bottom_is_least():
    assert BOTTOM_STREAM.lasso == (0, 1)
    assert leq(BOTTOM_STREAM, constant("a"))
    assert not leq(constant("a"), BOTTOM_STREAM)


def test_stream_validation():
    with pytest.raises(ValueError):
        UPStream(("a",), ())
    with pytest.raises(IndexError):
        constant("a").at(-1)
    with pytest.raises(ValueError):
        Alphabet(("ab",))
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))


def test_finite_element_basics():
    d = FiniteElement.of({3: "b", 0: "a"})
    assert d.entries == ((0, "a"), (3, "b"))
    assert d.to_literal() == "{0:a,3:b}"
    assert d.pretty() == "a__b_^ω"
    assert d.shift(2) == FiniteElement.of({2: "a", 5: "b"})
    assert FiniteElement.from_word(["a", None, "c"], offset=1).as_dict() == {1: "a", 3: "c"}
    with pytest.raises(ValueError):
        FiniteElement(((0, "a"), (0, "b")))
    with pytest.raises(IncompatibleError):
        d.join(FiniteElement.of({0: "b"}))


@given(finite_elements, finite_elements)
def test_finite_join(d, e):
    if d.compatible(e):
        j = d.join(e)
        assert d.leq(j) and e.leq(j)
        assert j.support == d.support | e.support
    else:
        assert any(d.get(i) != e.get(i) for i in d.support & e.support)


@given(finite_elements, streams())
def test_atom_leq_is_order_on_embedding(d, s):
    assert atom_leq(d, s) == leq(embed(d), s)
    assert atom_leq(d, s) == all(s.at(i) == x for i, x in d.entries)


@given(streams(), st.integers(0, 10))
def test_window(s, n):
    assert list(window(s, n)) == unrolled(s, n)


@given(finite_elements)
def test_embed_is_finite(d):
    s = embed(d)
    assert s.cycle == (None,)
    assume(d.entries)
    assert s.at(max(d.support)) is not None
