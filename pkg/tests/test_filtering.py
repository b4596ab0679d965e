import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamlogic import filtering as flt
from streamlogic import geometry as g
from streamlogic import ltl
from streamlogic.streams import leq, window
from streamlogic.syntax import parse_stream
from streamlogic.translation import lasso_budget

from conftest import AB, streams

KEEP_A = flt.Predicate.keep(AB, "a")
KEEP_B = flt.Predicate.keep(AB, "b")
preds = st.sampled_from([KEEP_A, KEEP_B, flt.Predicate.keep(AB, "ab"), flt.Predicate.keep(AB, "")])
ab_streams = streams(cell=st.sampled_from("ab"))


def test_predicate_text():
    p = flt.Predicate.parse("a=tt,b=ff,c=bot")
    assert (p("a"), p("b"), p("c"), p(None)) == (True, False, None, None)
    assert flt.Predicate.parse(str(p)) == p
    with pytest.raises(flt.BottomOnLetter):
        flt.psi_p(p)
    with pytest.raises(ValueError):
        flt.Predicate.parse("a=maybe")


def test_psi_p_tracks_the_predicate():
    assert ltl.evaluate(flt.psi_p(KEEP_A), parse_stream("a|b"))
    assert not ltl.evaluate(flt.psi_p(KEEP_A), parse_stream("b|a"))
    assert flt.psi_p(flt.Predicate.keep(AB, "")) == ltl.FALSE


def test_iterates_stop_at_undefined_verdicts():
    p = flt.Predicate.parse("a=tt,b=bot")
    s = parse_stream("ab|a")
    assert [flt.apply_gn(p, n, s).to_literal() for n in range(4)] == ["|_", "a|_", "a|_", "a|_"]
    assert flt.apply_gn(KEEP_A, 3, parse_stream("a_|a")).to_literal() == "a|_"


@given(preds, ab_streams, st.integers(0, 12))
def test_iterates_form_a_chain_below_the_limit(p, s, n):
    lo, hi = flt.apply_gn(p, n, s), flt.apply_gn(p, n + 1, s)
    assert leq(lo, hi)
    assert leq(hi, flt.limit_filter(p, s))


@given(preds, ab_streams)
def test_limit_matches_long_iterate(p, s):
    # the output window of length m is fixed once the input is read far enough
    kept = [x for x in window(s, 400) if p(x)]
    lim = flt.limit_filter(p, s)
    m = min(len(kept), 20)
    assert list(window(lim, m)) == kept[:m]
    if len(kept) < 20:
        assert lim.at(len(kept)) is None


def test_limit_requires_total_input():
    with pytest.raises(flt.NotTotal):
        flt.limit_filter(KEEP_A, parse_stream("a_|a"))


@given(preds, ab_streams, st.integers(0, 7), st.data())
def test_counting_agrees_with_materialized_join(p, s, n, data):
    k = data.draw(st.integers(0, n))
    psi = flt.psi_p(p)
    budget = lasso_budget(s) + n
    direct = g.geom_sat(g.nu(s), flt.psi_nk(psi, n, k), budget)
    assert not direct.unknown
    assert direct.holds == flt.psi_nk_sat(g.nu(s), psi, n, k, budget)


def test_k_above_n():
    with pytest.raises(flt.KExceedsN):
        flt.psi_nk(flt.psi_p(KEEP_A), 2, 3)
    with pytest.raises(flt.KExceedsN):
        flt.filter_lemma_check(KEEP_A, parse_stream("|a"), 1, 2)


@given(preds, ab_streams, st.integers(0, 8), st.data())
def test_lemma_items(p, s, n, data):
    k = data.draw(st.integers(0, n))
    a = flt.filter_lemma_check(p, s, n, k)
    b = flt.filter_lemma_check(p, s, n, k, materialize=False)
    assert a and b
    assert a == b


@pytest.mark.parametrize(
    "pred, stream, k, expected",
    [
        (KEEP_A, "b|ab", 0, 0),
        (KEEP_A, "b|ab", 1, 2),
        (KEEP_A, "b|ab", 3, 6),
        (KEEP_A, "aaa|b", 3, 3),
        (KEEP_A, "aaa|b", 4, None),
        (KEEP_B, "|a", 1, None),
        (KEEP_B, "|bba", 2, 2),
        (KEEP_B, "|bba", 3, 4),
    ],
)
def test_witness_values(pred, stream, k, expected):
    assert flt.witness_n(parse_stream(stream), flt.psi_p(pred), k) == expected


@given(preds, ab_streams, st.integers(0, 4))
def test_witness_is_least(p, s, k):
    psi = flt.psi_p(p)
    n = flt.witness_n(s, psi, k)
    bound = flt.witness_bound(s, k) + 2
    budget = lasso_budget(s) + bound
    holding = [m for m in range(k, bound) if flt.psi_nk_sat(g.nu(s), psi, m, k, budget)]
    assert n == (holding[0] if holding else None)


@given(preds, ab_streams)
def test_totality_property_on_random_inputs(p, s):
    report = flt.spec_report(p, s, 3)
    assert report.verdict
    assert report.antecedent == ltl.evaluate(ltl.always(ltl.eventually(flt.psi_p(p))), s)
    if report.antecedent:
        assert report.output_total
        assert all(r.n is not None for r in report.rows)
    else:
        assert report.rows == ()


def test_report_shape():
    report = flt.spec_report(KEEP_A, parse_stream("b|ab"), 2)
    assert report.output == parse_stream("|a")
    assert [(r.k, r.n, r.psi_holds, r.phi_gn_holds) for r in report.rows] == [
        (0, 0, True, True),
        (1, 2, True, True),
        (2, 4, True, True),
    ]
    finite = flt.spec_report(KEEP_A, parse_stream("a|b"), 2)
    assert not finite.antecedent and finite.verdict
    assert finite.output == parse_stream("a|_")
