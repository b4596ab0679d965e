import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamlogic import geometry as g
from streamlogic import ltl
from streamlogic import translation as tr
from streamlogic.syntax import parse_formula, parse_stream

from conftest import formulas, g_formulas, streams

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "translations.json").read_text(encoding="utf-8"))


@given(g_formulas(), streams())
def test_geometric_formula_agrees_with_evaluation(phi, s):
    want = g.of_bool(ltl.evaluate(phi, s))
    assert tr.f_holds(phi, s) == want
    assert tr.f_holds(phi, s, 2 * tr.lasso_budget(s)) == want


@given(formulas(max_leaves=6), streams())
def test_theory_agrees_with_evaluation(phi, s):
    assert tr.holds_via_geometry(phi, s) == ltl.evaluate(phi, s)


@given(formulas(max_leaves=6), streams())
def test_unsimplified_theory_agrees(phi, s):
    r = g.theory_model(g.nu(s), tr.t_translate(phi, simplify=False), tr.lasso_budget(s))
    assert r == g.of_bool(ltl.evaluate(phi, s))


layer0 = st.recursive(
    st.sampled_from("ab").map(ltl.Atom),
    lambda ch: st.one_of(st.builds(ltl.And, ch, ch), st.builds(ltl.Or, ch, ch), st.builds(ltl.Next, ch)),
    max_leaves=4,
)
modal_stacks = st.lists(st.sampled_from([ltl.always, ltl.eventually]), min_size=1, max_size=3)


@given(layer0, modal_stacks, streams())
def test_simplified_translation_agrees(body, stack, s):
    phi = body
    for op in stack:
        phi = op(phi)
    r = g.theory_model(g.nu(s), tr.simplified_translate(phi), tr.lasso_budget(s))
    assert r == g.of_bool(ltl.evaluate(phi, s))


@given(g_formulas(max_leaves=5), streams())
def test_h_iterates_increase(phi, s):
    if not isinstance(phi, ltl.Until):
        return
    fam = tr.f_translate(phi).family
    verdicts = [g.geom_sat(g.nu(s), fam(n), 1).holds for n in range(tr.lasso_budget(s) + 2)]
    assert verdicts == sorted(verdicts)
    assert not verdicts[0]


def test_h_operator_iterate_matches_family():
    h = tr.HOperator(g.atom({0: "a"}), g.atom({0: "b"}))
    fam = h.family()
    for n in range(4):
        assert h.iterate(n) == fam(n)


@pytest.mark.parametrize("formula", sorted(FIXTURES["families"]))
def test_golden_families(formula):
    fam = tr.f_translate(parse_formula(formula))
    assert [g.format_geom(fam.family(m)) for m in range(4)] == FIXTURES["families"][formula]


@pytest.mark.parametrize("formula", sorted(FIXTURES["finite"]))
def test_golden_finite(formula):
    phi = tr.f_translate(parse_formula(formula))
    assert g.is_finite(phi)
    assert g.format_geom(phi) == FIXTURES["finite"][formula]


@pytest.mark.parametrize("big_n", range(3))
def test_golden_always_eventually(big_n):
    t = tr.t_translate(parse_formula("G F a"))
    assert isinstance(t, g.MeetOmega)
    seq = tr.conjoin(tr.flatten(t.family(big_n + 1)))
    assert g.format_sequent(seq, width=3, depth=2) == FIXTURES["always_eventually_conjoined"][big_n]


@pytest.mark.parametrize("key", sorted(FIXTURES["theories"]))
def test_golden_theories(key):
    text, _, flag = key.partition(" --")
    phi = parse_formula(text)
    t = tr.simplified_translate(phi) if flag == "simplified" else tr.t_translate(phi)
    assert g.format_theory(t, depth=2, width=3) == FIXTURES["theories"][key]


def test_rejections():
    with pytest.raises(tr.NotAGFormula):
        tr.f_translate(parse_formula("G a"))
    with pytest.raises(tr.NegationPresent):
        tr.t_translate(parse_formula("F ~a"))
    with pytest.raises(tr.UnsupportedShape):
        tr.simplified_translate(parse_formula("a U b"))


def test_budget_too_small_is_reported():
    s = parse_stream("___|a")
    with pytest.raises(tr.BudgetInsufficient):
        tr.holds_via_geometry(parse_formula("F a"), s, budget=2)
    assert tr.holds_via_geometry(parse_formula("F a"), s, budget=4)
    assert tr.f_holds(parse_formula("F a"), s, budget=2).unknown


def test_g_formulas_become_single_sequents():
    t = tr.t_translate(parse_formula("a U X b"))
    assert isinstance(t, g.Finite) and len(t.sequents) == 1
    assert t.sequents[0].antecedent_free


def test_count_nodes():
    counts = tr.count_nodes(tr.t_translate(parse_formula("G a & F b")))
    # the top-level meet, plus the one inside the probed iterate TH^2 of G a
    assert counts["Meet"] == 2
    assert counts["MeetOmega"] == 1
    assert counts["NextT"] == 1
