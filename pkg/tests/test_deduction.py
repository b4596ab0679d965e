import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamlogic import deduction as dd
from streamlogic import geometry as g
from streamlogic.acceptance import PROOF_THEORY, derivation_corpus, mutated_corpus
from streamlogic.streams import FiniteElement

POOL = (
    FiniteElement.of({0: "a"}),
    FiniteElement.of({1: "b"}),
    FiniteElement.of({0: "b"}),
)
joins = st.lists(st.frozensets(st.sampled_from(POOL), max_size=2), max_size=2).map(
    lambda dss: g.Join(tuple(g.Conj(d) for d in dss))
)


@pytest.mark.parametrize("i", range(len(derivation_corpus())))
def test_corpus_is_valid_and_sound(i):
    d = derivation_corpus()[i]
    dd.check(d, PROOF_THEORY)
    assert dd.soundness_check(d, PROOF_THEORY) is None


@pytest.mark.parametrize("i", range(len(mutated_corpus())))
def test_mutants_are_rejected_at_the_right_node(i):
    d, path = mutated_corpus()[i]
    with pytest.raises(dd.RuleViolation) as info:
        dd.check(d, PROOF_THEORY)
    assert info.value.path == path
    assert not dd.is_valid(d, PROOF_THEORY)


@pytest.mark.parametrize("i", range(len(derivation_corpus())))
def test_json_round_trip(i):
    d = derivation_corpus()[i]
    again = dd.loads(dd.dumps(d))
    assert again == d
    assert dd.is_valid(again, PROOF_THEORY)


def test_json_edit_is_caught():
    d = derivation_corpus()[2]  # a cut of two theory sequents
    obj = json.loads(dd.dumps(d))
    obj["premises"][1]["conclusion"]["cons"] = "_b_^ω"
    with pytest.raises(dd.RuleViolation) as info:
        dd.check(dd.from_json(obj), PROOF_THEORY)
    assert info.value.path in {(), (1,)}


@given(joins, joins, st.lists(joins, min_size=1, max_size=3), st.data())
def test_rule_instances_are_sound(phi, psi, family, data):
    i = data.draw(st.integers(0, len(family) - 1))
    for d in [
        dd.ax(phi),
        dd.and_l1(phi, psi),
        dd.and_l2(phi, psi),
        dd.true_r(phi),
        dd.join_r(family, i),
        dd.dist(psi, family),
        dd.and_r(dd.ax(phi), dd.true_r(phi)),
        dd.join_l([dd.true_r(x) for x in family]),
    ]:
        dd.check(d, g.EMPTY_THEORY)
        assert dd.soundness_check(d, g.EMPTY_THEORY, POOL) is None


def test_constructor_schema_errors():
    a, b = g.atom(POOL[0]), g.atom(POOL[1])
    with pytest.raises(dd.SchemaMismatch):
        dd.cut(dd.ax(a), dd.ax(b))
    with pytest.raises(dd.SchemaMismatch):
        dd.and_r(dd.ax(a), dd.ax(b))
    with pytest.raises(dd.SchemaMismatch):
        dd.join_r([a], 3)
    with pytest.raises(dd.SchemaMismatch):
        dd.join_l([])


def test_countable_joins_are_refused():
    omega = g.OmegaJoin(lambda n: g.atom({n: "a"}))
    with pytest.raises(dd.InfiniteJoinUnsupported):
        dd.check(dd.Derivation("Ax", g.Sequent(omega, omega)), g.EMPTY_THEORY)


def test_unknown_rule_and_arity():
    a = g.atom(POOL[0])
    with pytest.raises(dd.RuleViolation, match="unknown rule"):
        dd.check(dd.Derivation("Weaken", g.Sequent(a, a)), g.EMPTY_THEORY)
    with pytest.raises(dd.RuleViolation, match="premise"):
        dd.check(dd.Derivation("Ax", g.Sequent(a, a), (dd.ax(a),)), g.EMPTY_THEORY)


def test_soundness_harness_limits():
    atoms = [g.atom({i: "a"}) for i in range(13)]
    big = dd.join_r(atoms, 0)
    with pytest.raises(g.UniverseTooLarge):
        dd.soundness_check(big, g.EMPTY_THEORY)


def test_soundness_harness_finds_countermodels(monkeypatch):
    # with the checker switched off, an unjustified node must be refuted by a model
    a, b = g.atom(POOL[0]), g.atom(POOL[1])
    bogus = dd.Derivation("Ax", g.Sequent(a, b))
    monkeypatch.setattr(dd, "check", lambda d, theory, path=(): None)
    v = dd.soundness_check(bogus, g.EMPTY_THEORY)
    assert v is not None
    assert v.holds(POOL[0]) and not v.holds(POOL[1])
