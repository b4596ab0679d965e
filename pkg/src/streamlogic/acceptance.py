"""Acceptance criteria, runnable from pytest and from ``streamlogic selftest``.

Each criterion returns a :class:`CriterionResult`; nothing here is tuned after
the fact, every sample size and tolerance is fixed below.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List, Optional

from . import deduction as dd
from . import filtering as flt
from . import geometry as g
from . import ltl
from . import translation as tr
from .ltl import Seed
from .sampling import (
    fill_bottoms,
    make_rng,
    random_finite,
    random_finite_theory,
    random_formula,
    random_g_formula,
    random_stream,
    small_universe,
)
from .streams import Alphabet, FiniteElement, UPStream, atom_leq, embed, leq, window
from .syntax import parse_formula, parse_stream


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name} ({self.seconds:.1f}s) {self.detail}".rstrip()


AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


def _alphabet(rng, max_size=3) -> Alphabet:
    return Alphabet(ABC.letters[: rng.randint(1, max_size)])


# -- 1 -------------------------------------------------------------------------

def _both_routes(formula: str, stream: str) -> tuple:
    phi, s = parse_formula(formula), parse_stream(stream)
    return ltl.evaluate(phi, s), tr.holds_via_geometry(phi, s)


def _all_streams(alphabet: Alphabet, max_lasso: int):
    import itertools

    letters = [None] + list(alphabet)
    for q in range(1, max_lasso + 1):
        for p in range(0, max_lasso - q + 1):
            for word in itertools.product(letters, repeat=p + q):
                yield UPStream(word[:p], word[p:])


def satisfaction_table(seed=None) -> CriterionResult:
    facts = [("X a", "_a|_", True), ("X a", "a|_", False)]
    facts += [("F a", "_" * n + "a|_", True) for n in range(4)]
    facts += [("F a", "|b", False), ("G F a", "|_a", True), ("F G a", "|_a", False)]
    facts += [("F G a", "_" * n + "|a", True) for n in range(4)]
    bad = []
    for f, s, want in facts:
        got = _both_routes(f, s)
        if got != (want, want):
            bad.append(f"{f} on {s}: {got}")
    always_a, total = parse_formula("G a"), parse_formula("G (a | b)")
    a_omega = parse_stream("|a")
    for s in _all_streams(AB, 3):
        if ltl.evaluate(always_a, s) != (s == a_omega):
            bad.append(f"G a on {s.to_literal()}")
        if ltl.evaluate(total, s) != s.is_total():
            bad.append(f"G (a|b) on {s.to_literal()}")
    return CriterionResult(1, "satisfaction table", not bad, "; ".join(bad[:3]) or f"{len(facts)} facts + G a sweep")


# -- 2 -------------------------------------------------------------------------

def upward_closure(seed=None, instances: int = 1000) -> CriterionResult:
    rng = make_rng(seed)
    violations = 0
    for _ in range(instances):
        alphabet = _alphabet(rng)
        phi = random_formula(rng, alphabet, 5)
        s = random_stream(rng, alphabet, 6, bottom_rate=0.5)
        t = fill_bottoms(rng, s, alphabet)
        assert leq(s, t)
        if ltl.evaluate(phi, s) and not ltl.evaluate(phi, t):
            violations += 1
    neg = parse_formula("~G a")
    control = all(ltl.evaluate(neg, embed(FiniteElement.of({i: "a" for i in range(n + 1)}))) for n in range(6))
    control = control and not ltl.evaluate(neg, parse_stream("|a"))
    ok = violations == 0 and control
    return CriterionResult(2, "upward closure", ok, f"violations={violations} negation-control={control}")


# -- 3 -------------------------------------------------------------------------

def fixpoints(seed=None, instances: int = 500) -> CriterionResult:
    rng = make_rng(seed)
    bad = 0
    for _ in range(instances):
        alphabet = _alphabet(rng)
        phi = random_formula(rng, alphabet, 3, negation=True)
        psi = random_formula(rng, alphabet, 3, negation=True)
        s = random_stream(rng, alphabet, 6)
        bound = sum(s.lasso)
        until = any(ltl.h_iterate(phi, psi, n, Seed.EMPTY, s) for n in range(bound + 1))
        weak = all(ltl.h_iterate(phi, psi, n, Seed.FULL, s) for n in range(bound + 1))
        bad += until != ltl.evaluate(ltl.Until(phi, psi), s)
        bad += weak != ltl.evaluate(ltl.WeakUntil(phi, psi), s)
    return CriterionResult(3, "U/W fixpoints", bad == 0, f"mismatches={bad}/{2 * instances}")


# -- 4 -------------------------------------------------------------------------

def theory_join(seed=None, pairs: int = 200) -> CriterionResult:
    rng = make_rng(seed)
    bad = 0
    for _ in range(pairs):
        universe = small_universe(rng, AB, rng.randint(1, 4))
        t1 = random_finite_theory(rng, universe)
        t2 = random_finite_theory(rng, universe)
        vals = g.all_table_valuations(universe)
        joined = g.models(g.materialize_join_fin([t1, t2]), vals)
        if joined != g.models(t1, vals) | g.models(t2, vals):
            bad += 1
    return CriterionResult(4, "finite theory join", bad == 0, f"mismatches={bad}/{pairs}")


# -- 5 -------------------------------------------------------------------------

def atom_below(rng, s: UPStream, width: int = 6) -> FiniteElement:
    word = [x if rng.random() < 0.5 else None for x in window(s, width)]
    return FiniteElement.from_word(word)


def stream_theory(seed=None, streams: int = 100, pairs: int = 50) -> CriterionResult:
    rng = make_rng(seed)
    failures = 0
    for _ in range(streams):
        alphabet = _alphabet(rng)
        s = random_stream(rng, alphabet, 6)
        sample = []
        for _ in range(pairs):
            pick = lambda: atom_below(rng, s) if rng.random() < 0.6 else random_finite(rng, alphabet)
            sample.append((pick(), pick()))
        failures += not g.stream_theory_check(g.nu(s), alphabet, sample)
    a, b = FiniteElement.of({0: "a"}), FiniteElement.of({0: "b"})
    empty = FiniteElement()
    bogus = g.Table((empty, a, b), frozenset([empty, a, b]))
    rejected = not g.stream_theory_check(bogus, AB, [(a, b)])
    ok = failures == 0 and rejected
    return CriterionResult(5, "stream theory models", ok, f"stream failures={failures} non-model rejected={rejected}")


# -- 6 -------------------------------------------------------------------------

def next_shift(seed=None, samples: int = 300) -> CriterionResult:
    rng = make_rng(seed)
    bad = 0
    for _ in range(samples):
        alphabet = _alphabet(rng)
        s = random_stream(rng, alphabet, 6)
        rest = s.suffix(1)
        budget = tr.lasso_budget(s)
        f = tr.f_translate(random_g_formula(rng, alphabet, 3))
        lhs = g.geom_sat(g.nu(s), g.next_geom(f), budget)
        rhs = g.geom_sat(g.nu(rest), f, budget)
        bad += lhs != rhs or lhs.unknown
        t = tr.t_translate(random_formula(rng, alphabet, 3))
        direct = g.theory_model(g.nu(rest), t, budget)
        bad += g.theory_model(g.nu(s), g.NextT(t), budget) != direct
        bad += g.theory_model(g.nu(s), g.next_theory(t), budget) != direct or direct.unknown
    return CriterionResult(6, "Next shift", bad == 0, f"mismatches={bad}")


# -- 7 -------------------------------------------------------------------------

def translation_agreement(seed=None, instances: int = 500) -> CriterionResult:
    rng = make_rng(seed)
    bad = unknowns = g_checked = 0
    for _ in range(instances):
        alphabet = _alphabet(rng)
        phi = random_formula(rng, alphabet, 4)
        s = random_stream(rng, alphabet, 6)
        budget = tr.lasso_budget(s)
        want = ltl.evaluate(phi, s)
        theory = tr.t_translate(phi)
        first = g.theory_model(g.nu(s), theory, budget)
        doubled = g.theory_model(g.nu(s), theory, 2 * budget)
        unknowns += first.unknown
        bad += first != g.of_bool(want) or doubled != first
        if ltl.classify(phi) <= ltl.Stratum.G:
            g_checked += 1
            r = tr.f_holds(phi, s)
            unknowns += r.unknown
            bad += r != g.of_bool(want) or tr.f_holds(phi, s, 2 * budget) != r
        gphi = random_g_formula(rng, alphabet, 4)
        r = tr.f_holds(gphi, s)
        unknowns += r.unknown
        bad += r != g.of_bool(ltl.evaluate(gphi, s))
    ok = bad == 0 and unknowns == 0
    return CriterionResult(
        7, "translation agreement", ok, f"mismatches={bad} unknowns={unknowns} (G-formula rechecks={g_checked})"
    )


# -- 8 -------------------------------------------------------------------------

GOLDEN_ALWAYS_EVENTUALLY = {
    0: "|- OR_n[false; a_^ω; a_^ω | _a_^ω; ...]",
    1: "|- OR_n[false; a_^ω & _a_^ω; a_^ω & __a_^ω | _a_^ω; ...]",
    2: "|- OR_n[false; a_^ω & _a_^ω & __a_^ω; a_^ω & __a_^ω | _a_^ω & __a_^ω | _a_^ω & ___a_^ω; ...]",
}

GOLDEN_SIMPLIFIED = {
    "G a": ["|- a_^ω", "|- _a_^ω", "|- __a_^ω", "|- ___a_^ω"],
    "F a": ["|- a_^ω", "|- _a_^ω", "|- __a_^ω", "|- ___a_^ω"],
}


def _shifted_atom(n: int) -> g.Join:
    return g.atom(FiniteElement(((n, "a"),)))


def _display_always_eventually(big_n: int) -> g.Geom:
    """``⊢ ⋀_{n≤N} ⋁_m (Xⁿa ∨ … ∨ X^{n+m}a)`` built directly, without translation."""
    out = g.TOP
    for n in range(big_n + 1):
        fam = lambda m, n=n: g.or_geom([_shifted_atom(n + j) for j in range(m + 1)])
        out = g.and_geom(out, g.OmegaJoin(fam, tr.lasso_hint, monotone=True))
    return out


def golden_examples(seed=None) -> CriterionResult:
    bad = []
    a = parse_formula("a")
    box_dia = tr.t_translate(parse_formula("G F a"))
    for big_n, want in GOLDEN_ALWAYS_EVENTUALLY.items():
        # our iterate N+1 carries the conjuncts n ≤ N
        seq = tr.conjoin(tr.flatten(box_dia.family(big_n + 1)))
        if g.format_sequent(seq, width=3, depth=2) != want:
            bad.append(f"print N={big_n}")
        display = _display_always_eventually(big_n)
        for m in range(4):
            # H⁰ = false shifts the inner index by one
            if seq.consequent.family(m + 1) != display.family(m):
                bad.append(f"structure N={big_n} m={m}")
    diamond = tr.f_translate(parse_formula("F a"))
    for m in range(4):
        if diamond.family(m + 1) != g.or_geom([_shifted_atom(j) for j in range(m + 1)]):
            bad.append(f"F[F a] m={m}")
    for text, lines in GOLDEN_SIMPLIFIED.items():
        t = tr.simplified_translate(parse_formula(text))
        want_kind = g.MeetOmega if text.startswith("G") else g.JoinOmega
        if not isinstance(t, want_kind):
            bad.append(f"{text} kind")
        for n, line in enumerate(lines):
            member = t.family(n)
            if member != g.Finite((g.entails(g.next_geom(tr.f_translate(a), n)),)):
                bad.append(f"{text} n={n} structure")
            if g.format_theory(member) != line:
                bad.append(f"{text} n={n} print")
    return CriterionResult(8, "golden translations", not bad, "; ".join(bad[:4]) or "prints and structure match")


# -- 9 -------------------------------------------------------------------------

A = g.atom({0: "a"})
B = g.atom({1: "b"})
C = g.atom({2: "a"})
D = g.atom({0: "b"})
PROOF_THEORY = g.Finite(
    (
        g.Sequent(A, B),
        g.Sequent(B, C),
        g.Sequent(g.and_geom(A, C), g.or_geom([D, B])),
        g.entails(g.or_geom([A, D])),
    )
)


def derivation_corpus() -> List[dd.Derivation]:
    a_b, b_c = dd.thm(g.Sequent(A, B)), dd.thm(g.Sequent(B, C))
    a_c = dd.cut(a_b, b_c)
    b_or_d = dd.join_l([dd.cut(a_b, dd.join_r([B, D], 0)), dd.join_r([B, D], 1)])
    return [
        dd.ax(A),
        a_b,
        a_c,
        dd.and_l1(A, B),
        dd.and_l2(A, B),
        dd.and_r(a_b, a_c),
        dd.true_r(g.or_geom([A, B])),
        dd.join_r([A, B, C], 1),
        dd.join_l([a_c, b_c]),
        dd.dist(A, [B, C]),
        dd.cut(dd.thm(g.entails(g.or_geom([A, D]))), b_or_d),
        dd.join_l([], consequent=A),
        dd.cut(dd.and_l1(A, C), a_c),
        dd.thm(g.Sequent(g.and_geom(A, C), g.or_geom([D, B]))),
    ]


def mutated_corpus():
    """``(derivation, expected violation path)`` pairs."""
    good = derivation_corpus()
    a_b = dd.thm(g.Sequent(A, B))
    out = [
        (dd.Derivation("Cut", g.Sequent(A, C), (a_b, dd.thm(g.Sequent(B, D)))), (1,)),
        (dd.Derivation("AndL1", g.Sequent(g.and_geom(A, B), B), data=(A, B)), ()),
        (dd.Derivation("Cut", g.Sequent(A, C), (a_b, dd.ax(C))), ()),
        (dd.Derivation("TrueR", g.Sequent(A, A)), ()),
        (dd.Derivation("AndR", g.Sequent(A, g.and_geom(B, C)), (dd.ax(A), dd.Derivation("Ax", g.Sequent(A, B)))), (1,)),
    ]
    top_cut = good[10]
    join_node = top_cut.premises[1]
    broken_r = dd.Derivation("JoinR", g.Sequent(A, g.or_geom([B, D])), data=((B, D), 1))
    broken_join = dd.Derivation("JoinL", join_node.conclusion, (join_node.premises[0], broken_r))
    out.append((dd.Derivation("Cut", top_cut.conclusion, (top_cut.premises[0], broken_join)), (1, 1)))
    out.append((dd.Derivation("JoinR", g.Sequent(A, g.or_geom([A, B])), data=((A, B), 5)), ()))
    return out


def deduction_suite(seed=None) -> CriterionResult:
    bad = []
    corpus = derivation_corpus()
    for i, d in enumerate(corpus):
        try:
            dd.check(d, PROOF_THEORY)
        except dd.RuleViolation as exc:
            bad.append(f"#{i} rejected: {exc}")
            continue
        universe = dd.derivation_atoms(d) | g.theory_atoms(PROOF_THEORY)
        if len(universe) > 4:
            bad.append(f"#{i} universe has {len(universe)} atoms")
        elif dd.soundness_check(d, PROOF_THEORY) is not None:
            bad.append(f"#{i} unsound")
    mutated = mutated_corpus()
    for i, (d, path) in enumerate(mutated):
        try:
            dd.check(d, PROOF_THEORY)
            bad.append(f"mutant #{i} accepted")
        except dd.RuleViolation as exc:
            if exc.path != path:
                bad.append(f"mutant #{i} path {exc.path} != {path}")
    detail = "; ".join(bad[:3]) or f"{len(corpus)} ok, {len(mutated)} mutants rejected"
    return CriterionResult(9, "deduction kernel", not bad, detail)


# -- 10 ------------------------------------------------------------------------

def _stabilizes(p, s, positions: int = 20, max_n: int = 400) -> bool:
    limit = flt.limit_filter(p, s)
    target = window(limit, positions)
    prev = flt.apply_gn(p, 0, s)
    for n in range(1, max_n + 1):
        cur = flt.apply_gn(p, n, s)
        if not leq(prev, cur):
            return False
        if window(cur, positions) == target:
            return True
        prev = cur
    return False


def filter_case(seed=None, streams: int = 50, witness_streams: int = 100) -> CriterionResult:
    rng = make_rng(seed)
    preds = [flt.Predicate.keep(AB, "a"), flt.Predicate.keep(AB, "b")]
    lemma_bad = property_bad = chain_bad = 0
    for _ in range(streams):
        s = random_stream(rng, AB, 6, total=True)
        for p in preds:
            for k in range(5):
                for n in range(k, 11):
                    lemma_bad += not flt.filter_lemma_check(p, s, n, k)
            property_bad += not flt.spec_check(p, s, 4)
            chain_bad += not _stabilizes(p, s)
    witness_bad = 0
    for _ in range(witness_streams):
        s = random_stream(rng, AB, 6, total=True)
        p = rng.choice(preds)
        psi = flt.psi_p(p)
        has_all = all(flt.witness_n(s, psi, k) is not None for k in range(6))
        witness_bad += has_all != ltl.evaluate(ltl.always(ltl.eventually(psi)), s)
    ok = not (lemma_bad or property_bad or chain_bad or witness_bad)
    detail = f"lemma={lemma_bad} property={property_bad} chain={chain_bad} witness={witness_bad}"
    return CriterionResult(10, "filter case study", ok, detail)


# -- 11 ------------------------------------------------------------------------

def next_pushing(seed=None, samples: int = 300) -> CriterionResult:
    rng = make_rng(seed)
    bad = 0
    for _ in range(samples):
        alphabet = _alphabet(rng)
        phi = random_formula(rng, alphabet, 4, negation=True)
        s = random_stream(rng, alphabet, 6)
        pushed = ltl.push_next(phi)
        bad += ltl.evaluate(pushed, s) != ltl.evaluate(phi, s)
        bad += not ltl.next_only_on_atoms(pushed)
        if phi.is_negation_free:
            bad += ltl.classify(pushed) != ltl.classify(phi)
    return CriterionResult(11, "Next pushing", bad == 0, f"mismatches={bad}")


CRITERIA: List[Callable[..., CriterionResult]] = [
    satisfaction_table,
    upward_closure,
    fixpoints,
    theory_join,
    stream_theory,
    next_shift,
    translation_agreement,
    golden_examples,
    deduction_suite,
    filter_case,
    next_pushing,
]


def run_criterion(fn: Callable[..., CriterionResult], seed: Optional[int] = None) -> CriterionResult:
    start = time.perf_counter()
    try:
        result = fn(seed)
    except Exception as exc:  # a crash is a failed criterion, reported like one
        number = CRITERIA.index(fn) + 1 if fn in CRITERIA else 0
        result = CriterionResult(number, fn.__name__, False, f"crashed: {type(exc).__name__}: {exc}")
    result.seconds = time.perf_counter() - start
    return result


def run_all(seed: Optional[int] = None) -> List[CriterionResult]:
    return [run_criterion(fn, seed) for fn in CRITERIA]
