"""Inductive translation of negation-free LTL into geometric logic.

G-formulas become single geometric formulas (:func:`f_translate`); every
negation-free formula becomes an antecedent-free theory (:func:`t_translate`).
Until and WeakUntil are translated as countable joins/meets of iterates of
the one-step unfoldings ``H(θ) = ψ ∨ (φ ∧ Next θ)`` and
``TH(V) = U ⋎ (T ⋏ Next V)``.

Every countable family carries the hint ``P + Q``.  Over a lasso stream with
prefix length P and cycle length Q the satisfaction sets of the iterates are
monotone chains of subsets of the P+Q suffix states, so they stabilize by
index P+Q; inspecting indices ``0..P+Q`` is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import geometry as g
from . import ltl
from .ltl import Stratum, classify
from .streams import FiniteElement, UPStream


class NotAGFormula(ValueError):
    pass


class NegationPresent(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


class BudgetInsufficient(RuntimeError):
    """A hinted family was not decided at the lasso budget; indicates a hint bug."""


def lasso_hint(p: int, q: int) -> int:
    return p + q


def lasso_budget(s: UPStream) -> int:
    p, q = s.lasso
    return p + q


@dataclass(frozen=True)
class HOperator:
    """``θ ↦ ψ ∨ (φ ∧ Next θ)`` on geometric formulas."""

    phi: g.Geom
    psi: g.Geom

    def __call__(self, theta: g.Geom) -> g.Geom:
        return g.or_geom([self.psi, g.and_geom(self.phi, g.next_geom(theta))])

    def iterate(self, n: int, seed: g.Geom = g.BOTTOM) -> g.Geom:
        out = seed
        for _ in range(n):
            out = self(out)
        return out

    def family(self) -> Callable[[int], g.Geom]:
        cache = [g.BOTTOM]

        def member(n: int) -> g.Geom:
            while len(cache) <= n:
                cache.append(self(cache[-1]))
            return cache[n]

        return member


@dataclass(frozen=True)
class THOperator:
    """``V ↦ U ⋎ (T ⋏ Next V)`` on theories."""

    t: g.Theory
    u: g.Theory
    simplify: bool = True

    def __call__(self, v: g.Theory) -> g.Theory:
        nxt = _next_t(v, self.simplify)
        step = _meet(self.t, nxt, self.simplify)
        return _join(self.u, step, self.simplify)

    def iterate(self, n: int, seed: g.Theory) -> g.Theory:
        out = seed
        for _ in range(n):
            out = self(out)
        return out

    def family(self, seed: g.Theory) -> Callable[[int], g.Theory]:
        cache = [seed]

        def member(n: int) -> g.Theory:
            while len(cache) <= n:
                cache.append(self(cache[-1]))
            return cache[n]

        return member


# Neutral-element simplifications; each is a model-set identity for every valuation.

def _next_t(v: g.Theory, simplify: bool) -> g.Theory:
    if simplify and v in (g.TRUE_THEORY, g.FALSE_THEORY):
        return v
    return g.NextT(v)


def _meet(a: g.Theory, b: g.Theory, simplify: bool) -> g.Theory:
    if simplify:
        if a == g.TRUE_THEORY:
            return b
        if b == g.TRUE_THEORY:
            return a
    return g.Meet((a, b))


def _join(a: g.Theory, b: g.Theory, simplify: bool) -> g.Theory:
    if simplify:
        if a == g.FALSE_THEORY:
            return b
        if b == g.FALSE_THEORY:
            return a
    return g.JoinFin((a, b))


def atom_formula(letter: str, position: int = 0) -> g.Join:
    return g.atom(FiniteElement(((position, letter),)))


def f_translate(phi: ltl.Ltl) -> g.Geom:
    if classify(phi) > Stratum.G:
        raise NotAGFormula(f"{phi} is not a G formula")
    return _f(phi)


def _f(phi: ltl.Ltl) -> g.Geom:
    if isinstance(phi, ltl.Atom):
        return atom_formula(phi.name)
    if isinstance(phi, ltl.TrueF):
        return g.TOP
    if isinstance(phi, ltl.FalseF):
        return g.BOTTOM
    if isinstance(phi, ltl.And):
        return g.and_geom(_f(phi.left), _f(phi.right))
    if isinstance(phi, ltl.Or):
        return g.or_geom([_f(phi.left), _f(phi.right)])
    if isinstance(phi, ltl.Next):
        return g.next_geom(_f(phi.operand))
    if isinstance(phi, ltl.Until):
        h = HOperator(_f(phi.left), _f(phi.right))
        return g.OmegaJoin(h.family(), lasso_hint, monotone=True, label="n")
    raise NotAGFormula(f"{phi} is not a G formula")


def t_translate(phi: ltl.Ltl, simplify: bool = True) -> g.Theory:
    if not phi.is_negation_free:
        raise NegationPresent(f"{phi} contains a negation")
    return _t(phi, simplify)


def _t(phi: ltl.Ltl, simplify: bool) -> g.Theory:
    if classify(phi) <= Stratum.G:
        return g.Finite((g.entails(_f(phi)),))
    if isinstance(phi, ltl.And):
        return g.Meet((_t(phi.left, simplify), _t(phi.right, simplify)))
    if isinstance(phi, ltl.Or):
        return g.JoinFin((_t(phi.left, simplify), _t(phi.right, simplify)))
    if isinstance(phi, ltl.Next):
        return g.NextT(_t(phi.operand, simplify))
    if isinstance(phi, (ltl.Until, ltl.WeakUntil)):
        th = THOperator(_t(phi.left, simplify), _t(phi.right, simplify), simplify)
        if isinstance(phi, ltl.WeakUntil):
            return g.MeetOmega(th.family(g.TRUE_THEORY), lasso_hint, label="N")
        return g.JoinOmega(th.family(g.FALSE_THEORY), lasso_hint, label="N")
    raise TypeError(f"unexpected formula {phi!r}")


def _eventually_body(phi: ltl.Ltl):
    if isinstance(phi, ltl.Until) and phi.left == ltl.TRUE:
        return phi.right
    return None


def _always_body(phi: ltl.Ltl):
    if isinstance(phi, ltl.WeakUntil) and phi.right == ltl.FALSE:
        return phi.left
    return None


def simplified_translate(phi: ltl.Ltl) -> g.Theory:
    """Translation of Layer0 formulas under ◇/□ with ``□Φ ↦ ⋏ₙ Xⁿ T⟦Φ⟧``, ``◇Ψ ↦ ⋎ₘ Xᵐ T⟦Ψ⟧``."""
    if classify(phi) == Stratum.LAYER0:
        return g.Finite((g.entails(_f(phi)),))
    body = _always_body(phi)
    if body is not None:
        inner = simplified_translate(body)
        return g.MeetOmega(lambda n: g.next_theory(inner, n), lasso_hint, label="n")
    body = _eventually_body(phi)
    if body is not None:
        inner = simplified_translate(body)
        return g.JoinOmega(lambda m: g.next_theory(inner, m), lasso_hint, label="m")
    raise UnsupportedShape(f"{phi} is not built from layer-0 formulas by F/G")


def holds_via_geometry(phi: ltl.Ltl, s: UPStream, budget: int = None) -> bool:
    budget = lasso_budget(s) if budget is None else budget
    result = g.theory_model(g.nu(s), t_translate(phi), max(budget, 1))
    if result.unknown:
        raise BudgetInsufficient(f"{phi} on {s}: undecided at budget {budget}")
    return result.holds


def f_holds(phi: ltl.Ltl, s: UPStream, budget: int = None) -> g.SatResult:
    budget = lasso_budget(s) if budget is None else budget
    return g.geom_sat(g.nu(s), f_translate(phi), max(budget, 1))


# -- structural views used by golden tests and printing ------------------------

def flatten(t: g.Theory) -> g.Theory:
    """Push Next inward and merge meets of finite theories into one sequent set."""
    if isinstance(t, g.NextT):
        return flatten(g.next_theory(t.inner, 1))
    if isinstance(t, g.Meet):
        parts = [flatten(p) for p in t.parts]
        if all(isinstance(p, g.Finite) for p in parts):
            return g.Finite(tuple(s for p in parts for s in p.sequents))
        return g.Meet(tuple(parts))
    if isinstance(t, g.JoinFin):
        return g.JoinFin(tuple(flatten(p) for p in t.parts))
    return t


def conjoin(t: g.Finite) -> g.Sequent:
    """An antecedent-free finite theory as the single sequent ``⊢ ⋀ consequents``."""
    out = g.TOP
    for s in t.sequents:
        if not s.antecedent_free:
            raise ValueError("conjoin needs an antecedent-free theory")
        out = g.and_geom(out, s.consequent)
    return g.entails(out)


def count_nodes(t: g.Theory, probe: int = 3) -> dict:
    """Node-kind census, probing countable families on their first indices."""
    counts: dict = {}

    def walk(node, depth):
        kind = type(node).__name__
        counts[kind] = counts.get(kind, 0) + 1
        if depth == 0:
            return
        if isinstance(node, (g.Meet, g.JoinFin)):
            for p in node.parts:
                walk(p, depth - 1)
        elif isinstance(node, (g.MeetOmega, g.JoinOmega)):
            for n in range(probe):
                walk(node.family(n), depth - 1)
        elif isinstance(node, g.NextT):
            walk(node.inner, depth - 1)

    walk(t, 6)
    return counts
