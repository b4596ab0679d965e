"""LTL over partial streams: syntax, reference semantics, strata, Next-pushing.

The semantics here is the oracle every other module is checked against.  A
lasso stream with prefix length P and cycle length Q has exactly P+Q distinct
suffixes, so each subformula is evaluated to a set of suffix indices and the
two fixpoint modalities are computed by Kleene iteration on that finite set.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional

from .streams import Alphabet, UPStream


class UnknownLetter(ValueError):
    pass


@dataclass(frozen=True)
class Ltl:
    @cached_property
    def is_negation_free(self) -> bool:
        return all(c.is_negation_free for c in self.children())

    def children(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Ltl):
    name: str


@dataclass(frozen=True)
class TrueF(Ltl):
    pass


@dataclass(frozen=True)
class FalseF(Ltl):
    pass


@dataclass(frozen=True)
class Not(Ltl):
    operand: Ltl

    @cached_property
    def is_negation_free(self) -> bool:
        return False

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Next(Ltl):
    operand: Ltl

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class _Binary(Ltl):
    left: Ltl
    right: Ltl

    def children(self):
        return (self.left, self.right)


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Until(_Binary):
    pass


class WeakUntil(_Binary):
    pass


TRUE = TrueF()
FALSE = FalseF()


def eventually(psi: Ltl) -> Until:
    return Until(TRUE, psi)


def always(phi: Ltl) -> WeakUntil:
    return WeakUntil(phi, FALSE)


def next_n(phi: Ltl, n: int) -> Ltl:
    for _ in range(n):
        phi = Next(phi)
    return phi


def disjunction(parts: Iterable[Ltl]) -> Ltl:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conjunction(parts: Iterable[Ltl]) -> Ltl:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def atoms(phi: Ltl) -> FrozenSet[str]:
    if isinstance(phi, Atom):
        return frozenset([phi.name])
    out: FrozenSet[str] = frozenset()
    for c in phi.children():
        out |= atoms(c)
    return out


def check_alphabet(phi: Ltl, alphabet: Alphabet) -> None:
    missing = sorted(atoms(phi) - set(alphabet))
    if missing:
        raise UnknownLetter(f"formula mentions {missing} outside alphabet {alphabet}")


# -- semantics ---------------------------------------------------------------

def _states(s: UPStream):
    p, q = s.lasso
    n = p + q
    succ = [i + 1 if i + 1 < n else p for i in range(n)]
    return n, succ


def _sat_sets(phi: Ltl, s: UPStream, memo: Dict[Ltl, FrozenSet[int]]) -> FrozenSet[int]:
    if phi in memo:
        return memo[phi]
    n, succ = _states(s)
    universe = frozenset(range(n))
    if isinstance(phi, Atom):
        out = frozenset(i for i in range(n) if s.at(i) == phi.name)
    elif isinstance(phi, TrueF):
        out = universe
    elif isinstance(phi, FalseF):
        out = frozenset()
    elif isinstance(phi, Not):
        out = universe - _sat_sets(phi.operand, s, memo)
    elif isinstance(phi, And):
        out = _sat_sets(phi.left, s, memo) & _sat_sets(phi.right, s, memo)
    elif isinstance(phi, Or):
        out = _sat_sets(phi.left, s, memo) | _sat_sets(phi.right, s, memo)
    elif isinstance(phi, Next):
        inner = _sat_sets(phi.operand, s, memo)
        out = frozenset(i for i in range(n) if succ[i] in inner)
    elif isinstance(phi, (Until, WeakUntil)):
        left = _sat_sets(phi.left, s, memo)
        right = _sat_sets(phi.right, s, memo)
        cur = frozenset() if isinstance(phi, Until) else universe
        while True:
            nxt = _h_step(left, right, cur, succ)
            if nxt == cur:
                break
            cur = nxt
        out = cur
    else:
        raise TypeError(f"not an LTL formula: {phi!r}")
    memo[phi] = out
    return out


def _h_step(left, right, cur, succ) -> FrozenSet[int]:
    return right | frozenset(i for i in left if succ[i] in cur)


def satisfying_suffixes(phi: Ltl, s: UPStream) -> FrozenSet[int]:
    """Indices ``i < P+Q`` such that ``s↾i`` satisfies ``phi``."""
    return _sat_sets(phi, s, {})


def evaluate(phi: Ltl, s: UPStream, alphabet: Optional[Alphabet] = None) -> bool:
    if alphabet is not None:
        check_alphabet(phi, alphabet)
    return 0 in _sat_sets(phi, s, {})


class Seed(enum.Enum):
    EMPTY = "empty"
    FULL = "full"


def h_iterate(phi: Ltl, psi: Ltl, n: int, seed: Seed, s: UPStream) -> bool:
    """Is ``s`` in the n-th iterate of ``S ↦ [psi] ∪ ([phi] ∩ Next⁻¹ S)`` from ``seed``?"""
    if n < 0:
        raise ValueError("n must be nonnegative")
    memo: Dict[Ltl, FrozenSet[int]] = {}
    left = _sat_sets(phi, s, memo)
    right = _sat_sets(psi, s, memo)
    size, succ = _states(s)
    cur = frozenset() if seed is Seed.EMPTY else frozenset(range(size))
    for _ in range(n):
        cur = _h_step(left, right, cur, succ)
    return 0 in cur


# -- strata ------------------------------------------------------------------

class Stratum(enum.IntEnum):
    LAYER0 = 0
    G = 1
    GDELTA = 2
    NEGATION_FREE = 3
    GENERAL = 4

    def __str__(self) -> str:
        return _STRATUM_NAMES[self]


_STRATUM_NAMES = {
    Stratum.LAYER0: "Layer0",
    Stratum.G: "G",
    Stratum.GDELTA: "Gdelta",
    Stratum.NEGATION_FREE: "NegationFree",
    Stratum.GENERAL: "General",
}


def classify(phi: Ltl) -> Stratum:
    if isinstance(phi, (Atom, TrueF, FalseF)):
        return Stratum.LAYER0
    if isinstance(phi, Not):
        return Stratum.GENERAL
    if isinstance(phi, Next):
        return classify(phi.operand)
    m = max(classify(phi.left), classify(phi.right))
    if isinstance(phi, (And, Or)):
        return m
    if isinstance(phi, Until):
        # U only exists in G and in the full negation-free layer
        if m <= Stratum.G:
            return Stratum.G
        return Stratum.NEGATION_FREE if m == Stratum.GDELTA else m
    if isinstance(phi, WeakUntil):
        return max(m, Stratum.GDELTA)
    raise TypeError(f"not an LTL formula: {phi!r}")


# -- Next pushing --------------------------------------------------------------

def push_next(phi: Ltl) -> Ltl:
    """Equivalent formula where Next only appears in chains ``X…X a``."""
    return _push(phi, 0)


def _push(phi: Ltl, k: int) -> Ltl:
    if isinstance(phi, Atom):
        return next_n(phi, k)
    if isinstance(phi, (TrueF, FalseF)):
        return phi
    if isinstance(phi, Next):
        return _push(phi.operand, k + 1)
    if isinstance(phi, Not):
        return Not(_push(phi.operand, k))
    if isinstance(phi, _Binary):
        return type(phi)(_push(phi.left, k), _push(phi.right, k))
    raise TypeError(f"not an LTL formula: {phi!r}")


def next_only_on_atoms(phi: Ltl) -> bool:
    if isinstance(phi, Next):
        inner = phi.operand
        while isinstance(inner, Next):
            inner = inner.operand
        return isinstance(inner, Atom)
    return all(next_only_on_atoms(c) for c in phi.children())


# -- printing ----------------------------------------------------------------

_PREC_UNTIL, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def format_formula(phi: Ltl) -> str:
    text, _ = _fmt(phi)
    return text


def _fmt(phi: Ltl):
    """Return ``(text, precedence)`` with the fewest parentheses that still round-trip."""
    if isinstance(phi, Atom):
        return phi.name, 5
    if isinstance(phi, TrueF):
        return "true", 5
    if isinstance(phi, FalseF):
        return "false", 5
    if isinstance(phi, Until) and phi.left == TRUE:
        return "F " + _wrap(phi.right, _PREC_UNARY), _PREC_UNARY
    if isinstance(phi, WeakUntil) and phi.right == FALSE:
        return "G " + _wrap(phi.left, _PREC_UNARY), _PREC_UNARY
    if isinstance(phi, Not):
        return "~" + _wrap(phi.operand, _PREC_UNARY), _PREC_UNARY
    if isinstance(phi, Next):
        return "X " + _wrap(phi.operand, _PREC_UNARY), _PREC_UNARY
    if isinstance(phi, (And, Or)):
        prec = _PREC_AND if isinstance(phi, And) else _PREC_OR
        op = " & " if isinstance(phi, And) else " | "
        # left-associative
        return _wrap(phi.left, prec) + op + _wrap(phi.right, prec + 1), prec
    if isinstance(phi, (Until, WeakUntil)):
        op = " U " if isinstance(phi, Until) else " W "
        # right-associative
        return _wrap(phi.left, _PREC_UNTIL + 1) + op + _wrap(phi.right, _PREC_UNTIL), _PREC_UNTIL
    raise TypeError(f"not an LTL formula: {phi!r}")


def _wrap(phi: Ltl, need: int) -> str:
    text, prec = _fmt(phi)
    return text if prec >= need else f"({text})"
