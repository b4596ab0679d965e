"""Random instances for fuzzing: streams, formulas, finite elements, theories."""
from __future__ import annotations

import os
import random
from typing import Optional, Sequence

from . import geometry as g
from . import ltl
from .streams import Alphabet, FiniteElement, UPStream

SEED_ENV = "STREAMLOGIC_SEED"


def seed_from_env(default: int = 0) -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else default


def make_rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def random_word(rng: random.Random, alphabet: Alphabet, length: int, bottom_rate: float):
    return tuple(None if rng.random() < bottom_rate else rng.choice(alphabet.letters) for _ in range(length))


def random_stream(
    rng: random.Random,
    alphabet: Alphabet,
    max_lasso: int = 6,
    bottom_rate: float = 0.3,
    total: bool = False,
) -> UPStream:
    """Stream whose (pre-canonical) prefix plus cycle length is at most ``max_lasso``."""
    rate = 0.0 if total else bottom_rate
    q = rng.randint(1, max_lasso)
    p = rng.randint(0, max_lasso - q)
    return UPStream(random_word(rng, alphabet, p, rate), random_word(rng, alphabet, q, rate))


def fill_bottoms(rng: random.Random, s: UPStream, alphabet: Alphabet, fill_rate: float = 0.5) -> UPStream:
    """A stream above ``s``: some bottom positions of the lasso are given letters."""

    def fill(word):
        return tuple(rng.choice(alphabet.letters) if x is None and rng.random() < fill_rate else x for x in word)

    # unroll the cycle a random number of times so refinements need not be periodic in |cycle|
    reps = rng.randint(1, 2)
    return UPStream(fill(s.prefix), fill(s.cycle * reps))


def random_finite(rng: random.Random, alphabet: Alphabet, max_pos: int = 4, density: float = 0.4) -> FiniteElement:
    return FiniteElement.from_word(random_word(rng, alphabet, rng.randint(0, max_pos), 1 - density))


def _leaf(rng: random.Random, alphabet: Alphabet) -> ltl.Ltl:
    r = rng.random()
    if r < 0.1:
        return ltl.TRUE
    if r < 0.2:
        return ltl.FALSE
    return ltl.Atom(rng.choice(alphabet.letters))


_CONNECTIVES = ("and", "or", "next", "until", "weak", "eventually", "always")


def random_formula(
    rng: random.Random,
    alphabet: Alphabet,
    depth: int,
    negation: bool = False,
    connectives: Sequence[str] = _CONNECTIVES,
) -> ltl.Ltl:
    """Random formula of height at most ``depth``."""
    if depth <= 0 or rng.random() < 0.2:
        return _leaf(rng, alphabet)
    ops = list(connectives) + (["not"] if negation else [])
    op = rng.choice(ops)
    sub = lambda: random_formula(rng, alphabet, depth - 1, negation, connectives)
    if op == "and":
        return ltl.And(sub(), sub())
    if op == "or":
        return ltl.Or(sub(), sub())
    if op == "next":
        return ltl.Next(sub())
    if op == "until":
        return ltl.Until(sub(), sub())
    if op == "weak":
        return ltl.WeakUntil(sub(), sub())
    if op == "eventually":
        return ltl.eventually(sub())
    if op == "always":
        return ltl.always(sub())
    return ltl.Not(sub())


G_CONNECTIVES = ("and", "or", "next", "until", "eventually")


def random_g_formula(rng: random.Random, alphabet: Alphabet, depth: int) -> ltl.Ltl:
    return random_formula(rng, alphabet, depth, connectives=G_CONNECTIVES)


def random_conj(rng: random.Random, universe: Sequence[FiniteElement], max_atoms: int = 2) -> g.Conj:
    k = rng.randint(0, min(max_atoms, len(universe)))
    return g.Conj(frozenset(rng.sample(list(universe), k)))


def random_join(rng: random.Random, universe: Sequence[FiniteElement], max_disjuncts: int = 2) -> g.Join:
    return g.Join(tuple(random_conj(rng, universe) for _ in range(rng.randint(0, max_disjuncts))))


def random_finite_theory(
    rng: random.Random, universe: Sequence[FiniteElement], max_sequents: int = 3, antecedent_free: bool = False
) -> g.Finite:
    out = []
    for _ in range(rng.randint(0, max_sequents)):
        ante = g.TOP if antecedent_free or rng.random() < 0.3 else random_join(rng, universe)
        out.append(g.Sequent(ante, random_join(rng, universe)))
    return g.Finite(tuple(out))


def small_universe(rng: random.Random, alphabet: Alphabet, size: int) -> tuple:
    out = set()
    while len(out) < size:
        out.add(random_finite(rng, alphabet, max_pos=3, density=0.5))
    return tuple(sorted(out, key=lambda d: d.entries))
