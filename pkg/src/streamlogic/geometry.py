"""Geometric logic over the finite elements of the stream domain.

Atoms are :class:`~streamlogic.streams.FiniteElement` values.  A conjunctive
formula is a finite set of atoms; a geometric formula is either a finite join
of conjunctive formulas (:class:`Join`) or a countable join given by a
generator (:class:`OmegaJoin`).  Theories are likewise either finite sequent
sets or symbolic nodes whose models are defined without materializing them.

Countable families may carry a *hint*: a function of the lasso parameters
``(P, Q)`` of the valuation's stream bounding (inclusively) the index of a
witness.  Hints must be nondecreasing in both arguments.  Without a hint, a
countable node can only be refuted by exhausting it, which never happens, so
the answer degrades to :data:`unknown`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

from .streams import Alphabet, FiniteElement, IncompatibleError, UPStream, atom_leq

Hint = Callable[[int, int], int]


class AtomOutsideUniverse(KeyError):
    pass


class TableValuationCannotShift(TypeError):
    pass


class UniverseTooLarge(ValueError):
    pass


# -- formulas ----------------------------------------------------------------

def _atom_key(d: FiniteElement):
    return d.entries


@dataclass(frozen=True)
class Conj:
    """Conjunction of atoms; the empty conjunction is ``true``."""

    atoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))

    @property
    def key(self):
        return tuple(sorted(_atom_key(d) for d in self.atoms))

    def __and__(self, other: "Conj") -> "Conj":
        return Conj(self.atoms | other.atoms)

    def shift(self, k: int = 1) -> "Conj":
        return Conj(frozenset(d.shift(k) for d in self.atoms))

    def sorted_atoms(self):
        return sorted(self.atoms, key=_atom_key)

    def __str__(self) -> str:
        if not self.atoms:
            return "true"
        return " & ".join(d.pretty() for d in self.sorted_atoms())


class Geom:
    pass


@dataclass(frozen=True)
class Join(Geom):
    """Finite join of conjunctive formulas, kept sorted and irredundant.

    A disjunct whose atoms include all atoms of another disjunct is dropped
    (absorption); this holds under every valuation, not only stream ones.
    """

    disjuncts: Tuple[Conj, ...] = ()

    def __post_init__(self):
        unique = {c.key: c for c in self.disjuncts}
        kept = []
        for c in sorted(unique.values(), key=lambda c: len(c.atoms)):
            if not any(k.atoms <= c.atoms for k in kept):
                kept.append(c)
        object.__setattr__(self, "disjuncts", tuple(sorted(kept, key=lambda c: c.key)))

    def __str__(self) -> str:
        return format_geom(self)


def _cached(fn):
    return lru_cache(maxsize=None)(fn)


@dataclass(frozen=True, eq=False)
class OmegaJoin(Geom):
    """Countable join ``⋁_n family(n)``.

    ``monotone`` records that the family is increasing under every valuation,
    which lets conjunction pair families along the diagonal.
    """

    family: Callable[[int], Geom]
    hint: Optional[Hint] = None
    monotone: bool = False
    label: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "family", _cached(self.family))

    def __str__(self) -> str:
        return format_geom(self)


TOP = Join((Conj(),))
BOTTOM = Join(())


def atom(d: Union[FiniteElement, dict]) -> Join:
    if isinstance(d, dict):
        d = FiniteElement.of(d)
    return Join((Conj(frozenset([d])),))


def conj(*atoms: FiniteElement) -> Join:
    return Join((Conj(frozenset(atoms)),))


def is_finite(phi: Geom) -> bool:
    return isinstance(phi, Join)


def _max_hint(h1: Optional[Hint], h2: Optional[Hint]) -> Optional[Hint]:
    if h1 is None or h2 is None:
        return None
    return lambda p, q: max(h1(p, q), h2(p, q))


def _cantor(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def _uncantor(n: int) -> Tuple[int, int]:
    w = 0
    while (w + 1) * (w + 2) // 2 <= n:
        w += 1
    j = n - w * (w + 1) // 2
    return w - j, j


def and_geom(phi: Geom, psi: Geom) -> Geom:
    """Conjunction by distribution: ``⋁γ_i ∧ ⋁γ'_j = ⋁(γ_i ∧ γ'_j)``."""
    if isinstance(phi, Join) and isinstance(psi, Join):
        return Join(tuple(g & h for g in phi.disjuncts for h in psi.disjuncts))
    if isinstance(phi, Join) or isinstance(psi, Join):
        fin, omega = (phi, psi) if isinstance(phi, Join) else (psi, phi)
        if fin == TOP:
            return omega
        if fin == BOTTOM:
            return BOTTOM
        return OmegaJoin(lambda n: and_geom(fin, omega.family(n)), omega.hint, omega.monotone, omega.label)
    if phi.monotone and psi.monotone:
        return OmegaJoin(
            lambda n: and_geom(phi.family(n), psi.family(n)),
            _max_hint(phi.hint, psi.hint),
            True,
            phi.label,
        )
    hint = None
    if phi.hint is not None and psi.hint is not None:
        h1, h2 = phi.hint, psi.hint
        hint = lambda p, q: _cantor(h1(p, q), h2(p, q))

    def paired(n):
        i, j = _uncantor(n)
        return and_geom(phi.family(i), psi.family(j))

    return OmegaJoin(paired, hint, False, phi.label)


def or_geom(parts: Iterable[Geom]) -> Geom:
    """Join of geometric formulas: the union of their disjunct sets."""
    parts = list(parts)
    finite = [p for p in parts if isinstance(p, Join)]
    omegas = [p for p in parts if not isinstance(p, Join)]
    base = Join(tuple(c for p in finite for c in p.disjuncts))
    if not omegas:
        return base
    out = omegas[0]
    for other in omegas[1:]:
        out = _or_omega(out, other)
    if base == BOTTOM:
        return out
    om = out
    return OmegaJoin(lambda n: or_geom([base, om.family(n)]), om.hint, om.monotone, om.label)


def _or_omega(a: OmegaJoin, b: OmegaJoin) -> OmegaJoin:
    # ∃n A_n ∨ ∃n B_n  ⟺  ∃n (A_n ∨ B_n), monotone or not
    return OmegaJoin(
        lambda n: or_geom([a.family(n), b.family(n)]),
        _max_hint(a.hint, b.hint),
        a.monotone and b.monotone,
        a.label,
    )


def next_geom(phi: Geom, k: int = 1) -> Geom:
    """Shift every atom ``d`` to ``⊥^k · d``."""
    if k == 0:
        return phi
    if isinstance(phi, Join):
        return Join(tuple(c.shift(k) for c in phi.disjuncts))
    return OmegaJoin(lambda n: next_geom(phi.family(n), k), phi.hint, phi.monotone, phi.label)


def geom_atoms(phi: Join) -> frozenset:
    return frozenset(d for c in phi.disjuncts for d in c.atoms)


def format_geom(phi: Geom, width: int = 3, depth: int = 3) -> str:
    if isinstance(phi, Join):
        if not phi.disjuncts:
            return "false"
        return " | ".join(str(c) for c in phi.disjuncts)
    if depth <= 0:
        return f"OR_{phi.label}[...]"
    shown = "; ".join(format_geom(phi.family(i), width, depth - 1) for i in range(width))
    return f"OR_{phi.label}[{shown}; ...]"


@dataclass(frozen=True)
class Sequent:
    antecedent: Geom
    consequent: Geom

    @property
    def antecedent_free(self) -> bool:
        return self.antecedent == TOP

    def __str__(self) -> str:
        return format_sequent(self)


def entails(consequent: Geom) -> Sequent:
    return Sequent(TOP, consequent)


def format_sequent(seq: Sequent, width: int = 3, depth: int = 3) -> str:
    cons = format_geom(seq.consequent, width, depth)
    if seq.antecedent_free:
        return f"|- {cons}"
    return f"{format_geom(seq.antecedent, width, depth)} |- {cons}"


# -- valuations --------------------------------------------------------------

@dataclass(frozen=True)
class FromStream:
    """The valuation ``ν(s)``: atom ``d`` holds iff ``d ≤ s``."""

    stream: UPStream

    def holds(self, d: FiniteElement) -> bool:
        return atom_leq(d, self.stream)

    def lasso(self) -> Optional[Tuple[int, int]]:
        return self.stream.lasso

    def shift(self) -> "FromStream":
        return FromStream(self.stream.suffix(1))


@dataclass(frozen=True)
class Table:
    """A valuation given by its true atoms, defined on a finite universe only."""

    universe: Tuple[FiniteElement, ...]
    truth: frozenset = frozenset()
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "truth", frozenset(self.truth))
        object.__setattr__(self, "_members", frozenset(self.universe))
        if not self.truth <= self._members:
            raise ValueError("truth set must lie inside the universe")

    def holds(self, d: FiniteElement) -> bool:
        if d not in self._members:
            raise AtomOutsideUniverse(d.to_literal())
        return d in self.truth

    def lasso(self) -> None:
        return None

    def shift(self):
        raise TableValuationCannotShift("table valuations have no stream to shift")


Valuation = Union[FromStream, Table]


def nu(s: UPStream) -> FromStream:
    return FromStream(s)


MAX_UNIVERSE = 16


def all_table_valuations(universe: Sequence[FiniteElement]):
    universe = tuple(universe)
    if len(universe) > MAX_UNIVERSE:
        raise UniverseTooLarge(f"{len(universe)} atoms exceeds {MAX_UNIVERSE}")
    out = []
    for mask in range(1 << len(universe)):
        out.append(Table(universe, frozenset(d for i, d in enumerate(universe) if mask >> i & 1)))
    return out


# -- three-valued satisfaction -------------------------------------------------

@dataclass(frozen=True)
class SatResult:
    verdict: str  # "holds" | "fails" | "unknown"
    budget: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    @property
    def fails(self) -> bool:
        return self.verdict == "fails"

    @property
    def unknown(self) -> bool:
        return self.verdict == "unknown"

    def __str__(self) -> str:
        return self.verdict if not self.unknown else f"unknown(budget={self.budget})"


HOLDS = SatResult("holds")
FAILS = SatResult("fails")


def unknown_at(budget: int) -> SatResult:
    return SatResult("unknown", budget)


def of_bool(b: bool) -> SatResult:
    return HOLDS if b else FAILS


def conj_sat(v: Valuation, gamma: Conj) -> bool:
    return all(v.holds(d) for d in gamma.atoms)


class _Evaluator:
    """Memoized three-valued evaluation at a fixed budget."""

    def __init__(self, budget: int):
        if budget < 1:
            raise ValueError("budget must be at least 1")
        self.budget = budget
        self._geom: Dict = {}
        self._theory: Dict = {}

    def _limit(self, hint: Optional[Hint], v: Valuation) -> Tuple[int, bool]:
        """Largest index to inspect and whether that exhausts the family."""
        lasso = v.lasso()
        if hint is not None and lasso is not None:
            h = hint(*lasso)
            if h <= self.budget:
                return h, True
        return self.budget, False

    def geom(self, v: Valuation, phi: Geom) -> SatResult:
        if isinstance(phi, Join):
            return of_bool(any(conj_sat(v, c) for c in phi.disjuncts))
        key = (id(phi), v)
        hit = self._geom.get(key)
        if hit is not None:
            return hit[1]
        limit, exhaustive = self._limit(phi.hint, v)
        result = self._exists((self.geom(v, phi.family(n)) for n in range(limit + 1)), exhaustive)
        self._geom[key] = (phi, result)
        return result

    def _exists(self, results, exhaustive: bool) -> SatResult:
        saw_unknown = False
        for r in results:
            if r.holds:
                return HOLDS
            saw_unknown |= r.unknown
        if exhaustive and not saw_unknown:
            return FAILS
        return unknown_at(self.budget)

    def _forall(self, results, exhaustive: bool) -> SatResult:
        saw_unknown = False
        for r in results:
            if r.fails:
                return FAILS
            saw_unknown |= r.unknown
        if exhaustive and not saw_unknown:
            return HOLDS
        return unknown_at(self.budget)

    def sequent(self, v: Valuation, seq: Sequent) -> SatResult:
        ante = self.geom(v, seq.antecedent)
        if ante.fails:
            return HOLDS
        cons = self.geom(v, seq.consequent)
        if cons.holds:
            return HOLDS
        if ante.holds and cons.fails:
            return FAILS
        return unknown_at(self.budget)

    def theory(self, v: Valuation, t: "Theory") -> SatResult:
        key = (id(t), v)
        hit = self._theory.get(key)
        if hit is not None:
            return hit[1]
        result = self._theory_uncached(v, t)
        self._theory[key] = (t, result)
        return result

    def _theory_uncached(self, v: Valuation, t: "Theory") -> SatResult:
        if isinstance(t, Finite):
            return self._forall((self.sequent(v, s) for s in t.sequents), True)
        if isinstance(t, Meet):
            return self._forall((self.theory(v, p) for p in t.parts), True)
        if isinstance(t, JoinFin):
            return self._exists((self.theory(v, p) for p in t.parts), True)
        if isinstance(t, MeetOmega):
            limit, exhaustive = self._limit(t.hint, v)
            return self._forall((self.theory(v, t.family(n)) for n in range(limit + 1)), exhaustive)
        if isinstance(t, JoinOmega):
            limit, exhaustive = self._limit(t.hint, v)
            return self._exists((self._antecedent_free_member(v, t, n) for n in range(limit + 1)), exhaustive)
        if isinstance(t, NextT):
            return self.theory(v.shift(), t.inner)
        if isinstance(t, StreamGenerated):
            return self._stream_generated(v, t)
        raise TypeError(f"not a theory: {t!r}")

    def _antecedent_free_member(self, v, t, n):
        member = t.family(n)
        if not is_antecedent_free(member):
            raise ValueError(f"countable join member {n} is not antecedent-free")
        return self.theory(v, member)

    def _stream_generated(self, v: Valuation, t: "StreamGenerated") -> SatResult:
        if isinstance(v, FromStream):
            # every ν(s) is a model; the window check below only guards against regressions
            width = min(self.budget, 3)
            sample = list(finite_elements(t.alphabet, width))
        else:
            sample = [d for d in v.universe if d.letters() <= set(t.alphabet)]
        pairs = [(d, e) for d in sample for e in sample]
        return of_bool(stream_theory_check(v, t.alphabet, pairs))


def geom_sat(v: Valuation, phi: Geom, budget: int) -> SatResult:
    return _Evaluator(budget).geom(v, phi)


def sequent_sat(v: Valuation, seq: Sequent, budget: int) -> SatResult:
    return _Evaluator(budget).sequent(v, seq)


def theory_model(v: Valuation, t: "Theory", budget: int) -> SatResult:
    return _Evaluator(budget).theory(v, t)


# -- theories ----------------------------------------------------------------

class Theory:
    pass


@dataclass(frozen=True)
class Finite(Theory):
    sequents: Tuple[Sequent, ...] = ()

    def __post_init__(self):
        seen = []
        for s in self.sequents:
            if s not in seen:
                seen.append(s)
        object.__setattr__(self, "sequents", tuple(seen))

    def sequent_set(self) -> frozenset:
        return frozenset(self.sequents)

    def __eq__(self, other):
        return isinstance(other, Finite) and self.sequent_set() == other.sequent_set()

    def __hash__(self):
        return hash(self.sequent_set())


@dataclass(frozen=True)
class Meet(Theory):
    """Union of sequent sets; models are the intersection."""

    parts: Tuple[Theory, ...]


@dataclass(frozen=True)
class JoinFin(Theory):
    """Finite theory join; models are the union."""

    parts: Tuple[Theory, ...]


@dataclass(frozen=True, eq=False)
class MeetOmega(Theory):
    family: Callable[[int], Theory]
    hint: Optional[Hint] = None
    label: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "family", _cached(self.family))


@dataclass(frozen=True, eq=False)
class JoinOmega(Theory):
    """Countable join of antecedent-free theories."""

    family: Callable[[int], Theory]
    hint: Optional[Hint] = None
    label: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "family", _cached(self.family))


@dataclass(frozen=True)
class NextT(Theory):
    inner: Theory


@dataclass(frozen=True)
class StreamGenerated(Theory):
    """The intensional theory of the stream domain over ``alphabet``."""

    alphabet: Alphabet


EMPTY_THEORY = Finite(())
TRUE_THEORY = Finite((entails(TOP),))
FALSE_THEORY = Finite((entails(BOTTOM),))


def is_antecedent_free(t: Theory, probe: int = 3) -> bool:
    """Structural check; countable families are probed on their first indices."""
    if isinstance(t, Finite):
        return all(s.antecedent_free for s in t.sequents)
    if isinstance(t, (Meet, JoinFin)):
        return all(is_antecedent_free(p, probe) for p in t.parts)
    if isinstance(t, (MeetOmega, JoinOmega)):
        return all(is_antecedent_free(t.family(n), probe) for n in range(probe))
    if isinstance(t, NextT):
        return is_antecedent_free(t.inner, probe)
    return False


def next_sequent(seq: Sequent, k: int = 1) -> Sequent:
    return Sequent(next_geom(seq.antecedent, k), next_geom(seq.consequent, k))


def next_theory(t: Theory, k: int = 1) -> Theory:
    """Push ``Next^k`` through a theory down to its sequents."""
    if k == 0:
        return t
    if isinstance(t, Finite):
        return Finite(tuple(next_sequent(s, k) for s in t.sequents))
    if isinstance(t, Meet):
        return Meet(tuple(next_theory(p, k) for p in t.parts))
    if isinstance(t, JoinFin):
        return JoinFin(tuple(next_theory(p, k) for p in t.parts))
    if isinstance(t, MeetOmega):
        return MeetOmega(lambda n: next_theory(t.family(n), k), t.hint, t.label)
    if isinstance(t, JoinOmega):
        return JoinOmega(lambda n: next_theory(t.family(n), k), t.hint, t.label)
    if isinstance(t, NextT):
        return next_theory(t.inner, k + 1)
    return NextT(t) if k == 1 else NextT(next_theory(t, k - 1))


def materialize_join_fin(theories: Sequence[Finite]) -> Finite:
    """One sequent ``⋀ψ_{i,f(i)} ⊢ ⋁φ_{i,f(i)}`` per choice function ``f``."""
    for t in theories:
        if not isinstance(t, Finite):
            raise TypeError("materialize_join_fin needs finite theories")
    out = []
    for choice in itertools.product(*(t.sequents for t in theories)):
        ante = TOP
        for s in choice:
            ante = and_geom(ante, s.antecedent)
        out.append(Sequent(ante, or_geom([s.consequent for s in choice])))
    return Finite(tuple(out))


def theory_atoms(t: Finite) -> frozenset:
    out = frozenset()
    for s in t.sequents:
        for phi in (s.antecedent, s.consequent):
            if not isinstance(phi, Join):
                raise TypeError("countable join in a finite theory has no finite atom set")
            out |= geom_atoms(phi)
    return out


def models(t: Theory, valuations: Iterable[Table]) -> frozenset:
    """The valuations (exactly decided) that model ``t``."""
    out = []
    for v in valuations:
        r = theory_model(v, t, 1)
        if r.unknown:
            raise ValueError("finite-universe model check was not decisive")
        if r.holds:
            out.append(v)
    return frozenset(out)


# -- the stream theory ---------------------------------------------------------

def finite_elements(alphabet: Alphabet, width: int) -> Iterable[FiniteElement]:
    """All finite elements with support inside ``range(width)``."""
    choices = [None] + list(alphabet)
    for word in itertools.product(choices, repeat=width):
        yield FiniteElement.from_word(word)


def stream_theory_sequents(alphabet: Alphabet, pairs: Iterable[Tuple[FiniteElement, FiniteElement]]):
    """Instances of the stream-domain theory generated by ``pairs``."""
    letters = set(alphabet)
    out = [entails(atom(FiniteElement()))]
    for d, e in pairs:
        if not (d.letters() <= letters and e.letters() <= letters):
            raise ValueError(f"atoms {d.to_literal()}, {e.to_literal()} leave alphabet {alphabet}")
        if e.leq(d):
            out.append(Sequent(atom(d), atom(e)))
        both = conj(d, e)
        try:
            out.append(Sequent(both, atom(d.join(e))))
        except IncompatibleError:
            out.append(Sequent(both, BOTTOM))
    return out


def stream_theory_check(v: Valuation, alphabet: Alphabet, pairs) -> bool:
    ev = _Evaluator(1)
    return all(ev.sequent(v, s).holds for s in stream_theory_sequents(alphabet, pairs))


# -- printing ----------------------------------------------------------------

def format_theory(t: Theory, depth: int = 3, width: int = 3, indent: str = "") -> str:
    lines = []
    _fmt_theory(t, depth, width, indent, lines)
    return "\n".join(lines)


def _fmt_theory(t, depth, width, indent, lines):
    if isinstance(t, Finite):
        if not t.sequents:
            lines.append(indent + "{}")
        for s in t.sequents:
            lines.append(indent + format_sequent(s, width, depth))
        return
    if isinstance(t, StreamGenerated):
        lines.append(indent + f"STREAM[{t.alphabet}]")
        return
    if isinstance(t, NextT):
        lines.append(indent + "NEXT")
        children = [(None, t.inner)]
    elif isinstance(t, (Meet, JoinFin)):
        tag = "MEET" if isinstance(t, Meet) else "JOIN"
        lines.append(indent + f"{tag}_{len(t.parts)}")
        children = [(None, p) for p in t.parts]
    else:
        tag = "MEET" if isinstance(t, MeetOmega) else "JOIN"
        lines.append(indent + f"{tag}_{t.label}")
        children = [(n, t.family(n)) for n in range(width)]
    if depth <= 0:
        lines.append(indent + "  ...")
        return
    for n, child in children:
        if n is not None:
            lines.append(indent + f"  [{t.label}={n}]")
        _fmt_theory(child, depth - 1, width, indent + "    " if n is not None else indent + "  ", lines)
    if not isinstance(t, (NextT, Meet, JoinFin)):
        lines.append(indent + "  ...")


def theory_to_json(t: Theory, depth: int = 3, width: int = 3):
    if isinstance(t, Finite):
        return {
            "kind": "finite",
            "sequents": [
                {"ante": format_geom(s.antecedent, width, depth), "cons": format_geom(s.consequent, width, depth)}
                for s in t.sequents
            ],
        }
    if isinstance(t, StreamGenerated):
        return {"kind": "stream", "alphabet": list(t.alphabet)}
    if depth <= 0:
        return {"kind": type(t).__name__.lower(), "truncated": True}
    if isinstance(t, NextT):
        return {"kind": "next", "inner": theory_to_json(t.inner, depth - 1, width)}
    if isinstance(t, (Meet, JoinFin)):
        return {
            "kind": "meet" if isinstance(t, Meet) else "join",
            "parts": [theory_to_json(p, depth - 1, width) for p in t.parts],
        }
    return {
        "kind": "meet_omega" if isinstance(t, MeetOmega) else "join_omega",
        "index": t.label,
        "shown": list(range(width)),
        "members": [theory_to_json(t.family(n), depth - 1, width) for n in range(width)],
    }
