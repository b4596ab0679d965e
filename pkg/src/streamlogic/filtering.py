"""The filter case study.

``filter p`` is the least fixpoint of
``f_p(g)(s) = if p(s(0)) then s(0)·g(s↾1) else g(s↾1)``; its Kleene iterates
``g_n = f_p^n(⊥)`` are computed directly by :func:`apply_gn`, and the limit is
available in closed form on lasso streams (:func:`limit_filter`).  The target
property is: every total input with infinitely many ``p``-hits is mapped to a
total output.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from . import geometry as g
from . import ltl
from .streams import Alphabet, UPStream
from .translation import f_translate, lasso_budget

LiftedBool = Optional[bool]


class BottomOnLetter(ValueError):
    pass


class NotTotal(ValueError):
    pass


class KExceedsN(ValueError):
    pass


@dataclass(frozen=True)
class Predicate:
    """A monotone map from letters to lifted booleans; ``p(⊥) = ⊥``."""

    table: Tuple[Tuple[str, LiftedBool], ...]

    @classmethod
    def from_mapping(cls, mapping: Dict[str, LiftedBool]) -> "Predicate":
        return cls(tuple(mapping.items()))

    @classmethod
    def parse(cls, text: str) -> "Predicate":
        """``a=tt,b=ff,c=bot``."""
        values = {"tt": True, "ff": False, "bot": None, "_": None}
        out = {}
        for item in text.split(","):
            letter, _, val = item.strip().partition("=")
            if val not in values or len(letter) != 1:
                raise ValueError(f"bad predicate entry {item!r}")
            out[letter] = values[val]
        return cls.from_mapping(out)

    @classmethod
    def keep(cls, alphabet: Alphabet, kept: Iterable[str]) -> "Predicate":
        kept = set(kept)
        return cls(tuple((a, a in kept) for a in alphabet))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(tuple(a for a, _ in self.table))

    def __call__(self, x: Optional[str]) -> LiftedBool:
        if x is None:
            return None
        return dict(self.table)[x]

    @property
    def never_bottom(self) -> bool:
        return all(v is not None for _, v in self.table)

    def require_never_bottom(self) -> None:
        if not self.never_bottom:
            bad = [a for a, v in self.table if v is None]
            raise BottomOnLetter(f"predicate is undefined on {bad}")

    def __str__(self) -> str:
        names = {True: "tt", False: "ff", None: "bot"}
        return ",".join(f"{a}={names[v]}" for a, v in self.table)


def psi_p(p: Predicate, alphabet: Optional[Alphabet] = None) -> ltl.Ltl:
    """Disjunction of the letters kept by ``p``: holds on ``s`` iff ``p(s(0)) = tt``."""
    p.require_never_bottom()
    alphabet = alphabet or p.alphabet
    return ltl.disjunction(ltl.Atom(a) for a in alphabet if p(a))


def defined_head(alphabet: Alphabet) -> ltl.Ltl:
    """``⋁_a a``: the head of the stream is a letter."""
    return ltl.disjunction(ltl.Atom(a) for a in alphabet)


def apply_gn(p: Predicate, n: int, s: UPStream) -> UPStream:
    out = []
    pos = 0
    for _ in range(n):
        x = s.at(pos)
        verdict = p(x)
        if verdict is None:
            break
        if verdict:
            out.append(x)
        pos += 1
    return UPStream(tuple(out), (None,))


def limit_filter(p: Predicate, s: UPStream) -> UPStream:
    if not s.is_total():
        raise NotTotal(f"{s} is not total")
    p.require_never_bottom()
    head = tuple(x for x in s.prefix if p(x))
    body = tuple(x for x in s.cycle if p(x))
    return UPStream(head, body) if body else UPStream(head, (None,))


@functools.lru_cache(maxsize=512)
def psi_nk(psi: ltl.Ltl, n: int, k: int) -> g.Geom:
    """``⋁ { ⋀_j X^{i_j} F⟦Ψ⟧ | 0 ≤ i_1 < … < i_k < n }``."""
    if k > n:
        raise KExceedsN(f"k={k} > n={n}")
    base = f_translate(psi)
    shifted = [g.next_geom(base, i) for i in range(n)]
    disjuncts = []
    for idx in itertools.combinations(range(n), k):
        term = g.TOP
        for i in idx:
            term = g.and_geom(term, shifted[i])
        disjuncts.append(term)
    return g.or_geom(disjuncts)


@functools.lru_cache(maxsize=512)
def phi_k(phi: ltl.Ltl, k: int) -> g.Geom:
    """``⋀_{m<k} X^m F⟦Φ⟧``."""
    base = f_translate(phi)
    out = g.TOP
    for m in range(k):
        out = g.and_geom(out, g.next_geom(base, m))
    return out


def _hits(v: g.Valuation, psi: ltl.Ltl, n: int, budget: int):
    """Positions ``i < n`` with ``ν ⊨ X^i F⟦Ψ⟧``."""
    base = f_translate(psi)
    out = []
    for i in range(n):
        r = g.geom_sat(v, g.next_geom(base, i), budget)
        if r.unknown:
            raise RuntimeError(f"undecided hit at {i}")
        if r.holds:
            out.append(i)
    return out


def psi_nk_sat(v: g.Valuation, psi: ltl.Ltl, n: int, k: int, budget: int) -> bool:
    """Decide ``ν ⊨ ψ_{n,k}`` without materializing it.

    Every disjunct is a conjunction of k distinct components ``X^i F⟦Ψ⟧`` with
    ``i < n``, and every k-subset occurs, so the join holds iff at least k
    components hold.
    """
    if k > n:
        raise KExceedsN(f"k={k} > n={n}")
    return len(_hits(v, psi, n, budget)) >= k


@dataclass(frozen=True)
class LemmaCheck:
    item1: bool
    item2: bool

    def __bool__(self) -> bool:
        return self.item1 and self.item2


def filter_lemma_check(p: Predicate, s: UPStream, n: int, k: int, materialize: bool = True) -> LemmaCheck:
    """Check both items of the filter lemma on one instance.

    (1) ``ν(s) ⊨ ψ_{n,k}`` implies ``ν(g_n(s)) ⊨ φ_k``;
    (2) ``ν(g_n(s)) ⊨ φ_k`` implies ``ν(filter p s) ⊨ φ_k``.
    With ``materialize=False`` the antecedent of (1) is decided by counting hits.
    """
    if k > n:
        raise KExceedsN(f"k={k} > n={n}")
    if not s.is_total():
        raise NotTotal(f"{s} is not total")
    psi = psi_p(p)
    phik = phi_k(defined_head(p.alphabet), k)
    budget = lasso_budget(s) + n
    if materialize:
        antecedent = g.geom_sat(g.nu(s), psi_nk(psi, n, k), budget).holds
    else:
        antecedent = psi_nk_sat(g.nu(s), psi, n, k, budget)
    gn_out = g.geom_sat(g.nu(apply_gn(p, n, s)), phik, budget).holds
    lim_out = g.geom_sat(g.nu(limit_filter(p, s)), phik, budget).holds
    return LemmaCheck(item1=(not antecedent) or gn_out, item2=(not gn_out) or lim_out)


def witness_bound(s: UPStream, k: int) -> int:
    p, q = s.lasso
    return p + (k + 1) * q


def witness_n(s: UPStream, psi: ltl.Ltl, k: int) -> Optional[int]:
    """Least ``n ≥ k`` with ``ν(s) ⊨ ψ_{n,k}``, or ``None`` if there is none.

    Hits of Ψ on a lasso repeat with period Q after the prefix, so if k hits
    exist at all, they occur before ``P + (k+1)·Q``.
    """
    if not s.is_total():
        raise NotTotal(f"{s} is not total")
    bound = witness_bound(s, k)
    hits = _hits(g.nu(s), psi, bound, lasso_budget(s) + bound)
    if k == 0:
        return 0
    if len(hits) < k:
        return None
    return max(k, hits[k - 1] + 1)


@dataclass(frozen=True)
class WitnessRow:
    k: int
    n: Optional[int]
    psi_holds: Optional[bool]
    phi_gn_holds: Optional[bool]
    lemma: Optional[LemmaCheck]


@dataclass(frozen=True)
class SpecReport:
    antecedent: bool
    output: UPStream
    output_total: Optional[bool]
    rows: Tuple[WitnessRow, ...]
    verdict: bool


def spec_report(p: Predicate, s: UPStream, k_max: int) -> SpecReport:
    if not s.is_total():
        raise NotTotal(f"{s} is not total")
    p.require_never_bottom()
    alphabet = p.alphabet
    psi = psi_p(p)
    out = limit_filter(p, s)
    antecedent = ltl.evaluate(ltl.always(ltl.eventually(psi)), s)
    if not antecedent:
        return SpecReport(False, out, None, (), True)
    total = ltl.evaluate(ltl.always(defined_head(alphabet)), out)
    rows = []
    ok = total
    for k in range(k_max + 1):
        n = witness_n(s, psi, k)
        if n is None:
            rows.append(WitnessRow(k, None, None, None, None))
            ok = False
            continue
        check = filter_lemma_check(p, s, n, k, materialize=False)
        budget = lasso_budget(s) + n
        phik = phi_k(defined_head(alphabet), k)
        rows.append(
            WitnessRow(
                k,
                n,
                psi_nk_sat(g.nu(s), psi, n, k, budget),
                g.geom_sat(g.nu(apply_gn(p, n, s)), phik, budget).holds,
                check,
            )
        )
        ok = ok and bool(check)
    return SpecReport(True, out, total, tuple(rows), ok)


def spec_check(p: Predicate, s: UPStream, k_max: int) -> bool:
    return spec_report(p, s, k_max).verdict
