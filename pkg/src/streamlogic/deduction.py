"""Proof checker for the geometric sequent calculus over a finite theory.

Rules: Th, Ax, Cut, AndL1, AndL2, AndR, TrueR, JoinL, JoinR, Dist.  All joins
must be finite.  Formulas are compared after normalization (sorted,
duplicate-free disjunct sets), never up to semantic equivalence.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Tuple

from . import geometry as g
from .geometry import Geom, Sequent, and_geom, or_geom

RULES = ("Th", "Ax", "Cut", "AndL1", "AndL2", "AndR", "TrueR", "JoinL", "JoinR", "Dist")


class RuleViolation(Exception):
    def __init__(self, path: Tuple[int, ...], reason: str):
        super().__init__(f"at {'/'.join(map(str, path)) or 'root'}: {reason}")
        self.path = tuple(path)
        self.reason = reason


class InfiniteJoinUnsupported(RuleViolation):
    pass


class SchemaMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Sequent
    premises: Tuple["Derivation", ...] = ()
    data: Any = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def nodes(self, path=()):
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))


# -- checker -------------------------------------------------------------------

def _fail(path, reason):
    raise RuleViolation(path, reason)


def _require_finite(path, *formulas):
    for phi in formulas:
        if not isinstance(phi, g.Join):
            raise InfiniteJoinUnsupported(path, "countable joins cannot be checked")


def _arity(path, d: Derivation, n: int):
    if len(d.premises) != n:
        _fail(path, f"{d.rule} takes {n} premise(s), got {len(d.premises)}")


def check(d: Derivation, theory: g.Finite, path: Tuple[int, ...] = ()) -> None:
    """Raise :class:`RuleViolation` unless ``d`` is a correct derivation over ``theory``."""
    if not isinstance(theory, g.Finite):
        raise TypeError("derivations are checked against finite theories")
    ante, cons = d.conclusion.antecedent, d.conclusion.consequent
    _require_finite(path, ante, cons)
    for i, p in enumerate(d.premises):
        check(p, theory, path + (i,))
    rule = d.rule
    if rule == "Th":
        _arity(path, d, 0)
        if d.conclusion not in theory.sequent_set():
            _fail(path, "sequent is not in the theory")
    elif rule == "Ax":
        _arity(path, d, 0)
        if ante != cons:
            _fail(path, "Ax needs identical sides")
    elif rule == "Cut":
        _arity(path, d, 2)
        left, right = (p.conclusion for p in d.premises)
        if left.antecedent != ante:
            _fail(path, "Cut: left premise antecedent differs from conclusion")
        if right.consequent != cons:
            _fail(path, "Cut: right premise consequent differs from conclusion")
        if left.consequent != right.antecedent:
            _fail(path, "Cut: premises do not meet at a common formula")
        if d.data is not None and d.data != left.consequent:
            _fail(path, "Cut: stated interpolant does not match premises")
    elif rule in ("AndL1", "AndL2"):
        _arity(path, d, 0)
        phi, psi = _pair(path, d)
        if ante != and_geom(phi, psi):
            _fail(path, f"{rule}: antecedent is not the conjunction of its data")
        if cons != (phi if rule == "AndL1" else psi):
            _fail(path, f"{rule}: consequent is not the {'left' if rule == 'AndL1' else 'right'} conjunct")
    elif rule == "AndR":
        _arity(path, d, 2)
        left, right = (p.conclusion for p in d.premises)
        if left.antecedent != ante or right.antecedent != ante:
            _fail(path, "AndR: premise antecedents differ from conclusion")
        if cons != and_geom(left.consequent, right.consequent):
            _fail(path, "AndR: consequent is not the conjunction of premise consequents")
    elif rule == "TrueR":
        _arity(path, d, 0)
        if cons != g.TOP:
            _fail(path, "TrueR: consequent must be true")
    elif rule == "JoinL":
        for p in d.premises:
            if p.conclusion.consequent != cons:
                _fail(path, "JoinL: premise consequent differs from conclusion")
        if ante != or_geom([p.conclusion.antecedent for p in d.premises]):
            _fail(path, "JoinL: antecedent is not the join of premise antecedents")
    elif rule == "JoinR":
        _arity(path, d, 0)
        family, i = _family_index(path, d)
        _require_finite(path, *family)
        if ante != family[i]:
            _fail(path, f"JoinR: antecedent is not member {i} of the family")
        if cons != or_geom(family):
            _fail(path, "JoinR: consequent is not the join of the family")
    elif rule == "Dist":
        _arity(path, d, 0)
        psi, parts = _dist_data(path, d)
        _require_finite(path, psi, *parts)
        if ante != and_geom(psi, or_geom(parts)):
            _fail(path, "Dist: antecedent is not ψ ∧ ⋁φᵢ")
        if cons != or_geom([and_geom(psi, p) for p in parts]):
            _fail(path, "Dist: consequent is not ⋁(ψ ∧ φᵢ)")
    else:
        _fail(path, f"unknown rule {rule!r}")


def _pair(path, d):
    if not (isinstance(d.data, tuple) and len(d.data) == 2):
        _fail(path, f"{d.rule} needs data (φ, ψ)")
    _require_finite(path, *d.data)
    return d.data


def _family_index(path, d):
    try:
        family, i = d.data
        family = tuple(family)
        family[i]
    except (TypeError, ValueError, IndexError):
        _fail(path, "JoinR needs data (family, index) with a valid index")
    if i < 0:
        _fail(path, "JoinR index must be nonnegative")
    return family, i


def _dist_data(path, d):
    try:
        psi, parts = d.data
        return psi, tuple(parts)
    except (TypeError, ValueError):
        _fail(path, "Dist needs data (ψ, parts)")


def is_valid(d: Derivation, theory: g.Finite) -> bool:
    try:
        check(d, theory)
    except RuleViolation:
        return False
    return True


# -- soundness harness ---------------------------------------------------------

MAX_SOUNDNESS_UNIVERSE = 12


def derivation_atoms(d: Derivation) -> frozenset:
    out = frozenset()
    for _, node in d.nodes():
        out |= g.geom_atoms(node.conclusion.antecedent) | g.geom_atoms(node.conclusion.consequent)
    return out


def soundness_check(d: Derivation, theory: g.Finite, universe: Sequence = None) -> Optional[g.Table]:
    """Return a model of ``theory`` refuting some node of ``d``, or ``None``.

    ``d`` must already pass :func:`check`.
    """
    if universe is None:
        universe = sorted(derivation_atoms(d) | g.theory_atoms(theory), key=lambda a: a.entries)
    universe = tuple(universe)
    if len(universe) > MAX_SOUNDNESS_UNIVERSE:
        raise g.UniverseTooLarge(f"{len(universe)} atoms exceeds {MAX_SOUNDNESS_UNIVERSE}")
    check(d, theory)
    conclusions = [node.conclusion for _, node in d.nodes()]
    for v in g.all_table_valuations(universe):
        if not g.theory_model(v, theory, 1).holds:
            continue
        for seq in conclusions:
            if not g.sequent_sat(v, seq, 1).holds:
                return v
    return None


# -- constructors --------------------------------------------------------------

def ax(phi: Geom) -> Derivation:
    return Derivation("Ax", Sequent(phi, phi))


def thm(seq: Sequent) -> Derivation:
    return Derivation("Th", seq)


def cut(d1: Derivation, d2: Derivation) -> Derivation:
    if d1.conclusion.consequent != d2.conclusion.antecedent:
        raise SchemaMismatch("cut: premises do not meet")
    return Derivation(
        "Cut", Sequent(d1.conclusion.antecedent, d2.conclusion.consequent), (d1, d2), d1.conclusion.consequent
    )


def and_l1(phi: Geom, psi: Geom) -> Derivation:
    return Derivation("AndL1", Sequent(and_geom(phi, psi), phi), data=(phi, psi))


def and_l2(phi: Geom, psi: Geom) -> Derivation:
    return Derivation("AndL2", Sequent(and_geom(phi, psi), psi), data=(phi, psi))


def and_r(d1: Derivation, d2: Derivation) -> Derivation:
    if d1.conclusion.antecedent != d2.conclusion.antecedent:
        raise SchemaMismatch("and_r: premises have different antecedents")
    return Derivation(
        "AndR",
        Sequent(d1.conclusion.antecedent, and_geom(d1.conclusion.consequent, d2.conclusion.consequent)),
        (d1, d2),
    )


def true_r(phi: Geom) -> Derivation:
    return Derivation("TrueR", Sequent(phi, g.TOP))


def join_l(premises: Sequence[Derivation], consequent: Geom = None) -> Derivation:
    premises = tuple(premises)
    if not premises and consequent is None:
        raise SchemaMismatch("join_l with no premises needs an explicit consequent")
    cons = premises[0].conclusion.consequent if premises else consequent
    if any(p.conclusion.consequent != cons for p in premises):
        raise SchemaMismatch("join_l: premises have different consequents")
    return Derivation("JoinL", Sequent(or_geom([p.conclusion.antecedent for p in premises]), cons), premises)


def join_r(family: Sequence[Geom], i: int) -> Derivation:
    family = tuple(family)
    if not 0 <= i < len(family):
        raise SchemaMismatch(f"join_r: index {i} outside family of {len(family)}")
    return Derivation("JoinR", Sequent(family[i], or_geom(family)), data=(family, i))


def dist(psi: Geom, parts: Sequence[Geom]) -> Derivation:
    parts = tuple(parts)
    return Derivation(
        "Dist",
        Sequent(and_geom(psi, or_geom(parts)), or_geom([and_geom(psi, p) for p in parts])),
        data=(psi, parts),
    )


# -- JSON ----------------------------------------------------------------------

def to_json(d: Derivation) -> dict:
    out = {
        "rule": d.rule,
        "conclusion": {"ante": g.format_geom(d.conclusion.antecedent), "cons": g.format_geom(d.conclusion.consequent)},
        "premises": [to_json(p) for p in d.premises],
    }
    if d.data is not None:
        out["data"] = _data_to_json(d)
    return out


def _data_to_json(d: Derivation):
    if d.rule in ("AndL1", "AndL2"):
        return [g.format_geom(x) for x in d.data]
    if d.rule == "JoinR":
        family, i = d.data
        return {"family": [g.format_geom(x) for x in family], "index": i}
    if d.rule == "Dist":
        psi, parts = d.data
        return {"psi": g.format_geom(psi), "parts": [g.format_geom(x) for x in parts]}
    if d.rule == "Cut":
        return g.format_geom(d.data)
    return d.data


def from_json(obj: dict) -> Derivation:
    from .syntax import parse_geom

    rule = obj["rule"]
    concl = obj["conclusion"]
    seq = Sequent(parse_geom(concl.get("ante") or "true"), parse_geom(concl["cons"]))
    premises = tuple(from_json(p) for p in obj.get("premises", ()))
    raw = obj.get("data")
    data = None
    if raw is not None:
        if rule in ("AndL1", "AndL2"):
            data = tuple(parse_geom(x) for x in raw)
        elif rule == "JoinR":
            data = (tuple(parse_geom(x) for x in raw["family"]), int(raw["index"]))
        elif rule == "Dist":
            data = (parse_geom(raw["psi"]), tuple(parse_geom(x) for x in raw["parts"]))
        elif rule == "Cut":
            data = parse_geom(raw)
        else:
            data = raw
    return Derivation(rule, seq, premises, data)


def dumps(d: Derivation) -> str:
    return json.dumps(to_json(d), indent=2, ensure_ascii=False)


def loads(text: str) -> Derivation:
    return from_json(json.loads(text))
