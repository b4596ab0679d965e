"""Partial streams over a finite alphabet.

A stream position holds either a letter or ``None`` (bottom).  Streams are
represented as lassos: a finite prefix followed by a cycle repeated forever.
Every :class:`UPStream` is kept in canonical form, so ``==`` coincides with
pointwise equality of the denoted streams.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

Letter = Optional[str]  # None is bottom

BOTTOM_CHAR = "_"


class IncompatibleError(ValueError):
    """Two streams disagree on a defined position, so they have no upper bound."""

    def __init__(self, position: int, left: str, right: str):
        super().__init__(f"incompatible at position {position}: {left!r} vs {right!r}")
        self.position = position
        self.left = left
        self.right = right


def _check_symbol(sym: str) -> str:
    if not (isinstance(sym, str) and len(sym) == 1 and (sym.islower() or sym.isdigit())):
        raise ValueError(f"alphabet symbols are single lowercase letters or digits, got {sym!r}")
    return sym


@dataclass(frozen=True)
class Alphabet:
    letters: Tuple[str, ...]

    def __post_init__(self):
        letters = tuple(_check_symbol(a) for a in self.letters)
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate symbols in alphabet {letters}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, sym: object) -> bool:
        return sym in self.letters

    def __str__(self) -> str:
        return "".join(self.letters)


def letter_leq(x: Letter, y: Letter) -> bool:
    """Order of the flat domain: bottom below everything, letters incomparable."""
    return x is None or x == y


def _primitive_root(word: Tuple[Letter, ...]) -> Tuple[Letter, ...]:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def _char(x: Letter) -> str:
    return BOTTOM_CHAR if x is None else x


@dataclass(frozen=True)
class UPStream:
    """Ultimately periodic partial stream ``prefix · cycle^ω``."""

    prefix: Tuple[Letter, ...]
    cycle: Tuple[Letter, ...]

    def __post_init__(self):
        prefix = tuple(self.prefix)
        cycle = tuple(self.cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        cycle = _primitive_root(cycle)
        # Absorb the tail of the prefix into the cycle while it matches.
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def from_words(cls, prefix: Iterable[Letter] = (), cycle: Iterable[Letter] = (None,)) -> "UPStream":
        return cls(tuple(prefix), tuple(cycle))

    def at(self, i: int) -> Letter:
        if i < 0:
            raise IndexError(f"negative position {i}")
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.cycle[(i - p) % len(self.cycle)]

    def suffix(self, k: int) -> "UPStream":
        if k < 0:
            raise IndexError(f"negative shift {k}")
        p = len(self.prefix)
        if k <= p:
            return UPStream(self.prefix[k:], self.cycle)
        r = (k - p) % len(self.cycle)
        return UPStream((), self.cycle[r:] + self.cycle[:r])

    @property
    def lasso(self) -> Tuple[int, int]:
        """``(P, Q)``: prefix and cycle lengths of the canonical form."""
        return len(self.prefix), len(self.cycle)

    def horizon(self, other: "UPStream") -> int:
        """Number of positions after which ``self`` and ``other`` are jointly periodic."""
        return max(len(self.prefix), len(other.prefix)) + lcm(len(self.cycle), len(other.cycle))

    def is_total(self) -> bool:
        return None not in self.prefix and None not in self.cycle

    def letters(self) -> set:
        return {x for x in self.prefix + self.cycle if x is not None}

    def to_literal(self) -> str:
        """Parseable ``PREFIX|CYCLE`` form, ``_`` standing for bottom."""
        return "".join(map(_char, self.prefix)) + "|" + "".join(map(_char, self.cycle))

    def pretty(self) -> str:
        head = "".join(map(_char, self.prefix))
        body = "".join(map(_char, self.cycle))
        return f"{head}{body}^ω" if len(self.cycle) == 1 else f"{head}({body})^ω"

    def __str__(self) -> str:
        return self.pretty()


BOTTOM_STREAM = UPStream((), (None,))


def constant(letter: Letter) -> UPStream:
    return UPStream((), (letter,))


def leq(s: UPStream, t: UPStream) -> bool:
    return all(letter_leq(s.at(i), t.at(i)) for i in range(s.horizon(t)))


def sup(s: UPStream, t: UPStream) -> UPStream:
    """Pointwise join; raises :class:`IncompatibleError` at the first clash."""
    p = max(len(s.prefix), len(t.prefix))
    n = s.horizon(t)
    out = []
    for i in range(n):
        x, y = s.at(i), t.at(i)
        if x is None:
            out.append(y)
        elif y is None or x == y:
            out.append(x)
        else:
            raise IncompatibleError(i, x, y)
    return UPStream(tuple(out[:p]), tuple(out[p:]))


def is_total(s: UPStream) -> bool:
    return s.is_total()


def suffix(s: UPStream, k: int) -> UPStream:
    return s.suffix(k)


@dataclass(frozen=True)
class FiniteElement:
    """Finite-support partial stream, stored as sorted ``(position, letter)`` pairs."""

    entries: Tuple[Tuple[int, str], ...] = ()

    def __post_init__(self):
        items = tuple(sorted((int(i), a) for i, a in self.entries))
        positions = [i for i, _ in items]
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated position in {items}")
        for i, a in items:
            if i < 0:
                raise ValueError(f"negative position {i}")
            if a is None:
                raise ValueError("finite elements store defined positions only")
        object.__setattr__(self, "entries", items)

    @classmethod
    def of(cls, mapping: Mapping[int, str]) -> "FiniteElement":
        return cls(tuple(mapping.items()))

    @classmethod
    def from_word(cls, word: Sequence[Letter], offset: int = 0) -> "FiniteElement":
        return cls(tuple((offset + i, a) for i, a in enumerate(word) if a is not None))

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.entries)

    def get(self, i: int) -> Letter:
        for j, a in self.entries:
            if j == i:
                return a
        return None

    def as_dict(self) -> dict:
        return dict(self.entries)

    def leq(self, other: "FiniteElement") -> bool:
        mine = other.as_dict()
        return all(mine.get(i) == a for i, a in self.entries)

    def compatible(self, other: "FiniteElement") -> bool:
        mine = self.as_dict()
        return all(mine.get(i, a) == a for i, a in other.entries)

    def join(self, other: "FiniteElement") -> "FiniteElement":
        merged = self.as_dict()
        for i, a in other.entries:
            if merged.get(i, a) != a:
                raise IncompatibleError(i, merged[i], a)
            merged[i] = a
        return FiniteElement.of(merged)

    def shift(self, k: int = 1) -> "FiniteElement":
        return FiniteElement(tuple((i + k, a) for i, a in self.entries))

    def word(self) -> Tuple[Letter, ...]:
        if not self.entries:
            return ()
        d = self.as_dict()
        return tuple(d.get(i) for i in range(self.entries[-1][0] + 1))

    def letters(self) -> set:
        return {a for _, a in self.entries}

    def to_literal(self) -> str:
        return "{" + ",".join(f"{i}:{a}" for i, a in self.entries) + "}"

    def pretty(self) -> str:
        return "".join(map(_char, self.word())) + "_^ω"

    def __str__(self) -> str:
        return self.pretty()


def atom_leq(d: FiniteElement, s: UPStream) -> bool:
    return all(s.at(i) == a for i, a in d.entries)


def embed(d: FiniteElement) -> UPStream:
    return UPStream(d.word(), (None,))


def shift_atom(d: FiniteElement) -> FiniteElement:
    """``⊥ · d``: every defined position moves one step to the right."""
    return d.shift(1)


def window(s: UPStream, n: int) -> Tuple[Letter, ...]:
    return tuple(s.at(i) for i in range(n))
