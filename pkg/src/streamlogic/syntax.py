"""Text front-end: LTL formulas, stream literals, finite elements, geometric formulas.

Formula grammar, loosest binding first::

    until  := or (('U' | 'W') until)?          right-associative
    or     := and ('|' and)*
    and    := unary ('&' unary)*
    unary  := ('~' | 'X' | 'F' | 'G') unary | atom | 'true' | 'false' | '(' until ')'

Streams are written ``PREFIX|CYCLE`` with ``_`` for bottom, e.g. ``a_|b``.
"""
from __future__ import annotations

import re
from typing import List, Optional, Tuple

from . import geometry as g
from . import ltl
from .streams import BOTTOM_CHAR, Alphabet, FiniteElement, UPStream


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(r"\s*(?:([a-z0-9]+)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("ident", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("op", m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def parse(self) -> ltl.Ltl:
        phi = self.until()
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return phi

    def until(self) -> ltl.Ltl:
        left = self.disj()
        kind, val, _ = self.peek()
        if kind == "op" and val in ("U", "W"):
            self.take()
            right = self.until()
            return ltl.Until(left, right) if val == "U" else ltl.WeakUntil(left, right)
        return left

    def disj(self) -> ltl.Ltl:
        out = self.conj()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            out = ltl.Or(out, self.conj())
        return out

    def conj(self) -> ltl.Ltl:
        out = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            out = ltl.And(out, self.unary())
        return out

    def unary(self) -> ltl.Ltl:
        tok = self.take()
        kind, val, _ = tok
        if kind == "op":
            if val == "~":
                return ltl.Not(self.unary())
            if val == "X":
                return ltl.Next(self.unary())
            if val == "F":
                return ltl.eventually(self.unary())
            if val == "G":
                return ltl.always(self.unary())
            if val == "(":
                inner = self.until()
                if self.take()[:2] != ("op", ")"):
                    self.fail("expected ')'", self.tokens[self.i - 1])
                return inner
        if kind == "ident":
            if val == "true":
                return ltl.TRUE
            if val == "false":
                return ltl.FALSE
            if len(val) != 1:
                self.fail(f"atoms are single symbols, got {val!r}", tok)
            return ltl.Atom(val)
        self.fail("expected a formula" if kind == "eof" else f"unexpected {val!r}", tok)


def parse_formula(text: str, alphabet: Optional[Alphabet] = None) -> ltl.Ltl:
    phi = _FormulaParser(text).parse()
    if alphabet is not None:
        ltl.check_alphabet(phi, alphabet)
    return phi


def _parse_word(text: str, offset: int, alphabet: Optional[Alphabet], full: str):
    out = []
    for j, ch in enumerate(text):
        if ch == BOTTOM_CHAR:
            out.append(None)
        elif (ch.islower() or ch.isdigit()) and (alphabet is None or ch in alphabet):
            out.append(ch)
        else:
            raise ParseError(f"bad stream symbol {ch!r}", offset + j, full)
    return out


def parse_stream(text: str, alphabet: Optional[Alphabet] = None) -> UPStream:
    raw = text.strip()
    if raw.count("|") != 1:
        raise ParseError("stream literal needs exactly one '|'", 0, text)
    head, body = raw.split("|")
    if not body:
        raise ParseError("empty cycle", len(raw), text)
    return UPStream(
        tuple(_parse_word(head, 0, alphabet, text)),
        tuple(_parse_word(body, len(head) + 1, alphabet, text)),
    )


_FINITE_ENTRY = re.compile(r"\s*(\d+)\s*:\s*([a-z0-9])\s*$")


def parse_finite(text: str) -> FiniteElement:
    """``{0:a,3:b}`` or a bottom-padded word such as ``_a`` / ``_a_^ω``."""
    raw = text.strip()
    if raw.startswith("{"):
        if not raw.endswith("}"):
            raise ParseError("unterminated finite element", len(raw), text)
        body = raw[1:-1].strip()
        entries = []
        if body:
            for part in body.split(","):
                m = _FINITE_ENTRY.match(part)
                if m is None:
                    raise ParseError(f"bad entry {part.strip()!r}", raw.find(part), text)
                entries.append((int(m.group(1)), m.group(2)))
        try:
            return FiniteElement(tuple(entries))
        except ValueError as exc:
            raise ParseError(str(exc), 0, text) from None
    for tail in ("^ω", "^w"):
        if raw.endswith(tail):
            raw = raw[: -len(tail)]
    if not raw:
        raise ParseError("empty finite element", 0, text)
    return FiniteElement.from_word(_parse_word(raw, 0, None, text))


def parse_geom(text: str) -> g.Join:
    """Finite geometric formula in print syntax: ``A & B | C``, ``true``, ``false``."""
    raw = text.strip()
    if raw == "false":
        return g.BOTTOM
    disjuncts = []
    offset = 0
    for part in raw.split("|"):
        atoms = []
        for piece in part.split("&"):
            tok = piece.strip()
            if tok == "true":
                continue
            if not tok:
                raise ParseError("empty conjunct", offset, text)
            atoms.append(parse_finite(tok))
        disjuncts.append(g.Conj(frozenset(atoms)))
        offset += len(part) + 1
    return g.Join(tuple(disjuncts))


def parse_sequent(text: str) -> g.Sequent:
    if "|-" not in text:
        raise ParseError("sequent needs '|-'", 0, text)
    ante, cons = text.split("|-", 1)
    return g.Sequent(parse_geom(ante) if ante.strip() else g.TOP, parse_geom(cons))


def parse_theory(text: str) -> g.Finite:
    """One sequent per line; blank lines and ``#`` comments are skipped."""
    sequents = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            sequents.append(parse_sequent(line))
    return g.Finite(tuple(sequents))
