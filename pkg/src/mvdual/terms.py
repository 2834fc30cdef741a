"""Terms of Łukasiewicz logic over variables x0, x1, ...

The abstract syntax has four node kinds (variables, 0, negation and
truncated sum).  The other connectives are definitional sugar and are
expanded as soon as a term is built.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry.linalg import point


class Term:
    __slots__ = ()

    def __invert__(self):
        return Neg(self)

    def __or__(self, other):
        return Oplus(self, other)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Var(Term):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable indices are non-negative")

    def __repr__(self):
        return f"Var({self.index})"


@dataclass(frozen=True, repr=False)
class Zero(Term):
    def __repr__(self):
        return "Zero()"


@dataclass(frozen=True, repr=False)
class Neg(Term):
    arg: Term

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Oplus(Term):
    left: Term
    right: Term

    def __repr__(self):
        return f"Oplus({self.left!r}, {self.right!r})"


ZERO = Zero()


def one() -> Term:
    return Neg(ZERO)


def odot(a: Term, b: Term) -> Term:
    return Neg(Oplus(Neg(a), Neg(b)))


def vee(a: Term, b: Term) -> Term:
    return Oplus(Neg(Oplus(Neg(a), b)), b)


def wedge(a: Term, b: Term) -> Term:
    return Neg(vee(Neg(a), Neg(b)))


def imp(a: Term, b: Term) -> Term:
    return Oplus(Neg(a), b)


def ominus(a: Term, b: Term) -> Term:
    return odot(a, Neg(b))


def chang_distance(s: Term, t: Term) -> Term:
    """``(s - t) + (t - s)``; evaluates to ``|s - t|``."""
    return Oplus(ominus(s, t), ominus(t, s))


def big_vee(terms: Sequence[Term]) -> Term:
    if not terms:
        return ZERO
    acc = terms[0]
    for t in terms[1:]:
        acc = vee(acc, t)
    return acc


def variables(t: Term) -> set[int]:
    out: set[int] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.index)
        elif isinstance(u, Neg):
            stack.append(u.arg)
        elif isinstance(u, Oplus):
            stack += [u.left, u.right]
    return out


def min_arity(t: Term) -> int:
    vs = variables(t)
    return max(vs) + 1 if vs else 0


def size(t: Term) -> int:
    if isinstance(t, Neg):
        return 1 + size(t.arg)
    if isinstance(t, Oplus):
        return 1 + size(t.left) + size(t.right)
    return 1


# ---------------------------------------------------------------------------
# semantics

def evaluate(t: Term, p: Sequence) -> Fraction:
    """Value of ``t`` in the standard MV-algebra on [0,1] at the point ``p``."""
    p = point(p)
    if len(p) < min_arity(t):
        raise ValueError(f"term uses x{min_arity(t) - 1} but the point has {len(p)} coordinates")
    if any(not 0 <= x <= 1 for x in p):
        raise ValueError("coordinates must lie in [0,1]")
    return _ev(t, p)


def _ev(t: Term, p) -> Fraction:
    if isinstance(t, Oplus):
        s = _ev(t.left, p) + _ev(t.right, p)
        return s if s < 1 else Fraction(1)
    if isinstance(t, Neg):
        return 1 - _ev(t.arg, p)
    if isinstance(t, Var):
        return p[t.index]
    return Fraction(0)


def substitute(t: Term, images: Sequence[Term]) -> Term:
    """Simultaneously replace ``x_j`` by ``images[j]``."""
    if len(images) < min_arity(t):
        raise ValueError(f"need {min_arity(t)} images, got {len(images)}")
    memo: dict[Term, Term] = {}

    def go(u):
        r = memo.get(u)
        if r is None:
            if isinstance(u, Var):
                r = images[u.index]
            elif isinstance(u, Neg):
                r = Neg(go(u.arg))
            elif isinstance(u, Oplus):
                r = Oplus(go(u.left), go(u.right))
            else:
                r = u
            memo[u] = r
        return r

    return go(t)


# ---------------------------------------------------------------------------
# concrete syntax

class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\(\+\))|(->)|(/\\)|(\\/)|(x\d+)|([01])(?![0-9])|([~&()]))")

# binary operators, loosest first; all left-associative
_LEVELS = [("->",), ("\\/",), ("/\\",), ("(+)",), ("&",)]
_BUILD = {"->": imp, "\\/": vee, "/\\": wedge, "(+)": Oplus, "&": odot}


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unknown symbol {text[pos]!r}", pos)
        toks.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    toks.append(("<end>", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def binary(self, level: int) -> Term:
        if level == len(_LEVELS):
            return self.unary()
        left = self.binary(level + 1)
        while self.peek()[0] in _LEVELS[level]:
            op = self.take()[0]
            left = _BUILD[op](left, self.binary(level + 1))
        return left

    def unary(self) -> Term:
        tok, pos = self.take()
        if tok == "~":
            return Neg(self.unary())
        if tok == "(":
            inner = self.binary(0)
            close, cpos = self.take()
            if close != ")":
                raise TermSyntaxError("expected ')'", cpos)
            return inner
        if tok == "0":
            return ZERO
        if tok == "1":
            return one()
        if tok.startswith("x"):
            return Var(int(tok[1:]))
        if tok == "<end>":
            raise TermSyntaxError("unexpected end of input", pos)
        raise TermSyntaxError(f"unexpected {tok!r}", pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.binary(0)
    tok, pos = p.peek()
    if tok != "<end>":
        raise TermSyntaxError(f"unexpected {tok!r}", pos)
    return t


def to_text(t: Term, sugar: bool = True) -> str:
    """Render a term; the output parses back to the same syntax tree."""
    return _show(t, sugar)[0]


# precedence of each printed form; higher binds tighter
_PREC = {"->": 0, "\\/": 1, "/\\": 2, "(+)": 3, "&": 4}


def _resugar(t: Term):
    if isinstance(t, Neg):
        a = t.arg
        if isinstance(a, Zero):
            return ("1",)
        if isinstance(a, Oplus) and isinstance(a.left, Neg) and isinstance(a.right, Neg):
            w = _vee_parts(a)
            if w is None:
                return ("&", a.left.arg, a.right.arg)
        if isinstance(a, Oplus):
            w = _vee_parts(a)
            if w and isinstance(w[0], Neg) and isinstance(w[1], Neg):
                return ("/\\", w[0].arg, w[1].arg)
        return None
    if isinstance(t, Oplus):
        w = _vee_parts(t)
        if w:
            return ("\\/",) + w
    return None


def _vee_parts(t: Oplus):
    # a \/ b  ==  ~(~a (+) b) (+) b
    l, b = t.left, t.right
    if isinstance(l, Neg) and isinstance(l.arg, Oplus) and isinstance(l.arg.left, Neg) and l.arg.right == b:
        return (l.arg.left.arg, b)
    return None


def _show(t: Term, sugar: bool) -> tuple[str, int]:
    atom = 9
    if isinstance(t, Var):
        return f"x{t.index}", atom
    if isinstance(t, Zero):
        return "0", atom
    form = _resugar(t) if sugar else None
    if form is not None and form[0] == "1":
        return "1", atom
    if form is not None:
        op, a, b = form
    elif isinstance(t, Neg):
        s, pr = _show(t.arg, sugar)
        return "~" + (s if pr >= 5 else f"({s})"), 5
    else:
        op, a, b = "(+)", t.left, t.right
    prec = _PREC[op]
    ls, lp = _show(a, sugar)
    rs, rp = _show(b, sugar)
    if lp < prec:
        ls = f"({ls})"
    if rp <= prec:
        rs = f"({rs})"
    return f"{ls} {op} {rs}", prec


@dataclass(frozen=True)
class Presentation:
    """Finitely many generators x0..x{arity-1} and relation pairs."""

    arity: int
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple((s, t) for s, t in self.relations)
        object.__setattr__(self, "relations", rels)
        for s, t in rels:
            if max(min_arity(s), min_arity(t)) > self.arity:
                raise ValueError(f"relation ({s}, {t}) uses a variable beyond arity {self.arity}")

    @classmethod
    def parse(cls, arity: int, relations) -> "Presentation":
        return cls(arity, tuple((parse_term(s), parse_term(t)) for s, t in relations))

    def extend(self, *pairs) -> "Presentation":
        return Presentation(self.arity, self.relations + tuple(pairs))
