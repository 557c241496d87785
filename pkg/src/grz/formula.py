"""Modal formulas, formula multisets and sequents, plus the concrete syntax.

Formulas are hash-consed: constructing the same tree twice returns the same
object, so equality is identity and multiset lookups are cheap.
"""

from __future__ import annotations

import re
import threading
from collections import Counter
from typing import Iterable, Iterator, Mapping

from .errors import MultisetError, ParseError

__all__ = [
    "Formula", "Bottom", "Atom", "Implies", "Box", "BOT",
    "neg", "top", "conj", "disj", "diamond",
    "Multiset", "Sequent",
    "parse_formula", "parse_sequent", "print_formula",
    "subformulas", "lambda_star", "formula_depth", "modal_depth",
]

_intern_lock = threading.Lock()
_table: dict = {}


class Formula:
    """Base class of the four formula constructors."""

    __slots__ = ("_str", "_size")

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self}>"

    def __str__(self) -> str:
        return self._str

    def __reduce__(self):
        return (parse_formula, (self._str,))

    @property
    def size(self) -> int:
        return self._size

    def children(self) -> tuple[Formula, ...]:
        return ()

    @property
    def is_atom(self) -> bool:
        return False

    @property
    def is_box(self) -> bool:
        return False

    @property
    def is_implication(self) -> bool:
        return False

    def sort_key(self):
        return (self._size, self._str)

    def __lt__(self, other: Formula) -> bool:
        return self.sort_key() < other.sort_key()


def _make(cls, key, text, size, **fields):
    with _intern_lock:
        obj = _table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "_str", text)
            object.__setattr__(obj, "_size", size)
            for name, value in fields.items():
                object.__setattr__(obj, name, value)
            _table[key] = obj
        return obj


class Bottom(Formula):
    __slots__ = ()

    def __new__(cls):
        return _make(cls, ("bot",), "bot", 1)


class Atom(Formula):
    __slots__ = ("name",)

    _ident = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

    def __new__(cls, name: str):
        if not isinstance(name, str) or not cls._ident.match(name) or name in ("bot", "top"):
            raise ValueError(f"invalid atom name {name!r}")
        return _make(cls, ("atom", name), name, 1, name=name)

    @property
    def is_atom(self) -> bool:
        return True


class Implies(Formula):
    __slots__ = ("left", "right")

    def __new__(cls, left: Formula, right: Formula):
        text = f"({left._str} -> {right._str})"
        return _make(cls, ("imp", left, right), text, left._size + right._size + 1,
                     left=left, right=right)

    def children(self):
        return (self.left, self.right)

    @property
    def is_implication(self) -> bool:
        return True


class Box(Formula):
    __slots__ = ("body",)

    def __new__(cls, body: Formula):
        return _make(cls, ("box", body), "[]" + body._str, body._size + 1, body=body)

    def children(self):
        return (self.body,)

    @property
    def is_box(self) -> bool:
        return True


BOT = Bottom()


def neg(a: Formula) -> Formula:
    return Implies(a, BOT)


def top() -> Formula:
    return neg(BOT)


def conj(a: Formula, b: Formula) -> Formula:
    return neg(Implies(a, neg(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(neg(a), b)


def diamond(a: Formula) -> Formula:
    return neg(Box(neg(a)))


def formula_depth(f: Formula) -> int:
    return 1 + max((formula_depth(c) for c in f.children()), default=0)


def modal_depth(f: Formula) -> int:
    inner = max((modal_depth(c) for c in f.children()), default=0)
    return inner + 1 if f.is_box else inner


class Multiset:
    """Immutable finite multiset of formulas.

    Removing an absent formula raises :class:`MultisetError` instead of being
    silently ignored.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[Formula] | Mapping[Formula, int] = ()):
        if isinstance(items, Multiset):
            counts = dict(items._counts)
        elif isinstance(items, Mapping):
            counts = {f: n for f, n in items.items() if n > 0}
            if any(n < 0 for n in items.values()):
                raise MultisetError("negative multiplicity")
        else:
            counts = dict(Counter(items))
        for f in counts:
            if not isinstance(f, Formula):
                raise TypeError(f"multiset element {f!r} is not a formula")
        object.__setattr__(self, "_counts", counts)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("multisets are immutable")

    @classmethod
    def _raw(cls, counts: dict) -> Multiset:
        m = object.__new__(cls)
        object.__setattr__(m, "_counts", counts)
        object.__setattr__(m, "_hash", None)
        return m

    def count(self, f: Formula) -> int:
        return self._counts.get(f, 0)

    def __contains__(self, f) -> bool:
        return f in self._counts

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def distinct(self) -> list[Formula]:
        return sorted(self._counts)

    def __iter__(self) -> Iterator[Formula]:
        for f in self.distinct():
            for _ in range(self._counts[f]):
                yield f

    def items(self):
        return [(f, self._counts[f]) for f in self.distinct()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._counts.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return "Multiset([" + ", ".join(str(f) for f in self) + "])"

    def add(self, *fs: Formula) -> Multiset:
        counts = dict(self._counts)
        for f in fs:
            counts[f] = counts.get(f, 0) + 1
        return Multiset._raw(counts)

    def remove(self, f: Formula, times: int = 1) -> Multiset:
        have = self._counts.get(f, 0)
        if have < times:
            raise MultisetError(f"cannot remove {f} (multiplicity {have}, need {times})")
        counts = dict(self._counts)
        if have == times:
            del counts[f]
        else:
            counts[f] = have - times
        return Multiset._raw(counts)

    def __add__(self, other: Multiset) -> Multiset:
        counts = dict(self._counts)
        for f, n in other._counts.items():
            counts[f] = counts.get(f, 0) + n
        return Multiset._raw(counts)

    def __sub__(self, other: Multiset) -> Multiset:
        """Truncated difference."""
        counts = {}
        for f, n in self._counts.items():
            k = n - other._counts.get(f, 0)
            if k > 0:
                counts[f] = k
        return Multiset._raw(counts)

    def minus(self, other: Multiset) -> Multiset:
        """Exact difference; every element of ``other`` must be present."""
        if not other <= self:
            raise MultisetError(f"{other} is not contained in {self}")
        return self - other

    def union_max(self, other: Multiset) -> Multiset:
        counts = dict(self._counts)
        for f, n in other._counts.items():
            if n > counts.get(f, 0):
                counts[f] = n
        return Multiset._raw(counts)

    def __le__(self, other: Multiset) -> bool:
        return all(other._counts.get(f, 0) >= n for f, n in self._counts.items())

    def boxed(self) -> Multiset:
        return Multiset._raw({f: n for f, n in self._counts.items() if f.is_box})

    def support(self) -> frozenset:
        return frozenset(self._counts)


EMPTY = Multiset()


class Sequent:
    """``antecedent => succedent`` over two multisets."""

    __slots__ = ("ant", "suc", "_hash")

    def __init__(self, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()):
        object.__setattr__(self, "ant", ant if isinstance(ant, Multiset) else Multiset(ant))
        object.__setattr__(self, "suc", suc if isinstance(suc, Multiset) else Multiset(suc))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("sequents are immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.ant == other.ant and self.suc == other.suc

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ant, self.suc)))
        return self._hash

    def __str__(self) -> str:
        left = ", ".join(str(f) for f in self.ant)
        right = ", ".join(str(f) for f in self.suc)
        return f"{left} => {right}".strip()

    def __repr__(self) -> str:
        return f"Sequent({str(self)!r})"

    def set_key(self) -> tuple[frozenset, frozenset]:
        return (self.ant.support(), self.suc.support())

    def formulas(self) -> list[Formula]:
        return list(self.ant) + list(self.suc)

    def is_initial(self) -> bool:
        """Initial in the non-well-founded calculus: shared atom or bot on the left."""
        if BOT in self.ant:
            return True
        return any(f.is_atom and f in self.suc for f in self.ant.support())

    def initial_principal(self) -> Formula | None:
        if BOT in self.ant:
            return BOT
        atoms = sorted(f for f in self.ant.support() if f.is_atom and f in self.suc)
        return atoms[0] if atoms else None


# ---------------------------------------------------------------------------
# concrete syntax

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>->|→|=>|⇒|\[\]|□|<>|◇|~|¬|/\\|∧|\\/|∨|\(|\)|,|⊥|⊤)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

_ALIASES = {"→": "->", "⇒": "=>", "□": "[]", "◇": "<>", "¬": "~", "∧": "/\\", "∨": "\\/",
            "⊥": "bot", "⊤": "top"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tok = m.group()
            out.append((_ALIASES.get(tok, tok), pos))
        pos = m.end()
    out.append(("<eof>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "\\/":
            self.take()
            f = disj(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "/\\":
            self.take()
            f = conj(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return neg(self.unary())
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<>":
            self.take()
            return diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "bot":
            self.take()
            return BOT
        if tok == "top":
            self.take()
            return top()
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok[0].isalpha() or tok[0] == "_":
            self.take()
            return Atom(tok)
        raise ParseError(f"unexpected token {tok!r}", self.pos())

    def formula_list(self, stop: set[str]) -> list[Formula]:
        if self.peek() in stop:
            return []
        fs = [self.formula()]
        while self.peek() == ",":
            self.take()
            fs.append(self.formula())
        return fs


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.take("<eof>")
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    ant = p.formula_list({"=>"})
    p.take("=>")
    suc = p.formula_list({"<eof>"})
    p.take("<eof>")
    return Sequent(ant, suc)


def print_formula(f: Formula) -> str:
    return str(f)


def subformulas(s: Sequent | Iterable[Formula]) -> set[Formula]:
    roots = s.formulas() if isinstance(s, Sequent) else list(s)
    seen: set[Formula] = set()
    stack = list(roots)
    while stack:
        f = stack.pop()
        if f not in seen:
            seen.add(f)
            stack.extend(f.children())
    return seen


def lambda_star(lam: Iterable[Formula]) -> Multiset:
    return Multiset(Box(Implies(a, Box(a))) for a in set(lam))
