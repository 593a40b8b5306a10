"""Formula data model, parsing and printing for the three formula dialects.

The conditional language and the modal language share one propositional AST:
``Var``, ``Top``, ``Bot``, ``And``, ``Or``, ``Imp`` plus the binary conditionals
``BoxArrow``/``DiaArrow`` and the unary modalities ``Box``/``Dia``.  Which
constructors are legal is a property of the dialect, checked by
:func:`in_dialect`.  ``Meta`` nodes are pattern metavariables used by axiom
schemes; they never come out of :func:`parse`.

Negation and the biconditional are abbreviations only: ``~a`` is
``Imp(a, Bot)`` and ``a <-> b`` is ``And(Imp(a, b), Imp(b, a))``.  The printer
restores both abbreviations, so ``parse(print(f)) == f`` for every AST.

First-order formulas (the two-sorted language of the standard translation)
have their own node classes and no parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

__all__ = [
    "Formula", "Var", "Meta", "Top", "Bot", "And", "Or", "Imp", "BoxArrow",
    "DiaArrow", "Box", "Dia", "TOP", "BOT", "neg", "iff",
    "FoFormula", "AtomP", "AtomR", "AtomO", "AtomS", "AtomE", "Eq", "FoTop",
    "FoBot", "FoAnd", "FoOr", "FoImp", "Forall", "Exists", "forall_o",
    "ParseError", "parse", "fmt", "substitute", "atoms", "metas",
    "subformulas", "depth", "in_dialect", "DIALECTS", "fo_free_vars",
    "fo_bound_vars", "fo_fmt",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class _Node:
    """Structural equality with a cached hash; subclasses are frozen dataclasses."""

    __slots__ = ()

    def _fields(self) -> tuple:
        return tuple(getattr(self, name) for name in self.__dataclass_fields__ if name != "_h")

    def __hash__(self) -> int:
        h = self._h
        if h is None:
            h = hash((type(self).__name__, self._fields()))
            object.__setattr__(self, "_h", h)
        return h

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._fields() == other._fields()  # type: ignore[attr-defined]

    def __ne__(self, other: object) -> bool:
        return not self == other


def _node(cls):
    cls = dataclass(frozen=True, eq=False, slots=True)(cls)
    return cls


# ---------------------------------------------------------------------------
# Propositional AST (conditional + modal dialects)
# ---------------------------------------------------------------------------


class Formula(_Node):
    __slots__ = ()

    def __str__(self) -> str:
        return fmt(self)


@_node
class Var(Formula):
    name: str
    _h: int | None = field(default=None, repr=False)


@_node
class Meta(Formula):
    """Scheme metavariable (``phi``, ``psi``, ``chi``, ``theta``)."""

    name: str
    _h: int | None = field(default=None, repr=False)


@_node
class Top(Formula):
    _h: int | None = field(default=None, repr=False)


@_node
class Bot(Formula):
    _h: int | None = field(default=None, repr=False)


@_node
class And(Formula):
    left: Formula
    right: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class Or(Formula):
    left: Formula
    right: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class Imp(Formula):
    left: Formula
    right: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class BoxArrow(Formula):
    left: Formula
    right: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class DiaArrow(Formula):
    left: Formula
    right: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class Box(Formula):
    body: Formula
    _h: int | None = field(default=None, repr=False)


@_node
class Dia(Formula):
    body: Formula
    _h: int | None = field(default=None, repr=False)


TOP = Top()
BOT = Bot()

BINARY = (And, Or, Imp, BoxArrow, DiaArrow)
UNARY = (Box, Dia)


def neg(f: Formula) -> Formula:
    return Imp(f, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def _is_neg(f: Formula) -> bool:
    return type(f) is Imp and type(f.right) is Bot


def _is_iff(f: Formula) -> bool:
    return (
        type(f) is And
        and type(f.left) is Imp
        and type(f.right) is Imp
        and f.left.left == f.right.right
        and f.left.right == f.right.left
    )


# Dialects: which constructors may appear.
DIALECTS: dict[str, frozenset[type]] = {
    "int": frozenset({Var, Top, Bot, And, Or, Imp}),
    "cond": frozenset({Var, Top, Bot, And, Or, Imp, BoxArrow, DiaArrow}),
    "cond_box": frozenset({Var, Top, Bot, And, Or, Imp, BoxArrow}),
    "modal": frozenset({Var, Top, Bot, And, Or, Imp, Box, Dia}),
}


def in_dialect(f: Formula, dialect: str, allow_meta: bool = False) -> bool:
    allowed = DIALECTS[dialect]
    stack = [f]
    while stack:
        g = stack.pop()
        t = type(g)
        if t is Meta:
            if not allow_meta:
                return False
            continue
        if t not in allowed:
            return False
        if t in BINARY:
            stack.append(g.left)
            stack.append(g.right)
        elif t in UNARY:
            stack.append(g.body)
    return True


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformula occurrences, children before parents."""
    t = type(f)
    if t in BINARY:
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif t in UNARY:
        yield from subformulas(f.body)
    yield f


def depth(f: Formula) -> int:
    t = type(f)
    if t in BINARY:
        return 1 + max(depth(f.left), depth(f.right))
    if t in UNARY:
        return 1 + depth(f.body)
    return 0


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if type(g) is Var}


def metas(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if type(g) is Meta}


def map_leaves(f: Formula, leaf: Callable[[Formula], Formula]) -> Formula:
    t = type(f)
    if t in BINARY:
        left = map_leaves(f.left, leaf)
        right = map_leaves(f.right, leaf)
        if left is f.left and right is f.right:
            return f
        return t(left, right)
    if t in UNARY:
        body = map_leaves(f.body, leaf)
        return f if body is f.body else t(body)
    return leaf(f)


def substitute(f: Formula, mapping: Mapping[str, Formula], metavars: bool = False) -> Formula:
    """Simultaneous substitution for variables (or for metavariables when ``metavars``)."""
    if not mapping:
        return f
    kind = Meta if metavars else Var

    def leaf(g: Formula) -> Formula:
        if type(g) is kind:
            return mapping.get(g.name, g)
        return g

    return map_leaves(f, leaf)


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|=>|~>|\[\]|<>|[~&|()])|(?P<atom>[a-z][a-zA-Z0-9_]*)|(?P<const>[TF])(?![a-zA-Z0-9_]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    # binding strength: <-> 1, -> 2 (right), => ~> 3 (non-assoc), | 4, & 5, prefix 6
    def __init__(self, text: str, dialect: str):
        self.text = text
        self.dialect = dialect
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: tuple[str, str, int] | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self) -> Formula:
        f = self.iff()
        tok = self.peek()
        if tok[0] != "eof":
            raise self.error(f"unexpected token {tok[1]!r}")
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek()[1] == "<->":
            self.take()
            right = self.imp()
            if self.peek()[1] == "<->":
                raise self.error("'<->' is non-associative; add parentheses")
            return iff(left, right)
        return left

    def imp(self) -> Formula:
        left = self.cond()
        if self.peek()[1] == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def cond(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok[1] in ("=>", "~>"):
            if self.dialect == "modal":
                raise self.error(f"conditional {tok[1]!r} not allowed in the modal dialect")
            self.take()
            right = self.disj()
            nxt = self.peek()
            if nxt[1] in ("=>", "~>"):
                raise self.error("conditionals '=>'/'~>' are non-associative; add parentheses", nxt)
            return BoxArrow(left, right) if tok[1] == "=>" else DiaArrow(left, right)
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[1] == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.prefix()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.prefix())
        return f

    def prefix(self) -> Formula:
        tok = self.peek()
        if tok[1] == "~":
            self.take()
            return neg(self.prefix())
        if tok[1] in ("[]", "<>"):
            if self.dialect != "modal":
                raise self.error(f"modality {tok[1]!r} not allowed in the conditional dialect")
            self.take()
            body = self.prefix()
            return Box(body) if tok[1] == "[]" else Dia(body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.take()
        kind, value, _ = tok
        if kind == "atom":
            return Var(value)
        if kind == "const":
            return TOP if value == "T" else BOT
        if value == "(":
            f = self.iff()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return f
        if kind == "eof":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {value!r}", tok)


def parse(text: str, dialect: str = "cond") -> Formula:
    """Parse formula text.  ``dialect`` is ``"cond"`` or ``"modal"``."""
    if dialect not in ("cond", "modal"):
        raise ValueError(f"unknown dialect {dialect!r}")
    return _Parser(text, dialect).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_LEVEL = {Imp: 2, BoxArrow: 3, DiaArrow: 3, Or: 4, And: 5}
_SYMBOL = {Imp: "->", BoxArrow: "=>", DiaArrow: "~>", Or: "|", And: "&"}
_META_NAMES = {"phi", "psi", "chi", "theta"}


def _level(f: Formula) -> int:
    t = type(f)
    if t is And and _is_iff(f):
        return 1
    if t is Imp and _is_neg(f):
        return 6
    return _LEVEL.get(t, 6 if t in UNARY else 7)


def fmt(f: Formula) -> str:
    """Canonical text with minimal parentheses; ``~`` and ``<->`` restored."""

    def wrap(g: Formula, ok: bool) -> str:
        s = fmt(g)
        return s if ok else f"({s})"

    t = type(f)
    if t is Var:
        return f.name
    if t is Meta:
        return f"?{f.name}"
    if t is Top:
        return "T"
    if t is Bot:
        return "F"
    if t is And and _is_iff(f):
        a, b = f.left.left, f.left.right
        return f"{wrap(a, _level(a) > 1)} <-> {wrap(b, _level(b) > 1)}"
    if t is Imp and _is_neg(f):
        return "~" + wrap(f.left, _level(f.left) >= 6)
    if t is Box:
        return "[]" + wrap(f.body, _level(f.body) >= 6)
    if t is Dia:
        return "<>" + wrap(f.body, _level(f.body) >= 6)
    lvl = _LEVEL[t]
    a, b = f.left, f.right
    la, lb = _level(a), _level(b)
    if t is Imp:
        ok_a, ok_b = la > lvl, lb >= lvl
    elif t in (BoxArrow, DiaArrow):
        ok_a, ok_b = la > lvl, lb > lvl
    else:
        ok_a, ok_b = la >= lvl, lb > lvl
    return f"{wrap(a, ok_a)} {_SYMBOL[t]} {wrap(b, ok_b)}"


# ---------------------------------------------------------------------------
# First-order AST
# ---------------------------------------------------------------------------


class FoFormula(_Node):
    __slots__ = ()

    def __str__(self) -> str:
        return fo_fmt(self)


@_node
class AtomP(FoFormula):
    pred: str
    x: str
    _h: int | None = field(default=None, repr=False)


@_node
class AtomR(FoFormula):
    x: str
    y: str
    z: str
    _h: int | None = field(default=None, repr=False)


@_node
class AtomO(FoFormula):
    x: str
    _h: int | None = field(default=None, repr=False)


@_node
class AtomS(FoFormula):
    x: str
    _h: int | None = field(default=None, repr=False)


@_node
class AtomE(FoFormula):
    """``E x y``: x is an element of y."""

    x: str
    y: str
    _h: int | None = field(default=None, repr=False)


@_node
class Eq(FoFormula):
    x: str
    y: str
    _h: int | None = field(default=None, repr=False)


@_node
class FoTop(FoFormula):
    _h: int | None = field(default=None, repr=False)


@_node
class FoBot(FoFormula):
    _h: int | None = field(default=None, repr=False)


@_node
class FoAnd(FoFormula):
    left: FoFormula
    right: FoFormula
    _h: int | None = field(default=None, repr=False)


@_node
class FoOr(FoFormula):
    left: FoFormula
    right: FoFormula
    _h: int | None = field(default=None, repr=False)


@_node
class FoImp(FoFormula):
    left: FoFormula
    right: FoFormula
    _h: int | None = field(default=None, repr=False)


@_node
class Forall(FoFormula):
    var: str
    body: FoFormula
    _h: int | None = field(default=None, repr=False)


@_node
class Exists(FoFormula):
    var: str
    body: FoFormula
    _h: int | None = field(default=None, repr=False)


FO_ATOMS = (AtomP, AtomR, AtomO, AtomS, AtomE, Eq)
FO_BINARY = (FoAnd, FoOr, FoImp)
FO_QUANT = (Forall, Exists)


def forall_o(x: str, body: FoFormula) -> FoFormula:
    """Object-guarded universal: ``forall x (O x -> body)``."""
    return Forall(x, FoImp(AtomO(x), body))


def fo_iff(a: FoFormula, b: FoFormula) -> FoFormula:
    return FoAnd(FoImp(a, b), FoImp(b, a))


def fo_neg(a: FoFormula) -> FoFormula:
    return FoImp(a, FoBot())


def _atom_vars(f: FoFormula) -> tuple[str, ...]:
    t = type(f)
    if t is AtomP or t is AtomO or t is AtomS:
        return (f.x,)
    if t is AtomE or t is Eq:
        return (f.x, f.y)
    if t is AtomR:
        return (f.x, f.y, f.z)
    return ()


def fo_free_vars(f: FoFormula) -> frozenset[str]:
    t = type(f)
    if t in FO_ATOMS:
        return frozenset(_atom_vars(f))
    if t in FO_BINARY:
        return fo_free_vars(f.left) | fo_free_vars(f.right)
    if t in FO_QUANT:
        return fo_free_vars(f.body) - {f.var}
    return frozenset()


def fo_bound_vars(f: FoFormula) -> frozenset[str]:
    t = type(f)
    if t in FO_BINARY:
        return fo_bound_vars(f.left) | fo_bound_vars(f.right)
    if t in FO_QUANT:
        return fo_bound_vars(f.body) | {f.var}
    return frozenset()


def fo_binders(f: FoFormula) -> list[str]:
    """Bound variables in binding order, with repetitions."""
    t = type(f)
    if t in FO_BINARY:
        return fo_binders(f.left) + fo_binders(f.right)
    if t in FO_QUANT:
        return [f.var] + fo_binders(f.body)
    return []


_FO_LEVEL = {FoImp: 2, FoOr: 4, FoAnd: 5}
_FO_SYMBOL = {FoImp: "->", FoOr: "|", FoAnd: "&"}


def _fo_level(f: FoFormula) -> int:
    t = type(f)
    if t is FoImp and type(f.right) is FoBot:
        return 6
    if t in FO_QUANT:
        return 0
    return _FO_LEVEL.get(t, 7)


def fo_fmt(f: FoFormula) -> str:
    t = type(f)
    if t is AtomP:
        return f"{f.pred}({f.x})"
    if t is AtomO:
        return f"O({f.x})"
    if t is AtomS:
        return f"S({f.x})"
    if t is AtomE:
        return f"E({f.x},{f.y})"
    if t is AtomR:
        return f"R({f.x},{f.y},{f.z})"
    if t is Eq:
        return f"{f.x} = {f.y}"
    if t is FoTop:
        return "T"
    if t is FoBot:
        return "F"
    if t is Forall:
        return f"forall {f.var}. {fo_fmt(f.body)}"
    if t is Exists:
        return f"exists {f.var}. {fo_fmt(f.body)}"

    def wrap(g: FoFormula, ok: bool) -> str:
        s = fo_fmt(g)
        return s if ok else f"({s})"

    if t is FoImp and type(f.right) is FoBot:
        return "~" + wrap(f.left, _fo_level(f.left) >= 6)
    lvl = _FO_LEVEL[t]
    la, lb = _fo_level(f.left), _fo_level(f.right)
    if t is FoImp:
        ok_a, ok_b = la > lvl, lb >= lvl or lb == 0
    else:
        ok_a, ok_b = la >= lvl, lb > lvl
    return f"{wrap(f.left, ok_a)} {_FO_SYMBOL[t]} {wrap(f.right, ok_b)}"
