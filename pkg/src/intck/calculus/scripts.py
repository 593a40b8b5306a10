"""Text format for proof scripts.

::

    calculus INTCK
    mode derived_rule
    premise p -> q
    1: p -> q ; pre 1
    2: (p & q <-> p) ; ...
    3: q => T ; ax A5 phi=q
    4: ... ; mp 2 3
    5: ... ; rule RCbox 2
    6: ... ; thm INT/syl p=a q=b r=c

``#`` starts a comment.  In ``mp i j`` line ``i`` is the minor premise and
line ``j`` the implication.
"""

from __future__ import annotations

import re

from ..syntax import ParseError, fmt, parse
from .kernel import (
    MODES, MP, Ax, KernelError, Line, Pre, ProofScript, RuleApp, Thm, bindings, parse_dialect,
)


class ScriptError(ValueError):
    """Malformed script text."""

    def __init__(self, message: str, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
        self.lineno = lineno


_BIND_RE = re.compile(r"(?:^|\s)([A-Za-z_]\w*)=(?!>)")
_LINE_RE = re.compile(r"(\d+)\s*:\s*(.*)\Z")


def _split_bindings(text: str) -> tuple[str, list[tuple[str, str]]]:
    """Split ``head k1=f1 k2=f2`` into ``head`` and the raw binding texts."""
    marks = list(_BIND_RE.finditer(text))
    head = text[: marks[0].start()] if marks else text
    out = []
    for a, b in zip(marks, marks[1:] + [None]):
        end = b.start() if b is not None else len(text)
        out.append((a.group(1), text[a.end():end].strip()))
    return head.strip(), out


def _parse_just(text: str, dialect: str, lineno: int):
    head, raw = _split_bindings(text)
    parts = head.split()
    if not parts:
        raise ScriptError("missing justification", lineno)
    kind, args = parts[0], parts[1:]

    def ints(xs):
        try:
            return tuple(int(x) for x in xs)
        except ValueError:
            raise ScriptError(f"expected line numbers, got {' '.join(xs)!r}", lineno) from None

    def binds():
        out = []
        seen = set()
        for k, v in raw:
            if k in seen:
                raise ScriptError(f"duplicate binding {k}", lineno)
            seen.add(k)
            try:
                out.append((k, parse(v, dialect)))
            except ParseError as e:
                raise ScriptError(f"bad binding {k}: {e}", lineno) from None
        return bindings(out)

    if kind == "ax":
        if len(args) != 1:
            raise ScriptError("usage: ax <SchemeId> <mv>=<formula> ...", lineno)
        return Ax(args[0], binds())
    if kind == "thm":
        if len(args) != 1:
            raise ScriptError("usage: thm <Name> <atom>=<formula> ...", lineno)
        return Thm(args[0], binds())
    if raw:
        raise ScriptError(f"'{kind}' takes no bindings", lineno)
    if kind == "pre":
        (k,) = ints(args) if len(args) == 1 else (None,)
        if k is None:
            raise ScriptError("usage: pre <k>", lineno)
        return Pre(k)
    if kind == "mp":
        if len(args) != 2:
            raise ScriptError("usage: mp <i> <j>", lineno)
        i, j = ints(args)
        return MP(i, j)
    if kind == "rule":
        if len(args) < 1:
            raise ScriptError("usage: rule <RuleId> <i> ...", lineno)
        return RuleApp(args[0], ints(args[1:]))
    raise ScriptError(f"unknown justification {kind!r}", lineno)


def loads(text: str) -> ProofScript:
    calculus = mode = None
    premises = []
    lines = []
    dialect = "cond"
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("calculus "):
            if calculus is not None:
                raise ScriptError("duplicate calculus header", lineno)
            calculus = s.split(None, 1)[1].strip()
            try:
                dialect = parse_dialect(calculus)
            except KernelError as e:
                raise ScriptError(str(e), lineno) from None
            continue
        if calculus is None:
            raise ScriptError("script must start with 'calculus <ID>'", lineno)
        if s.startswith("mode "):
            if mode is not None:
                raise ScriptError("duplicate mode header", lineno)
            mode = s.split(None, 1)[1].strip()
            if mode not in MODES:
                raise ScriptError(f"unknown mode {mode!r}", lineno)
            continue
        if s.startswith("premise "):
            if lines:
                raise ScriptError("premises must precede the numbered lines", lineno)
            try:
                premises.append(parse(s[len("premise "):], dialect))
            except ParseError as e:
                raise ScriptError(str(e), lineno) from None
            continue
        m = _LINE_RE.match(s)
        if not m:
            raise ScriptError(f"cannot read {s!r}", lineno)
        if int(m.group(1)) != len(lines) + 1:
            raise ScriptError(f"expected line number {len(lines) + 1}", lineno)
        body = m.group(2)
        if ";" not in body:
            raise ScriptError("missing ';' before the justification", lineno)
        ftext, jtext = body.rsplit(";", 1)
        try:
            f = parse(ftext, dialect)
        except ParseError as e:
            raise ScriptError(str(e), lineno) from None
        lines.append(Line(f, _parse_just(jtext, dialect, lineno)))
    if calculus is None:
        raise ScriptError("missing 'calculus' header")
    return ProofScript(calculus, mode or "proof", tuple(premises), tuple(lines))


def load(path) -> ProofScript:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _just_text(j) -> str:
    def b(bs):
        return "".join(f" {k}={fmt(v)}" for k, v in bs)

    if isinstance(j, Ax):
        return f"ax {j.scheme}{b(j.bindings)}"
    if isinstance(j, Thm):
        return f"thm {j.name}{b(j.bindings)}"
    if isinstance(j, Pre):
        return f"pre {j.index}"
    if isinstance(j, MP):
        return f"mp {j.minor} {j.major}"
    if isinstance(j, RuleApp):
        return "rule " + " ".join([j.rule] + [str(i) for i in j.lines])
    raise TypeError(j)


def dumps(script: ProofScript, header: str = "") -> str:
    out = []
    if header:
        out += [f"# {h}" if h else "#" for h in header.splitlines()]
    out.append(f"calculus {script.calculus}")
    out.append(f"mode {script.mode}")
    out += [f"premise {fmt(p)}" for p in script.premises]
    for n, line in enumerate(script.lines, 1):
        out.append(f"{n}: {fmt(line.formula)} ; {_just_text(line.just)}")
    return "\n".join(out) + "\n"
