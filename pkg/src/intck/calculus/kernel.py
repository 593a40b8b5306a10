"""Hilbert-style proof kernel.

A script is a numbered list of lines, each a formula with a justification.
Checking is purely syntactic: axiom lines are scheme instances under explicit
metavariable bindings, rule lines match the rule's premise and conclusion
patterns jointly, and corpus citations are substitution instances of items
that were themselves checked earlier.

In ``derivation`` mode the only inference rule is MP; lines are otherwise
premises, axiom instances or corpus theorems.  In ``derived_rule`` mode every
rule may consume every line.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping, Sequence

from ..syntax import (
    And, Box, BoxArrow, Dia, DiaArrow, Formula, Imp, Meta, Or, Var, atoms, fmt,
    in_dialect, metas, parse, substitute,
)

MODES = ("proof", "derivation", "derived_rule")
METAVARS = ("phi", "psi", "chi", "theta")
# Corpus items are stated over object atoms standing for the metavariables.
CORPUS_ATOM = {"phi": "p", "psi": "q", "chi": "r", "theta": "s"}


class KernelError(ValueError):
    """Malformed input to the kernel (unknown calculus, bad script structure)."""


# ---------------------------------------------------------------------------
# Schemes, rules, calculi
# ---------------------------------------------------------------------------


def pattern(text: str, dialect: str = "cond") -> Formula:
    """Parse ``text`` and turn the atoms phi/psi/chi/theta into metavariables."""
    f = parse(text, "modal" if dialect == "modal" else "cond")
    return substitute(f, {m: Meta(m) for m in METAVARS})


@dataclass(frozen=True)
class Scheme:
    id: str
    pattern: Formula
    dialect: str

    @property
    def metavars(self) -> frozenset[str]:
        return frozenset(metas(self.pattern))

    def instance(self, bindings: Mapping[str, Formula]) -> Formula:
        return substitute(self.pattern, bindings, metavars=True)


@dataclass(frozen=True)
class Rule:
    id: str
    premises: tuple[Formula, ...]
    conclusion: Formula

    @property
    def free(self) -> frozenset[str]:
        """Conclusion metavariables not fixed by any premise."""
        bound: set[str] = set()
        for p in self.premises:
            bound |= metas(p)
        return frozenset(metas(self.conclusion) - bound)


@dataclass(frozen=True)
class Calculus:
    id: str
    dialect: str
    axioms: tuple[Scheme, ...]
    rules: tuple[Rule, ...]

    def axiom(self, sid: str) -> Scheme | None:
        for s in self.axioms:
            if s.id == sid:
                return s
        return None

    def rule(self, rid: str) -> Rule | None:
        for r in self.rules:
            if r.id == rid:
                return r
        return None

    @property
    def primitives(self) -> frozenset[str]:
        return frozenset(s.id for s in self.axioms) | frozenset(r.id for r in self.rules)

    def admits(self, f: Formula) -> bool:
        return in_dialect(f, self.dialect)


A0_TEXT = (
    "phi -> (psi -> phi)",
    "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))",
    "phi & psi -> phi",
    "phi & psi -> psi",
    "phi -> (psi -> phi & psi)",
    "phi -> phi | psi",
    "psi -> phi | psi",
    "(phi -> chi) -> ((psi -> chi) -> (phi | psi -> chi))",
    "F -> phi",
    "phi -> T",
)

COND_AXIOMS = {
    "A1": "(phi => psi) & (phi => chi) <-> (phi => psi & chi)",
    "A2": "(phi ~> psi) & (phi => chi) -> (phi ~> psi & chi)",
    "A3": "(phi ~> psi | chi) <-> (phi ~> psi) | (phi ~> chi)",
    "A4": "((phi ~> psi) -> (phi => chi)) -> (phi => (psi -> chi))",
    "A5": "phi => T",
    "A6": "~(phi ~> F)",
    "Ax0": "phi | ~phi",
    "Ax1": "(phi ~> psi) <-> ~(phi => ~psi)",
}

MODAL_AXIOMS = {
    "a1": "[](phi -> psi) -> ([]phi -> []psi)",
    "a2": "[](phi -> psi) -> (<>phi -> <>psi)",
    "a3": "~<>F",
    "a4": "<>(phi | psi) -> <>phi | <>psi",
    "a5": "(<>phi -> []psi) -> [](phi -> psi)",
}

RULE_TEXT = {
    "MP": (("phi", "phi -> psi"), "psi"),
    "RAbox": (("phi <-> psi",), "(phi => chi) <-> (psi => chi)"),
    "RCbox": (("phi <-> psi",), "(chi => phi) <-> (chi => psi)"),
    "RAdia": (("phi <-> psi",), "(phi ~> chi) <-> (psi ~> chi)"),
    "RCdia": (("phi <-> psi",), "(chi ~> phi) <-> (chi ~> psi)"),
    "nec": (("phi",), "[]phi"),
}


def _a0(dialect: str) -> list[Scheme]:
    return [Scheme(f"A0.{i}", pattern(t, dialect), dialect) for i, t in enumerate(A0_TEXT, 1)]


def _rules(dialect: str, ids: Iterable[str]) -> tuple[Rule, ...]:
    out = []
    for rid in ids:
        prem, concl = RULE_TEXT[rid]
        out.append(Rule(rid, tuple(pattern(p, dialect) for p in prem), pattern(concl, dialect)))
    return tuple(out)


def _build_registry() -> dict[str, Calculus]:
    def cond(ids):
        return [Scheme(i, pattern(COND_AXIOMS[i]), "cond") for i in ids]

    intck_rules = ("MP", "RAbox", "RCbox", "RAdia", "RCdia")
    ck_rules = ("MP", "RAbox", "RCbox")
    cals = [
        Calculus("INT", "int", tuple(_a0("int")), _rules("int", ("MP",))),
        Calculus("INTCK", "cond", tuple(_a0("cond") + cond(["A1", "A2", "A3", "A4", "A5", "A6"])),
                 _rules("cond", intck_rules)),
        Calculus("INTCK_AX0", "cond",
                 tuple(_a0("cond") + cond(["A1", "A2", "A3", "A4", "A5", "A6", "Ax0"])),
                 _rules("cond", intck_rules)),
        Calculus("CK", "cond", tuple(_a0("cond") + cond(["A1", "A5", "Ax0", "Ax1"])),
                 _rules("cond", ck_rules)),
        Calculus("ICK_W", "cond_box",
                 tuple(_a0("cond_box") + [Scheme(i, pattern(COND_AXIOMS[i]), "cond_box") for i in ("A1", "A5")]),
                 _rules("cond_box", ck_rules)),
        Calculus("IK", "modal",
                 tuple(_a0("modal") + [Scheme(i, pattern(t, "modal"), "modal") for i, t in MODAL_AXIOMS.items()]),
                 _rules("modal", ("MP", "nec"))),
    ]
    return {c.id: c for c in cals}


_REGISTRY = _build_registry()


def registry() -> list[Calculus]:
    return list(_REGISTRY.values())


def get_calculus(cid: str) -> Calculus:
    try:
        return _REGISTRY[cid]
    except KeyError:
        raise KernelError(f"unknown calculus {cid!r}") from None


def parse_dialect(cid: str) -> str:
    return "modal" if get_calculus(cid).dialect == "modal" else "cond"


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------


def _match(pat: Formula, f: Formula, env: dict[str, Formula]) -> bool:
    tp = type(pat)
    if tp is Meta:
        bound = env.get(pat.name)
        if bound is None:
            env[pat.name] = f
            return True
        return bound == f
    if tp is not type(f):
        return False
    if tp in (And, Or, Imp, BoxArrow, DiaArrow):
        return _match(pat.left, f.left, env) and _match(pat.right, f.right, env)
    if tp in (Box, Dia):
        return _match(pat.body, f.body, env)
    return pat == f


def match(pat: Formula, f: Formula, env: Mapping[str, Formula] | None = None) -> dict[str, Formula] | None:
    """Binding σ with ``substitute(pat, σ) == f`` extending ``env``, or None."""
    out = dict(env or {})
    return out if _match(pat, f, out) else None


def match_scheme(scheme: Scheme, f: Formula) -> dict[str, Formula] | None:
    if not in_dialect(f, scheme.dialect):
        return None
    return match(scheme.pattern, f)


# ---------------------------------------------------------------------------
# Scripts
# ---------------------------------------------------------------------------

Bindings = tuple  # tuple of (name, Formula) pairs, sorted by name


def bindings(mapping: Mapping[str, Formula] | Iterable[tuple[str, Formula]]) -> Bindings:
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    return tuple(sorted(items, key=lambda kv: kv[0]))


@dataclass(frozen=True)
class Ax:
    scheme: str
    bindings: Bindings = ()


@dataclass(frozen=True)
class Pre:
    index: int  # 1-based premise number


@dataclass(frozen=True)
class MP:
    minor: int  # line of phi
    major: int  # line of phi -> psi


@dataclass(frozen=True)
class RuleApp:
    rule: str  # primitive rule id or corpus derived-rule name
    lines: tuple[int, ...]


@dataclass(frozen=True)
class Thm:
    name: str
    bindings: Bindings = ()


Justification = Ax | Pre | MP | RuleApp | Thm


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class ProofScript:
    calculus: str
    mode: str
    premises: tuple[Formula, ...] = ()
    lines: tuple[Line, ...] = ()

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class Verdict:
    ok: bool
    line: int | None = None
    reason: str = ""
    footprint: frozenset = frozenset()
    conclusion: Formula | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ACCEPT"
        where = f" at line {self.line}" if self.line is not None else ""
        return f"REJECT{where}: {self.reason}"


@dataclass(frozen=True)
class Item:
    """A checked corpus entry."""

    name: str
    script: ProofScript
    footprint: frozenset

    @property
    def calculus(self) -> str:
        return self.script.calculus

    @property
    def is_rule(self) -> bool:
        return self.script.mode == "derived_rule"

    @property
    def premises(self) -> tuple[Formula, ...]:
        return self.script.premises

    @property
    def conclusion(self) -> Formula:
        return self.script.conclusion

    @property
    def atoms(self) -> frozenset[str]:
        out = set(atoms(self.conclusion))
        for p in self.premises:
            out |= atoms(p)
        return frozenset(out)

    def as_rule(self) -> Rule:
        to_meta = {a: Meta(a) for a in self.atoms}
        return Rule(
            self.name,
            tuple(substitute(p, to_meta) for p in self.premises),
            substitute(self.conclusion, to_meta),
        )


class Corpus:
    """Checked items available for citation, keyed by ``CAL/name``."""

    def __init__(self, items: Iterable[Item] = ()):
        self.items: dict[str, Item] = {}
        for it in items:
            self.items[it.name] = it

    def add(self, item: Item) -> None:
        self.items[item.name] = item

    def get(self, name: str) -> Item | None:
        return self.items.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.items

    def __iter__(self):
        return iter(self.items.values())

    def __len__(self) -> int:
        return len(self.items)


_default_corpus: Callable[[], Corpus] | None = None


def set_default_corpus(loader: Callable[[], Corpus]) -> None:
    global _default_corpus
    _default_corpus = loader


def default_corpus() -> Corpus:
    if _default_corpus is None:
        return Corpus()
    return _default_corpus()


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


class _Reject(Exception):
    pass


def _citable(item: Item, cal: Calculus) -> str | None:
    """Reason why ``item`` may not be cited in ``cal``, or None."""
    missing = item.footprint - cal.primitives
    if missing:
        return f"{item.name} relies on {', '.join(sorted(missing))}, not primitive in {cal.id}"
    if not all(cal.admits(f) for f in item.premises + (item.conclusion,)):
        return f"{item.name} is outside the language of {cal.id}"
    return None


def _thm_instance(item: Item, binds: Bindings) -> Formula:
    names = {k for k, _ in binds}
    missing = item.atoms - names
    if missing:
        raise _Reject(f"binding omits {', '.join(sorted(missing))} for {item.name}")
    extra = names - item.atoms
    if extra:
        raise _Reject(f"{item.name} has no atom {', '.join(sorted(extra))}")
    return substitute(item.conclusion, dict(binds))


def _ref(i: int, n: int) -> int:
    if not 1 <= i < n:
        raise _Reject(f"line {i} is not an earlier line")
    return i - 1


def check(script: ProofScript, corpus: Corpus | None = None) -> Verdict:
    """Accept iff every line is correctly justified under the script's mode."""
    cal = get_calculus(script.calculus)
    if script.mode not in MODES:
        raise KernelError(f"unknown mode {script.mode!r}")
    if corpus is None:
        corpus = default_corpus()
    footprint: set[str] = set()
    if script.mode == "proof" and script.premises:
        return Verdict(False, None, "a proof declares no premises")
    for k, p in enumerate(script.premises, 1):
        if not cal.admits(p):
            return Verdict(False, None, f"premise {k} is outside the language of {cal.id}")
    if not script.lines:
        return Verdict(False, None, "empty script")
    forms: list[Formula] = []
    for n, line in enumerate(script.lines, 1):
        f, j = line.formula, line.just
        try:
            if not cal.admits(f):
                raise _Reject(f"formula is outside the language of {cal.id}")
            if isinstance(j, Ax):
                scheme = cal.axiom(j.scheme)
                if scheme is None:
                    raise _Reject(f"unknown axiom {j.scheme} in {cal.id}")
                names = {k for k, _ in j.bindings}
                missing = scheme.metavars - names
                if missing:
                    raise _Reject(f"binding omits {', '.join(sorted(missing))} for {j.scheme}")
                extra = names - scheme.metavars
                if extra:
                    raise _Reject(f"{j.scheme} has no metavariable {', '.join(sorted(extra))}")
                if scheme.instance(dict(j.bindings)) != f:
                    raise _Reject(f"not the instance of {j.scheme} under the given bindings")
                footprint.add(j.scheme)
            elif isinstance(j, Pre):
                if script.mode == "proof":
                    raise _Reject("premise lines are not allowed in a proof")
                if not 1 <= j.index <= len(script.premises):
                    raise _Reject(f"no premise {j.index}")
                if script.premises[j.index - 1] != f:
                    raise _Reject(f"formula differs from premise {j.index}")
            elif isinstance(j, MP):
                a, b = _ref(j.minor, n), _ref(j.major, n)
                if forms[b] != Imp(forms[a], f):
                    raise _Reject(f"line {j.major} is not line {j.minor} -> this formula")
                footprint.add("MP")
            elif isinstance(j, RuleApp):
                if script.mode == "derivation" and j.rule != "MP":
                    raise _Reject(f"rule {j.rule} is not allowed inside a derivation; only MP is")
                refs = [_ref(i, n) for i in j.lines]
                prim = cal.rule(j.rule)
                if prim is not None:
                    rule = prim
                    footprint.add(j.rule)
                else:
                    item = corpus.get(j.rule)
                    if item is None or not item.is_rule:
                        raise _Reject(f"unknown rule {j.rule} in {cal.id}")
                    why = _citable(item, cal)
                    if why:
                        raise _Reject(why)
                    rule = item.as_rule()
                    footprint |= item.footprint
                if len(refs) != len(rule.premises):
                    raise _Reject(f"{j.rule} takes {len(rule.premises)} premise line(s)")
                env: dict[str, Formula] | None = {}
                for pat, r in zip(rule.premises, refs):
                    env = match(pat, forms[r], env)
                    if env is None:
                        raise _Reject(f"line {r + 1} does not fit a premise of {j.rule}")
                if match(rule.conclusion, f, env) is None:
                    raise _Reject(f"formula is not the conclusion of {j.rule} for the cited lines")
            elif isinstance(j, Thm):
                item = corpus.get(j.name)
                if item is None or item.is_rule:
                    raise _Reject(f"unknown theorem {j.name}")
                why = _citable(item, cal)
                if why:
                    raise _Reject(why)
                if _thm_instance(item, j.bindings) != f:
                    raise _Reject(f"not the instance of {j.name} under the given bindings")
                footprint |= item.footprint
            else:
                raise _Reject(f"unknown justification {j!r}")
        except _Reject as e:
            return Verdict(False, n, str(e))
        forms.append(f)
    return Verdict(True, None, "", frozenset(footprint), forms[-1])


def statement(script: ProofScript) -> str:
    prem = ", ".join(fmt(p) for p in script.premises)
    sep = " |- " if script.mode == "derivation" else " ||- "
    concl = fmt(script.conclusion) if script.conclusion is not None else "?"
    return f"{prem}{sep}{concl}" if script.premises else concl


# ---------------------------------------------------------------------------
# Substitution and elaboration
# ---------------------------------------------------------------------------


def _sub_binds(binds: Bindings, sigma: Mapping[str, Formula]) -> Bindings:
    return tuple((k, substitute(v, sigma)) for k, v in binds)


def substitute_proof(script: ProofScript, sigma: Mapping[str, Formula]) -> ProofScript:
    """Apply a simultaneous atom substitution to every formula and binding."""
    lines = []
    for line in script.lines:
        j = line.just
        if isinstance(j, Ax):
            j = Ax(j.scheme, _sub_binds(j.bindings, sigma))
        elif isinstance(j, Thm):
            j = Thm(j.name, _sub_binds(j.bindings, sigma))
        lines.append(Line(substitute(line.formula, sigma), j))
    return replace(
        script,
        premises=tuple(substitute(p, sigma) for p in script.premises),
        lines=tuple(lines),
    )


def _splice(
    out: list[Line], inner: ProofScript, pre_map: Sequence[int], target: Formula
) -> None:
    """Append ``inner``'s lines to ``out``; its premise lines become references to ``pre_map``."""
    remap: dict[int, int] = {}
    for k, line in enumerate(inner.lines, 1):
        j = line.just
        if isinstance(j, Pre):
            remap[k] = pre_map[j.index - 1]
            continue
        if isinstance(j, MP):
            j = MP(remap[j.minor], remap[j.major])
        elif isinstance(j, RuleApp):
            j = RuleApp(j.rule, tuple(remap[i] for i in j.lines))
        out.append(Line(line.formula, j))
        remap[k] = len(out)
    last = inner.lines[-1]
    if isinstance(last.just, Pre) or last.formula != target:
        raise KernelError("cannot inline an item whose last line is a premise")


def _uses_rules(script: ProofScript) -> bool:
    return any(isinstance(line.just, RuleApp) for line in script.lines)


def elaborate(
    script: ProofScript,
    corpus: Corpus | None = None,
    keep: Callable[[Item], bool] = lambda item: False,
) -> ProofScript:
    """Inline corpus citations (theorems and derived rules) not selected by ``keep``.

    The script should already check; the result checks as well and its last
    line is unchanged.  Inside a derivation a theorem is inlined only when its
    expansion uses MP alone, since derivations admit no other rule.
    """
    if corpus is None:
        corpus = default_corpus()
    cache: dict[str, ProofScript] = {}

    def expanded(item: Item) -> ProofScript:
        s = cache.get(item.name)
        if s is None:
            s = cache[item.name] = elaborate(item.script, corpus, keep)
        return s

    out: list[Line] = []
    remap: dict[int, int] = {}
    forms = [l.formula for l in script.lines]
    for n, line in enumerate(script.lines, 1):
        j = line.just
        if isinstance(j, MP):
            out.append(Line(line.formula, MP(remap[j.minor], remap[j.major])))
        elif isinstance(j, Thm):
            item = corpus.get(j.name)
            if item is None or keep(item) or (script.mode == "derivation" and _uses_rules(expanded(item))):
                out.append(line)
            else:
                inner = substitute_proof(expanded(item), dict(j.bindings))
                _splice(out, inner, (), line.formula)
        elif isinstance(j, RuleApp):
            item = corpus.get(j.rule) if get_calculus(script.calculus).rule(j.rule) is None else None
            if item is None or keep(item):
                out.append(Line(line.formula, RuleApp(j.rule, tuple(remap[i] for i in j.lines))))
            else:
                rule = item.as_rule()
                env: dict[str, Formula] | None = {}
                for pat, i in zip(rule.premises, j.lines):
                    env = match(pat, forms[i - 1], env)
                env = match(rule.conclusion, line.formula, env)
                if env is None:
                    raise KernelError(f"line {n} does not check; elaborate a checked script")
                sigma = {a: env[a] for a in item.atoms}
                inner = substitute_proof(expanded(item), sigma)
                _splice(out, inner, [remap[i] for i in j.lines], line.formula)
        else:
            out.append(line)
        remap[n] = len(out)
    return replace(script, lines=tuple(out))


def renumber(lines: Sequence[Line], keep_last: int | None = None) -> tuple[Line, ...]:
    """Drop lines not needed for the last (or ``keep_last``) line and renumber."""
    if not lines:
        return ()
    target = len(lines) if keep_last is None else keep_last
    need = {target}
    for k in range(target, 0, -1):
        if k not in need:
            continue
        j = lines[k - 1].just
        if isinstance(j, MP):
            need |= {j.minor, j.major}
        elif isinstance(j, RuleApp):
            need |= set(j.lines)
    order = sorted(need)
    new_no = {old: i for i, old in enumerate(order, 1)}
    out = []
    for old in order:
        line = lines[old - 1]
        j = line.just
        if isinstance(j, MP):
            j = MP(new_no[j.minor], new_no[j.major])
        elif isinstance(j, RuleApp):
            j = RuleApp(j.rule, tuple(new_no[i] for i in j.lines))
        out.append(Line(line.formula, j))
    return tuple(out)
