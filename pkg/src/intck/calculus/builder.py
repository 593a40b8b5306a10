"""Programmatic construction of proof scripts.

``ProofBuilder`` appends justified lines and supports temporary hypotheses:
``hyp(A)`` opens one, and ``discharge(h, i)`` turns line ``i`` into a proof of
``A -> formula(i)`` by the usual deduction-theorem transformation (only
A0.1, A0.2 and MP are needed).  Lines depending on an open hypothesis may only
be combined by MP.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import Formula, Imp, fmt, parse
from .kernel import (
    MP, Ax, Corpus, KernelError, Line, Pre, ProofScript, RuleApp, Thm, bindings, check,
    get_calculus, match, parse_dialect, renumber, substitute,
)


@dataclass(frozen=True)
class _Hyp:
    formula: Formula


class ProofBuilder:
    def __init__(self, calculus: str, mode: str = "proof", premises=(), corpus: Corpus | None = None):
        self.cal = get_calculus(calculus)
        self.dialect = parse_dialect(calculus)
        self.mode = mode
        self.premises = tuple(self.f(p) for p in premises)
        self.corpus = corpus if corpus is not None else Corpus()
        self.lines: list[Line] = []
        self.deps: list[frozenset[int]] = []
        self._dt_cache: dict[tuple[int, int], int] = {}

    # -- helpers ---------------------------------------------------------
    def f(self, x) -> Formula:
        return parse(x, self.dialect) if isinstance(x, str) else x

    def formula(self, i: int) -> Formula:
        return self.lines[i - 1].formula

    def _add(self, f: Formula, just, deps=frozenset()) -> int:
        self.lines.append(Line(f, just))
        self.deps.append(frozenset(deps))
        return len(self.lines)

    def _dep(self, *ls: int) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for i in ls:
            out |= self.deps[i - 1]
        return out

    # -- primitive steps ---------------------------------------------------
    def ax(self, scheme: str, **mv) -> int:
        s = self.cal.axiom(scheme)
        if s is None:
            raise KernelError(f"no axiom {scheme} in {self.cal.id}")
        binds = {k: self.f(v) for k, v in mv.items()}
        return self._add(s.instance(binds), Ax(scheme, bindings(binds)))

    def pre(self, k: int) -> int:
        return self._add(self.premises[k - 1], Pre(k))

    def thm(self, name: str, **bind) -> int:
        item = self.corpus.get(name)
        if item is None or item.is_rule:
            raise KernelError(f"unknown theorem {name}")
        binds = {a: self.f(bind.get(a, a)) for a in item.atoms}
        f = substitute(item.conclusion, binds)
        return self._add(f, Thm(name, bindings(binds)))

    def mp(self, minor: int, major: int) -> int:
        a, b = self.formula(minor), self.formula(major)
        if not (isinstance(b, Imp) and b.left == a):
            raise KernelError(f"mp: {fmt(b)} does not start with {fmt(a)}")
        return self._add(b.right, MP(minor, major), self._dep(minor, major))

    def rule(self, rid: str, *ls: int, target: Formula | None = None, **free) -> int:
        """Apply rule ``rid`` to lines ``ls``.

        Conclusion metavariables not fixed by the premises come from ``free``
        or from matching ``target``.
        """
        r = self.cal.rule(rid)
        if r is None:
            item = self.corpus.get(rid)
            if item is None or not item.is_rule:
                raise KernelError(f"unknown rule {rid}")
            r = item.as_rule()
        if any(self.deps[i - 1] for i in ls) and rid != "MP":
            raise KernelError(f"{rid} applied to a hypothesis-dependent line")
        env: dict | None = {k: self.f(v) for k, v in free.items()}
        for pat, i in zip(r.premises, ls):
            env = match(pat, self.formula(i), env)
            if env is None:
                raise KernelError(f"{rid}: line {i} does not fit")
        if target is not None:
            env = match(r.conclusion, self.f(target), env)
            if env is None:
                raise KernelError(f"{rid} does not conclude {fmt(self.f(target))}")
        missing = r.free - set(env)
        if missing:
            raise KernelError(f"{rid}: supply {', '.join(sorted(missing))}")
        concl = substitute(r.conclusion, env, metavars=True)
        return self._add(concl, RuleApp(rid, tuple(ls)), self._dep(*ls))

    def hyp(self, f) -> int:
        n = len(self.lines) + 1
        self.lines.append(Line(self.f(f), _Hyp(self.f(f))))
        self.deps.append(frozenset({n}))
        return n

    # -- deduction theorem ----------------------------------------------------
    def discharge(self, h: int, i: int) -> int:
        """Line proving ``formula(h) -> formula(i)``, independent of hypothesis ``h``."""
        key = (h, i)
        if key in self._dt_cache:
            return self._dt_cache[key]
        a = self.formula(h)
        fi = self.formula(i)
        j = self.lines[i - 1].just
        if h not in self.deps[i - 1]:
            k = self.ax("A0.1", phi=fi, psi=a)
            out = self.mp(i, k)
        elif i == h:
            s1 = self.ax("A0.1", phi=a, psi=Imp(a, a))
            s2 = self.ax("A0.2", phi=a, psi=Imp(a, a), chi=a)
            s3 = self.mp(s1, s2)
            s4 = self.ax("A0.1", phi=a, psi=a)
            out = self.mp(s4, s3)
        elif isinstance(j, MP) and j.minor == h and h not in self.deps[j.major - 1]:
            out = j.major
        elif isinstance(j, MP):
            fj = self.formula(j.minor)
            x = self.discharge(h, j.minor)
            y = self.discharge(h, j.major)
            k = self.ax("A0.2", phi=a, psi=fj, chi=fi)
            z = self.mp(y, k)
            out = self.mp(x, z)
        else:
            raise KernelError(f"cannot discharge through line {i}")
        self._dt_cache[key] = out
        return out

    # -- common derived steps ------------------------------------------------
    def conj(self, i: int, j: int) -> int:
        k = self.ax("A0.5", phi=self.formula(i), psi=self.formula(j))
        return self.mp(j, self.mp(i, k))

    def left(self, i: int) -> int:
        f = self.formula(i)
        return self.mp(i, self.ax("A0.3", phi=f.left, psi=f.right))

    def right(self, i: int) -> int:
        f = self.formula(i)
        return self.mp(i, self.ax("A0.4", phi=f.left, psi=f.right))

    def ltr(self, iff_line: int, minor: int) -> int:
        """From ``a <-> b`` and ``a`` infer ``b``."""
        return self.mp(minor, self.left(iff_line))

    def rtl(self, iff_line: int, minor: int) -> int:
        return self.mp(minor, self.right(iff_line))

    def use(self, name: str, *minors: int, **bind) -> int:
        """Cite a theorem of the form ``a1 -> (a2 -> ... -> c)`` and detach ``minors``."""
        k = self.thm(name, **bind)
        for m in minors:
            k = self.mp(m, k)
        return k

    def falso(self, i: int, target) -> int:
        """From a line proving ``F`` infer ``target``."""
        return self.mp(i, self.ax("A0.9", phi=self.f(target)))

    # -- output ----------------------------------------------------------------
    def build(self, last: int | None = None) -> ProofScript:
        last = len(self.lines) if last is None else last
        if self.deps[last - 1]:
            raise KernelError("conclusion depends on an open hypothesis")
        lines = renumber(self.lines, last)
        for line in lines:
            if isinstance(line.just, _Hyp):
                raise KernelError("open hypothesis reached the output")
        script = ProofScript(self.cal.id, self.mode, self.premises, lines)
        verdict = check(script, self.corpus)
        if not verdict.ok:
            raise KernelError(f"built script does not check: {verdict}")
        return script
