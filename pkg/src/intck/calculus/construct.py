"""Source of the bundled proof corpus.

Every item is produced by a ``ProofBuilder`` program and written to
``data/<CAL>/<name>.prf`` by ``write_corpus``.  The files are the artifact
that ``verify_corpus`` checks; these programs only make them reproducible.
Statements use the atoms p, q, r, s in place of metavariables.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from .builder import ProofBuilder as B
from .kernel import Corpus, Item, KernelError, ProofScript, check
from .scripts import dumps

DATA = Path(__file__).with_name("data")

_ITEMS: list[tuple[str, str, Callable[[Corpus], ProofScript]]] = []


def item(name: str, summary: str):
    def deco(fn):
        _ITEMS.append((name, summary, fn))
        return fn

    return deco


def _dt(b: B, *hyps_and_last):
    """Discharge hypotheses innermost first: ``_dt(b, h1, h2, line)``."""
    *hyps, last = hyps_and_last
    for h in reversed(hyps):
        last = b.discharge(h, last)
    return last


# ---------------------------------------------------------------------------
# Intuitionistic propositional lemmas
# ---------------------------------------------------------------------------


@item("INT/id", "p -> p")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p")
    return b.build(_dt(b, h, h))


@item("INT/top", "T is provable")
def _(c):
    b = B("INT", corpus=c)
    ff = b.ax("A0.9", phi="F")
    b.mp(ff, b.ax("A0.10", phi="F -> F"))
    return b.build()


@item("INT/syl", "(p -> q) -> ((q -> r) -> (p -> r))")
def _(c):
    b = B("INT", corpus=c)
    h1, h2, h3 = b.hyp("p -> q"), b.hyp("q -> r"), b.hyp("p")
    return b.build(_dt(b, h1, h2, h3, b.mp(b.mp(h3, h1), h2)))


@item("INT/mp_flip", "p -> ((p -> q) -> q)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("p"), b.hyp("p -> q")
    return b.build(_dt(b, h1, h2, b.mp(h1, h2)))


@item("INT/mp_conj", "p & (p -> q) -> q")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p & (p -> q)")
    return b.build(_dt(b, h, b.mp(b.left(h), b.right(h))))


@item("INT/curry", "(p & q -> r) -> (p -> (q -> r))")
def _(c):
    b = B("INT", corpus=c)
    h1, h2, h3 = b.hyp("p & q -> r"), b.hyp("p"), b.hyp("q")
    return b.build(_dt(b, h1, h2, h3, b.mp(b.conj(h2, h3), h1)))


@item("INT/uncurry", "(p -> (q -> r)) -> (p & q -> r)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("p -> (q -> r)"), b.hyp("p & q")
    return b.build(_dt(b, h1, h2, b.mp(b.right(h2), b.mp(b.left(h2), h1))))


@item("INT/pair_flip", "q -> (p -> p & q)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("q"), b.hyp("p")
    return b.build(_dt(b, h1, h2, b.conj(h2, h1)))


@item("INT/iff_refl", "p <-> p")
def _(c):
    b = B("INT", corpus=c)
    i = b.thm("INT/id")
    b.conj(i, i)
    return b.build()


@item("INT/iff_sym", "(p <-> q) -> (q <-> p)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p <-> q")
    return b.build(_dt(b, h, b.conj(b.right(h), b.left(h))))


@item("INT/iff_trans", "(p <-> q) -> ((q <-> r) -> (p <-> r))")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("p <-> q"), b.hyp("q <-> r")
    x = b.hyp("p")
    fwd = _dt(b, x, b.ltr(h2, b.ltr(h1, x)))
    y = b.hyp("r")
    bwd = _dt(b, y, b.rtl(h1, b.rtl(h2, y)))
    return b.build(_dt(b, h1, h2, b.conj(fwd, bwd)))


@item("INT/iff_true", "p -> (p <-> T)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p")
    fwd = b.ax("A0.10", phi="p")
    bwd = _dt(b, b.hyp("T"), h)
    return b.build(_dt(b, h, b.conj(fwd, bwd)))


@item("INT/top_imp", "(T -> p) -> p")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("T -> p")
    return b.build(_dt(b, h, b.mp(b.thm("INT/top"), h)))


@item("INT/and_absorb", "(p -> q) -> (p & q <-> p)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p -> q")
    fwd = b.ax("A0.3", phi="p", psi="q")
    x = b.hyp("p")
    bwd = _dt(b, x, b.conj(x, b.mp(x, h)))
    return b.build(_dt(b, h, b.conj(fwd, bwd)))


@item("INT/or_absorb", "(p -> q) -> (p | q <-> q)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p -> q")
    cases = b.ax("A0.8", phi="p", psi="q", chi="q")
    fwd = b.mp(b.thm("INT/id", p="q"), b.mp(h, cases))
    bwd = b.ax("A0.7", phi="p", psi="q")
    return b.build(_dt(b, h, b.conj(fwd, bwd)))


@item("INT/contrapose", "(p -> q) -> (~q -> ~p)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2, h3 = b.hyp("p -> q"), b.hyp("~q"), b.hyp("p")
    return b.build(_dt(b, h1, h2, h3, b.mp(b.mp(h3, h1), h2)))


@item("INT/neg_iff", "(p <-> q) -> (~p <-> ~q)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("p <-> q")
    fwd = b.use("INT/contrapose", b.right(h), p="q", q="p")
    bwd = b.use("INT/contrapose", b.left(h), p="p", q="q")
    return b.build(_dt(b, h, b.conj(fwd, bwd)))


@item("INT/dn_intro", "p -> ~~p")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("p"), b.hyp("~p")
    return b.build(_dt(b, h1, h2, b.mp(h1, h2)))


@item("INT/dne_of_lem", "p | ~p -> (~~p -> p)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("~~p")
    pos = b.thm("INT/id")
    n = b.hyp("~p")
    neg = _dt(b, n, b.falso(b.mp(n, h), "p"))
    cases = b.mp(neg, b.mp(pos, b.ax("A0.8", phi="p", psi="~p", chi="p")))
    # cases : p | ~p -> p, under ~~p; reorder the hypotheses
    inner = _dt(b, h, cases)
    l = b.hyp("p | ~p")
    m = b.hyp("~~p")
    return b.build(_dt(b, l, m, b.mp(l, b.mp(m, inner))))


@item("INT/neg_and_elim", "r -> (~(q & r) -> ~q)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2, h3 = b.hyp("r"), b.hyp("~(q & r)"), b.hyp("q")
    return b.build(_dt(b, h1, h2, h3, b.mp(b.conj(h3, h1), h2)))


@item("INT/neg_imp", "~q -> (q -> r)")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("~q"), b.hyp("q")
    return b.build(_dt(b, h1, h2, b.falso(b.mp(h2, h1), "r")))


@item("INT/neg_bot_iff", "~F <-> T")
def _(c):
    b = B("INT", corpus=c)
    fwd = b.ax("A0.10", phi="~F")
    bwd = _dt(b, b.hyp("T"), b.ax("A0.9", phi="F"))
    b.conj(fwd, bwd)
    return b.build()


@item("INT/demorgan_or", "~(q | r) <-> ~q & ~r")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("~(q | r)")
    a = b.hyp("q")
    nq = _dt(b, a, b.mp(b.mp(a, b.ax("A0.6", phi="q", psi="r")), h))
    a2 = b.hyp("r")
    nr = _dt(b, a2, b.mp(b.mp(a2, b.ax("A0.7", phi="q", psi="r")), h))
    fwd = _dt(b, h, b.conj(nq, nr))
    g = b.hyp("~q & ~r")
    cases = b.ax("A0.8", phi="q", psi="r", chi="F")
    bwd = _dt(b, g, b.mp(b.right(g), b.mp(b.left(g), cases)))
    b.conj(fwd, bwd)
    return b.build()


@item("INT/demorgan_rtl", "~p | ~q -> ~(p & q)")
def _(c):
    b = B("INT", corpus=c)
    x = b.hyp("~p")
    y = b.hyp("p & q")
    l1 = _dt(b, x, y, b.mp(b.left(y), x))
    x2 = b.hyp("~q")
    y2 = b.hyp("p & q")
    l2 = _dt(b, x2, y2, b.mp(b.right(y2), x2))
    cases = b.ax("A0.8", phi="~p", psi="~q", chi="~(p & q)")
    b.mp(l2, b.mp(l1, cases))
    return b.build()


@item("INT/demorgan_lem", "p | ~p -> (~(p & q) -> ~p | ~q)")
def _(c):
    b = B("INT", corpus=c)
    h = b.hyp("~(p & q)")
    x = b.hyp("p")
    y = b.hyp("q")
    nq = _dt(b, y, b.mp(b.conj(x, y), h))
    pos = _dt(b, x, b.mp(nq, b.ax("A0.7", phi="~p", psi="~q")))
    neg = b.ax("A0.6", phi="~p", psi="~q")
    cases = b.ax("A0.8", phi="p", psi="~p", chi="~p | ~q")
    inner = _dt(b, h, b.mp(neg, b.mp(pos, cases)))
    l = b.hyp("p | ~p")
    m = b.hyp("~(p & q)")
    return b.build(_dt(b, l, m, b.mp(l, b.mp(m, inner))))


@item("INT/or_cong", "(p <-> q) -> ((r <-> s) -> (p | r <-> q | s))")
def _(c):
    b = B("INT", corpus=c)
    h1, h2 = b.hyp("p <-> q"), b.hyp("r <-> s")

    def half(a, b_, c_, d_, i1, i2):
        # (a -> b) and (c -> d) give a | c -> b | d
        x = b.hyp(a)
        l1 = _dt(b, x, b.mp(b.mp(x, i1), b.ax("A0.6", phi=b_, psi=d_)))
        y = b.hyp(c_)
        l2 = _dt(b, y, b.mp(b.mp(y, i2), b.ax("A0.7", phi=b_, psi=d_)))
        return b.mp(l2, b.mp(l1, b.ax("A0.8", phi=a, psi=c_, chi=f"{b_} | {d_}")))

    fwd = half("p", "q", "r", "s", b.left(h1), b.left(h2))
    bwd = half("q", "p", "s", "r", b.right(h1), b.right(h2))
    return b.build(_dt(b, h1, h2, b.conj(fwd, bwd)))


# ---------------------------------------------------------------------------
# INTCK: derived rules and theorems
# ---------------------------------------------------------------------------


@item("INTCK/Nec", "from p infer q => p")
def _(c):
    b = B("INTCK", "derived_rule", ["p"], corpus=c)
    pt = b.use("INT/iff_true", b.pre(1))
    cong = b.rule("RCbox", pt, chi="q")
    b.rtl(cong, b.ax("A5", phi="q"))
    return b.build()


@item("INTCK/RMbox", "from p -> q infer (r => p) -> (r => q)")
def _(c):
    b = B("INTCK", "derived_rule", ["p -> q"], corpus=c)
    absorb = b.use("INT/and_absorb", b.pre(1))
    cong = b.rule("RCbox", absorb, chi="r")
    a1 = b.ax("A1", phi="r", psi="p", chi="q")
    h = b.hyp("r => p")
    both = b.rtl(a1, b.rtl(cong, h))
    return b.build(_dt(b, h, b.right(both)))


@item("INTCK/RMdia", "from p -> q infer (r ~> p) -> (r ~> q)")
def _(c):
    b = B("INTCK", "derived_rule", ["p -> q"], corpus=c)
    absorb = b.use("INT/or_absorb", b.pre(1))
    cong = b.rule("RCdia", absorb, chi="r")
    a3 = b.ax("A3", phi="r", psi="p", chi="q")
    h = b.hyp("r ~> p")
    either = b.mp(h, b.ax("A0.6", phi="r ~> p", psi="r ~> q"))
    return b.build(_dt(b, h, b.ltr(cong, b.rtl(a3, either))))


@item("INTCK/T1", "(p => (q -> r)) -> ((p => q) -> (p => r))")
def _(c):
    b = B("INTCK", corpus=c)
    mono = b.rule("INTCK/RMbox", b.thm("INT/mp_conj", p="q", q="r"), r="p")
    a1 = b.ax("A1", phi="p", psi="q", chi="q -> r")
    h1, h2 = b.hyp("p => (q -> r)"), b.hyp("p => q")
    return b.build(_dt(b, h1, h2, b.mp(b.ltr(a1, b.conj(h2, h1)), mono)))


@item("INTCK/T2", "(p => (q -> r)) -> ((p ~> q) -> (p ~> r))")
def _(c):
    b = B("INTCK", corpus=c)
    mono = b.rule("INTCK/RMdia", b.thm("INT/mp_conj", p="q", q="r"), r="p")
    a2 = b.ax("A2", phi="p", psi="q", chi="q -> r")
    h1, h2 = b.hyp("p => (q -> r)"), b.hyp("p ~> q")
    return b.build(_dt(b, h1, h2, b.mp(b.mp(b.conj(h2, h1), a2), mono)))


@item("INTCK/T3", "(p => q) -> ((p ~> (q -> r)) -> (p ~> r))")
def _(c):
    b = B("INTCK", corpus=c)
    mono = b.rule("INTCK/RMbox", b.thm("INT/mp_flip", p="q", q="r"), r="p")
    t2 = b.thm("INTCK/T2", p="p", q="q -> r", r="r")
    h = b.hyp("p => q")
    return b.build(_dt(b, h, b.mp(b.mp(h, mono), t2)))


@item("INTCK/T4_rtl", "(p => ~q) -> ~(p ~> q)")
def _(c):
    b = B("INTCK", corpus=c)
    t2 = b.thm("INTCK/T2", p="p", q="q", r="F")
    a6 = b.ax("A6", phi="p")
    h1, h2 = b.hyp("p => ~q"), b.hyp("p ~> q")
    return b.build(_dt(b, h1, h2, b.mp(b.mp(h2, b.mp(h1, t2)), a6)))


@item("INTCK/T4_ltr", "~(p ~> q) -> (p => ~q)")
def _(c):
    b = B("INTCK", corpus=c)
    a4 = b.ax("A4", phi="p", psi="q", chi="F")
    h1, h2 = b.hyp("~(p ~> q)"), b.hyp("p ~> q")
    step = _dt(b, h2, b.falso(b.mp(h2, h1), "p => F"))
    return b.build(_dt(b, h1, b.mp(step, a4)))


@item("INTCK/T4", "~(p ~> q) <-> (p => ~q)")
def _(c):
    b = B("INTCK", corpus=c)
    b.conj(b.thm("INTCK/T4_ltr"), b.thm("INTCK/T4_rtl"))
    return b.build()


@item("INTCK/ick_nn", "~~(T => F) -> (T => F)")
def _(c):
    b = B("INTCK", corpus=c)
    box_mono = b.rule("INTCK/RMbox", b.ax("A0.9", phi="~T"), r="T")
    t4 = b.thm("INTCK/T4_rtl", p="T", q="T")
    h = b.hyp("~~(T => F)")
    g = b.hyp("T ~> T")
    k = b.hyp("T => F")
    not_box = _dt(b, k, b.mp(g, b.mp(b.mp(k, box_mono), t4)))
    dia_box = _dt(b, g, b.falso(b.mp(not_box, h), "T => F"))
    a4 = b.ax("A4", phi="T", psi="T", chi="F")
    drop = b.rule("INTCK/RMbox", b.thm("INT/top_imp", p="F"), r="T")
    return b.build(_dt(b, h, b.mp(b.mp(dia_box, a4), drop)))


# ---------------------------------------------------------------------------
# CK: the INTCK-only principles recovered classically
# ---------------------------------------------------------------------------


@item("CK/A2", "(p ~> q) & (p => r) -> (p ~> q & r)")
def _(c):
    b = B("CK", corpus=c)
    mono = b.rule("INTCK/RMbox", b.thm("INT/neg_and_elim"), r="p")
    t1 = b.thm("INTCK/T1", p="p", q="~(q & r)", r="~q")
    dq = b.ax("Ax1", phi="p", psi="q")
    dqr = b.ax("Ax1", phi="p", psi="q & r")
    h = b.hyp("(p ~> q) & (p => r)")
    not_box_nq = b.ltr(dq, b.left(h))
    k = b.mp(b.mp(b.right(h), mono), t1)
    x = b.hyp("p => ~(q & r)")
    not_box_nqr = _dt(b, x, b.mp(b.mp(x, k), not_box_nq))
    return b.build(_dt(b, h, b.rtl(dqr, not_box_nqr)))


@item("CK/A4", "((p ~> q) -> (p => r)) -> (p => (q -> r))")
def _(c):
    b = B("CK", corpus=c)
    from_neg = b.rule("INTCK/RMbox", b.thm("INT/neg_imp"), r="p")
    from_r = b.rule("INTCK/RMbox", b.ax("A0.1", phi="r", psi="q"), r="p")
    dual = b.ax("Ax1", phi="p", psi="q")
    lem = b.ax("Ax0", phi="p => ~q")
    h = b.hyp("(p ~> q) -> (p => r)")
    n = b.hyp("~(p => ~q)")
    other = _dt(b, n, b.mp(b.mp(b.rtl(dual, n), h), from_r))
    cases = b.ax("A0.8", phi="p => ~q", psi="~(p => ~q)", chi="p => (q -> r)")
    return b.build(_dt(b, h, b.mp(lem, b.mp(other, b.mp(from_neg, cases)))))


def _chain(b: B, *iffs: int) -> int:
    out = iffs[0]
    for nxt in iffs[1:]:
        f, g = b.formula(out), b.formula(nxt)
        out = b.use("INT/iff_trans", out, nxt, p=f.left.left, q=f.left.right, r=g.left.right)
    return out


def _sym(b: B, i: int) -> int:
    f = b.formula(i)
    return b.use("INT/iff_sym", i, p=f.left.left, q=f.left.right)


@item("CK/RAdia", "from p <-> q infer (p ~> r) <-> (q ~> r)")
def _(c):
    b = B("CK", "derived_rule", ["p <-> q"], corpus=c)
    box = b.rule("RAbox", b.pre(1), chi="~r")
    neg = b.use("INT/neg_iff", box, p="p => ~r", q="q => ~r")
    _chain(b, b.ax("Ax1", phi="p", psi="r"), neg, _sym(b, b.ax("Ax1", phi="q", psi="r")))
    return b.build()


@item("CK/RCdia", "from p <-> q infer (r ~> p) <-> (r ~> q)")
def _(c):
    b = B("CK", "derived_rule", ["p <-> q"], corpus=c)
    negs = b.use("INT/neg_iff", b.pre(1), p="p", q="q")
    box = b.rule("RCbox", negs, chi="r")
    neg = b.use("INT/neg_iff", box, p="r => ~p", q="r => ~q")
    _chain(b, b.ax("Ax1", phi="r", psi="p"), neg, _sym(b, b.ax("Ax1", phi="r", psi="q")))
    return b.build()


@item("CK/A3", "(p ~> q | r) <-> (p ~> q) | (p ~> r)")
def _(c):
    b = B("CK", corpus=c)
    box = b.rule("RCbox", b.thm("INT/demorgan_or"), chi="p")
    a1 = b.ax("A1", phi="p", psi="~q", chi="~r")
    boxes = _chain(b, box, _sym(b, a1))
    negs = b.use("INT/neg_iff", boxes, p="p => ~(q | r)", q="(p => ~q) & (p => ~r)")
    x, y = "p => ~q", "p => ~r"
    fwd = b.use("INT/demorgan_lem", b.ax("Ax0", phi=x), p=x, q=y)
    bwd = b.thm("INT/demorgan_rtl", p=x, q=y)
    dm = b.conj(fwd, bwd)
    ors = b.use(
        "INT/or_cong",
        _sym(b, b.ax("Ax1", phi="p", psi="q")),
        _sym(b, b.ax("Ax1", phi="p", psi="r")),
        p="~(p => ~q)", q="p ~> q", r="~(p => ~r)", s="p ~> r",
    )
    _chain(b, b.ax("Ax1", phi="p", psi="q | r"), negs, dm, ors)
    return b.build()


@item("CK/A6", "~(p ~> F)")
def _(c):
    b = B("CK", corpus=c)
    cong = b.rule("RCbox", b.thm("INT/neg_bot_iff"), chi="p")
    box = b.rtl(cong, b.ax("A5", phi="p"))
    dual = b.ax("Ax1", phi="p", psi="F")
    h = b.hyp("p ~> F")
    return b.build(_dt(b, h, b.mp(box, b.ltr(dual, h))))


# ---------------------------------------------------------------------------
# INTCK + Ax0: the duality axiom
# ---------------------------------------------------------------------------


@item("INTCK_AX0/Ax1", "(p ~> q) <-> ~(p => ~q)")
def _(c):
    b = B("INTCK_AX0", corpus=c)
    negs = b.use("INT/neg_iff", b.thm("INTCK/T4"), p="~(p ~> q)", q="p => ~q")
    d = "p ~> q"
    dne = b.use("INT/dne_of_lem", b.ax("Ax0", phi=d), p=d)
    dn = b.conj(b.thm("INT/dn_intro", p=d), dne)
    _chain(b, dn, negs)
    return b.build()


# ---------------------------------------------------------------------------
# IK
# ---------------------------------------------------------------------------


@item("IK/r1", "from p -> q infer []p -> []q")
def _(c):
    b = B("IK", "derived_rule", ["p -> q"], corpus=c)
    b.mp(b.rule("nec", b.pre(1)), b.ax("a1", phi="p", psi="q"))
    return b.build()


@item("IK/r2", "from p -> q infer <>p -> <>q")
def _(c):
    b = B("IK", "derived_rule", ["p -> q"], corpus=c)
    b.mp(b.rule("nec", b.pre(1)), b.ax("a2", phi="p", psi="q"))
    return b.build()


@item("IK/r3", "from p <-> q infer []p <-> []q")
def _(c):
    b = B("IK", "derived_rule", ["p <-> q"], corpus=c)
    h = b.pre(1)
    b.conj(b.rule("IK/r1", b.left(h)), b.rule("IK/r1", b.right(h)))
    return b.build()


@item("IK/r4", "from p <-> q infer <>p <-> <>q")
def _(c):
    b = B("IK", "derived_rule", ["p <-> q"], corpus=c)
    h = b.pre(1)
    b.conj(b.rule("IK/r2", b.left(h)), b.rule("IK/r2", b.right(h)))
    return b.build()


@item("IK/t1", "[]p & []q <-> [](p & q)")
def _(c):
    b = B("IK", corpus=c)
    pair = b.rule("IK/r1", b.ax("A0.5", phi="p", psi="q"))
    dist = b.ax("a1", phi="q", psi="p & q")
    h = b.hyp("[]p & []q")
    fwd = _dt(b, h, b.mp(b.right(h), b.mp(b.mp(b.left(h), pair), dist)))
    bp = b.rule("IK/r1", b.ax("A0.3", phi="p", psi="q"))
    bq = b.rule("IK/r1", b.ax("A0.4", phi="p", psi="q"))
    g = b.hyp("[](p & q)")
    bwd = _dt(b, g, b.conj(b.mp(g, bp), b.mp(g, bq)))
    b.conj(fwd, bwd)
    return b.build()


@item("IK/t2", "<>p & []q -> <>(p & q)")
def _(c):
    b = B("IK", corpus=c)
    pair = b.rule("IK/r1", b.thm("INT/pair_flip"))
    a2 = b.ax("a2", phi="p", psi="p & q")
    h = b.hyp("<>p & []q")
    return b.build(_dt(b, h, b.mp(b.left(h), b.mp(b.mp(b.right(h), pair), a2))))


@item("IK/t3", "<>(p | q) <-> <>p | <>q")
def _(c):
    b = B("IK", corpus=c)
    fwd = b.ax("a4", phi="p", psi="q")
    l1 = b.rule("IK/r2", b.ax("A0.6", phi="p", psi="q"))
    l2 = b.rule("IK/r2", b.ax("A0.7", phi="p", psi="q"))
    bwd = b.mp(l2, b.mp(l1, b.ax("A0.8", phi="<>p", psi="<>q", chi="<>(p | q)")))
    b.conj(fwd, bwd)
    return b.build()


@item("IK/t4", "[]T")
def _(c):
    b = B("IK", corpus=c)
    b.rule("nec", b.thm("INT/top"))
    return b.build()


# ---------------------------------------------------------------------------


def build_all() -> list[tuple[str, str, ProofScript]]:
    """Run every construction in order, checking each against the growing corpus."""
    corpus = Corpus()
    out = []
    for name, summary, fn in _ITEMS:
        script = fn(corpus)
        v = check(script, corpus)
        if not v.ok:
            raise KernelError(f"{name}: {v}")
        if name.split("/")[0] != script.calculus:
            raise KernelError(f"{name}: stored under the wrong calculus")
        corpus.add(Item(name, script, v.footprint))
        out.append((name, summary, script))
    return out


def render(name: str, summary: str, script: ProofScript) -> str:
    return dumps(script, header=f"{name}: {summary}\nGenerated by intck.calculus.construct.")


def write_corpus(root: Path = DATA) -> list[Path]:
    paths = []
    for name, summary, script in build_all():
        path = root / f"{name}.prf"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render(name, summary, script), encoding="utf-8")
        paths.append(path)
    return paths
