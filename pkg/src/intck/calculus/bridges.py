"""Porting proofs between calculi.

A bridge translates formulas from a source calculus to a target calculus and
tells how to justify, in the target, the image of each source axiom instance
and each source rule application.  Porting rewrites a checked script line by
line; every source line becomes a block of target lines ending with the
translated formula, so the ported conclusion is the translated source
conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..syntax import TOP, Formula
from ..translate import tr, untr
from .builder import ProofBuilder
from .kernel import (
    CORPUS_ATOM, MP, Ax, Corpus, Item, KernelError, Pre, ProofScript, RuleApp, Thm, check,
    default_corpus, elaborate, get_calculus,
)

AxiomHandler = Callable[[ProofBuilder, dict], int]
RuleHandler = Callable[[ProofBuilder, tuple, Formula], int]


def _identity(f: Formula) -> Formula:
    return f


@dataclass(frozen=True)
class Bridge:
    name: str
    source: str | None  # None: any calculus (identity bridge)
    target: str | None
    translate: Callable[[Formula], Formula] = _identity
    axioms: dict = field(default_factory=dict)
    rules: dict = field(default_factory=dict)
    keep: Callable[[Item, str], bool] = lambda item, target: False


def _fits(item: Item, target: str) -> bool:
    cal = get_calculus(target)
    return item.footprint <= cal.primitives and all(
        cal.admits(f) for f in item.premises + (item.conclusion,)
    )


def _int_only(item: Item, target: str) -> bool:
    return item.calculus == "INT"


def _thm(name: str) -> AxiomHandler:
    """Justify an axiom instance by the corpus theorem with the same shape."""

    def h(b: ProofBuilder, mv: dict) -> int:
        return b.thm(name, **{CORPUS_ATOM[k]: v for k, v in mv.items()})

    return h


def _derived(name: str) -> RuleHandler:
    def h(b: ProofBuilder, lines: tuple, target: Formula) -> int:
        return b.rule(name, *lines, target=target)

    return h


_CLASSICAL_AXIOMS = {"A2": _thm("CK/A2"), "A3": _thm("CK/A3"), "A4": _thm("CK/A4"), "A6": _thm("CK/A6")}
_CLASSICAL_RULES = {"RAdia": _derived("CK/RAdia"), "RCdia": _derived("CK/RCdia")}


def _tr_a4(b: ProofBuilder, mv: dict) -> int:
    return b.left(b.ax("A3", phi=TOP, psi=mv["phi"], chi=mv["psi"]))


def _iff_refl(b: ProofBuilder, lines: tuple, target: Formula) -> int:
    return b.thm("INT/iff_refl", p=target.left.left)


BRIDGES: dict[str, Bridge] = {
    b.name: b
    for b in [
        Bridge("identity", None, None, keep=lambda item, target: True),
        Bridge("intck_to_ck", "INTCK", "CK", axioms=_CLASSICAL_AXIOMS, rules=_CLASSICAL_RULES, keep=_fits),
        Bridge("intck_ax0_to_ck", "INTCK_AX0", "CK", axioms=_CLASSICAL_AXIOMS, rules=_CLASSICAL_RULES,
               keep=_fits),
        Bridge("ck_to_intck_ax0", "CK", "INTCK_AX0", axioms={"Ax1": _thm("INTCK_AX0/Ax1")}, keep=_fits),
        Bridge(
            "tr", "IK", "INTCK", translate=tr,
            axioms={
                "a1": lambda b, mv: b.thm("INTCK/T1", p=TOP, q=mv["phi"], r=mv["psi"]),
                "a2": lambda b, mv: b.thm("INTCK/T2", p=TOP, q=mv["phi"], r=mv["psi"]),
                "a3": lambda b, mv: b.ax("A6", phi=TOP),
                "a4": _tr_a4,
                "a5": lambda b, mv: b.ax("A4", phi=TOP, psi=mv["phi"], chi=mv["psi"]),
            },
            rules={"nec": lambda b, lines, target: b.rule("INTCK/Nec", *lines, q=TOP)},
            keep=_int_only,
        ),
        Bridge(
            "untr", "INTCK", "IK", translate=untr,
            axioms={
                "A1": lambda b, mv: b.thm("IK/t1", p=mv["psi"], q=mv["chi"]),
                "A2": lambda b, mv: b.thm("IK/t2", p=mv["psi"], q=mv["chi"]),
                "A3": lambda b, mv: b.thm("IK/t3", p=mv["psi"], q=mv["chi"]),
                "A4": lambda b, mv: b.ax("a5", phi=mv["psi"], psi=mv["chi"]),
                "A5": lambda b, mv: b.thm("IK/t4"),
                "A6": lambda b, mv: b.ax("a3"),
            },
            rules={
                "RCbox": _derived("IK/r3"),
                "RCdia": _derived("IK/r4"),
                "RAbox": _iff_refl,
                "RAdia": _iff_refl,
            },
            keep=_int_only,
        ),
    ]
}

# Short alias for the classical bridge.
BRIDGES["classical"] = BRIDGES["intck_to_ck"]


def bridge_for(name: str, source: str, target: str) -> Bridge:
    br = BRIDGES.get(name)
    if br is None:
        raise KernelError(f"unknown bridge {name!r}")
    if br.source is None:
        if source != target:
            raise KernelError("the identity bridge needs equal source and target calculi")
    elif (br.source, br.target) != (source, target):
        raise KernelError(f"bridge {name} ports {br.source} to {br.target}, not {source} to {target}")
    return br


def port_proof(script: ProofScript, target: str, bridge: str, corpus: Corpus | None = None) -> ProofScript:
    """Rewrite a checked ``script`` into a checked script of ``target``."""
    if corpus is None:
        corpus = default_corpus()
    br = bridge_for(bridge, script.calculus, target)
    v = check(script, corpus)
    if not v.ok:
        raise KernelError(f"source script does not check: {v}")
    flat = elaborate(script, corpus, keep=lambda item: br.keep(item, target))
    T = br.translate
    tcal = get_calculus(target)
    b = ProofBuilder(target, script.mode, [T(p) for p in script.premises], corpus)
    where: dict[int, int] = {}
    for n, line in enumerate(flat.lines, 1):
        goal = T(line.formula)
        j = line.just
        if isinstance(j, Pre):
            k = b.pre(j.index)
        elif isinstance(j, MP):
            k = b.mp(where[j.minor], where[j.major])
        elif isinstance(j, Ax):
            mv = {name: T(f) for name, f in j.bindings}
            handler = br.axioms.get(j.scheme)
            if handler is not None:
                k = handler(b, mv)
            elif tcal.axiom(j.scheme) is not None:
                k = b.ax(j.scheme, **mv)
            else:
                raise KernelError(f"bridge {br.name} has no entry for axiom {j.scheme}")
        elif isinstance(j, Thm):
            k = b.thm(j.name, **{name: T(f) for name, f in j.bindings})
        elif isinstance(j, RuleApp):
            lines = tuple(where[i] for i in j.lines)
            handler = br.rules.get(j.rule)
            if handler is not None:
                k = handler(b, lines, goal)
            elif tcal.rule(j.rule) is not None or j.rule in corpus:
                k = b.rule(j.rule, *lines, target=goal)
            else:
                raise KernelError(f"bridge {br.name} has no entry for rule {j.rule}")
        else:
            raise KernelError(f"unsupported justification {j!r}")
        if b.formula(k) != goal:
            raise KernelError(f"bridge {br.name} produced the wrong formula for line {n}")
        where[n] = k
    return b.build(where[len(flat.lines)])
