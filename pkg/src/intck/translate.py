"""Syntactic translations between the modal, conditional and first-order languages."""

from __future__ import annotations

import itertools

from .syntax import (
    TOP, BOT, And, AtomE, AtomP, AtomR, AtomS, Bot, Box, BoxArrow, Dia, DiaArrow, Exists,
    FoAnd, FoBot, FoFormula, FoImp, FoOr, FoTop, Forall, Formula, Imp, Meta, Or, Top, Var,
    fo_iff, forall_o,
)

_BIN = (And, Or, Imp)


def tr(f: Formula) -> Formula:
    """Modal to conditional: ``[]a`` becomes ``T => a`` and ``<>a`` becomes ``T ~> a``."""
    t = type(f)
    if t in _BIN:
        return t(tr(f.left), tr(f.right))
    if t is Box:
        return BoxArrow(TOP, tr(f.body))
    if t is Dia:
        return DiaArrow(TOP, tr(f.body))
    if t in (BoxArrow, DiaArrow):
        raise ValueError("tr expects a modal formula")
    return f


def untr(f: Formula) -> Formula:
    """Conditional to modal, forgetting antecedents: ``a => b`` becomes ``[]b``."""
    t = type(f)
    if t in _BIN:
        return t(untr(f.left), untr(f.right))
    if t is BoxArrow:
        return Box(untr(f.right))
    if t is DiaArrow:
        return Dia(untr(f.right))
    if t in (Box, Dia):
        raise ValueError("untr expects a conditional formula")
    return f


def project_to_int(f: Formula) -> Formula:
    """Replace every ``a => b`` by ``T`` and every ``a ~> b`` by ``F``."""
    t = type(f)
    if t is BoxArrow:
        return TOP
    if t is DiaArrow:
        return BOT
    if t in _BIN:
        return t(project_to_int(f.left), project_to_int(f.right))
    if t in (Box, Dia):
        raise ValueError("project_to_int expects a conditional formula")
    return f


def st(x: str, f: Formula) -> FoFormula:
    """Standard translation with free variable ``x``.

    Bound variables are ``_v0, _v1, ...`` in order of allocation; each
    conditional allocates its three variables before translating its
    arguments, so every binder in the output is distinct and differs from ``x``.
    """
    counter = itertools.count()

    def fresh() -> str:
        while True:
            v = f"_v{next(counter)}"
            if v != x:
                return v

    def go(x: str, f: Formula) -> FoFormula:
        t = type(f)
        if t is Var:
            return AtomP(f.name, x)
        if t is Top:
            return FoTop()
        if t is Bot:
            return FoBot()
        if t is And:
            return FoAnd(go(x, f.left), go(x, f.right))
        if t is Or:
            return FoOr(go(x, f.left), go(x, f.right))
        if t is Imp:
            return FoImp(go(x, f.left), go(x, f.right))
        if t is BoxArrow or t is DiaArrow:
            y, z, w = fresh(), fresh(), fresh()
            ext = forall_o(z, fo_iff(AtomE(z, y), go(z, f.left)))
            if t is BoxArrow:
                succ = Forall(w, FoImp(AtomR(x, y, w), go(w, f.right)))
            else:
                succ = Exists(w, FoAnd(AtomR(x, y, w), go(w, f.right)))
            return Exists(y, FoAnd(FoAnd(AtomS(y), ext), succ))
        if t is Meta:
            raise ValueError(f"cannot translate metavariable {f.name}")
        raise ValueError(f"st expects a conditional formula, got {type(f).__name__}")

    return go(x, f)
