from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from gen import formulas, fo_formulas
from intck.syntax import (
    BOT, TOP, And, AtomE, AtomO, AtomP, AtomR, AtomS, Box, BoxArrow, Dia, DiaArrow, Eq, Exists, FoAnd,
    FoBot, FoImp, FoOr, FoTop, Forall, Imp, Meta, Or, ParseError, Var, atoms, depth, fmt, fo_bound_vars,
    fo_fmt, fo_free_vars, forall_o, iff, in_dialect, neg, parse, subformulas, substitute,
)

p, q, r = Var("p"), Var("q"), Var("r")


class TestParse:
    def test_conditional_binds_looser_than_or(self):
        assert parse("p => (q | r)") == BoxArrow(p, Or(q, r))
        assert parse("p => q | r") == BoxArrow(p, Or(q, r))

    def test_negation_is_sugar(self):
        assert parse("~p") == Imp(p, BOT)

    def test_iff_is_sugar(self):
        assert parse("p <-> q") == And(Imp(p, q), Imp(q, p))

    def test_modal(self):
        assert parse("[](p -> q)", "modal") == Box(Imp(p, q))
        assert parse("<>~p", "modal") == Dia(Imp(p, BOT))

    def test_constants(self):
        assert parse("T") == TOP
        assert parse("F") == BOT
        with pytest.raises(ParseError):
            parse("Tx")  # atoms start lowercase, so this is neither an atom nor T

    def test_implication_right_assoc(self):
        assert parse("p -> q -> r") == Imp(p, Imp(q, r))

    def test_and_or_left_assoc(self):
        assert parse("p & q & r") == And(And(p, q), r)
        assert parse("p | q | r") == Or(Or(p, q), r)

    def test_precedence_chain(self):
        f = parse("~p & q | r -> p ~> q <-> T")
        assert f == iff(Imp(Or(And(neg(p), q), r), DiaArrow(p, q)), TOP)

    @pytest.mark.parametrize("text", ["p => q => r", "p ~> q => r", "p => q ~> r"])
    def test_conditionals_non_associative(self, text):
        with pytest.raises(ParseError, match="non-associative"):
            parse(text)

    @pytest.mark.parametrize(
        "text, line, column",
        [("p q", 1, 3), ("(p", 1, 3), ("p ~> ~> q", 1, 6), ("P", 1, 1), ("p &\n  $", 2, 3)],
    )
    def test_error_position(self, text, line, column):
        with pytest.raises(ParseError) as ei:
            parse(text)
        assert (ei.value.line, ei.value.column) == (line, column)

    def test_dialects_are_separate(self):
        with pytest.raises(ParseError):
            parse("[]p", "cond")
        with pytest.raises(ParseError):
            parse("p => q", "modal")

    def test_empty(self):
        with pytest.raises(ParseError):
            parse("   ")


class TestPrint:
    def test_sugar_restored(self):
        assert fmt(Imp(p, BOT)) == "~p"
        assert fmt(iff(p, q)) == "p <-> q"
        assert fmt(TOP) == "T"
        assert fmt(BOT) == "F"

    def test_minimal_parentheses(self):
        assert fmt(BoxArrow(p, Or(q, r))) == "p => q | r"
        assert fmt(Imp(Imp(p, q), r)) == "(p -> q) -> r"
        assert fmt(parse("~~(T=>F)->(T=>F)")) == "~~(T => F) -> T => F"
        assert fmt(BoxArrow(BoxArrow(p, q), r)) == "(p => q) => r"

    @given(formulas("cond"))
    @settings(max_examples=300)
    def test_round_trip_cond(self, f):
        assert parse(fmt(f)) == f

    @given(formulas("modal"))
    @settings(max_examples=300)
    def test_round_trip_modal(self, f):
        assert parse(fmt(f), "modal") == f

    @given(formulas("cond"))
    @settings(max_examples=100)
    def test_parse_output_in_dialect(self, f):
        g = parse(fmt(f))
        assert in_dialect(g, "cond")
        assert not any(type(s) is Meta for s in subformulas(g))


class TestSubstitute:
    def test_a1_instance(self):
        phi, psi, chi = Var("phi"), Var("psi"), Var("chi")
        body = iff(And(BoxArrow(phi, psi), BoxArrow(phi, chi)), BoxArrow(phi, And(psi, chi)))
        got = substitute(body, {"phi": p, "psi": q, "chi": r})
        assert got == parse("((p=>q) & (p=>r)) <-> (p=>(q&r))")

    def test_identity(self):
        f = parse("p => q -> ~r")
        assert substitute(f, {}) == f
        assert substitute(f, {"p": p, "q": q}) == f

    def test_simultaneous(self):
        assert substitute(parse("p & q"), {"p": q, "q": p}) == parse("q & p")

    def test_metavariables_only(self):
        f = And(Meta("phi"), p)
        assert substitute(f, {"phi": q, "p": r}, metavars=True) == And(q, p)

    @given(formulas("cond"), formulas("cond", max_leaves=4), formulas("cond", max_leaves=4))
    @settings(max_examples=150)
    def test_composition(self, f, a, b):
        # sigma1: p -> a with a over {p, q, r}; sigma2: s -> b where s never occurs in a
        s1 = {"p": a}
        s2 = {"s": b}
        f2 = And(f, Var("s"))
        once = substitute(f2, {"p": a, "s": b})
        twice = substitute(substitute(f2, s1), s2)
        assert once == twice

    @given(formulas("cond"))
    def test_atoms_and_depth(self, f):
        assert atoms(f) <= {"p", "q", "r"}
        assert depth(f) >= 0
        assert depth(And(f, f)) == depth(f) + 1


def _scan_free(f, bound=frozenset()):
    """Independent free-variable oracle: walk the tree carrying the bound set."""
    t = type(f)
    if t in (FoTop, FoBot):
        return set()
    if t in (Forall, Exists):
        return _scan_free(f.body, bound | {f.var})
    if t in (FoAnd, FoOr, FoImp):
        return _scan_free(f.left, bound) | _scan_free(f.right, bound)
    names = [getattr(f, a) for a in ("x", "y", "z") if hasattr(f, a)]
    return {n for n in names if n not in bound}


class TestFirstOrder:
    def test_free_vars_examples(self):
        assert fo_free_vars(AtomE("x", "y")) == {"x", "y"}
        assert fo_free_vars(Exists("y", AtomE("x", "y"))) == {"x"}
        assert fo_free_vars(AtomR("x", "y", "z")) == {"x", "y", "z"}
        assert fo_free_vars(AtomP("p", "x")) == {"x"}

    def test_bound_vars(self):
        f = Forall("x", FoAnd(AtomO("x"), Exists("y", AtomS("y"))))
        assert fo_bound_vars(f) == {"x", "y"}
        assert fo_free_vars(f) == set()

    def test_forall_o_is_notation(self):
        assert forall_o("x", AtomS("x")) == Forall("x", FoImp(AtomO("x"), AtomS("x")))

    def test_print(self):
        f = Exists("y", FoAnd(AtomS("y"), Eq("x", "y")))
        assert "exists y." in fo_fmt(f)

    @given(fo_formulas())
    @settings(max_examples=300)
    def test_free_vars_against_scan(self, f):
        assert fo_free_vars(f) == _scan_free(f)
