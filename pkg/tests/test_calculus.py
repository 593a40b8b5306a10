from __future__ import annotations

import random
from dataclasses import replace

import pytest

from gen import random_formula
from intck.calculus import (
    MP, Ax, KernelError, Line, Pre, ProofScript, RuleApp, ScriptError, Thm, bundled, check, dumps,
    elaborate, get_calculus, loads, match_scheme, registry, substitute_proof, verify_corpus,
)
from intck.calculus.builder import ProofBuilder
from intck.calculus.construct import build_all, render
from intck.calculus.corpus import DATA
from intck.models import enumerate_models, extension
from intck.syntax import Var, atoms, parse


def P(text, dialect="cond"):
    return parse(text, dialect)


class TestRegistry:
    def test_six_calculi(self):
        assert [c.id for c in registry()] == ["INT", "INTCK", "INTCK_AX0", "CK", "ICK_W", "IK"]

    def test_intck(self):
        c = get_calculus("INTCK")
        assert {a.id for a in c.axioms} == {f"A0.{i}" for i in range(1, 11)} | {f"A{i}" for i in range(1, 7)}
        assert {r.id for r in c.rules} == {"MP", "RAbox", "RCbox", "RAdia", "RCdia"}

    def test_ck_lacks_diamond_axioms(self):
        c = get_calculus("CK")
        ids = {a.id for a in c.axioms}
        assert not ids & {"A2", "A3", "A4", "A6"}
        assert {"Ax0", "Ax1"} <= ids
        assert {r.id for r in c.rules} == {"MP", "RAbox", "RCbox"}

    def test_ick_w_box_only(self):
        c = get_calculus("ICK_W")
        assert not c.admits(P("p ~> q"))
        assert c.admits(P("p => q"))

    def test_ik(self):
        c = get_calculus("IK")
        assert {r.id for r in c.rules} == {"MP", "nec"}
        assert c.admits(P("[]p -> <>p", "modal"))

    def test_a0_list(self):
        a0 = [a for a in get_calculus("INT").axioms]
        assert len(a0) == 10
        assert a0[0].instance({"phi": Var("p"), "psi": Var("q")}) == P("p -> q -> p")
        assert a0[9].instance({"phi": Var("p")}) == P("p -> T")

    def test_unknown(self):
        with pytest.raises(KernelError):
            get_calculus("S5")


class TestMatch:
    def test_a5(self):
        a5 = get_calculus("INTCK").axiom("A5")
        assert match_scheme(a5, P("p => T")) == {"phi": Var("p")}

    def test_a1(self):
        a1 = get_calculus("INTCK").axiom("A1")
        got = match_scheme(a1, P("((p=>q)&(p=>r))<->(p=>(q&r))"))
        assert got == {"phi": Var("p"), "psi": Var("q"), "chi": Var("r")}

    def test_no_match(self):
        assert match_scheme(get_calculus("INTCK").axiom("A1"), P("p -> p")) is None

    def test_repeated_metavariable(self):
        a1 = get_calculus("INTCK").axiom("A1")
        assert match_scheme(a1, P("((p=>q)&(s=>r))<->(p=>(q&r))")) is None


def one_liner(calc, formula, just, mode="proof", premises=()):
    return ProofScript(calc, mode, tuple(premises), (Line(formula, just),))


class TestCheck:
    def test_single_axiom_line(self):
        s = one_liner("INTCK", P("p => T"), Ax("A5", (("phi", Var("p")),)))
        assert check(s).ok

    def test_mp_mismatch(self):
        s = loads("calculus INT\nmode derivation\npremise p\npremise q -> r\n"
                  "1: p ; pre 1\n2: q -> r ; pre 2\n3: r ; mp 1 2\n")
        v = check(s)
        assert not v.ok and v.line == 3

    def test_unknown_scheme(self):
        v = check(one_liner("INT", P("p => T"), Ax("A5", (("phi", Var("p")),))))
        assert not v.ok and v.line == 1

    def test_missing_binding(self):
        v = check(one_liner("INT", P("p -> q -> p"), Ax("A0.1", (("phi", Var("p")),))))
        assert not v.ok and "omits psi" in v.reason

    def test_unknown_theorem(self):
        v = check(one_liner("INTCK", P("p"), Thm("INTCK/nothing", ())))
        assert not v.ok

    def test_dialect_mismatch(self):
        v = check(one_liner("ICK_W", P("p ~> q -> p ~> q"), Thm("INT/id", (("p", P("p ~> q")),))))
        assert not v.ok and "outside the language" in v.reason

    def test_premise_in_proof(self):
        v = check(one_liner("INT", P("p"), Pre(1), mode="proof", premises=(P("p"),)))
        assert not v.ok

    def test_forward_reference(self):
        s = ProofScript("INT", "proof", (), (Line(P("p"), MP(2, 3)),))
        assert not check(s).ok

    def test_unknown_calculus_raises(self):
        with pytest.raises(KernelError):
            check(one_liner("XX", P("p"), Pre(1)))

    def test_thm_instance(self):
        s = one_liner("INTCK", P("(a => b) -> (a => b)"), Thm("INT/id", (("p", P("a => b")),)))
        v = check(s)
        assert v.ok and "A0.1" in v.footprint

    def test_calculus_footprint_guard(self):
        # a CK item depends on Ax1, which INTCK lacks
        item = bundled().get("CK/A2")
        binds = tuple((a, Var(a)) for a in sorted(item.atoms))
        v = check(one_liner("INTCK", item.conclusion, Thm("CK/A2", binds)))
        assert not v.ok


RAbox_derivation = """calculus INTCK
mode derivation
premise p <-> q
1: p <-> q ; pre 1
2: (p => r) <-> (q => r) ; rule RAbox 1
"""


class TestModes:
    def test_rule_rejected_in_derivation(self):
        v = check(loads(RAbox_derivation))
        assert not v.ok and v.line == 2

    def test_rule_accepted_in_derived_rule(self):
        assert check(loads(RAbox_derivation.replace("mode derivation", "mode derived_rule"))).ok

    def test_any_inserted_rule_rejected(self):
        base = loads("calculus INTCK\nmode derivation\npremise p\n1: p ; pre 1\n2: p -> T ; ax A0.10 phi=p\n")
        assert check(base).ok
        extra = Line(P("q <-> q"), Thm("INT/iff_refl", (("p", P("q")),)))
        ra = Line(P("(q => s) <-> (q => s)"), RuleApp("RAbox", (3,)))
        assert check(replace(base, lines=base.lines + (extra,))).ok
        s = replace(base, lines=base.lines + (extra, ra))
        assert not check(s).ok
        # the same lines are fine once rules are allowed
        assert check(replace(s, mode="derived_rule")).ok

    def test_derivation_with_mp(self):
        s = loads("calculus INT\nmode derivation\npremise p\npremise p -> q\n"
                  "1: p ; pre 1\n2: p -> q ; pre 2\n3: q ; mp 1 2\n")
        assert check(s).ok

    def test_derived_rule_citation(self):
        s = loads("calculus INTCK\nmode derived_rule\npremise a\n1: a ; pre 1\n2: b => a ; rule INTCK/Nec 1\n")
        assert check(s).ok
        bad = loads("calculus INTCK\nmode derivation\npremise a\n1: a ; pre 1\n2: b => a ; rule INTCK/Nec 1\n")
        assert not check(bad).ok


class TestScripts:
    def test_round_trip(self):
        for item in bundled():
            assert loads(dumps(item.script)) == item.script

    def test_header_required(self):
        with pytest.raises(ScriptError):
            loads("1: p ; pre 1\n")

    def test_line_numbers(self):
        with pytest.raises(ScriptError) as ei:
            loads("calculus INT\n1: p -> T ; ax A0.10 phi=p\n3: p -> T ; ax A0.10 phi=p\n")
        assert ei.value.lineno == 3

    def test_bad_formula(self):
        with pytest.raises(ScriptError):
            loads("calculus INT\n1: p -> ; ax A0.10 phi=p\n")

    def test_unknown_calculus(self):
        with pytest.raises(ScriptError):
            loads("calculus ZZ\n")

    def test_binding_with_conditional(self):
        s = loads("calculus INTCK\n1: (p => q) => T ; ax A5 phi=p => q\n")
        assert check(s).ok


class TestCorpus:
    def test_all_accepted(self):
        entries, corpus = verify_corpus()
        assert all(e.verdict.ok for e in entries), [str(e.verdict) for e in entries if not e.verdict.ok]
        assert len(corpus) == len(entries) >= 21

    @pytest.mark.parametrize("name", [
        "INTCK/Nec", "INTCK/RMbox", "INTCK/RMdia", "INTCK/T1", "INTCK/T2", "INTCK/T3", "INTCK/T4_ltr",
        "INTCK/T4_rtl", "CK/A2", "CK/A4", "CK/RAdia", "CK/RCdia", "CK/A3", "CK/A6", "INTCK_AX0/Ax1",
        "INTCK/ick_nn", "IK/t1", "IK/t2", "IK/t3", "IK/t4", "IK/r1", "IK/r2", "IK/r3", "IK/r4",
    ])
    def test_required_item(self, name):
        assert bundled().get(name) is not None

    @pytest.mark.parametrize("name, statement", [
        ("INTCK/T1", "(p => (q -> r)) -> ((p => q) -> (p => r))"),
        ("INTCK/T2", "(p => (q -> r)) -> ((p ~> q) -> (p ~> r))"),
        ("INTCK/ick_nn", "~~(T=>F)->(T=>F)"),
        ("INTCK_AX0/Ax1", "(p ~> q) <-> ~(p => ~q)"),
        ("IK/t4", "[]T"),
    ])
    def test_statements(self, name, statement):
        item = bundled().get(name)
        dialect = "modal" if name.startswith("IK") else "cond"
        assert item.conclusion == parse(statement, dialect)

    def test_derived_rule_shapes(self):
        nec = bundled().get("INTCK/Nec")
        assert nec.is_rule and nec.premises == (P("p"),) and nec.conclusion == P("q => p")

    def test_files_match_generator(self):
        for name, summary, script in build_all():
            path = DATA / f"{name}.prf"
            assert path.read_text() == render(name, summary, script), name

    def test_elaboration_equivalent(self):
        corpus = bundled()
        for item in corpus:
            flat = elaborate(item.script, corpus)
            assert flat.conclusion == item.conclusion
            assert not any(isinstance(l.just, Thm) for l in flat.lines)
            assert check(flat, corpus).ok, item.name

    def test_substitution_closure(self):
        rng = random.Random(8)
        corpus = bundled()
        for item in corpus:
            dialect = get_calculus(item.calculus).dialect
            gen_dialect = "modal" if dialect == "modal" else ("int" if dialect == "int" else "cond")
            for _ in range(3):
                sigma = {a: random_formula(rng, 3, gen_dialect, ("a", "b", "c")) for a in item.atoms}
                assert check(substitute_proof(item.script, sigma), corpus).ok, item.name

    def test_substitute_t4(self):
        t4 = bundled().get("INTCK/T4")
        out = substitute_proof(t4.script, {"p": P("a & b")})
        v = check(out)
        assert v.ok
        from intck.syntax import substitute
        assert v.conclusion == substitute(t4.conclusion, {"p": P("a & b")})

    def test_identity_substitution(self):
        t2 = bundled().get("INTCK/T2").script
        assert substitute_proof(t2, {}) == t2

    def test_ax_rebinding(self):
        s = one_liner("INTCK", P("p => T"), Ax("A5", (("phi", Var("p")),)))
        out = substitute_proof(s, {"p": P("a | b")})
        assert out.lines[0].just == Ax("A5", (("phi", P("a | b")),))
        assert check(out).ok

    def test_theorems_valid_on_models(self):
        ms = list(enumerate_models(3, ["p", "q", "r", "s"], budget=200, seed=1))
        for item in bundled():
            # CK and INTCK_AX0 items need the classical Ax0
            if item.is_rule or item.calculus not in ("INT", "INTCK"):
                continue
            for m in ms:
                assert extension(m, item.conclusion, "int") == frozenset(m.worlds), item.name


class TestBuilder:
    def test_deduction(self):
        b = ProofBuilder("INT")
        h = b.hyp(P("p & q"))
        c = b.conj(b.right(h), b.left(h))
        s = b.build(b.discharge(h, c))
        assert s.conclusion == P("p & q -> q & p")
        assert check(s).ok

    def test_open_hypothesis(self):
        b = ProofBuilder("INT")
        b.hyp(P("p"))
        with pytest.raises(KernelError):
            b.build()
