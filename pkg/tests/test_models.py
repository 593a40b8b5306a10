from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from gen import VARS, formulas, random_formula
from oracle import frame_violations, truth
from intck.models import (
    BiSet, EvalError, Model, ModelError, PointedModel, canonical_key, countermodel_search,
    enumerate_models, evaluate, extension, glue, model_from_json, model_to_json, satisfies_biset,
    validate,
)
from intck.syntax import parse


@pytest.fixture
def weiss_gap(data_dir):
    return model_from_json((data_dir / "weiss_gap.json").read_text())


def small_models(n=150, cls="chellas", seed=5):
    return list(enumerate_models(3, list(VARS), budget=n, seed=seed, cls=cls))


class TestConstruction:
    def test_order_closed(self):
        m = Model(["a", "b", "c"], [("a", "b"), ("b", "c")], [], {})
        assert ("a", "c") in m.order and ("c", "c") in m.order

    def test_dangling_ids(self):
        with pytest.raises(ModelError):
            Model(["a"], [("a", "z")], [], {})
        with pytest.raises(ModelError):
            Model(["a"], [], [("a", ["b"], "a")], {})
        with pytest.raises(ModelError):
            Model(["a"], [], [], {"p": ["b"]})

    def test_empty(self):
        with pytest.raises(ModelError):
            Model([], [], [], {})

    def test_json_round_trip(self, weiss_gap):
        again = model_from_json(json.dumps(model_to_json(weiss_gap)))
        assert again == weiss_gap

    def test_json_unknown_key(self):
        with pytest.raises(ModelError, match="unknown keys"):
            model_from_json({"worlds": ["a"], "extra": 1})

    def test_json_bad_text(self):
        with pytest.raises(ModelError):
            model_from_json("{not json")

    def test_pointed_model_world(self, weiss_gap):
        with pytest.raises(ModelError):
            PointedModel(weiss_gap, "nowhere")


class TestEvaluation:
    def test_weiss_gap_values(self, weiss_gap):
        assert evaluate(weiss_gap, "weiss", "v", parse("T=>F")) is True
        assert evaluate(weiss_gap, "weiss", "w", parse("T=>F")) is False
        assert evaluate(weiss_gap, "weiss", "w", parse("~~(T=>F)")) is True

    def test_weiss_rejects_diamond(self, weiss_gap):
        with pytest.raises(EvalError):
            evaluate(weiss_gap, "weiss", "w", parse("p ~> q"))

    def test_unknown_world_and_mode(self, weiss_gap):
        with pytest.raises(EvalError, match="unknown world"):
            evaluate(weiss_gap, "int", "zz", parse("p"))
        with pytest.raises(EvalError):
            evaluate(weiss_gap, "nope", "w", parse("p"))

    def test_int_box_looks_ahead(self, weiss_gap):
        # under the intuitionistic clause w sees the R-step through itself
        assert evaluate(weiss_gap, "int", "w", parse("T=>F")) is False
        assert evaluate(weiss_gap, "int", "v", parse("T=>F")) is True

    def test_against_oracle(self):
        rng = random.Random(11)
        fs = [random_formula(rng, 3) for _ in range(40)]
        for m in small_models(60):
            for f in fs:
                for mode in ("int", "weiss_ext"):
                    got = extension(m, f, mode)
                    want = {w for w in m.worlds if truth(m, mode, w, f)}
                    assert got == want, (m, f, mode)

    def test_biset(self, weiss_gap):
        bs = BiSet(frozenset({parse("~~(T=>F)")}), frozenset({parse("T=>F")}))
        assert satisfies_biset(weiss_gap, "w", bs, "weiss")
        assert not satisfies_biset(weiss_gap, "v", bs, "weiss")
        assert satisfies_biset(weiss_gap, "u", BiSet(), "int")


class TestValidation:
    def test_weiss_gap(self, weiss_gap):
        assert validate(weiss_gap, "weiss") == []
        vs = validate(weiss_gap, "chellas")
        assert [v.condition for v in vs] == ["c1"]
        assert vs[0].witness == ("v", "w", "u")

    def test_monotonicity_violation(self):
        m = Model(["a", "b"], [("a", "b")], [], {"p": ["a"]})
        assert [v.condition for v in validate(m)] == ["monotonicity"]

    def test_c2_violation(self):
        m = Model(["a", "b", "c"], [("b", "c")], [("a", ["a"], "b")], {})
        assert {v.condition for v in validate(m, "chellas")} == {"c2"}

    def test_raw_order_checked(self):
        m = Model(["a", "b", "c"], [("a", "b"), ("b", "c")], [], {}, close=False)
        conds = {v.condition for v in validate(m)}
        assert conds == {"reflexivity", "transitivity"}

    def test_against_oracle(self):
        rng = random.Random(2)
        for _ in range(300):
            n = rng.randint(1, 3)
            ws = [f"w{i}" for i in range(n)]
            order = [(a, b) for a in ws for b in ws if a != b and rng.random() < 0.3]
            sel = [(a, [x for x in ws if rng.random() < 0.5], b)
                   for a in ws for b in ws if rng.random() < 0.3]
            m = Model(ws, order, sel, {})
            for cls in ("chellas", "weiss"):
                got = {v.condition for v in validate(m, cls)} - {"reflexivity", "transitivity"}
                assert got == frame_violations(m, cls), (m, cls)

    def test_enumerated_models_are_valid(self):
        for cls in ("chellas", "weiss"):
            for m in small_models(120, cls):
                assert validate(m, cls) == []


class TestEnumeration:
    def test_deterministic(self):
        a = [model_to_json(m) for m in small_models(80)]
        b = [model_to_json(m) for m in small_models(80)]
        assert a == b

    def test_no_isomorphic_duplicates(self):
        keys = [canonical_key(m) for m in small_models(200)]
        assert len(keys) == len(set(keys))

    def test_one_world_first(self):
        sizes = [len(m.worlds) for m in small_models(200)]
        first_big = next(i for i, n in enumerate(sizes) if n > 1)
        assert first_big > 0
        assert all(n == 1 for n in sizes[:first_big])

    def test_canonical_key_ignores_names(self):
        a = Model(["a", "b"], [("a", "b")], [("a", ["b"], "b")], {"p": ["b"]})
        b = Model(["y", "x"], [("x", "y")], [("x", ["y"], "y")], {"p": ["y"]})
        c = Model(["y", "x"], [("x", "y")], [("x", ["y"], "x")], {"p": ["y"]})
        assert canonical_key(a) == canonical_key(b)
        assert canonical_key(a) != canonical_key(c)


class TestMonotonicity:
    @given(formulas("cond"), hs.integers(0, 40))
    @settings(max_examples=60, deadline=None)
    def test_extensions_upward_closed(self, f, k):
        for m in small_models(40, seed=k):
            assert m.upward_closed(m.ext(f, "int"))


class TestGlue:
    def test_structure(self, weiss_gap):
        m1 = Model(["a"], [], [("a", ["a"], "a")], {"p": ["a"]})
        pm = glue(m1, m1)
        m = pm.model
        assert pm.world == "root"
        assert set(m.worlds) == {"root", "1:a", "2:a"}
        assert validate(m, "chellas") == []
        assert evaluate(m, "int", "1:a", parse("T => p"))
        assert not evaluate(m, "int", "root", parse("p"))

    def test_preserves_truth_and_refutes(self):
        rng = random.Random(4)
        fs = [random_formula(rng, 3) for _ in range(30)]
        ms = small_models(30)
        for m1, m2 in zip(ms, reversed(ms)):
            g = glue(m1, m2).model
            assert validate(g, "chellas") == []
            for f in fs:
                for i, comp in ((1, m1), (2, m2)):
                    for w in comp.worlds:
                        assert evaluate(g, "int", f"{i}:{w}", f) == evaluate(comp, "int", w, f)
                if not evaluate(m1, "int", m1.worlds[0], f) and not evaluate(m2, "int", m2.worlds[0], f):
                    assert not evaluate(g, "int", "root", f)


class TestCountermodels:
    def test_finds_simple_countermodel(self):
        pm = countermodel_search(parse("p -> q"))
        assert pm is not None
        assert not evaluate(pm.model, "int", pm.world, parse("p -> q"))

    def test_weiss_refutes_weiss_gap_formula(self):
        f = parse("~~(T=>F)->(T=>F)")
        pm = countermodel_search(f, "weiss")
        assert pm is not None
        assert validate(pm.model, "weiss") == []
        assert not evaluate(pm.model, "weiss", pm.world, f)

    def test_chellas_finds_none_for_weiss_gap_formula(self):
        assert countermodel_search(parse("~~(T=>F)->(T=>F)"), "chellas", budget=2000) is None

    def test_diamond_not_allowed_for_weiss(self):
        with pytest.raises(EvalError):
            countermodel_search(parse("p ~> q"), "weiss")

    def test_deterministic(self):
        f = parse("(p => q) -> (p => q & r)")
        a = countermodel_search(f, seed=3)
        b = countermodel_search(f, seed=3)
        assert a is not None and model_to_json(a.model) == model_to_json(b.model) and a.world == b.world
