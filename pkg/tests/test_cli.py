from __future__ import annotations

import json
import subprocess
import sys

import pytest

from intck.calculus import check, loads
from intck.calculus.corpus import DATA as CORPUS
from intck.cli import run
from intck.models import evaluate, model_from_json, validate
from intck.syntax import parse


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def weiss_gap(data_dir):
    return str(data_dir / "weiss_gap.json")


class TestFmtAndTranslate:
    def test_fmt(self, capsys):
        assert call(capsys, "fmt", "(p=>(q|r))") == (0, "p => q | r\n", "")

    def test_fmt_non_associative(self, capsys):
        code, out, err = call(capsys, "fmt", "p=>q=>r")
        assert code == 2 and out == ""
        assert "non-associative" in err and "column" in err

    def test_fmt_modal(self, capsys):
        assert call(capsys, "fmt", "--dialect", "modal", "[] (p)")[:2] == (0, "[]p\n")

    def test_translate(self, capsys):
        assert call(capsys, "translate", "--tr", "[]p -> <>q")[1] == "T => p -> T ~> q\n"
        assert call(capsys, "translate", "--untr", "q => p")[1] == "[]p\n"
        assert call(capsys, "translate", "--erase", "p & (q => r)")[1] == "p & T\n"
        code, out, _ = call(capsys, "translate", "--st=x", "p")
        assert (code, out) == (0, "p(x)\n")

    def test_translate_json(self, capsys):
        code, out, _ = call(capsys, "--json", "translate", "--untr", "q ~> p")
        assert code == 0 and json.loads(out) == {"translation": "<>p"}

    def test_translate_wrong_dialect(self, capsys):
        assert call(capsys, "translate", "--tr", "p => q")[0] == 2

    def test_usage_error(self, capsys):
        assert call(capsys, "translate", "p")[0] == 2
        assert call(capsys, "frobnicate")[0] == 2


class TestModels:
    def test_eval_weiss_gap(self, capsys, weiss_gap):
        assert call(capsys, "eval", "--model", weiss_gap, "--mode", "weiss", "--world", "w", "~~(T=>F)")[:2] == (0, "true\n")
        assert call(capsys, "eval", "--model", weiss_gap, "--mode", "weiss", "--world", "w", "T=>F")[:2] == (0, "false\n")
        assert call(capsys, "eval", "--model", weiss_gap, "--mode", "weiss", "--world", "v", "T=>F")[:2] == (0, "true\n")

    def test_eval_errors(self, capsys, weiss_gap, tmp_path):
        assert call(capsys, "eval", "--model", weiss_gap, "--world", "zz", "p")[0] == 2
        assert call(capsys, "eval", "--model", str(tmp_path / "none.json"), "--world", "w", "p")[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text('{"worlds": ["a"], "colour": 1}')
        assert call(capsys, "eval", "--model", str(bad), "--world", "a", "p")[0] == 2

    def test_validate(self, capsys, weiss_gap):
        assert call(capsys, "validate-model", weiss_gap, "--class", "weiss")[:2] == (0, "VALID weiss\n")
        code, out, _ = call(capsys, "validate-model", weiss_gap, "--class", "chellas")
        assert code == 1 and out.startswith("VIOLATION c1")

    def test_validate_json(self, capsys, weiss_gap):
        code, out, _ = call(capsys, "validate-model", weiss_gap, "--class", "chellas", "--json")
        rep = json.loads(out)
        assert code == 1 and rep["valid"] is False
        assert rep["violations"][0] == {"condition": "c1", "witness": ["v", "w", "u"], "set": ["u", "v", "w"]}

    def test_countermodel_found(self, capsys):
        code, out, _ = call(capsys, "countermodel", "p -> q", "--seed", "1")
        assert code == 0
        wit = json.loads(out)
        m = model_from_json(wit["model"])
        assert validate(m) == [] and not evaluate(m, "int", wit["world"], parse("p -> q"))

    def test_countermodel_weiss(self, capsys):
        code, out, _ = call(capsys, "countermodel", "~~(T=>F)->(T=>F)", "--class", "weiss")
        assert code == 0
        wit = json.loads(out)
        m = model_from_json(wit["model"])
        assert validate(m, "weiss") == [] and not evaluate(m, "weiss", wit["world"], parse("~~(T=>F)->(T=>F)"))

    def test_countermodel_none(self, capsys):
        code, out, err = call(capsys, "countermodel", "p => T", "--budget", "300")
        assert code == 1 and out == "" and "NONE" in err

    def test_countermodel_stable(self, capsys):
        a = call(capsys, "countermodel", "(p => q) -> (p => q & r)", "--seed", "4")
        b = call(capsys, "countermodel", "(p => q) -> (p => q & r)", "--seed", "4")
        assert a == b

    def test_glue(self, capsys, weiss_gap):
        code, out, _ = call(capsys, "glue", weiss_gap, weiss_gap)
        wit = json.loads(out)
        assert code == 0 and wit["world"] == "root"
        assert "1:w" in wit["model"]["worlds"] and "2:u" in wit["model"]["worlds"]


class TestProofs:
    def test_check_corpus(self, capsys):
        code, out, _ = call(capsys, "check-corpus")
        lines = out.splitlines()
        assert code == 0 and len(lines) >= 21
        assert all(l.startswith("ACCEPT ") for l in lines)
        assert "ACCEPT INTCK/ick_nn" in lines

    def test_check_proof(self, capsys):
        code, out, _ = call(capsys, "check-proof", str(CORPUS / "INTCK" / "T1.prf"))
        assert code == 0 and out.startswith("ACCEPT p => (q -> r) -> p => q -> p => r\n")

    def test_check_proof_reject(self, capsys, tmp_path):
        f = tmp_path / "bad.prf"
        f.write_text("calculus INT\n1: p -> q ; ax A0.10 phi=p\n")
        code, out, _ = call(capsys, "check-proof", str(f))
        assert code == 1 and out.startswith("REJECT at line 1")
        code, out, _ = call(capsys, "check-proof", str(f), "--json")
        assert json.loads(out)["line"] == 1

    def test_check_proof_malformed(self, capsys, tmp_path):
        f = tmp_path / "bad.prf"
        f.write_text("calculus INT\n1: p -> ; ax A0.10 phi=p\n")
        assert call(capsys, "check-proof", str(f))[0] == 2
        f.write_text("calculus NOPE\n")
        assert call(capsys, "check-proof", str(f))[0] == 2

    def test_port_t4_to_ck(self, capsys):
        code, out, _ = call(capsys, "port-proof", str(CORPUS / "INTCK" / "T4_ltr.prf"),
                            "--target", "CK", "--bridge", "intck_to_ck")
        assert code == 0
        s = loads(out)
        assert s.calculus == "CK" and check(s).ok

    def test_port_t2_along_tr(self, capsys):
        code, out, _ = call(capsys, "port-proof", str(CORPUS / "IK" / "t2.prf"),
                            "--target", "INTCK", "--bridge", "tr", "--json")
        rep = json.loads(out)
        assert code == 0 and rep["ok"]
        assert rep["conclusion"] == "(T ~> p) & (T => q) -> T ~> p & q"

    def test_port_bad_bridge(self, capsys):
        assert call(capsys, "port-proof", str(CORPUS / "IK" / "t2.prf"), "--target", "CK",
                    "--bridge", "tr")[0] == 2


class TestTheory:
    def test_th_check_fixture(self, capsys, data_dir):
        code, out, _ = call(capsys, "th-check", "--sheaf", str(data_dir / "sheaf_vee.json"), "--vars", "p,q")
        assert code == 0
        assert out.splitlines()[0] == "PASS Th1" and out.splitlines()[-1] == "PASS Th12"

    def test_th_check_failure(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"nodes": ["n"], "domains": {"n": ["o"]}, "interp": {"n": {"O": ["o"]}}}))
        code, out, _ = call(capsys, "th-check", "--sheaf", str(f), "--json")
        rep = json.loads(out)
        assert code == 1
        assert {s["label"]: s["failing_nodes"] for s in rep["sentences"]}["Th8"] == ["n"]

    def test_th_check_invalid_sheaf(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({
            "nodes": ["a", "b"], "order": [["a", "b"]], "domains": {"a": ["o"], "b": ["o"]},
            "interp": {"a": {"O": ["o"]}}, "transitions": {"a>b": {"o": "o"}},
        }))
        code, out, _ = call(capsys, "th-check", "--sheaf", str(f))
        assert code == 1 and out.startswith("INVALID homomorphism")

    def test_th_check_malformed(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"nodes": ["a", "b"], "order": [["a", "b"]], "domains": {"a": ["o"], "b": ["o"]}}))
        assert call(capsys, "th-check", "--sheaf", str(f))[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "intck", "fmt", "~(p & q)"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "~(p & q)\n"
