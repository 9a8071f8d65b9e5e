"""End-to-end CLI behavior: output text, JSON payloads, exit codes."""

import json

import pytest

from ncl import analyze, parse_realization
from ncl.cli import main
from fixtures import example1_document

EXPECTED_CODE = '{"field": 2, "generators": [[1, 1, 0], [1, 0, 1]]}\n'
WRONG_CODE = '{"field": 2, "generators": [[1, 1, 1]]}\n'


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run


@pytest.fixture
def ex1_path(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(example1_document(), encoding="utf-8")
    return str(path)


@pytest.fixture
def conv_path(tmp_path, run):
    path = tmp_path / "conv.json"
    code, _, _ = run("build", "trellis", "--field", "2", "--n", "3",
                     "--gens", "110,011", "--spans", "0:2,1:2",
                     "--kind", "conventional", "-o", str(path))
    assert code == 0
    return str(path)


class TestBuild:
    def test_trellis_reproduces_pinned_document(self, run, tmp_path):
        out_path = tmp_path / "built.json"
        code, out, _ = run("build", "trellis", "--field", "2", "--n", "3",
                           "--gens", "110,011,101", "--spans", "0:1,1:2,2:0",
                           "-o", str(out_path))
        assert code == 0
        assert out == f"wrote {out_path}\n"
        assert out_path.read_text(encoding="utf-8") == example1_document()

    def test_trellis_to_stdout(self, run):
        code, out, _ = run("build", "trellis", "--field", "2", "--n", "3",
                           "--gens", "110,011,101", "--spans", "0:1,1:2,2:0")
        assert code == 0
        assert out == example1_document()

    def test_generator_build(self, run, tmp_path):
        path = tmp_path / "gen.json"
        code, _, _ = run("build", "generator", "--field", "2", "--n", "3",
                         "--gens", "110,011", "-o", str(path))
        assert code == 0
        rep = analyze(parse_realization(path.read_text(encoding="utf-8")))
        assert rep.observable and rep.controllable
        assert rep.realized_dim == 2

    def test_parity_check_build(self, run, tmp_path):
        path = tmp_path / "chk.json"
        code, _, _ = run("build", "parity-check", "--field", "2", "--n", "4",
                         "--checks", "1110,0111", "-o", str(path))
        assert code == 0
        rep = analyze(parse_realization(path.read_text(encoding="utf-8")))
        assert rep.observable and rep.controllable
        assert rep.realized_dim == 2

    def test_degenerate_span_spelled_deg(self, run, tmp_path):
        path = tmp_path / "tb.json"
        code, _, _ = run("build", "trellis", "--field", "2", "--n", "5",
                         "--gens", "10111,01100", "--spans", "2:0,deg",
                         "-o", str(path))
        assert code == 0
        rep = analyze(parse_realization(path.read_text(encoding="utf-8")))
        assert [d for _, d in rep.state_dims] == [2, 1, 1, 2, 2]

    def test_build_json_written_payload(self, run, tmp_path):
        path = tmp_path / "b.json"
        code, out, _ = run("build", "generator", "--field", "2", "--n", "2",
                           "--gens", "11", "-o", str(path), "--json")
        assert code == 0
        assert json.loads(out) == {"written": str(path)}

    def test_rejects_missing_spans(self, run):
        code, _, err = run("build", "trellis", "--field", "2", "--n", "3",
                           "--gens", "110")
        assert code == 2
        assert err.startswith("error:")

    def test_rejects_count_mismatch(self, run):
        code, _, err = run("build", "trellis", "--field", "2", "--n", "3",
                           "--gens", "110,011", "--spans", "0:1")
        assert code == 2
        assert "2 generators but 1 spans" in err

    def test_rejects_spans_on_generator_build(self, run):
        code, _, _ = run("build", "generator", "--field", "2", "--n", "3",
                         "--gens", "110", "--spans", "0:1")
        assert code == 2

    def test_rejects_bad_span_syntax(self, run):
        code, _, err = run("build", "trellis", "--field", "2", "--n", "3",
                           "--gens", "110", "--spans", "zap")
        assert code == 2
        assert "expected span" in err

    def test_rejects_non_digit_rows(self, run):
        code, _, err = run("build", "generator", "--field", "2", "--n", "3",
                           "--gens", "1x0")
        assert code == 2
        assert "digit string" in err


class TestAnalyze:
    def test_text_report(self, run, ex1_path):
        code, out, err = run("analyze", ex1_path)
        assert (code, err) == (0, "")
        assert out.splitlines() == [
            "field: GF(2)",
            "symbols: a0:1 a1:1 a2:1 (total 3)",
            "states: s0:1 s1:1 s2:1 (total 3)",
            "constraints: c0:2 c1:2 c2:2 (total 6)",
            "behavior dim: 3",
            "realized dim: 2",
            "unobservable dim: 1",
            "controllability defect: 0",
            "observable: false",
            "controllable: true",
            "state-trim: true",
            "branch-trim: true",
            "reduced: true",
            "cycle-free: false",
            "minimal: n/a (graph has cycles)",
            "locally reducible: false",
            "constraint c0 (dim 2): trim s0: ok; trim s1: ok; proper: ok",
            "constraint c1 (dim 2): trim s1: ok; trim s2: ok; proper: ok",
            "constraint c2 (dim 2): trim s2: ok; trim s0: ok; proper: ok",
        ]

    def test_json_report(self, run, ex1_path):
        code, out, _ = run("analyze", ex1_path, "--json")
        assert code == 0
        payload = json.loads(out)
        want = analyze(parse_realization(example1_document())).to_dict()
        assert payload == want

    def test_witnesses_in_text(self, run, conv_path):
        code, out, _ = run("analyze", conv_path)
        assert code == 0
        assert "proper: FAIL (codeword 1,0,0 lives on s2)" in out

    def test_multiple_files_get_headers(self, run, ex1_path, conv_path):
        code, out, _ = run("analyze", ex1_path, conv_path)
        assert code == 0
        assert f"== {ex1_path}" in out and f"== {conv_path}" in out

    def test_multiple_files_json_get_file_keys(self, run, ex1_path, conv_path):
        code, out, _ = run("analyze", ex1_path, conv_path, "--json")
        assert code == 0
        assert out.count('"file":') == 2


class TestBehaviorCommand:
    def test_text(self, run, ex1_path):
        code, out, _ = run("behavior", ex1_path)
        assert code == 0
        lines = out.splitlines()
        assert "behavior dim: 3" in lines
        assert "behavior blocks: a0 a1 a2 s0 s1 s2" in lines
        assert "realized dim: 2" in lines
        assert "realized blocks: a0 a1 a2" in lines
        words = [ln.strip() for ln in lines if ln.startswith("  ")]
        assert len(words) == 5
        assert all(set(w) <= {"0", "1"} for w in words)

    def test_json(self, run, ex1_path):
        code, out, _ = run("behavior", ex1_path, "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["behavior_dim"] == 3
        assert payload["realized_dim"] == 2
        assert len(payload["behavior_generators"]) == 3


class TestDualAndComponents:
    def test_dual_then_components(self, run, ex1_path, tmp_path):
        dual_path = tmp_path / "dual.json"
        code, out, _ = run("dual", ex1_path, str(dual_path))
        assert code == 0
        assert out == f"wrote {dual_path}\n"

        code, out, _ = run("components", str(dual_path))
        assert code == 0
        assert out.splitlines() == [
            "components: 2",
            "tail-biting: true",
            "reduced: true",
            "defect: 1",
            "uncontrollable: true",
            "component 0: s0=0 s1=0 s2=0",
            "component 1: s0=1 s1=1 s2=1",
        ]

    def test_components_on_controllable_primal(self, run, ex1_path):
        code, out, _ = run("components", ex1_path)
        assert code == 0
        assert "components: 1" in out
        assert "uncontrollable: false" in out

    def test_components_json(self, run, ex1_path, tmp_path):
        dual_path = tmp_path / "dual.json"
        run("dual", ex1_path, str(dual_path))
        code, out, _ = run("components", str(dual_path), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["components"] == 2
        assert payload["uncontrollable"] is True
        assert payload["warning"] is None
        assert {tuple(e["value"]) for e in payload["partition"]} == {(0,), (1,)}

    def test_dual_of_dual_round_trips(self, run, ex1_path, tmp_path):
        d1 = tmp_path / "d1.json"
        d2 = tmp_path / "d2.json"
        run("dual", ex1_path, str(d1))
        run("dual", str(d1), str(d2))
        assert d2.read_text(encoding="utf-8") == example1_document()


class TestReduceAndMinimize:
    def test_reduce_steps(self, run, ex1_path, tmp_path):
        out_path = tmp_path / "reduced.json"
        code, out, _ = run("reduce", ex1_path, str(out_path), "--steps")
        assert code == 0
        assert out.splitlines() == [
            "unobservability-trim s0: 1 -> 0",
            f"wrote {out_path}",
        ]
        rep = analyze(parse_realization(out_path.read_text(encoding="utf-8")))
        assert rep.observable
        assert rep.realized_dim == 2

    def test_reduce_json_steps(self, run, ex1_path, tmp_path):
        out_path = tmp_path / "reduced.json"
        code, out, _ = run("reduce", ex1_path, str(out_path), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["written"] == str(out_path)
        assert payload["steps"] == [{
            "kind": "unobservability-trim", "state": "s0", "constraint": None,
            "old_dim": 1, "new_dim": 0, "basis_change": [],
        }]

    def test_minimize_conventional(self, run, conv_path, tmp_path):
        out_path = tmp_path / "minimal.json"
        code, out, _ = run("minimize", conv_path, str(out_path), "--steps")
        assert code == 0
        assert out.splitlines() == [
            "merge s2: 2 -> 1 at c2",
            f"wrote {out_path}",
        ]
        rep = analyze(parse_realization(out_path.read_text(encoding="utf-8")))
        assert [d for _, d in rep.state_dims] == [0, 1, 1, 0]
        assert rep.minimal is True

    def test_minimize_rejects_cycles(self, run, ex1_path, tmp_path):
        code, _, err = run("minimize", ex1_path, str(tmp_path / "x.json"))
        assert code == 2
        assert "cycle-free" in err


class TestVerify:
    def test_behavior_against_brute_force(self, run, ex1_path):
        code, out, _ = run("verify", ex1_path)
        assert code == 0
        assert out == "ok: behavior matches brute force\n"

    def test_expected_code_match(self, run, ex1_path, tmp_path):
        exp = tmp_path / "code.json"
        exp.write_text(EXPECTED_CODE, encoding="utf-8")
        code, out, _ = run("verify", ex1_path, "--expect", str(exp))
        assert code == 0
        assert out == "ok: realized code matches the expected code\n"

    def test_expected_code_mismatch_exits_1(self, run, ex1_path, tmp_path):
        exp = tmp_path / "code.json"
        exp.write_text(WRONG_CODE, encoding="utf-8")
        code, out, _ = run("verify", ex1_path, "--expect", str(exp))
        assert code == 1
        assert out == "MISMATCH: word 011 separates the two\n"

    def test_verify_json(self, run, ex1_path, tmp_path):
        exp = tmp_path / "code.json"
        exp.write_text(WRONG_CODE, encoding="utf-8")
        code, out, _ = run("verify", ex1_path, "--expect", str(exp), "--json")
        assert code == 1
        assert json.loads(out) == {"ok": False, "counterexample": [0, 1, 1]}

    def test_budget_flag(self, run, ex1_path):
        code, _, err = run("verify", ex1_path, "--budget", "63")
        assert code == 2
        assert "exceed" in err

    def test_multiple_files_worst_exit(self, run, ex1_path, tmp_path):
        exp = tmp_path / "code.json"
        exp.write_text(EXPECTED_CODE, encoding="utf-8")
        code, out, _ = run("verify", ex1_path, ex1_path, "--expect", str(exp))
        assert code == 0
        assert out.count("ok:") == 2
        assert f"{ex1_path}: ok" in out


class TestBudgetEnv:
    def test_env_budget_applies(self, run, ex1_path, monkeypatch):
        monkeypatch.setenv("NCL_BUDGET", "63")
        code, _, err = run("verify", ex1_path)
        assert code == 2
        assert "exceed" in err

    def test_flag_overrides_env(self, run, ex1_path, monkeypatch):
        monkeypatch.setenv("NCL_BUDGET", "63")
        code, out, _ = run("verify", ex1_path, "--budget", "64")
        assert code == 0
        assert "ok" in out

    def test_env_must_be_integer(self, run, ex1_path, monkeypatch):
        monkeypatch.setenv("NCL_BUDGET", "lots")
        code, _, err = run("verify", ex1_path)
        assert code == 2
        assert "NCL_BUDGET must be an integer" in err


class TestExportDot:
    def test_stdout(self, run, ex1_path):
        code, out, _ = run("export-dot", ex1_path)
        assert code == 0
        assert out.startswith("graph realization {")
        assert out.rstrip().endswith("}")

    def test_to_file(self, run, ex1_path, tmp_path):
        path = tmp_path / "g.dot"
        code, out, _ = run("export-dot", ex1_path, "-o", str(path))
        assert code == 0
        assert out == f"wrote {path}\n"
        assert '"c2" -- "c0"' in path.read_text(encoding="utf-8")


class TestErrorMapping:
    def test_missing_file(self, run, tmp_path):
        code, _, err = run("analyze", str(tmp_path / "nope.json"))
        assert code == 2
        assert err.startswith("error:")

    def test_bad_json_document(self, run, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope", encoding="utf-8")
        code, _, err = run("analyze", str(path))
        assert code == 2
        assert "$" in err and "not valid JSON" in err

    def test_invalid_realization(self, run, tmp_path):
        doc = ('{"field": 2,'
               ' "symbols": [{"id": "a0", "dim": 1}, {"id": "a1", "dim": 1}],'
               ' "states": [],'
               ' "constraints": [{"id": "c0", "vars": ["a0"], "generators": [[1]]},'
               ' {"id": "c1", "vars": ["a1"], "generators": [[1]]}]}')
        path = tmp_path / "invalid.json"
        path.write_text(doc, encoding="utf-8")
        code, _, err = run("analyze", str(path))
        assert code == 2
        assert "disconnected" in err

    def test_json_error_envelope(self, run, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope", encoding="utf-8")
        code, _, err = run("analyze", str(path), "--json")
        assert code == 2
        payload = json.loads(err)
        assert payload["error"]["type"] == "document"
        assert "not valid JSON" in payload["error"]["message"]
