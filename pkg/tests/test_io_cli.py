import json

import pytest

from ipsupport.cli import main, rows_to_csv, run_bench
from ipsupport.errors import ParseError
from ipsupport.instances import primorial_instance, random_instance
from ipsupport.io import (
    dump_instance,
    instance_to_dict,
    load_instance,
    loads_instance,
    parse_solution_arg,
)
from ipsupport.model import Instance, Solution


def write_instance(tmp_path, rows, b, c, solution=None, metadata=None, name="inst.json"):
    path = tmp_path / name
    path.write_text(dump_instance(Instance.from_lists(rows, b, c), solution, metadata))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestRoundTrip:
    def test_small(self):
        inst = Instance.from_lists([[1, -2, 0]], [3], [0, 5, -1])
        text = dump_instance(inst, (3, 0, 7), {"note": "x"})
        again, sol, meta = loads_instance(text)
        assert again == inst and sol.x == (3, 0, 7) and meta == {"note": "x"}
        assert dump_instance(again, sol, meta) == text

    def test_large_primorial(self):
        p = primorial_instance(13, 1)
        assert p.instance.A.max_abs() > 10**14
        text = dump_instance(p.instance, p.witness, p.metadata())
        inst, sol, meta = loads_instance(text)
        assert inst == p.instance and sol == p.witness
        assert [int(v) for v in meta["lambda"]] == list(p.lam)

    def test_entries_are_strings(self):
        d = instance_to_dict(Instance.from_lists([[2**70]], [2**70], [1]))
        assert d["A"] == [[str(2**70)]] and d["schema_version"] == "1"

    def test_plain_json_numbers_accepted(self):
        inst, _, _ = loads_instance('{"schema_version": "1", "A": [[1, 2]], "b": [3], "c": [0, 0]}')
        assert inst.A.to_rows() == [[1, 2]]

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[]",
            '{"schema_version": "2", "A": [["1"]], "b": ["1"], "c": ["1"]}',
            '{"schema_version": "1", "A": [["1"]], "b": ["1"]}',
            '{"schema_version": "1", "A": [["1.5"]], "b": ["1"], "c": ["1"]}',
            '{"schema_version": "1", "A": [[true]], "b": ["1"], "c": ["1"]}',
            '{"schema_version": "1", "A": [["1", "2"], ["1"]], "b": ["1", "1"], "c": ["1", "1"]}',
            '{"schema_version": "1", "A": [["1"]], "b": ["1", "2"], "c": ["1"]}',
            '{"schema_version": "1", "A": [["1"]], "b": ["1"], "c": ["1"], "solution": ["1", "1"]}',
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            loads_instance(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_instance(tmp_path / "absent.json")


class TestSolutionArg:
    def test_inline_forms(self):
        assert parse_solution_arg("1,1,0").x == (1, 1, 0)
        assert parse_solution_arg('["2", 0]').x == (2, 0)

    def test_files(self, tmp_path):
        p = tmp_path / "z.json"
        p.write_text('["4", "0"]')
        assert parse_solution_arg(str(p)).x == (4, 0)
        q = write_instance(tmp_path, [[1, 1]], [2], [0, 0], solution=(1, 1))
        assert parse_solution_arg(q).x == (1, 1)

    def test_bad(self):
        with pytest.raises(ParseError):
            parse_solution_arg("1,x")


class TestAnalyze:
    def test_sum_row(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1, 1]], [2], [0, 0, 0])
        code, out = run(capsys, "analyze", f)
        r = json.loads(out)
        assert code == 0 and r["passed"]
        assert r["bounds"]["optimality"]["opt_bound_floor"] == 1

    def test_identity(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 0], [0, 1]], [1, 1], [0, 0])
        _, out = run(capsys, "analyze", f)
        assert json.loads(out)["bounds"]["optimality"]["opt_bound_floor"] == 2

    def test_rank_deficient_is_structured(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1], [2, 2]], [2, 4], [0, 0])
        code, out = run(capsys, "analyze", f)
        r = json.loads(out)
        assert code == 1 and r["error"]["type"] == "RankDeficient"
        assert r["rank"] == 1
        assert r["row_reduced_bounds"]["optimality"]["opt_bound_floor"] == 1

    def test_with_solution(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1, 1]], [2], [0, 0, 0], solution=(1, 1, 0))
        _, out = run(capsys, "analyze", f)
        sol = json.loads(out)["solution"]
        assert sol == {"support_size": 2, "feasible": True, "within_optimality_bound": False}

    def test_bad_file_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code, out = run(capsys, "analyze", str(bad))
        assert code == 2 and json.loads(out)["error"]["type"] == "ParseError"


class TestSparsifyCommand:
    def test_sparsified(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1, 1]], [2], [0, 0, 0])
        code, out = run(capsys, "sparsify", f, "--solution", "1,1,0")
        r = json.loads(out)
        assert code == 0 and r["outcome"]["tag"] == "Sparsified"
        assert r["outcome"]["support_size"] == 1 and r["final_bound"]["within_bound"]
        step = r["outcome"]["trace"][0]
        assert step["lambda"] == "1" and step["support_before"] == 2

    def test_improved_exits_one(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1]], [2], [1, 0])
        code, out = run(capsys, "sparsify", f, "--solution", "1,1")
        r = json.loads(out)
        assert code == 1 and r["outcome"]["tag"] == "Improved"
        assert r["outcome"]["solution"] == ["2", "0"] and r["outcome"]["objective"] == "2"

    def test_unbounded(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, -1]], [0], [1, 0])
        code, out = run(capsys, "sparsify", f, "--solution", "[1, 1]")
        r = json.loads(out)
        assert code == 1 and r["outcome"]["tag"] == "Unbounded"

    def test_infeasible_solution(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1]], [2], [0, 0])
        code, out = run(capsys, "sparsify", f, "--solution", "1,2")
        r = json.loads(out)
        assert code == 2 and r["error"]["type"] == "InfeasibleInput" and r["error"]["row"] == 0

    def test_solution_from_file_and_out(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1, 1]], [2], [0, 0, 0], solution=(1, 1, 0))
        dest = tmp_path / "rep.json"
        code, out = run(capsys, "sparsify", f, "--mode", "feasible", "--out", str(dest))
        assert code == 0 and out == ""
        assert json.loads(dest.read_text())["command"]["mode"] == "feasible"

    def test_missing_solution(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1]], [2], [0, 0])
        code, _ = run(capsys, "sparsify", f)
        assert code == 2


class TestGenerate:
    def test_primorial_k3(self, capsys):
        code, out = run(capsys, "generate", "--kind", "primorial", "--k", "3", "--m", "1")
        inst, sol, meta = loads_instance(out)
        assert code == 0 and inst.A.to_rows() == [[-15, 10, 6]]
        assert sol.x == (1, 1, 1) and meta["lambda"] == ["-1", "1", "1"]

    def test_primorial_block(self, tmp_path, capsys):
        dest = tmp_path / "p.json"
        code, _ = run(capsys, "generate", "--kind", "primorial", "--k", "2", "--m", "2",
                      "--n", "4", "--out", str(dest))
        inst, _, _ = load_instance(dest)
        assert code == 0 and inst.A.to_rows() == [[3, -2, 0, 0], [0, 0, 3, -2]]

    def test_random_is_reproducible(self, capsys):
        argv = ["generate", "--kind", "random", "--m", "2", "--n", "5", "--amax", "3", "--seed", "9"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second
        inst, x0, _ = loads_instance(first)
        assert (inst, x0) == random_instance(2, 5, 3, 9)

    def test_dimension_error(self, capsys):
        code, out = run(capsys, "generate", "--kind", "primorial", "--k", "3", "--m", "2", "--n", "5")
        assert code == 2 and json.loads(out)["error"]["type"] == "DimensionError"

    def test_missing_flags(self, capsys):
        code, _ = run(capsys, "generate", "--kind", "random", "--m", "2")
        assert code == 2


class TestVerify:
    def test_any_sign_primorial(self, tmp_path, capsys):
        p = primorial_instance(2, 1)
        f = tmp_path / "p.json"
        f.write_text(dump_instance(p.instance, p.witness, p.metadata()))
        code, out = run(capsys, "verify", str(f), "--any-sign", "--box", "5")
        r = json.loads(out)
        assert code == 0 and r["min_support_any_sign"] == 2 and r["expected_min_support"] == 2

    def test_any_sign_default_box(self, tmp_path, capsys):
        p = primorial_instance(3, 1)
        f = tmp_path / "p.json"
        f.write_text(dump_instance(p.instance, p.witness, p.metadata()))
        code, out = run(capsys, "verify", str(f), "--any-sign")
        assert code == 0 and json.loads(out)["command"]["box"] == 5

    def test_nonnegative(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 1, 1]], [2], [0, 0, 0])
        code, out = run(capsys, "verify", f, "--box", "2")
        r = json.loads(out)
        assert code == 0 and r["support_bound"]["min_support"] == 1
        assert r["support_bound"]["bound_floor"] == 1

    def test_default_box_from_positive_row(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, 2]], [4], [1, 1])
        _, out = run(capsys, "verify", f)
        assert json.loads(out)["command"]["box"] == 4

    def test_no_box_derivable(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, -1]], [0], [0, 0])
        code, _ = run(capsys, "verify", f)
        assert code == 2

    def test_budget_exceeded(self, tmp_path, capsys):
        f = write_instance(tmp_path, [[1, -1, 1, -1, 1]], [1], [0] * 5)
        code, out = run(capsys, "verify", f, "--box", "100", "--budget", "1000")
        r = json.loads(out)
        assert code == 2 and r["error"]["type"] == "BudgetExceeded"
        assert r["error"]["size"] == 101**5 and r["error"]["budget"] == 1000

    def test_budget_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("IPSUPPORT_BUDGET", "10")
        f = write_instance(tmp_path, [[1, -1, 1]], [1], [0] * 3)
        code, out = run(capsys, "verify", f, "--box", "5")
        assert code == 2 and json.loads(out)["error"]["budget"] == 10


class TestBench:
    def test_empty(self, capsys):
        code, out = run(capsys, "bench", "--count", "0")
        r = json.loads(out)
        assert code == 0 and r["count"] == 0 and r["failures"] == []

    def test_reproducible_bytes(self, tmp_path, capsys):
        outs = []
        for name in ("a", "b"):
            dest = tmp_path / f"{name}.json"
            code, _ = run(capsys, "bench", "--count", "25", "--seed", "4", "--out", str(dest))
            assert code == 0
            outs.append((dest.read_text(), dest.with_suffix(".csv").read_text()))
        (ja, ca), (jb, cb) = outs
        assert ca == cb
        assert json.loads(ja)["slack_histogram"] == json.loads(jb)["slack_histogram"]
        assert ja.replace("a.csv", "b.csv") == jb

    def test_timing_only_on_request(self, capsys):
        _, plain = run(capsys, "bench", "--count", "2")
        _, timed = run(capsys, "bench", "--count", "2", "--timing")
        assert "timing_seconds" not in json.loads(plain)
        assert "timing_seconds" in json.loads(timed)

    def test_rows_and_csv(self):
        report, rows = run_bench(10, 3, 7, 3, 1, 10**8)
        assert report["bound_passed"] == 10 and len(rows) == 10
        assert [r["index"] for r in rows] == list(range(10))
        text = rows_to_csv(rows)
        assert text.count("\n") == 11 and text.startswith("index,seed,m,n")


def test_solution_type_reused():
    # Solution equality is by value, which the round trip tests rely on
    assert Solution((1, 0)) == Solution([1, 0])
