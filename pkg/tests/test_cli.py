"""End-to-end command line behavior through main(argv)."""

import json

import pytest

from rigdiff.cli import main
from rigdiff.carrier import FreeMonoid, MonomialBasis
from rigdiff.normal import nf_from_obj, normalize
from rigdiff.text import parse


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNormalize:
    def test_basic(self, capsys):
        code, out, _ = run(capsys, "normalize", "x[2]+x[3]")
        assert code == 0 and out == "5*x[0]\n"

    def test_rank_two(self, capsys):
        code, out, _ = run(capsys, "normalize", "--carrier", "2",
                           "x[1,0]*x[0,1]")
        assert code == 0 and out == "x[0]*x[1]\n"

    def test_level_two(self, capsys):
        code, out, _ = run(capsys, "normalize", "--level", "2", "y[x[2]]")
        assert code == 0 and out == "2*y[x[0]]\n"

    def test_stdin_dash(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO("x[1] + x[1]\n"))
        code, out, _ = run(capsys, "normalize", "-")
        assert code == 0 and out == "2*x[0]\n"

    def test_structured_output_round_trips(self, capsys):
        code, out, _ = run(capsys, "normalize", "--format", "structured",
                           "(x[1]+1)*f(x[1])")
        assert code == 0
        carrier = FreeMonoid(1)
        expected = normalize(parse("(x[1]+1)*f(x[1])", carrier), carrier)
        assert nf_from_obj(carrier, json.loads(out)) == expected


class TestDerive:
    def test_operation_weight(self, capsys):
        code, out, _ = run(capsys, "derive", "--n", "2", "f(x[1])")
        assert code == 0 and out == "2*(1 ⊗ e[0])\n"

    def test_level_two(self, capsys):
        code, out, _ = run(capsys, "derive", "--level", "2", "--n", "3",
                           "g(y[1])")
        assert code == 0 and out == "3*(1 ⊗ 1)\n"

    def test_structured(self, capsys):
        code, out, _ = run(capsys, "derive", "--n", "0", "--format",
                           "structured", "x[1]*x[1]")
        assert code == 0
        obj = json.loads(out)
        assert obj["items"] == [{"coeff": 2, "key": [[{"gen": 0}], 0]}]

    def test_rejects_negative_index(self, capsys):
        code, _, err = run(capsys, "derive", "--n", "-1", "x[1]")
        assert code == 2 and "error:" in err


class TestMuAndEval:
    def test_mu_collapses(self, capsys):
        code, out, _ = run(capsys, "mu", "g(y[1])")
        assert code == 0 and out == "f(1)\n"

    def test_eval_catalog_rig(self, capsys):
        code, out, _ = run(capsys, "eval", "f(x[1])", "--target", "square",
                           "--phi", "3")
        assert code == 0 and out == "9\n"

    def test_eval_expression_rig(self, capsys):
        code, out, _ = run(capsys, "eval", "f(x[1])", "--target",
                           "x[1]*x[1]+1", "--phi", "2")
        assert code == 0 and out == "5\n"

    def test_eval_rank_two(self, capsys):
        code, out, _ = run(capsys, "eval", "--carrier", "2", "x[1,1]",
                           "--target", "identity", "--phi", "2,3")
        assert code == 0 and out == "5\n"

    def test_eval_phi_arity_check(self, capsys):
        code, _, err = run(capsys, "eval", "x[1]", "--target", "identity",
                           "--phi", "1,2")
        assert code == 2 and "--phi needs 1" in err

    def test_eval_unknown_target(self, capsys):
        code, _, err = run(capsys, "eval", "x[1]", "--target", "nosuchrig",
                           "--phi", "1")
        assert code == 2 and "error:" in err


class TestLaws:
    def test_small_run_text(self, capsys):
        code, out, _ = run(capsys, "laws", "--cases", "3")
        assert code == 0
        assert out.splitlines()[-1].endswith("all laws hold")

    def test_small_run_structured(self, capsys):
        code, out, _ = run(capsys, "laws", "--cases", "3", "--format",
                           "structured")
        assert code == 0
        obj = json.loads(out)
        assert obj["ok"] is True and obj["config"]["cases"] == 3

    def test_custom_n_values(self, capsys):
        code, out, _ = run(capsys, "laws", "--cases", "2", "--n-values", "0,5")
        assert code == 0 and out.splitlines()[-1].endswith("all laws hold")


class TestDistinctness:
    def test_default_range(self, capsys):
        code, out, _ = run(capsys, "distinctness")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "n=0: 0" and lines[10] == "n=10: 10"
        assert lines[-1] == "11 values, all distinct"

    def test_structured(self, capsys):
        code, out, _ = run(capsys, "distinctness", "--n-values", "0,2,5",
                           "--format", "structured")
        assert code == 0
        obj = json.loads(out)
        assert obj == {"pairs": [[0, 0], [2, 2], [5, 5]], "distinct": True}


class TestErrors:
    def test_parse_errors_exit_2(self, capsys):
        code, _, err = run(capsys, "normalize", "x[1")
        assert code == 2 and err.startswith("error:")

    def test_rank_mismatch_exits_2(self, capsys):
        code, _, err = run(capsys, "normalize", "--carrier", "2", "x[1]")
        assert code == 2 and "rank is 2" in err

    def test_missing_subcommand_is_an_argparse_error(self, capsys):
        with pytest.raises(SystemExit):
            main([])

    def test_module_entry_point(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "rigdiff", "normalize", "x[2]+x[3]"],
            capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "5*x[0]\n"
