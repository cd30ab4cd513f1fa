import json
import subprocess
import sys
from pathlib import Path

import pytest

from jmult import cli

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_multseq_text(capsys):
    code, out, _ = run(capsys, "multseq", DATA / "example_cubic.json")
    assert code == 0
    for piece in ("υ_1 = 2", "υ_2 = 5", "balance 12 = 12"):
        assert piece in out


def test_dual_json(capsys):
    code, out, _ = run(capsys, "dual", "--json", DATA / "example_cubic.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["dual_degree"] == 3 and doc["r"] == 1
    assert doc["smooth_term"] == 12 and doc["plucker_value"] == 3
    assert [c["value"] for c in doc["corrections"]] == [2, 5]


def test_dual_text_layout(capsys):
    code, out, _ = run(capsys, "dual", DATA / "example_cubic.json")
    assert code == 0
    assert "3·2^2 = 12" in out
    assert "(12 - 9) / 1 = 3" in out
    assert "assumed reduced and irreducible" in out


def test_hilbert_text(capsys):
    code, out, _ = run(capsys, "hilbert", DATA / "twisted_cubic.json")
    assert code == 0 and "dim 2, degree 3" in out


def test_hilbert_json(capsys):
    code, out, _ = run(capsys, "hilbert", "--json", DATA / "twisted_cubic.json")
    doc = json.loads(out)
    assert doc["dim"] == 2 and doc["degree"] == 3
    assert doc["hilbert_function"][:4] == [1, 4, 7, 10]


def test_gb_orders(capsys):
    code, out, _ = run(capsys, "gb", "--json", DATA / "twisted_cubic.json")
    assert code == 0 and len(json.loads(out)["basis"]) == 3
    code, out, _ = run(capsys, "gb", "--json", "--order", "lex", DATA / "twisted_cubic.json")
    assert code == 0 and json.loads(out)["order"] == "lex"


def test_report_schema(capsys):
    code, out, _ = run(capsys, "fiber", "--json", DATA / "veronese.json")
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == ["e_R", "dim", "ht_I", "delta", "spread", "contributions", "balance", "fiber_degree",
                         "r", "dual_degree", "reduction_bound", "seeds_agreed"]
    assert doc["contributions"] == [{"i": 0, "dim_before": 2, "value": 0}, {"i": 1, "dim_before": 1, "value": 0},
                                    {"i": 2, "dim_before": 0, "value": 4}]
    assert doc["balance"] == {"lhs": 2, "rhs": 2, "pass": True}
    assert doc["fiber_degree"] == 2 and doc["reduction_bound"] == 2 and doc["seeds_agreed"] is True


def test_multseq_json_has_null_fiber_fields(capsys):
    code, out, _ = run(capsys, "multseq", "--json", DATA / "example_cubic.json")
    doc = json.loads(out)
    assert doc["spread"] is None and doc["fiber_degree"] is None
    assert doc["balance"]["pass"] is True


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--json", DATA / "example_cubic.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["balance"]["lhs"] == 12 and doc["r"] == 1 and doc["spread"] == 3


def test_rationals_render_as_strings():
    from fractions import Fraction

    assert cli._num(Fraction(3, 2)) == "3/2"
    assert cli._num(Fraction(4, 2)) == 2
    assert cli._num(None) is None


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", DATA / "smooth_conic.json")
    assert code == 0
    assert out.count("pass") == 4


def test_flags_override_file(capsys):
    code, out, _ = run(capsys, "multseq", "--json", "--seed", "17", "--agree", "1", DATA / "veronese.json")
    assert code == 0
    code, out2, _ = run(capsys, "multseq", "--json", DATA / "veronese.json")
    assert json.loads(out)["contributions"] == json.loads(out2)["contributions"]


def test_char_override(capsys):
    code, out, _ = run(capsys, "hilbert", "--char", "101", DATA / "twisted_cubic.json")
    assert code == 0 and "dim 2, degree 3" in out
    code, _, err = run(capsys, "hilbert", "--char", "100", DATA / "twisted_cubic.json")
    assert code == 1 and "prime" in err


def test_parse_error_reports_line(capsys):
    code, out, err = run(capsys, "multseq", DATA / "bad_poly.json")
    assert code == 1 and out == ""
    assert "bad_poly.json:7" in err and "x*q" in err


def test_json_error_reports_line(capsys):
    code, out, err = run(capsys, "gb", DATA / "bad_json.json")
    assert code == 1 and out == ""
    assert "bad_json.json:4" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "gb", DATA / "nope.json")
    assert code == 1 and "nope.json" in err


def test_schema_errors(tmp_path, capsys):
    cases = [
        {"vars": [], "ideal": ["x"]},
        {"vars": ["x"], "ideal": "x"},
        {"vars": ["x"], "ideal": ["x"], "seed": "zero"},
        {"vars": ["x"], "ideal": ["x"], "colour": 1},
        {"vars": ["x"], "ideal": {"jacobian": "x"}},
        [1, 2],
    ]
    for k, doc in enumerate(cases):
        path = tmp_path / f"p{k}.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "multseq", path)
        assert code == 1 and out == "", doc


def test_non_equigenerated_is_input_error(tmp_path, capsys):
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps({"vars": ["x", "y"], "ideal": ["x", "y^2"]}))
    code, out, err = run(capsys, "multseq", path)
    assert code == 1 and out == "" and "degrees" in err


def test_dual_needs_a_hypersurface(capsys):
    code, _, err = run(capsys, "dual", DATA / "twisted_cubic.json")
    assert code == 1 and "jacobian_of" in err


def test_verdict_failure_exits_2(monkeypatch, capsys):
    import jmult.multseq as ms

    real = ms.multiplicity_sequence

    def skewed(R, I, seed, method="general"):
        rep = real(R, I, seed, method)
        rep.steps[-1] = type(rep.steps[-1])(rep.steps[-1].i, rep.steps[-1].dim_before, 99, True, "tampered")
        return rep

    monkeypatch.setattr(ms, "multiplicity_sequence", skewed)
    code, _, err = run(capsys, "multseq", DATA / "veronese.json")
    assert code == 2
    assert "seed 4" in err and "!=" in err


def test_seed_disagreement_exits_2(monkeypatch, capsys):
    import jmult.multseq as ms

    real = ms.multiplicity_sequence

    def flaky(R, I, seed, method="general"):
        if seed == 5:
            raise ms.NonGenericError("forced", seed)
        return real(R, I, seed, method)

    monkeypatch.setattr(ms, "multiplicity_sequence", flaky)
    code, out, err = run(capsys, "multseq", "--json", DATA / "veronese.json")
    assert code == 2
    assert json.loads(out)["seeds_agreed"] is False


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "jmult", "dual", "--json", str(DATA / "example_cubic.json")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["dual_degree"] == 3


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("gb", "hilbert", "multseq", "fiber", "dual", "check"):
        assert name in out
