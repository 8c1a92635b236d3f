import json

from polydaehee import series
from polydaehee.cli import main, table_from_json
from polydaehee.coeffring import rat
from polydaehee.families import FamilyParams, family_build, family_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- table ---------------------------------------------------------------------

def test_table_daehee_csv(capsys):
    code, out, _ = run(capsys, "table", "--family", "daehee", "--order", "3",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "0,1",
        "1,g - 1/2",
        "2,g^2 - 2*g + 2/3",
        "3,g^3 - 9/2*g^2 + 11/2*g - 3/2",
    ]


def test_table_text_header(capsys):
    code, out, _ = run(capsys, "table", "--family", "bernoulli", "--order", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# family=bernoulli")
    assert lines[1] == "P_0 = 1"
    assert lines[3] == "P_2 = g^2 - g + 1/6"


def test_table_bernoulli_json_constant_term(capsys):
    code, out, _ = run(capsys, "table", "--family", "bernoulli", "--order", "2",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    member2 = obj["members"][2]
    const_terms = [t for t in member2["terms"]
                   if (t["e_gamma"], t["e_eta"], t["e_omega"]) == (0, 0, 0)]
    assert const_terms[0]["coeff"] == "1/6"


def test_table_json_round_trip(capsys):
    # negative rationals with a slash need the --flag=value spelling
    code, out, _ = run(capsys, "table", "--family", "gabpdp", "--k", "2",
                       "--m", "2", "--a", "1", "--lambda=-3/2",
                       "--order", "6", "--format", "json")
    assert code == 0
    obj, members = table_from_json(out)
    assert obj["params"]["lambda"] == "-3/2"
    t = family_build(family_spec("gabpdp", FamilyParams(
        k=2, m=2, a=1, lam=rat(-3, 2))), 6)
    assert tuple(members) == t.members


def test_table_collapses_to_daehee(capsys):
    code1, out1, _ = run(capsys, "table", "--family", "gabpdp", "--k", "1",
                         "--m", "1", "--a", "0", "--eta", "0",
                         "--order", "4", "--format", "csv")
    code2, out2, _ = run(capsys, "table", "--family", "daehee",
                         "--order", "4", "--format", "csv")
    assert code1 == code2 == 0
    assert out1 == out2


def test_table_latex(capsys):
    code, out, _ = run(capsys, "table", "--family", "daehee", "--order", "1",
                       "--format", "latex")
    assert code == 0
    assert out.splitlines() == [
        "\\(P_{0} = 1\\)",
        "\\(P_{1} = \\gamma - \\frac{1}{2}\\)",
    ]


def test_table_deterministic(capsys):
    args = ("table", "--family", "gabpdp", "--k", "-2", "--m", "3", "--a", "2",
            "--lambda", "1/3", "--order", "8", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_table_unknown_family(capsys):
    code, _, err = run(capsys, "table", "--family", "nope", "--order", "2")
    assert code == 2
    assert "unknown family" in err


def test_table_order_cap(capsys):
    code, _, err = run(capsys, "table", "--family", "daehee", "--order", "65")
    assert code == 2
    assert "order must be between 0 and 64" in err


def test_table_rejects_decimal_lambda(capsys):
    code, _, err = run(capsys, "table", "--family", "gabpdp",
                       "--lambda", "0.5", "--order", "2")
    assert code == 2
    assert "rational" in err


def test_table_output_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "table", "--family", "daehee", "--order", "1",
                       "--format", "csv", "--output", str(path))
    assert code == 0 and out == ""
    assert path.read_text() == "0,1\n1,g - 1/2\n"


# -- eval ------------------------------------------------------------------------

def test_eval_daehee_root(capsys):
    code, out, _ = run(capsys, "eval", "--family", "daehee", "--n", "1",
                       "--gamma", "1/2")
    assert code == 0 and out == "0\n"


def test_eval_euler_member_zero(capsys):
    code, out, _ = run(capsys, "eval", "--family", "euler", "--n", "0")
    assert code == 0 and out == "1\n"


def test_eval_apostol_number(capsys):
    code, out, _ = run(capsys, "eval", "--family", "apostol_bernoulli_a",
                       "--n", "1", "--a", "1", "--lambda", "2")
    assert code == 0 and out == "1\n"


def test_eval_missing_assignment(capsys):
    code, _, err = run(capsys, "eval", "--family", "daehee", "--n", "1")
    assert code == 2
    assert "GAMMA" in err


def test_eval_n_beyond_order(capsys):
    code, _, err = run(capsys, "eval", "--family", "daehee", "--n", "4",
                       "--order", "2")
    assert code == 2


# -- verify ----------------------------------------------------------------------

def test_verify_single_theorem_line(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "2.3", "--k", "2",
                       "--m", "1", "--a", "1", "--lambda", "2", "--order", "6")
    assert code == 0
    assert out.splitlines() == [
        "THM 2.3 k=2 m=1 a=1 λ=2 N=6: PASS",
        "PASSED 1/1",
    ]


def test_verify_lambda_minus_one_rejected(capsys):
    code, _, err = run(capsys, "verify", "--lambda", "-1", "--family",
                       "apostol_euler_based_poly_daehee")
    assert code == 2
    assert "lambda must not equal -1" in err


def test_verify_family_restriction(capsys):
    code, out, _ = run(capsys, "verify", "--family", "daehee", "--order", "4",
                       "--m", "1", "--lambda", "2")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("THM R5") for line in lines[:-1])


def test_verify_empty_restriction(capsys):
    # the euler family participates in no suite check
    code, _, err = run(capsys, "verify", "--family", "euler", "--order", "4")
    assert code == 2
    assert "no suite checks match" in err


def test_verify_unknown_theorem(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "9.9")
    assert code == 2


def test_verify_json_format(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "3.4", "--k", "1",
                       "--m", "1", "--a", "1", "--lambda", "1/3",
                       "--order", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 1 and data[0]["status"] == "pass"


def test_verify_failure_exit_code(capsys, monkeypatch, fresh_caches):
    monkeypatch.setattr(series, "guard_order", lambda spec, order: order)
    code, out, _ = run(capsys, "verify", "--theorem", "2.1", "--k", "1",
                       "--m", "1", "--a", "1", "--lambda", "2", "--order", "4")
    assert code == 1
    assert "FAIL" in out
    assert out.strip().splitlines()[-1] == "PASSED 0/1"


def test_verify_threads_env_validated(capsys, monkeypatch):
    monkeypatch.setenv("POLYDAEHEE_THREADS", "zero")
    code, _, err = run(capsys, "verify", "--theorem", "3.4", "--k", "1",
                       "--m", "1", "--a", "1", "--lambda", "2", "--order", "4")
    assert code == 2
    assert "POLYDAEHEE_THREADS" in err


def test_verify_deterministic(capsys):
    args = ("verify", "--theorem", "2.2", "--m", "1", "--a", "1",
            "--lambda", "2", "--order", "5")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_missing_subcommand_is_usage_error(capsys):
    code = main([])
    capsys.readouterr()
    assert code == 2
