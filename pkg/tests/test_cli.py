import pytest

from theorycomb.cli import EXIT_NEG, EXIT_OK, EXIT_USAGE, main, run

PARAMS = "f: 1 0 0 1 1 0 1 0\nF: 1=1 2=2 3=1 4=inf 5=2\nh: 0 1\n"


@pytest.fixture
def params(tmp_path):
    p = tmp_path / "tables.txt"
    p.write_text(PARAMS)
    return str(p)


def test_decide():
    assert run(["decide", "--theory", "teq", "--expr", "(P 3)"]) == (EXIT_OK, "sat\n", "")
    assert run(["decide", "--theory", "teq", "--expr", "(and (P 2) (P 3))"])[:2] == (EXIT_NEG, "unsat\n")


def test_spectrum():
    assert run(["spectrum", "--theory", "torb2", "--expr", "(= (t a) a)"])[:2] == (EXIT_OK, "{1,2}\n")
    assert run(["spectrum", "--theory", "teq", "--expr", "(not (= x y))"])[1] == "co{1}\n"
    assert run(["spectrum", "--theory", "teq", "--expr", "(not (= x x))"])[:2] == (EXIT_NEG, "{}\n")


def test_witness():
    status, out, _ = run(["witness", "--theory", "teq", "--expr", "(P 1)"])
    assert status == EXIT_OK and out == "(P 1)\n"


def test_minmod():
    assert run(["minmod", "--theory", "teq", "--expr", "(P 3)"])[:2] == (EXIT_OK, "3\n")
    assert run(["minmod", "--theory", "tinf", "--expr", "(= x y)"])[1] == "ℵ0\n"
    assert run(["minmod", "--theory", "teq", "--expr", "(not (= x x))"])[:2] == (EXIT_NEG, "unsat\n")


def test_combine(params):
    argv = ["--params", params, "combine", "--engine", "gentle-cfs", "--t1", "tlen:3", "--t2", "tle"]
    assert run(argv + ["--expr", "(and (P 5) (not (= x y)))"])[:2] == (EXIT_OK, "sat\n")
    assert run(argv + ["--expr", "(and (P 5) (not (= x y)) (not (= x z)) (not (= y z)))"])[0] == EXIT_NEG


def test_combine_verbosity():
    argv = ["combine", "--engine", "minmod-infdec", "--t1", "tinf", "--t2", "tinfh", "--expr", "(P 4)"]
    assert run(argv)[1] == "sat\n"
    assert run(["--verbosity", "1"] + argv)[1] == "sat {}\n"
    assert run(["--verbosity", "2"] + argv)[1] == "sat {} ; minmod1 ℵ0\n"


def test_recover(params):
    status, out, _ = run(["--params", params, "recover", "--family", "tf-teq", "--upto", "8"])
    assert status == EXIT_OK and out == "1 0 0 1 1 0 1 0\nMATCH\n"
    status, out, _ = run(["--params", params, "recover", "--family", "tf-teq", "--oracle", "bruteforce", "--upto", "5"])
    assert status == EXIT_OK and out.endswith("MATCH\n")


def test_recover_respects_max_size(params):
    argv = ["--params", params, "--max-size", "4", "recover", "--family", "tf-teq", "--oracle", "bruteforce"]
    status, _, err = run(argv + ["--upto", "5"])
    assert status == EXIT_USAGE and "--max-size" in err


def test_oracle_check(params):
    status, out, _ = run(["--params", params, "--max-size", "5", "oracle-check", "--family", "tf-teq"])
    assert status == EXIT_OK and out.splitlines()[-1] == "AGREE 20/20"
    status, out, _ = run(["--params", params, "oracle-check", "--family", "tinf-tle"])
    assert status == EXIT_OK and out == "AGREE 5/5\n"


def test_batch_mode(tmp_path):
    batch = tmp_path / "cubes.txt"
    batch.write_text("; comment\n(P 3)\n(and (P 2) (P 3))\n(Q 1)\n")
    status, out, _ = run(["decide", "--theory", "teq", "--batch", str(batch)])
    lines = out.splitlines()
    assert lines[:2] == ["sat", "unsat"] and lines[2].startswith("error:")
    assert status == EXIT_USAGE


def test_batch_status_is_the_worst_line(tmp_path):
    batch = tmp_path / "cubes.txt"
    batch.write_text("(P 3)\n(and (P 2) (P 3))\n")
    assert run(["decide", "--theory", "teq", "--batch", str(batch)])[0] == EXIT_NEG


def test_formula_file(tmp_path):
    f = tmp_path / "phi.smt"
    f.write_text("(or (P 3)\n    (and (P 2) (P 3)))\n")
    assert run(["decide", "--theory", "teq", "--formula", str(f)])[:2] == (EXIT_OK, "sat\n")


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["decide", "--theory", "nosuch", "--expr", "(P 1)"], "unknown theory"),
        (["decide", "--theory", "teq", "--expr", "(= x"], "position"),
        (["--max-size", "9", "decide", "--theory", "teq", "--expr", "(P 1)"], "--max-size"),
        (["--params", "/nonexistent/tables", "decide", "--theory", "teq", "--expr", "(P 1)"], "error"),
        (["combine", "--engine", "no", "--t1", "teq", "--t2", "tinf", "--expr", "(P 1)"], "stablyInfinite"),
    ],
)
def test_usage_errors(argv, fragment):
    status, _, err = run(argv)
    assert status == EXIT_USAGE and fragment in err


def test_bad_table_file_is_a_usage_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("f: 1 1\n")
    status, _, err = run(["--params", str(p), "decide", "--theory", "tf", "--expr", "(= (s x) x)"])
    assert status == EXIT_USAGE and "unbalanced" in err


def test_argparse_rejects_unknown_commands():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_main_writes_output(capsys):
    assert main(["decide", "--theory", "teq", "--expr", "(P 3)"]) == EXIT_OK
    assert capsys.readouterr().out == "sat\n"
