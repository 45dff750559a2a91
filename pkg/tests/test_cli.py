import pytest

from hyperset.cli import main

from .conftest import FIG1_TEXT


@pytest.fixture
def files(tmp_path):
    paths = {
        "fig1": FIG1_TEXT,
        "quine": "q = {q};",
        "cycle": "y = {z}; z = {y};",
        "empty": "e = {};",
        "nums": "n0 = {}; n1 = {n0}; n2 = {n0, n1}; s = {e};",
        "sets": "e = {}; s = {e};",
        "chain": "a = {b}; b = {c}; c = {b};",
        "bad": "x = {",
        "undef": "x = {u};",
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.hset"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_solve_quine(files, capsys):
    code, out = run(capsys, "solve", files["quine"], "--root", "q")
    assert code == 0 and out.out == "x0 = {x0};\n"


def test_solve_empty(files, capsys):
    code, out = run(capsys, "solve", files["empty"], "--root", "e")
    assert code == 0 and out.out == "x0 = {};\n"


def test_solve_figure1(files, capsys):
    code, out = run(capsys, "solve", files["fig1"], "--root", "x")
    assert code == 0 and out.out == "x0 = {x0};\n"
    code, out = run(capsys, "solve", files["fig1"], "--root", "x", "--multiset")
    assert code == 0
    assert out.out == "x0 = {x0, x1, x2};\nx1 = {x0};\nx2 = {x0, x1};\n"


def test_solve_dot(files, capsys):
    code, out = run(capsys, "solve", files["quine"], "--root", "q", "--format", "dot")
    assert code == 0 and "x0 -> x0;" in out.out


def test_solve_errors(files, capsys):
    assert run(capsys, "solve", files["bad"], "--root", "x")[0] == 1
    assert run(capsys, "solve", files["quine"], "--root", "nope")[0] == 2
    assert run(capsys, "solve", files["undef"], "--root", "x", "--strict")[0] == 1
    code, out = run(capsys, "solve", files["undef"], "--root", "x")
    assert code == 0 and out.out == "x0 = {x1};\nx1 = {};\n"
    assert run(capsys, "solve", "/nonexistent.hset", "--root", "x")[0] == 1


def test_eq(files, capsys):
    assert run(capsys, "eq", files["quine"], "q", files["cycle"], "y")[0] == 0
    assert run(capsys, "eq", files["quine"], "q", files["cycle"], "y", "--multiset")[0] == 0
    code, out = run(capsys, "eq", files["sets"], "e", files["sets"], "s")
    assert code == 3 and out.out.strip() == "not equal"


def test_member(files, capsys):
    code, out = run(capsys, "member", files["quine"], "q", "q")
    assert code == 0 and out.out.startswith("yes")
    code, out = run(capsys, "member", files["empty"], "e", "e")
    assert code == 3 and out.out.startswith("no")
    assert run(capsys, "member", files["nums"], "n1", "n2")[0] == 0
    assert run(capsys, "member", files["quine"], "q", "q", "--multiset")[0] == 1


def test_wf(files, capsys):
    code, out = run(capsys, "wf", files["nums"], "n2")
    assert code == 0 and out.out.strip() == "accessible"
    code, out = run(capsys, "wf", files["quine"], "q")
    assert code == 3 and out.out.strip() == "non-wellfounded"
    assert run(capsys, "wf", files["chain"], "a")[0] == 3


def test_dot(files, capsys):
    code, out = run(capsys, "dot", files["fig1"])
    assert code == 0 and out.out.count("->") == 6
    code, out = run(capsys, "dot", files["fig1"], "--root", "x")
    assert code == 0 and out.out.count("->") == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["solve", "f.hset"])
    assert e.value.code == 1


def test_axioms_default_passes(capsys):
    code, out = run(capsys, "axioms", "--seed", "3", "--cases", "15")
    assert code == 0
    assert "13/13 suites passed" in out.out
    assert "FAIL" not in out.out


def test_axioms_seed_reproducible(capsys):
    _, a = run(capsys, "axioms", "--seed", "9", "--cases", "5")
    _, b = run(capsys, "axioms", "--seed", "9", "--cases", "5")
    _, c = run(capsys, "axioms", "--seed", "10", "--cases", "5")
    assert a.out == b.out
    assert a.out.splitlines()[0] != c.out.splitlines()[0]


def test_axioms_injected_fault_reported(capsys):
    code, out = run(capsys, "axioms", "--seed", "3", "--cases", "15", "--inject-fault")
    assert code == 3
    assert "FAIL  tupling" in out.out


def test_max_exp_env_override(capsys, monkeypatch):
    monkeypatch.setenv("HYPERSET_MAX_EXP", "1")
    code, out = run(capsys, "axioms", "--seed", "3", "--cases", "15")
    assert code == 3 and "FAIL  exponentiation" in out.out
    monkeypatch.setenv("HYPERSET_MAX_EXP", "many")
    assert run(capsys, "axioms", "--cases", "1")[0] == 1
