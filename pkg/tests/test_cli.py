import json
import subprocess
import sys

import numpy as np
import pytest

from normpar import Field, Structure, gen_perm_form, rank, rank_one_factor, structure_for, two_by_two_c_form
from normpar.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, main, parse_matrix


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None
    return _run


@pytest.fixture
def doc(tmp_path):
    counter = iter(range(1000))

    def _doc(body):
        p = tmp_path / f"doc{next(counter)}.json"
        p.write_text(json.dumps(body))
        return p
    return _doc


def real(rows):
    return {"field": "real", "rows": rows}


def test_check_identity(run, doc):
    code, out = run("check", doc(real(np.eye(3).tolist())), "--norm", "l1", "--mode", "tea")
    assert code == EXIT_OK
    assert out["verdict"] == "preserver" and out["class"]["name"] == "row_monomial"
    assert out["witness"] is None
    assert list(out) == ["verdict", "class", "witness", "norm", "mode", "n", "field", "tolerances"]
    assert out["tolerances"] == {"eps_eq": 1e-9, "eps_peak": 1e-9, "eps_rank": 1e-9}


def test_check_rank_one(run, doc):
    code, out = run("check", doc(real([[1, 1], [1, 1]])), "--norm", "l1", "--mode", "parallel")
    assert code == EXIT_OK and out["class"]["name"] == "rank_one"
    assert np.allclose(np.outer(out["class"]["v"], out["class"]["u"]), 1)


def test_check_witness(run, doc):
    code, out = run("check", doc(real([[1, 1, 0], [0, 0, 1], [0, 0, 0]])), "--norm", "l1", "--mode", "tea")
    assert code == EXIT_FAIL
    assert out["verdict"] == "not_preserver" and out["class"] is None
    w = out["witness"]
    assert w["x"] == [2, -1, 0] and w["y"] == [1, -2, 0]
    assert w["mu"] == [1.0, 0.0]
    assert w["validation"] == {"criterion": True, "definitional": True}


def test_check_complex_c_form(run, doc):
    m = doc({"field": "complex", "rows": [[1, [0, 0.5]], [[0, -0.5], 1]]})
    code, out = run("check", m, "--norm", "linf", "--mode", "parallel")
    assert code == EXIT_OK and out["class"]["name"] == "two_by_two_c"
    assert out["class"]["beta"] == [0.0, 0.5] and out["class"]["gamma"] == 1.0
    code, out = run("check", m, "--norm", "linf", "--mode", "tea")
    assert code == EXIT_FAIL and out["witness"]["validation"]["definitional"]


def test_witness_command_reports_search(run, doc):
    code, out = run("witness", doc(real(np.eye(2).tolist())), "--norm", "linf", "--mode", "tea", "--budget", "2000")
    assert code == EXIT_OK
    assert out["search"] == {"budget": 2000, "seed": 0, "counterexample": None}
    code, out = run("witness", doc(real([[1, 2], [3, 4]])), "--norm", "linf", "--mode", "tea")
    assert code == EXIT_FAIL and out["witness"] is not None


def vec(field, entries):
    return {"field": field, "entries": entries}


def test_pair_examples(run, doc):
    code, out = run("pair", doc(vec("real", [1, 2])), doc(vec("real", [-2, -4])), "--norm", "l1", "--mode", "parallel")
    assert code == EXIT_OK and out["holds"] and out["mu"] == [-1.0, 0.0]
    code, out = run("pair", doc(vec("real", [1, 0.5])), doc(vec("real", [0.3, 1])), "--norm", "linf",
                    "--mode", "parallel")
    assert code == EXIT_FAIL and not out["holds"] and not out["definitional"]
    code, out = run("pair", doc(vec("real", [1, 1])), doc(vec("real", [1, -1])), "--norm", "linf", "--mode", "tea")
    assert code == EXIT_OK and out["k"] == 1
    assert list(out)[:4] == ["holds", "mu", "k", "definitional"]


def test_pair_errors(run, doc):
    code, out = run("pair", doc(vec("real", [1, 2])), doc(vec("real", [1, 2, 3])), "--norm", "l1", "--mode", "tea")
    assert code == EXIT_ERROR and "error" in out
    code, out = run("pair", doc(vec("real", [1, 2])), doc(vec("complex", [1, [0, 1]])), "--norm", "l1",
                    "--mode", "tea")
    assert code == EXIT_ERROR


def test_fuzz_examples(run, doc):
    rng = np.random.default_rng(0)
    Q = np.zeros((4, 4))
    Q[np.arange(4), rng.permutation(4)] = rng.choice([-1.0, 1.0], 4)
    code, out = run("fuzz", doc(real(Q.tolist())), "--norm", "linf", "--mode", "tea", "--count", 10_000)
    assert code == EXIT_OK and out["checked"] == 10_000 and out["counterexample"] is None
    code, out = run("fuzz", doc(real([[1, 0.5], [0.5, 1]])), "--norm", "linf", "--mode", "tea", "--count", 10_000)
    assert code == EXIT_OK and out["counterexample"] is None
    m = doc({"field": "complex", "rows": [[1, [0, 0.5]], [[0, -0.5], 1]]})
    code, out = run("fuzz", m, "--norm", "linf", "--mode", "tea", "--count", 10_000)
    assert code == EXIT_FAIL
    ce = out["counterexample"]
    assert set(ce) == {"index", "x", "y", "tx", "ty"} and out["checked"] == ce["index"] + 1


def test_fuzz_is_byte_identical(doc, capsys):
    m = doc(real([[1, 1], [0, 1]]))
    outs = []
    for _ in range(2):
        main(["fuzz", str(m), "--norm", "l1", "--mode", "tea", "--count", "3000", "--seed", "17"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_seed_from_environment(run, doc, monkeypatch):
    m = doc(real([[1, 1], [0, 1]]))
    monkeypatch.setenv("NORMPAR_SEED", "42")
    _, out = run("fuzz", m, "--norm", "l1", "--mode", "parallel", "--count", 100)
    assert out["seed"] == 42
    monkeypatch.setenv("NORMPAR_SEED", "nope")
    code, _ = run("fuzz", m, "--norm", "l1", "--mode", "parallel", "--count", 100)
    assert code == EXIT_ERROR


@pytest.mark.parametrize("argv", [
    ["check", "{missing}", "--norm", "l1", "--mode", "tea"],
    ["check", "{bad}", "--norm", "l1", "--mode", "tea"],
    ["check", "{ok}", "--norm", "lp:1", "--mode", "tea"],
    ["check", "{ok}", "--norm", "lp:inf", "--mode", "tea"],
    ["check", "{ok}", "--norm", "l1", "--mode", "tea", "--tol", "0.5"],
    ["check", "{ok}", "--norm", "l1", "--mode", "sideways"],
    ["check", "{nonsquare}", "--norm", "l1", "--mode", "tea"],
    ["check", "{complex_as_real}", "--norm", "l1", "--mode", "tea"],
    ["fuzz", "{ok}", "--norm", "l1", "--mode", "tea", "--count", "0"],
    ["gen", "--family", "c2", "--n", "3"],
])
def test_input_errors_exit_two(argv, tmp_path, capsys):
    files = {
        "missing": tmp_path / "nope.json",
        "bad": tmp_path / "bad.json",
        "ok": tmp_path / "ok.json",
        "nonsquare": tmp_path / "ns.json",
        "complex_as_real": tmp_path / "cr.json",
    }
    files["bad"].write_text("{not json")
    files["ok"].write_text(json.dumps(real([[1, 0], [0, 1]])))
    files["nonsquare"].write_text(json.dumps(real([[1, 0, 0], [0, 1, 0]])))
    files["complex_as_real"].write_text(json.dumps(real([[1, [0, 1]], [0, 1]])))
    argv = [a.format(**files) for a in argv]
    assert main(argv) == EXIT_ERROR


def test_complex_document_accepts_plain_numbers():
    T = parse_matrix({"field": "complex", "rows": [[1, [2, -1]], [0.5, [0, 0]]]})
    assert T.dtype == np.complex128 and T[0, 1] == 2 - 1j and T[1, 0] == 0.5


@pytest.mark.parametrize("family,field,check", [
    ("genperm", "real", lambda T: gen_perm_form(T) is not None),
    ("genperm", "complex", lambda T: gen_perm_form(T) is not None),
    ("rankone", "real", lambda T: rank(T) == 1 and rank_one_factor(T) is not None),
    ("c2", "complex", lambda T: two_by_two_c_form(T) is not None),
    ("c2", "real", lambda T: two_by_two_c_form(T) is not None),
    ("identity", "real", lambda T: np.array_equal(T, np.eye(T.shape[0]))),
])
def test_gen_round_trip(run, doc, family, field, check):
    n = 2 if family == "c2" else 4
    code, out = run("gen", "--family", family, "--n", n, "--field", field, "--seed", 7)
    assert code == EXIT_OK and out["field"] == field
    T = parse_matrix(out)
    assert check(T)
    assert (T.dtype == np.complex128) == (field == "complex")
    code, again = run("gen", "--family", family, "--n", n, "--field", field, "--seed", 7)
    assert again == out


def test_gen_classifies_into_family(run, doc):
    from normpar import NormSpec, PairKind
    _, out = run("gen", "--family", "genperm", "--n", 3, "--seed", 7)
    code, verdict = run("check", doc(out), "--norm", "linf", "--mode", "tea")
    assert code == EXIT_OK and verdict["class"]["name"] == "generalized_permutation"
    _, out = run("gen", "--family", "rankone", "--n", 3, "--field", "complex")
    code, verdict = run("check", doc(out), "--norm", "l1", "--mode", "parallel")
    assert code == EXIT_OK and verdict["class"]["name"] == "rank_one"
    T = parse_matrix(out)
    assert structure_for(T, NormSpec.linf(), PairKind.PARALLEL).kind is Structure.RANK_ONE
    assert Field(out["field"]) is Field.COMPLEX


def test_module_entry_point(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(real([[1, 1], [1, 0.2]])))
    res = subprocess.run([sys.executable, "-m", "normpar", "check", str(p), "--norm", "l1", "--mode", "parallel"],
                         capture_output=True, text=True)
    assert res.returncode == EXIT_FAIL
    w = json.loads(res.stdout)["witness"]
    assert np.allclose(w["x"], [0.6, -1]) and np.allclose(w["y"], [1, -0.6])
