import json
import subprocess
import sys

import pytest

from shiftlab.betti import BettiTable
from shiftlab.cli import run
from shiftlab.complexes import parse_complex
from shiftlab.ideals import parse_ideal

FIX_A = {"n": 4, "facets": [[2], [1, 3, 4]]}


@pytest.fixture
def fix_a(tmp_path):
    p = tmp_path / "fixA.json"
    p.write_text(json.dumps(FIX_A))
    return str(p)


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_betti_text(capsys, fix_a):
    code, out, _ = out_of(capsys, ["betti", fix_a, "--method", "ahh"])
    assert code == 0
    assert out == "       0 1 2\ntotal: 3 3 1\n    2: 3 3 1\n"


def test_betti_json_round_trips(capsys, fix_a):
    for method in ("ahh", "koszul"):
        code, out, _ = out_of(capsys, ["betti", fix_a, "--method", method, "--format", "json", "--field", "f:3"])
        t = BettiTable.from_document(json.loads(out))
        assert code == 0 and t.as_dict() == {(0, 2): 3, (1, 3): 3, (2, 4): 1}


def test_betti_of_inline_ideal(capsys):
    code, out, _ = out_of(capsys, ["betti", '{"n": 2, "generators": [[2, 0], [1, 1]]}', "--method", "ek"])
    assert code == 0 and "total: 2 1" in out


def test_shift_combinatorial(capsys, fix_a):
    code, out, _ = out_of(capsys, ["shift", fix_a, "--mode", "c", "--format", "json"])
    doc = json.loads(out)
    assert code == 0
    assert doc["complex"] == {"n": 4, "minimal_nonfaces": [[1, 2], [1, 3], [1, 4]]}
    assert doc["trace"] == {"steps": [[1, 2]], "nonface_counts": [3, 3]}
    assert parse_complex(doc["complex"]).identifier == "4:1,2;1,3;1,4"
    code, out, _ = out_of(capsys, ["shift", fix_a])
    assert "minimal nonfaces: {1,2} {1,3} {1,4}" in out and "trace: (1,2)" in out


@pytest.mark.parametrize("mode, field", [("s", "q"), ("e", "f:2^13"), ("c", "q")])
def test_shift_modes_agree(capsys, fix_a, mode, field):
    code, out, _ = out_of(capsys, ["shift", fix_a, "--mode", mode, "--field", field, "--format", "json"])
    assert code == 0
    assert json.loads(out)["complex"]["minimal_nonfaces"] == [[1, 2], [1, 3], [1, 4]]


def test_random_order(capsys, fix_a):
    code, out, _ = out_of(capsys, ["shift", fix_a, "--order", "random:3", "--format", "json"])
    assert code == 0 and json.loads(out)["complex"]["minimal_nonfaces"] == [[1, 2], [1, 3], [1, 4]]


def test_explicit_order(capsys, fix_a):
    code, out, _ = out_of(capsys, ["shift", fix_a, "--order", "[[2, 3], [1, 2]]", "--format", "json"])
    assert code == 0 and json.loads(out)["complex"]["minimal_nonfaces"] == [[1, 2], [1, 3], [1, 4]]
    code, _, err = out_of(capsys, ["shift", fix_a, "--order", "[[1, 9]]"])
    assert code == 2 and err.startswith("VertexOutOfRange:")
    code, _, err = out_of(capsys, ["shift", fix_a, "--order", "[oops"])
    assert code == 2 and err.startswith("ValueError:")


def test_classify(capsys, fix_a):
    code, out, _ = out_of(capsys, ["classify", fix_a, "--format", "json", "--primes", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["squarefree_stable"] and not doc["squarefree_strongly_stable"]
    assert doc["p_borel"] == {"2": False}


def test_gin_and_seed_fallback(capsys, fix_a, monkeypatch):
    code, out, _ = out_of(capsys, ["gin", fix_a])
    assert code == 0 and out.strip() == "(x1^2, x1*x2, x1*x3)"
    monkeypatch.setenv("SHIFTLAB_SEED", "11")
    code, out, _ = out_of(capsys, ["gin", fix_a, "--exterior", "--format", "json"])
    doc = json.loads(out)
    assert doc["seeds"] == ["11:0", "11:1", "11:2"]
    assert parse_ideal(doc) == parse_ideal({"n": 4, "faces": [[1, 2], [1, 3], [1, 4]]})
    code, out, _ = out_of(capsys, ["gin", fix_a, "--seed", "2", "--format", "json"])
    assert json.loads(out)["seeds"][0] == "2:0"


def test_enumerate(capsys):
    code, out, _ = out_of(capsys, ["enumerate", "--n", "3"])
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = out_of(capsys, ["enumerate", "--n", "4", "--format", "json"])
    docs = json.loads(out)
    assert len(docs) == 30 and all(parse_complex(d).to_document() == d for d in docs)


def test_verify_sweep(capsys):
    code, out, _ = out_of(capsys, ["verify", "--n", "3", "--exhaustive", "--fields", "q,f:2^13"])
    assert code == 0 and out.strip() == "6/6 pass"
    code, out, _ = out_of(capsys, ["verify", "--n", "3", "--random", "5", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"] == doc["total"] and doc["mode"] == "random"


def test_verify_failure_exit_code(capsys, monkeypatch):
    import shiftlab.verify as verify

    real = verify.verify_complex

    def broken(c, *args, **kwargs):
        rep = real(c, *args, **kwargs)
        rep.failure = {"check": "shift_generators", "where": "test", "detail": "forced"}
        return rep

    monkeypatch.setattr(verify, "verify_complex", broken)
    code, out, _ = out_of(capsys, ["verify", "--n", "2", "--random-orders", "0"])
    assert code == 1 and out.startswith("0/2 pass")


def test_explore(capsys):
    code, out, _ = out_of(capsys, ["verify", "--n", "4", "--explore-inequality", "3", "--format", "json"])
    assert code == 0 and len(json.loads(out)) == 3


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["betti"],
    ["betti", "x.json", "--method", "nope"],
    ["verify", "--n", "3", "--exhaustive", "--random", "4"],
])
def test_usage_errors(capsys, argv):
    code, _, err = out_of(capsys, argv)
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("argv, name", [
    (["betti", "/nonexistent.json"], "DocumentError"),
    (["betti", '{"n": 2, "facets": [[1]]}'], "MissingVertex"),
    (["betti", '{"n": 3, "faces": [[2, 3]]}', "--method", "ahh"], "NotSquarefreeStable"),
    (["gin", '{"n": 2, "generators": [[0, 1]]}'], "NotStable"),
    (["gin", '{"n": 2, "generators": [[2, 0]]}', "--field", "f:7"], "FieldTooSmall"),
    (["betti", '{"n": 2, "generators": [[2, 0]]}', "--field", "f:6"], "NonPrime"),
    (["verify", "--n", "7"], "NOutOfRange"),
    (["verify", "--n", "3", "--fields", "q,zz"], "DescriptorError"),
])
def test_error_names(capsys, argv, name):
    code, _, err = out_of(capsys, argv)
    assert code == 2 and err.startswith(name + ":")


def test_byte_identical_output(fix_a):
    cmd = [sys.executable, "-m", "shiftlab", "shift", fix_a, "--mode", "s", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
