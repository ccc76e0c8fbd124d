import json
import subprocess
import sys

import pytest

from tpkit.cli import main
from tpkit.exact import ExactMatrix
from tpkit.fixtures import CONDENSATION_6, HILBERT_4
from tpkit.matrix_io import format_matrix, parse_matrix_text


@pytest.fixture
def hilbert(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(format_matrix(HILBERT_4))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_tp_holds_and_fails(capsys, hilbert):
    assert run(capsys, "check", "--tp", "4", hilbert)[0] == 0
    code, out, _ = run(capsys, "compound", "-k", "2", hilbert)
    assert code == 0
    c2 = parse_matrix_text(out)
    path = hilbert.replace("h.json", "c2.json")
    open(path, "w").write(out)
    code, out, _ = run(capsys, "check", "--tp", "3", "--format", "json", path)
    assert code == 1
    verdict = json.loads(out)
    assert verdict["holds"] is False and verdict["witness"]["value"].startswith("-")
    assert c2.shape == (6, 6)


def test_check_tn_and_tp2c(capsys, tmp_path):
    path = tmp_path / "g.csv"
    A = ExactMatrix.from_function(3, 3, lambda i, j: 2 ** (i * j))
    path.write_text(format_matrix(A, "csv"))
    assert run(capsys, "check", "--tn", "3", str(path))[0] == 0
    assert run(capsys, "check", "--tp2c", "2", str(path))[0] == 0
    assert run(capsys, "check", "--tp2c", "4", str(path))[0] == 1


def test_bad_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"data": [["1", "oops"]]}')
    code, _, err = run(capsys, "check", "--tp", "1", str(bad))
    assert code == 2 and "ParseError" in err
    assert run(capsys, "check", "--tp", "1", str(tmp_path / "none.json"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["check", str(bad)])
    assert info.value.code == 2


def test_compound_index_map(capsys, hilbert):
    code, out, _ = run(capsys, "compound", "-k", "2", "--index-map", hilbert)
    doc = json.loads(out)
    assert doc["row_sets"][3] == [2, 3]
    assert doc["matrix"]["data"][0][0] == "1/72"


def test_condense(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(format_matrix(CONDENSATION_6))
    code, out, _ = run(capsys, "condense", "-k", "1", str(path))
    D1 = parse_matrix_text(out)
    assert D1[5, 5] == 51610862484
    code, out, err = run(capsys, "condense", "--all", str(path))
    doc = json.loads(out)
    assert len(doc["stages"]) == 5 and doc["fallbacks"] == {}
    assert "fallback entries: 0" in err


def test_condense_identity_reports_fallback(capsys, tmp_path):
    path = tmp_path / "i.json"
    path.write_text(format_matrix(ExactMatrix.identity(4)))
    _, out, _ = run(capsys, "condense", "--all", "-q", str(path))
    doc = json.loads(out)
    assert doc["determinant"] == "1" and doc["fallbacks"]


def test_sylvester(capsys, hilbert):
    code, out, _ = run(capsys, "sylvester", "--alpha", "2,3", "--delta", "1,4", "--gamma", "1,4", hilbert)
    assert code == 0 and "holds = True" in out
    code, _, _ = run(capsys, "sylvester", "--alpha", "2", "--delta", "2", "--gamma", "1", hilbert)
    assert code == 2


def test_generate_factorize_lindstrom(capsys, tmp_path):
    out_path = tmp_path / "g.json"
    code, _, _ = run(capsys, "generate", "--size", "4", "--seed", "9", "--magnitude", "5", "-o", str(out_path), "-q")
    assert code == 0
    params_path = tmp_path / "g.params.json"
    params = json.loads(params_path.read_text())
    code, out, _ = run(capsys, "factorize", str(out_path))
    assert json.loads(out) == params
    A = parse_matrix_text(out_path.read_text())
    from tpkit.exact import minor

    code, out, _ = run(capsys, "lindstrom", "--rows", "1,3", "--cols", "2,4", str(params_path))
    assert out.strip() == str(minor(A, [1, 3], [2, 4]))


def test_generate_deterministic(capsys):
    a = run(capsys, "generate", "--size", "5", "--seed", "3")[1]
    b = run(capsys, "generate", "--size", "5", "--seed", "3")[1]
    assert a == b


def test_hankel(capsys):
    code, out, _ = run(capsys, "hankel", "--sequence", "1,1,2,1,1", "--check-tp")
    assert code == 1 and json.loads(out)["witness"]["value"] == "-4"
    code, out, _ = run(capsys, "hankel", "--sequence", "1,1,2,1,1", "--check-tp", "--format", "text")
    assert "fails" in out
    code, out, _ = run(capsys, "hankel", "--moments", "--nodes", "4", "--seed", "2", "--check-tp")
    assert code == 0
    code, out, _ = run(capsys, "hankel", "--sequence", "1,2,3")
    assert parse_matrix_text(out).shape == (2, 2)


def test_verify_paper_text_and_json(capsys):
    code, out, _ = run(capsys, "verify-paper", "--case", "exampleA")
    assert code == 0 and out.startswith("[PASS] exampleA")
    code, out, _ = run(capsys, "verify-paper", "--case", "remark37", "--trials", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["trials"] == 2


def test_verify_paper_all_deterministic(capsys):
    first = run(capsys, "verify-paper", "--case", "all", "--trials", "1", "--seed", "5", "--format", "json")
    second = run(capsys, "verify-paper", "--case", "all", "--trials", "1", "--seed", "5", "--format", "json")
    assert first == second and first[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tpkit", "hankel", "--sequence", "2,1,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["data"] == [["2", "1"], ["1", "1"]]
