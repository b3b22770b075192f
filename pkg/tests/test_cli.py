import json

import pytest

from kmgroups.cli import (
    EXIT_INVALID,
    EXIT_IO,
    EXIT_OK,
    EXIT_RELATION_FAILED,
    EXIT_WINDOW_EMPTY,
    main,
)

A2 = {"matrix": [[2, -1], [-1, 2]]}
B2 = {"matrix": [[2, -2], [-1, 2]]}
NOT_GCM = {"matrix": [[2, 1], [1, 2]]}


@pytest.fixture()
def a2_file(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps(A2))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_classify_ok(capsys, a2_file):
    code, out = run(capsys, ["classify", "--gcm", a2_file])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload == {"type": "finite", "simply_laced": True, "hyperbolic": False}


def test_classify_missing_file(capsys, tmp_path):
    code, _ = run(capsys, ["classify", "--gcm", str(tmp_path / "absent.json")])
    assert code == EXIT_IO


def test_classify_invalid_gcm(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(NOT_GCM))
    code, _ = run(capsys, ["classify", "--gcm", str(p)])
    assert code == EXIT_INVALID


def test_classify_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _ = run(capsys, ["classify", "--gcm", str(p)])
    assert code == EXIT_INVALID


def test_roots_command(capsys, a2_file):
    code, out = run(capsys, ["roots", "--gcm", a2_file, "--height", "5"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["count"] == 6
    assert payload["positive_roots"] == [[0, 1], [1, 0], [1, 1]]


def test_roots_rejects_not_simply_laced(capsys, tmp_path):
    p = tmp_path / "b2.json"
    p.write_text(json.dumps(B2))
    code, _ = run(capsys, ["roots", "--gcm", str(p), "--height", "3"])
    assert code == EXIT_INVALID


def test_roots_bad_height(capsys, a2_file):
    code, _ = run(capsys, ["roots", "--gcm", a2_file, "--height", "0"])
    assert code == EXIT_INVALID


def test_module_command(capsys, a2_file):
    code, out = run(
        capsys,
        ["module", "--gcm", a2_file, "--lambda", "1,1", "--depth", "4"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["lambda"] == [1, 1]
    assert sum(w["rank"] for w in payload["weights"]) == 8


def test_module_non_dominant_lambda(capsys, a2_file):
    code, _ = run(
        capsys,
        ["module", "--gcm", a2_file, "--lambda", "1,-1", "--depth", "3"],
    )
    assert code == EXIT_INVALID


def test_module_wrong_lambda_length(capsys, a2_file):
    code, _ = run(
        capsys,
        ["module", "--gcm", a2_file, "--lambda", "1", "--depth", "3"],
    )
    assert code == EXIT_INVALID


def test_module_max_basis_overflow(capsys, a2_file):
    code, _ = run(
        capsys,
        [
            "module", "--gcm", a2_file, "--lambda", "1,1",
            "--depth", "4", "--max-basis", "3",
        ],
    )
    assert code == EXIT_INVALID


def test_verify_ok(capsys, a2_file):
    code, out = run(
        capsys,
        ["verify", "--gcm", a2_file, "--lambda", "1,1", "--depth", "6"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert all(r["status"] == "verified" for r in payload["relations"])
    assert payload["kernel"]["subgroup_order"] == 1


def test_verify_window_empty_exit(capsys, a2_file):
    code, _ = run(
        capsys,
        ["verify", "--gcm", a2_file, "--lambda", "1,1", "--depth", "1"],
    )
    assert code == EXIT_WINDOW_EMPTY


def test_verify_failure_exit(capsys, a2_file, monkeypatch):
    import kmgroups.cli as cli
    import kmgroups.verifier as verifier

    real = verifier.relation_words

    def sabotage(rid, nodes, sign=1):
        lhs, rhs = real(rid, nodes, sign=sign)
        if rid == "R2":
            return lhs + [verifier._X(nodes[0])], rhs
        return lhs, rhs

    monkeypatch.setattr(verifier, "relation_words", sabotage)
    code, out = run(
        capsys,
        ["verify", "--gcm", a2_file, "--lambda", "1,1", "--depth", "4"],
    )
    assert code == EXIT_RELATION_FAILED
    payload = json.loads(out)
    statuses = {r["id"]: r["status"] for r in payload["relations"]}
    assert statuses["R2"] == "failed"
    assert statuses["R1"] == "verified"


def test_kernel_command(capsys, a2_file):
    code, out = run(
        capsys,
        ["kernel", "--gcm", a2_file, "--lambda", "1,1", "--depth", "4"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["kernel"]["subgroup_order"] == 1


def test_commutator_signs_command(capsys, a2_file):
    code, out = run(
        capsys,
        ["commutator-signs", "--gcm", a2_file, "--lambda", "1,1", "--depth", "4"],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [s["pair"] for s in payload["signs"]] == [[1, 2], [2, 1]]
    assert all(s["sign"] in (1, -1) for s in payload["signs"])


def test_word_command(capsys, a2_file):
    code, out = run(
        capsys,
        [
            "word", "--gcm", a2_file, "--lambda", "1,1",
            "--depth", "3", "--word", "X1(1) Y2(-1) S1",
        ],
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["word"] == "X1(1) Y2(-1) S1"
    assert payload["window"] >= 0
    assert payload["columns"]


def test_word_bad_syntax(capsys, a2_file):
    code, _ = run(
        capsys,
        [
            "word", "--gcm", a2_file, "--lambda", "1,1",
            "--depth", "3", "--word", "Q1(1)",
        ],
    )
    assert code == EXIT_INVALID


def test_out_file_and_determinism(tmp_path, a2_file, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for out in (out1, out2):
        code = main(
            [
                "verify", "--gcm", a2_file, "--lambda", "1,1",
                "--depth", "4", "--out", str(out),
            ]
        )
        assert code == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_out_file_unwritable(capsys, a2_file, tmp_path):
    code, _ = run(
        capsys,
        [
            "classify", "--gcm", a2_file,
            "--out", str(tmp_path / "no_dir" / "x.json"),
        ],
    )
    assert code == EXIT_IO
