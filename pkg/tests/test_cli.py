import json

import jsonlines
import pytest

from liecomm.basic_utils import resolve_seed
from liecomm.cli import (
    EXIT_BASIS_CHANGE,
    EXIT_GENERATING_FUNCTION,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    create_argparser,
    main,
)


@pytest.fixture(autouse=True)
def quiet_logs(monkeypatch):
    monkeypatch.delenv("LIECOMM_SEED", raising=False)
    monkeypatch.delenv("LIECOMM_LOGDIR", raising=False)


def write_definition(tmp_path, data, name="alg.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_argparser_defaults():
    args = create_argparser().parse_args(["validate"])
    assert args.algebra == "su3"
    assert args.max_degree == 6
    assert args.strict_k is False
    assert args.auto_stop is False
    args = create_argparser().parse_args(["commutant", "--max-degree", "3", "--strict-k", "--auto_stop"])
    assert args.max_degree == 3
    assert args.strict_k is True
    assert args.auto_stop is True
    args = create_argparser().parse_args(["commutant", "--strict-k", "--no-strict-k"])
    assert args.strict_k is False


def test_strict_k_takes_no_value():
    assert main(["commutant", "--algebra", "so3", "--strict-k", "True"]) == EXIT_USAGE


@pytest.mark.parametrize(
    "argv, env, expected",
    [([], None, 102), ([], "7", 7), (["--seed", "11"], "7", 11), (["--seed", "11"], None, 11)],
)
def test_seed_precedence(monkeypatch, argv, env, expected):
    if env is not None:
        monkeypatch.setenv("LIECOMM_SEED", env)
    args = create_argparser().parse_args(["validate"] + argv)
    assert resolve_seed(args) == expected
    assert args.seed == expected


def test_explicit_seed_reaches_the_report(monkeypatch, capsys):
    monkeypatch.setenv("LIECOMM_SEED", "abc")
    assert main(["validate", "--algebra", "so3", "--seed", "5", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["config"]["seed"] == 5


def test_validate_su3(capsys):
    assert main(["validate", "--algebra", "su3", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == EXIT_OK
    assert report["validation"] == []
    assert report["counts"]["invariant_count"] == 2
    assert report["counts"]["subalgebra_invariant_count"] == 1


def test_unknown_command_and_algebra(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["validate", "--algebra", "e8"]) == EXIT_USAGE
    assert main(["validate", "--algebra", "su3", "--subalgebra", "g2"]) == EXIT_USAGE
    assert main(["commutant", "--max-degree", "0"]) == EXIT_USAGE


def test_bad_seed_variable(monkeypatch):
    monkeypatch.setenv("LIECOMM_SEED", "abc")
    assert main(["validate", "--algebra", "so3"]) == EXIT_USAGE


def test_corrupted_definition_file(tmp_path):
    path = write_definition(tmp_path, '{"dim": 3, "names": ["X", "Y"')
    assert main(["validate", "--algebra", path]) == EXIT_VALIDATION


def test_jacobi_violation_in_definition_file(tmp_path, capsys):
    data = {
        "dim": 3,
        "names": ["X", "Y", "Z"],
        "brackets": [
            {"i": 1, "j": 2, "k": 2, "re": 1, "im": 0},
            {"i": 1, "j": 3, "k": 3, "re": 1, "im": 0},
            {"i": 2, "j": 3, "k": 1, "re": 1, "im": 0},
        ],
    }
    path = write_definition(tmp_path, data)
    assert main(["validate", "--algebra", path, "--format", "json"]) == EXIT_VALIDATION
    report = json.loads(capsys.readouterr().out)
    assert report["error"]["code"] == EXIT_VALIDATION
    assert {v["kind"] for v in report["validation"]} == {"jacobi"}


def test_so3_pipeline_outputs(tmp_path):
    out = tmp_path / "so3"
    argv = ["pipeline", "--algebra", "so3", "--max-degree", "4", "--format", "json", "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert (out / "args.json").exists()
    report = json.loads((out / "report.json").read_text())
    assert report["schema"] == "liecomm-report/1"
    assert report["representatives"] == "published"
    assert report["commutant"]["count"] == 2
    assert report["commutant"]["degrees"] == [1, 2]
    assert report["published_basis"]["count"] == 2
    assert report["published_basis"]["functional_independence"] == 2
    assert report["counts"]["n0"] == 0
    assert report["symmetrized"] is None
    with jsonlines.open(out / "degrees.jsonl") as reader:
        degrees = list(reader)
    assert [d["degree"] for d in degrees] == [1, 2, 3, 4]

    first = (out / "report.json").read_bytes()
    assert main(argv) == EXIT_OK
    assert (out / "report.json").read_bytes() == first


def test_report_is_deterministic(capsys):
    argv = ["commutant", "--algebra", "so3", "--max-degree", "3", "--format", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first


def test_text_report(capsys):
    assert main(["commutant", "--algebra", "so3", "--max-degree", "2"]) == EXIT_OK
    assert "title: so(3)" in capsys.readouterr().out


def test_empty_commutant_closes_to_nothing(capsys):
    assert main(["close", "--algebra", "su3", "--max-degree", "1", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["commutant"]["generators"] == []
    assert report["presentation"] is None


def test_missing_basis_change(capsys):
    argv = ["close", "--algebra", "so3", "--max-degree", "3", "--basis-change", "missing.basis", "--format", "json"]
    assert main(argv) == EXIT_BASIS_CHANGE
    report = json.loads(capsys.readouterr().out)
    assert "missing.basis" in report["error"]["message"]


def test_symmetrize_needs_cubic_shape():
    assert main(["symmetrize", "--algebra", "so3", "--max-degree", "3"]) == EXIT_GENERATING_FUNCTION


@pytest.mark.slow
def test_su3_pipeline(tmp_path):
    out = tmp_path / "su3"
    argv = ["pipeline", "--algebra", "su3", "--basis-change", "su3_so3.basis", "--format", "json", "--out", str(out)]
    assert main(argv) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["commutant"]["functional_independence"] == 5
    assert report["commutant"]["count"] == 6
    assert report["commutant"]["degrees"] == [2, 2, 3, 3, 4, 6]
    assert report["published_basis"]["count"] == 7
    assert report["published_basis"]["degrees"] == [2, 2, 3, 3, 4, 4, 6]
    assert [g["name"] for g in report["presentation"]["generators"]] == ["c1", "c2", "c3", "A", "B", "C"]
    assert report["symmetrized"]["check"] == []
