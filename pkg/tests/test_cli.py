import json

import pytest

from qsp_kmatrix.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_catalog(capsys):
    assert main(["catalog"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["catalog"]
    assert {"A1_split", "A2_qsplit", "A3_X2", "B2_split"} <= {r["name"] for r in rows}


def test_datum_summary(capsys):
    assert main(["datum", "--datum", "A3_X2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] is True
    assert out["d"] == 4
    assert out["X"] == [2]
    assert out["theta"][0] == ["0", "-1", "-1"]


def test_inadmissible_datum_exits_one(tmp_path, capsys):
    path = _write_json(tmp_path / "bad.json", {"type": "A", "rank": 2, "X": [1]})
    assert main(["datum", "--datum", path]) == EXIT_FAILED
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] is False
    assert "theta" not in out


def test_malformed_json_exits_two(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"type\": ", encoding="utf-8")
    assert main(["datum", "--datum", str(path)]) == EXIT_USAGE
    assert "오류 (cli)" in capsys.readouterr().err


def test_unknown_datum_exits_two(capsys):
    assert main(["datum", "--datum", "E9_nothing"]) == EXIT_USAGE
    assert "E9_nothing" in capsys.readouterr().err


def test_quasik_writes_components(tmp_path):
    out = tmp_path / "qk.json"
    code = main(["quasik", "--datum", "A1_split", "--cutoff", "2", "--quiet",
                 "--cache-dir", str(tmp_path / "cache"), "--out", str(out)])
    assert code == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["quasik"]["cutoff"] == 2
    assert report["datum"]["name"] == "A1_split"


def test_quasik_with_bad_parameters_exits_one(tmp_path, capsys):
    params = _write_json(tmp_path / "params.json", {"c": {"1": "q^(-2)"}})
    assert main(["quasik", "--datum", "A1_split", "--params", params, "--cutoff", "2", "--quiet"]) == EXIT_FAILED
    assert "ParameterError" in capsys.readouterr().err


def test_negative_cutoff_exits_two():
    assert main(["quasik", "--datum", "A1_split", "--cutoff", "-1", "--quiet"]) == EXIT_USAGE


def test_verify_single_check(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--datum", "A1_split", "--cutoff", "2", "--check", "relations", "--quiet",
                 "--out", str(out)])
    assert code == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert {c["name"] for c in report["checks"]} == {"relations"}
    assert len(report["checks"]) == 2


def test_verify_naturality_on_pair(tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--datum", "A1_split", "--cutoff", "2", "--checks", "naturality", "--quiet",
                 "--out", str(out)])
    assert code == EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert [c["name"] for c in report["checks"]] == ["naturality", "reflection_via_fusion"]


def test_verify_unknown_check_exits_two():
    assert main(["verify", "--datum", "A1_split", "--checks", "bogus", "--quiet"]) == EXIT_USAGE


def test_argparse_rejects_unknown_choice():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--datum", "A1_split", "--check", "bogus"])
    assert exc.value.code == 2
