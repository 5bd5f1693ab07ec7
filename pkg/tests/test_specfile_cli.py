import json
import math

import pytest

from lieentropy import SpecError, canonical_json, load_spec, parse_spec, spec_to_dict
from lieentropy.cli import main
from conftest import all_catalog_paths, catalog_path


def test_catalog_round_trips_byte_identical():
    paths = all_catalog_paths()
    assert len(paths) >= 9
    for path in paths:
        raw = open(path, encoding="utf-8").read()
        spec = load_spec(path)
        once = canonical_json(spec_to_dict(spec))
        assert once == raw, path
        again = canonical_json(spec_to_dict(parse_spec(json.loads(once))))
        assert again == once, path


def test_parse_diagnostics_are_positioned():
    with pytest.raises(SpecError) as err:
        parse_spec({"algebra": {"dim": 2, "brackets": [[0, 1, 5, 1]]}})
    assert "algebra.brackets[0]" in str(err.value)
    with pytest.raises(SpecError) as err:
        parse_spec(
            {
                "algebra": {"dim": 1, "brackets": []},
                "automorphism": {"matrix": [["nope"]]},
                "group": {"model": "torus"},
            }
        )
    assert "automorphism.matrix[0][0]" in str(err.value)
    with pytest.raises(SpecError) as err:
        parse_spec(
            {
                "algebra": {"dim": 1, "brackets": []},
                "automorphism": {"matrix": [[1]]},
                "group": {"model": "klein_bottle"},
            }
        )
    assert "group.model" in str(err.value)


def test_rational_strings_parse_exactly():
    spec = load_spec(catalog_path("heisenberg_sc"))
    assert spec.automorphism.exact[1][1] == pytest.approx(0.5)


def test_cli_check_ok_and_parse_error(tmp_path, capsys):
    assert main(["check", catalog_path("torus_cat")]) == 0
    bad = tmp_path / "broken.json"
    bad.write_text("{nope")
    assert main(["check", str(bad)]) == 64
    missing = tmp_path / "missing.json"
    assert main(["check", str(missing)]) == 64


def test_cli_check_reports_broken_jacobi(tmp_path, capsys):
    bad = {
        "name": "bad",
        "algebra": {"dim": 3, "brackets": [[0, 1, 2, 1], [0, 2, 0, 1], [1, 2, 1, 1]]},
        "automorphism": {"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
        "group": {"model": "simply_connected", "flags": {"simply_connected": True, "solvable": True}},
    }
    path = tmp_path / "bad_jacobi.json"
    path.write_text(json.dumps(bad))
    assert main(["check", str(path)]) == 1
    err = capsys.readouterr()
    assert "jacobi" in (err.out + err.err).lower()


def test_cli_decompose_cat(capsys):
    assert main(["decompose", catalog_path("cat_map"), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dims"]["g_plus"] == 1
    assert data["dims"]["g_minus"] == 1
    assert data["dims"]["g_zero"] == 0
    assert data["grading_ok"] is True


def test_cli_decompose_identity(tmp_path, capsys):
    spec = {
        "name": "identity",
        "algebra": {"dim": 2, "brackets": []},
        "automorphism": {"matrix": [[1, 0], [0, 1]]},
        "group": {"model": "torus", "lattice": [[1, 0], [0, 1]], "flags": {"solvable": True}},
    }
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(spec))
    assert main(["decompose", str(path), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dims"]["g_zero"] == 2


def test_cli_entropy_exit_codes(tmp_path, capsys):
    assert main(["entropy", catalog_path("torus_cat"), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "exact"
    assert data["value"] == pytest.approx(math.log((3 + math.sqrt(5)) / 2), abs=1e-9)

    # no applicable flags: exact value unavailable, exit 2
    spec = {
        "name": "no_flags",
        "algebra": {"dim": 3, "basis": ["h", "e", "f"],
                     "brackets": [[0, 1, 1, 2], [0, 2, 2, -2], [1, 2, 0, 1]]},
        "automorphism": {"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, "1/2"]]},
        "group": {"model": "radical_levi_product"},
    }
    path = tmp_path / "no_flags.json"
    path.write_text(json.dumps(spec))
    assert main(["entropy", str(path)]) == 2


def test_cli_estimate_saturated_grid_exit_3(capsys):
    assert main(["estimate", catalog_path("torus_cat"), "--grid", "16"]) == 3


def test_cli_estimate_writes_csv(tmp_path, capsys):
    out = tmp_path / "rot.csv"
    code = main(["estimate", catalog_path("torus_rotation"), "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,eps,count,slope"


def test_cli_estimate_rejects_noncompact(capsys):
    assert main(["estimate", catalog_path("heisenberg_sc")]) == 1


def test_cli_compare_refuses_unreliable(capsys):
    assert main(["compare", catalog_path("torus_cat"), "--grid", "16"]) == 3
