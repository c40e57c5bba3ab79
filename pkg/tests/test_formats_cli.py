import json

import pytest

from concur_homology import formats
from concur_homology.cli import LIMITS_ENV, fixtures_dir, main, run_captured
from concur_homology.errors import InputError

F = fixtures_dir()


def run_json(*argv):
    code, text = run_captured([*map(str, argv), "--json", "--no-timing"])
    return code, json.loads(text)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_system_roundtrip():
    a = formats.system_from_json(formats.read_json(F / "cube.json"))
    b = formats.system_from_json(formats.system_to_json(a))
    assert a.system == b.system and a.labels == b.labels and a.alphabet == b.alphabet


def test_unknown_field_rejected():
    doc = formats.read_json(F / "cube.json")
    doc["colour"] = "red"
    with pytest.raises(InputError, match="colour"):
        formats.system_from_json(doc)


def test_initial_must_be_listed():
    doc = formats.read_json(F / "single_state.json")
    doc["initial"] = "nowhere"
    with pytest.raises(InputError, match="initial"):
        formats.system_from_json(doc)


def test_parse_error_has_position(tmp_path):
    path = write(tmp_path, "bad.json", '{\n  "states": [,]\n}')
    with pytest.raises(InputError, match=r"bad\.json:2:\d+"):
        formats.read_json(path)


def test_matrix_and_dict_net_forms_agree():
    net = formats.net_from_json(formats.read_json(F / "petri_firing.json"))
    again = formats.net_from_json(formats.net_to_json(net))
    assert again.net.pre == net.net.pre and again.net.post == net.net.post
    assert again.net.m0 == net.net.m0


def test_matrix_net_shape_checked():
    doc = {"places": ["p"], "events": ["t"], "pre": [[1, 0]], "post": [[0]], "initial_marking": [1]}
    with pytest.raises(InputError, match="1x1"):
        formats.net_from_json(doc)


def test_scheme_roundtrip():
    k = formats.scheme_from_json({"facets": [["a", "b"], ["b", "c"]]})
    assert formats.scheme_from_json(formats.scheme_to_json(k)) == k
    with pytest.raises(InputError):
        formats.scheme_from_json({"facets": [[]]})


def test_span_apex_path_resolved():
    cube = formats.system_from_json(formats.read_json(F / "cube.json"))
    renamed = formats.system_from_json(formats.read_json(F / "cube_renamed.json"))
    span = formats.span_from_json(formats.read_json(F / "span_cube_renamed.json"), cube, renamed, F)
    assert span.apex.system == cube.system


def test_matrix_text_header_and_comments():
    m = formats.parse_matrix_text("d1 2 3\n# comment\n1 0 -1\n0 1 1\n")
    assert m.to_lists() == [[1, 0, -1], [0, 1, 1]]
    with pytest.raises(InputError, match="line 2"):
        formats.parse_matrix_text("1 2\n1 x\n")


def test_cli_validate_exit_codes():
    assert run_json("validate", F / "cube.json")[0] == 0
    code, doc = run_json("validate", F / "cube_broken_diamond.json")
    assert code == 1
    assert doc["inputs"].keys() == {"cube_broken_diamond.json"}


def test_cli_homology_text(capsys):
    assert main(["homology", str(F / "cube.json"), "--state", "001"]) == 0
    out = capsys.readouterr().out
    assert "H0 = Z^2" in out and "H_n = 0 for n >= 1" in out


def test_cli_dump_matrices(capsys):
    main(["homology", str(F / "cube.json"), "--dump-matrices"])
    out = capsys.readouterr().out
    assert "d1 3 3" in out and "# snf d1: 1 1 0" in out


def test_cli_unknown_state_fails(capsys):
    assert main(["homology", str(F / "cube.json"), "--state", "999"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_bisim_codes():
    code, doc = run_json("bisim", F / "trees_left.json", F / "trees_right.json", "--refute")
    assert code == 2 and doc["results"]["witness"] == ["a1"]
    assert run_json("bisim", F / "cube.json", F / "cube.json", "--refute")[0] == 3
    code, doc = run_json("bisim", F / "cube.json", F / "cube_renamed.json",
                         "--certify", F / "span_cube_renamed.json")
    assert code == 0 and doc["results"]["verdict"] == "Certified"


def test_cli_construct_output(tmp_path):
    out = tmp_path / "net.json"
    code, doc = run_json("construct", "sphere:1", "--verify", "-o", out)
    assert code == 0 and doc["results"]["verification"]["verified"]
    net = formats.net_from_json(formats.read_json(out))
    assert len(net.net.events) == 6


def test_cli_construct_from_scheme_file(tmp_path):
    path = write(tmp_path, "k.json", {"facets": [["a", "b"], ["b", "c"], ["a", "c"]]})
    code, doc = run_json("construct", "--scheme", path, "--verify")
    assert code == 0
    assert doc["results"]["verification"]["net"] == doc["results"]["verification"]["scheme"]


def test_cli_snf_text_and_json(tmp_path):
    code, doc = run_json("snf", F / "diag23.txt")
    assert code == 0 and doc["results"]["diagonal"] == [1, 6]
    path = write(tmp_path, "m.json", [[2, 0], [0, 0]])
    assert run_json("snf", path)[1]["results"]["diagonal"] == [2, 0]


def test_limits_env_and_flag(monkeypatch):
    path = F / "petri_homology.json"
    monkeypatch.setenv(LIMITS_ENV, "maxStates=2,maxTokens=5")
    assert run_json("homology", path)[0] == 1
    assert run_json("homology", path, "--limits", "maxStates=100,maxTokens=5")[0] == 0


def test_bad_limits_string(capsys):
    assert main(["homology", str(F / "petri_homology.json"), "--limits", "speed=3"]) == 1


def test_reproduce_matches_goldens():
    code, doc = run_json("reproduce")
    assert code == 0 and doc["results"]["failures"] == 0


def test_reproduce_reports_diffs(tmp_path):
    code, _ = run_json("reproduce", "--golden", tmp_path)
    assert code == 1
    assert run_json("reproduce", "--update", "--golden", tmp_path)[0] == 0
    assert run_json("reproduce", "--golden", tmp_path)[0] == 0
