import json

import numpy as np
import pytest

from polyadic.cli import main
from polyadic.errors import ParseError
from polyadic.io import dumps, load, parse_polyadic, polyadic_to_json, system_to_json
from polyadic.polyadic import derive_theta
from polyadic.groups import cyclic_group
from polyadic.profinite import cyclic_pk, validate_system


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def z4_file(tmp_path, z4_alt):
    return _write(tmp_path / "z4.json", polyadic_to_json(z4_alt, "table"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_valid(capsys, z4_file):
    code, out, _ = run(capsys, "verify", z4_file)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert rep["info"]["reducible"] is False
    assert [c["name"] for c in rep["checks"]] == ["polyadic_axioms", "skew_elements", "dornte_identities"]


def test_verify_mutated(capsys, tmp_path, z4_alt):
    t = z4_alt.table.copy()
    t[1, 2, 3] = (t[1, 2, 3] + 1) % 4
    path = _write(tmp_path / "bad.json", {"arity": 3, "table": t.tolist()})
    code, out, err = run(capsys, "verify", path)
    rep = json.loads(out)
    assert code == 1
    assert rep["checks"][0]["axiom"] == "unique_solvability"
    assert "witness" in err


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{arity: 3")
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "absent.json"))[0] == 2
    ragged = _write(tmp_path / "ragged.json", {"arity": 3, "table": [[[0, 1], [1]], [[1, 0], [0, 1]]]})
    assert run(capsys, "verify", ragged)[0] == 2


def test_verify_hg_file(capsys, tmp_path):
    group = _write(tmp_path / "z4group.json", {"order": 4, "table": cyclic_group(4).table.tolist()})
    ok = _write(tmp_path / "hg.json", {"arity": 3, "hg": {"group": "z4group.json", "theta": [0, 3, 2, 1], "b": 0}})
    assert run(capsys, "verify", ok)[0] == 0
    bad = _write(tmp_path / "hgbad.json", {"arity": 3, "hg": {"group": "Z4", "theta": [0, 3, 2, 1], "b": 1}})
    code, out, _ = run(capsys, "verify", bad)
    assert code == 1 and json.loads(out)["checks"][0]["condition"] == "theta_fixes_b"


def test_verify_group_file(capsys, tmp_path):
    assert run(capsys, "verify", _write(tmp_path / "g.json", {"order": 2, "table": [[0, 1], [1, 0]]}))[0] == 0
    assert run(capsys, "verify", _write(tmp_path / "h.json", {"order": 2, "table": [[0, 1], [1, 1]]}))[0] == 1


def test_catalog_command(capsys, tmp_path):
    out_file = tmp_path / "cat.json"
    code, out, _ = run(capsys, "catalog", "--arity", "3", "--max-order", "2", "--out", str(out_file))
    rep = json.loads(out)
    assert code == 0 and rep["catalog"]["count"] == 2
    assert json.loads(out_file.read_text()) == rep


def test_suite_defaults_and_determinism(capsys):
    code, first, _ = run(capsys, "suite", "hom-equivalence")
    assert code == 0 and json.loads(first)["passed"]
    _, second, _ = run(capsys, "suite", "hom-equivalence")
    assert first == second


def test_suite_with_tower_file(capsys, tmp_path):
    t = tmp_path / "tower.json"
    code, _, _ = run(capsys, "tower", "--kind", "cyclic_pk", "--p", "2", "--depth", "3", "--sign", "-1",
                     "--b", "0", "--arity", "3", "--out", str(t))
    assert code == 0
    code, out, _ = run(capsys, "suite", "pro-x", "--input", str(t), "--class", "2-group")
    assert code == 0 and json.loads(out)["passed"]


def test_suite_errors(capsys, z4_file):
    assert run(capsys, "suite", "bogus")[0] == 2
    assert run(capsys, "suite", "pro-x", "--input", z4_file)[0] == 2
    assert run(capsys, "suite", "poln-closure", "--class", "perfect")[0] == 2
    assert run(capsys, "tower", "--p", "2", "--depth", "3", "--sign", "-1", "--b", "1")[0] == 2


def test_suite_failure_exit_code(capsys, tmp_path):
    s3 = _write(tmp_path / "s3.json", {"arity": 3, "hg": {"group": "S3"}})
    code, out, _ = run(capsys, "suite", "congruence-quotient", "--input", s3)
    assert code == 1
    rep = json.loads(out)
    failed = [c for c in rep["reports"][0]["checks"] if not c["passed"]]
    assert failed[0]["error"] == "IllDefined"


def test_pretty_and_timing(capsys, z4_file):
    code, out, _ = run(capsys, "--pretty", "--timing", "verify", z4_file)
    rep = json.loads(out)
    assert code == 0 and "timing_seconds" in rep and out.startswith("{\n")


def test_io_roundtrip(tmp_path, z4_alt):
    for form in ("table", "hg"):
        path = _write(tmp_path / f"{form}.json", polyadic_to_json(z4_alt, form))
        kind, P = load(path)
        assert kind == "polyadic" and P.same_operation(z4_alt)
    S = cyclic_pk(2, 2, -1, 0, 3)
    kind, S2 = load(_write(tmp_path / "sys.json", system_to_json(S)))
    assert kind == "system" and validate_system(S2)
    with pytest.raises(ParseError):
        parse_polyadic({"table": [0]})
    assert dumps({"b": np.int64(1), "a": (1, 2)}) == '{"a":[1,2],"b":1}'
