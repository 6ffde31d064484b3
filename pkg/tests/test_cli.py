from __future__ import annotations

import json

import pytest

from su2pfaff.cli import ConfigError, load_params, main, parse_complex


@pytest.mark.parametrize("text,z", [
    ("i/3", 1j / 3), ("-i/3", -1j / 3), ("3i", 3j), ("-3i", -3j), ("i", 1j),
    ("[1, 2]", 1 + 2j), ([0.5, -1], 0.5 - 1j), ("1.5", 1.5), (2, 2), ("1+2i", 1 + 2j),
])
def test_parse_complex(text, z):
    assert parse_complex(text) == pytest.approx(z)


@pytest.mark.parametrize("bad", ["abc", "i/0", "[1]", [1, 2, 3], None, True, "nan"])
def test_parse_complex_rejects(bad):
    with pytest.raises(ConfigError):
        parse_complex(bad)


def _params(tmp_path, **over):
    data = {"a1": 0, "b1": 1, "c1": 0, "a2": 1, "b2": 0, "c2": 1, "k": 1}
    data.update(over)
    p = tmp_path / "params.json"
    p.write_text(json.dumps(data))
    return str(p)


def test_load_params(tmp_path):
    sp = load_params(_params(tmp_path, c2="i/3"))
    assert sp.c2 == pytest.approx(1j / 3)


def test_load_params_strict(tmp_path):
    p = tmp_path / "p.json"
    p.write_text('{"a2": 1}')
    with pytest.raises(ConfigError):
        load_params(str(p))
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_params(str(p))


def test_structure_command(tmp_path, capsys):
    assert main(["structure", "--params", _params(tmp_path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"][0]["expected"]["H"] == pytest.approx(2.0)
    assert main(["structure", "--params", _params(tmp_path, a1=0.5)]) == 1


def test_structure_bad_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[]")
    assert main(["structure", "--params", str(p)]) == 2
    assert main(["structure", "--params", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("argv,code", [
    (["weyl", "--a2", "1", "--c2", "0"], 0),
    (["weyl", "--a2", "1", "--c2", "i/3"], 0),
    (["weyl", "--a2", "0", "--c2", "1"], 2),
    (["gauss", "--case", "A"], 0),
    (["gauss", "--case", "B"], 0),
    (["gauss", "--case", "C"], 2),
    (["gauge", "--case", "A", "--sign", "plus", "--variant", "sign-reversed"], 0),
    (["gauge", "--case", "B", "--variant", "sign-reversed"], 2),
    (["gauge", "--case", "B", "--variant", "real", "--r", "0.4"], 0),
    (["verify-all", "--only", "c01_maurer_cartan", "--tol", "1e-30"], 1),
    (["verify-all", "--points", "0"], 2),
    (["nonsense"], 2),
    ([], 2),
])
def test_exit_codes(argv, code, capsys):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    assert got == code


def test_report_schema_and_determinism(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert main(["verify-all", "--only", "c01_maurer_cartan,c09_gauss_curvature,c03_growth_vector",
                     "--points", "20", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert rep["schema"] == "1"
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names) and len(names) == 3
    for c in rep["checks"]:
        assert set(c) == {"name", "paper_anchor", "status", "max_residual", "expected", "observed", "runtime_ms"}
        assert c["runtime_ms"] is None
    assert rep["summary"] == {"total": 3, "passed": 3, "failed": 0}


def test_timing_and_markdown(capsys):
    assert main(["gauss", "--case", "A", "--timing", "--format", "markdown"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("| check |") and "runtime:" in out and "1/1 passed" in out


def test_weyl_reports_sign(capsys):
    assert main(["weyl", "--a2", "1", "--c2", "1"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"][0]["status"] == "pass"
