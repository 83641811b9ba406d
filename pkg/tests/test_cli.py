import json
import math

import pytest

from mixrenewal.cli import main


TWO_ATOM_SPEC = {
    "atoms": [{"x": 0.25, "mass": 0.5}, {"x": 0.75, "mass": 0.5}],
}

HALFLINE_SPEC = {
    "domain": "halfline",
    "atoms": [{"x": 1.0, "mass": 0.5}, {"x": 3.0, "mass": 0.5}],
}


@pytest.fixture
def spec_file(tmp_path):
    def write(spec, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        return str(path)
    return write


def test_involute_golden(spec_file, capsys):
    rc = main(["involute", spec_file(TWO_ATOM_SPEC), "--grid", "5"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    atoms = {round(x, 6): mass for x, mass in out["atoms"]}
    assert atoms[0.0] == pytest.approx(0.375, abs=1e-12)
    assert atoms[0.5] == pytest.approx(0.25, abs=1e-12)
    assert atoms[1.0] == pytest.approx(0.375, abs=1e-12)
    assert out["total_mass"] == pytest.approx(1.0, abs=1e-10)
    assert out["roundtrip_residual"] < 1e-8


def test_involute_fixed_point_distance(spec_file, capsys):
    # the arcsine law is a fixed point of the involution
    spec = {"pieces": [{"family": "arcsine", "lo": 0.0, "hi": 1.0,
                        "params": {"v": 0.5}}]}
    rc = main(["involute", spec_file(spec), "--grid", "11"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["fixed_point_distance"] < 1e-8
    assert out["roundtrip_residual"] < 1e-8


def test_involute_stdin(spec_file, capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(TWO_ATOM_SPEC)))
    rc = main(["involute", "-", "--grid", "3"])
    assert rc == 0
    json.loads(capsys.readouterr().out)


def test_renewal_with_oracle(spec_file, capsys):
    rc = main(["renewal", spec_file(TWO_ATOM_SPEC), "--n-max", "10",
               "--oracle"])
    assert rc == 0
    lines = [l for l in capsys.readouterr().out.splitlines()
             if l and not l.startswith("#")]
    header, rows = lines[0], lines[1:]
    assert header.split(",")[:2] == ["N", "p_moment"]
    assert "abs_diff" in header
    assert len(rows) == 11
    for row in rows:
        assert float(row.split(",")[-1]) < 1e-10


def test_renewal_json_deterministic(spec_file, capsys):
    args = ["renewal", spec_file(TWO_ATOM_SPEC), "--n-max", "5", "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
    json.loads(first)


def test_polymer_summary(spec_file, capsys):
    rc = main(["polymer", spec_file(TWO_ATOM_SPEC), "--beta", "0.5",
               "--n-max", "5", "--json"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["beta_c"] == 0.0
    assert out["free_energy"] > 0.0
    assert out["free_energy"] == pytest.approx(math.log(out["x_beta"]),
                                               abs=1e-10)
    assert len(out["partition"]) == 6  # rows N = 0..5


def test_corrlen(spec_file, capsys):
    spec = {"pieces": [{"family": "arcsine", "lo": 0.0, "hi": 1.0,
                        "params": {"v": 0.5}}]}
    rc = main(["corrlen", spec_file(spec), "--b", "0.5", "--json"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["slope"] == pytest.approx(-0.5, abs=2e-2)


def test_continuous(spec_file, capsys):
    rc = main(["continuous", spec_file(HALFLINE_SPEC),
               "--x-grid", "0.5:2:4", "--json"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    rows = out["rows"]
    assert len(rows) == 4
    for row in rows:
        x = row["x"]
        assert row["intensity"] == pytest.approx(
            1.5 + 0.5 * math.exp(-2.0 * x), rel=1e-8)


def test_arcsine_summary(capsys):
    rc = main(["arcsine", "--v", "0.5", "--beta", str(math.log(2.0)),
               "--json"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["free_energy"] == pytest.approx(math.log(4.0 / 3.0),
                                               abs=1e-12)
    assert out["contact_fraction"] == pytest.approx(2.0 / 3.0, abs=1e-10)


def test_exit_code_validation(spec_file, capsys):
    # empty measure spec -> validation failure
    assert main(["involute", spec_file({"atoms": []})]) == 2
    capsys.readouterr()


def test_exit_code_missing_file(capsys):
    assert main(["involute", "/nonexistent/measure.json"]) == 2
    capsys.readouterr()


def test_exit_code_bad_tolerance(spec_file, capsys, monkeypatch):
    monkeypatch.setenv("RENEWAL_TOL", "not-a-number")
    assert main(["involute", spec_file(TWO_ATOM_SPEC)]) == 2
    capsys.readouterr()


def test_env_tolerance_tightening(spec_file, capsys, monkeypatch):
    # a generous tolerance still succeeds
    monkeypatch.setenv("RENEWAL_TOL", "0.5")
    assert main(["involute", spec_file(TWO_ATOM_SPEC), "--grid", "3"]) == 0
    capsys.readouterr()


def test_selftest_subset(capsys):
    rc = main(["selftest", "--criteria", "4"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "selftest: 1/1 passed" in out


def test_selftest_unknown_criterion(capsys):
    assert main(["selftest", "--criteria", "99"]) == 2
    capsys.readouterr()
