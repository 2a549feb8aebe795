"""CLI: exit codes, output formats, form ingestion, budget override."""

from __future__ import annotations

import json

import pytest

from lieclassical import repmod
from lieclassical.cli import main
from lieclassical.fields import GF
from lieclassical.linalg import Mat


@pytest.fixture(autouse=True)
def restore_budget():
    saved = repmod.DEFAULT_BUDGET
    yield
    repmod.DEFAULT_BUDGET = saved


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_thm11_text(capsys):
    code, out, _ = run(
        capsys, "verify:thm1.1", "--field", "2", "--m", "4", "--form", "alternating"
    )
    assert code == 0
    assert "thm1.1 m=4" in out
    assert "✓" in out and "✗" not in out


def test_verify_odd_m_is_usage_error(capsys):
    code, out, err = run(
        capsys, "verify:thm1.1", "--field", "2", "--m", "7", "--form", "alternating"
    )
    assert code == 2
    assert "even" in err


def test_verify_wrong_field_is_usage_error(capsys):
    code, _, err = run(
        capsys, "verify:thm1.1", "--field", "3", "--m", "4", "--form", "alternating"
    )
    assert code == 2


def test_sl_series_over_q(capsys):
    code, out, _ = run(capsys, "verify:sl-series", "--field", "Q", "--m", "3")
    assert code == 0
    assert "sl simple" in out


def test_json_round_trips(capsys):
    code, out, _ = run(
        capsys,
        "verify:sl-series",
        "--field",
        "3",
        "--m",
        "2",
        "--output",
        "json",
    )
    assert code == 0
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_json_schema_fields(capsys):
    _, out, _ = run(
        capsys,
        "verify:thm1.2",
        "--field",
        "2",
        "--m",
        "3",
        "--form",
        "diag:1,1,1",
        "--output",
        "json",
    )
    d = json.loads(out)
    assert d["field"] == {"char": 2, "degree": 1}
    assert d["m"] == 3
    assert d["pass"] is True
    assert all(
        set(c) == {"label", "paper_ref", "expected", "computed", "pass", "method"}
        for c in d["claims"]
    )


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2
    assert "unknown command" in err


def test_unknown_verify_id(capsys):
    code, _, err = run(capsys, "verify:thm9.9", "--field", "2", "--m", "4")
    assert code == 2
    assert "thm9.9" in err


def test_series_command(capsys):
    code, out, _ = run(
        capsys, "series", "--field", "3", "--m", "4", "--form", "alternating"
    )
    assert code == 0
    assert "chain dims: 0 < " in out


def test_series_needs_finite_field(capsys):
    code, _, err = run(
        capsys, "series", "--field", "Q", "--m", "4", "--form", "alternating"
    )
    assert code == 2


def test_algebra_command(capsys):
    code, out, _ = run(
        capsys, "algebra", "--field", "7", "--m", "3", "--form", "diag:1,2,3"
    )
    assert code == 0
    assert "dim L = 3" in out


def test_weights_command(capsys):
    code, out, _ = run(
        capsys, "weights", "--field", "5", "--m", "4", "--form", "alternating"
    )
    assert code == 0
    assert "multiplicity" in out


def test_hom_command(capsys):
    code, out, _ = run(
        capsys, "hom", "--field", "7", "--m", "4", "--form", "alternating"
    )
    assert code == 0
    assert "dim Hom_L(V, V*) = 1" in out


def test_form_file_ingestion(tmp_path, capsys):
    path = tmp_path / "gram.txt"
    path.write_text(Mat.identity(GF(3), 3).to_text())
    code, out, _ = run(
        capsys, "algebra", "--field", "3", "--m", "3", "--form", f"file:{path}"
    )
    assert code == 0
    assert "dim L = 3" in out


def test_form_file_missing_names_path(capsys):
    code, _, err = run(
        capsys, "algebra", "--field", "3", "--m", "3", "--form", "file:/no/such.txt"
    )
    assert code == 2
    assert "/no/such.txt" in err


def test_form_file_malformed_names_path(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 3 3\n1 0 0\n")
    code, _, err = run(
        capsys, "algebra", "--field", "3", "--m", "3", "--form", f"file:{path}"
    )
    assert code == 2
    assert str(path) in err


def test_form_file_field_mismatch(tmp_path, capsys):
    path = tmp_path / "gram.txt"
    path.write_text(Mat.identity(GF(5), 2).to_text())
    code, _, err = run(
        capsys, "algebra", "--field", "3", "--m", "2", "--form", f"file:{path}"
    )
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "verify:sl-series",
        "--field",
        "3",
        "--m",
        "2",
        "--output",
        "json",
        "--out",
        str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["pass"] is True


def test_budget_flag_sets_cap(capsys):
    code, _, _ = run(
        capsys,
        "verify:sl-series",
        "--field",
        "3",
        "--m",
        "2",
        "--budget",
        "500000",
    )
    assert code == 0
    assert repmod.DEFAULT_BUDGET == 500000


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("LIECOMP_BUDGET", "123456")
    code, _, _ = run(capsys, "verify:sl-series", "--field", "3", "--m", "2")
    assert code == 0
    assert repmod.DEFAULT_BUDGET == 123456


def test_budget_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("LIECOMP_BUDGET", "lots")
    code, _, err = run(capsys, "verify:sl-series", "--field", "3", "--m", "2")
    assert code == 2
