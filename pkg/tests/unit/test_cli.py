import json

import pytest

from moment_bounds.cli import build_parser, fixture_paths, fixture_report, main, sample_report
from moment_bounds.errors import ValueOutOfSupport
from moment_bounds.loaders import parse_sample, read_json
from moment_bounds.report import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION
from moment_bounds.sample_moments import SupportInterval
from tests.conftest import A1_ROWS


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return str(path)


# ================
# MOMENTS
# ================
@pytest.mark.cli
@pytest.mark.unit
def test_moments_json_input(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"values": [0, 0, 0, 1], "interval": [0, 1]})
    assert main(["moments", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("[sample]")
    assert "violations: 0" in out


@pytest.mark.cli
@pytest.mark.unit
def test_moments_csv_input(tmp_path, capsys):
    path = _write(tmp_path, "s.csv", "# value,weight\n0,0.25\n1,0.75\n")
    assert main(["moments", path, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["subject"] == "sample"
    assert payload["inputs"]["weights"] == [0.25, 0.75]
    assert payload["violations"] == 0


@pytest.mark.cli
@pytest.mark.unit
def test_moments_interval_flag(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"values": [0.2, 0.4]})
    assert main(["moments", path, "--interval", "0", "1", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["inputs"]["interval"] == [0.0, 1.0]


@pytest.mark.cli
@pytest.mark.unit
def test_moments_interval_must_hold_the_data(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"values": [0.2, 1.4]})
    assert main(["moments", path, "--interval", "0", "1"]) == EXIT_INPUT_ERROR
    assert "ValueOutOfSupport" in capsys.readouterr().err


@pytest.mark.cli
@pytest.mark.unit
def test_sample_report_rejects_narrow_interval():
    data = parse_sample({"values": [-1, 0.5]})
    with pytest.raises(ValueOutOfSupport) as excinfo:
        sample_report(data, SupportInterval(0, 1))
    assert excinfo.value.context["data_range"] == [-1.0, 0.5]


@pytest.mark.cli
@pytest.mark.unit
@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        {"values": []},
        {"values": [0.5], "weights": [0.7]},
        {"values": [2.0], "interval": [0, 1]},
        [1, 2, 3],
    ],
    ids=["malformed", "empty", "bad-weights", "outside-support", "not-an-object"],
)
def test_moments_bad_input(tmp_path, capsys, payload):
    path = _write(tmp_path, "bad.json", payload)
    assert main(["moments", path]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


@pytest.mark.cli
@pytest.mark.unit
def test_missing_file(tmp_path, capsys):
    assert main(["moments", str(tmp_path / "nope.json")]) == EXIT_INPUT_ERROR


# ================
# MATRIX / SPECTRUM
# ================
@pytest.mark.cli
@pytest.mark.unit
@pytest.mark.parametrize("flag", ["--paper-mode", "--rounded"])
def test_matrix_four_decimals(tmp_path, capsys, flag):
    path = _write(tmp_path, "a1.json", {"entries": A1_ROWS})
    assert main(["matrix", path, flag]) == EXIT_OK
    out = capsys.readouterr().out
    assert "3.8417" in out
    assert "7.1583" in out


@pytest.mark.cli
@pytest.mark.unit
@pytest.mark.parametrize(
    "command",
    [["moments", "s.json"], ["matrix", "a.json"], ["poly", "p.json"], ["suite"]],
    ids=["moments", "matrix", "poly", "suite"],
)
def test_four_decimal_flag_on_every_command(command):
    args = build_parser().parse_args(command + ["--paper-mode"])
    assert args.rounded is True
    assert build_parser().parse_args(command).rounded is False


@pytest.mark.cli
@pytest.mark.unit
def test_matrix_with_oracle_and_functional(tmp_path, capsys):
    path = _write(tmp_path, "a1.json", {"entries": A1_ROWS})
    w_path = _write(tmp_path, "w.json", {"vector": [1, 0, 0, 0]})
    code = main(["matrix", path, "--with-oracle", "--functional", w_path, "--json"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["subject"] == "functional"
    ids = [b["formula_id"] for b in payload["bounds"]]
    assert ids[-4:] == ["mgen5", "mgen8", "mgen9", "mgen10"]
    assert all(b["actual"] is not None for b in payload["bounds"] if b["target"] == "spread")


@pytest.mark.cli
@pytest.mark.unit
def test_complex_matrix_pairs(tmp_path, capsys):
    path = _write(tmp_path, "c.json", {"n": 2, "entries": [[2, 0], [0, 1], [0, -1], [2, 0]]})
    assert main(["matrix", path, "--with-oracle", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["info"]["lambda_min"] == pytest.approx(1.0)
    assert payload["info"]["lambda_max"] == pytest.approx(3.0)


@pytest.mark.cli
@pytest.mark.unit
def test_order_one_matrix_is_degenerate(tmp_path, capsys):
    path = _write(tmp_path, "one.json", {"entries": [[5]]})
    assert main(["matrix", path]) == EXIT_OK
    assert "degenerate" in capsys.readouterr().out


@pytest.mark.cli
@pytest.mark.unit
def test_spectrum_input(tmp_path, capsys):
    path = _write(tmp_path, "eigs.json", {"eigenvalues": [-1, -1, 0, 0, 0, 0, 0, 1, 1]})
    assert main(["matrix", path, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["subject"] == "spectrum"
    assert payload["violations"] == 0


@pytest.mark.cli
@pytest.mark.unit
def test_spectrum_rejects_functional(tmp_path, capsys):
    path = _write(tmp_path, "eigs.json", {"eigenvalues": [1, 2]})
    w_path = _write(tmp_path, "w.json", {"vector": [1, 0]})
    assert main(["matrix", path, "--functional", w_path]) == EXIT_INPUT_ERROR


@pytest.mark.cli
@pytest.mark.unit
def test_oracle_on_non_hermitian_matrix(tmp_path, capsys):
    path = _write(tmp_path, "a2.json", {"entries": [[1, 1], [0, 2]]})
    assert main(["matrix", path, "--with-oracle"]) == EXIT_INPUT_ERROR
    assert "NotHermitian" in capsys.readouterr().err


# ================
# POLYNOMIAL
# ================
@pytest.mark.cli
@pytest.mark.unit
def test_poly_from_roots(tmp_path, capsys):
    path = _write(tmp_path, "p.json", {"roots": [-1, -1, 0, 0, 0, 0, 0, 1, 1]})
    assert main(["poly", path, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    ids = [b["formula_id"] for b in payload["bounds"]]
    assert ids == ["pgen3", "pgen4", "pgen5", "pgen6", "pgen7", "pgen8"]
    assert all(b["actual"] is not None for b in payload["bounds"])


@pytest.mark.cli
@pytest.mark.unit
def test_poly_low_degree_is_diagnosed(tmp_path, capsys):
    path = _write(tmp_path, "p.json", {"coefficients": [1, 0, -1]})
    assert main(["poly", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "skipped pgen3/pgen4" in out
    assert "skipped pgen5-pgen8" in out


@pytest.mark.cli
@pytest.mark.unit
def test_poly_not_monic(tmp_path, capsys):
    path = _write(tmp_path, "p.json", {"coefficients": [2, 0, -1]})
    assert main(["poly", path]) == EXIT_INPUT_ERROR
    assert "NotMonic" in capsys.readouterr().err


# ================
# OUTPUT
# ================
@pytest.mark.cli
@pytest.mark.unit
def test_json_output_is_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"values": [0.1, 0.4, 0.9], "weights": [0.2, 0.5, 0.3]})
    main(["moments", path, "--json"])
    first = capsys.readouterr().out
    main(["moments", path, "--json"])
    assert capsys.readouterr().out == first


@pytest.mark.cli
@pytest.mark.unit
def test_verbose_flag_keeps_report_on_stdout(tmp_path, capsys):
    path = _write(tmp_path, "s.json", {"values": [1, 2, 3]})
    assert main(["-v", "moments", path]) == EXIT_OK
    assert capsys.readouterr().out.startswith("[sample]")


# ================
# SUITE
# ================
@pytest.mark.cli
@pytest.mark.unit
def test_bundled_suite_passes(capsys):
    assert main(["suite"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "erratum: mgen13" in out


@pytest.mark.cli
@pytest.mark.unit
def test_bundled_fixtures_are_found():
    names = {p.name for p in fixture_paths()}
    assert {"a1_matrix.json", "poly_nonic.json", "sample_m_m_m_M.json"} <= names


@pytest.mark.cli
@pytest.mark.unit
def test_suite_reports_reference_mismatch(tmp_path, capsys):
    fixture = {
        "name": "wrong reference",
        "kind": "spectrum",
        "input": {"eigenvalues": [1, 3]},
        "published": {"magen2": 2.5},
    }
    _write(tmp_path, "wrong.json", fixture)
    assert main(["suite", "--fixtures", str(tmp_path), "--json"]) == EXIT_VIOLATION
    payload = json.loads(capsys.readouterr().out)
    assert isinstance(payload, list) and len(payload) == 1
    assert payload[0]["failures"] == ["magen2: computed 3, reference 2.5"]


@pytest.mark.cli
@pytest.mark.unit
def test_missed_equality_is_a_failure():
    fixture = {
        "kind": "sample",
        "input": {"values": [0.2, 0.5, 0.6]},
        "options": {"interval": [0, 1]},
        "equalities": ["mge1"],
    }
    report = fixture_report(fixture)
    assert report.failures == ["mge1: expected equality not attained"]
    assert report.exit_code == EXIT_VIOLATION


@pytest.mark.cli
@pytest.mark.unit
def test_erratum_flags_bound():
    fixture = read_json(next(p for p in fixture_paths() if p.name == "a3_spectrum.json"))
    report = fixture_report(fixture)
    flagged = [b for b in report.bounds if b.flags]
    assert [b.formula_id for b in flagged] == ["mgen13"]
    assert report.failures == []
    assert report.exit_code == EXIT_OK
