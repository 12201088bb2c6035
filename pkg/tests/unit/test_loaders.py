import json

import numpy as np
import pytest

from moment_bounds.errors import InputFormatError, InvalidFunctional
from moment_bounds.loaders import (
    as_pairs,
    load_matrix_or_spectrum,
    load_sample,
    parse_functional,
    parse_matrix,
    parse_polynomial,
    parse_sample,
)


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


# ================
# SAMPLES
# ================
@pytest.mark.unit
@pytest.mark.moments
def test_parse_sample_defaults_to_equal_weights():
    loaded = parse_sample({"values": [1, 2, 3, 4]})
    assert loaded.sample.weights == (0.25, 0.25, 0.25, 0.25)
    assert loaded.interval is None


@pytest.mark.unit
@pytest.mark.moments
def test_parse_sample_interval():
    loaded = parse_sample({"values": [0.5], "interval": [0, 1]})
    assert (loaded.interval.m, loaded.interval.M) == (0.0, 1.0)


@pytest.mark.unit
@pytest.mark.moments
@pytest.mark.parametrize(
    "data",
    [
        {},
        {"values": []},
        {"values": ["a"]},
        {"values": [1], "interval": [0, 1, 2]},
    ],
    ids=["no-values", "empty", "non-numeric", "interval-arity"],
)
def test_parse_sample_rejects(data):
    with pytest.raises(InputFormatError):
        parse_sample(data)


@pytest.mark.unit
@pytest.mark.moments
def test_csv_single_column(tmp_path):
    path = _write(tmp_path, "s.csv", "# value\n1\n2\n3\n")
    loaded = load_sample(path)
    assert loaded.sample.values == (1.0, 2.0, 3.0)
    assert loaded.sample.equal_weights


@pytest.mark.unit
@pytest.mark.moments
def test_csv_forced_on_other_suffix(tmp_path):
    path = _write(tmp_path, "s.dat", "0,0.5\n1,0.5\n")
    assert load_sample(path, fmt="csv").sample.values == (0.0, 1.0)


@pytest.mark.unit
@pytest.mark.moments
def test_csv_too_many_columns(tmp_path):
    path = _write(tmp_path, "s.csv", "1,0.5,9\n2,0.5,9\n")
    with pytest.raises(InputFormatError):
        load_sample(path)


@pytest.mark.unit
@pytest.mark.moments
def test_unknown_format(tmp_path):
    with pytest.raises(InputFormatError):
        load_sample(_write(tmp_path, "s.json", {"values": [1]}), fmt="xml")


# ================
# MATRICES
# ================
@pytest.mark.unit
@pytest.mark.traces
def test_real_rows_and_complex_pairs_agree():
    rows = parse_matrix({"entries": [[2, 1], [1, 2]]})
    pairs = parse_matrix({"n": 2, "entries": [[2, 0], [1, 0], [1, 0], [2, 0]]})
    assert np.array_equal(rows.entries, pairs.entries)
    assert list(as_pairs(rows)) == [(2.0, 0.0), (1.0, 0.0), (1.0, 0.0), (2.0, 0.0)]


@pytest.mark.unit
@pytest.mark.traces
@pytest.mark.parametrize(
    "data",
    [
        {"entries": []},
        {"entries": [[1, 2], [3]]},
        {"n": 0, "entries": [[1, 0]]},
        {"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]},
        {"n": 1, "entries": [[1, 0, 0]]},
    ],
    ids=["empty", "ragged", "bad-n", "short", "not-pairs"],
)
def test_parse_matrix_rejects(data):
    with pytest.raises(InputFormatError):
        parse_matrix(data)


@pytest.mark.unit
@pytest.mark.traces
def test_spectrum_file_is_detected(tmp_path):
    loaded = load_matrix_or_spectrum(_write(tmp_path, "e.json", {"eigenvalues": [3, 1]}))
    assert loaded == [3.0, 1.0]


@pytest.mark.unit
@pytest.mark.traces
def test_top_level_array_is_rejected(tmp_path):
    with pytest.raises(InputFormatError):
        load_matrix_or_spectrum(_write(tmp_path, "e.json", [1, 2]))


# ================
# FUNCTIONALS
# ================
@pytest.mark.unit
@pytest.mark.traces
def test_vector_functional_with_complex_entries():
    phi = parse_functional({"vector": [[0, 1], 0]})
    assert phi.n == 2
    assert phi.weight[0, 0].real == pytest.approx(1.0)
    assert phi.weight[1, 1].real == pytest.approx(0.0)


@pytest.mark.unit
@pytest.mark.traces
def test_zero_vector_functional():
    with pytest.raises(InvalidFunctional):
        parse_functional({"vector": [0, 0]})


# ================
# POLYNOMIALS
# ================
@pytest.mark.unit
@pytest.mark.poly
def test_polynomial_from_roots_keeps_roots():
    loaded = parse_polynomial({"roots": [1, 2]})
    assert loaded.polynomial.coefficients == (1.0, -3.0, 2.0)
    assert loaded.roots == (1.0, 2.0)


@pytest.mark.unit
@pytest.mark.poly
def test_polynomial_needs_a_key():
    with pytest.raises(InputFormatError):
        parse_polynomial({"degree": 3})
