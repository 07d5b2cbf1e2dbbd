import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ritzbounds.errors import MatrixFormatError
from ritzbounds.matio import format_matrix, parse_matrix, read_matrix, write_matrix


def test_parse_real_with_comments():
    m = parse_matrix("# basis\n2 2 real\n1 0\n# middle\n0 1.5\n")
    assert np.array_equal(m, np.diag([1, 1.5]))


def test_parse_complex():
    m = parse_matrix("1 2 complex\n1 2 3 -4\n")
    assert np.array_equal(m, [[1 + 2j, 3 - 4j]])


@pytest.mark.parametrize("text,line", [
    ("2 2 real\n1 0\n0\n", 3),
    ("2 2 quaternion\n1 0\n0 1\n", 1),
    ("2 2 real\n1 x\n0 1\n", 2),
    ("2 2 real\n1 0\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(MatrixFormatError) as exc:
        parse_matrix(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_file_round_trip(tmp_path):
    m = np.array([[0.1, 1 / 3], [2e-300, -7.0]]) + 1j * np.array([[0, 1e-17], [0, 0]])
    write_matrix(tmp_path / "m.txt", m, comment="test")
    assert np.array_equal(read_matrix(tmp_path / "m.txt"), m)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(1, 4)),
              elements=st.floats(allow_nan=False, allow_infinity=False)),
       st.booleans())
def test_round_trip_is_exact(re, cplx):
    m = re + 1j * re[::-1] if cplx else re.astype(complex)
    assert np.array_equal(parse_matrix(format_matrix(m)), m)
