import io

import numpy as np
import pytest

from sparsehard import FormatError, generate_set_system, toy_equality_mip, toy_xor_mip
from sparsehard.formats import (
    fmt,
    matrix_to_text,
    read_matrix,
    read_mip,
    read_setsystem,
    read_vector,
    write_matrix,
    write_mip,
    write_setsystem,
    write_vector,
)
from sparsehard.rng import substream


def test_fmt_round_trips_doubles():
    gen = substream(50)
    values = list(gen.standard_normal(200)) + [0.1, 1e-300, -1e17, 3.0, 44.375]
    for v in values:
        assert float(fmt(v)) == float(v)


def test_matrix_round_trip_bit_identical(tmp_path):
    gen = substream(51)
    B = gen.standard_normal((7, 5)) * np.exp(gen.standard_normal((7, 5)) * 5)
    path = tmp_path / "m.mtxt"
    write_matrix(B, str(path))
    back = read_matrix(str(path))
    assert np.array_equal(B, back)
    # and textual output is deterministic
    assert matrix_to_text(B) == matrix_to_text(back)


def test_vector_round_trip(tmp_path):
    y = substream(52).standard_normal(9)
    path = tmp_path / "v.vec"
    write_vector(y, str(path))
    assert np.array_equal(y, read_vector(str(path)))


def test_setsystem_round_trip(tmp_path):
    system = generate_set_system(4, 2, seed=5, universe_override=19)
    path = tmp_path / "s.ssys"
    write_setsystem(system, str(path))
    back = read_setsystem(str(path))
    assert back.num_sets == system.num_sets
    assert back.universe_size == system.universe_size
    assert back.ell == system.ell
    assert back.delta == system.delta
    assert np.array_equal(back.sets, system.sets)


def test_mip_round_trip(tmp_path):
    for mip in (toy_equality_mip(2, 3), toy_xor_mip()):
        path = tmp_path / "g.mip"
        write_mip(mip, str(path))
        back = read_mip(str(path))
        assert back == mip


def test_matrix_errors_name_lines():
    with pytest.raises(FormatError, match="line 2"):
        read_matrix(io.StringIO("2 2\n1.0\n1.0 2.0\n"))
    with pytest.raises(FormatError, match="line 3"):
        read_matrix(io.StringIO("2 2\n1.0 2.0\n1.0 oops\n"))
    with pytest.raises(FormatError, match="line 1"):
        read_matrix(io.StringIO("2\n"))
    with pytest.raises(FormatError, match="end of file"):
        read_matrix(io.StringIO("2 2\n1.0 2.0\n"))


def test_vector_errors_name_lines():
    with pytest.raises(FormatError, match="line 3"):
        read_vector(io.StringIO("2\n1.0\nbad\n"))
    with pytest.raises(FormatError, match="positive"):
        read_vector(io.StringIO("0\n"))


def test_setsystem_errors_name_lines():
    with pytest.raises(FormatError, match="line 2"):
        read_setsystem(io.StringIO("2 3 1 0\n01x\n011\n"))
    with pytest.raises(FormatError, match="line 3"):
        read_setsystem(io.StringIO("2 3 1 0\n010\n01\n"))
    with pytest.raises(FormatError, match="line 1"):
        read_setsystem(io.StringIO("2 3 1\n"))


def test_mip_errors_name_lines():
    with pytest.raises(FormatError, match="line 2"):
        read_mip(io.StringIO("1 1 1 1 1\n0\nUA 0\n"))
    with pytest.raises(FormatError, match="UA"):
        read_mip(io.StringIO("1 1 1 1 1\n0 0\nNOPE 0\n"))
    with pytest.raises(FormatError, match="duplicate"):
        read_mip(io.StringIO("1 1 1 1 2\n0 0\nUA 2\n0 0 0\n0 0 1\n"))
    with pytest.raises(FormatError, match="inconsistent"):
        read_mip(io.StringIO("1 1 1 1 1\n0 5\nUA 0\n"))


def test_blank_lines_are_skipped():
    B = read_matrix(io.StringIO("\n2 2\n\n1 2\n\n3 4\n\n"))
    assert np.array_equal(B, np.array([[1.0, 2.0], [3.0, 4.0]]))
