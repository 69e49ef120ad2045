import numpy as np
import pytest
from hypothesis import given, strategies as st

from ccbeam.channel import generate_channel_set
from ccbeam.codebook import beam_gain, build_dft_codebook, neighbors
from ccbeam.errors import ConfigurationError, DimensionError


def test_two_point_dft():
    cb = build_dft_codebook(2, 1)
    expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.allclose(cb.beams, expected)


@pytest.mark.parametrize("antennas,oversampling", [(2, 1), (4, 2), (32, 2), (7, 3)])
def test_beam_norms(antennas, oversampling):
    cb = build_dft_codebook(antennas, oversampling)
    assert cb.size == antennas * oversampling
    norms = np.sum(np.abs(cb.beams) ** 2, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-12)


def test_critical_sampling_orthogonality():
    cb = build_dft_codebook(4, 1)
    gram = cb.beams @ cb.beams.conj().T
    assert np.allclose(gram, np.eye(4), atol=1e-12)


def test_num_beams_override():
    cb = build_dft_codebook(32, 2, num_beams=16)
    assert cb.size == 16
    assert np.allclose(np.sum(np.abs(cb.beams) ** 2, axis=1), 1.0, atol=1e-12)


def test_invalid_construction():
    with pytest.raises(ConfigurationError):
        build_dft_codebook(0, 1)
    with pytest.raises(ConfigurationError):
        build_dft_codebook(4, 0)


def test_neighbors_wraparound():
    assert neighbors(0, 1, 8) == {7, 1}


def test_neighbors_radius_two():
    assert neighbors(3, 2, 8) == {1, 2, 4, 5}


def test_neighbors_degenerate_codebook():
    with pytest.raises(ConfigurationError):
        neighbors(0, 1, 2)


@given(st.integers(0, 15), st.integers(0, 15), st.integers(1, 7))
def test_neighbors_symmetry(i, j, radius):
    assert (j in neighbors(i, radius, 16)) == (i in neighbors(j, radius, 16))


def test_beam_gain_examples():
    h = [1, 1j]
    v = np.array([1, 1]) / np.sqrt(2)
    assert beam_gain(h, v, 4.0) == pytest.approx(4.0)
    assert beam_gain(h, v, 0.0) == 0.0
    assert beam_gain([1, 0], [0, 1], 10.0) == pytest.approx(0.0)


def test_beam_gain_linear_in_power():
    h = [0.3 + 0.2j, -1.1j, 0.5]
    v = np.array([1, 1j, -1]) / np.sqrt(3)
    assert beam_gain(h, v, 2.0) == 2 * beam_gain(h, v, 1.0)


def test_beam_gain_dimension_error():
    with pytest.raises(DimensionError):
        beam_gain([1, 2], [1], 1.0)


def test_best_gain_phase_invariant():
    cb = build_dft_codebook(8, 2)
    h = generate_channel_set(8, 0, 0).h1_pp
    gains = np.abs(cb.beams @ h) ** 2
    rotated = np.abs(cb.beams @ (h * np.exp(0.73j))) ** 2
    assert np.max(rotated) == pytest.approx(np.max(gains))
    assert np.argmax(rotated) == np.argmax(gains)
