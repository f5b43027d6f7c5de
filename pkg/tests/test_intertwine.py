import numpy as np
import pytest
from numpy.testing import assert_allclose

from unitarize import (
    HermitianForm,
    InvalidInput,
    ToleranceConfig,
    WeightOnUnmatchedPair,
    are_intertwined,
    intertwiner,
    intertwiner_scaled,
    make_clock_shift,
    mixed_cesaro,
)
from unitarize.fixtures import (
    conjugated_unitary,
    positive_definite_fixture,
    unimodular_phases,
)

CFG = ToleranceConfig()


def test_connector_relations_on_shared_spectrum(rng):
    n = 4
    phases = unimodular_phases(rng, n)
    T1, _, _ = conjugated_unitary(rng, n, 20.0, phases)
    T2, _, _ = conjugated_unitary(rng, n, 20.0, phases)
    h0 = HermitianForm(positive_definite_fixture(rng, n, 4.0))
    result = intertwiner(T1, T2, h0, CFG)
    assert result.nonzero
    assert result.rank == n
    assert len(result.common_eigenvalues) == n
    for key, value in result.relation_residuals.items():
        assert value <= 1e-8, key
    # the second-metric connector exchanges the two operators
    assert are_intertwined(T1, T2, result.in_first_metric, CFG)


def test_connector_vanishes_for_disjoint_spectra():
    T1 = np.diag([1.0, -1.0]).astype(complex)
    T2 = np.diag([1j, -1j])
    result = intertwiner(T1, T2, None, CFG)
    assert not result.nonzero
    assert result.rank == 0
    assert np.linalg.norm(result.in_fiducial_metric) <= 1e-10


def test_connector_keeps_only_shared_eigenvalues():
    T1 = np.diag([1.0, 1j])
    T2 = np.diag([1.0, -1j])
    result = intertwiner(T1, T2, None, CFG)
    assert result.rank == 1
    assert len(result.common_eigenvalues) == 1
    assert_allclose(result.common_eigenvalues[0], 1.0, atol=1e-12)


def test_connector_matches_finite_mixed_average(rng):
    n = 3
    phases = unimodular_phases(rng, n, min_gap=0.3)
    T1, _, _ = conjugated_unitary(rng, n, 8.0, phases)
    T2, _, _ = conjugated_unitary(rng, n, 8.0, phases)
    result = intertwiner(T1, T2, None, CFG)
    averaged = mixed_cesaro(T1, T2, None, horizon=1 << 22, cfg=CFG)
    scale = max(np.linalg.norm(result.in_fiducial_metric), 1e-300)
    assert np.linalg.norm(averaged - result.in_fiducial_metric) <= 1e-4 * scale


def test_scaled_connector_reproduces_fourier_matrix():
    dim = 4
    shift, clock, _ = make_clock_shift(dim)
    A = intertwiner_scaled(clock, shift, 1.0, cfg=CFG)
    omega = np.exp(2j * np.pi / dim)
    dft = np.array(
        [[omega ** (-(k * j)) for j in range(dim)] for k in range(dim)]
    ) / np.sqrt(dim)
    assert_allclose(A, dft, atol=1e-12)
    assert np.linalg.norm(clock @ A - A @ shift) <= 1e-12


def test_scaled_connector_is_linear_in_the_weight():
    shift, clock, _ = make_clock_shift(3)
    A1 = intertwiner_scaled(clock, shift, 1.0, cfg=CFG)
    A3 = intertwiner_scaled(clock, shift, 3.0, cfg=CFG)
    assert_allclose(A3, 3.0 * A1, atol=1e-12)


def test_scaled_connector_single_pair():
    T1 = np.diag([1.0, -1.0]).astype(complex)
    T2 = np.diag([-1.0, 1.0]).astype(complex)
    A = intertwiner_scaled(T1, T2, {(1, 1): 2.0}, cfg=CFG)
    assert_allclose(A, np.array([[0.0, 0.0], [2.0, 0.0]]), atol=1e-12)
    assert np.linalg.norm(T1 @ A - A @ T2) <= 1e-12


def test_scaled_connector_rejects_unmatched_weight():
    T1 = np.diag([1.0, -1.0]).astype(complex)
    T2 = np.diag([1.0, 1j])
    with pytest.raises(WeightOnUnmatchedPair):
        intertwiner_scaled(T1, T2, {(1, 1): 1.0}, cfg=CFG)


def test_scaled_connector_requires_simple_spectra():
    T1 = np.diag([1.0, 1.0, -1.0]).astype(complex)
    with pytest.raises(InvalidInput):
        intertwiner_scaled(T1, T1, 1.0, cfg=CFG)


def test_are_intertwined_detects_violations(rng):
    shift, clock, _ = make_clock_shift(3)
    A = intertwiner_scaled(clock, shift, 1.0, cfg=CFG)
    assert are_intertwined(clock, shift, A, CFG)
    assert not are_intertwined(shift, clock, A, CFG)
    with pytest.warns(UserWarning, match="zero"):
        assert are_intertwined(clock, shift, np.zeros((3, 3)), CFG)
