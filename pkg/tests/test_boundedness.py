import numpy as np
import pytest

from unitarize import (
    NotAutomorphism,
    ToleranceConfig,
    check_generator,
    check_normal_dichotomy,
    check_uniformly_bounded,
    resolvent_bound_estimate,
    sampled_power_norms,
)
from unitarize.boundedness import (
    VERDICT_ALREADY_UNITARY,
    VERDICT_BOUNDED,
    VERDICT_NORMAL_NOT_UNITARY,
    VERDICT_NOT_BOUNDED,
    VERDICT_NOT_NORMAL,
    VERDICT_SELF_ADJOINT_LIKE,
)
from unitarize.fixtures import (
    conjugated_unitary,
    defective_unimodular,
    haar_unitary,
    normal_fixture,
    off_circle_fixture,
    unimodular_phases,
)

CFG = ToleranceConfig()


def test_conjugated_unitary_is_bounded(rng):
    n = 5
    T, S, _ = conjugated_unitary(rng, n, 40.0, unimodular_phases(rng, n))
    report = check_uniformly_bounded(T, CFG)
    assert report.verdict == VERDICT_BOUNDED
    assert report.bounded
    assert not report.off_circle
    assert not report.defective
    # the eigenvector condition number bounds every sampled power norm
    worst = max(report.sampled_power_norms.values())
    assert worst <= report.bound_estimate * (1.0 + 1e-8)


def test_off_circle_modulus_is_flagged(rng):
    T = off_circle_fixture(rng, 4, 10.0, bump=0.05)
    report = check_uniformly_bounded(T, CFG)
    assert report.verdict == VERDICT_NOT_BOUNDED
    assert report.off_circle
    assert not report.bounded


def test_jordan_block_is_flagged(rng):
    T = defective_unimodular(rng, 4, 10.0)
    report = check_uniformly_bounded(T, CFG)
    assert report.verdict == VERDICT_NOT_BOUNDED
    assert report.defective
    assert any("defective" in r for r in report.reasons)


def test_power_norms_need_invertibility():
    T = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NotAutomorphism):
        sampled_power_norms(T)


def test_power_norms_cover_negative_exponents(rng):
    U = haar_unitary(rng, 3)
    norms = sampled_power_norms(U)
    assert min(norms) < 0 < max(norms)
    np.testing.assert_allclose(list(norms.values()), 1.0, atol=1e-12)


def test_generator_verdicts():
    H = np.array([[1.0, 2.0], [0.0, -1.0]], dtype=complex)
    assert check_generator(H, CFG).verdict == VERDICT_SELF_ADJOINT_LIKE
    rotated = np.array([[1j, 0.0], [0.0, 1.0]])
    rep = check_generator(rotated, CFG)
    assert not rep.similar_to_self_adjoint
    assert rep.off_real
    # a Jordan block at a real eigenvalue fails through defectivity alone
    jordan = np.array([[2.0, 1.0], [0.0, 2.0]], dtype=complex)
    rep = check_generator(jordan, CFG)
    assert not rep.similar_to_self_adjoint
    assert rep.defective and not rep.off_real


def test_normal_dichotomy_unitary(rng):
    U = haar_unitary(rng, 4)
    assert check_normal_dichotomy(U, CFG).verdict == VERDICT_ALREADY_UNITARY


def test_normal_dichotomy_normal_but_not_unimodular(rng):
    N = normal_fixture(rng, 4, unimodular=False)
    report = check_normal_dichotomy(N, CFG)
    assert report.verdict == VERDICT_NORMAL_NOT_UNITARY


def test_normal_dichotomy_rejects_non_normal():
    T = np.array([[1.0, 2.0], [0.0, -1.0]], dtype=complex)
    assert check_normal_dichotomy(T, CFG).verdict == VERDICT_NOT_NORMAL


def test_resolvent_estimate_separates_bounded_from_jordan(rng):
    U = haar_unitary(rng, 4)
    J = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    bounded_est = resolvent_bound_estimate(U)
    jordan_est = resolvent_bound_estimate(J)
    assert bounded_est < 10.0
    assert jordan_est > 100.0 * bounded_est
