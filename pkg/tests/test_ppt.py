"""Partial-transpose spectral oracle and witness cross-checking."""

import numpy as np
import pytest

from fockwitness.fock import density_from_pure, make_space, mix
from fockwitness.ppt import (
    NEGATIVITY_FLOOR,
    OracleCapError,
    Spectrum,
    cross_check,
    hermitian_eigenvalues,
    negativity,
    ppt_min_eigenvalue,
    ppt_spectrum,
)
from fockwitness.states import bell_su2, fock, random_separable, three_mode_hz, tmsv


def test_hermitian_eigenvalues_validation():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(OracleCapError):
        hermitian_eigenvalues(np.eye(8), max_dim=4)


def test_hermitian_eigenvalues_known_matrix():
    spec = hermitian_eigenvalues(np.array([[1.0, 1j], [-1j, 1.0]]))
    np.testing.assert_allclose(np.sort(spec.eigenvalues), [0.0, 2.0], atol=1e-13)
    assert spec.residual <= 1e-9


def test_spectrum_properties():
    # negativity is the raw negative-part mass; the floor for "treat as PPT"
    # lives in the cross-check, not here
    spec = Spectrum(np.array([-0.5e-10, 1.0]), 0.0)
    assert spec.negativity == 0.5e-10
    assert spec.min == -0.5e-10
    spec2 = Spectrum(np.array([-0.25, -0.15, 0.6]), 0.0)
    assert abs(spec2.negativity - 0.4) < 1e-15
    assert spec2.min == -0.25


def test_bell_state_spectrum():
    space = make_space(2, (4, 4))
    psi = bell_su2(space)
    assert abs(ppt_min_eigenvalue(psi) - (-0.5)) < 1e-10
    assert abs(negativity(psi) - 0.5) < 1e-10
    spec = ppt_spectrum(psi)
    # PT of a maximally entangled two-level state: eigenvalues {±1/2, 1/2, 1/2}
    top = np.sort(spec.eigenvalues)[-3:]
    np.testing.assert_allclose(top, [0.5, 0.5, 0.5], atol=1e-10)


def test_product_and_separable_states_are_ppt():
    space = make_space(2, (5, 5))
    assert negativity(fock(space, (2, 3))) <= NEGATIVITY_FLOOR
    for seed in range(20):
        rho = random_separable(space, seed=seed)
        assert negativity(rho) <= NEGATIVITY_FLOOR
        assert ppt_min_eigenvalue(rho) >= -1e-10


def test_mixing_washes_out_negativity():
    space = make_space(2, (4, 4))
    ent = density_from_pure(bell_su2(space))
    noise = density_from_pure(fock(space, (0, 0)))
    neg_pure = negativity(ent)
    neg_mixed = negativity(mix([0.5, 0.5], [ent, noise]))
    assert neg_mixed < neg_pure


def test_tmsv_negativity_grows_with_squeezing():
    space = make_space(2, (16, 16))
    values = [negativity(tmsv(space, x)) for x in (0.1, 0.3, 0.5)]
    assert values[0] > 0.0
    assert values[0] < values[1] < values[2]
    # closed form x/(1-x) for the untruncated state; truncation at cutoff 16
    # keeps the gap tiny at these x
    for x, got in zip((0.1, 0.3, 0.5), values):
        assert abs(got - x / (1 - x)) < 1e-4


def test_mode_choice_gives_same_spectrum():
    space = make_space(2, (6, 6))
    psi = tmsv(space, 0.4, max_leakage=None)
    a = np.sort(ppt_spectrum(psi, mode=0).eigenvalues)
    b = np.sort(ppt_spectrum(psi, mode=1).eigenvalues)
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_oracle_cap_on_large_space():
    space = make_space(2, (40, 40))  # dim 1600 exceeds the 1024 oracle cap
    psi = fock(space, (0, 0))
    with pytest.raises(OracleCapError):
        ppt_spectrum(psi)
    # the cap is explicit, not a hard limit
    spec = ppt_spectrum(psi, max_dim=1600)
    assert spec.eigenvalues.shape == (1600,)


def test_oracle_on_three_mode_bipartitions():
    # the oracle transposes one mode against the rest; the shared-photon
    # state is entangled across every such bipartition
    space = make_space(3, (4, 4, 4))
    psi = three_mode_hz(space)
    for mode in range(3):
        assert ppt_min_eigenvalue(psi, mode=mode) < -0.1
    # the witness cross-check is a two-mode instrument
    with pytest.raises(ValueError):
        cross_check(psi)


# ---------------------------------------------------------------------------
# witness/oracle cross-check


def test_cross_check_bell_state_consistent():
    space = make_space(2, (8, 8))
    check = cross_check(bell_su2(space))
    assert check.negativity > 0.4
    assert check.violated  # separability witnesses fire
    assert check.consistent
    assert check.discrepancies == ()


def test_cross_check_separable_samples_consistent():
    space = make_space(2, (6, 6))
    for seed in range(15):
        check = cross_check(random_separable(space, seed=seed))
        assert check.negativity <= NEGATIVITY_FLOOR
        assert check.consistent, check.discrepancies


def test_cross_check_tmsv_consistent():
    space = make_space(2, (16, 16))
    check = cross_check(tmsv(space, 0.5))
    names = {r.name for r in check.reports if r.verdict == "violated"}
    assert "hz_su11" in names
    assert check.negativity > 0.0
    assert check.consistent


def test_cross_check_records_unsound_bound_as_discrepancy():
    # The strict product variant fires on the vacuum even though the vacuum
    # is PPT; the cross-check keeps that disagreement as data instead of
    # hiding it.
    space = make_space(2, (6, 6))
    check = cross_check(fock(space, (0, 0)))
    assert check.negativity <= NEGATIVITY_FLOOR
    assert not check.consistent
    assert any("pt_su11_product_strict" in d for d in check.discrepancies)
