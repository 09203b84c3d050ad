import math

import numpy as np
import pytest

from optobec import (ATOM_FIELD, MIRROR_ATOM, MIRROR_FIELD,
                     bogoliubov_excitations, derive_quantities,
                     log_negativity, mirror_phonons, reduce_bipartition)
from optobec.presets import MIRROR_FREQ, baseline_params

from conftest import random_physical_cm, rotation_2mode, two_mode_squeezer


def tmsv_cm(r, dtype=float):
    """Two-mode squeezed vacuum covariance in the block form [[B, C], [C^T, B]]."""
    r = dtype(r)
    c2, s2 = np.cosh(2 * r), np.sinh(2 * r)
    v = np.zeros((4, 4), dtype=dtype)
    v[:2, :2] = v[2:, 2:] = 0.5 * c2 * np.eye(2, dtype=dtype)
    v[:2, 2:] = v[2:, :2] = 0.5 * s2 * np.diag(np.array([1.0, -1.0], dtype=dtype))
    return v


def test_occupations_vacuum():
    v = 0.5 * np.eye(6)
    assert mirror_phonons(v) == 0.0
    assert bogoliubov_excitations(v) == 0.0


def test_occupations_thermal_block():
    nbar = 832.9648654280111
    v = 0.5 * np.eye(6)
    v[2, 2] = v[3, 3] = nbar + 0.5
    assert mirror_phonons(v) == pytest.approx(nbar, rel=1e-12)
    assert bogoliubov_excitations(v) == 0.0


def test_condensate_occupation_closed_form():
    # decoupled condensate block at sw = omega_m: sw^2/(8(gc^2 + Oc(Oc+sw)))
    d = derive_quantities(baseline_params(sw_frequency=MIRROR_FREQ))
    expected = d.omega_sw ** 2 / (
        8.0 * (d.gamma_c ** 2 + d.Omega_c * (d.Omega_c + d.omega_sw)))
    assert expected == pytest.approx(0.07309940453241254, rel=1e-12)
    from optobec import solve_lyapunov
    a = np.array([[-d.gamma_c, d.Omega_c],
                  [-(d.Omega_c + d.omega_sw), -d.gamma_c]])
    block = solve_lyapunov(a, np.diag([d.gamma_c, d.gamma_c]))
    v = 0.5 * np.eye(6)
    v[4:, 4:] = block
    assert bogoliubov_excitations(v) == pytest.approx(expected, rel=1e-9)


def test_condensate_occupation_vanishes_without_collisions():
    # sw = 0, dark cavity: the vacuum solves the decoupled block exactly
    d = derive_quantities(baseline_params(sw_frequency=0.0))
    a = np.array([[-d.gamma_c, d.Omega_c], [-d.Omega_c, -d.gamma_c]])
    residual = a @ (0.5 * np.eye(2)) + (0.5 * np.eye(2)) @ a.T \
        + np.diag([d.gamma_c, d.gamma_c])
    assert np.abs(residual).max() == 0.0


def test_reduction_index_bookkeeping():
    v = np.arange(36, dtype=float).reshape(6, 6)
    v = 0.5 * (v + v.T)
    reduced = reduce_bipartition(v, MIRROR_FIELD)
    # mirror quadratures first (rows/cols 3,4 in 1-based counting), then field
    expected = v[np.ix_([2, 3, 0, 1], [2, 3, 0, 1])]
    np.testing.assert_array_equal(reduced, expected)
    np.testing.assert_array_equal(
        reduce_bipartition(v, ATOM_FIELD), v[np.ix_([4, 5, 0, 1], [4, 5, 0, 1])])
    np.testing.assert_array_equal(
        reduce_bipartition(v, MIRROR_ATOM), v[np.ix_([2, 3, 4, 5], [2, 3, 4, 5])])


def test_reduction_of_vacuum():
    v = 0.5 * np.eye(6)
    reduced = reduce_bipartition(v, MIRROR_FIELD)
    np.testing.assert_array_equal(reduced, 0.5 * np.eye(4))
    assert np.all(reduced[:2, 2:] == 0.0)


def test_uncorrelated_vacua_are_separable():
    result = log_negativity(0.5 * np.eye(4))
    assert result.eta_minus == pytest.approx(0.5, rel=1e-12)
    assert result.log_negativity == 0.0


def test_thermal_product_states_are_separable():
    for n1, n2 in ((0.0, 3.0), (11.2, 0.4), (832.9, 832.9)):
        v = np.diag([n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5])
        assert log_negativity(v).log_negativity == 0.0


def test_two_mode_squeezed_entanglement_exact():
    # extended-precision covariance entries: the double-rounded matrix itself
    # carries an intrinsic cond(V) ~ e^{4r} sensitivity at large squeezing
    for r in np.linspace(0.0, 5.0, 51):
        result = log_negativity(tmsv_cm(r, dtype=np.longdouble))
        assert result.eta_minus == pytest.approx(0.5 * math.exp(-2 * r), rel=2e-9)
        assert result.log_negativity == pytest.approx(2 * r, rel=1e-9, abs=1e-9)


def test_two_mode_squeezed_entanglement_double_inputs():
    # plain double covariances stay accurate to the conditioning limit
    for r in np.linspace(0.0, 3.0, 31):
        result = log_negativity(tmsv_cm(r))
        assert result.log_negativity == pytest.approx(2 * r, abs=2e-7)


def test_entanglement_positive_iff_eta_below_half():
    rng = np.random.default_rng(3)
    for _ in range(200):
        result = log_negativity(random_physical_cm(rng))
        assert result.log_negativity >= 0.0
        assert (result.log_negativity > 0.0) == (result.eta_minus < 0.5)


def test_uncorrelated_modes_never_entangled():
    rng = np.random.default_rng(9)
    for _ in range(50):
        v = np.zeros((4, 4))
        v[:2, :2] = random_physical_cm(rng)[:2, :2]
        v[2:, 2:] = random_physical_cm(rng)[2:, 2:]
        assert log_negativity(v).log_negativity == 0.0


def test_local_rotation_invariance():
    rng = np.random.default_rng(17)
    v = random_physical_cm(rng)
    base = log_negativity(v).log_negativity
    for _ in range(100):
        s = rotation_2mode(*rng.uniform(0, 2 * math.pi, 2))
        rotated = log_negativity(s @ v @ s.T).log_negativity
        assert rotated == pytest.approx(base, abs=1e-9)


def test_squeezing_then_measuring_roundtrip():
    # entanglement of S(r) vacuum S(r)^T must be 2r whatever local frame
    rng = np.random.default_rng(23)
    for r in (0.2, 0.9, 1.7):
        s = rotation_2mode(*rng.uniform(0, 2 * math.pi, 2)) @ two_mode_squeezer(r)
        v = s @ (0.5 * np.eye(4)) @ s.T
        assert log_negativity(v).log_negativity == pytest.approx(2 * r, rel=1e-9)


def test_rejects_nonphysical_covariance():
    v = np.array([[0.5, 0.0, 2.0, 0.0],
                  [0.0, 0.5, 0.0, 2.0],
                  [2.0, 0.0, 2.0, 0.0],
                  [0.0, 2.0, 0.0, 2.0]])
    with pytest.raises(ValueError, match="not physical"):
        log_negativity(v)


def test_rejects_wrong_shape():
    with pytest.raises(ValueError, match="4x4"):
        log_negativity(np.eye(6))
