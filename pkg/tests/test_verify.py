import numpy as np
import pytest

from scarf_spectra import (ConvergenceError, CouplingParams, DomainError,
                           GridSpec, REFERENCE_GRID, bound_state, complex_spectrum,
                           derive, discrete_spectrum, jost_solutions,
                           potential_value, real_spectrum, residual, scattering,
                           singularity_scan)

PARAMS_REAL = CouplingParams(12.0, 6.0)
PARAMS_COMPLEX = CouplingParams(1.0, 5.0)


def _pot(params):
    return lambda x: potential_value(params, x)


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def test_gridspec_geometry():
    g = GridSpec(20.0, 4001)
    assert g.h == pytest.approx(0.01, abs=1e-15)
    pts = g.points()
    assert len(pts) == 4001
    assert pts[0] == -20.0 and pts[-1] == 20.0
    assert pts[2000] == 0.0
    assert REFERENCE_GRID == g


def test_gridspec_validation():
    with pytest.raises(DomainError):
        GridSpec(20.0, 4000)      # even
    with pytest.raises(DomainError):
        GridSpec(20.0, 199)       # too coarse
    with pytest.raises(DomainError):
        GridSpec(0.0, 4001)
    with pytest.raises(DomainError):
        GridSpec(float("inf"), 4001)


# ---------------------------------------------------------------------------
# eigensolver
# ---------------------------------------------------------------------------

def test_discrete_spectrum_real_levels():
    got = discrete_spectrum(_pot(PARAMS_REAL), REFERENCE_GRID, 4)
    assert len(got) == 4
    analytic = [lv.energy for lv in real_spectrum(derive(PARAMS_REAL))]
    for num, ana in zip(got, analytic):
        assert abs(num - ana) < 1e-3
        assert abs(num.imag) < 1e-6


def test_discrete_spectrum_complex_pair():
    got = discrete_spectrum(_pot(PARAMS_COMPLEX), REFERENCE_GRID, 2)
    assert len(got) == 2
    analytic = sorted((lv.energy for lv in complex_spectrum(derive(PARAMS_COMPLEX))),
                      key=lambda z: (z.real, z.imag))
    for num, ana in zip(got, analytic):
        assert abs(num.real - ana.real) < 1e-3
        assert abs(num.imag - ana.imag) < 1e-3


def test_discrete_spectrum_free_particle_empty():
    assert discrete_spectrum(_zero, GridSpec(20.0, 1001), 3) == []


def test_discrete_spectrum_count_validation():
    with pytest.raises(DomainError):
        discrete_spectrum(_zero, GridSpec(20.0, 1001), 0)


def test_discrete_spectrum_grid_convergence():
    # plain second-difference discretization: halving h divides the error by 4
    e0 = real_spectrum(derive(PARAMS_REAL))[0].energy.real
    errs = []
    for n in (1001, 2001, 4001):
        ev = discrete_spectrum(_pot(PARAMS_REAL), GridSpec(20.0, n), 1)
        errs.append(abs(ev[0].real - e0))
    assert 3.8 < errs[0] / errs[1] < 4.2
    assert 3.8 < errs[1] / errs[2] < 4.2


# ---------------------------------------------------------------------------
# scattering
# ---------------------------------------------------------------------------

def test_scattering_free_particle():
    sc = scattering(_zero, 1.0, GridSpec(20.0, 1001))
    assert abs(sc.transmission - 1.0) < 1e-10
    assert abs(sc.reflection_left) < 1e-10
    assert abs(sc.reflection_right) < 1e-10
    assert sc.wronskian_ratio == pytest.approx(1.0, abs=1e-10)


def test_scattering_real_well_unitarity():
    # Hermitian control case before trusting the non-Hermitian runs
    well = lambda x: -3.3 / np.cosh(np.asarray(x, dtype=float)) ** 2
    for k in (0.7, 1.3):
        sc = scattering(well, k, GridSpec(20.0, 1001))
        assert abs(sc.transmission) ** 2 + abs(sc.reflection_left) ** 2 == \
            pytest.approx(1.0, abs=1e-8)


def test_scattering_momentum_validation():
    g = GridSpec(20.0, 1001)
    with pytest.raises(DomainError):
        scattering(_zero, 0.2, g)      # k L < 2 pi
    with pytest.raises(DomainError):
        scattering(_zero, -1.0, g)
    with pytest.raises(DomainError):
        scattering(_zero, 0.0, g)


def test_off_locus_wronskian_bounded_away_from_zero():
    g = GridSpec(25.0, 1001)
    pot = _pot(PARAMS_COMPLEX)
    for k in (0.3, 0.8, 1.5, 2.2, 3.0):
        sc = scattering(pot, k, g)
        assert sc.wronskian_ratio > 1e-2, k


def test_wronskian_constancy():
    g = GridSpec(25.0, 1001)
    xe = np.array([-5.0, -1.0, 0.0, 1.0, 5.0])
    fp, dfp, fm, dfm = jost_solutions(_pot(PARAMS_COMPLEX), 1.0, g, xe)
    w = fp * dfm - dfp * fm
    assert np.max(np.abs(w - w.mean())) / abs(w.mean()) < 1e-8


def test_jost_solutions_point_order_and_domain():
    g = GridSpec(25.0, 1001)
    xe = np.array([3.0, -2.0, 0.0])
    fp, dfp, fm, dfm = jost_solutions(_zero, 1.0, g, xe)
    # free-particle Jost solutions are the plane waves themselves
    assert np.max(np.abs(fp - np.exp(1j * xe))) < 1e-9
    assert np.max(np.abs(fm - np.exp(-1j * xe))) < 1e-9
    with pytest.raises(DomainError):
        jost_solutions(_zero, 1.0, g, [30.0])


# ---------------------------------------------------------------------------
# singularity scan
# ---------------------------------------------------------------------------

def test_singularity_scan_locus_vs_off_locus():
    grid = GridSpec(20.0, 1001)
    window = (0.9, 1.3)
    locus = singularity_scan([CouplingParams(2.0, 6.75)], window, grid)[0]
    off = singularity_scan([CouplingParams(1.0, 5.0)], window, grid)[0]

    assert locus.k_peak ** 2 == pytest.approx(1.125, abs=1e-3)
    assert locus.peak_height > 1e3
    assert locus.wronskian_ratio < 1e-3
    assert off.peak_height / locus.peak_height < 1e-3
    assert off.wronskian_ratio > 1e-2


def test_singularity_scan_validation():
    grid = GridSpec(20.0, 1001)
    with pytest.raises(DomainError):
        singularity_scan([PARAMS_COMPLEX], (1.3, 0.9), grid)
    with pytest.raises(DomainError):
        singularity_scan([PARAMS_COMPLEX], (0.0, 1.0), grid)
    with pytest.raises(DomainError):
        singularity_scan([PARAMS_COMPLEX], (0.9, 1.3), grid, coarse_steps=3)


# ---------------------------------------------------------------------------
# residual oracle
# ---------------------------------------------------------------------------

def test_residual_analytic_state_small():
    lv = real_spectrum(derive(PARAMS_REAL))[0]
    psi = lambda x: bound_state(lv, x)
    assert residual(_pot(PARAMS_REAL), psi, lv.energy, REFERENCE_GRID, order=4) < 1e-6
    assert residual(_pot(PARAMS_REAL), psi, lv.energy, REFERENCE_GRID) < 1e-9


def test_residual_rejects_noise():
    rng = np.random.default_rng(0)
    vals = rng.standard_normal(REFERENCE_GRID.n_points) \
        + 1j * rng.standard_normal(REFERENCE_GRID.n_points)
    noise = lambda x: vals
    # a non-solution scores O(1/h^2)
    assert residual(_pot(PARAMS_COMPLEX), noise, 0.0, REFERENCE_GRID) > 1e3


def test_residual_validation():
    lv = real_spectrum(derive(PARAMS_REAL))[0]
    psi = lambda x: bound_state(lv, x)
    with pytest.raises(DomainError):
        residual(_pot(PARAMS_REAL), psi, lv.energy, REFERENCE_GRID, order=3)
    with pytest.raises(DomainError):
        residual(_pot(PARAMS_REAL), lambda x: np.zeros_like(x), 0.0, REFERENCE_GRID)
