"""Rationally extended SUSY partners of the Scarf II potential (v2 > 0).

A superpotential with one rational term,

    W(x) = a tanh x + i b sech x - i cosh x / (i sinh x + c),

factorizes the original potential V and produces the extended partner

    V_ext = W^2 + W' + E,        V = W^2 - W' + E,

provided  a(a+1) + b^2 = v1,  (2a+1) b = v2,  c = -2b/(2a-1),  E = -(a-1)^2.
Four solution branches exist, labelled by signs (eps_plus, eps_minus):

    a = -1/2 + eps_plus p + eps_minus sig,   b = eps_plus p - eps_minus sig,

with sig = s in the real regime and sig = i q in the complex one (there the
partner is complex but no longer PT symmetric).  In closed form

    V_ext(x) = -(v1 - 2a) sech^2 x + i (v2 - 2b) sech x tanh x
               - 4b / D(x) + 2 (4b^2 - (2a-1)^2) / D(x)^2,
    D(x) = 2b - i (2a-1) sinh x.

eps_plus = +1 deletes the (n = 1, eps = eps_minus) level; eps_plus = -1 adds
a level at the factorization energy E, whose state is 1/phi for the
factorizing function phi.  The partner bound states of the (+, +) branch are
rational: their polynomial parts divide by the linear factor

    B(y) = (p - sig) - (p + sig - 1) y,        y = i sinh x,

and the eps = -1 family is governed by the degree-(n+1) exceptional (X1)
Jacobi polynomials, constructed here from classical Jacobi polynomials.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, PoleError, RegimeError, SingularBranchError
from .params import (CouplingParams, DerivedParams, Regime, _as_complex,
                     couplings_from_derived,
                     potential_value, wavefunction_params)
from .spectrum import (LevelRecord, SingularityReport, detect_singularity, spectrum)
from .wavefunctions import (bound_state, bound_state_derivative, gudermannian,
                            log_sech, wavefunction_value)

BRANCH_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

_DEGENERACY_TOL = 1e-9


class PartnerKind(enum.Enum):
    PT_SYMMETRIC = "pt-symmetric"
    COMPLEX_NON_PT = "complex-non-pt"


@dataclass(frozen=True)
class PartnerBranch:
    """One solution branch of the superpotential construction."""

    eps_plus: int
    eps_minus: int
    a: complex
    b: complex
    c: complex
    factorization_energy: complex
    kind: PartnerKind


def _sigma(d: DerivedParams) -> complex:
    """Second shape parameter entering the branches: s, or i q past the boundary."""
    if d.regime is Regime.COMPLEX_SPECTRUM:
        return 1j * d.q
    return complex(d.s)


def solve_branch(d: DerivedParams, eps_plus: int, eps_minus: int) -> PartnerBranch:
    """Solve the coupled superpotential equations on one sign branch."""
    if eps_plus not in (-1, 1) or eps_minus not in (-1, 1):
        raise DomainError("branch signs must be +1 or -1")
    if d.nu < 0:
        raise DomainError("superpotential branches are constructed for v2 > 0 only")
    if d.regime is Regime.BOUNDARY:
        raise RegimeError("partner construction is not defined on the regime boundary")
    sig = _sigma(d)
    a = -0.5 + eps_plus * d.p + eps_minus * sig
    b = eps_plus * d.p - eps_minus * sig
    two_a_minus_1 = 2.0 * a - 1.0
    if abs(two_a_minus_1) < 1e-12 * (1.0 + abs(a)):
        raise SingularBranchError(
            f"branch ({eps_plus:+d}, {eps_minus:+d}) is singular: 2a - 1 = 0")
    c = -2.0 * b / two_a_minus_1
    energy = -((a - 1.0) ** 2)
    kind = (PartnerKind.PT_SYMMETRIC if d.regime is Regime.REAL_SPECTRUM
            else PartnerKind.COMPLEX_NON_PT)
    if kind is PartnerKind.PT_SYMMETRIC:
        a, b, c, energy = a.real, b.real, c.real, energy.real
    return PartnerBranch(eps_plus=eps_plus, eps_minus=eps_minus, a=a, b=b, c=c,
                         factorization_energy=energy, kind=kind)


def superpotential(branch: PartnerBranch, x):
    """W(x) = a tanh x + i b sech x - i cosh x / (i sinh x + c)."""
    x = np.asarray(x, dtype=float)
    sh, ch = np.sinh(x), np.cosh(x)
    den = 1j * sh + branch.c
    if np.any(np.abs(den) < 1e-12 * (1.0 + abs(branch.c))):
        raise PoleError("superpotential pole on the evaluation grid")
    out = branch.a * np.tanh(x) + 1j * branch.b / ch - 1j * ch / den
    return _as_complex(out)


def superpotential_derivative(branch: PartnerBranch, x):
    """Closed-form W'(x) (reference for the finite-difference checks)."""
    x = np.asarray(x, dtype=float)
    sh, ch = np.sinh(x), np.cosh(x)
    sech = 1.0 / ch
    den = 1j * sh + branch.c
    if np.any(np.abs(den) < 1e-12 * (1.0 + abs(branch.c))):
        raise PoleError("superpotential pole on the evaluation grid")
    out = (branch.a * sech ** 2 - 1j * branch.b * sech * np.tanh(x)
           - 1j * (branch.c * sh - 1j) / den ** 2)
    return _as_complex(out)


def extended_potential(branch: PartnerBranch, params: CouplingParams, x):
    """Closed-form rational extension V_ext; equals W^2 + W' + E."""
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    a, b = branch.a, branch.b
    den = 2.0 * b - 1j * (2.0 * a - 1.0) * np.sinh(x)
    if np.any(np.abs(den) < 1e-12 * (1.0 + abs(b))):
        raise PoleError("extended potential pole on the evaluation grid")
    out = (-(params.v1 - 2.0 * a) * sech ** 2
           + 1j * (params.v2 - 2.0 * b) * sech * np.tanh(x)
           - 4.0 * b / den
           + 2.0 * (4.0 * b ** 2 - (2.0 * a - 1.0) ** 2) / den ** 2)
    return _as_complex(out)


def factorizing_function(branch: PartnerBranch, x):
    """Nodeless solution phi of (-d^2/dx^2 + V - E) phi = 0 defining the branch.

    phi is exactly the n = 1 ansatz state with exponents (a, -i b); its
    polynomial part is the linear bracket  eps_plus p - eps_minus sig
    - i (eps_plus p + eps_minus sig - 1) sinh x.
    """
    return wavefunction_value(wavefunction_params(branch.a, -1j * branch.b), 1, x)


def added_level_wavefunction(branch: PartnerBranch, x):
    """Partner-space bound state 1/phi created by a deleting-free branch.

    Normalizable exactly when eps_plus = -1 (then |1/phi| decays like
    exp[-(p - eps_minus sig + 3/2) |x|]).
    """
    if branch.eps_plus != -1:
        raise DomainError("added level exists only on eps_plus = -1 branches")
    vals = factorizing_function(branch, x)
    return 1.0 / vals


# ============================================================================
# partner spectrum bookkeeping
# ============================================================================

@dataclass(frozen=True)
class DegeneracyNote:
    """Added level coinciding with an original eps = +1 level (2s = n + 2)."""

    n: int
    energy: float


@dataclass(frozen=True)
class PartnerSpectrumEdit:
    deleted: Optional[LevelRecord]
    added: Optional[LevelRecord]
    degeneracy: Optional[DegeneracyNote]


def _check_branch_matches(branch: PartnerBranch, d: DerivedParams):
    sig = _sigma(d)
    a_expect = -0.5 + branch.eps_plus * d.p + branch.eps_minus * sig
    if abs(complex(branch.a) - a_expect) > 1e-9 * (1.0 + abs(a_expect)):
        raise DomainError("branch record does not belong to the given parameters")


def partner_spectrum(branch: PartnerBranch, d: DerivedParams):
    """Spectrum of V_ext: the original levels with one deleted or one added.

    Returns ``(levels, edit)``.  Deletion (eps_plus = +1) removes the
    (n = 1, eps = eps_minus) level when it exists in the original spectrum;
    addition (eps_plus = -1) appends a level at the factorization energy.
    In the real regime an added level with eps_minus = +1 may coincide with
    an original level (couplings with 2s = n + 2); this is recorded in the
    edit's degeneracy note.
    """
    _check_branch_matches(branch, d)
    levels = list(spectrum(d))
    deleted = added = note = None
    if branch.eps_plus == 1:
        for i, lv in enumerate(levels):
            if lv.n == 1 and lv.epsilon == branch.eps_minus:
                if abs(lv.energy - branch.factorization_energy) > \
                        _DEGENERACY_TOL * (1.0 + abs(lv.energy)):
                    raise DomainError("deleted-level energy mismatch; inconsistent branch")
                deleted = lv
                del levels[i]
                break
    else:
        e_add = branch.factorization_energy
        added = LevelRecord(n=0, epsilon=branch.eps_minus, energy=complex(e_add),
                            wf=None, origin="susy-added")
        levels.append(added)
        if d.regime is Regime.REAL_SPECTRUM and branch.eps_minus == 1:
            n_deg = round(2.0 * d.s) - 2
            if (n_deg >= 0 and abs(2.0 * d.s - (n_deg + 2)) < _DEGENERACY_TOL * (1.0 + 2.0 * d.s)
                    and n_deg < d.p + d.s - 0.5):
                e_orig = -((d.p + d.s - n_deg - 0.5) ** 2)
                note = DegeneracyNote(n=n_deg, energy=e_orig)
    if d.regime is Regime.REAL_SPECTRUM:
        levels.sort(key=lambda lv: lv.energy.real)
    else:
        levels.sort(key=lambda lv: (lv.energy.real, lv.energy.imag))
    return levels, PartnerSpectrumEdit(deleted=deleted, added=added, degeneracy=note)


# ============================================================================
# exceptional (X1) Jacobi polynomials and partner polynomial families
# ============================================================================

def _jacobi_coeffs(n: int, alpha: complex, beta: complex) -> np.ndarray:
    """Ascending coefficient array of P_n^{(alpha,beta)} via the explicit sum."""
    total = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        coeff = 1.0 + 0.0j
        for i in range(n - k):
            coeff *= (n + alpha - i) / (i + 1)
        for i in range(k):
            coeff *= (n + beta - i) / (i + 1)
        term = npoly.polymul(npoly.polypow(np.array([-0.5, 0.5]), k),
                             npoly.polypow(np.array([0.5, 0.5]), n - k)) * coeff
        total[:len(term)] += term
    return total


def exceptional_jacobi_coeffs(degree: int, s: complex, p: complex) -> np.ndarray:
    """Coefficients of the degree-k X1 exceptional Jacobi polynomial.

    Parameters correspond to the classical pair (alpha, beta) = (2s-1, 1-2p).
    The construction combines P_{k-1}^{(2s, -2p)} and its derivative with the
    linear factor B(y) = (p - s) - (p + s - 1) y; normalization is fixed so
    the degree-1 member is 2(s - p + 1) + 2(p + s - 1) y.
    """
    if degree < 1:
        raise DomainError(f"exceptional Jacobi degree must be >= 1, got {degree}")
    s, p = complex(s), complex(p)
    if abs(2.0 * s - 1.0) < 1e-10 or abs(p + s - 1.0) < 1e-10:
        raise DomainError("degenerate X1 construction: 2s - 1 or p + s - 1 vanishes")
    n = degree - 1
    pn = _jacobi_coeffs(n, 2.0 * s, -2.0 * p)
    dpn = npoly.polyder(pn)
    b_lin = np.array([p - s, -(p + s - 1.0)], dtype=complex)
    one_minus_y = np.array([1.0, -1.0], dtype=complex)
    inner = npoly.polyadd(npoly.polymul(b_lin, dpn), (p + s - 1.0) * pn)
    g = npoly.polyadd(-2.0 * s * npoly.polymul(b_lin, pn),
                      npoly.polymul(one_minus_y, inner))
    return np.asarray(g, dtype=complex) * (2.0 / (2.0 * s - 1.0))


def exceptional_jacobi(degree: int, s: complex, p: complex, y):
    """Evaluate the degree-k X1 exceptional Jacobi polynomial at y."""
    coeffs = exceptional_jacobi_coeffs(degree, s, p)
    out = npoly.polyval(np.asarray(y, dtype=complex), coeffs)
    return _as_complex(out)


def partner_polynomial_coeffs(n: int, epsilon: int, p: complex, sig: complex) -> np.ndarray:
    """Polynomial part of the (+, +)-branch partner state psi^(-)_{n, eps}.

    eps = +1 family (n = 0, 2, 3, ...): degree-n combination
        (p + sig - 1) P_n^{(-2 sig, -2p)} + B(y) dP_n/dy,
    rescaled to reproduce the published degree-0 and degree-2 forms
    (1 and (p+s-1)(2p+2s-3) y^2 - 2 (p-s)(2p+2s-3) y + 2 (p-s)^2 - (p+s-1));
    the same rescaling rule -4/(p + sig - n) is applied to every n >= 2.

    eps = -1 family: the degree-(n+1) X1 exceptional Jacobi polynomial.
    """
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}")
    p, sig = complex(p), complex(sig)
    if epsilon == -1:
        return exceptional_jacobi_coeffs(n + 1, sig, p)
    if epsilon != 1:
        raise DomainError(f"epsilon must be +1 or -1, got {epsilon}")
    if n == 1:
        raise DomainError("n = 1 is the level deleted by the (+, +) branch")
    pn = _jacobi_coeffs(n, -2.0 * sig, -2.0 * p)
    b_lin = np.array([p - sig, -(p + sig - 1.0)], dtype=complex)
    q = npoly.polyadd((p + sig - 1.0) * pn, npoly.polymul(b_lin, npoly.polyder(pn)))
    if n == 0:
        return np.asarray(q / (p + sig - 1.0), dtype=complex)
    return np.asarray(q * (-4.0 / (p + sig - n)), dtype=complex)


# ============================================================================
# partner wavefunctions
# ============================================================================

def partner_wavefunction(branch: PartnerBranch, level: LevelRecord, x):
    """Partner state by the intertwining map (E_n - E)^{-1/2} (d/dx + W) psi_n.

    Works on every branch.  Raises a domain error at the factorization
    energy itself (the deleted level, annihilated by the map).
    """
    gap = complex(level.energy) - complex(branch.factorization_energy)
    if abs(gap) < _DEGENERACY_TOL * (1.0 + abs(level.energy)):
        raise DomainError(
            "level is degenerate with the factorization energy; the intertwining map "
            "annihilates it")
    pref = 1.0 / cmath.sqrt(gap)
    return pref * (bound_state_derivative(level, x)
                   + superpotential(branch, x) * bound_state(level, x))


def partner_series_count(branch: PartnerBranch, d: DerivedParams, epsilon: int) -> float:
    """Upper bound of the partner level index n for the (+, +) branch."""
    if d.regime is Regime.COMPLEX_SPECTRUM:
        return d.p - 0.5
    return d.p + epsilon * d.s - 0.5


def partner_wavefunction_closed(branch: PartnerBranch, d: DerivedParams,
                                n: int, epsilon: int, x):
    """Closed rational form of the (+, +)-branch partner states.

    psi^(-)_{n,eps}(x) = sech^xi(x) exp[eta arctan(sinh x)]
                         * PP_{n,eps}(i sinh x) / B(i sinh x),

    with (xi, eta) = (-3/2 + p + sig, -i (p - sig)) for eps = +1 and
    (-1/2 + p - sig, -i (p + sig - 1)) for eps = -1.  Other branches have no
    published closed form; use :func:`partner_wavefunction` there.
    """
    if (branch.eps_plus, branch.eps_minus) != (1, 1):
        raise DomainError("closed partner states are implemented for the (+, +) branch only")
    _check_branch_matches(branch, d)
    if epsilon not in (-1, 1):
        raise DomainError(f"epsilon must be +1 or -1, got {epsilon}")
    if n < 0 or not n < partner_series_count(branch, d, epsilon):
        raise DomainError(f"partner level n = {n} outside the eps = {epsilon:+d} series")
    if epsilon == 1 and n == 1:
        raise DomainError("n = 1 is the level deleted by the (+, +) branch")
    sig = _sigma(d)
    p = complex(d.p)
    if epsilon == 1:
        xi = -1.5 + p + sig
        eta = -1j * (p - sig)
    else:
        xi = -0.5 + p - sig
        eta = -1j * (p + sig - 1.0)
    coeffs = partner_polynomial_coeffs(n, epsilon, p, sig)
    x = np.asarray(x, dtype=float)
    y = 1j * np.sinh(x)
    bracket = (p - sig) - (p + sig - 1.0) * y
    out = (np.exp(xi * log_sech(x) + eta * gudermannian(x))
           * npoly.polyval(y, coeffs) / bracket)
    return _as_complex(out)


# ============================================================================
# singularities of the partner and factorization checks
# ============================================================================

@dataclass(frozen=True)
class PartnerSingularityReport:
    """Spectral-singularity data of V_ext, inherited from the original potential.

    ``vprime_sum`` is the real combined coupling v1' + v2' of the extended
    potential's sech^2 / sech tanh part; on the singularity locus it equals
    4 n*^2 - 1/4.  When n* = 1 the deleting branch leaves a single state
    (not a conjugate pair) at E*, flagged by ``n1_anomaly``.
    """

    is_singular: bool
    n_star: Optional[int]
    e_star: Optional[float]
    tolerance_used: float
    vprime_sum: float
    vprime_identity: Optional[float]
    n1_anomaly: bool


def partner_singularity(branch: PartnerBranch, d: DerivedParams,
                        tol: float = 1e-9) -> PartnerSingularityReport:
    """Singularity report for the extended potential of the (+, +) branch."""
    if branch.kind is not PartnerKind.COMPLEX_NON_PT:
        raise RegimeError("partner singularities require the complex-spectrum regime")
    if (branch.eps_plus, branch.eps_minus) != (1, 1):
        raise DomainError("partner singularity analysis covers the (+, +) branch")
    _check_branch_matches(branch, d)
    base = detect_singularity(d, tol=tol)
    params = couplings_from_derived(d)
    ab_sum = branch.a + branch.b
    vprime_sum = params.v1 + params.v2 - 2.0 * ab_sum.real
    identity = None
    if base.is_singular:
        identity = 4.0 * base.n_star ** 2 - 0.25
    return PartnerSingularityReport(
        is_singular=base.is_singular, n_star=base.n_star, e_star=base.e_star,
        tolerance_used=base.tolerance_used, vprime_sum=vprime_sum,
        vprime_identity=identity,
        n1_anomaly=bool(base.is_singular and base.n_star == 1))


def factorization_residuals(branch: PartnerBranch, params: CouplingParams,
                            x, diff_step: float = 1e-5):
    """Max-norm residuals of V = W^2 - W' + E and V_ext = W^2 + W' + E.

    W' is computed by 4th-order central differences with the given off-grid
    step (the superpotential is evaluable anywhere, so the step need not be
    tied to the grid spacing).
    """
    x = np.asarray(x, dtype=float)
    h = diff_step
    w = superpotential(branch, x)
    dw = (superpotential(branch, x - 2 * h) - 8.0 * superpotential(branch, x - h)
          + 8.0 * superpotential(branch, x + h) - superpotential(branch, x + 2 * h)) / (12.0 * h)
    base = w * w + branch.factorization_energy
    res_v = np.max(np.abs(base - dw - potential_value(params, x)))
    res_ext = np.max(np.abs(base + dw - extended_potential(branch, params, x)))
    return float(res_v), float(res_ext)
