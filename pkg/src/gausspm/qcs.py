"""Quadrature coherence scale (QCS) of Gaussian and photon-added/subtracted states.

The QCS squared of an n-mode state can be computed from the characteristic
function as

    C^2 = ||  |xi| chi ||_2^2 / (n ||chi||_2^2),

which for a Gaussian state collapses to Tr V^-1 / 2n, and for photon
added/subtracted Gaussian states is a ratio of two (polynomial x Gaussian)
integrals evaluated exactly by the moment engine.  C^2 > 1 certifies
nonclassicality; C^2 is proportional to the environmental decoherence rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import moments
from .phase_space import GaussianState, omega, purity
from .photon_ops import (
    AnnihilatingSubtractionError,
    PhotonTunedState,
    char_polynomial,
    wigner_polynomial,
    wigner_weight,
)

__all__ = [
    "QcsReport",
    "qcs_gaussian",
    "qcs_gaussian_via_moments",
    "qcs_photon_tuned",
    "qcs_pure_total_noise",
    "relative_gain",
    "qcs_closed_form_sqth",
    "purity_half_life",
]


@dataclass(frozen=True)
class QcsReport:
    qcs_squared: float
    method: str
    relative_gain: float | None = None


def qcs_gaussian(state: GaussianState) -> QcsReport:
    """C^2 = Tr V^-1 / 2n for any Gaussian state (pure or mixed)."""
    value = float(np.trace(state.v_inv)) / (2 * state.n)
    return QcsReport(value, "gaussian-closed-form")


def _qcs_from_char_poly(prefactor: moments.PolyExpr, state: GaussianState) -> float:
    """C^2 from |chi|^2 = |prefactor|^2 exp(-xi^T Omega V Omega^T xi)."""
    O = omega(state.n)
    weight = moments.GaussianWeight(O @ state.V @ O.T, np.zeros(2 * state.n))
    p2 = prefactor * prefactor.conjugate()
    den = moments.integrate_poly_gaussian(p2, weight).real
    num = moments.integrate_poly_gaussian(moments.squared_radius(2 * state.n) * p2, weight).real
    return num / (state.n * den)


def qcs_gaussian_via_moments(state: GaussianState) -> QcsReport:
    """Same quantity as :func:`qcs_gaussian`, via the moment engine (dual path)."""
    one = moments.PolyExpr.constant(2 * state.n, 1.0)
    return QcsReport(_qcs_from_char_poly(one, state), "moment-engine")


def qcs_photon_tuned(ps: PhotonTunedState) -> QcsReport:
    """QCS of a photon-added/subtracted Gaussian state, exactly via moments."""
    return QcsReport(_qcs_from_char_poly(char_polynomial(ps), ps.mother), "moment-engine")


def qcs_pure_total_noise(ps: PhotonTunedState) -> QcsReport:
    """QCS of a *pure* tuned state from the total noise sum_i (Dx_i)^2 + (Dp_i)^2 over n.

    Valid when the mother state is pure (det V = 1); the quadrature first and
    second moments are taken from W_pm with the moment engine.
    """
    if abs(purity(ps.mother) - 1.0) > 1e-8:
        raise ValueError("total-noise QCS requires a pure mother state (det V = 1)")
    poly = wigner_polynomial(ps)
    w = wigner_weight(ps)
    dim = 2 * ps.n
    total = moments.integrate_poly_gaussian(poly, w).real
    noise = 0.0
    for i in range(dim):
        mono1 = [0] * dim
        mono1[i] = 1
        mono2 = [0] * dim
        mono2[i] = 2
        first = moments.integrate_poly_gaussian(
            moments.PolyExpr(dim, {tuple(mono1): 1.0}) * poly, w
        ).real / total
        second = moments.integrate_poly_gaussian(
            moments.PolyExpr(dim, {tuple(mono2): 1.0}) * poly, w
        ).real / total
        noise += second - first**2
    return QcsReport(noise / ps.n, "pure-state-total-noise")


def relative_gain(ps: PhotonTunedState) -> float:
    """Relative QCS change (C^2(rho_pm) - C^2(rho)) / C^2(rho)."""
    mother = qcs_gaussian(ps.mother).qcs_squared
    tuned = qcs_photon_tuned(ps).qcs_squared
    return (tuned - mother) / mother


def qcs_closed_form_sqth(q: float, r: float, sign: int) -> float:
    """Closed-form C^2 of photon-added/subtracted squeezed thermal states.

    Oracle counterpart of :func:`qcs_photon_tuned` on the SqTh family; the
    (q=0, r=0, sign=-1) point is rejected (annihilating subtraction).
    """
    if not 0.0 <= q < 1.0 or r < 0.0:
        raise ValueError("require 0 <= q < 1 and r >= 0")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    c2 = np.cosh(2 * r)
    if sign > 0:
        den = 2 * (1 - q**4) * c2 + 2 * (1 + q**2) ** 2 + (q**4 + 10 * q**2 + 1) * np.sinh(2 * r) ** 2
        bracket = (
            -8 * q * (q**2 - 1)
            + 3 * (q**4 - 4 * q**3 + 10 * q**2 - 4 * q + 1) * c2**3
            + 6 * (q - 1) ** 2 * (1 - q**2) * c2**2
            + (3 * q**4 + 8 * q**3 - 26 * q**2 + 8 * q + 3) * c2
        )
        return (1 - q) / (1 + q) * bracket / den
    if q == 0.0 and r == 0.0:
        raise AnnihilatingSubtractionError("C^2_SqTh- is undefined at q = r = 0 (N_- = infinity)")
    c4, c6 = np.cosh(4 * r), np.cosh(6 * r)
    den = 2 * (q + 1) * (4 * (q**4 - 1) * c2 + 3 * q**4 - 2 * q**2 + (q**4 + 10 * q**2 + 1) * c4 + 3)
    bracket = (
        12 * (q + 1) * (q - 1) ** 3 * c4
        + (21 * q**4 - 4 * q**3 - 14 * q**2 - 4 * q + 21) * c2
        + 3 * (1 - 4 * q + 10 * q**2 - 4 * q**3 + q**4) * c6
        + 4 * (q + 1) * (3 * q**2 + 2 * q + 3) * (q - 1)
    )
    return (1 - q) * bracket / den


def purity_half_life(qcs_squared: float, n_bar_env: float, t_relax: float) -> float:
    """Half-life of the purity under a thermal bath: t_R / (2 ((2 nbar + 1) C^2 - 1)).

    Requires (2 n_bar_env + 1) * qcs_squared > 1 (the regime where the
    approximation holds); t_relax is the bath relaxation time scale.
    """
    if t_relax <= 0:
        raise ValueError("t_relax must be positive")
    if n_bar_env < 0:
        raise ValueError("n_bar_env must be nonnegative")
    gap = (2 * n_bar_env + 1) * qcs_squared - 1.0
    if gap <= 0:
        raise ValueError(
            "purity half-life formula requires (2 n_bar + 1) C^2 > 1 "
            f"(got (2*{n_bar_env}+1)*{qcs_squared} = {gap + 1})"
        )
    return 0.5 * t_relax / gap
