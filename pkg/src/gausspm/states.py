"""Named state families: squeezed thermal, coherent, two-mode products, and the
even/odd photon-added two-mode coherent states with their entanglement scalars.

A squeezed thermal state SqTh(q, r) has V = (1+q)/(1-q) diag(e^{-2r}, e^{2r})
and d = 0; q in [0, 1) is the thermal parameter (q = nbar/(1+nbar)) and r >= 0
the squeezing.  The squeezing phase is fixed to zero, which is no restriction
for the rotation-invariant quantities computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase_space import GaussianState, ModeVector
from .photon_ops import PhotonTunedState, make_photon_tuned
from .qcs import qcs_photon_tuned, qcs_pure_total_noise

__all__ = [
    "SqThParams",
    "TwoModeCoherentPlus",
    "EvenOddScalars",
    "make_sqth",
    "make_thermal",
    "make_coherent",
    "product",
    "make_sqth_tuned",
    "make_two_mode_sqth",
    "sqth_minus_mean_photon",
    "even_odd_state",
    "even_odd_scalars",
    "two_mode_sqthp_qcs",
    "random_gaussian_state",
]


@dataclass(frozen=True)
class SqThParams:
    q: float
    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.q < 1.0:
            raise ValueError("thermal parameter q must lie in [0, 1)")
        if self.r < 0.0:
            raise ValueError("squeezing r must be nonnegative")
        if self.phi != 0.0:
            raise ValueError("squeezing phase is fixed to 0")


def make_sqth(q: float, r: float) -> GaussianState:
    """Single-mode squeezed thermal state SqTh(q, r)."""
    SqThParams(q, r)
    nu = (1.0 + q) / (1.0 - q)
    V = nu * np.diag([np.exp(-2.0 * r), np.exp(2.0 * r)])
    return GaussianState(V, np.zeros(2))


def make_thermal(q: float) -> GaussianState:
    return make_sqth(q, 0.0)


def make_coherent(z) -> GaussianState:
    """Coherent state |z> for z in C^n: V = I, d = sqrt(2)(Re z1, Im z1, ...)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    d = np.empty(2 * z.size)
    d[0::2] = np.sqrt(2.0) * z.real
    d[1::2] = np.sqrt(2.0) * z.imag
    return GaussianState(np.eye(2 * z.size), d)


def product(*states: GaussianState) -> GaussianState:
    """Tensor product of Gaussian states (direct sum of V, concatenated d)."""
    dim = sum(2 * s.n for s in states)
    V = np.zeros((dim, dim))
    d = np.zeros(dim)
    k = 0
    for s in states:
        V[k : k + 2 * s.n, k : k + 2 * s.n] = s.V
        d[k : k + 2 * s.n] = s.d
        k += 2 * s.n
    return GaussianState(V, d)


def make_sqth_tuned(q: float, r: float, sign: int) -> PhotonTunedState:
    """SqTh+ / SqTh- state (single mode, c = 1)."""
    return make_photon_tuned(make_sqth(q, r), sign, [1.0])


def make_two_mode_sqth(q: float, r: float) -> GaussianState:
    return product(make_sqth(q, r), make_sqth(q, r))


def sqth_minus_mean_photon(q: float, r: float) -> float:
    """Mean photon number of the SqTh- state (closed form)."""
    c2 = np.cosh(2.0 * r)
    return 0.5 * ((3 * (1 + q) * c2 - 4 * q / ((1 + q) * c2 - (1 - q))) / (1 - q) - 1.0)


@dataclass(frozen=True)
class TwoModeCoherentPlus:
    """Delocalized single-photon addition on two coherent modes |alpha>|alpha>."""

    alpha: complex
    parity: str

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")


def even_odd_state(s: TwoModeCoherentPlus) -> PhotonTunedState:
    """Represent the even/odd state as photon addition with c = (1, +-1)/sqrt2."""
    mother = make_coherent([s.alpha, s.alpha])
    sgn = 1.0 if s.parity == "even" else -1.0
    c = ModeVector(np.array([1.0, sgn]) / np.sqrt(2.0))
    return make_photon_tuned(mother, +1, c)


@dataclass(frozen=True)
class EvenOddScalars:
    qcs_squared: float
    npt: float
    eof: float


def _even_odd_eof(alpha: complex, parity: str) -> float:
    """Entanglement of formation from the rank-2 reduced state.

    The reduced state lives in span{a^dag|alpha>, |alpha>}; its eigenvalues
    are those of M G with M the expansion coefficients and G the Gram matrix
    of that (non-orthogonal) pair.
    """
    a = complex(alpha)
    aa = abs(a) ** 2
    pm = 1.0 if parity == "even" else -1.0
    nsq = 1.0 / (1.0 + 2.0 * aa) if parity == "even" else 1.0
    M = 0.5 * nsq * np.array([[1.0, pm * a], [pm * np.conj(a), 1.0 + aa]])
    G = np.array([[1.0 + aa, a], [np.conj(a), 1.0]])
    eig = np.linalg.eigvals(M @ G).real
    eig = eig[eig > 1e-10]
    return float(-np.sum(eig * np.log(eig)))


def even_odd_scalars(s: TwoModeCoherentPlus) -> EvenOddScalars:
    """QCS (via the pure-state total-noise path), NPT and EoF of an even/odd state."""
    qcs = qcs_pure_total_noise(even_odd_state(s)).qcs_squared
    aa = abs(complex(s.alpha)) ** 2
    npt = 1.0 / (1.0 + aa) if s.parity == "even" else 1.0
    return EvenOddScalars(qcs, npt, _even_odd_eof(s.alpha, s.parity))


def _is_real_up_to_phase(c: np.ndarray) -> bool:
    ref = c[np.argmax(np.abs(c))]
    rotated = c * np.conj(ref) / abs(ref)
    return bool(np.max(np.abs(rotated.imag)) < 1e-12)


def two_mode_sqthp_qcs(q: float, r: float, c) -> float:
    """QCS of the photon-added two-mode squeezed thermal state 2SqTh+.

    For real mode vectors (up to a global phase) the result is independent of
    c, because real mode mixing is a passive symmetry of the product mother
    state; that independence is asserted against the c = (1, 0) reference.
    """
    mother = make_two_mode_sqth(q, r)
    cv = c if isinstance(c, ModeVector) else ModeVector(np.asarray(c, dtype=complex))
    value = qcs_photon_tuned(make_photon_tuned(mother, +1, cv)).qcs_squared
    if _is_real_up_to_phase(cv.c):
        ref = qcs_photon_tuned(make_photon_tuned(mother, +1, ModeVector([1.0, 0.0]))).qcs_squared
        if abs(value - ref) > 1e-8 * max(1.0, abs(ref)):
            raise AssertionError(
                f"2SqTh+ QCS lost its c-independence: {value!r} vs reference {ref!r}"
            )
    return value


def random_gaussian_state(n: int, rng: np.random.Generator, *, max_squeeze: float = 1.2,
                          max_thermal: float = 2.0, max_disp: float = 1.5) -> GaussianState:
    """Random bona fide Gaussian state: V = K (oplus_i R_i D_i R_i^T) K^T, nu_i >= 1.

    K is a random passive (orthogonal symplectic) mode mixer, D_i a squeezed
    thermal diagonal per mode, R_i a phase rotation.  Used for audits.
    """
    blocks = np.zeros((2 * n, 2 * n))
    for i in range(n):
        nu = 1.0 + max_thermal * rng.random()
        s = max_squeeze * (2 * rng.random() - 1)
        th = 2 * np.pi * rng.random()
        R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        blocks[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = R @ np.diag(
            [nu * np.exp(2 * s), nu * np.exp(-2 * s)]
        ) @ R.T
    if n > 1:
        # passive mixer from a Haar-ish random unitary, in xpxp ordering
        B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        Umix, _ = np.linalg.qr(B)
        K = np.zeros((2 * n, 2 * n))
        K[0::2, 0::2] = Umix.real
        K[0::2, 1::2] = -Umix.imag
        K[1::2, 0::2] = Umix.imag
        K[1::2, 1::2] = Umix.real
        blocks = K @ blocks @ K.T
    d = max_disp * rng.standard_normal(2 * n)
    return GaussianState(blocks, d)
