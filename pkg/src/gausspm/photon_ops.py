"""Photon addition and subtraction on Gaussian mother states.

For a Gaussian state (V, d) and a normalized mode vector c, the tuned state
rho_+/- = N a^{+/-}(c) rho a^{-/+}(c) has characteristic function

    chi_pm(z) = N (1/2 mbar^T V m +- 1/2 - (beta^T m)(mbar^T beta)) chi_G(z),
    beta = (1/sqrt2)(Omega V Omega -+ I) xi + i Omega d,

and Wigner function

    W_pm(r) = N (M_pm + |lambda^T m|^2) W_G(r),
    lambda = (V^-1 +- I) r - V^-1 d,   M_pm = -+1/2 - 1/2 mbar^T V^-1 m,

with m = m_c the ladder-space image of c.  The normalization N is fixed by
chi_pm(0) = 1.  Subtraction is undefined exactly when a(c) rho a^dag(c) = 0,
i.e. m_c in Ker(V - I) and mbar_c . d = 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import moments
from .phase_space import (
    GaussianState,
    ModeVector,
    gaussian_char,
    gaussian_wigner,
    mode_m_vector,
    omega,
    xi_from_z,
)

__all__ = [
    "AnnihilatingSubtractionError",
    "PhotonTunedState",
    "m_pm_constant",
    "is_annihilating",
    "make_photon_tuned",
    "char_pm",
    "wigner_pm",
    "char_polynomial",
    "wigner_polynomial",
    "wigner_weight",
    "mean_photon_pm",
    "general_char_derivative_form",
]

#: kernel-membership tolerance for the annihilating-subtraction test
KERNEL_RTOL = 1e-9

#: tolerated imaginary residue in the real-valued Wigner prefactor
IMAG_RTOL = 1e-12


class AnnihilatingSubtractionError(ValueError):
    """a(c) rho a^dag(c) = 0: photon subtraction does not produce a state."""

    def __init__(self, message: str, kernel_vector: np.ndarray | None = None):
        super().__init__(message)
        self.kernel_vector = kernel_vector


def _as_mode_vector(c) -> ModeVector:
    return c if isinstance(c, ModeVector) else ModeVector(np.atleast_1d(np.asarray(c, dtype=complex)))


def is_annihilating(mother: GaussianState, c) -> bool:
    """True iff subtracting a photon in mode c annihilates the Gaussian state.

    Criterion: m_c in Ker(V - I) within ||(V-I)m|| <= 1e-9 ||V||, together
    with mbar_c . d = 0 within the same relative tolerance.
    """
    cv = _as_mode_vector(c)
    if cv.n != mother.n:
        raise ValueError("mode vector and state have different mode counts")
    m = mode_m_vector(cv)
    residual = (mother.V - np.eye(2 * mother.n)) @ m
    vnorm = np.linalg.norm(mother.V, 2)
    if np.linalg.norm(residual) > KERNEL_RTOL * vnorm:
        return False
    overlap = np.conj(m) @ mother.d
    return abs(overlap) <= KERNEL_RTOL * max(1.0, np.linalg.norm(mother.d))


@dataclass(frozen=True)
class PhotonTunedState:
    """A photon-added (sign=+1) or photon-subtracted (sign=-1) Gaussian state.

    The normalization ``norm`` (N_pm) and ladder vector ``m_c`` are computed
    and cached at construction; constructing a subtracted state from an
    annihilating (mother, c) pair raises :class:`AnnihilatingSubtractionError`.
    """

    mother: GaussianState
    sign: int
    c: ModeVector
    m_c: np.ndarray = field(init=False, repr=False)
    norm: float = field(init=False)

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 (addition) or -1 (subtraction)")
        cv = _as_mode_vector(self.c)
        object.__setattr__(self, "c", cv)
        if cv.n != self.mother.n:
            raise ValueError("mode vector and state have different mode counts")
        m = mode_m_vector(cv)
        m.flags.writeable = False
        object.__setattr__(self, "m_c", m)
        if self.sign < 0 and is_annihilating(self.mother, cv):
            raise AnnihilatingSubtractionError(
                "a(c) rho a^dag(c) = 0 for this Gaussian state: photon subtraction "
                "is undefined (m_c lies in Ker(V - I) and mbar_c . d = 0)",
                kernel_vector=m,
            )
        O = omega(self.mother.n)
        a0 = 0.5 * np.real(np.conj(m) @ self.mother.V @ m) + 0.5 * self.sign
        s0 = (O @ self.mother.d) @ m
        inv_norm = a0 + abs(s0) ** 2
        object.__setattr__(self, "norm", float(1.0 / inv_norm))

    @property
    def n(self) -> int:
        return self.mother.n

    @cached_property
    def m_projector_real(self) -> np.ndarray:
        """Re(m_c mbar_c^T): the real quadratic form with lam^T m mbar^T lam = lam^T P lam."""
        P = np.real(np.outer(self.m_c, np.conj(self.m_c)))
        P.flags.writeable = False
        return P


def make_photon_tuned(mother: GaussianState, sign: int, c) -> PhotonTunedState:
    """Build the photon-added (+1) / photon-subtracted (-1) state on mode c."""
    return PhotonTunedState(mother, sign, _as_mode_vector(c))


def _beta_linear(ps: PhotonTunedState) -> tuple[np.ndarray, complex]:
    """Return (u, s0) with beta^T m_c = u . xi + i s0.

    The displacement enters as -i (Omega d)^T m_c; the opposite sign breaks
    the Fourier pairing with W_pm and the differential definition of chi_pm
    whenever d != 0.
    """
    O = omega(ps.n)
    B = (O @ ps.mother.V @ O - ps.sign * np.eye(2 * ps.n)) / np.sqrt(2.0)
    u = B.T @ ps.m_c
    s0 = -(O @ ps.mother.d) @ ps.m_c
    return u, s0


def m_pm_constant(ps: PhotonTunedState) -> float:
    """The r-independent Wigner prefactor constant M_pm = -+1/2 - 1/2 mbar^T V^-1 m.

    A debug hook for mutation sanity checks: GAUSSPM_DEBUG_M_OFFSET, when set,
    is added to the constant, which must make the self-test fail.
    """
    value = -0.5 * ps.sign - 0.5 * float(np.real(np.conj(ps.m_c) @ ps.mother.v_inv @ ps.m_c))
    offset = os.environ.get("GAUSSPM_DEBUG_M_OFFSET")
    return value + float(offset) if offset else value


def char_pm(ps: PhotonTunedState, z) -> complex | np.ndarray:
    """Characteristic function of the tuned state at z (shape (..., n) or scalar for n=1)."""
    xi = xi_from_z(z)
    u, s0 = _beta_linear(ps)
    a0 = 0.5 * np.conj(ps.m_c) @ ps.mother.V @ ps.m_c + 0.5 * ps.sign
    f = xi @ u + 1j * s0
    g = xi @ np.conj(u) + 1j * np.conj(s0)
    out = ps.norm * (a0 - f * g) * gaussian_char(ps.mother, z)
    return complex(out) if np.ndim(out) == 0 else out


def wigner_pm(ps: PhotonTunedState, r) -> float | np.ndarray:
    """Wigner function of the tuned state at quadrature point(s) r (dx dp normalized)."""
    r = np.asarray(r, dtype=float)
    vi = ps.mother.v_inv
    lam = r @ (vi + ps.sign * np.eye(2 * ps.n)).T - vi @ ps.mother.d
    quad = np.einsum("...i,ij,...j->...", lam, np.outer(ps.m_c, np.conj(ps.m_c)), lam)
    if np.max(np.abs(quad.imag)) > IMAG_RTOL * max(1.0, np.max(np.abs(quad.real))):
        raise AssertionError("rank-one Wigner contraction has a non-real residue")
    out = ps.norm * (m_pm_constant(ps) + quad.real) * gaussian_wigner(ps.mother, r)
    return float(out) if np.ndim(out) == 0 else out


def char_polynomial(ps: PhotonTunedState) -> moments.PolyExpr:
    """Polynomial prefactor P(xi) with chi_pm = N_pm P(xi) chi_G(xi)."""
    u, s0 = _beta_linear(ps)
    a0 = 0.5 * np.conj(ps.m_c) @ ps.mother.V @ ps.m_c + 0.5 * ps.sign
    f = moments.PolyExpr.affine(u, 1j * s0)
    g = moments.PolyExpr.affine(np.conj(u), 1j * np.conj(s0))
    return moments.PolyExpr.constant(2 * ps.n, a0) - f * g


def wigner_polynomial(ps: PhotonTunedState) -> moments.PolyExpr:
    """Real polynomial prefactor p(r) with W_pm = N_pm p(r) W_G(r)."""
    vi = ps.mother.v_inv
    C = vi + ps.sign * np.eye(2 * ps.n)
    e = vi @ ps.mother.d
    h = moments.PolyExpr.affine(C.T @ ps.m_c, -(e @ ps.m_c))
    return h * h.conjugate() + m_pm_constant(ps)


def wigner_weight(ps: PhotonTunedState) -> moments.GaussianWeight:
    """Gaussian core of W_pm: N_pm exp(-(r-d)^T V^-1 (r-d)) / (pi^n sqrt det V)."""
    scale = ps.norm / (np.pi**ps.n * np.sqrt(ps.mother.det_v))
    return moments.GaussianWeight(ps.mother.v_inv, ps.mother.d, scale)


def mean_photon_pm(ps: PhotonTunedState) -> float:
    """Mean photon number of the tuned state, from second moments of W_pm."""
    poly = wigner_polynomial(ps)
    w = wigner_weight(ps)
    total = moments.integrate_poly_gaussian(poly, w).real
    second = moments.integrate_poly_gaussian(moments.squared_radius(2 * ps.n) * poly, w).real
    return 0.5 * second / total - 0.5 * ps.n


def _wirtinger_derivatives(chi, z0: np.ndarray, step: float):
    """Value, z/zbar gradients, and mixed d2/dz_j dzbar_k of chi at z0.

    Central differences in the real coordinates with one Richardson
    extrapolation step (h and h/2).
    """
    n = z0.size

    def ev(xi_off):
        dz = xi_off[0::2] + 1j * xi_off[1::2]
        return chi(z0 + dz)

    def d1(a_idx, h):
        off = np.zeros(2 * n)
        off[a_idx] = h
        return (ev(off) - ev(-off)) / (2 * h)

    def d2(a_idx, b_idx, h):
        if a_idx == b_idx:
            off = np.zeros(2 * n)
            off[a_idx] = h
            return (ev(off) - 2 * ev(np.zeros(2 * n)) + ev(-off)) / h**2
        oa = np.zeros(2 * n)
        ob = np.zeros(2 * n)
        oa[a_idx] = h
        ob[b_idx] = h
        return (ev(oa + ob) - ev(oa - ob) - ev(-oa + ob) + ev(-oa - ob)) / (4 * h**2)

    def rich(f):
        return (4.0 * f(step / 2) - f(step)) / 3.0

    val = chi(z0)
    dre = np.array([rich(lambda h, a=2 * j: d1(a, h)) for j in range(n)])
    dim = np.array([rich(lambda h, a=2 * j + 1: d1(a, h)) for j in range(n)])
    dz = 0.5 * (dre - 1j * dim)
    dzbar = 0.5 * (dre + 1j * dim)
    mixed = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            drr = rich(lambda h, a=2 * j, b=2 * k: d2(a, b, h))
            dri = rich(lambda h, a=2 * j, b=2 * k + 1: d2(a, b, h))
            dir_ = rich(lambda h, a=2 * j + 1, b=2 * k: d2(a, b, h))
            dii = rich(lambda h, a=2 * j + 1, b=2 * k + 1: d2(a, b, h))
            # d2/dz_j dzbar_k = 1/4 (d_rr + d_ii) + i/4 (d_ri - d_ir)
            mixed[j, k] = 0.25 * (drr + dii) + 0.25j * (dri - dir_)
    return val, dz, dzbar, mixed


def general_char_derivative_form(chi, c, z, sign: int, step: float = 1e-4, normalize: bool = True):
    """Finite-difference oracle for chi_pm from a sampled characteristic function.

    Applies -[c.(d_z -+ zbar/2)][cbar.(d_zbar -+ z/2)] to the callable ``chi``
    by central differences (step ``step``, Richardson extrapolated).  With
    ``normalize`` the result is divided by its z=0 value, which equals chi_pm
    including the N_pm factor.  Intended as a cross-check for
    :func:`char_pm`, not as a production path.
    """
    cv = _as_mode_vector(c)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if step <= 0 or step < 1e-12:
        raise ValueError("finite-difference step underflow")

    def apply(z0):
        val, dz, dzbar, mixed = _wirtinger_derivatives(chi, z0, step)
        cvec = cv.c
        total = 0.0 + 0.0j
        for j in range(cv.n):
            for k in range(cv.n):
                term = mixed[j, k]
                if j == k:
                    term -= 0.5 * sign * val
                term -= 0.5 * sign * z0[k] * dz[j]
                term -= 0.5 * sign * np.conj(z0[j]) * dzbar[k]
                term += 0.25 * np.conj(z0[j]) * z0[k] * val
                total += cvec[j] * np.conj(cvec[k]) * term
        return -total

    raw = apply(z)
    if not normalize:
        return raw
    return raw / apply(np.zeros(cv.n, dtype=complex))
