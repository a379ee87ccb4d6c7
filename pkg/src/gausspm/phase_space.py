"""Symplectic basics and multi-mode Gaussian states.

Quadratures are ordered (x1, p1, ..., xn, pn) with x = (a + a^dag)/sqrt(2),
p = -i(a - a^dag)/sqrt(2), so the vacuum covariance matrix is the identity
(V_ij = 2 Cov[r_i, r_j]).  The characteristic function of a Gaussian state is

    chi(xi) = exp(-1/2 xi^T Omega V Omega^T xi - i sqrt(2) (Omega d)^T xi)

and its Wigner function, normalized so that the integral over dx dp equals 1,

    W(r) = exp(-(r - d)^T V^-1 (r - d)) / (pi^n sqrt(det V)).

The complex argument z of chi is related to the real vector xi by
z_j = xi_{j,1} + i xi_{j,2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "InvalidStateError",
    "SymplecticConstants",
    "ModeVector",
    "GaussianState",
    "omega",
    "u_matrix",
    "symplectic_constants",
    "mode_m_vector",
    "xi_from_z",
    "z_from_xi",
    "gaussian_char",
    "gaussian_wigner",
    "purity",
    "mean_photon_number",
]

#: relative tolerance for covariance-matrix validation
STATE_RTOL = 1e-10


class InvalidStateError(ValueError):
    """Raised when (V, d) do not describe a bona fide quantum state."""


def omega(n: int) -> np.ndarray:
    """Symplectic form: block diagonal of [[0, 1], [-1, 0]] for n modes."""
    o2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n, 2 * n))
    for j in range(n):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = o2
    return out


def u_matrix(n: int) -> np.ndarray:
    """Quadrature-to-ladder transformation: block diagonal of (1/sqrt2)[[1, i], [1, -i]]."""
    u2 = np.array([[1.0, 1j], [1.0, -1j]]) / np.sqrt(2.0)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(n):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = u2
    return out


@dataclass(frozen=True)
class SymplecticConstants:
    """The fixed transformation matrices for a given mode count."""

    n: int
    Omega: np.ndarray = field(init=False, repr=False)
    U: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "Omega", omega(self.n))
        object.__setattr__(self, "U", u_matrix(self.n))


def symplectic_constants(n: int) -> SymplecticConstants:
    return SymplecticConstants(n)


@dataclass(frozen=True)
class ModeVector:
    """Normalized complex vector selecting the mode on which a photon is added/subtracted."""

    c: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("mode vector must be a nonempty 1-d complex vector")
        norm2 = float(np.sum(np.abs(c) ** 2))
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"mode vector not normalized: sum |c_i|^2 = {norm2!r}")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return self.c.size


def mode_m_vector(c) -> np.ndarray:
    """Map a mode vector c in C^n to m_c = U^dag (c1, 0, ..., cn, 0) in C^2n.

    Componentwise, m_c = (c1, -i c1, ..., cn, -i cn)/sqrt(2); it satisfies
    Omega^T m_c = i m_c and |m_c| = 1 for normalized c.
    """
    cv = c.c if isinstance(c, ModeVector) else np.atleast_1d(np.asarray(c, dtype=complex))
    m = np.empty(2 * cv.size, dtype=complex)
    m[0::2] = cv / np.sqrt(2.0)
    m[1::2] = -1j * cv / np.sqrt(2.0)
    return m


def xi_from_z(z) -> np.ndarray:
    """Real 2n-vector xi from complex n-vector z, z_j = xi_{j,1} + i xi_{j,2}.

    Accepts a trailing-batch layout: input shape (..., n) gives output (..., 2n).
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z[None]
    xi = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    xi[..., 0::2] = z.real
    xi[..., 1::2] = z.imag
    return xi


def z_from_xi(xi) -> np.ndarray:
    """Inverse of :func:`xi_from_z`."""
    xi = np.asarray(xi, dtype=float)
    return xi[..., 0::2] + 1j * xi[..., 1::2]


@dataclass(frozen=True)
class GaussianState:
    """An n-mode Gaussian state given by covariance matrix V and displacement d.

    The constructor validates that V is symmetric and satisfies the
    uncertainty relation V + i Omega >= 0 (all symplectic eigenvalues >= 1,
    checked through the spectrum of Omega V Omega^T V); invalid input is
    rejected rather than repaired.
    """

    V: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.V, dtype=float).copy()
        d = np.atleast_1d(np.asarray(self.d, dtype=float)).copy()
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 or V.shape[0] == 0:
            raise InvalidStateError(f"V must be 2n x 2n, got shape {V.shape}")
        if d.shape != (V.shape[0],):
            raise InvalidStateError(f"d must have length {V.shape[0]}, got {d.shape}")
        scale = max(np.abs(V).max(), 1.0)
        if np.abs(V - V.T).max() > STATE_RTOL * scale:
            raise InvalidStateError("V is not symmetric")
        V = 0.5 * (V + V.T)
        n = V.shape[0] // 2
        O = omega(n)
        # symplectic eigenvalues squared: eigenvalues of Omega V Omega^T V
        sigma2 = np.linalg.eigvals(O @ V @ O.T @ V)
        if np.abs(sigma2).min() < 1.0 - STATE_RTOL:
            raise InvalidStateError(
                "V violates the uncertainty relation (symplectic eigenvalue < 1): "
                f"min |eig(Omega V Omega^T V)| = {np.abs(sigma2).min()!r}"
            )
        if np.linalg.det(V) < 1.0 - STATE_RTOL:
            raise InvalidStateError("det V < 1")
        V.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.V.shape[0] // 2

    @cached_property
    def det_v(self) -> float:
        return float(np.linalg.det(self.V))

    @cached_property
    def v_inv(self) -> np.ndarray:
        vi = np.linalg.inv(self.V)
        vi = 0.5 * (vi + vi.T)
        vi.flags.writeable = False
        return vi

    @cached_property
    def v_eig(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending) and eigenvectors of V."""
        w, q = np.linalg.eigh(self.V)
        w.flags.writeable = False
        q.flags.writeable = False
        return w, q


def gaussian_char(state: GaussianState, z) -> complex | np.ndarray:
    """Characteristic function chi(z) = Tr[rho D(z)] of a Gaussian state.

    ``z`` may be a complex n-vector or a batch of shape (..., n); for n = 1 a
    bare complex scalar is accepted.
    """
    xi = xi_from_z(z)
    O = omega(state.n)
    Q = O @ state.V @ O.T
    quad = np.einsum("...i,ij,...j->...", xi, Q, xi)
    lin = xi @ (O @ state.d)
    out = np.exp(-0.5 * quad - 1j * np.sqrt(2.0) * lin)
    return complex(out) if out.ndim == 0 else out


def gaussian_wigner(state: GaussianState, r) -> float | np.ndarray:
    """Wigner function W(r) at quadrature point(s) r, with integral dx dp = 1.

    W(r) = exp(-(r-d)^T V^-1 (r-d)) / (pi^n sqrt(det V)); peaks at 1/pi^n for
    pure states.  ``r`` may have shape (2n,) or (..., 2n).
    """
    r = np.asarray(r, dtype=float)
    y = r - state.d
    quad = np.einsum("...i,ij,...j->...", y, state.v_inv, y)
    out = np.exp(-quad) / (np.pi**state.n * np.sqrt(state.det_v))
    return float(out) if out.ndim == 0 else out


def purity(state: GaussianState) -> float:
    """Tr rho^2 = 1/sqrt(det V)."""
    return 1.0 / np.sqrt(state.det_v)


def mean_photon_number(state: GaussianState) -> float:
    """Total mean photon number (Tr V - 2n)/4 + |d|^2/2."""
    return float((np.trace(state.V) - 2 * state.n) / 4.0 + 0.5 * state.d @ state.d)
