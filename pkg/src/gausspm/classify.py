"""Classicality and Wigner-negativity classification.

A Gaussian state is classical iff V >= I.  Photon subtraction preserves both
classicality and nonclassicality of Gaussian states, and for a single mode
the Wigner negativity of the subtracted state is decided by the mother's QCS:

    v1 > 1  ->  classical, Wigner positive
    v1 < 1  ->  Wigner negative  iff  C^2(mother) > 1
    v1 = 1  ->  Wigner negative  iff  C^2(mother) > 1 + (d . e1)^2

with v1 the smallest eigenvalue of V and e1 its eigenvector.  For several
modes the criterion mbar^T V^-1 m > 1 is necessary, and also sufficient when
d = 0 or 1 is not an eigenvalue of V; otherwise only a three-valued answer is
possible (``wigner_negative`` is None in that case).  Photon addition always
produces a Wigner-negative state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase_space import GaussianState
from .photon_ops import PhotonTunedState
from .qcs import qcs_gaussian, qcs_photon_tuned

__all__ = [
    "ClassificationReport",
    "classify_gaussian",
    "classify_subtracted",
    "classify_added",
    "boundary_lines",
]

#: tolerance below which an eigenvalue counts as exactly 1 (degenerate branch)
EIG_DEGENERACY_TOL = 1e-9

#: classicality margin on the smallest eigenvalue of V - I
CLASSICAL_TOL = 1e-10


@dataclass(frozen=True)
class ClassificationReport:
    """Flags plus the scalars that witnessed them.

    ``wigner_negative`` is True/False when decidable and None in the
    multi-mode case with d != 0 and 1 in spec(V), where only necessity of the
    mbar^T V^-1 m > 1 criterion is available.  ``witness_values`` carries
    min_eig_V_minus_I, v1, d_proj = (d . e1)^2 and mvm = mbar^T V^-1 m of the
    mother state, and qcs_squared of the classified state itself.
    """

    classical: bool
    strongly_nonclassical: bool
    wigner_negative: bool | None
    witness_values: dict[str, float]


def _mother_witnesses(state: GaussianState, m: np.ndarray | None) -> dict[str, float]:
    eigvals, eigvecs = state.v_eig
    v1 = float(eigvals[0])
    e1 = eigvecs[:, 0]
    out = {
        "min_eig_V_minus_I": v1 - 1.0,
        "v1": v1,
        "d_proj": float(state.d @ e1) ** 2,
    }
    if m is not None:
        out["mvm"] = float(np.real(np.conj(m) @ state.v_inv @ m))
    return out


def classify_gaussian(state: GaussianState) -> ClassificationReport:
    """Classify a Gaussian state; Gaussian states are never Wigner negative."""
    witnesses = _mother_witnesses(state, None)
    c2 = qcs_gaussian(state).qcs_squared
    witnesses["qcs_squared"] = c2
    classical = witnesses["min_eig_V_minus_I"] >= -CLASSICAL_TOL
    return ClassificationReport(
        classical=classical,
        strongly_nonclassical=c2 > 1.0,
        wigner_negative=False,
        witness_values=witnesses,
    )


def classify_subtracted(ps: PhotonTunedState) -> ClassificationReport:
    """Classify a photon-subtracted Gaussian state."""
    if ps.sign != -1:
        raise ValueError("classify_subtracted expects sign = -1")
    mother = ps.mother
    witnesses = _mother_witnesses(mother, ps.m_c)
    c2_mother = qcs_gaussian(mother).qcs_squared
    c2_self = qcs_photon_tuned(ps).qcs_squared
    witnesses["qcs_squared"] = c2_self
    classical = witnesses["min_eig_V_minus_I"] >= -CLASSICAL_TOL

    negative: bool | None
    if mother.n == 1:
        v1 = witnesses["v1"]
        if v1 > 1.0 + EIG_DEGENERACY_TOL:
            negative = False
        elif v1 < 1.0 - EIG_DEGENERACY_TOL:
            negative = c2_mother > 1.0
        else:
            negative = c2_mother > 1.0 + witnesses["d_proj"]
    else:
        mvm = witnesses["mvm"]
        eigvals, _ = mother.v_eig
        has_unit_eig = bool(np.min(np.abs(eigvals - 1.0)) < EIG_DEGENERACY_TOL)
        centered = bool(np.max(np.abs(mother.d)) < 1e-12)
        if mvm <= 1.0:
            negative = False
        elif centered or not has_unit_eig:
            negative = True
        else:
            negative = None  # criterion only necessary here
    if classical:
        negative = False
    return ClassificationReport(
        classical=classical,
        strongly_nonclassical=c2_self > 1.0,
        wigner_negative=negative,
        witness_values=witnesses,
    )


def classify_added(ps: PhotonTunedState) -> ClassificationReport:
    """Classify a photon-added Gaussian state: always Wigner negative."""
    if ps.sign != +1:
        raise ValueError("classify_added expects sign = +1")
    witnesses = _mother_witnesses(ps.mother, ps.m_c)
    c2_self = qcs_photon_tuned(ps).qcs_squared
    witnesses["qcs_squared"] = c2_self
    return ClassificationReport(
        classical=False,
        strongly_nonclassical=c2_self > 1.0,
        wigner_negative=True,
        witness_values=witnesses,
    )


def boundary_lines(q: float) -> dict[str, float]:
    """The two (q, r)-plane boundary lines of the SqTh family.

    ``r_classical`` = (1/2) ln((1+q)/(1-q)) separates classical from
    nonclassical SqTh and SqTh- states; ``r_qcs_one`` solves
    (1-q)/(1+q) cosh 2r = 1, above which C^2 > 1 (and SqTh- becomes Wigner
    negative).
    """
    if not 0.0 <= q < 1.0:
        raise ValueError("require 0 <= q < 1")
    nu = (1.0 + q) / (1.0 - q)
    return {
        "r_classical": 0.5 * np.log(nu),
        "r_qcs_one": 0.5 * np.arccosh(nu),
    }
