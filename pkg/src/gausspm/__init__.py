"""gausspm: phase-space analysis of photon-added/subtracted multi-mode Gaussian states.

Covariance-matrix Gaussian states, closed-form characteristic and Wigner
functions of their single-photon added/subtracted variants, the quadrature
coherence scale, Wigner negative volumes, classicality tests and a quantum
non-Gaussianity witness, plus a CLI for parameter sweeps.
"""

from .classify import (
    ClassificationReport,
    boundary_lines,
    classify_added,
    classify_gaussian,
    classify_subtracted,
)
from .moments import GaussianWeight, PolyExpr, integrate_poly_gaussian, poly_product
from .negativity import (
    ConvergenceError,
    NegativeRegion,
    NegativityReport,
    QngReport,
    bessel_i0,
    negative_region_sqth,
    negative_volume_asymptotic,
    negative_volume_asymptotic_smallq,
    negative_volume_even_odd,
    negative_volume_single_mode,
    negative_volume_two_mode_sqthp,
    qng_witness,
)
from .phase_space import (
    GaussianState,
    InvalidStateError,
    ModeVector,
    SymplecticConstants,
    gaussian_char,
    gaussian_wigner,
    mean_photon_number,
    mode_m_vector,
    omega,
    purity,
    symplectic_constants,
    u_matrix,
    xi_from_z,
    z_from_xi,
)
from .photon_ops import (
    AnnihilatingSubtractionError,
    PhotonTunedState,
    char_pm,
    general_char_derivative_form,
    is_annihilating,
    make_photon_tuned,
    mean_photon_pm,
    wigner_pm,
)
from .qcs import (
    QcsReport,
    purity_half_life,
    qcs_closed_form_sqth,
    qcs_gaussian,
    qcs_gaussian_via_moments,
    qcs_photon_tuned,
    qcs_pure_total_noise,
    relative_gain,
)
from .states import (
    EvenOddScalars,
    SqThParams,
    TwoModeCoherentPlus,
    even_odd_scalars,
    even_odd_state,
    make_coherent,
    make_sqth,
    make_sqth_tuned,
    make_thermal,
    make_two_mode_sqth,
    product,
    random_gaussian_state,
    sqth_minus_mean_photon,
    two_mode_sqthp_qcs,
)

__version__ = "0.1.0"
