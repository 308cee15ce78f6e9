"""Classical capacities of a lossy bosonic channel with Gaussian memory.

The environment of a chain of ``n`` beam splitters is a multimode squeezed
state correlated by a nearest-neighbour coupling matrix.  The package computes
the Holevo, heterodyne and homodyne rates for finite ``n`` in closed form, their
``n -> inf`` limits as one-dimensional integrals, and their maxima over the
encoding parameters.
"""

from .asymptotics import asymptotic_rate, limits_theta_K, rate_density, riemann_average
from .channel import (
    SINGLE_QUADRATURE,
    SYMMETRIC,
    ChannelParams,
    EncodingParams,
    EnergyAccount,
    build_model_covariances,
    check_energy,
    classical_K,
    energy_account,
    r_bounds,
    theta_n,
)
from .errors import (
    BmcapError,
    ConstraintViolation,
    DimensionError,
    DivergenceError,
    DomainError,
    QuadratureError,
    RangeError,
    SolverError,
    SpectralError,
    SweepError,
)
from .optimize import (
    OptimizationResult,
    SweepSpec,
    golden_section_max,
    maximize_over_r_y,
    maximize_over_y,
    sweep,
)
from .rates import (
    HETERODYNE,
    HOLEVO,
    HOMODYNE,
    RATE_KINDS,
    closed_form_nu,
    closed_form_spectra,
    heterodyne_info,
    holevo_chi,
    homodyne_info,
    memoryless_baseline,
    rate_per_mode,
    rate_total,
)
from .special import QuadratureSpec, bessel_i0, integrate
from .spectral import (
    build_omega,
    entropy_g,
    exp_omega,
    exp_omega_covariance,
    omega_eigenvalues,
    symplectic_eigenvalues,
    von_neumann_entropy,
)
from .verify import CheckReport, run_all

__version__ = "0.1.0"
