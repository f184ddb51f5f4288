"""Synthesis of the 3-D free-space Green's function from 2.5-D modes.

The package builds the cylindrical-mode synthesis integral on six
integration contours (linear spectrum, angular spectrum, quadratic
stationary-phase approximation, and three exact steepest-descent
parametrizations), with midpoint-Riemann, Gauss-Legendre and
Gauss-Hermite rules, and benchmarks them against the closed-form
point-source field.
"""

from .contours import (
    ANGULAR,
    EXACT_SD_S,
    EXACT_SD_T,
    EXACT_SD_THETA,
    LINEAR,
    QUADRATIC_SD,
    VARIANTS,
    ContourSample,
    ContourSpec,
    SampledContour,
    build_contour,
    stability_map,
)
from .errors import (
    ConfigError,
    DomainOverflowError,
    GreensynthError,
    NumericalFailure,
    RuleCompatibilityError,
    SingularityError,
)
from .quadrature import (
    GAUSS_HERMITE,
    GAUSS_LEGENDRE,
    RIEMANN_MIDPOINT,
    QuadratureRule,
    nodes,
)
from .sommerfeld import (
    SommerfeldCase,
    SommerfeldResult,
    expansion_identities_check,
    sommerfeld_identity_check,
)
from .special_functions import (
    EULER_MASCHERONI,
    bessel_j0,
    hankel0,
    hankel0_scaled,
    hermite,
)
from .spectral import (
    Medium,
    Observation,
    SpectralPoint,
    integrand_parts,
    krho_loci,
    physical_krho,
    theta_to_modes,
)
from .synthesis import (
    ConvergenceFit,
    SynthesisResult,
    fit_convergence,
    greens25,
    greens3d_exact,
    relative_error,
    synthesize,
    trim_plateau,
)

__version__ = "0.1.0"
