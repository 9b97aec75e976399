"""Phase-space toolkit for a two-plane deformed harmonic oscillator.

Covers the derived constants and linear maps (params), quadrature and
Laguerre machinery (special), closed-form dynamics (dynamics), stationary
states and plane reductions (wigner), linear-entropy reports (information),
the thermal state and its distortion measures (thermo), the axially
symmetric solution (zeeman), and a deterministic CLI (cli).
"""

from .dynamics import InitialData, evolve, invariants, ode_residual, orbit_closure
from .errors import GridCoverageError, InvalidPhysics
from .information import (
    EntropyReport,
    beat_frequency,
    coherence_length,
    decoherence_time,
    entropies,
    purity4,
)
from .params import (
    DerivedParams,
    OscillatorConfig,
    PhasePoint,
    derive_params,
    jacobian_det,
    sw_forward,
    sw_inverse,
)
from .special import (
    QuadratureRule,
    gauss_hermite,
    integrate_4d,
    laguerre,
    laguerre_convolution,
    laguerre_generating_sum,
)
from .thermo import (
    ThermoPoint,
    ThermoReport,
    distortion_map,
    missing_information,
    partition,
    position_distribution,
    sigma_max,
    thermal_entropies,
    thermal_wigner,
    thermo_report,
)
from .wigner import (
    CartesianModes,
    ModeIndex,
    PhaseGrid,
    cartesian_mode,
    energy,
    product_state,
    stargen,
    superposition_n,
    trace_out,
    xi_split,
)
from .zeeman import (
    RadialModes,
    free_eta_energy,
    mode_map,
    mode_unmap,
    radial_eigenfunction,
    zeeman_energy,
)

__version__ = "0.1.0"
