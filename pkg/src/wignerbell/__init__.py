"""Partial Bell-state analysis of down-converted light with vacuum fluctuations.

Field amplitudes are linear forms in Gaussian zeropoint amplitudes.  Exact
second moments give closed-form coincidence tables; a counter-based Monte
Carlo sampler and a two-photon Fock-space model cross-check them.
"""

from .analyzer import (
    PAIRS,
    AnalyzerFields,
    Classification,
    CoincidenceTable,
    analyze,
    classify,
    coincidence_table,
    exact_table,
    joint_probability,
)
from .hilbert import (
    OperatorPolynomial,
    bell_polynomial,
    bs_transform,
    coincidence_pattern,
    encode_polynomial,
    oracle_pattern,
)
from .montecarlo import (
    ConvergenceReport,
    McEstimate,
    convergence_report,
    mc_coincidence_table,
    mc_correlation,
    mc_table,
)
from .optics import (
    DetectorField,
    PolarizedBeam,
    apply_beamsplitter,
    apply_pbs,
    apply_retarder,
    apply_rotator,
    beam_moment,
)
from .source import (
    BellState,
    EncoderSettings,
    SourceConfig,
    bob_encode,
    crystal_output,
    encode_settings,
    prepare,
    standard_registry,
)
from .zpf import (
    LinearForm,
    ModeId,
    ModeRegistry,
    RegistryError,
    VacuumSample,
    evaluate,
    exact_correlation,
    lf_combine,
    register_mode,
    sample_vacuum,
)

__version__ = "0.1.0"
