"""
Configuration constants for the entanglement audit toolkit.
"""
# Linear algebra
MAX_COMPOSITE_DIM = 256
HERMITIAN_INPUT_TOL = 1e-8
HERMITIAN_SYMMETRIZE_TOL = 1e-12
EIGEN_RECONSTRUCTION_TOL = 1e-10

# States
STATE_NORM_TOL = 1e-10
STATE_RENORMALIZE_WINDOW = 1e-6
DENSITY_TOL = 1e-10
DISTRIBUTION_SUM_TOL = 1e-12

# Schmidt decomposition
SCHMIDT_CUTOFF = 1e-12
SCHMIDT_ORTHOGONALITY_TOL = 1e-8

# Entropy
SIMPLEX_MAX_LENGTH = 64
CONTINUITY_SCALES = (1e-2, 1e-3, 1e-4)
CONTINUITY_THRESHOLD = 1e-3
CONTINUITY_GRID_POINTS = 1000
CONTINUITY_PAIRS = 1000

# Measures
ZERO_PROBE_SAMPLES = 50
ZERO_PROBE_THRESHOLD = 1e-12
ZERO_PROBE_SEED = 20011

# Audits
DEFAULT_SAMPLES = 200
DEFAULT_SEED = 0
DEFAULT_TOLERANCE = 1e-9
ENTROPY_FLOOR = 0.05
CONSTANT_DEVIATION_TOL = 1e-8
MAX_SEPARABLE_TERMS = 5

# Axiom identifiers accepted by the audit command, in canonical run order
AXIOM_IDS = ("P1", "P2", "P3", "P4", "M1", "M2", "M3", "M4", "M5", "L4", "L7", "PROP6")

DEMO_KINDS = ("p4-violation", "m5-violation", "trace-asymmetry")

# Display
DISPLAY_DIGITS = 10
