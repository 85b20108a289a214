"""Constants used across the weakmeas package.

How to use the most important parts:
- The `*_TOL` values are the defaults of `weakmeas.models.Tolerances`. Pass a custom `Tolerances`
  record to an operation instead of editing these.
- `WEAK_REGIME_LIMIT` bounds |ε|·max|κ|·‖A‖ for the first-order engine and the MLE search interval.
"""

APP_NAME = "weakmeas"
APP_AUTHOR = "weakmeas"

# Report format
SCHEMA_VERSION = "1.0"

# Type invariants
STATE_NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
ORTHONORMAL_TOL = 1e-10
MODEL_SUM_TOL = 1e-12

# Weak values
VANISHING_OVERLAP = 1e-24
REAL_BASIS_TOL = 1e-10
ACCUMULATED_TOL = 1e-9
SHUNT_EXPECTATION_TOL = 1e-10
SHUNT_NORM_TOL = 1e-12

# Basis construction
ZERO_VECTOR_TOL = 1e-14
GRAM_SCHMIDT_RESIDUAL = 1e-10
REAL_REPRESENTABLE_TOL = 1e-12

# Estimation
WEAK_REGIME_LIMIT = 0.2
EXACT_NORMALIZATION_TOL = 1e-12
ZERO_INFORMATION = 1e-12
MLE_MAX_ITERATIONS = 200
MLE_INTERVAL_TOL = 1e-12
MLE_SCORE_TOL = 1e-8
MLE_NEWTON_STEPS = 5

# Canonical binary pointer
BINARY_OUTCOMES = ("+", "-")
