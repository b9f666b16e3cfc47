"""Numeric tolerances, declared once.

Every float-mode comparison in the package routes through these
constants; exact (rational) mode never consults them.
"""

# Relative feasibility/optimality tolerance of the float solver; also the
# default relative gap tolerance when certifying plan/certificate pairs.
FLOAT_REL_TOL = 1e-9

# Absolute tolerance for dual-certificate feasibility in float mode
# (potentials are O(1) for the worked examples).
CERT_ABS_TOL = 1e-12

# Default cell-classification tolerance, relative to per-cell capacity:
# above the solver's 1e-9, below any structural feature at desk grid sizes.
CLASSIFY_TOL = 1e-6

# Absolute threshold beyond which discretized marginals are rebalanced
# (float mode only; exact mode treats any discrepancy as an error).
BALANCE_ABS_TOL = 1e-12

# Relative agreement required between total source and target mass for a
# problem instance to be considered well-posed in float mode.
MARGINAL_REL_TOL = 1e-12
