"""Hard accuracy-envelope limits, enforced at API boundaries.

All analytic computation is double precision.  Rather than silently
degrading outside the region where the kernels are validated, the
library raises EnvelopeExceeded.
"""

# |Im s| cap for zeta / Dirichlet L / Hurwitz zeta evaluation.
IM_MAX = 60.0

# |Im s| cap for Eisenstein-series evaluation (K-Bessel order stays moderate).
EIS_IM_MAX = 40.0

# |Im nu| cap for the K-Bessel quadrature.
BESSEL_IM_MAX = 40.0

# Largest |D| accepted for class/form searches (64-bit arithmetic headroom).
DISC_MAX = 10**6

# Highest derivative order served by the Cauchy differentiators.
DERIV_MAX = 4

# Parallelism cap variable honored by grid sweeps.
THREADS_ENV_VAR = "TOROIDAL_LAB_THREADS"
