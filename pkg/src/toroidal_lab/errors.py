"""Exception hierarchy shared across the library.

Every exception carries the CLI exit code of its failure class:
2 parse/config, 3 pole or accuracy-envelope violation, 4 outside the
convergence region, 5 numerical instability.
"""


class ToroidalLabError(Exception):
    exit_code = 1


class ConfigError(ToroidalLabError):
    exit_code = 2


class ParseError(ConfigError):
    """Malformed input (CLI arguments or coefficient files)."""


class FunctionalEquationViolation(ConfigError):
    """Loaded coefficient data fails its own functional equation.

    Signals corrupted or mis-normalized data, so it is a config-family
    failure rather than a numerical one.
    """


class EnvelopeError(ToroidalLabError):
    exit_code = 3


class PoleAtNonpositiveInteger(EnvelopeError):
    pass


class PoleAtOne(EnvelopeError):
    pass


class PoleAtZeroOrOne(EnvelopeError):
    pass


class PoleAtSpecialPoint(EnvelopeError):
    pass


class EnvelopeExceeded(EnvelopeError):
    pass


class NotFundamental(EnvelopeError):
    pass


class NotCoprime(EnvelopeError):
    pass


class NotInConvergenceRegion(ToroidalLabError):
    exit_code = 4


class InstabilityError(ToroidalLabError):
    exit_code = 5


class NonConvergence(InstabilityError):
    pass


class DerivativeUnstable(InstabilityError):
    pass


class ExtrapolationUnstable(InstabilityError):
    pass


class GridTooCloseToZero(InstabilityError):
    pass


class OrderUndecidable(InstabilityError):
    pass


class PhaseNotConstant(InstabilityError):
    pass


class NoneFoundInBound(ToroidalLabError):
    """Search exhausted its bound without a hit (not a counterexample)."""

    exit_code = 1
