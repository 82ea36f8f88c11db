"""Exception hierarchy shared across the package.

Validation errors mean the *input* is unusable; solver errors mean a
numerical procedure failed on otherwise valid input.  The CLI maps these
onto distinct exit codes (see ``ozthermo.cli``).
"""


class OZThermoError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(OZThermoError):
    """Invalid physical input (bad diameter, charge imbalance, ...)."""


class SolverError(OZThermoError):
    """A numerical procedure failed to produce a trustworthy result."""


# -- validation ------------------------------------------------------------

class EmptyMixtureError(ValidationError):
    pass


class NonPositiveDiameterError(ValidationError):
    pass


class NegativeDensityError(ValidationError):
    pass


class ChargeImbalanceError(ValidationError):
    pass


class NegativeCouplingError(ValidationError):
    pass


class PackingOverflowError(ValidationError):
    """Total packing fraction xi3 >= 1: no such fluid exists."""


class EtaOutOfRangeError(ValidationError):
    pass


class NonPositiveRadiusError(ValidationError):
    pass


class NotChargedError(ValidationError):
    """An electrostatic quantity was requested for an uncharged system."""


class ZeroGammaError(ValidationError):
    """A coefficient that requires Gamma > 0 was requested at Gamma = 0."""


class NegativeXError(ValidationError):
    pass


class LengthMismatchError(ValidationError):
    pass


# -- solver ----------------------------------------------------------------

class NoConvergenceError(SolverError):
    def __init__(self, iterations, residual, message=None):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            message
            or f"no convergence after {iterations} iterations "
               f"(last residual {residual:.3e})"
        )


class PoleEncounteredError(SolverError):
    """1 - rho*c_hat(k) vanished on the grid: unphysical input."""


class NotConvergedError(SolverError):
    """A result was requested from an unconverged correlation table."""


class QuadTooCoarseError(SolverError):
    """Doubling the quadrature nodes moved the result beyond tolerance."""


class ConfigParseError(OZThermoError):
    """The CLI configuration could not be parsed."""
