"""Exception and warning types shared across the package."""


class RegimeWarning(UserWarning):
    """A state or boost left the low-energy regime the model is valid in."""


class RegimeError(ValueError):
    """Regime violation escalated to an error (strict mode, or a hard bound)."""


class SequencingError(RuntimeError):
    """A boost sequence failed to return momenta to their initial values."""


class IdentityViolationError(RuntimeError):
    """A numerically evolved state disagrees with its closed-form prediction."""


class ConsistencyError(RuntimeError):
    """Two evaluation paths of the same quantity disagree beyond tolerance."""


class WraparoundError(RuntimeError):
    """Grid-state support reached the periodic box or momentum-lattice edge."""


class IntegrationError(RuntimeError):
    """Step-halving error control did not converge."""


class GridTooNarrowError(RuntimeError):
    """A scan peak landed on the edge of the detuning grid."""


class ConfigError(ValueError):
    """Scenario configuration is malformed or out of the supported range."""
