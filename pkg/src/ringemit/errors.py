"""Exception and warning types shared across the package."""


class NumericError(RuntimeError):
    """A numerical procedure failed to reach its accuracy or iteration target."""


class AnsatzViolationError(RuntimeError):
    """The two-path interference form does not reproduce the phase sweep.

    The fitted coefficient tables are attached as ``fits`` so callers can
    still inspect or serialize them.
    """

    def __init__(self, message, fits=None):
        super().__init__(message)
        self.fits = fits if fits is not None else []


class BlockStructureError(ValueError):
    """Input operator is not of the expected qubit-conditioned block form."""


class UnsupportedParametersError(ValueError):
    """A closed-form expression was requested outside its pinned parameter point."""


class NormDriftWarning(UserWarning):
    """Integrator norm drift exceeded the diagnostic threshold."""
