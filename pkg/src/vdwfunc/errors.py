"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of the operation."""


class RangeError(ArithmeticError):
    """Result is not representable (e.g. a logarithmic divergence)."""


class IntegrandError(ArithmeticError):
    """Integrand returned NaN or inf away from a declared breakpoint."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its evaluation budget.

    The best estimate seen so far is kept on the exception.
    """

    def __init__(self, message, value, est_error, n_evals):
        super().__init__(message)
        self.value = value
        self.est_error = est_error
        self.n_evals = n_evals


class CorrelatorRangeError(DomainError):
    """Tabulated correlator does not reach the frequency the integral needs."""

    def __init__(self, message, nu_max_needed):
        super().__init__(message)
        self.nu_max_needed = nu_max_needed
