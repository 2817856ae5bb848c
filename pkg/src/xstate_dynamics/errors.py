"""Exception hierarchy shared across the package."""


class XStateDynamicsError(Exception):
    """Base class for all package errors."""


class NotHermitian(XStateDynamicsError):
    def __init__(self, deviation):
        self.deviation = float(deviation)
        super().__init__(f"matrix not Hermitian: max |m - m^dag| = {self.deviation:.3e}")


class TraceNotOne(XStateDynamicsError):
    def __init__(self, deviation):
        self.deviation = float(deviation)
        super().__init__(f"trace differs from 1 by {self.deviation:.3e}")


class NotPositive(XStateDynamicsError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"minimum eigenvalue {self.min_eigenvalue:.3e} below tolerance")


class DensityValidationError(XStateDynamicsError):
    """Aggregates every violated density-matrix invariant.

    ``violations`` holds the individual NotHermitian / TraceNotOne /
    NotPositive instances so callers can inspect each offending scalar.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NoConvergence(XStateDynamicsError):
    def __init__(self, what, iterations):
        self.iterations = iterations
        super().__init__(f"{what} did not converge after {iterations} iterations")


class NegativeEigenvalue(XStateDynamicsError):
    def __init__(self, value):
        self.value = float(value)
        super().__init__(f"eigenvalue {self.value:.3e} too negative for a valid state")


class NotXState(XStateDynamicsError):
    def __init__(self, max_off_x):
        self.max_off_x = float(max_off_x)
        super().__init__(f"off-X entry of modulus {self.max_off_x:.3e} exceeds tolerance")


class ParameterOutOfRange(XStateDynamicsError):
    pass


class WrongBasisTag(XStateDynamicsError):
    pass


class ZeroSeparation(XStateDynamicsError):
    pass


class StepRejected(XStateDynamicsError):
    def __init__(self, t, drift):
        self.t = float(t)
        self.drift = float(drift)
        super().__init__(
            f"trace drift {self.drift:.3e} at t = {self.t:.6g} exceeds per-step bound; reduce dt"
        )


class DeltaOutOfRange(XStateDynamicsError):
    def __init__(self, delta):
        self.delta = float(delta)
        super().__init__(f"RTN memory kernel |Delta| = {abs(self.delta):.6g} exceeds 1")


class ConfigError(XStateDynamicsError):
    pass
