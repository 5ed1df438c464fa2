"""Exception types raised across the package."""


class HSSError(Exception):
    """Base class for all errors raised by hsswitness."""


class NonHermitianInput(HSSError, ValueError):
    pass


class NonTracelessInput(HSSError, ValueError):
    pass


class DimensionMismatch(HSSError, ValueError):
    pass


class ConvergenceFailure(HSSError, RuntimeError):
    pass


class SubdivisionLimit(HSSError, RuntimeError):
    """Adaptive quadrature hit its recursion cap before meeting the tolerance."""


class NotAState(HSSError, ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``invariant`` is one of ``"hermiticity"``, ``"trace"`` or ``"positivity"``
    and ``magnitude`` is by how much it was violated.
    """

    def __init__(self, invariant: str, magnitude: float):
        self.invariant = invariant
        self.magnitude = float(magnitude)
        super().__init__(f"not a state: {invariant} violated by {self.magnitude:.3e}")


class NotAProbability(HSSError, ValueError):
    """Pauli-channel weights left the probability simplex."""


class NonContractiveAmplitude(HSSError, ValueError):
    """|G(t)| > 1 for the V-type amplitudes, so the Kraus set is not trace preserving."""


class GridMismatch(HSSError, ValueError):
    pass


class UnknownParameter(HSSError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ConfigError(HSSError, ValueError):
    """Invalid run configuration (maps to CLI exit status 2)."""
