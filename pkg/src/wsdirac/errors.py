"""Exception and warning types raised by wsdirac."""


class WSDiracError(Exception):
    """Base class for all numerical failures in this package."""


class PoleError(WSDiracError, ValueError):
    """A gamma-function argument (or hypergeometric ``c``) sits on a pole."""


class DegenerateError(WSDiracError, ValueError):
    """Logarithmic case of the 1-x continuation (``c-a-b`` near an integer)."""


class ConvergenceError(WSDiracError, ArithmeticError):
    """A series or iterative refinement did not converge."""


class SingularEnergy(WSDiracError, ValueError):
    """Energy inside a guard band around a threshold or a gamma pole."""

    def __init__(self, message, energy=None, coefficient=None):
        super().__init__(message)
        self.energy = energy
        self.coefficient = coefficient


class DomainError(WSDiracError, ValueError):
    """Energy outside the interval an operation is defined on."""


class NotAnEigenvalue(WSDiracError, ValueError):
    """Eigenvector-level quantity requested at an energy with large ``|F(E)|``."""


class TailError(WSDiracError, ValueError):
    """Integration box too small: the density tail exceeds the threshold."""


class StepError(WSDiracError, ArithmeticError):
    """ODE state blew up (integration ran against the growing solution)."""


class ShapeWarning(UserWarning):
    """``a*L`` is small; the closed-form matching assumes ``a*L >> 1``."""
