"""Exception hierarchy shared by every entireops module."""


class EntireOpsError(Exception):
    """Base class for all library errors."""


class DegreeCapError(EntireOpsError, ValueError):
    """Polynomial order exceeds DEGREE_CAP."""


class PoleError(EntireOpsError, ZeroDivisionError):
    """A Borel transform was evaluated at its pole t = 0."""


class NearZeroDivisor(EntireOpsError, ArithmeticError):
    """The divisor Phi_n comes too close to zero on a quadrature contour."""


class ZeroOnContour(EntireOpsError, ArithmeticError):
    """A sampled modulus on a circle fell below the zero threshold."""


class PhaseStepTooLarge(EntireOpsError, ArithmeticError):
    """Argument unwrapping did not resolve after the allowed node doublings."""


class ZeroScalar(EntireOpsError, ValueError):
    """A scalar sequence vanished inside a window where ratios are required."""


class ConfigError(EntireOpsError, ValueError):
    """Invalid experiment configuration; ``problems`` lists every violation."""

    def __init__(self, problems, path=None):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        self.path = path
        where = f"{path}: " if path else ""
        super().__init__(where + "; ".join(self.problems))
