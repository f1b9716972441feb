"""Exception hierarchy shared by the numerical modules."""


class PolymerError(Exception):
    """Base class for every error raised by :mod:`polyradius`."""


class NumericalFailure(PolymerError):
    """A computation could not be completed to the requested accuracy."""


class InvalidParams(PolymerError, ValueError):
    pass


class OutsideWindow(InvalidParams):
    """Coupling lies outside the near-critical window where the ground state is unique."""


class UnsupportedOrder(InvalidParams):
    pass


class OriginSingular(InvalidParams):
    pass


class ZeroBeta(InvalidParams):
    pass


class WrongRegime(InvalidParams):
    pass


class WorkBudgetExceeded(InvalidParams):
    pass


class NoRootInWindow(NumericalFailure):
    pass


class AtPole(NumericalFailure):
    pass


class PoleOnContour(NumericalFailure):
    pass


class DegenerateWeights(NumericalFailure):
    pass


class BoundaryLeak(NumericalFailure):
    pass
