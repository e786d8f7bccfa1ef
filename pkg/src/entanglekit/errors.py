"""Exception hierarchy shared by all modules."""


class EntangleKitError(ValueError):
    """Base class for every error raised by entanglekit."""


class NonFiniteInput(EntangleKitError):
    pass


class NotHermitian(EntangleKitError):
    pass


class NotNormalized(EntangleKitError):
    pass


class DetOutOfRange(EntangleKitError):
    pass


class DegenerateBranch(EntangleKitError):
    """The Cardano auxiliary ``C`` vanished, so ``Delta0 / C`` is undefined."""


class ComplexRoots(EntangleKitError):
    """Closed-form qutrit roots are not real and non-negative."""


class IndexOutOfRange(EntangleKitError, IndexError):
    pass


class DegenerateInfoQubit(EntangleKitError):
    pass


class Unsolvable(EntangleKitError):
    """Measurement statistics are inconsistent with any valid qubit/resource."""


class AmbiguousResource(EntangleKitError):
    """Both resource orderings explain the statistics.

    The candidate ``(alpha, beta)`` solutions are kept on ``candidates``.
    """

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)
