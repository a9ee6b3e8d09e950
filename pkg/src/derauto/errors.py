"""Exception hierarchy.

``HypothesisError`` subclasses mean the input violates a mathematical
hypothesis (CLI exit 1); ``BoundExceeded`` subclasses mean a degree bound or
iteration cap was too small and a retry with larger bounds may succeed
(CLI exit 3).
"""


class DerautoError(Exception):
    pass


class HypothesisError(DerautoError):
    pass


class NotInvertibleError(HypothesisError):
    pass


class NotCommutingError(HypothesisError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotLNDError(HypothesisError):
    def __init__(self, message, index=None, cap=None):
        super().__init__(message)
        self.index = index
        self.cap = cap


class CommonKernelTooLarge(HypothesisError):
    def __init__(self, message, basis=()):
        super().__init__(message)
        self.basis = list(basis)


class SeedInKernel(HypothesisError):
    pass


class NonConstantTerminal(HypothesisError):
    def __init__(self, message, terminal=None):
        super().__init__(message)
        self.terminal = terminal


class VerificationFailed(DerautoError):
    pass


class BoundExceeded(DerautoError):
    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class DegreeBoundExceeded(BoundExceeded):
    pass


class CapExceeded(BoundExceeded):
    pass
