"""Exception hierarchy. Everything raised on bad input derives from
RealCStarError so the CLI can map it to exit status 1."""


class RealCStarError(Exception):
    pass


class ContainmentViolation(RealCStarError):
    pass


class TooLarge(RealCStarError):
    pass


class InvalidGroup(RealCStarError):
    pass


class DegenerateEigenspaces(RealCStarError):
    pass


class FormatError(RealCStarError):
    pass


class OrthogonalityViolation(RealCStarError):
    def __init__(self, pair, residual, kind="row"):
        self.pair = pair
        self.residual = residual
        self.kind = kind
        super().__init__(
            f"{kind} orthogonality fails for pair {pair}: residual {residual:.3e}"
        )


class NonIntegralIndicator(RealCStarError):
    pass


class PairingFailure(RealCStarError):
    pass


class OddQuaternionicDim(RealCStarError):
    pass


class DimensionMismatch(RealCStarError):
    pass


class InfiniteUnsupported(RealCStarError):
    pass


class NotAssociative(RealCStarError):
    pass


class NotSemisimple(RealCStarError):
    pass


class PeriodMismatch(RealCStarError):
    pass


class TorsionUnsupported(RealCStarError):
    pass


class NotFree(RealCStarError):
    pass


class MixedInvolutionUnsupported(RealCStarError):
    pass


class InvalidComplex(RealCStarError):
    pass


class ZeroParameter(RealCStarError):
    pass


class PartitionViolation(RealCStarError):
    pass


class MismatchReport(RealCStarError):
    def __init__(self, degree, left, right):
        self.degree = degree
        self.left = left
        self.right = right
        super().__init__(f"first mismatch in degree {degree}: {left} vs {right}")
