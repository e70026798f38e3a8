"""Exception types shared across the package."""


class CubicvisError(Exception):
    """Base class for every error raised by this package."""


class ZeroPolynomial(CubicvisError, ValueError):
    pass


class BothConstantInY(CubicvisError, ValueError):
    pass


class CertificationFailure(CubicvisError):
    """An isolating box could not be separated or a certificate failed."""


class TooFewPoints(CubicvisError, ValueError):
    pass


class DuplicatePoint(CubicvisError, ValueError):
    pass


class BudgetExceeded(CubicvisError):
    """Clique search ran out of nodes; ``best`` holds the best clique seen."""

    def __init__(self, best, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes (best size {len(best)})")
        self.best = best
        self.nodes = nodes


class ThreeCollinearInPatch(CubicvisError, ValueError):
    pass


class NoGenericShear(CubicvisError):
    pass


class NotIrreducible(CubicvisError, ValueError):
    pass


class NotACubic(CubicvisError, ValueError):
    pass


class InconsistentExceptionalSet(CubicvisError):
    pass


class PointsNotOnPatch(CubicvisError, ValueError):
    pass


class ThreeLinesExcluded(CubicvisError, ValueError):
    pass


class TooFewOnCubic(CubicvisError, ValueError):
    pass


class NotIrreducibleOrDecomposable(CubicvisError, ValueError):
    pass


class PreconditionFailed(CubicvisError, ValueError):
    pass


class NoFourCollinearRequired(CubicvisError, ValueError):
    pass


class DegenerateSample(CubicvisError):
    pass


class UnknownPatch(CubicvisError, KeyError):
    pass


class CliqueBudgetExceeded(CubicvisError):
    pass


class InvalidM(CubicvisError, ValueError):
    pass


class SingularCurve(CubicvisError, ValueError):
    pass


class TorsionCollision(CubicvisError):
    pass


class HeightCapExceeded(CubicvisError, ValueError):
    pass


class RetriesExhausted(CubicvisError):
    pass


class InputParseError(CubicvisError, ValueError):
    pass
