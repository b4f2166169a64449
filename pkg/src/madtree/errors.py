"""Exception hierarchy shared by all solvers."""


class MadTreeError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(MadTreeError):
    pass


class DisconnectedGraph(MadTreeError):
    pass


class InvalidTree(MadTreeError):
    pass


class EdgeNotInTree(MadTreeError):
    pass


class NotAPath(MadTreeError):
    pass


class TooLarge(MadTreeError):
    pass


class TooSmall(MadTreeError):
    pass


class InvalidPartition(MadTreeError):
    pass


class InvalidPlan(MadTreeError):
    pass


class HypothesisViolated(MadTreeError):
    pass


class InvalidDecomposition(MadTreeError):
    pass


class InfeasibleCounts(MadTreeError):
    pass


class InvalidX3C(MadTreeError):
    pass


class InfeasibleParameters(MadTreeError):
    pass


class ParseError(MadTreeError):
    pass


class AlgorithmUnavailable(MadTreeError):
    pass
