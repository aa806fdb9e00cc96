"""Exception hierarchy.

Every error carries the CLI exit code it maps to:
2 for a violated curvature identity or failed verification, 3 for bad input,
4 for search/degeneracy failures.
"""


class Rank2Error(Exception):
    exit_code = 3


class InputError(Rank2Error, ValueError):
    exit_code = 3


class DimensionMismatch(InputError):
    pass


class NotInSpan(Rank2Error):
    exit_code = 4


class DependentBasis(InputError):
    pass


class NotSpacelike(InputError):
    pass


class Degenerate(InputError):
    pass


class NotSelfAdjoint(InputError):
    pass


class NotAdmissible(InputError):
    pass


class BadParams(InputError):
    pass


class UnsupportedRank(Rank2Error):
    exit_code = 4


class Unsatisfiable(Rank2Error):
    exit_code = 4


class DomainTooSmall(Rank2Error):
    exit_code = 4


class DegenerateLine(Rank2Error):
    exit_code = 4


class SpanSolveFailed(Rank2Error):
    exit_code = 4


class SpanningFamilyFailed(Rank2Error):
    exit_code = 4


class DegeneratePoint(Rank2Error):
    exit_code = 4


class VerificationFailed(Rank2Error):
    exit_code = 2


class NotRankTwo(Rank2Error):
    exit_code = 2
