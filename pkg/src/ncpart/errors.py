"""Exception hierarchy shared by every module.

All errors derive from :class:`NcpartError` so the CLI can map them to exit
code 2 in one place.
"""


class NcpartError(Exception):
    pass


class MismatchedRank(NcpartError):
    pass


class UnsupportedRank(NcpartError):
    pass


class NotInGroup(NcpartError):
    pass


class UnpairedBCycles(NcpartError):
    pass


class NotBelowCoxeter(NcpartError):
    pass


class ParseError(NcpartError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class TooLarge(NcpartError):
    pass


class FlavorUnavailable(NcpartError):
    pass


class InvalidType(NcpartError):
    pass


class RankMismatch(NcpartError):
    pass


class InconsistentRanks(NcpartError):
    pass


class BadBlockSize(NcpartError):
    pass


class DivisionByZero(NcpartError):
    pass


class UnknownGroup(NcpartError):
    pass


class NotAUnit(NcpartError):
    pass


class BadComposition(NcpartError):
    pass


class PreconditionViolated(NcpartError):
    pass


class SingularPoint(NcpartError):
    pass
