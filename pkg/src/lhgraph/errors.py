"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end.
"""


class LHGraphError(Exception):
    exit_code = 5


class ParseError(LHGraphError):
    exit_code = 3


class ValidationError(LHGraphError):
    exit_code = 4


class DuplicateLabel(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class LoopForbidden(ValidationError):
    pass


class UnknownVertex(LHGraphError):
    pass


class InvalidScheme(ValidationError):
    pass


class GraphMismatch(LHGraphError):
    pass


class Disconnected(LHGraphError):
    pass


class HasLoops(LHGraphError):
    pass


class NonSimpleVertex(LHGraphError):
    pass


class NotGenusZero(LHGraphError):
    pass


class NotACycle(LHGraphError):
    pass


class PreconditionViolated(LHGraphError):
    pass


class EdgeCountMismatch(LHGraphError):
    pass


class NotLocallyHamiltonian(LHGraphError):
    pass


class BadAttachmentVertex(LHGraphError):
    pass


class TooLarge(LHGraphError):
    exit_code = 6


class RangeTooLarge(TooLarge):
    pass


class ReconstructionFailed(LHGraphError):
    exit_code = 7

    def __init__(self, message, tag=None, trace=None):
        super().__init__(message)
        self.tag = tag
        self.trace = trace


EXIT_CODES = {
    "ok": 0,
    "negative result or violation": 1,
    "usage error": 2,
    "ParseError": ParseError.exit_code,
    "ValidationError": ValidationError.exit_code,
    "precondition / graph error": LHGraphError.exit_code,
    "TooLarge / RangeTooLarge": TooLarge.exit_code,
    "ReconstructionFailed": ReconstructionFailed.exit_code,
}
