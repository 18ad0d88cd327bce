"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for bad input, 3 for
resource caps, 4 for property violations and internal inconsistencies.
"""


class GaugeTraceError(Exception):
    exit_code = 1

    def to_dict(self) -> dict:
        return {"type": type(self).__name__, "message": str(self)}


class InputError(GaugeTraceError):
    exit_code = 2


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class CompositionError(InputError):
    pass


class NotALoop(InputError):
    pass


class NotInvariant(InputError):
    pass


class NegativeDefect(InputError):
    pass


class MalformedFunctional(InputError):
    pass


class ShiftOfVertex(InputError):
    pass


class SizeLimit(GaugeTraceError):
    exit_code = 3


class InternalInconsistency(GaugeTraceError):
    exit_code = 4
