"""Exception hierarchy.

Two families matter to callers: ``InputError`` (malformed or unsupported
input, CLI exit code 1) and ``InvariantError`` (the input parsed but a
structural identity that must hold for a genuine monodromy failed, CLI exit
code 2).
"""


class QFormError(Exception):
    exit_code = 1


class InputError(QFormError):
    exit_code = 1


class InvariantError(QFormError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, line, column=1, token=None, file=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.file = file
        super().__init__(str(self))

    def __str__(self):
        where = f"{self.file or '<input>'}:{self.line}:{self.column}"
        if self.token:
            return f"{where}: {self.message} (at {self.token!r})"
        return f"{where}: {self.message}"


class GraphError(InputError):
    """Structural problem with a graph; ``item`` names the offending id."""

    def __init__(self, message, item=None):
        self.item = item
        super().__init__(message)


class NoNode(InputError):
    pass


class UnknownEdge(InputError):
    pass


class InvalidChain(InputError):
    pass


class DependentBasis(InputError):
    pass


class MissingEuler(InputError):
    pass


class NotNegativeDefinite(InputError):
    pass


class DecorationMismatch(InputError):
    pass


class NonRationalVertex(InputError):
    pass


class AmbiguousLoopAttachment(InputError):
    pass


class NonIntegralSolution(InvariantError):
    pass


class NonPositiveSolution(InvariantError):
    pass


class NonConstantGcd(InvariantError):
    pass


class NonIntegralScrew(InvariantError):
    pass


class InconsistentPiece(InvariantError):
    pass


class DisconnectedSemistable(InvariantError):
    pass


class NonPolynomialDelta2(InvariantError):
    pass
