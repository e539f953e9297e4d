"""Exception hierarchy shared by all modules.

DomainError subclasses map to CLI exit code 1, ParseError to exit code 2.
"""


class ChabautyError(Exception):
    pass


class ParseError(ChabautyError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)


class DomainError(ChabautyError):
    kind = "DomainError"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class NonMinimax(DomainError):
    kind = "NonMinimax"


class IllDefinedScalar(DomainError):
    kind = "IllDefinedScalar"

    def __init__(self, message, coordinate=None):
        self.coordinate = coordinate
        super().__init__(message)


class IllDefinedGenerator(DomainError):
    kind = "IllDefinedGenerator"

    def __init__(self, message, coordinate=None, prime=None):
        self.coordinate = coordinate
        self.prime = prime
        super().__init__(message)


class SizeBound(DomainError):
    kind = "SizeBound"


class PreconditionFailed(DomainError):
    kind = "PreconditionFailed"


class NotInClosure(DomainError):
    kind = "NotInClosure"
