"""Exception hierarchy shared by all modules."""


class RyserError(Exception):
    """Base class for every error raised by this package."""


class DesignError(RyserError):
    """The input set system is not the kind of design an operation needs."""


class NotRyser(DesignError):
    pass


class NotSymmetric(DesignError):
    pass


class EmptyBlockProduced(DesignError):
    pass


class DuplicateBlockProduced(DesignError):
    pass


class IdentityViolation(RyserError):
    """A counting identity that must hold for genuine designs failed."""

    def __init__(self, identity: str, detail: str = ""):
        self.identity = identity
        self.detail = detail
        msg = f"identity {identity!r} violated"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NonIntegralT(RyserError):
    pass


class ParameterError(RyserError, ValueError):
    pass


class InvalidParameterTriple(ParameterError):
    pass


class ParameterArithmeticMismatch(ParameterError):
    pass


class AverageDegenerate(ParameterError):
    pass


class ParseError(RyserError):
    """Malformed or invalid design document.

    ``where`` is a human readable location such as ``line 3, column 7`` or
    ``blocks[4][1]``.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class NotADesignError(DesignError):
    pass
