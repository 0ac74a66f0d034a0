"""Exception types raised by the symtree library."""


class SymTreeError(ValueError):
    """Base class for every domain error of the library."""


class InvalidParamsError(SymTreeError):
    """Branching angle or scaling factor outside the admissible range."""


class AddressSyntaxError(SymTreeError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ExpansionError(SymTreeError):
    """Requested more turns than an address (or the expansion limit) allows."""


class NearSingularError(SymTreeError):
    """The periodic part of an address has a vanishing series denominator."""


class DepthRangeError(SymTreeError):
    pass


class RenderError(SymTreeError):
    pass
