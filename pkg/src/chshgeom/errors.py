"""Exception types raised by chshgeom."""


class ChshGeomError(ValueError):
    """Base class for all chshgeom errors."""


class DegenerateAngles(ChshGeomError):
    pass


class NonUnitDirection(ChshGeomError):
    pass


class InvalidState(ChshGeomError):
    pass


class NotChshFacet(ChshGeomError):
    pass


class InsideLocalPolytope(ChshGeomError):
    """The point satisfies every CHSH inequality, so no PR-box weight is defined."""


class NotDecomposable(ChshGeomError):
    pass


class NotSymmetric(ChshGeomError):
    pass


class UnknownSource(ChshGeomError):
    pass


class ParseError(ChshGeomError):
    pass


class SchemaError(ChshGeomError):
    """Malformed row in a batch input file.

    ``row`` is 1-based (the header is row 0) and ``column`` is the column
    name, or None when the problem concerns the row as a whole.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column
