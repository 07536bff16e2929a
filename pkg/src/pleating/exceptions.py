"""Exception hierarchy shared by the pleating modules."""


class PleatingError(Exception):
    pass


class DegenerateQuadruple(PleatingError, ValueError):
    pass


class DegenerateTriple(PleatingError, ValueError):
    pass


class InvalidCoordinate(PleatingError, ValueError):
    pass


class InvalidSignature(PleatingError, ValueError):
    pass


class InvalidTriangulation(PleatingError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotFlippable(PleatingError, ValueError):
    pass


class NonGenericCoordinates(PleatingError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class MutationDegenerate(PleatingError, ValueError):
    pass


class PatchTooLarge(PleatingError, RuntimeError):
    pass


class Degenerate(PleatingError):
    """Raised when a framed representation satisfies D1 and/or D2.

    ``conditions`` lists the violated conditions ("D1", "D2") and
    ``witness`` carries the offending data for each.
    """

    def __init__(self, conditions, witness):
        self.conditions = tuple(conditions)
        self.witness = dict(witness)
        super().__init__("degenerate framed representation: " + ", ".join(self.conditions))
