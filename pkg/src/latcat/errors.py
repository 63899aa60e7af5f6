"""Exception types shared across the library.

Every contract violation raises a subclass of LatcatError so the CLI can
map failures onto its exit codes (invalid input vs. exceeded caps).
"""


class LatcatError(Exception):
    pass


class EmptyPoset(LatcatError):
    pass


class NotALattice(LatcatError):
    """A pair of elements without a unique meet or join."""

    def __init__(self, kind, x, y):
        self.kind = kind
        self.pair = (x, y)
        super().__init__(f"no unique {kind} for pair ({x}, {y})")


class NotGraded(LatcatError):
    pass


class CapExceeded(LatcatError):
    pass


class SupportMismatch(LatcatError):
    pass


class NotAPermutation(LatcatError):
    pass


class TooSmall(LatcatError):
    pass


class SearchCapExceeded(LatcatError):
    pass


class NotFunctorial(LatcatError):
    pass


class AmbiguousRecovery(LatcatError):
    pass


class MissingWitnessMorphism(LatcatError):
    pass


class ZeroImage(LatcatError):
    pass


class IsoNotFound(LatcatError):
    pass


class IdentityViolation(LatcatError):
    pass


class AssociativityViolation(LatcatError):
    pass


class DanglingComposite(LatcatError):
    pass
