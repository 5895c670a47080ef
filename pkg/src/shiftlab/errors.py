"""Exception hierarchy.

Every error raised by the library derives from :class:`ShiftlabError`; the
class name is what the CLI prints, so names are part of the interface.
"""


class ShiftlabError(ValueError):
    pass


# fields and matrices
class DescriptorError(ShiftlabError):
    pass


class NonPrime(ShiftlabError):
    pass


class DegreeOutOfRange(ShiftlabError):
    pass


class FieldMismatch(ShiftlabError):
    pass


# complexes
class VertexOutOfRange(ShiftlabError):
    pass


class MissingVertex(ShiftlabError):
    pass


class NOutOfRange(ShiftlabError):
    pass


class DocumentError(ShiftlabError):
    pass


# monomials and ideals
class UnitGenerator(ShiftlabError):
    pass


class UnitMonomial(ShiftlabError):
    pass


class AmbientTooSmall(ShiftlabError):
    pass


class NotSquarefree(ShiftlabError):
    pass


class VertexExcluded(ShiftlabError):
    pass


class DegreeMismatch(ShiftlabError):
    pass


# betti tables
class NotStable(ShiftlabError):
    pass


class NotSquarefreeStable(ShiftlabError):
    pass


class DegreeCapTooSmall(ShiftlabError):
    pass


# generic initial ideals
class GenericityFailure(ShiftlabError):
    pass


class FieldTooSmall(ShiftlabError):
    pass


# shifting
class NotANonface(ShiftlabError):
    pass


class NoSplit(ShiftlabError):
    pass


class NonTermination(ShiftlabError):
    pass
