"""Exception hierarchy.

Domain errors (things that are mathematically wrong with the input) derive from
:class:`DomainError`; the command line maps them to exit status 2.
"""


class DomainError(ValueError):
    """Base class for mathematically invalid inputs."""


class FieldMismatch(TypeError):
    """Scalars from two different fields were combined."""


class NotBoundaryFormat(DomainError):
    pass


class DegenerateTensor(DomainError):
    pass


class NotNormalCrossing(DomainError):
    def __init__(self, subset, message=None):
        self.subset = tuple(subset)
        super().__init__(message or f"hyperplanes {list(self.subset)} are linearly dependent")


class NonMemberHyperplane(DomainError):
    pass


class PositiveDimensional(DomainError):
    pass


class NormalizationFailure(RuntimeError):
    """An invariant that the theory guarantees did not hold."""


class EnumerationTooLarge(DomainError):
    pass


class ParseError(ValueError):
    """Malformed serialized input (exit status 1 on the command line)."""
