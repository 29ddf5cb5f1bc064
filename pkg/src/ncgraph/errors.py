"""Exception types shared across the package."""


class NcGraphError(Exception):
    """Base class for errors raised by ncgraph."""


class ParameterError(NcGraphError, ValueError):
    """A family constructor or prediction received parameters outside its hypotheses."""


class GroupSizeError(NcGraphError):
    """A construction would exceed the configured order cap."""


class DomainError(NcGraphError, ValueError):
    """Input is outside the mathematical domain of the operation."""


class CapabilityError(NcGraphError):
    """An exact algorithm was asked to run above its size bound."""


class SolverError(NcGraphError, RuntimeError):
    """The numeric eigensolver failed to converge."""


class InapplicableError(ParameterError):
    """A closed-form statement's hypotheses are not met."""
