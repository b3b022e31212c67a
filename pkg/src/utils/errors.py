"""Custom error classes for the dominion toolkit.

Every error carries the exit code the command line reports for it: 1 for
validation and precondition failures, 2 when a search budget or order cap
is exhausted.
"""
from typing import Iterable, Tuple


class ToolkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class ValidationError(ToolkitError):
    """Error when input validation fails."""
    pass


class GroupAxiomError(ValidationError):
    """A Cayley table violates a group axiom."""

    def __init__(self, axiom: str, message: str, witnesses: Tuple[int, ...] = ()):
        self.axiom = axiom
        self.witnesses = tuple(witnesses)
        super().__init__(f"{axiom} fails: {message}")


class NotASubgroupError(ValidationError):
    """An element set is not a subgroup of the group it is used with."""
    pass


class NotNormalError(ValidationError):
    """A subgroup required to be normal is not."""
    pass


class InvalidActionError(ValidationError):
    """A proposed action is not by automorphisms or not a homomorphism."""
    pass


class ParseError(ValidationError):
    """Syntax error in a word or subgroup specifier."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UndeclaredExponentError(ValidationError):
    """A variety presentation carries no exponent declaration."""
    pass


class PreconditionError(ToolkitError):
    """An operation was called outside its preconditions."""
    pass


class HypothesisViolatedError(PreconditionError):
    """A hypothesis of a construction fails for the given input."""
    pass


class SeparationNotFoundError(ToolkitError):
    """No separating pair could be assembled from the available targets."""

    def __init__(self, message: str, unseparated: Iterable[int]):
        self.unseparated = tuple(sorted(unseparated))
        super().__init__(f"{message}; unseparated elements: {list(self.unseparated)}")


class NotFoundError(ToolkitError):
    """Error when an entity is not found."""
    pass


class CatalogError(ToolkitError):
    """Error related to catalog persistence."""
    pass


class OrderCapExceededError(ToolkitError):
    """A construction would exceed the configured order cap."""

    exit_code = 2


class BudgetExhaustedError(ToolkitError):
    """A backtracking search ran out of nodes."""

    exit_code = 2
