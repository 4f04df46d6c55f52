"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class PowerGraphError(Exception):
    """Base class for every error raised by :mod:`powermindeg`."""


class DomainError(PowerGraphError, ValueError):
    """An argument lies outside the domain of an operation."""


class StructureError(PowerGraphError, ValueError):
    """A multiplication table does not describe a group."""


class HypothesisError(PowerGraphError):
    """A theorem or operation was applied outside its hypotheses."""


class CapacityError(PowerGraphError):
    """A computation exceeds a configured size cap."""


class SpecSyntaxError(PowerGraphError, ValueError):
    """A group-spec string or element string could not be parsed."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
