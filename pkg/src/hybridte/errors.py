"""Exception types shared across the package."""

from __future__ import annotations


class HybridTeError(Exception):
    """Base class for all package errors."""


class ParseError(HybridTeError):
    """Input text could not be parsed into the expected structure."""


class ValidationError(HybridTeError):
    """Parsed input violates a structural invariant."""


class ConfigError(HybridTeError):
    """A configuration value is out of range or inconsistent."""


class InvalidPathError(HybridTeError):
    """A node sequence does not form a simple path in the topology."""


class UnreachableError(HybridTeError):
    """No route exists between the requested endpoints."""


class Infeasible(HybridTeError):
    """An optimization instance has no feasible solution.

    `proven` is True when infeasibility was established exhaustively and
    False when the search gave up (budget exhausted with no incumbent).
    """

    def __init__(self, message: str, proven: bool = True):
        super().__init__(message)
        self.proven = proven
