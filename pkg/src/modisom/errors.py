"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``InputError`` -> 2,
``ResourceError`` -> 3, ``InvariantViolation`` -> 1.  ``PreconditionError``
is an input problem from the caller's point of view and also maps to 2.
"""

from __future__ import annotations


class ModIsomError(Exception):
    """Base class for all library errors."""


class InputError(ModIsomError, ValueError):
    """Malformed or mismatched input (dimensions, primes, words, files)."""


class PreconditionError(ModIsomError):
    """An operation was called on an object outside its domain."""


class ResourceError(ModIsomError):
    """A configured size cap would be exceeded."""


class InvariantViolation(ModIsomError):
    """A checked mathematical invariant failed.

    Either a bug, or (for the theorem checks) a counterexample.
    """
