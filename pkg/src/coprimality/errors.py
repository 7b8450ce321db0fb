"""Exception types shared across the library.

Precondition violations raise plain ValueError (or the subclasses below when a
caller can usefully distinguish them).  RuntimeError is reserved for states
the mathematics rules out; reaching one means the implementation is wrong.
"""


class TableTooSmallError(ValueError):
    """A sieve table does not cover a required prime, rank, or cofactor."""

    def __init__(self, message: str, residual: int | None = None):
        super().__init__(message)
        self.residual = residual


class BruteForceCapError(ValueError):
    """A requested enumeration exceeds the configured pair-evaluation cap."""


class NonCoprimeModuliError(ValueError):
    """A congruence system has compatible but non-coprime moduli."""


class UnsolvableCongruenceError(ValueError):
    """A congruence system has contradictory residues, so no solution exists."""


class NormalizationLimitError(ValueError):
    """Disjoint normalization would expand over more coordinates than allowed."""
