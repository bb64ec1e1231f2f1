"""Shared exception types."""


class NumericalInvariantError(RuntimeError):
    """A numerical invariant (reality residue, unitarity, ...) was violated."""
