"""Exceptions shared across the package."""


class ShapeError(ValueError):
    """A diagram, degree, variance or grading precondition was violated."""


class VerificationError(RuntimeError):
    """An internal exactness identity that must hold failed.

    These identities certify structure on finite blocks (projector
    idempotency, proportionality solves, preimage residuals). A failure
    indicates a bug or an inconsistent input, never a tolerance issue:
    there are no tolerances anywhere in this package.
    """
