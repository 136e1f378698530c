"""Exception types shared across the package."""

from __future__ import annotations


class FreespecError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(FreespecError):
    """Operands have incompatible shapes or sizes."""


class NotHermitianError(FreespecError):
    """A matrix required to be Hermitian (within tolerance) is not."""


class NotUnitaryError(FreespecError):
    """A matrix required to be unitary (within tolerance) is not."""


class NormNotOneError(FreespecError):
    """A defining matrix must have operator norm one; caller should rescale."""


class SelfLoopError(FreespecError):
    """A diagonal block / self edge was found where none is allowed."""

    def __init__(self, vertex: int, label: int | None = None):
        self.vertex = vertex
        self.label = label
        at = f" for label {label}" if label is not None else ""
        super().__init__(f"self loop at vertex {vertex}{at}")


class DuplicateEdgeError(FreespecError):
    """Two edges share the same (tail, head) pair."""

    def __init__(self, tail: int, head: int):
        self.tail = tail
        self.head = head
        super().__init__(f"duplicate edge ({tail}, {head})")


class AntiparallelPairError(FreespecError):
    """Both (v, w) and (w, v) occur in the positive edge set."""

    def __init__(self, v: int, w: int):
        self.pair = (v, w)
        super().__init__(f"antiparallel edges between {v} and {w}")


class LabelCollisionError(FreespecError):
    """The same block position is nonzero for two distinct labels."""

    def __init__(self, block: tuple[int, int], labels: tuple[int, int]):
        self.block = block
        self.labels = labels
        super().__init__(
            f"block {block} is nonzero for labels {labels[0]} and {labels[1]}"
        )


class ZeroCoefficientError(FreespecError):
    """A coefficient matrix is (numerically) zero."""

    def __init__(self, label: int):
        self.label = label
        super().__init__(f"coefficient {label} is numerically zero")


class NotAWalkError(FreespecError):
    """A vertex sequence is not a closed walk of the doubled graph."""


class LimitExceededError(FreespecError):
    """An enumeration guard was exceeded."""


class NotNilpotentError(FreespecError):
    """A tuple fails the nilpotency order required for exact truncation."""


class NotInDiskError(FreespecError):
    """A scalar parameter must lie in the open unit disk."""


class BadLambdaError(FreespecError):
    """A scaling parameter must lie strictly between 0 and 1."""


class BidiskCaseError(FreespecError):
    """The coefficient sum is dominated by the identity; the rigid-case
    machinery does not apply."""


class DegenerateIntersectionError(FreespecError):
    """The two compression subspaces intersect trivially."""


class SingularLinearPartError(FreespecError):
    """The 2x2 linear part of an automorphism candidate is singular."""


class SchemaError(FreespecError):
    """A JSON document violates the published input schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")
