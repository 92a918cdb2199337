"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class DimensionMismatch(ValueError):
    """Two truncated sequences with different truncation dimensions were combined."""


class EmptySetError(ValueError):
    """A distance-type operation was asked about an empty correspondence value."""

    def __init__(self, msg: str = "empty correspondence value"):
        super().__init__(msg)
