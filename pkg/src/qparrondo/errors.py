"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An input value violates a documented precondition."""


class CapacityError(RuntimeError):
    """A computation would exceed its fixed lattice or size budget."""
