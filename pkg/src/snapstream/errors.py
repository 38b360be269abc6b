class StreamError(Exception):
    """Base class for errors raised by snapstream."""


class ContractViolation(StreamError):
    """An operator was applied outside its precondition."""


class NoMonoidError(ContractViolation):
    """The base container has no empty element / combine."""

    def __init__(self, base_name: str, op: str | None = None) -> None:
        where = f" (required by {op})" if op else ""
        super().__init__(f"no monoid for this base: {base_name}{where}")
        self.base_name = base_name
        self.op = op


class KeyChangeError(ContractViolation):
    """A partitioned operator rewrote the partition key."""

    def __init__(self, key, observed) -> None:
        super().__init__(f"operator changed partition key {key!r} to {observed!r}")
        self.key = key
        self.observed = observed


class RepresentationError(StreamError):
    """reconstruct is not a right inverse of snapshot for a representation."""

    def __init__(self, message: str, tick=None) -> None:
        super().__init__(message)
        self.tick = tick
