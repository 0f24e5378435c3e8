from __future__ import annotations


class CodeError(ValueError):
    """A check matrix or code construction violates a structural requirement."""


class NonCommutingError(CodeError):
    def __init__(self, rows: tuple[int, int]):
        self.rows = rows
        super().__init__(f"generators {rows[0]} and {rows[1]} anticommute")


class RedundantGeneratorError(CodeError):
    def __init__(self, r: int, rank: int):
        self.r = r
        self.rank = rank
        super().__init__(
            f"{r} generator rows have rank {rank}; pass allow_redundant=True to keep dependent rows"
        )


class ResourceLimitError(RuntimeError):
    """An exhaustive routine would exceed its configured work or size budget."""


class ConfigError(ValueError):
    """Invalid experiment or command-line configuration."""
