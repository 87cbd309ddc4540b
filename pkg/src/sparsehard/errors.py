"""Exception types shared across the package."""


class CapExceededError(RuntimeError):
    """An enumeration or row budget would be exceeded.

    Raised instead of silently approximating or exhausting memory. The
    message always states the required size so the caller can decide
    whether to raise the cap.
    """


class RankDeficiencyError(ValueError):
    """A full-column-rank matrix was required but not supplied."""

    def __init__(self, message: str, deficient_count: int = 0):
        super().__init__(message)
        self.deficient_count = deficient_count


class FormatError(ValueError):
    """A text-format file failed to parse; message names the line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
