"""Exception types shared across the package."""


class GraphSpecError(ValueError):
    """Malformed graph specification string or JSON document."""


class SizeLimitError(ValueError):
    """Requested computation exceeds a hard size budget."""
