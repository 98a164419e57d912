class DomainError(ValueError):
    """Input outside the domain of an analysis (empty sample, degenerate data, ...)."""
