"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside its physical domain."""


class StructuralError(ValueError):
    """A matrix argument is malformed (shape, Hermiticity, dimension factorisation)."""


class PostSelectionError(RuntimeError):
    """Weak-measurement post-selection succeeded with vanishing probability."""


class ContractViolationError(RuntimeError):
    """A numerical contract (positivity, trace, dual-path agreement) was broken."""
