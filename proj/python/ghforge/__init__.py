"""Python bindings for the ghforge metric geometry toolkit."""

from ._ghforge import (
    AmbiguityError,
    ConstructionError,
    DomainError,
    PreconditionError,
    StructuralError,
    chordal_bound_root,
    circle_space,
    diameter,
    distortion,
    exact_gh,
    gh_lower_bound,
    glue,
    hausdorff,
    max_product,
    phi_distortion,
    phi_prime_distortion,
    reproduce,
    sample_space,
    small_loops_contractible,
    validate_metric,
)

__all__ = [name for name in dir() if not name.startswith("_")]
