"""Set-equation graphs and the canonical hyperset store."""

from .graph import ApgSystem, DuplicateDefinition, Mode, from_equations, reachable_restrict
from .store import (
    CanonStore,
    HypersetId,
    ModeMismatch,
    Ordering,
    canonical_form,
    children,
    compose,
    default_store,
    equal,
    intern,
    intern_all,
    order,
    sort_key,
)

__all__ = [
    "ApgSystem",
    "CanonStore",
    "DuplicateDefinition",
    "HypersetId",
    "Mode",
    "ModeMismatch",
    "Ordering",
    "canonical_form",
    "children",
    "compose",
    "default_store",
    "equal",
    "from_equations",
    "intern",
    "intern_all",
    "order",
    "reachable_restrict",
    "sort_key",
]
