"""Concrete finite-algebra backends and the window materializer."""
from .theories import (
    BACKENDS,
    AbGroupBackend,
    Backend,
    GroupBackend,
    GroupPairBackend,
    Hom,
    MonoidBackend,
    Pair,
    PointedSetBackend,
    compose,
    get_backend,
)

__all__ = [
    "BACKENDS",
    "AbGroupBackend",
    "Backend",
    "GroupBackend",
    "GroupPairBackend",
    "Hom",
    "MonoidBackend",
    "Pair",
    "PointedSetBackend",
    "compose",
    "get_backend",
]
