"""Exact ultrametric Mahler measures of rational and quadratic algebraic numbers."""

from ._core import (
    DomainError,
    ParseError,
    ResourceError,
    Surd,
    __version__,
    b2list,
    bset,
    fundamental_unit,
    mahler,
    mbar,
    minf,
    minf_rational,
    relations,
    weil_height,
)

__all__ = [
    "DomainError",
    "ParseError",
    "ResourceError",
    "Surd",
    "__version__",
    "b2list",
    "bset",
    "fundamental_unit",
    "mahler",
    "mbar",
    "minf",
    "minf_rational",
    "relations",
    "weil_height",
]
