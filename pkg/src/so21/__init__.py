"""Numerical representation theory of SO0(2,1) and ISO(2,1)."""

from .errors import (
    AmbiguousClass,
    DomainError,
    LabelOrbitMismatch,
    NoConvergence,
    OutOfChart,
    OutOfOrbit,
    PoleError,
    SingularPoint,
    So21Error,
    StabilizerMismatch,
    UnsupportedCase,
)
from .numerics import SeriesResult

__version__ = "0.1.0"
