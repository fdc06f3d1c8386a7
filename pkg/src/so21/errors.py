"""Exception hierarchy.

Every exception carries a ``status`` string used by the command line front
end, so each failure mode maps to a distinct, machine-readable tag.
"""


class So21Error(Exception):
    status = "error"


class PoleError(So21Error, ZeroDivisionError):
    """A Gamma function (or Pochhammer factor) was evaluated at a pole."""

    status = "pole"


class NoConvergence(So21Error, ArithmeticError):
    status = "no_convergence"


class DomainError(So21Error, ValueError):
    status = "domain_error"


class SingularPoint(DomainError):
    status = "singular_point"


class OutOfOrbit(DomainError):
    status = "out_of_orbit"


class OutOfChart(DomainError):
    status = "out_of_chart"


class AmbiguousClass(DomainError):
    status = "ambiguous_class"


class LabelOrbitMismatch(DomainError):
    status = "label_orbit_mismatch"


class UnsupportedCase(DomainError):
    status = "unsupported_case"


class StabilizerMismatch(So21Error, AssertionError):
    """A computed Wigner rotation does not fix the base point."""

    status = "stabilizer_mismatch"
