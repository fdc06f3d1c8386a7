"""The inhomogeneous group ISO(2,1) and its induced representations.

Elements are pairs (a, r) of a translation and an SO0(2,1) matrix with
(a1, r1)(a2, r2) = (a1 + r1 a2, r1 r2).  Momentum orbits are classified by
m^2 = p0^2 - p1^2 - p2^2; each nontrivial orbit gets a base point, a section
h(p) carrying the base point to p, and the little group fixing the base point.

    orbit            base point       section                   little group
    m^2 > 0, p0 > 0  (m, 0, 0)        rotation(phi) boost02(a)  rotation
    m^2 < 0          (0, 0, mu)       boost01(b) boost02(a)     boost01
    m^2 = 0, p0 > 0  (1/2, 0, 1/2)    horo_b(a) boost02(log t)  horo_z
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import group, rep
from .errors import (
    AmbiguousClass,
    LabelOrbitMismatch,
    OutOfChart,
    OutOfOrbit,
    StabilizerMismatch,
    UnsupportedCase,
)

# rapidity beyond which the case-2 product chart is abandoned for the
# cylinder section (entries grow like e^|beta|)
CHART_RAPIDITY_LIMIT = 3.0
STABILIZER_TOL = 1e-10


class OrbitClass(enum.Enum):
    MASSIVE_UPPER = "massive_upper"
    MASSIVE_LOWER = "massive_lower"
    TACHYONIC = "tachyonic"
    LIGHTLIKE_UPPER = "lightlike_upper"
    ORIGIN = "origin"


@dataclass(frozen=True)
class IsoElement:
    a: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(3))
        object.__setattr__(self, "r", group.check_element(self.r, tol=1e-10))

    @classmethod
    def translation(cls, a):
        return cls(a, np.eye(3))

    @classmethod
    def homogeneous(cls, r):
        return cls(np.zeros(3), r)


def iso_multiply(g1: IsoElement, g2: IsoElement) -> IsoElement:
    return IsoElement(g1.a + g1.r @ g2.a, g1.r @ g2.r)


def iso_inverse(g: IsoElement) -> IsoElement:
    ri = group.inverse(g.r)
    return IsoElement(-(ri @ g.a), ri)


def character(p, a) -> complex:
    """exp(i [p, a]) with the Minkowski pairing."""
    return cmath.exp(1j * group.minkowski(p, a))


@dataclass(frozen=True)
class Momentum:
    p: np.ndarray
    msq: float

    @classmethod
    def of(cls, p):
        p = np.asarray(p, dtype=float).reshape(3)
        return cls(p, group.minkowski(p, p))


def default_tol(p) -> float:
    p = np.asarray(p, dtype=float)
    return 1e-9 * (1.0 + float(p @ p))


def orbit_classify(p, tol: float | None = None) -> OrbitClass:
    p = np.asarray(p, dtype=float)
    if tol is None:
        tol = default_tol(p)
    if float(np.linalg.norm(p)) < tol:
        return OrbitClass.ORIGIN
    msq = group.minkowski(p, p)
    if abs(msq) < tol:
        if p[0] > 0:
            return OrbitClass.LIGHTLIKE_UPPER
        raise AmbiguousClass("lower light cone has no orbit representative in this construction")
    if msq > 0:
        return OrbitClass.MASSIVE_UPPER if p[0] > 0 else OrbitClass.MASSIVE_LOWER
    return OrbitClass.TACHYONIC


def orbit_scale(p) -> float:
    """m for massive orbits, mu = sqrt(-m^2) for tachyonic ones, 1 on the cone."""
    msq = group.minkowski(p, p)
    cls = orbit_classify(p)
    if cls in (OrbitClass.MASSIVE_UPPER, OrbitClass.MASSIVE_LOWER):
        return math.sqrt(msq)
    if cls is OrbitClass.TACHYONIC:
        return math.sqrt(-msq)
    return 1.0


def base_point(cls: OrbitClass, scale: float = 1.0) -> np.ndarray:
    if cls is OrbitClass.MASSIVE_UPPER:
        return np.array([scale, 0.0, 0.0])
    if cls is OrbitClass.TACHYONIC:
        return np.array([0.0, 0.0, scale])
    if cls is OrbitClass.LIGHTLIKE_UPPER:
        return np.array([0.5, 0.0, 0.5])
    raise UnsupportedCase(f"no base point for {cls.value}")


# ---------------------------------------------------------------- charts

def chart(cls: OrbitClass, coords, scale: float = 1.0) -> np.ndarray:
    """Orbit point from chart coordinates.

    massive: (alpha, phi) -> m (cosh a, sinh a sin phi, sinh a cos phi)
    tachyonic: (alpha, beta) -> mu (sinh a cosh b, sinh a sinh b, cosh a)
    lightlike: (tau, a) -> tau ((1 + a^2)/2, a, (1 - a^2)/2)
    """
    x, y = coords
    if cls is OrbitClass.MASSIVE_UPPER:
        return scale * np.array([math.cosh(x), math.sinh(x) * math.sin(y), math.sinh(x) * math.cos(y)])
    if cls is OrbitClass.TACHYONIC:
        return scale * np.array([math.sinh(x) * math.cosh(y), math.sinh(x) * math.sinh(y), math.cosh(x)])
    if cls is OrbitClass.LIGHTLIKE_UPPER:
        if x <= 0:
            raise OutOfChart("tau must be positive")
        return x * np.array([(1 + y * y) / 2, y, (1 - y * y) / 2])
    raise UnsupportedCase(f"no chart for {cls.value}")


def chart_inverse(cls: OrbitClass, p, scale: float | None = None):
    p = np.asarray(p, dtype=float)
    if scale is None:
        scale = orbit_scale(p)
    if cls is OrbitClass.MASSIVE_UPPER:
        if p[0] <= 0:
            raise OutOfChart("massive chart covers the upper sheet only")
        return math.asinh(math.hypot(p[1], p[2]) / scale), group.wrap_angle(math.atan2(p[1], p[2]))
    if cls is OrbitClass.TACHYONIC:
        if p[2] <= 0 or (abs(p[1]) >= abs(p[0]) and (p[0] != 0 or p[1] != 0)):
            raise OutOfChart("hyperbolic chart needs p2 > 0 and |p1| < |p0|")
        if p[0] == 0:
            return 0.0, 0.0
        alpha = math.copysign(math.asinh(math.sqrt((p[0] - p[1]) * (p[0] + p[1])) / scale), p[0])
        return alpha, math.atanh(p[1] / p[0])
    if cls is OrbitClass.LIGHTLIKE_UPPER:
        tau = p[0] + p[2]
        if tau <= 0:
            raise OutOfChart("stereographic chart misses the ray p0 = -p2")
        return tau, p[1] / tau
    raise UnsupportedCase(f"no chart for {cls.value}")


# ---------------------------------------------------------------- sections

def _in_product_chart(p) -> bool:
    if p[2] <= 0:
        return False
    if p[0] == 0 and p[1] == 0:
        return True
    return abs(p[1]) <= math.tanh(CHART_RAPIDITY_LIMIT) * abs(p[0])


def wigner_operator(p, cls: OrbitClass | None = None, scale: float | None = None) -> np.ndarray:
    """Section h(p) with h(p) base_point = p.

    For tachyonic momenta the product chart boost01(b) boost02(a) is used
    where it exists and is well conditioned; elsewhere on the one-sheeted
    hyperboloid the cylinder section rotation(theta) boost02(a) is used.
    """
    p = np.asarray(p, dtype=float)
    if cls is None:
        cls = orbit_classify(p)
    if scale is None:
        scale = orbit_scale(p)
    if cls is OrbitClass.ORIGIN:
        raise OutOfOrbit("the origin has no Wigner operator")
    if cls is OrbitClass.MASSIVE_LOWER:
        raise OutOfOrbit("lower mass sheet is not reached by SO0(2,1) from (m, 0, 0)")
    if cls is OrbitClass.MASSIVE_UPPER:
        alpha, phi = chart_inverse(cls, p, scale)
        return group.rotation(phi) @ group.boost02(alpha)
    if cls is OrbitClass.TACHYONIC:
        if _in_product_chart(p):
            alpha, beta = chart_inverse(cls, p, scale)
            return group.boost01(beta) @ group.boost02(alpha)
        alpha = math.asinh(p[0] / scale)
        theta = math.atan2(p[1], p[2])
        return group.rotation(theta) @ group.boost02(alpha)
    tau, a = chart_inverse(cls, p, scale)
    return group.horo_b(a) @ group.boost02(math.log(tau))


# ---------------------------------------------------------------- little group

class LittleKind(enum.Enum):
    ROTATION = "rotation"
    BOOST01 = "boost01"
    HORO_Z = "horo_z"


@dataclass(frozen=True)
class LittleGroupElement:
    kind: LittleKind
    parameter: float
    g: np.ndarray

    def matrix(self) -> np.ndarray:
        return _FAMILY[self.kind](self.parameter)


_FAMILY = {
    LittleKind.ROTATION: group.rotation,
    LittleKind.BOOST01: group.boost01,
    LittleKind.HORO_Z: group.horo_z,
}

_KIND = {
    OrbitClass.MASSIVE_UPPER: LittleKind.ROTATION,
    OrbitClass.TACHYONIC: LittleKind.BOOST01,
    OrbitClass.LIGHTLIKE_UPPER: LittleKind.HORO_Z,
}


def little_parameter(kind: LittleKind, w) -> float:
    if kind is LittleKind.ROTATION:
        return math.atan2(w[1, 2], w[1, 1])
    if kind is LittleKind.BOOST01:
        return math.asinh(w[0, 1])
    return float(w[1, 0])


def wigner_rotation(p, r) -> LittleGroupElement:
    """Little-group element h(p)^-1 r h(r^-1 p) fixing the base point of p's orbit."""
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    cls = orbit_classify(p)
    if cls not in _KIND:
        raise OutOfOrbit(f"no Wigner rotation on the {cls.value} orbit")
    scale = orbit_scale(p)
    q = group.inverse(r) @ p
    if orbit_classify(q, default_tol(p)) is not cls:
        raise OutOfOrbit("r^-1 p left the orbit of p")
    hp_inv = group.inverse(wigner_operator(p, cls, scale))
    hq = wigner_operator(q, cls, scale)
    w = hp_inv @ r @ hq
    base = base_point(cls, scale)
    drift = float(np.max(np.abs(w @ base - base)))
    # round-off in w grows with the size of the three factors
    cond = float(np.max(np.abs(hp_inv)) * np.max(np.abs(r)) * np.max(np.abs(hq)))
    if drift > STABILIZER_TOL * cond * max(1.0, scale):
        raise StabilizerMismatch(f"Wigner rotation moves the base point by {drift:.3g}")
    kind = _KIND[cls]
    return LittleGroupElement(kind, little_parameter(kind, w), w)


# ---------------------------------------------------------------- induced representations

@dataclass(frozen=True)
class MassSpin:
    m: float
    s: int


@dataclass(frozen=True)
class TachyonicSpin:
    m: float
    s: float


@dataclass(frozen=True)
class Helicity:
    lam: float


@dataclass(frozen=True)
class BoundaryRep:
    sigma: complex


def _check_label(label, p) -> OrbitClass:
    cls = orbit_classify(p)
    expected = {
        MassSpin: OrbitClass.MASSIVE_UPPER,
        TachyonicSpin: OrbitClass.TACHYONIC,
        Helicity: OrbitClass.LIGHTLIKE_UPPER,
        BoundaryRep: OrbitClass.ORIGIN,
    }.get(type(label))
    if expected is not cls:
        raise LabelOrbitMismatch(f"{type(label).__name__} label used on a {cls.value} momentum")
    if isinstance(label, (MassSpin, TachyonicSpin)):
        if abs(abs(label.m) - orbit_scale(p)) > 1e-8 * max(1.0, abs(label.m)):
            raise LabelOrbitMismatch("label mass does not match the momentum's orbit")
    return cls


def induced_action(label, g: IsoElement, p):
    """Multiplier and transformed momentum of the induced representation.

    (T(g) psi)(p) = multiplier * psi(p_new) with p_new = r^-1 p and
    multiplier = exp(-i [p, a]) * chi(w), chi the little-group character
    exp(i s phi), exp(i s beta) or exp(i lam zeta).
    """
    p = np.asarray(p, dtype=float)
    cls = _check_label(label, p)
    if cls is OrbitClass.ORIGIN:
        raise UnsupportedCase("use origin_matrix_element for the origin orbit")
    w = wigner_rotation(p, g.r)
    weight = label.lam if isinstance(label, Helicity) else label.s
    mult = cmath.exp(-1j * group.minkowski(p, g.a)) * cmath.exp(1j * weight * w.parameter)
    return mult, group.inverse(g.r) @ p


def origin_matrix_element(label: BoundaryRep, g: IsoElement, m_out: int, m_in: int) -> complex:
    """On the zero-momentum orbit translations act trivially and the
    representation is that of the homogeneous group."""
    return rep.matrix_element(label.sigma, m_out, m_in, g.r)


# ---------------------------------------------------------------- measures

def measure_density(cls: OrbitClass, coords) -> float:
    """Density of the quasi-invariant orbit measure in chart coordinates.

    massive (alpha, phi): tanh(alpha)/2; tachyonic (alpha, beta): sinh(alpha)/2;
    lightlike (tau, a): tau (1 - a)^2.  Absolute values are taken so the
    densities stay positive for negative alpha.
    """
    x, y = coords
    if cls is OrbitClass.MASSIVE_UPPER:
        return 0.5 * abs(math.tanh(x))
    if cls is OrbitClass.TACHYONIC:
        return 0.5 * abs(math.sinh(x))
    if cls is OrbitClass.LIGHTLIKE_UPPER:
        if x <= 0:
            raise OutOfChart("tau must be positive")
        return x * (1.0 - y) ** 2
    raise UnsupportedCase(f"no orbit measure for {cls.value}")


def invariant_density(msq: float, p1: float, p2: float) -> float:
    """dp1 dp2 / (2 |p0|) on the mass shell, written through (p1, p2)."""
    p0sq = msq + p1 * p1 + p2 * p2
    if p0sq <= 0:
        raise OutOfChart("no real p0 above this (p1, p2)")
    return 1.0 / (2.0 * math.sqrt(p0sq))
