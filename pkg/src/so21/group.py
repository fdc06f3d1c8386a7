"""3x3 matrix realization of SO0(2,1).

Group elements are plain ``numpy`` arrays of shape (3, 3) acting on
vectors (p0, p1, p2) that carry the form p0^2 - p1^2 - p2^2.  Points of
the forward light cone are written k(phi) = omega (1, sin phi, cos phi).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError

ETA = np.diag([1.0, -1.0, -1.0])
TWO_PI = 2.0 * math.pi
ELEMENT_TOL = 1e-12
# below this boost rapidity the two rotation angles are not separately defined
CARTAN_GAUGE_TOL = 1e-12


def wrap_angle(angle: float) -> float:
    a = math.fmod(angle, TWO_PI)
    if a < 0:
        a += TWO_PI
    return 0.0 if a >= TWO_PI else a


def identity():
    return np.eye(3)


def rotation(phi: float) -> np.ndarray:
    """Rotation of the (p1, p2) plane.

    The cone point with angle parameter phi0 goes to parameter phi0 + phi,
    so T(rotation(phi)) f (x) = f(x - phi).
    """
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def boost02(alpha: float) -> np.ndarray:
    """Hyperbolic rotation in the (p0, p2) plane; (1,0,0) -> (cosh, 0, sinh)."""
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    return np.array([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]])


def boost01(beta: float) -> np.ndarray:
    ch, sh = math.cosh(beta), math.sinh(beta)
    return np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])


def horo_b(b: float) -> np.ndarray:
    """Null rotation moving (1/2, 0, 1/2) along the cone to parameter a = b."""
    h = 0.5 * b * b
    return np.array([[1.0 + h, b, h], [b, 1.0, b], [-h, -b, 1.0 - h]])


def horo_z(z: float) -> np.ndarray:
    """Null rotation fixing the cone point (1/2, 0, 1/2)."""
    h = 0.5 * z * z
    return np.array([[1.0 + h, z, -h], [z, 1.0, -z], [h, z, 1.0 - h]])


def minkowski(v, w) -> float:
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(v[0] * w[0] - v[1] * w[1] - v[2] * w[2])


def act(g, v) -> np.ndarray:
    return np.asarray(g, dtype=float) @ np.asarray(v, dtype=float)


def multiply(*gs) -> np.ndarray:
    out = np.eye(3)
    for g in gs:
        out = out @ g
    return out


def inverse(g) -> np.ndarray:
    """Exact inverse eta g^T eta, which keeps pseudo-orthogonality intact."""
    return ETA @ np.asarray(g, dtype=float).T @ ETA


def element_defect(g) -> float:
    """Largest entrywise deviation of g^T eta g from eta."""
    g = np.asarray(g, dtype=float)
    return float(np.max(np.abs(g.T @ ETA @ g - ETA)))


def check_element(g, tol: float = ELEMENT_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3) or not np.all(np.isfinite(g)):
        raise DomainError("group element must be a finite 3x3 matrix")
    scale = max(1.0, float(np.max(np.abs(g))) ** 2)
    if element_defect(g) > tol * scale:
        raise DomainError(f"matrix is not pseudo-orthogonal (defect {element_defect(g):.3g})")
    if abs(np.linalg.det(g) - 1.0) > tol * scale ** 1.5 or g[0, 0] <= 0:
        raise DomainError("matrix is not in the identity component")
    return g


class CartanAngles(NamedTuple):
    phi1: float
    alpha: float
    phi2: float


def cartan_compose(angles) -> np.ndarray:
    phi1, alpha, phi2 = angles
    return rotation(phi1) @ boost02(alpha) @ rotation(phi2)


def cartan_decompose(g) -> CartanAngles:
    """Write g = rotation(phi1) boost02(alpha) rotation(phi2) with alpha >= 0.

    alpha comes from the length of the boost column (g10, g20), which is
    better conditioned than arccosh(g00) near the identity.  At alpha = 0
    phi2 is set to 0 and the whole rotation goes into phi1.
    """
    g = np.asarray(g, dtype=float)
    sh = math.hypot(g[1, 0], g[2, 0])
    alpha = math.asinh(sh)
    if alpha <= CARTAN_GAUGE_TOL:
        return CartanAngles(wrap_angle(math.atan2(g[1, 2], g[1, 1])), 0.0, 0.0)
    phi1 = math.atan2(g[1, 0], g[2, 0])
    rest = boost02(-alpha) @ rotation(-phi1) @ g
    phi2 = math.atan2(rest[1, 2], rest[1, 1])
    return CartanAngles(wrap_angle(phi1), alpha, wrap_angle(phi2))


def circle_action(alpha, phi):
    """Action of boost02(alpha)^-1 on the cone point k(phi).

    Returns (omega, phi_new) with boost02(-alpha) k(phi) = omega k(phi_new),
    omega = cosh(alpha) - sinh(alpha) cos(phi) > 0 and phi_new in [0, 2pi).
    Works elementwise on arrays.
    """
    phi = np.asarray(phi, dtype=float)
    ch, sh = np.cosh(alpha), np.sinh(alpha)
    c = np.cos(phi)
    omega = ch - sh * c
    phi_new = np.mod(np.arctan2(np.sin(phi), ch * c - sh), TWO_PI)
    if omega.ndim == 0 and np.ndim(alpha) == 0:
        return float(omega), float(phi_new)
    return omega, phi_new


def cone_point(phi, omega=1.0) -> np.ndarray:
    return omega * np.array([1.0, math.sin(phi), math.cos(phi)])


def cone_readout(k) -> tuple[float, float]:
    """(omega, phi) of a forward cone vector k = omega (1, sin phi, cos phi)."""
    k = np.asarray(k, dtype=float)
    return float(k[0]), wrap_angle(math.atan2(k[1], k[2]))
