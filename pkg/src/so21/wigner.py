"""Invariant trilinear kernel and Wigner coefficients of SO0(2,1).

A coefficient is labeled by three degrees (sigma1, sigma2, sigma3) and three
modes (m1, m2, m3).  It vanishes unless m1 + m2 + m3 = 0 and is normalized to
1 at m = (0, 0, 0).  Two series forms are provided: the product of three
shifted Gamma ratios summed over n, and the equivalent 3H3 bilateral series
with its Pochhammer prefactor.  A 2-D quadrature of the defining integral
serves as an independent oracle.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import group, rep
from .errors import DomainError, NoConvergence, PoleError, SingularPoint
from .numerics import (
    SeriesResult,
    bilateral_sum,
    circle_quadrature,
    gamma,
    is_nonpositive_integer,
    pochhammer,
    pochhammer_gamma_ratio,
    pochhammer_ratio,
    reciprocal_gamma,
    torus_quadrature_extrapolated,
)


class BetaTriple(NamedTuple):
    b1: complex
    b2: complex
    b3: complex


class WignerQuery(NamedTuple):
    sigmas: tuple
    ms: tuple

    @classmethod
    def make(cls, sigmas, ms):
        s = tuple(complex(x) for x in sigmas)
        m = tuple(int(x) for x in ms)
        if len(s) != 3 or len(m) != 3:
            raise DomainError("a Wigner query needs three degrees and three modes")
        return cls(s, m)


def betas(s1, s2, s3) -> BetaTriple:
    s1, s2, s3 = complex(s1), complex(s2), complex(s3)
    return BetaTriple((s1 - s2 - s3 - 1) / 2, (s2 - s3 - s1 - 1) / 2, (s3 - s2 - s1 - 1) / 2)


def _pair_factor(beta, x):
    # [1 - cos x]^beta / Gamma(beta + 1/2)
    base = np.asarray(1.0 - np.cos(x))
    beta = complex(beta)
    positive = base > 0
    safe = np.where(positive, base, 1.0)
    power = np.exp(beta * np.log(safe))
    if beta != 0:
        # only reached with Re beta > 0; kernel_k3 refuses the other case
        power = np.where(positive, power, 0.0)
    return power * reciprocal_gamma(beta + 0.5)


def kernel_k3(bt: BetaTriple, phi1, phi2, phi3):
    """Trilinear kernel with unit constant.

    The (1,2) pair carries exponent b3, (2,3) carries b1 and (3,1) carries b2.
    """
    b1, b2, b3 = bt
    pairs = ((b3, phi1, phi2), (b1, phi2, phi3), (b2, phi3, phi1))
    for b, x, y in pairs:
        if complex(b).real < 0 and np.any(np.abs(np.sin((np.asarray(x) - np.asarray(y)) / 2)) < 1e-15):
            raise SingularPoint("kernel_k3 evaluated at a coincident pair with negative exponent")
    out = 1.0
    for b, x, y in pairs:
        out = out * _pair_factor(b, np.asarray(x) - np.asarray(y))
    return complex(out) if np.ndim(out) == 0 else out


def functional_equation_residual(sigmas, alpha, phis) -> float:
    """Relative defect of K(phi_new) = prod omega_i^(sigma_i + 1) K(phi) under boost02(alpha)."""
    bt = betas(*sigmas)
    omegas, new = zip(*(group.circle_action(alpha, p) for p in phis))
    lhs = kernel_k3(bt, *new)
    rhs = kernel_k3(bt, *phis)
    for w, s in zip(omegas, sigmas):
        rhs *= cmath.exp((complex(s) + 1) * math.log(w))
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


def convergence_gate(sigmas) -> complex:
    total = sum(complex(s) for s in sigmas)
    if total.real >= -1.0:
        raise NoConvergence(f"bilateral series needs Re(sum sigma) < -1, got {total.real:.6g}")
    return total


def normalization(sigmas) -> complex:
    """prod Gamma(-sigma_i) / Gamma(1 + b1 + b2 + b3).

    This is the inverse of the m = 0 series sum, obtained from the closed
    form of that sum (a well-poised bilateral Dixon-type identity), and turns
    any raw series value into a normalized coefficient.
    """
    bt = betas(*sigmas)
    for s in sigmas:
        if is_nonpositive_integer(-complex(s)):
            raise PoleError(f"Gamma(-sigma) is singular for sigma = {s}")
    r = reciprocal_gamma(1 + sum(bt))
    if r == 0:
        raise PoleError("Gamma(1 + b1 + b2 + b3) is singular; the m = 0 sum diverges")
    return complex(np.prod([gamma(-complex(s)) for s in sigmas]) * r)


def kernel_constant(sigmas) -> complex:
    """Constant c that multiplies the unit kernel so that W(0, 0, 0) = 1."""
    total = sum(complex(s) for s in sigmas)
    return complex(2.0 ** ((total + 3) / 2) * math.pi**1.5 * normalization(sigmas))


def _window(ms) -> int:
    return max(64, 8 * max(abs(m) for m in ms))


def gamma_ratio_series(q: WignerQuery, levels: int = 8) -> SeriesResult:
    """Raw sum over n of f_b3(n - m1) f_b1(n + m3) f_b2(n), f_b(x) = (-b)_x / Gamma(x + b + 1)."""
    total = convergence_gate(q.sigmas)
    b1, b2, b3 = betas(*q.sigmas)
    m1, _, m3 = q.ms

    def term(n):
        return (
            pochhammer_gamma_ratio(b3, n - m1)
            * pochhammer_gamma_ratio(b1, n + m3)
            * pochhammer_gamma_ratio(b2, n)
        )

    return bilateral_sum(term, total, n0=_window(q.ms), levels=levels)


def bilateral_3h3(a, b, decay, n0: int = 64, levels: int = 8) -> SeriesResult:
    """3H3(a1, a2, a3; b1, b2, b3; 1) = sum_n prod (a_i)_n / (b_i)_n."""

    def term(n):
        out = np.ones(n.shape, dtype=complex)
        for ai, bi in zip(a, b):
            out = out * pochhammer_ratio(ai, bi, n)
        return out

    return bilateral_sum(term, decay, n0=n0, levels=levels)


def wigner_3h3(q: WignerQuery) -> SeriesResult:
    """Normalized coefficient through the 3H3 packaging.

    W = N (-1)^m1 (-b1)_m3 / (1 + b3)_m1 / [Gamma(b2+1) Gamma(b3-m1+1) Gamma(b1+m3+1)]
        * 3H3(-b3-m1, -b1+m3, -b2; b3-m1+1, b1+m3+1, b2+1; 1)
    with N from `normalization`.
    """
    total = convergence_gate(q.sigmas)
    m1, m2, m3 = q.ms
    if m1 + m2 + m3 != 0:
        return SeriesResult(0j, 0, 0.0)
    b1, b2, b3 = betas(*q.sigmas)
    upper = (-b3 - m1, -b1 + m3, -b2)
    lower = (b3 - m1 + 1, b1 + m3 + 1, b2 + 1)
    for lo in lower:
        if is_nonpositive_integer(lo):
            raise PoleError(f"3H3 lower parameter {lo} is a nonpositive integer")
    pref = (
        (-1) ** (m1 % 2)
        * pochhammer(-b1, m3)
        / pochhammer(1 + b3, m1)
        * reciprocal_gamma(b2 + 1)
        * reciprocal_gamma(b3 - m1 + 1)
        * reciprocal_gamma(b1 + m3 + 1)
    )
    h = bilateral_3h3(upper, lower, total, n0=_window(q.ms))
    norm = normalization(q.sigmas)
    scale = abs(norm * pref)
    return SeriesResult(complex(norm * pref * h.value), h.terms_used, scale * h.err_estimate)


def wigner_coefficient(q: WignerQuery) -> SeriesResult:
    """Normalized Wigner coefficient from the Gamma-ratio series.

    Exactly zero when the modes do not sum to zero.  At m = (0, 0, 0) the
    value is the series times its closed-form inverse, i.e. 1 up to rounding.
    """
    if sum(q.ms) != 0:
        convergence_gate(q.sigmas)
        return SeriesResult(0j, 0, 0.0)
    norm = normalization(q.sigmas)
    raw = gamma_ratio_series(q)
    return SeriesResult(complex(norm * raw.value), raw.terms_used, abs(norm) * raw.err_estimate)


@lru_cache(maxsize=65536)
def _cached_coefficient(sigmas, ms) -> complex:
    return wigner_coefficient(WignerQuery(sigmas, ms)).value


def wigner_value(sigmas, ms) -> complex:
    q = WignerQuery.make(sigmas, ms)
    return _cached_coefficient(q.sigmas, q.ms)


def oracle_exponents(bt: BetaTriple):
    """Error exponents of the shifted product rule for the pinned kernel.

    Line singularities |x|^(2b) contribute N^-(1 + 2b + 2j); the point where
    all three lines meet contributes N^-(2 + 2 sum b).
    """
    cand = [1 + 2 * b for b in bt] + [2 + 2 * sum(bt)] + [3 + 2 * b for b in bt]
    out = []
    for e in sorted(cand, key=lambda z: (z.real, z.imag)):
        if all(abs(e - o) > 1e-9 for o in out):
            out.append(e)
    return out


def wigner_oracle(q: WignerQuery, n_points: int = 1024, levels: int = 4) -> complex:
    """Independent value of the coefficient from the defining triple integral.

    The kernel depends only on angle differences, so phi3 is pinned to 0:
    the phi3 integral contributes the circle mean of e^{i (m1+m2+m3) phi},
    which the shifted grid reproduces exactly (1 or 0).  The remaining 2-D
    integral is taken on shifted product grids of size n_points / 2^j and
    Richardson-extrapolated; ``levels=1`` gives the plain n_points^2 rule.
    """
    bt = betas(*q.sigmas)
    if any(complex(b).real <= -0.5 for b in bt):
        raise DomainError("the defining integral diverges for Re beta <= -1/2")
    if any(complex(b).real <= 0 for b in bt):
        raise DomainError("the product-grid oracle needs Re beta > 0 (grid meets the diagonal)")
    m1, m2, m3 = q.ms
    phase = circle_quadrature(lambda x: np.exp(1j * (m1 + m2 + m3) * x), n_points)
    if abs(phase) < 0.5:
        return 0j
    c = kernel_constant(q.sigmas)

    def f(x1, x2):
        return kernel_k3(bt, x1, x2, 0.0) * np.exp(1j * (m1 * x1 + m2 * x2))

    if levels <= 1:
        from .numerics import torus_quadrature_2d

        return complex(c * phase * torus_quadrature_2d(f, n_points))
    value, _ = torus_quadrature_extrapolated(f, oracle_exponents(bt), n_max=n_points, levels=levels)
    return complex(c * phase * value)


def covariance_residual(q: WignerQuery, g, M: int, n_points: int | None = None) -> float:
    """|W(m) - sum_{m'} W(m') prod_i t^{sigma_i}_{m'_i, m_i}(g)| over |m'_i| <= M."""
    m1, m2, m3 = q.ms
    if M < max(abs(m) for m in q.ms):
        raise DomainError("truncation M must cover the requested modes")
    convergence_gate(q.sigmas)
    mats = [rep.representation_matrix(s, g, M, n_points) for s in q.sigmas]
    cols = [mat[:, m + M] for mat, m in zip(mats, q.ms)]
    lhs = wigner_value(q.sigmas, q.ms)
    rhs = 0j
    for a in range(-M, M + 1):
        for b in range(-M, M + 1):
            c = -a - b
            if abs(c) > M:
                continue
            w = _cached_coefficient(q.sigmas, (a, b, c))
            rhs += w * cols[0][a + M] * cols[1][b + M] * cols[2][c + M]
    return float(abs(lhs - rhs))
