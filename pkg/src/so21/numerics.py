"""Complex special functions, series engines and periodic quadrature.

Gamma-type functions accept scalars or numpy arrays and return a Python
``complex`` for scalar input.  The log-gamma and reciprocal-gamma kernels are
thin, pole-aware wrappers over :mod:`scipy.special`; everything else in this
module is implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special

from .errors import DomainError, NoConvergence, PoleError

POLE_TOL = 1e-12
SERIES_TOL = 1e-12
QUAD_TOL = 1e-12
# |n| at which pochhammer switches from the product recurrence to log-gamma
POCHHAMMER_SWITCH = 64
MAX_TERMS = 1_000_001


@dataclass(frozen=True)
class SeriesResult:
    """Value of an infinite series together with its convergence diagnostics."""

    value: complex
    terms_used: int
    err_estimate: float

    def __complex__(self):
        return complex(self.value)


def _out(arr):
    arr = np.asarray(arr)
    return complex(arr) if arr.ndim == 0 else arr


def is_nonpositive_integer(z, tol=POLE_TOL):
    z = np.asarray(z, dtype=complex)
    r = np.round(z.real)
    return (np.abs(z.imag) <= tol) & (np.abs(z.real - r) <= tol) & (r <= 0)


def log_gamma(z):
    """Principal branch of log Gamma(z).

    Raises PoleError at the nonpositive integers; use `reciprocal_gamma`
    where a vanishing 1/Gamma is the intended behavior.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(is_nonpositive_integer(z)):
        raise PoleError(f"log_gamma evaluated at a pole: {z}")
    return _out(special.loggamma(z))


def reciprocal_gamma(z):
    """1/Gamma(z); exactly zero at the nonpositive integers."""
    z = np.asarray(z, dtype=complex)
    out = np.asarray(special.rgamma(z), dtype=complex)
    poles = is_nonpositive_integer(z)
    if np.any(poles):
        out = np.where(poles, 0j, out)
    return _out(out)


def gamma(z):
    z = np.asarray(z, dtype=complex)
    if np.any(is_nonpositive_integer(z)):
        raise PoleError(f"gamma evaluated at a pole: {z}")
    return _out(special.gamma(z))


def _rising_large(a: complex, n: np.ndarray) -> np.ndarray:
    # (a)_n for positive n via log-gamma; a = -p with p a nonnegative integer
    # is handled through factorials because a + n may sit on a pole.
    out = np.empty(n.shape, dtype=complex)
    if is_nonpositive_integer(a):
        p = int(round(-a.real))
        zero = n > p
        out[zero] = 0.0
        k = n[~zero]
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        out[~zero] = sign * np.exp(special.gammaln(p + 1) - special.gammaln(p - k + 1))
        return out
    return np.exp(special.loggamma(a + n) - special.loggamma(a))


def pochhammer(a, n):
    """Pochhammer symbol (a)_n for integer n of either sign.

    (a)_n = a(a+1)...(a+n-1) for n > 0 and (a)_{-k} = 1/((a-1)...(a-k)).
    Products are used for |n| <= 64, log-gamma ratios beyond; large negative
    indices go through (a)_{-k} = (-1)^k / (1-a)_k.
    """
    a = complex(a)
    n_arr = np.asarray(n)
    if not np.issubdtype(n_arr.dtype, np.integer):
        if np.all(np.equal(np.mod(n_arr, 1), 0)):
            n_arr = n_arr.astype(np.int64)
        else:
            raise TypeError("pochhammer index must be an integer")
    flat = n_arr.ravel().astype(np.int64)
    out = np.empty(flat.shape, dtype=complex)
    S = POCHHAMMER_SWITCH

    pos_small = (flat >= 0) & (flat <= S)
    neg_small = (flat < 0) & (flat >= -S)
    pos_large = flat > S
    neg_large = flat < -S

    if pos_small.any():
        kmax = int(flat[pos_small].max())
        table = np.ones(kmax + 1, dtype=complex)
        if kmax:
            table[1:] = np.cumprod(a + np.arange(kmax))
        out[pos_small] = table[flat[pos_small]]

    if neg_small.any():
        kmax = int(-flat[neg_small].min())
        factors = a - np.arange(1, kmax + 1)
        bad = np.flatnonzero(np.abs(factors) <= POLE_TOL)
        k = -flat[neg_small]
        if bad.size and np.any(k >= bad[0] + 1):
            raise PoleError(f"pochhammer({a}, n) hits a vanishing factor a - {bad[0] + 1}")
        table = np.concatenate(([1.0 + 0j], np.cumprod(factors)))
        out[neg_small] = 1.0 / table[k]

    if pos_large.any():
        out[pos_large] = _rising_large(a, flat[pos_large])

    if neg_large.any():
        k = -flat[neg_large]
        b = 1.0 - a
        if is_nonpositive_integer(b) and np.any(k > round(-b.real)):
            raise PoleError(f"pochhammer({a}, n) hits a vanishing factor")
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        out[neg_large] = sign / _rising_large(b, k)

    return _out(out.reshape(n_arr.shape))


def pochhammer_gamma_ratio(beta, x):
    """(-beta)_x / Gamma(x + beta + 1) for integer x.

    The function is even in x and entire in beta, so it is evaluated at |x|,
    which keeps it free of the poles the two factors have separately.  This
    is the building block of both the Fourier coefficients of
    (1 - cos)^beta and the bilateral Wigner series.
    """
    beta = complex(beta)
    k = np.abs(np.asarray(x)).astype(np.int64)
    flat = k.ravel()
    out = np.empty(flat.shape, dtype=complex)
    direct = flat <= POCHHAMMER_SWITCH
    if abs(beta) > POCHHAMMER_SWITCH / 2:
        direct[:] = True
    if direct.any():
        kd = flat[direct]
        out[direct] = np.asarray(pochhammer(-beta, kd)) * np.asarray(reciprocal_gamma(kd + beta + 1))
    if (~direct).any():
        kl = flat[~direct].astype(float)
        out[~direct] = reciprocal_gamma(-beta) * np.exp(
            special.loggamma(kl - beta) - special.loggamma(kl + beta + 1)
        )
    return _out(out.reshape(k.shape))


def gauss_2f1(a, b, c, x, tol=SERIES_TOL, max_terms=100_000) -> SeriesResult:
    """Gauss hypergeometric series 2F1(a, b; c; x) for 0 <= x < 1.

    Summation stops once three consecutive terms, and the geometric bound on
    the remaining tail, are below ``tol`` relative to the partial sum.
    """
    a, b, c = complex(a), complex(b), complex(c)
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"gauss_2f1 requires 0 <= x < 1, got {x}")
    if is_nonpositive_integer(c):
        raise PoleError(f"gauss_2f1 lower parameter c={c} is a nonpositive integer")
    total = 1.0 + 0j
    term = 1.0 + 0j
    quiet = 0
    n = 0
    while n < max_terms:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        n += 1
        total += term
        if term == 0:
            return SeriesResult(total, n + 1, 0.0)
        ratio = abs((a + n) * (b + n) / ((c + n) * (n + 1))) * x
        tail = abs(term) * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
        scale = tol * abs(total)
        if abs(term) <= scale and tail <= scale:
            quiet += 1
            if quiet >= 3:
                return SeriesResult(total, n + 1, tail)
        else:
            quiet = 0
    raise NoConvergence(f"gauss_2f1 did not converge in {max_terms} terms (x={x})")


def richardson(values: Sequence[complex], exponents: Sequence[complex], ratio: float = 2.0):
    """Extrapolate a sequence computed at N_k = N_0 ratio^k.

    The error of ``values[k]`` is assumed to be sum_j C_j N_k^(-e_j) with the
    exponents ``e_j`` known; each elimination removes one of them.  Returns the
    extrapolated value and the difference to the previous column as an error
    estimate.
    """
    col = np.asarray(values, dtype=complex)
    prev = col
    for e in list(exponents)[: len(col) - 1]:
        f = ratio ** (-complex(e))
        prev, col = col, (col[1:] - f * col[:-1]) / (1.0 - f)
    return complex(col[-1]), float(abs(col[-1] - prev[-1]))


def bilateral_sum(
    term_fn: Callable[[np.ndarray], np.ndarray],
    decay_exponent,
    *,
    n0: int = 64,
    levels: int = 8,
    rtol: float = 1e-8,
    stall_rtol: float = 1e-6,
    max_terms: int = MAX_TERMS,
) -> SeriesResult:
    """Sum a two-sided series sum_{n in Z} term(n).

    ``term_fn`` receives an integer array and must return the terms
    elementwise.  ``decay_exponent`` is the (possibly complex) exponent s in
    |term(n)| ~ |n|^s; its real part must be below -1.  Symmetric partial
    sums at N = n0 2^k are extrapolated with the tail exponents s+1, s, s-1,
    ... which is exact for terms with an asymptotic expansion in powers of
    1/n (ratios of Gamma functions).
    """
    s = complex(decay_exponent)
    if s.real >= -1.0:
        raise NoConvergence(f"bilateral series diverges: decay exponent {s} has real part >= -1")
    while levels > 2 and 2 * n0 * 2 ** (levels - 1) + 1 > max_terms:
        levels -= 1
    n_max = n0 * 2 ** (levels - 1)
    if 2 * n_max + 1 > max_terms:
        raise NoConvergence("max_terms too small for the requested summation window")
    n = np.arange(-n_max, n_max + 1)
    terms = np.asarray(term_fn(n), dtype=complex)
    if terms.shape != n.shape:
        raise ValueError("term_fn must return one term per index")
    if not np.all(np.isfinite(terms)):
        raise NoConvergence("non-finite term in bilateral series")
    pairs = terms[n_max + 1 :] + terms[n_max - 1 :: -1]
    partial = terms[n_max] + np.concatenate(([0.0], np.cumsum(pairs)))
    sampled = partial[[n0 * 2**k for k in range(levels)]]
    value, err = richardson(sampled, [-(s + 1 - j) for j in range(levels - 1)])
    scale = max(abs(value), float(np.abs(terms[n_max - n0 : n_max + n0 + 1]).sum()), 1e-300)
    if err > stall_rtol * scale:
        raise NoConvergence(f"bilateral acceleration stalled: residual {err:.3g} vs scale {scale:.3g}")
    if err > rtol * scale:
        # still usable, but the caller sees the weaker estimate
        pass
    return SeriesResult(value, 2 * n_max + 1, err)


def _nodes(n_points: int, offset: float = 0.5) -> np.ndarray:
    return (np.arange(n_points) + offset) * (2.0 * np.pi / n_points)


def circle_quadrature(f: Callable[[np.ndarray], np.ndarray], n_points: int, offset: float = 0.5) -> complex:
    """Normalized integral (1/2pi) int_0^2pi f on a shifted uniform grid.

    The half-step shift keeps the grid off phi = 0, where the kernels of this
    package are singular.  Spectrally accurate for smooth periodic f.
    """
    if n_points < 8:
        raise DomainError("circle_quadrature needs at least 8 points")
    return complex(np.mean(f(_nodes(n_points, offset))))


def circle_quadrature_adaptive(f, tol=QUAD_TOL, n_start=64, n_max=2**18):
    """Double the grid until two successive rules agree.

    Agreement is measured against the mean of |f|, so integrals that nearly
    cancel still terminate.  Returns ``(value, n_points, err)``.
    """
    n = n_start
    x = _nodes(n)
    vals = f(x)
    q = complex(np.mean(vals))
    while n < n_max:
        n *= 2
        vals = f(_nodes(n))
        q2 = complex(np.mean(vals))
        err = abs(q2 - q)
        if err <= tol * max(float(np.mean(np.abs(vals))), 1e-300):
            return q2, n, err
        q = q2
    raise NoConvergence(f"circle quadrature not converged at {n_max} points")


def circle_quadrature_extrapolated(f, exponents, n0=32, levels=8):
    """Shifted-grid rule refined by Richardson on known error exponents.

    For an integrand with an algebraic singularity |phi|^gamma at phi = 0 the
    shifted rule has error sum_j C_j N^-(gamma + 1 + 2j); passing those
    exponents recovers high accuracy.  Returns ``(value, err)``.
    """
    vals = [circle_quadrature(f, n0 * 2**k) for k in range(levels)]
    return richardson(vals, exponents)


def torus_quadrature_2d(f: Callable[[np.ndarray, np.ndarray], np.ndarray], n_points: int, offset: float = 0.5) -> complex:
    """Two-dimensional analogue of `circle_quadrature` (product grid)."""
    if n_points < 8:
        raise DomainError("torus_quadrature_2d needs at least 8 points")
    x = _nodes(n_points, offset)
    p1, p2 = np.meshgrid(x, x, indexing="ij")
    return complex(np.mean(f(p1, p2)))


def torus_quadrature_extrapolated(f, exponents, n_max=1024, levels=4):
    ns = [n_max // 2 ** (levels - 1 - k) for k in range(levels)]
    vals = [torus_quadrature_2d(f, n) for n in ns]
    return richardson(vals, exponents)


def pochhammer_ratio(a, b, n):
    """(a)_n / (b)_n for integer n of either sign, without forming either factor.

    Small |n| uses the products; larger |n| a single log-gamma difference,
    (a)_n/(b)_n = Gamma(a+n)Gamma(b) / (Gamma(a)Gamma(b+n)) for n > 0 and
    (1-b)_k / (1-a)_k for n = -k < 0.
    """
    a, b = complex(a), complex(b)
    n_arr = np.asarray(n).astype(np.int64)
    flat = n_arr.ravel()
    out = np.empty(flat.shape, dtype=complex)
    small = np.abs(flat) <= POCHHAMMER_SWITCH
    if small.any():
        out[small] = np.asarray(pochhammer(a, flat[small])) / np.asarray(pochhammer(b, flat[small]))
    pos = flat > POCHHAMMER_SWITCH
    if pos.any():
        k = flat[pos]
        out[pos] = _log_rising_ratio(a, b, k)
    neg = flat < -POCHHAMMER_SWITCH
    if neg.any():
        k = -flat[neg]
        out[neg] = _log_rising_ratio(1.0 - b, 1.0 - a, k)
    return _out(out.reshape(n_arr.shape))


def _log_rising_ratio(a: complex, b: complex, k: np.ndarray) -> np.ndarray:
    # (a)_k / (b)_k for large positive k
    if is_nonpositive_integer(a) and np.any(k > round(-a.real)):
        zero = k > round(-a.real)
        res = np.zeros(k.shape, dtype=complex)
        if (~zero).any():
            res[~zero] = np.asarray(pochhammer(a, k[~zero])) / np.asarray(pochhammer(b, k[~zero]))
        if is_nonpositive_integer(b) and np.any(k > round(-b.real)):
            raise PoleError(f"pochhammer ratio with vanishing denominator ({b})_k")
        return res
    if is_nonpositive_integer(b) and np.any(k > round(-b.real)):
        raise PoleError(f"pochhammer ratio with vanishing denominator ({b})_k")
    return np.exp(
        special.loggamma(a + k) - special.loggamma(a) - special.loggamma(b + k) + special.loggamma(b)
    )
