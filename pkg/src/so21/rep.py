"""Representations of SO0(2,1) on homogeneous functions of the light cone.

A function of degree sigma is stored through its restriction to the circle,
f(phi) = sum_m f_m e^{i m phi}.  The group acts by (T(g) F)(k) = F(g^-1 k).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import group
from .errors import DomainError, NoConvergence, PoleError
from .numerics import (
    SERIES_TOL,
    SeriesResult,
    circle_quadrature,
    circle_quadrature_adaptive,
    circle_quadrature_extrapolated,
    gamma,
    gauss_2f1,
    is_nonpositive_integer,
    log_gamma,
    pochhammer,
    pochhammer_gamma_ratio,
    reciprocal_gamma,
)

LABEL_TOL = 1e-12


class Series(enum.Enum):
    PRINCIPAL = "principal"
    COMPLEMENTARY = "complementary"
    DISCRETE_INTEGER = "discrete_integer"
    GENERIC = "generic"


@dataclass(frozen=True)
class RepLabel:
    sigma: complex
    series: Series
    rho: float | None = None
    n: int | None = None


def classify(sigma) -> RepLabel:
    """Series of the representation with homogeneity degree sigma.

    sigma = -1/2 + i rho is principal (including rho = 0), integers are
    discrete, other reals in (-1, 0) complementary.
    """
    s = complex(sigma)
    if abs(s.real + 0.5) <= LABEL_TOL:
        return RepLabel(s, Series.PRINCIPAL, rho=s.imag)
    if abs(s.imag) <= LABEL_TOL:
        r = round(s.real)
        if abs(s.real - r) <= LABEL_TOL:
            return RepLabel(s, Series.DISCRETE_INTEGER, n=int(r))
        if -1.0 < s.real < 0.0:
            return RepLabel(s, Series.COMPLEMENTARY)
    return RepLabel(s, Series.GENERIC)


# ---------------------------------------------------------------- invariant form

def phi_m(sigma, m: int) -> complex:
    """Gamma(m + sigma + 1) / Gamma(m - sigma), the weight of mode m.

    A pole of the denominator gives exactly 0 (this wins when both Gammas
    are singular); a pole of the numerator alone raises PoleError.
    """
    s = complex(sigma)
    num, den = m + s + 1, m - s
    if is_nonpositive_integer(den):
        return 0j
    if is_nonpositive_integer(num):
        raise PoleError(f"phi_m: Gamma({num}) is singular")
    return cmath.exp(log_gamma(num) - log_gamma(den))


def degeneracy_membership(sigma_int: int, m: int) -> frozenset:
    """Which of the degeneracy subspaces Fplus, Fminus, F0 contain mode m."""
    sigma_int = int(sigma_int)
    flags = set()
    if m >= -sigma_int:
        flags.add("Fplus")
    if m <= sigma_int:
        flags.add("Fminus")
    if sigma_int >= 0 and abs(m) <= sigma_int:
        flags.add("F0")
    return frozenset(flags)


@dataclass(frozen=True)
class FourierVector:
    """Finitely supported vector in the canonical basis e^{i m phi}."""

    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(k): complex(v) for k, v in dict(self.coeffs).items()})

    @property
    def window(self) -> int:
        return max((abs(k) for k, v in self.coeffs.items() if v != 0), default=0)

    def get(self, m: int) -> complex:
        return self.coeffs.get(m, 0j)

    def as_array(self, M: int) -> np.ndarray:
        if self.window > M:
            raise DomainError(f"vector has support beyond |m| <= {M}")
        out = np.zeros(2 * M + 1, dtype=complex)
        for k, v in self.coeffs.items():
            out[k + M] = v
        return out

    @classmethod
    def from_array(cls, arr, M: int | None = None, drop_below: float = 0.0):
        arr = np.asarray(arr, dtype=complex)
        if M is None:
            M = (len(arr) - 1) // 2
        return cls({m: arr[m + M] for m in range(-M, M + 1) if abs(arr[m + M]) > drop_below})


def hermitian_form(f1: FourierVector, f2: FourierVector, sigma: float, c0: float = 1.0) -> complex:
    """Invariant Hermitian form of the degree-sigma representation.

    c0 2^{-sigma-1} / (sqrt(pi) Gamma(sigma+1)) sum_m Phi_m conj(f1_m) f2_m.
    """
    s = complex(sigma)
    if abs(s.imag) > LABEL_TOL:
        raise DomainError("hermitian_form needs a real sigma")
    s = s.real
    if is_nonpositive_integer(s + 1):
        raise PoleError(f"hermitian_form: Gamma({s + 1}) is singular")
    pref = c0 * 2.0 ** (-s - 1) / (math.sqrt(math.pi) * gamma(s + 1))
    total = 0j
    for m in sorted(set(f1.coeffs) & set(f2.coeffs)):
        a, b = f1.coeffs[m], f2.coeffs[m]
        if a == 0 or b == 0:
            continue
        total += phi_m(s, m) * a.conjugate() * b
    return complex(pref * total)


# ---------------------------------------------------------------- (1 - cos)^lambda

def fourier_lambda(lam, m: int) -> complex:
    """Fourier coefficient a_m of (1 - cos psi)^lambda.

    a_m = 2^lam Gamma(lam + 1/2) (-lam)_m / (sqrt(pi) Gamma(m + lam + 1)),
    symmetric in m.  For Re lam <= -1/2 this is the analytically continued
    (regularized) coefficient.
    """
    lam = complex(lam)
    if is_nonpositive_integer(lam + 0.5):
        raise PoleError(f"fourier_lambda: Gamma({lam + 0.5}) is singular")
    pref = 2.0**lam * gamma(lam + 0.5) / math.sqrt(math.pi)
    return complex(pref * pochhammer_gamma_ratio(lam, abs(int(m))))


def fourier_lambda_array(lam, M: int) -> np.ndarray:
    """a_0 ... a_M in one vectorized call."""
    lam = complex(lam)
    if is_nonpositive_integer(lam + 0.5):
        raise PoleError(f"fourier_lambda: Gamma({lam + 0.5}) is singular")
    pref = 2.0**lam * gamma(lam + 0.5) / math.sqrt(math.pi)
    return pref * np.asarray(pochhammer_gamma_ratio(lam, np.arange(M + 1)))


def fourier_lambda_quadrature(lam, m: int, n0: int = 32, levels: int = 8):
    """Independent quadrature value of a_m, valid for Re lam > -1/2.

    The integrand behaves like |psi|^{2 lam} at psi = 0, so the shifted grid
    rule is extrapolated with error exponents 2 lam + 1 + 2j.
    Returns ``(value, err)``.
    """
    lam = complex(lam)
    if lam.real <= -0.5:
        raise DomainError("quadrature oracle needs Re lambda > -1/2")

    def f(psi):
        return np.exp(lam * np.log(1.0 - np.cos(psi))) * np.exp(-1j * m * psi)

    exps = [2 * lam + 1 + 2 * j for j in range(levels - 1)]
    return circle_quadrature_extrapolated(f, exps, n0=n0, levels=levels)


def _euler_tail(b: np.ndarray, z: complex) -> complex:
    # sum_n b_n z^n = sum_j z^j / (1-z)^{j+1} (Delta^j b)_0, stopped once
    # terms start to grow (round-off in high differences)
    w = z / (1.0 - z)
    diff = np.asarray(b, dtype=complex)
    total = 0j
    factor = 1.0 / (1.0 - z)
    last = math.inf
    for _ in range(len(b) - 1):
        term = factor * diff[0]
        if abs(term) > last:
            break
        total += term
        last = abs(term)
        if last <= 1e-17 * abs(total):
            break
        factor *= w
        diff = np.diff(diff)
    return total


def fourier_series(lam, psi, M: int = 1000, tail_terms: int = 40) -> complex:
    """sum_m a_m e^{i m psi}: partial sum up to |m| <= M plus both tails.

    The tails are summed with the Euler transform, which makes the series
    usable for Re lam <= 0 where it converges only conditionally.  psi must
    stay away from 0 mod 2pi.
    """
    psi = float(psi)
    if abs(math.sin(psi / 2)) < 1e-3:
        raise DomainError("fourier_series is not accelerated near psi = 0")
    a = fourier_lambda_array(lam, M + tail_terms)
    m = np.arange(1, M + 1)
    body = a[0] + np.sum(a[1 : M + 1] * (np.exp(1j * m * psi) + np.exp(-1j * m * psi)))
    b = a[M + 1 :]
    if not np.any(b):
        return complex(body)
    z = cmath.exp(1j * psi)
    zc = z.conjugate()
    tail = z ** (M + 1) * _euler_tail(b, z) + zc ** (M + 1) * _euler_tail(b, zc)
    return complex(body + tail)


def fourier_partial_sum(lam, psi, M: int) -> complex:
    """Plain symmetric partial sum over |m| <= M."""
    a = fourier_lambda_array(lam, M)
    m = np.arange(1, M + 1)
    return complex(a[0] + np.sum(a[1:] * 2 * np.cos(m * psi)))


def fourier_truncation_order(lam, tol: float = 1e-6, M_max: int = 10**7) -> int:
    """Smallest M whose crude tail bound sum_{|m|>M} |a_m| is below tol.

    Needs Re lam > 0 (absolute convergence).  |a_m| decays like m^{-2 Re lam - 1}.
    """
    lam = complex(lam)
    if lam.real <= 0:
        raise NoConvergence("absolute tail bound needs Re lambda > 0")
    M = 8
    while M <= M_max:
        aM = abs(fourier_lambda(lam, M))
        if aM == 0:
            return M
        bound = 2 * aM * M / (2 * lam.real)
        if bound <= tol:
            return M
        M *= 2
    raise NoConvergence("truncation order exceeds M_max")


# ---------------------------------------------------------------- spherical functions

def _cosh_power(sigma, alpha) -> complex:
    return cmath.exp(complex(sigma) * math.log(math.cosh(alpha)))


def zonal_result(sigma, alpha, tol=SERIES_TOL, max_terms=100_000) -> SeriesResult:
    sigma = complex(sigma)
    x = math.tanh(alpha) ** 2
    hyp = gauss_2f1((1 - sigma) / 2, -sigma / 2, 1, x, tol=tol, max_terms=max_terms)
    pref = _cosh_power(sigma, alpha)
    return SeriesResult(pref * hyp.value, hyp.terms_used, abs(pref) * hyp.err_estimate)


def zonal(sigma, alpha) -> complex:
    """Rotation-invariant spherical function, via the 2F1 closed form."""
    return complex(zonal_result(sigma, alpha).value)


def assoc_result(sigma, m: int, alpha, tol=SERIES_TOL, max_terms=100_000) -> SeriesResult:
    sigma = complex(sigma)
    m = int(m)
    if m < 0:
        r = assoc_result(sigma, -m, alpha, tol, max_terms)
        sign = -1 if m % 2 else 1
        return SeriesResult(sign * r.value, r.terms_used, r.err_estimate)
    t = math.tanh(alpha)
    if m > 0 and t == 0.0:
        return SeriesResult(0j, 1, 0.0)
    pref = pochhammer(-sigma, m) / (2.0**m * math.factorial(m)) * _cosh_power(sigma, alpha) * t**m
    hyp = gauss_2f1((m - sigma) / 2, (m - sigma + 1) / 2, m + 1, t * t, tol=tol, max_terms=max_terms)
    return SeriesResult(pref * hyp.value, hyp.terms_used, abs(pref) * hyp.err_estimate)


def assoc(sigma, m: int, alpha) -> complex:
    """Associated spherical function from the 2F1 closed form.

    Negative m is defined by assoc(sigma, -m) = (-1)^m assoc(sigma, m).
    """
    return complex(assoc_result(sigma, m, alpha).value)


def assoc_integral(sigma, m: int, alpha, tol: float = 1e-13) -> complex:
    """(1/2pi) int (cosh a - sinh a cos phi)^sigma e^{i m phi} dphi by quadrature."""
    sigma = complex(sigma)
    ch, sh = math.cosh(alpha), math.sinh(alpha)

    def f(phi):
        return np.exp(sigma * np.log(ch - sh * np.cos(phi)) + 1j * m * phi)

    n0 = 64 + 8 * abs(m)
    value, _, _ = circle_quadrature_adaptive(f, tol=tol, n_start=n0)
    return value


def zonal_integral(sigma, alpha, tol: float = 1e-13) -> complex:
    return assoc_integral(sigma, 0, alpha, tol)


# ---------------------------------------------------------------- matrix elements

def _grid_size(alpha: float, M: int) -> int:
    # analyticity strip of omega^sigma has half-width acosh(coth |alpha|)
    a = abs(alpha)
    need = 4 * (2 * M + 1)
    if a > 1e-12:
        width = math.acosh(1.0 / math.tanh(a))
        need = max(need, int(2 * 40.0 / width) + 2 * M)
    n = 256
    while n < need:
        n *= 2
    return n


def boost_matrix(sigma, alpha: float, M: int, n_points: int | None = None) -> np.ndarray:
    """Matrix of T(boost02(alpha)) on modes |m'|, |m| <= M.

    Entry [m' + M, m + M] is (1/2pi) int omega^sigma e^{i m phi_new} e^{-i m' phi},
    computed column by column with an FFT on the shifted grid.  e^{i m phi_new}
    is formed from the cosine and sine of phi_new directly, so no angle
    unwrapping is involved.
    """
    sigma = complex(sigma)
    N = n_points or _grid_size(alpha, M)
    h = 2.0 * math.pi / N
    phi = (np.arange(N) + 0.5) * h
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    omega = ch - sh * np.cos(phi)
    unit = ((ch * np.cos(phi) - sh) + 1j * np.sin(phi)) / omega
    weight = np.exp(sigma * np.log(omega))
    ms = np.arange(-M, M + 1)
    cols = weight[:, None] * unit[:, None] ** ms[None, :]
    spectrum = np.fft.fft(cols, axis=0) / N
    rows = np.mod(ms, N)
    shift = np.exp(-1j * ms * h / 2)[:, None]
    return spectrum[rows, :] * shift


def representation_matrix(sigma, g, M: int, n_points: int | None = None) -> np.ndarray:
    """Truncated matrix of T(g) in the canonical basis, |m'|, |m| <= M."""
    phi1, alpha, phi2 = group.cartan_decompose(g)
    ms = np.arange(-M, M + 1)
    left = np.exp(-1j * ms * phi1)
    right = np.exp(-1j * ms * phi2)
    if alpha == 0.0:
        return np.diag(left * right)
    return left[:, None] * boost_matrix(sigma, alpha, M, n_points) * right[None, :]


def matrix_element(sigma, m_out: int, m_in: int, g, n_points: int | None = None) -> complex:
    """t_{m_out, m_in}(g) = (1/2pi) int e^{-i m_out phi} (T(g) e^{i m_in .})(phi) dphi."""
    g = group.check_element(g, tol=1e-10)
    M = max(abs(m_out), abs(m_in))
    phi1, alpha, phi2 = group.cartan_decompose(g)
    if alpha == 0.0:
        return complex(cmath.exp(-1j * m_in * (phi1 + phi2))) if m_out == m_in else 0j
    t = boost_matrix(sigma, alpha, M, n_points)[m_out + M, m_in + M]
    return complex(cmath.exp(-1j * m_out * phi1) * t * cmath.exp(-1j * m_in * phi2))


def boost_column(sigma, alpha: float, m: int, tol: float = 1e-12, max_window: int = 4096):
    """Column m of T(boost02(alpha)), truncated where the entries fall below tol.

    Returns ``(window, column)`` with column indexed by m' in [-window, window].
    """
    M = max(16, 2 * abs(m))
    while M <= max_window:
        col = boost_matrix(sigma, alpha, M)[:, m + M]
        edge = max(abs(col[0]), abs(col[1]), abs(col[-1]), abs(col[-2]))
        if edge < tol:
            return M, col
        M *= 2
    raise NoConvergence("boost column does not decay within the window limit")


def unitarity_sum(sigma, alpha: float, m: int, tol: float = 1e-12) -> float:
    """sum_{m'} |t_{m', m}(boost02(alpha))|^2 with adaptive truncation."""
    _, col = boost_column(sigma, alpha, m, tol)
    return float(np.sum(np.abs(col) ** 2))


def apply(sigma, g, f: FourierVector, M_out: int | None = None) -> FourierVector:
    """T(g) f, truncated to |m| <= M_out."""
    M_in = f.window
    if M_out is None:
        M_out = M_in + 40
    M = max(M_in, M_out)
    T = representation_matrix(sigma, g, M)
    out = T @ f.as_array(M)
    return FourierVector.from_array(out[M - M_out : M + M_out + 1], M_out)


def boost_zero_column(sigma, m_out: int, alpha: float) -> complex:
    """Closed-form value of t_{m_out, 0}(boost02(alpha)).

    The boost column at m_in = 0 is the Fourier integral of omega^sigma,
    which is even in the mode number, so it equals assoc(sigma, |m_out|, alpha).
    """
    return assoc(sigma, abs(int(m_out)), alpha)
