"""Acceptance suites.

Each suite returns a `CheckResult` carrying the measured metric and the
tolerance it was held to.  Random draws come from ``numpy.random`` seeded by
the caller, so runs are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import group, iso, rep, wigner
from .errors import So21Error


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        text = f"{tag} {self.name}: metric={self.metric:.3e} tol={self.tolerance:.1e}"
        return text + (f" ({self.detail})" if self.detail else "")


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _principal_grid(rng, n=50):
    rho = rng.uniform(-3.0, 3.0, n)
    alpha = rng.uniform(-3.0, 3.0, n)
    return [(complex(-0.5, r), float(a)) for r, a in zip(rho, alpha)]


def spherical_oracle(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for sigma, alpha in _principal_grid(rng):
        # a quadrature result cannot resolve values far below the size of its
        # integrand, (1/2pi) int |omega^sigma| = zonal(Re sigma), so that size
        # floors the denominator of the relative error
        floor = abs(rep.zonal(sigma.real, alpha))
        z_closed, z_quad = rep.zonal(sigma, alpha), rep.zonal_integral(sigma, alpha)
        worst = max(worst, abs(z_closed - z_quad) / max(abs(z_closed), floor))
        m = int(rng.integers(1, 8))
        p_closed, p_quad = rep.assoc(sigma, m, alpha), rep.assoc_integral(sigma, m, alpha)
        worst = max(worst, abs(p_closed - p_quad) / max(abs(p_closed), floor))
    return CheckResult(
        "spherical_oracle", worst <= 1e-9, worst, 1e-9,
        "50 principal (sigma, alpha), closed form vs quadrature, relative to max(|value|, integrand size)",
    )


def equivalence_symmetry(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for sigma, alpha in _principal_grid(rng):
        worst = max(worst, abs(rep.zonal(-1 - sigma, alpha) - rep.zonal(sigma, alpha)))
    return CheckResult("equivalence_symmetry", worst <= 1e-9, worst, 1e-9, "zonal(-1-sigma) vs zonal(sigma)")


def parity_integral(seed=0) -> CheckResult:
    """Sign relation under m -> -m, both sides taken from the integral."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_m = None
    for sigma, alpha in _principal_grid(rng, 5):
        for m in range(0, 11):
            lhs = rep.assoc_integral(sigma, -m, alpha)
            rhs = (-1) ** m * rep.assoc_integral(sigma, m, alpha)
            err = abs(lhs - rhs)
            if err > worst:
                worst, worst_m = err, m
    detail = "m in 0..10 on 5 principal points"
    if worst > 1e-10:
        detail += f"; worst at odd m={worst_m}: the integral is even in m, so the sign relation fails there"
    return CheckResult("parity_integral", worst <= 1e-10, worst, 1e-10, detail)


FOURIER_LAMBDAS = (1, 2, 0.7, complex(-0.25, 0.5))


def fourier_expansion(seed=0) -> CheckResult:
    psis = np.linspace(0.3, 2 * math.pi - 0.3, 200)
    worst = 0.0
    for lam in FOURIER_LAMBDAS:
        for psi in psis:
            exact = complex((1 - math.cos(psi)) ** lam)
            worst = max(worst, abs(rep.fourier_series(lam, psi) - exact))
    finite = all(rep.fourier_lambda(lam, m) == 0 for lam in (1, 2) for m in range(lam + 1, lam + 200))
    ok = worst <= 1e-6 and finite
    return CheckResult(
        "fourier_expansion", ok, worst, 1e-6, f"4 lambdas x 200 angles; exact truncation for integer lambda: {finite}"
    )


def series_classification(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    ms = range(-20, 21)
    failures = []
    for s in rng.uniform(-1.0, 0.0, 20):
        if s in (-1.0, 0.0):
            continue
        vals = [rep.phi_m(s, m) for m in ms]
        if not all(v.real > 0 and abs(v.imag) <= 1e-12 * abs(v) for v in vals):
            failures.append(f"nonpositive at sigma={s:.4f}")
    outside = []
    while len(outside) < 20:
        s = float(rng.choice([rng.uniform(-6.0, -1.0), rng.uniform(0.0, 5.0)]))
        if abs(s - round(s)) > 1e-3:
            outside.append(s)
    for s in outside:
        if not any(rep.phi_m(s, m).real < 0 for m in ms):
            failures.append(f"no negative weight at sigma={s:.4f}")
    for n in range(4):
        for m in range(-n, n + 1):
            if rep.phi_m(n, m) != 0:
                failures.append(f"phi_m({n},{m}) != 0")
    return CheckResult("series_classification", not failures, float(len(failures)), 0.0, "; ".join(failures[:3]))


def unitarity(seed=0) -> CheckResult:
    worst = 0.0
    for rho in (0.7, 2.0):
        sigma = complex(-0.5, rho)
        for alpha in (0.3, 1.0):
            for m in (0, 1, 3):
                worst = max(worst, abs(rep.unitarity_sum(sigma, alpha, m) - 1.0))
    return CheckResult("unitarity", worst <= 1e-6, worst, 1e-6, "sum_m' |t_{m',m}(boost)|^2")


def admissible_triples(rng, n=20):
    """Mix of principal, complementary and real triples with Re(sum) < -1."""
    out = []
    while len(out) < n:
        kind = len(out) % 3
        if kind == 0:
            s = [complex(-0.5, r) for r in rng.uniform(-2.0, 2.0, 3)]
        elif kind == 1:
            s = [complex(x) for x in rng.uniform(-0.9, -0.1, 3)]
        else:
            s = [complex(x) for x in rng.uniform(-1.95, -1.55, 3)]
        if sum(s).real < -1.1:
            out.append(tuple(s))
    return out


def _random_ms(rng, bound):
    while True:
        m1, m2 = (int(x) for x in rng.integers(-bound, bound + 1, 2))
        m3 = -m1 - m2
        if abs(m3) <= bound:
            return (m1, m2, m3)


def wigner_normalization(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    selection_ok = True
    for s in admissible_triples(rng):
        w = wigner.wigner_coefficient(wigner.WignerQuery.make(s, (0, 0, 0))).value
        worst = max(worst, abs(w - 1.0))
        for ms in ((1, 1, 1), (2, -1, 0), (0, 0, 3)):
            if wigner.wigner_coefficient(wigner.WignerQuery.make(s, ms)).value != 0:
                selection_ok = False
    ok = worst <= 1e-8 and selection_ok
    return CheckResult("wigner_normalization", ok, worst, 1e-8, f"selection rule exact: {selection_ok}")


def wigner_series_identity(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for s in admissible_triples(rng):
        q = wigner.WignerQuery.make(s, _random_ms(rng, 4))
        a = wigner.wigner_coefficient(q).value
        b = wigner.wigner_3h3(q).value
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return CheckResult("wigner_series_identity", worst <= 1e-10, worst, 1e-10, "Gamma-ratio sum vs 3H3 packaging")


def wigner_oracle_check(seed=0, n_points=1024) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    start = time.perf_counter()
    for _ in range(10):
        s = tuple(rng.uniform(-1.9, -1.7, 3))
        q = wigner.WignerQuery.make(s, _random_ms(rng, 3))
        a = wigner.wigner_coefficient(q).value
        b = wigner.wigner_oracle(q, n_points)
        worst = max(worst, _rel(b, a))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-4 and elapsed <= 300
    return CheckResult("wigner_oracle", ok, worst, 1e-4, f"10 queries, {n_points}^2 grid, {elapsed:.1f} s")


COVARIANCE_SIGMAS = (complex(-0.5, 0.3), complex(-0.5, -0.1), complex(-0.5, -0.2))


def covariance(seed=0) -> CheckResult:
    q = wigner.WignerQuery.make(COVARIANCE_SIGMAS, (1, -1, 0))
    g = group.boost02(0.2)
    res = [wigner.covariance_residual(q, g, M) for M in (6, 8, 10, 12)]
    monotone = all(b <= a + 1e-9 for a, b in zip(res, res[1:]))
    ok = monotone and res[-1] <= 1e-3
    return CheckResult("covariance", ok, res[-1], 1e-3, "residuals " + ", ".join(f"{r:.2e}" for r in res))


def kernel_functional_equation(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    triples = admissible_triples(rng, 10)
    worst = 0.0
    for k in range(100):
        s = triples[k % len(triples)]
        alpha = rng.uniform(-2.0, 2.0)
        phis = tuple(rng.uniform(0, 2 * math.pi, 3))
        worst = max(worst, wigner.functional_equation_residual(s, alpha, phis))
    return CheckResult("kernel_functional_equation", worst <= 1e-9, worst, 1e-9, "100 random boosts and angles")


def _random_element(rng, max_alpha=1.5):
    return group.cartan_compose((rng.uniform(0, 2 * math.pi), rng.uniform(0, max_alpha), rng.uniform(0, 2 * math.pi)))


def _orbit_sample(rng, cls):
    if cls is iso.OrbitClass.MASSIVE_UPPER:
        return iso.chart(cls, (rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi)), rng.uniform(0.5, 2.0))
    if cls is iso.OrbitClass.TACHYONIC:
        mu, a, t = rng.uniform(0.5, 2.0), rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi)
        return mu * np.array([math.sinh(a), math.cosh(a) * math.sin(t), math.cosh(a) * math.cos(t)])
    return iso.chart(cls, (rng.uniform(0.2, 3.0), rng.uniform(-2, 2)))


# cone draws are kept this far from the ray the stereographic chart misses
CONE_TAU_MIN = 0.2


def _well_charted(cls, *points) -> bool:
    if cls is not iso.OrbitClass.LIGHTLIKE_UPPER:
        return True
    return all(q[0] + q[2] >= CONE_TAU_MIN for q in points)


def iso_kinematics(seed=0, draws=1000) -> CheckResult:
    rng = np.random.default_rng(seed)
    cocycle = section = compose = covar = 0.0
    cases = (iso.OrbitClass.MASSIVE_UPPER, iso.OrbitClass.TACHYONIC, iso.OrbitClass.LIGHTLIKE_UPPER)
    for cls in cases:
        n = 0
        while n < draws:
            p = _orbit_sample(rng, cls)
            r1, r2 = _random_element(rng), _random_element(rng)
            q1 = group.inverse(r1) @ p
            q2 = group.inverse(r2) @ q1
            if not _well_charted(cls, p, q1, q2):
                continue
            n += 1
            w12 = iso.wigner_rotation(p, r1 @ r2).g
            w = iso.wigner_rotation(p, r1).g @ iso.wigner_rotation(q1, r2).g
            cocycle = max(cocycle, float(np.max(np.abs(w12 - w))))
            h = iso.wigner_operator(p)
            base = iso.base_point(cls, iso.orbit_scale(p))
            section = max(section, float(np.max(np.abs(h @ base - p))))
    labels = {
        iso.OrbitClass.MASSIVE_UPPER: lambda p: iso.MassSpin(iso.orbit_scale(p), 2),
        iso.OrbitClass.TACHYONIC: lambda p: iso.TachyonicSpin(iso.orbit_scale(p), 0.7),
        iso.OrbitClass.LIGHTLIKE_UPPER: lambda p: iso.Helicity(1.3),
    }
    for cls in cases:
        n = 0
        while n < 200:
            p = _orbit_sample(rng, cls)
            g1 = iso.IsoElement(rng.normal(size=3), _random_element(rng))
            g2 = iso.IsoElement(rng.normal(size=3), _random_element(rng))
            q1 = group.inverse(g1.r) @ p
            if not _well_charted(cls, p, q1, group.inverse(g2.r) @ q1):
                continue
            n += 1
            label = labels[cls](p)
            m1, p1 = iso.induced_action(label, g1, p)
            m2, p2 = iso.induced_action(label, g2, p1)
            m12, p12 = iso.induced_action(label, iso.iso_multiply(g1, g2), p)
            compose = max(compose, abs(m1 * m2 - m12), float(np.max(np.abs(p2 - p12))))
    for _ in range(draws):
        p, a = rng.normal(size=3), rng.normal(size=3)
        r = _random_element(rng)
        covar = max(covar, abs(iso.character(p, r @ a) - iso.character(group.inverse(r) @ p, a)))
    ok = cocycle <= 1e-10 and section <= 1e-10 and compose <= 1e-10 and covar <= 1e-12
    detail = f"cocycle {cocycle:.1e}, section {section:.1e}, composition {compose:.1e}, character {covar:.1e}"
    return CheckResult("iso_kinematics", ok, max(cocycle, section, compose), 1e-10, detail)


def matrix_hygiene(seed=0) -> CheckResult:
    rng = np.random.default_rng(seed)
    gens = (group.rotation, group.boost02, group.boost01, group.horo_b, group.horo_z)
    drift = 0.0
    for _ in range(100):
        g = np.eye(3)
        for _ in range(20):
            gen = gens[int(rng.integers(len(gens)))]
            g = g @ gen(rng.uniform(-0.5, 0.5))
        drift = max(drift, group.element_defect(g) / max(1.0, float(np.max(np.abs(g))) ** 2))
    round_trip = 0.0
    for _ in range(1000):
        g = _random_element(rng, max_alpha=3.0)
        round_trip = max(round_trip, float(np.max(np.abs(group.cartan_compose(group.cartan_decompose(g)) - g))))
    ok = drift <= 1e-10 and round_trip <= 1e-10
    return CheckResult("matrix_hygiene", ok, max(drift, round_trip), 1e-10, f"word drift {drift:.1e}, Cartan round trip {round_trip:.1e}")


SUITES = {
    "spherical_oracle": spherical_oracle,
    "equivalence_symmetry": equivalence_symmetry,
    "parity_integral": parity_integral,
    "fourier_expansion": fourier_expansion,
    "series_classification": series_classification,
    "unitarity": unitarity,
    "wigner_normalization": wigner_normalization,
    "wigner_series_identity": wigner_series_identity,
    "wigner_oracle": wigner_oracle_check,
    "covariance": covariance,
    "kernel_functional_equation": kernel_functional_equation,
    "iso_kinematics": iso_kinematics,
    "matrix_hygiene": matrix_hygiene,
}


def run_suite(name: str, seed: int = 0) -> CheckResult:
    try:
        return SUITES[name](seed)
    except So21Error as exc:
        return CheckResult(name, False, math.inf, 0.0, f"{exc.status}: {exc}")


def run_all(seed: int = 0):
    return [run_suite(name, seed) for name in SUITES]
