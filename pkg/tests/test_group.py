import math

import numpy as np
import pytest

from so21 import group as G
from so21.errors import DomainError


def close(a, b, tol=1e-12):
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol


def random_element(rng):
    return G.cartan_compose((rng.uniform(0, 2 * math.pi), rng.uniform(0, 4), rng.uniform(0, 2 * math.pi)))


# ------------------------------------------------------------- generators

def test_rotation_examples():
    assert close(G.rotation(0), np.eye(3))
    v = G.act(G.rotation(math.pi / 2), [1, 1, 0])
    assert close(v, [1, 0, -1], 1e-15)
    assert close(G.rotation(2.0) @ G.rotation(5.0), G.rotation(math.fmod(7.0, 2 * math.pi)))


def test_rotation_shifts_cone_angle():
    # rotation(psi) moves the cone point at angle phi to angle phi + psi
    for phi, psi in [(0.3, 1.1), (5.0, 2.5)]:
        k = G.act(G.rotation(psi), G.cone_point(phi))
        omega, phi_new = G.cone_readout(k)
        assert abs(omega - 1) <= 1e-14
        assert abs(G.wrap_angle(phi_new - phi - psi + math.pi) - math.pi) <= 1e-14


def test_boost02_examples():
    assert close(G.boost02(0), np.eye(3))
    assert close(G.boost02(0.4) @ G.boost02(1.1), G.boost02(1.5))
    a = 0.8
    assert close(G.act(G.boost02(a), [1, 0, 0]), [math.cosh(a), 0, math.sinh(a)], 1e-15)


def test_boost01_examples():
    assert close(G.boost01(0), np.eye(3))
    assert close(G.boost01(-0.4) @ G.boost01(1.1), G.boost01(0.7))
    b = 1.3
    assert close(G.act(G.boost01(b), [1, 0, 0]), [math.cosh(b), math.sinh(b), 0], 1e-15)


def test_horospheric_families():
    base = np.array([0.5, 0.0, 0.5])
    for z in (-2.0, 0.3, 4.0):
        assert close(G.act(G.horo_z(z), base), base, 1e-14)
    for b in (-1.5, 0.2, 2.0):
        assert close(G.act(G.horo_b(b), base), [(1 + b * b) / 2, b, (1 - b * b) / 2], 1e-14)
    assert close(G.horo_b(0.7) @ G.horo_b(-1.9), G.horo_b(-1.2))
    assert close(G.horo_z(0.7) @ G.horo_z(-1.9), G.horo_z(-1.2))
    for g in (G.horo_b(1.7), G.horo_z(-2.2)):
        G.check_element(g)


def test_act_and_inverse():
    rng = np.random.default_rng(10)
    assert close(G.act(np.eye(3), [1, 2, 3]), [1, 2, 3])
    assert close(G.inverse(G.rotation(0.9)), G.rotation(-0.9))
    for _ in range(50):
        g = random_element(rng)
        v, w = rng.normal(size=3), rng.normal(size=3)
        scale = np.max(np.abs(g)) ** 2 * (1 + np.abs(v).max() * np.abs(w).max())
        assert abs(G.minkowski(G.act(g, v), G.act(g, w)) - G.minkowski(v, w)) <= 1e-13 * scale
        assert close(G.multiply(g, G.inverse(g)), np.eye(3), 1e-12 * np.max(np.abs(g)) ** 2)


def test_random_words_stay_in_group():
    rng = np.random.default_rng(11)
    gens = [G.rotation, G.boost02, G.boost01, G.horo_b, G.horo_z]
    for _ in range(50):
        g = np.eye(3)
        for _ in range(20):
            g = g @ gens[rng.integers(len(gens))](rng.uniform(-1, 1))
        assert G.element_defect(g) <= 1e-10 * max(1.0, np.max(np.abs(g)) ** 2)


def test_check_element_rejects():
    with pytest.raises(DomainError):
        G.check_element(np.diag([1.0, -1.0, 1.0]))  # det -1
    with pytest.raises(DomainError):
        G.check_element(-np.eye(3) @ G.rotation(math.pi))  # g00 < 0
    with pytest.raises(DomainError):
        G.check_element(np.eye(3) * 1.01)


# ------------------------------------------------------------- Cartan decomposition

def test_cartan_examples():
    assert G.cartan_decompose(np.eye(3)) == (0.0, 0.0, 0.0)
    a = G.cartan_decompose(G.boost02(1.3))
    assert abs(a.alpha - 1.3) <= 1e-14
    for angle in (a.phi1, a.phi2):
        assert min(angle, 2 * math.pi - angle) <= 1e-14
    c = G.cartan_decompose(G.rotation(0.4) @ G.boost02(2.0) @ G.rotation(1.1))
    assert abs(c.phi1 - 0.4) <= 1e-12 and abs(c.alpha - 2.0) <= 1e-12 and abs(c.phi2 - 1.1) <= 1e-12


def test_cartan_pure_rotation_gauge():
    c = G.cartan_decompose(G.rotation(2.5))
    assert c.alpha == 0.0 and c.phi2 == 0.0 and abs(c.phi1 - 2.5) <= 1e-14


def test_cartan_round_trip():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        angles = (rng.uniform(0, 2 * math.pi), rng.uniform(1e-3, 4), rng.uniform(0, 2 * math.pi))
        back = G.cartan_decompose(G.cartan_compose(angles))
        assert abs(back.alpha - angles[1]) <= 1e-10
        for x, y in ((back.phi1, angles[0]), (back.phi2, angles[2])):
            d = G.wrap_angle(x - y)
            assert min(d, 2 * math.pi - d) <= 1e-9
        g = random_element(rng)
        assert close(G.cartan_compose(G.cartan_decompose(g)), g, 1e-10 * np.max(np.abs(g)))


# ------------------------------------------------------------- circle action

def test_circle_action_examples():
    assert G.circle_action(0.0, 1.7) == pytest.approx((1.0, 1.7), abs=1e-15)
    for a in (0.5, 2.0):
        omega, phi = G.circle_action(a, 0.0)
        assert abs(omega - math.exp(-a)) <= 1e-14 and phi == 0.0


def test_circle_action_matches_inverse_boost_on_cone():
    rng = np.random.default_rng(13)
    for _ in range(100):
        a, phi = rng.uniform(-3, 3), rng.uniform(0, 2 * math.pi)
        k = G.act(G.boost02(-a), G.cone_point(phi))
        assert abs(G.minkowski(k, k)) <= 1e-12 * np.max(np.abs(k)) ** 2
        omega, phi_new = G.circle_action(a, phi)
        w2, p2 = G.cone_readout(k)
        assert abs(omega - w2) <= 1e-12 * omega
        d = abs(phi_new - p2)
        assert min(d, 2 * math.pi - d) <= 1e-12


def test_circle_action_measure_identity():
    h = 1e-6
    for a in (0.4, -1.3, 2.5):
        for phi in np.linspace(0.1, 6.1, 25):
            omega, _ = G.circle_action(a, phi)
            _, up = G.circle_action(a, phi + h)
            _, dn = G.circle_action(a, phi - h)
            deriv = np.angle(np.exp(1j * (up - dn))) / (2 * h)
            assert abs(deriv - 1 / omega) <= 1e-6 * max(1.0, 1 / omega)


def test_circle_action_cocycle():
    rng = np.random.default_rng(14)
    for _ in range(100):
        a, b, phi = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi)
        w1, p1 = G.circle_action(a, phi)
        w2, p2 = G.circle_action(b, p1)
        w12, p12 = G.circle_action(a + b, phi)
        assert abs(w1 * w2 - w12) <= 1e-10 * w12
        d = abs(p2 - p12)
        assert min(d, 2 * math.pi - d) <= 1e-10


def test_circle_action_vectorized():
    phis = np.linspace(0, 6, 7)
    omega, new = G.circle_action(0.7, phis)
    for i, phi in enumerate(phis):
        w, p = G.circle_action(0.7, float(phi))
        assert omega[i] == w and new[i] == p
