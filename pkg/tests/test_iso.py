import cmath
import math

import numpy as np
import pytest

from so21 import group as G
from so21 import iso
from so21 import rep
from so21.errors import (
    AmbiguousClass,
    LabelOrbitMismatch,
    OutOfChart,
    OutOfOrbit,
    UnsupportedCase,
)
from so21.iso import IsoElement, LittleKind, OrbitClass as OC


def close(a, b, tol=1e-12):
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol


def random_element(rng, alpha_max=1.5):
    return G.cartan_compose((rng.uniform(0, 2 * math.pi), rng.uniform(0, alpha_max), rng.uniform(0, 2 * math.pi)))


def sample_point(cls, rng):
    if cls is OC.MASSIVE_UPPER:
        return iso.chart(cls, (rng.uniform(0, 2), rng.uniform(0, 2 * math.pi)), scale=1.3)
    if cls is OC.TACHYONIC:
        return iso.chart(cls, (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)), scale=0.8)
    return iso.chart(cls, (rng.uniform(0.3, 3), rng.uniform(-2, 2)))


# ------------------------------------------------------------- semidirect product

def test_iso_multiply_examples():
    a1, a2 = np.array([1.0, 2.0, 3.0]), np.array([-0.5, 0.1, 4.0])
    t = iso.iso_multiply(IsoElement.translation(a1), IsoElement.translation(a2))
    assert close(t.a, a1 + a2) and close(t.r, np.eye(3))
    r = G.cartan_compose((0.3, 0.9, 2.0))
    conj = iso.iso_multiply(iso.iso_multiply(IsoElement.homogeneous(r), IsoElement.translation(a2)), IsoElement.homogeneous(G.inverse(r)))
    assert close(conj.a, r @ a2, 1e-12 * np.max(np.abs(r))) and close(conj.r, np.eye(3), 1e-12 * np.max(np.abs(r)) ** 2)


def test_iso_multiply_associative_and_restricts():
    rng = np.random.default_rng(40)
    for _ in range(20):
        gs = [IsoElement(rng.normal(size=3), random_element(rng)) for _ in range(3)]
        left = iso.iso_multiply(iso.iso_multiply(gs[0], gs[1]), gs[2])
        right = iso.iso_multiply(gs[0], iso.iso_multiply(gs[1], gs[2]))
        scale = max(np.max(np.abs(left.r)), 1.0) ** 2
        assert close(left.a, right.a, 1e-12 * scale * 10) and close(left.r, right.r, 1e-12 * scale)
        h = iso.iso_multiply(IsoElement.homogeneous(gs[0].r), IsoElement.homogeneous(gs[1].r))
        assert close(h.r, gs[0].r @ gs[1].r) and close(h.a, 0)
        e = iso.iso_multiply(gs[0], iso.iso_inverse(gs[0]))
        assert close(e.a, 0, 1e-11 * scale) and close(e.r, np.eye(3), 1e-12 * scale)


def test_character_properties():
    rng = np.random.default_rng(41)
    for _ in range(20):
        p, a1, a2 = rng.normal(size=3), rng.normal(size=3), rng.normal(size=3)
        assert iso.character(p, np.zeros(3)) == 1
        assert abs(abs(iso.character(p, a1)) - 1) <= 1e-15
        assert abs(iso.character(p, a1) * iso.character(p, a2) - iso.character(p, a1 + a2)) <= 1e-12
        r = random_element(rng)
        assert abs(iso.character(p, r @ a1) - iso.character(G.inverse(r) @ p, a1)) <= 1e-12 * np.max(np.abs(r)) ** 2


def test_momentum_caches_norm():
    m = iso.Momentum.of([2.0, 1.0, 0.5])
    assert m.msq == 4 - 1 - 0.25


# ------------------------------------------------------------- orbits

@pytest.mark.parametrize(
    "p, cls",
    [
        ([2, 0, 0], OC.MASSIVE_UPPER),
        ([-2, 0.5, 0], OC.MASSIVE_LOWER),
        ([0, 0, 1.5], OC.TACHYONIC),
        ([0.5, 0, 0.5], OC.LIGHTLIKE_UPPER),
        ([0, 0, 0], OC.ORIGIN),
    ],
)
def test_orbit_classify_examples(p, cls):
    assert iso.orbit_classify(p) is cls


def test_lower_light_cone_is_ambiguous():
    with pytest.raises(AmbiguousClass):
        iso.orbit_classify([-1.0, 0.6, 0.8])


def test_orbit_classification_is_invariant():
    rng = np.random.default_rng(42)
    for cls in (OC.MASSIVE_UPPER, OC.TACHYONIC, OC.LIGHTLIKE_UPPER):
        for _ in range(50):
            p = sample_point(cls, rng)
            r = random_element(rng, 1.0)
            q = G.act(r, p)
            assert iso.orbit_classify(q, tol=1e-9 * (1 + q @ q)) is cls


# ------------------------------------------------------------- charts and sections

def test_chart_base_points():
    assert iso.chart_inverse(OC.MASSIVE_UPPER, [1.3, 0, 0]) == (0.0, 0.0)
    assert iso.chart_inverse(OC.TACHYONIC, [0, 0, 0.8]) == (0.0, 0.0)
    assert iso.chart_inverse(OC.LIGHTLIKE_UPPER, [0.5, 0, 0.5]) == (1.0, 0.0)


def test_chart_round_trips():
    rng = np.random.default_rng(43)
    for cls in (OC.MASSIVE_UPPER, OC.TACHYONIC, OC.LIGHTLIKE_UPPER):
        for _ in range(100):
            p = sample_point(cls, rng)
            coords = iso.chart_inverse(cls, p)
            assert close(iso.chart(cls, coords, iso.orbit_scale(p)), p, 1e-10 * max(1, np.max(np.abs(p))))
    for _ in range(20):
        k = iso.chart(OC.LIGHTLIKE_UPPER, (rng.uniform(0.1, 4), rng.uniform(-3, 3)))
        assert abs(G.minkowski(k, k)) <= 1e-12 * max(1.0, k @ k)


def test_chart_domain_errors():
    with pytest.raises(OutOfChart):
        iso.chart(OC.LIGHTLIKE_UPPER, (0.0, 1.0))
    with pytest.raises(OutOfChart):
        iso.chart_inverse(OC.LIGHTLIKE_UPPER, [0.5, 0.0, -0.5])
    with pytest.raises(OutOfChart):
        iso.chart_inverse(OC.TACHYONIC, [0.0, 0.0, -1.0])


def test_wigner_operator_examples():
    assert close(iso.wigner_operator([1.7, 0, 0]), np.eye(3))
    m = 1.7
    p = m * np.array([math.cosh(1), math.sinh(1) * math.sin(0.7), math.sinh(1) * math.cos(0.7)])
    h = iso.wigner_operator(p)
    assert close(h, G.rotation(0.7) @ G.boost02(1.0), 1e-12)
    assert close(G.act(h, [m, 0, 0]), p, 1e-12)
    p = np.array([2.5, 2.0, -1.5])
    h = iso.wigner_operator(p)
    assert close(h, G.horo_b(2.0) @ G.boost02(0.0), 1e-12)
    assert close(G.act(h, [0.5, 0, 0.5]), p, 1e-12)


def test_wigner_operator_transports_base_point():
    rng = np.random.default_rng(44)
    for cls in (OC.MASSIVE_UPPER, OC.TACHYONIC, OC.LIGHTLIKE_UPPER):
        for _ in range(200):
            p = G.act(random_element(rng, 1.0), sample_point(cls, rng))
            if cls is OC.LIGHTLIKE_UPPER and p[0] + p[2] < 1e-3:
                continue
            h = iso.wigner_operator(p)
            base = iso.base_point(cls, iso.orbit_scale(p))
            assert close(G.act(h, base), p, 1e-10 * max(1.0, np.max(np.abs(p))))


def test_wigner_operator_refuses_origin_and_lower_sheet():
    with pytest.raises(OutOfOrbit):
        iso.wigner_operator([0, 0, 0])
    with pytest.raises(OutOfOrbit):
        iso.wigner_operator([-2, 0, 0])


# ------------------------------------------------------------- Wigner rotations

@pytest.mark.parametrize("cls, kind", [(OC.MASSIVE_UPPER, LittleKind.ROTATION), (OC.TACHYONIC, LittleKind.BOOST01), (OC.LIGHTLIKE_UPPER, LittleKind.HORO_Z)])
def test_wigner_rotation_trivial_cases(cls, kind):
    rng = np.random.default_rng(45)
    p = sample_point(cls, rng)
    w = iso.wigner_rotation(p, np.eye(3))
    assert w.kind is kind and abs(w.parameter) <= 1e-12 and close(w.g, np.eye(3), 1e-12 * np.max(np.abs(p)) ** 2)
    base = iso.base_point(cls, 1.0)
    stab = iso._FAMILY[kind](0.6)
    w = iso.wigner_rotation(base, stab)
    assert abs(w.parameter - 0.6) <= 1e-12 and close(w.g, stab)


def test_wigner_rotation_fixes_base_and_matches_family():
    rng = np.random.default_rng(46)
    for cls in (OC.MASSIVE_UPPER, OC.TACHYONIC, OC.LIGHTLIKE_UPPER):
        for _ in range(100):
            p = sample_point(cls, rng)
            r = random_element(rng, 0.8)
            if cls is OC.LIGHTLIKE_UPPER and (G.inverse(r) @ p)[[0, 2]].sum() < 0.2:
                continue
            w = iso.wigner_rotation(p, r)
            base = iso.base_point(cls, iso.orbit_scale(p))
            assert close(w.g @ base, base, 1e-10 * max(1.0, np.max(np.abs(w.g))))
            assert close(w.matrix(), w.g, 1e-10 * max(1.0, np.max(np.abs(w.g))))


def test_wigner_rotation_cocycle():
    rng = np.random.default_rng(47)
    for cls in (OC.MASSIVE_UPPER, OC.TACHYONIC, OC.LIGHTLIKE_UPPER):
        done = 0
        while done < 100:
            p = sample_point(cls, rng)
            r1, r2 = random_element(rng, 0.6), random_element(rng, 0.6)
            q1 = G.inverse(r1) @ p
            q2 = G.inverse(r2) @ q1
            if cls is OC.LIGHTLIKE_UPPER and min(q1[0] + q1[2], q2[0] + q2[2]) < 0.2:
                continue
            lhs = iso.wigner_rotation(p, r1 @ r2).g
            rhs = iso.wigner_rotation(p, r1).g @ iso.wigner_rotation(q1, r2).g
            assert close(lhs, rhs, 1e-10 * max(1.0, np.max(np.abs(lhs))))
            done += 1


# ------------------------------------------------------------- induced representations

def test_induced_action_translation():
    p = np.array([1.3, 0.2, -0.4])
    label = iso.MassSpin(math.sqrt(G.minkowski(p, p)), 2)
    a = np.array([0.3, -1.0, 2.0])
    mult, p_new = iso.induced_action(label, IsoElement.translation(a), p)
    assert abs(mult - cmath.exp(-1j * G.minkowski(p, a))) <= 1e-13
    assert close(p_new, p)


def test_induced_action_rotation_at_rest():
    label = iso.MassSpin(2.0, 3)
    mult, p_new = iso.induced_action(label, IsoElement.homogeneous(G.rotation(0.9)), [2.0, 0, 0])
    assert abs(mult - cmath.exp(3j * 0.9)) <= 1e-13
    assert close(p_new, [2.0, 0, 0])


def test_induced_action_composition_and_unitarity():
    rng = np.random.default_rng(48)
    labels = {
        OC.MASSIVE_UPPER: lambda p: iso.MassSpin(iso.orbit_scale(p), 2),
        OC.TACHYONIC: lambda p: iso.TachyonicSpin(iso.orbit_scale(p), 0.7),
        OC.LIGHTLIKE_UPPER: lambda p: iso.Helicity(1.3),
    }
    for cls, make in labels.items():
        done = 0
        while done < 50:
            p = sample_point(cls, rng)
            g1 = IsoElement(rng.normal(size=3), random_element(rng, 0.6))
            g2 = IsoElement(rng.normal(size=3), random_element(rng, 0.6))
            q1 = G.inverse(g1.r) @ p
            q2 = G.inverse(g2.r) @ q1
            if cls is OC.LIGHTLIKE_UPPER and min(q1[0] + q1[2], q2[0] + q2[2]) < 0.2:
                continue
            label = make(p)
            m1, p1 = iso.induced_action(label, g1, p)
            m2, p2 = iso.induced_action(label, g2, p1)
            m12, p12 = iso.induced_action(label, iso.iso_multiply(g1, g2), p)
            assert abs(m1 * m2 - m12) <= 1e-10
            assert close(p2, p12, 1e-10 * max(1.0, np.max(np.abs(p12))))
            assert abs(abs(m12) - 1) <= 1e-12
            done += 1


def test_label_orbit_mismatch():
    with pytest.raises(LabelOrbitMismatch):
        iso.induced_action(iso.Helicity(1.0), IsoElement.translation([0, 0, 0]), [2.0, 0, 0])
    with pytest.raises(LabelOrbitMismatch):
        iso.induced_action(iso.MassSpin(1.0, 0), IsoElement.translation([0, 0, 0]), [2.0, 0, 0])


def test_origin_orbit_delegates_to_homogeneous_group():
    g = IsoElement([1.0, 2.0, 3.0], G.cartan_compose((0.2, 0.7, 1.9)))
    sigma = complex(-0.5, 0.8)
    assert iso.origin_matrix_element(iso.BoundaryRep(sigma), g, 2, -1) == rep.matrix_element(sigma, 2, -1, g.r)
    with pytest.raises(UnsupportedCase):
        iso.induced_action(iso.BoundaryRep(sigma), g, [0, 0, 0])


# ------------------------------------------------------------- measures

def test_measure_density_examples():
    assert iso.measure_density(OC.MASSIVE_UPPER, (0.0, 1.0)) == 0
    assert abs(iso.measure_density(OC.TACHYONIC, (1.0, 0.3)) - 0.5 * math.sinh(1)) <= 1e-15
    assert iso.measure_density(OC.LIGHTLIKE_UPPER, (1.0, 0.0)) == 1
    with pytest.raises(UnsupportedCase):
        iso.measure_density(OC.ORIGIN, (0, 0))


def test_invariant_density_is_lorentz_invariant():
    # dp1 dp2 / (2 p0) is the invariant measure on a mass shell: the Jacobian
    # of a boost on (p1, p2) equals p0'/p0
    rng = np.random.default_rng(49)
    msq = 1.7
    r = G.boost02(0.6) @ G.rotation(0.4)
    for _ in range(10):
        p1, p2 = rng.normal(size=2)
        p0 = math.sqrt(msq + p1 * p1 + p2 * p2)

        def image(x, y):
            v = r @ np.array([math.sqrt(msq + x * x + y * y), x, y])
            return v[1:]

        h = 1e-6
        jac = np.column_stack([(image(p1 + h, p2) - image(p1 - h, p2)) / (2 * h), (image(p1, p2 + h) - image(p1, p2 - h)) / (2 * h)])
        q1, q2 = image(p1, p2)
        lhs = iso.invariant_density(msq, q1, q2) * abs(np.linalg.det(jac))
        assert abs(lhs - iso.invariant_density(msq, p1, p2)) <= 1e-8
        assert abs(iso.invariant_density(msq, p1, p2) - 1 / (2 * p0)) <= 1e-15
