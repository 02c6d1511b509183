import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from juliawolff.errors import DomainError, PoleError
from juliawolff.geometry import (
    CayleyMap,
    DiskAutomorphism,
    EuclideanCircle,
    Horocycle,
    MobiusTransform,
    NonEuclideanCircle,
    cayley_eval,
    cayley_inverse_eval,
    circle_through,
    disk_automorphism_eval,
    horocycle_level,
    horocycle_to_euclidean,
    hyperbolic_distance,
    noneuclidean_circle_to_euclidean,
    pseudo_distance,
    swap_points,
)

from conftest import closed_disk_points, disk_points, uhp_points, unit_points


def random_disk(rng, n, rmax=0.99):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


# --------------------------------------------------------------------------
# disk automorphism


def test_automorphism_swaps_center_and_origin():
    phi = DiskAutomorphism(0.5)
    assert disk_automorphism_eval(phi, 0) == pytest.approx(0.5)
    assert abs(disk_automorphism_eval(phi, 0.5)) == 0


def test_automorphism_modulus_identity_at_hand_point():
    zeta, z = 0.5, 0.3j
    w = disk_automorphism_eval(DiskAutomorphism(zeta), z)
    rhs = 1 - (1 - 0.25) * (1 - 0.09) / abs(1 - 0.15j) ** 2
    assert abs(abs(w) ** 2 - rhs) <= 1e-14


def test_automorphism_rejects_points_outside_disk():
    with pytest.raises(DomainError):
        disk_automorphism_eval(DiskAutomorphism(0.5), 1.1)
    with pytest.raises(DomainError):
        DiskAutomorphism(1.0)
    with pytest.raises(DomainError):
        DiskAutomorphism(complex("nan"))


def test_automorphism_boundary_to_boundary(rng):
    phi = DiskAutomorphism(0.3 - 0.6j)
    z = np.exp(2j * np.pi * rng.random(100))
    assert np.max(np.abs(np.abs(phi(z)) - 1)) <= 1e-14


@given(disk_points(0.99), closed_disk_points())
def test_automorphism_is_involution(zeta, z):
    phi = DiskAutomorphism(zeta)
    assert abs(phi(phi(z)) - z) <= 1e-12


def test_modulus_identity_on_random_grid(rng):
    zeta = random_disk(rng, 10_000)
    z = random_disk(rng, 10_000)
    w = (zeta - z) / (1 - np.conj(zeta) * z)
    lhs = np.abs(w) ** 2 + (1 - np.abs(zeta) ** 2) * (1 - np.abs(z) ** 2) / np.abs(1 - np.conj(zeta) * z) ** 2
    assert np.max(np.abs(lhs - 1)) <= 1e-13


# --------------------------------------------------------------------------
# Mobius transforms and swaps


def test_mobius_rejects_degenerate():
    with pytest.raises(DomainError):
        MobiusTransform(1, 2, 2, 4)


def test_mobius_pole_error():
    with pytest.raises(PoleError):
        MobiusTransform(1, 0, 1, -0.5)(0.5)


def test_mobius_compose_and_inverse(rng):
    m = MobiusTransform(1 + 1j, 0.3, -0.2j, 2)
    n = MobiusTransform(0.5, 1, 1, 3)
    z = random_disk(rng, 50, 0.5)
    assert np.allclose(m.compose(n)(z), m(n(z)), atol=1e-13)
    assert m.compose(m.inverse()).isclose(MobiusTransform.identity())


def test_swap_with_origin_is_basic_automorphism():
    assert swap_points(0, 0.5).isclose(DiskAutomorphism(0.5).as_mobius())


def test_swap_general_pair():
    t = swap_points(0.2, -0.4)
    assert abs(t(0.2) - (-0.4)) <= 1e-13
    assert abs(t(-0.4) - 0.2) <= 1e-13


def test_swap_degenerate_fixes_point():
    assert abs(swap_points(0.3, 0.3)(0.3) - 0.3) <= 1e-13


def test_swap_rejects_outside():
    with pytest.raises(DomainError):
        swap_points(1.0, 0)


@given(disk_points(0.95), disk_points(0.95), disk_points(0.95))
def test_swap_round_trip(eta, zeta, z):
    t = swap_points(eta, zeta)
    assert abs(t(eta) - zeta) <= 1e-12
    assert abs(t(zeta) - eta) <= 1e-12
    assert abs(t(t(z)) - z) <= 1e-12
    assert t.is_disk_automorphism(tol=1e-10)


# --------------------------------------------------------------------------
# Cayley maps


def test_cayley_hand_values():
    c = CayleyMap(1j)
    assert abs(cayley_eval(c, 1j)) == 0
    assert cayley_eval(c, 0) == pytest.approx(-1)
    assert cayley_inverse_eval(c, 0) == pytest.approx(1j)
    assert abs(cayley_inverse_eval(c, -1)) <= 1e-15


def test_cayley_modulus_identity_at_hand_point():
    # base 1+2i, z = 3+i: |z - conj(base)|^2 = 13 and |z - base|^2 = 5
    base, z = 1 + 2j, 3 + 1j
    w = cayley_eval(CayleyMap(base), z)
    assert abs(abs(w) ** 2 - 5 / 13) <= 1e-14
    assert abs(abs(w) ** 2 - (1 - 4 * 1 * 2 / 13)) <= 1e-14


def test_cayley_identity_needs_factor_four():
    # the factor 2 variant of the identity is off by 4/13 at the same point
    base, z = 1 + 2j, 3 + 1j
    w = cayley_eval(CayleyMap(base), z)
    assert abs(abs(w) ** 2 - (1 - 2 * 1 * 2 / 13)) == pytest.approx(4 / 13)


def test_cayley_modulus_identity_on_random_grid(rng):
    n = 10_000
    base = rng.uniform(-3, 3, n) + 1j * rng.uniform(0.01, 3, n)
    z = rng.uniform(-3, 3, n) + 1j * rng.uniform(0.01, 3, n)
    w = (z - base) / (z - np.conj(base))
    lhs = np.abs(w) ** 2 + 4 * z.imag * base.imag / np.abs(z - np.conj(base)) ** 2
    assert np.max(np.abs(lhs - 1)) <= 1e-13


def test_cayley_inverse_imaginary_part():
    base, w = 1 + 2j, 0.3 + 0.1j
    z = cayley_inverse_eval(CayleyMap(base), w)
    assert z.imag == pytest.approx(2 * (1 - abs(w) ** 2) / abs(1 - w) ** 2, abs=1e-14)


def test_cayley_errors():
    with pytest.raises(DomainError):
        CayleyMap(1.0)
    with pytest.raises(PoleError):
        cayley_eval(CayleyMap(1j), -1j)
    with pytest.raises(DomainError):
        cayley_eval(CayleyMap(1j), 0.5 - 0.5j)
    with pytest.raises(PoleError):
        cayley_inverse_eval(CayleyMap(1j), 1)


def test_cayley_derivative_normalization():
    base = 0.7 + 1.3j
    h = 1e-6
    c = CayleyMap(base)
    numeric = (c(base + h) - c(base - h)) / (2 * h)
    assert abs(numeric - 1 / (2j * base.imag)) <= 1e-8


@given(uhp_points(), disk_points(0.99))
def test_cayley_round_trips(base, w):
    c = CayleyMap(base)
    z = c.inverse(w)
    assert z.imag > 0
    assert abs(c(z) - w) <= 1e-12


# --------------------------------------------------------------------------
# distances


def test_pseudo_distance_hand_values():
    assert pseudo_distance(0.7j, 0.7j) == 0
    assert pseudo_distance(0, 0.5) == pytest.approx(0.5)
    assert pseudo_distance(0.3, -0.4) == pytest.approx(0.625, abs=1e-15)


def test_hyperbolic_distance_hand_values():
    assert hyperbolic_distance(0.2j, 0.2j) == 0
    assert hyperbolic_distance(0, 0.5) == pytest.approx(0.5493061443340549, abs=1e-15)


def test_distance_domain():
    with pytest.raises(DomainError):
        pseudo_distance(1.0, 0)


@given(disk_points(0.95), disk_points(0.95))
def test_pseudo_distance_symmetric(z, zeta):
    assert pseudo_distance(z, zeta) == pytest.approx(pseudo_distance(zeta, z), abs=1e-15)
    assert 0 <= pseudo_distance(z, zeta) < 1


@given(disk_points(0.9), disk_points(0.9), disk_points(0.9))
def test_hyperbolic_triangle_inequality(a, b, c):
    assert hyperbolic_distance(a, c) <= hyperbolic_distance(a, b) + hyperbolic_distance(b, c) + 1e-12


@given(disk_points(0.9), disk_points(0.9), disk_points(0.9), disk_points(0.9))
def test_hyperbolic_distance_invariance(w, z, zeta, eta):
    phi = DiskAutomorphism(w)
    d = hyperbolic_distance(z, zeta)
    assert abs(hyperbolic_distance(phi(z), phi(zeta)) - d) <= 1e-12 * max(1.0, d)
    t = swap_points(eta, w)
    assert abs(hyperbolic_distance(t(z), t(zeta)) - d) <= 1e-12 * max(1.0, d)


# --------------------------------------------------------------------------
# circle families


def closed_form_noneuclidean(zeta, rho):
    # the locus |phi_zeta(z)| = rho written out as a Euclidean circle
    den = 1 - rho**2 * abs(zeta) ** 2
    return zeta * (1 - rho**2) / den, rho * (1 - abs(zeta) ** 2) / den


def test_circle_through_rejects_collinear():
    with pytest.raises(DomainError):
        circle_through(0, 1, 2)


def test_centered_noneuclidean_circle():
    c = noneuclidean_circle_to_euclidean(NonEuclideanCircle(0, 0.5))
    assert abs(c.center) <= 1e-15
    assert c.radius == pytest.approx(0.5, abs=1e-15)


def test_noneuclidean_circle_matches_closed_form():
    c = noneuclidean_circle_to_euclidean(NonEuclideanCircle(0.5, 0.5))
    center, radius = closed_form_noneuclidean(0.5, 0.5)
    assert abs(c.center - center) <= 1e-14
    assert c.radius == pytest.approx(radius, abs=1e-14)
    pts = c.points(64)
    assert np.max(np.abs(pseudo_distance(pts, 0.5) - 0.5)) <= 1e-12


def test_fig1_circles_match_figure_coordinates():
    # figure units: unit circle radius 3, centers on the ray at 30 degrees
    zeta = 0.75 * cmath.exp(1j * math.pi / 6)
    expected = {0.25: (2.186, 0.34), 0.5: (1.9636, 0.7636), 0.75: (1.44, 1.44), 0.875: (0.92624, 2.017)}
    for rho, (dist, rad) in expected.items():
        c = noneuclidean_circle_to_euclidean(NonEuclideanCircle(zeta, rho))
        assert abs(c.center - dist / 3 * cmath.exp(1j * math.pi / 6)) <= 2e-3
        assert c.radius == pytest.approx(rad / 3, abs=2e-3)
        assert abs(c.center) + c.radius < 1


def test_noneuclidean_circle_validation():
    with pytest.raises(DomainError):
        NonEuclideanCircle(0.2, 1.0)
    with pytest.raises(DomainError):
        NonEuclideanCircle(1.2, 0.5)


@given(disk_points(0.95), st.floats(0.01, 0.99))
def test_noneuclidean_realization_consistency(zeta, rho):
    c = noneuclidean_circle_to_euclidean(NonEuclideanCircle(zeta, rho))
    pts = c.points(64)
    assert np.max(np.abs(np.abs((zeta - pts) / (1 - np.conj(zeta) * pts)) - rho)) <= 1e-12
    assert abs(c.center) + c.radius < 1


def test_horocycle_level_hand_values():
    assert horocycle_level(1, 0) == pytest.approx(1)
    assert horocycle_level(1, 0.5) == pytest.approx(3)
    assert horocycle_level(1, 0.5j) == pytest.approx(0.6)


def test_horocycle_level_rejects_interior_contact():
    with pytest.raises(DomainError):
        horocycle_level(0.9, 0)


def test_horocycle_of_radius_half():
    h = Horocycle(1, 1.0)
    c = horocycle_to_euclidean(h)
    assert abs(c.center - 0.5) <= 1e-14
    assert c.radius == pytest.approx(0.5, abs=1e-14)
    assert Horocycle.with_radius(1, 0.5).level == pytest.approx(1)


def test_horocycle_shrinks_as_level_grows():
    radii = [horocycle_to_euclidean(Horocycle(1, lam)).radius for lam in (1, 10, 100, 1e4)]
    assert all(a > b for a, b in zip(radii, radii[1:]))
    assert radii[-1] == pytest.approx(1 / (1 + 1e4), rel=1e-9)


def test_fig4_horocycles():
    alpha = cmath.exp(1j * math.pi / 6)
    for radius in (2 / 3, 1 / 2, 1 / 3, 1 / 6):
        c = horocycle_to_euclidean(Horocycle.with_radius(alpha, radius))
        assert c.radius == pytest.approx(radius, abs=1e-13)
        # internally tangent at alpha
        assert abs(c.center - (1 - radius) * alpha) <= 1e-13


@given(unit_points(), st.floats(0.01, 100.0))
def test_horocycle_realization_consistency(alpha, level):
    c = horocycle_to_euclidean(Horocycle(alpha, level))
    assert abs(abs(c.center) + c.radius - 1) <= 1e-12
    pts = c.points(64, phase=0.1)
    # near the contact point the level is a 0/0 quotient; sample the far half
    pts = pts[np.abs(pts - alpha) >= c.radius]
    assert np.max(np.abs(horocycle_level(alpha, pts) - level)) <= 1e-12 * max(1.0, level)


@given(unit_points(), disk_points(0.95))
def test_horocycle_through_point(alpha, z):
    h = Horocycle.through(alpha, z)
    c = horocycle_to_euclidean(h)
    assert abs(abs(z - c.center) - c.radius) <= 1e-12


def test_euclidean_circle_validation():
    with pytest.raises(DomainError):
        EuclideanCircle(0, 0)
