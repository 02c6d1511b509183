import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from juliawolff.catalog import burns_krantz_cubic, cube, random_blaschke, wolff_example
from juliawolff.errors import ModelMismatchError, PoleError, SpecError
from juliawolff.geometry import DiskAutomorphism
from juliawolff.selfmaps import (
    DISK,
    UHP,
    SelfMap,
    blaschke,
    canonical_cayley,
    compose,
    conjugate_to_disk,
    conjugate_to_halfplane,
    derivative,
    evaluate,
    from_transform,
    identity,
    is_disk_automorphism,
    is_identity,
    loads_spec,
    mobius,
    polynomial,
    rescale,
    spec_from_dict,
    spec_to_dict,
    validate_selfmap,
)

from conftest import disk_points, uhp_points

CANONICAL = '{"model":"disk","type":"blaschke","rotation_turns":0.0,"zeros":[{"re":0.6666666666666666,"im":0.0,"multiplicity":3}]}'

# sympy oracle: f - z = (z - 1)(z + 1)(8z^2 - 9z + 8) / (3 - 2z)^3, and f' at the roots
WOLFF_FIXED = {
    -1: 3 / 5,
    1: 15.0,
    complex(9, 5 * math.sqrt(7)) / 16: 12 / 5,
    complex(9, -5 * math.sqrt(7)) / 16: 12 / 5,
}


def sample_maps():
    rng = np.random.default_rng(3)
    return [
        wolff_example(),
        cube(),
        burns_krantz_cubic(),
        mobius(1, 0.5, 0.5, 1),
        blaschke([0, (0.3 - 0.2j, 2)], 0.1),
        random_blaschke(rng, 4),
        compose(polynomial([0, 0, 1]), mobius(1, 0.5, 0.5, 1)),
        polynomial([0, 0.5, 0.5]),
    ]


# --------------------------------------------------------------------------
# evaluation and derivatives


def test_wolff_example_fixes_its_boundary_points():
    f = wolff_example()
    for alpha in WOLFF_FIXED:
        assert abs(f(alpha) - alpha) <= 1e-14


def test_wolff_example_derivatives():
    f = wolff_example()
    for alpha, value in WOLFF_FIXED.items():
        assert abs(f.derivative(alpha) - value) <= 1e-10


def test_wolff_example_derivatives_against_sympy():
    sp = pytest.importorskip("sympy")
    z = sp.symbols("z")
    expr = ((z - sp.Rational(2, 3)) / (1 - sp.Rational(2, 3) * z)) ** 3
    df = sp.lambdify(z, sp.diff(expr, z), "numpy")
    pts = np.array([0.1 + 0.2j, -0.7j, 0.5, -0.3 + 0.6j])
    assert np.allclose(wolff_example().derivative(pts), df(pts), rtol=1e-13, atol=1e-13)


def test_identity_and_power_values(rng):
    z = 0.9 * rng.random(20) * np.exp(2j * np.pi * rng.random(20))
    assert np.array_equal(identity()(z), z)
    assert np.all(identity().derivative(z) == 1)
    assert abs(cube()(0.5j) - (-0.125j)) <= 1e-16


def test_scalar_path_matches_vector_path(rng):
    z = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    for f in sample_maps():
        vec, dvec = f(z), f.derivative(z)
        assert np.allclose([f.at(complex(w)) for w in z], vec, rtol=1e-13, atol=1e-15)
        assert np.allclose([f.slope_at(complex(w)) for w in z], dvec, rtol=1e-12, atol=1e-14)


def test_derivative_at_blaschke_zero_uses_product_rule():
    f = blaschke([(0.2, 1), (0.5j, 2)])
    h = 1e-5
    numeric = (f(0.2 + h) - f(0.2 - h)) / (2 * h)
    assert np.isfinite(f.derivative(0.2))
    assert abs(f.derivative(0.2) - numeric) <= 1e-7
    # double zero: derivative vanishes
    assert abs(f.derivative(0.5j)) <= 1e-15


@pytest.mark.parametrize("k", range(8))
def test_derivative_matches_central_difference(k, rng):
    f = sample_maps()[k]
    z = 0.9 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    h = 1e-5
    numeric = (f(z + h) - f(z - h)) / (2 * h)
    analytic = f.derivative(z)
    assert np.max(np.abs(analytic - numeric) / np.maximum(1.0, np.abs(analytic))) <= 1e-6


def test_uhp_derivative_matches_central_difference(rng):
    g = conjugate_to_halfplane(wolff_example())
    z = rng.uniform(-2, 2, 100) + 1j * rng.uniform(0.2, 2, 100)
    h = 1e-5
    numeric = (g(z + h) - g(z - h)) / (2 * h)
    analytic = g.derivative(z)
    assert np.max(np.abs(analytic - numeric) / np.maximum(1.0, np.abs(analytic))) <= 1e-6


def test_pole_error():
    f = mobius(1, 0, 1, -2)
    with pytest.raises(PoleError):
        evaluate(f, 2)
    with pytest.raises(PoleError):
        derivative(f, 2)
    with pytest.raises(PoleError):
        blaschke([0.5])(2)


@given(st.lists(disk_points(0.9), min_size=1, max_size=4), st.floats(0, 1))
def test_blaschke_boundary_modulus(zeros, turns):
    f = blaschke(zeros, turns)
    z = np.exp(2j * np.pi * np.arange(256) / 256)
    assert np.max(np.abs(np.abs(f(z)) - 1)) <= 1e-12


# --------------------------------------------------------------------------
# composition


def test_compose_involution_is_identity(rng):
    phi = from_transform(DiskAutomorphism(0.3 + 0.4j).as_mobius())
    z = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    assert np.max(np.abs(compose(phi, phi)(z) - z)) <= 1e-12


def test_compose_reproduces_wolff_example(rng):
    factor = mobius(1, -2 / 3, -2 / 3, 1)
    f = compose(cube(), factor)
    z = 0.95 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    assert np.max(np.abs(f(z) - wolff_example()(z))) <= 1e-13


def test_compose_with_identity(rng):
    f = wolff_example()
    z = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    assert np.array_equal(compose(identity(), f)(z), f(z))


def test_compose_model_mismatch():
    with pytest.raises(ModelMismatchError):
        compose(identity(DISK), identity(UHP))


@given(disk_points(0.9))
def test_composition_associative(z):
    a, b, c = wolff_example(), mobius(1, 0.5, 0.5, 1), polynomial([0, 0.5, 0.5])
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert abs(left(z) - right(z)) <= 1e-12


def test_composition_chain_rule(rng):
    a, b = wolff_example(), mobius(1, 0.5j, -0.5j, 1)
    z = 0.9 * rng.random(20) * np.exp(2j * np.pi * rng.random(20))
    assert np.allclose(compose(a, b).derivative(z), a.derivative(b(z)) * b.derivative(z), rtol=1e-13)


# --------------------------------------------------------------------------
# half-plane conjugation


def test_canonical_cayley_normalization():
    c = canonical_cayley()
    assert abs(c(1j)) <= 1e-16
    assert c(0) == pytest.approx(-1)
    assert c.inverse().pole() == pytest.approx(1)


def test_conjugate_identity_is_identity(rng):
    g = conjugate_to_halfplane(identity())
    z = rng.uniform(-3, 3, 30) + 1j * rng.uniform(0.1, 3, 30)
    assert np.max(np.abs(g(z) - z)) <= 1e-12
    assert g.model == UHP


def test_conjugate_of_square_stays_in_halfplane(rng):
    g = conjugate_to_halfplane(polynomial([0, 0, 1]))
    z = rng.uniform(-3, 3, 100) + 1j * rng.uniform(0.01, 3, 100)
    assert np.all(g(z).imag > 0)


def test_conjugate_round_trip(rng):
    f = wolff_example()
    back = conjugate_to_disk(conjugate_to_halfplane(f))
    z = 0.9 * rng.random(50) * np.exp(2j * np.pi * rng.random(50))
    assert np.max(np.abs(back(z) - f(z))) <= 1e-12
    # the generic path through the Cayley maps agrees as well
    generic = conjugate_to_disk(conjugate_to_halfplane(f, -1), 1j)
    g = conjugate_to_halfplane(f, -1)
    c = canonical_cayley(1j)
    w = c.inverse()(z)
    assert np.max(np.abs(generic(z) - c(g(w)))) <= 1e-12


def test_conjugate_moves_dw_point_to_origin():
    g = conjugate_to_halfplane(wolff_example())
    assert abs(g(0j)) <= 1e-12
    assert g.derivative(0j).real == pytest.approx(3 / 5, abs=1e-12)


@given(uhp_points())
def test_conjugate_preserves_halfplane(z):
    g = conjugate_to_halfplane(wolff_example())
    assert g(z).imag > 0


# --------------------------------------------------------------------------
# validation


def test_validate_burns_krantz_cubic():
    rep = validate_selfmap(burns_krantz_cubic())
    assert rep.passed and rep.max_modulus <= 1 + 1e-9


def test_validate_rejects_doubling():
    rep = validate_selfmap(polynomial([0, 2]))
    assert not rep.passed
    assert rep.max_modulus == pytest.approx(2)
    assert rep.witness == pytest.approx(1)


def test_validate_cube_max_is_one():
    rep = validate_selfmap(cube())
    assert rep.passed and rep.max_modulus == pytest.approx(1, abs=1e-15)


def test_validate_structural_and_pole_cases():
    assert validate_selfmap(blaschke([0.5])).structural
    assert not validate_selfmap(mobius(1, 0, 1, -0.5)).passed
    assert validate_selfmap(mobius(1, 1, 0, 2)).passed
    assert not validate_selfmap(mobius(0, 1, -1, 1j, UHP)).passed


def test_validate_halfplane_maps():
    assert validate_selfmap(mobius(1, 1j, 0, 1, UHP)).passed  # z + i
    assert not validate_selfmap(mobius(-1, 0, 0, 1, UHP)).passed  # -z
    assert not validate_selfmap(polynomial([0, -1], UHP)).passed
    assert validate_selfmap(polynomial([1j, 2], UHP)).passed
    assert not validate_selfmap(polynomial([0, 0, 1], UHP)).passed
    assert validate_selfmap(conjugate_to_halfplane(wolff_example())).passed


@pytest.mark.parametrize("k", range(8))
def test_self_map_preservation(k, rng):
    f = sample_maps()[k]
    assert validate_selfmap(f).passed
    z = 0.999 * np.sqrt(rng.random(1000)) * np.exp(2j * np.pi * rng.random(1000))
    assert np.all(np.abs(f(z)) < 1)


def test_is_identity_and_automorphism():
    assert is_identity(identity())
    assert not is_identity(cube())
    assert is_disk_automorphism(mobius(1, 0.5, 0.5, 1))
    assert is_disk_automorphism(polynomial([0, 1j]))
    assert not is_disk_automorphism(cube())


def test_rescale_fixes_one():
    f = cube()
    alpha = np.exp(0.7j)
    F = rescale(f, alpha)
    assert abs(F(1.0) - 1) <= 1e-14
    assert F.derivative(1.0) == pytest.approx(alpha * f.derivative(alpha) / f(alpha))


# --------------------------------------------------------------------------
# serialization


def test_canonical_spec_round_trip():
    spec = loads_spec(CANONICAL)
    assert json.dumps(spec_to_dict(spec), separators=(",", ":")) == CANONICAL
    assert SelfMap(spec) == wolff_example()


@pytest.mark.parametrize("k", range(8))
def test_spec_round_trip(k):
    f = sample_maps()[k]
    again = SelfMap.from_dict(json.loads(json.dumps(f.to_dict())))
    assert again == f


def test_halfplane_spec_round_trip():
    g = conjugate_to_halfplane(wolff_example(), 1j)
    assert SelfMap.from_dict(g.to_dict()) == g


@pytest.mark.parametrize(
    "obj, path",
    [
        ({"type": "blaschke", "zeros": [{"re": 1.5, "im": 0}]}, "zeros[0]"),
        ({"type": "blaschke", "zeros": [{"re": 0.2, "im": 0, "multiplicity": 0}]}, "zeros[0].multiplicity"),
        ({"type": "mobius", "a": 1, "b": 0, "c": 0}, "d"),
        ({"type": "mobius", "a": 1, "b": 2, "c": 2, "d": 4}, ""),
        ({"type": "polynomial", "coefficients": [0, {"re": "x"}]}, "coefficients[1]"),
        ({"type": "composition", "inner": {"type": "polynomial", "coefficients": [0, 1]},
          "outer": {"type": "nope"}}, "outer.type"),
        ({"type": "composition", "inner": {"type": "polynomial", "coefficients": [0, 1]},
          "outer": {"type": "polynomial", "coefficients": [0, 1], "model": "upper_half_plane"}}, ""),
        ({"type": "polynomial", "coefficients": [0, 1], "model": "sphere"}, "model"),
        ([1, 2], ""),
    ],
)
def test_spec_errors_name_the_field(obj, path):
    with pytest.raises(SpecError) as info:
        spec_from_dict(obj)
    assert info.value.path == path


def test_malformed_json_reports_line():
    with pytest.raises(SpecError) as info:
        loads_spec('{\n "type": "blaschke",\n "zeros": [\n}')
    assert info.value.path.startswith("line 4")


def test_selfmap_is_immutable():
    f = cube()
    with pytest.raises(AttributeError):
        f.at = None
