"""Named example maps and random generators used by tests and the CLI."""

from __future__ import annotations

import numpy as np

from .geometry import DiskAutomorphism
from .selfmaps import (
    SelfMap,
    blaschke,
    compose,
    evaluate,
    from_transform,
    identity,
    mobius,
    polynomial,
)


def wolff_example() -> SelfMap:
    """``((z - 2/3) / (1 - 2z/3))^3``: four boundary fixed points, DW point -1."""
    return blaschke([(2 / 3, 3)])


def cube() -> SelfMap:
    return polynomial([0, 0, 0, 1])


def burns_krantz_cubic() -> SelfMap:
    """``z - (z - 1)^3 / 4``, tangent to the identity to second order at 1."""
    return polynomial([0.25, 0.25, 0.75, -0.25])


def hyperbolic_automorphism(c=0.5) -> SelfMap:
    """``(z + c) / (1 + c z)``, fixing both 1 and -1."""
    return mobius(1, c, c, 1)


def unkelbach_example(c=0.5) -> SelfMap:
    """``z (z + c) / (1 + c z)``, the equality case of the two-point bound."""
    return blaschke([0, -c])


def rotation(turns=0.25) -> SelfMap:
    return polynomial([0, np.exp(2j * np.pi * turns)])


def normalized_blaschke(zeros, fix=1.0) -> SelfMap:
    """Blaschke product with the given zeros, rotated so that ``B(fix) = fix``."""
    raw = blaschke(zeros)
    turns = np.angle(complex(fix) / complex(evaluate(raw, fix))) / (2 * np.pi)
    return blaschke(zeros, turns)


def horocycle_point(level, angle, contact=1.0):
    """Point on the horocycle ``{(1-|z|^2)/|1 - conj(contact) z|^2 = level}``."""
    r = 1 / (1 + level)
    return complex(contact) * (1 - r + r * np.exp(1j * angle))


def random_blaschke(rng, degree, through_origin=False, fixing_one=False, rmax=0.9) -> SelfMap:
    n = degree - 1 if through_origin else degree
    zeros = list(rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n)))
    if through_origin:
        zeros.insert(0, 0j)
    if fixing_one:
        return normalized_blaschke(zeros, 1.0)
    return blaschke(zeros, float(rng.random()))


def random_parabolic(rng, degree) -> SelfMap:
    """Blaschke product fixing 1 with angular derivative exactly 1 there.

    The multiplier at 1 is the sum of the horocycle levels of the zeros, so
    levels drawn from a Dirichlet distribution give multiplier 1.
    """
    levels = rng.dirichlet(np.ones(degree))
    angles = rng.uniform(-2.8, 2.8, degree)
    zeros = [horocycle_point(lv, a) for lv, a in zip(levels, angles)]
    return normalized_blaschke(zeros, 1.0)


def battery() -> dict:
    """Validated disk self-maps spanning the elliptic, hyperbolic and parabolic cases."""
    return {
        "wolff-example": wolff_example(),
        "cube": cube(),
        "hyperbolic-automorphism": hyperbolic_automorphism(),
        "unkelbach-example": unkelbach_example(),
        "burns-krantz-cubic": burns_krantz_cubic(),
        "parabolic-blaschke": random_parabolic(np.random.default_rng(7), 2),
        "swap-half": from_transform(DiskAutomorphism(0.5).as_mobius()),
        "rotation": rotation(),
        "half-shift": mobius(1, 1, 0, 2),
        "z-over-2-minus-z": mobius(1, 0, -1, 2),
        "average": polynomial([0, 0.5, 0.5]),
        "square-of-automorphism": compose(polynomial([0, 0, 1]), hyperbolic_automorphism()),
        "blaschke-3": blaschke([0.3 + 0.4j, -0.6 + 0.1j, 0.2 - 0.7j], 0.13),
        "identity": identity(),
    }
