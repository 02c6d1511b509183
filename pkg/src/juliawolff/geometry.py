"""Conformal changes of variable on the disk and the upper half-plane.

Everything here is a pure function of immutable values.  Functions accept a
Python scalar or a numpy array of points and return the same shape; scalar
inputs give back a plain ``complex`` / ``float``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError

#: a point counts as lying on the unit circle when ``abs(abs(z) - 1)`` is below this
BOUNDARY_TOL = 1e-9


def as_complex(z, name="z"):
    """Coerce ``z`` to a complex ndarray, rejecting NaN/Inf."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return arr


def _out(arr):
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return arr.item()
    return arr


def _complex_to_dict(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def one_minus_abs2(z):
    """``1 - |z|**2`` computed as ``(1-|z|)(1+|z|)`` to keep accuracy near the circle."""
    r = np.abs(z)
    return (1.0 - r) * (1.0 + r)


def on_unit_circle(z, tol=BOUNDARY_TOL):
    return bool(abs(abs(complex(z)) - 1.0) <= tol)


def _require_closed_disk(z, name="z", tol=BOUNDARY_TOL):
    if np.any(np.abs(z) > 1.0 + tol):
        raise DomainError(f"{name} must lie in the closed unit disk")


def _require_open_disk(z, name="z"):
    if np.any(np.abs(z) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disk")


@dataclass(frozen=True)
class MobiusTransform:
    """``z -> (a z + b) / (c z + d)`` with ``ad - bc != 0``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for field in "abcd":
            value = complex(getattr(self, field))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise DomainError(f"coefficient {field} must be finite")
            object.__setattr__(self, field, value)
        if self.det == 0:
            raise DomainError("degenerate Mobius transform (ad - bc == 0)")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def pole(self):
        """The finite pole ``-d/c``, or None when ``c == 0``."""
        return None if self.c == 0 else -self.d / self.c

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        if np.any(den == 0):
            raise PoleError(f"Mobius transform evaluated at its pole {self.pole()}")
        return _out((self.a * z + self.b) / den)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        if np.any(den == 0):
            raise PoleError(f"Mobius transform differentiated at its pole {self.pole()}")
        return _out(self.det / den**2)

    def compose(self, inner: MobiusTransform) -> MobiusTransform:
        """``self o inner`` (apply ``inner`` first)."""
        return MobiusTransform(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
        )

    def inverse(self) -> MobiusTransform:
        return MobiusTransform(self.d, -self.b, -self.c, self.a)

    def isclose(self, other: MobiusTransform, tol=1e-12) -> bool:
        """Projective equality of the coefficient vectors."""
        u = np.array([self.a, self.b, self.c, self.d])
        v = np.array([other.a, other.b, other.c, other.d])
        # u ~ v iff the 2x2 minors u_i v_j - u_j v_i vanish
        scale = np.linalg.norm(u) * np.linalg.norm(v)
        minors = np.outer(u, v) - np.outer(v, u)
        return bool(np.max(np.abs(minors)) <= tol * scale)

    def is_disk_automorphism(self, tol=1e-12) -> bool:
        """True when the map sends the unit disk onto itself.

        A Mobius map preserving the circle sends the disk either onto itself
        or onto the exterior; the pole decides which.
        """
        pole = self.pole()
        if pole is not None and abs(pole) <= 1.0:
            return False
        probe = np.exp(2j * np.pi * (np.arange(7) + 0.5) / 7)
        return bool(np.all(np.abs(np.abs(self(probe)) - 1.0) <= tol))


@dataclass(frozen=True)
class DiskAutomorphism:
    """The self-inverse map swapping 0 and ``center``."""

    center: complex

    def __post_init__(self):
        c = complex(as_complex(self.center, "center"))
        if abs(c) >= 1.0:
            raise DomainError(f"automorphism center must satisfy |center| < 1, got {c}")
        object.__setattr__(self, "center", c)

    def __call__(self, z):
        return disk_automorphism_eval(self, z)

    def as_mobius(self) -> MobiusTransform:
        return MobiusTransform(-1, self.center, -self.center.conjugate(), 1)


def disk_automorphism_eval(aut: DiskAutomorphism, z):
    """``(zeta - z) / (1 - conj(zeta) z)`` for ``|z| <= 1``."""
    z = as_complex(z)
    _require_closed_disk(z)
    zeta = aut.center
    return _out((zeta - z) / (1.0 - zeta.conjugate() * z))


def swap_points(eta, zeta) -> MobiusTransform:
    """Disk automorphism interchanging ``eta`` and ``zeta``.

    Built as ``phi_zeta o phi_w o phi_zeta`` with ``w = phi_zeta(eta)``: the
    outer pair carries ``zeta`` to 0 and back, the middle factor swaps 0
    with the image of ``eta``.
    """
    eta = complex(as_complex(eta, "eta"))
    zeta = complex(as_complex(zeta, "zeta"))
    _require_open_disk(eta, "eta")
    _require_open_disk(zeta, "zeta")
    outer = DiskAutomorphism(zeta)
    middle = DiskAutomorphism(outer(eta))
    m = outer.as_mobius()
    return m.compose(middle.as_mobius()).compose(m)


@dataclass(frozen=True)
class CayleyMap:
    """``z -> (z - base) / (z - conj(base))``: upper half-plane onto the disk, ``base -> 0``."""

    base: complex

    def __post_init__(self):
        b = complex(as_complex(self.base, "base"))
        if not b.imag > 0:
            raise DomainError(f"Cayley base must lie in the upper half-plane, got {b}")
        object.__setattr__(self, "base", b)

    def __call__(self, z):
        return cayley_eval(self, z)

    def inverse(self, w):
        return cayley_inverse_eval(self, w)

    def as_mobius(self) -> MobiusTransform:
        return MobiusTransform(1, -self.base, 1, -self.base.conjugate())


def cayley_eval(cmap: CayleyMap, z):
    z = as_complex(z)
    den = z - cmap.base.conjugate()
    if np.any(den == 0):
        raise PoleError("Cayley map evaluated at conj(base)")
    if np.any(z.imag < -BOUNDARY_TOL):
        raise DomainError("Cayley map expects Im z >= 0")
    return _out((z - cmap.base) / den)


def cayley_inverse_eval(cmap: CayleyMap, w):
    """``(zeta - conj(zeta) w) / (1 - w)``."""
    w = as_complex(w, "w")
    _require_closed_disk(w, "w")
    den = 1.0 - w
    if np.any(den == 0):
        raise PoleError("inverse Cayley map evaluated at w = 1")
    zeta = cmap.base
    return _out((zeta - zeta.conjugate() * w) / den)


def pseudo_distance(z, zeta):
    """``|(zeta - z) / (1 - conj(zeta) z)|``, the Mobius-invariant distance surrogate."""
    z = as_complex(z)
    zeta = as_complex(zeta, "zeta")
    _require_open_disk(z)
    _require_open_disk(zeta, "zeta")
    return _out(np.abs((zeta - z) / (1.0 - np.conj(zeta) * z)))


def hyperbolic_distance(z, zeta):
    """Poincare distance normalized as ``atanh(pseudo_distance)``."""
    return _out(np.arctanh(pseudo_distance(z, zeta)))


@dataclass(frozen=True)
class EuclideanCircle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise DomainError(f"circle radius must be finite and positive, got {r}")
        object.__setattr__(self, "radius", r)

    def points(self, n=64, phase=0.0):
        t = phase + 2 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * t)


def circle_through(p1, p2, p3) -> EuclideanCircle:
    """Circumcircle of three distinct, non-collinear points."""
    p1, p2, p3 = complex(p1), complex(p2), complex(p3)
    w = (p3 - p1) / (p2 - p1)
    if abs(w.imag) < 1e-15 * max(1.0, abs(w)):
        raise DomainError("points are collinear")
    # circumcenter of 0, 1, w is (w - |w|^2) / (w - conj(w))
    c = (w - abs(w) ** 2) / (w - w.conjugate())
    center = p1 + (p2 - p1) * c
    radius = (abs(center - p1) + abs(center - p2) + abs(center - p3)) / 3
    return EuclideanCircle(center, radius)


@dataclass(frozen=True)
class NonEuclideanCircle:
    """Locus ``pseudo_distance(z, center) == pseudo_radius``."""

    center: complex
    pseudo_radius: float

    def __post_init__(self):
        c = complex(as_complex(self.center, "center"))
        if abs(c) >= 1:
            raise DomainError("non-Euclidean center must lie in the open disk")
        rho = float(self.pseudo_radius)
        if not 0 < rho < 1:
            raise DomainError(f"pseudo radius must lie in (0, 1), got {rho}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "pseudo_radius", rho)


def noneuclidean_circle_to_euclidean(circle: NonEuclideanCircle) -> EuclideanCircle:
    """Realize the circle by pushing three points of ``|w| = rho`` through ``phi_zeta``."""
    phi = DiskAutomorphism(circle.center)
    model = circle.pseudo_radius * np.exp(2j * np.pi * np.arange(3) / 3)
    return circle_through(*phi(model))


@dataclass(frozen=True)
class Horocycle:
    """Level set ``(1 - |z|^2) / |1 - conj(contact) z|^2 == level``."""

    contact: complex
    level: float

    def __post_init__(self):
        a = complex(as_complex(self.contact, "contact"))
        if not on_unit_circle(a):
            raise DomainError(f"horocycle contact point must lie on the unit circle, got {a}")
        lam = float(self.level)
        if not (math.isfinite(lam) and lam > 0):
            raise DomainError(f"horocycle level must be positive, got {lam}")
        object.__setattr__(self, "contact", a)
        object.__setattr__(self, "level", lam)

    @classmethod
    def through(cls, contact, z) -> Horocycle:
        return cls(contact, horocycle_level(contact, z))

    @classmethod
    def with_radius(cls, contact, radius) -> Horocycle:
        """Horocycle of Euclidean radius ``radius`` in (0, 1)."""
        if not 0 < radius < 1:
            raise DomainError("horocycle radius must lie in (0, 1)")
        return cls(contact, 1.0 / radius - 1.0)


def horocycle_level(alpha, z):
    alpha = complex(as_complex(alpha, "alpha"))
    if not on_unit_circle(alpha):
        raise DomainError(f"|alpha| must be 1, got {abs(alpha)}")
    z = as_complex(z)
    _require_open_disk(z)
    return _out(one_minus_abs2(z) / np.abs(1.0 - alpha.conjugate() * z) ** 2)


def horocycle_to_euclidean(h: Horocycle) -> EuclideanCircle:
    """Realize the horocycle as the image of the line ``Im w = level``.

    Under ``w -> contact * (w - i) / (w + i)`` the quantity
    ``(1-|z|^2)/|1 - conj(contact) z|^2`` equals ``Im w``, so horizontal
    lines go to horocycles at ``contact``.  The abscissae ``0, +-(1 + level)``
    land a quarter turn apart on the horocycle, which keeps the fit well
    conditioned however small the circle is.
    """
    to_disk = MobiusTransform(h.contact, -1j * h.contact, 1, 1j)
    spread = 1.0 + h.level
    model = np.array([-spread, 0.0, spread]) + 1j * h.level
    return circle_through(*to_disk(model))
