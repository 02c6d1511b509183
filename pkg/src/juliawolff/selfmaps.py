"""Holomorphic self-maps of the disk and half-plane built from declarative specs.

A map is described by a small closed algebra of specs (Blaschke products,
Mobius maps, polynomials, compositions and Cayley conjugates).  Every member
of the algebra has an analytic derivative and can be evaluated on the
boundary, which is what the fixed-point machinery needs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, ModelMismatchError, PoleError, SpecError
from .geometry import BOUNDARY_TOL, MobiusTransform, _complex_to_dict, _out

DISK = "disk"
UHP = "upper_half_plane"
MODELS = (DISK, UHP)

#: logarithmic derivative of a Blaschke product is abandoned below this |f|
_LOGDERIV_FLOOR = 1e-12


@dataclass(frozen=True)
class BlaschkeZero:
    position: complex
    multiplicity: int = 1


@dataclass(frozen=True)
class BlaschkeSpec:
    zeros: tuple = ()
    rotation_turns: float = 0.0
    model: str = DISK

    @property
    def degree(self) -> int:
        return sum(z.multiplicity for z in self.zeros)


@dataclass(frozen=True)
class MobiusSpec:
    a: complex
    b: complex
    c: complex
    d: complex
    model: str = DISK

    def transform(self) -> MobiusTransform:
        return MobiusTransform(self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class PolynomialSpec:
    coefficients: tuple  # ascending degree
    model: str = DISK


@dataclass(frozen=True)
class CompositionSpec:
    inner: "MapSpec"
    outer: "MapSpec"
    model: str = field(init=False)

    def __post_init__(self):
        if self.inner.model != self.outer.model:
            raise ModelMismatchError(
                f"cannot compose a {self.outer.model} map with a {self.inner.model} map"
            )
        object.__setattr__(self, "model", self.inner.model)


@dataclass(frozen=True)
class HalfPlaneConjugateSpec:
    """A disk map viewed on the upper half-plane.

    ``anchor`` is the disk boundary point that lands on the half-plane origin;
    the canonical Cayley frame uses ``anchor = -1``.
    """

    disk: "MapSpec"
    anchor: complex = -1 + 0j
    model: str = field(init=False, default=UHP)


MapSpec = Union[BlaschkeSpec, MobiusSpec, PolynomialSpec, CompositionSpec, HalfPlaneConjugateSpec]


# --------------------------------------------------------------------------
# serialization


def _complex_from(obj, path):
    if isinstance(obj, bool):
        raise SpecError(path, "expected a complex number")
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im"}
        if extra:
            raise SpecError(path, f"unexpected keys {sorted(extra)}")
        try:
            re, im = obj.get("re", 0.0), obj.get("im", 0.0)
            if isinstance(re, bool) or isinstance(im, bool):
                raise TypeError
            value = complex(float(re), float(im))
        except (TypeError, ValueError):
            raise SpecError(path, "re/im must be numbers") from None
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise SpecError(path, "must be finite")
        return value
    raise SpecError(path, "expected a number or an object with re/im")


def _model_from(obj, path, default=DISK):
    model = obj.get("model", default)
    if model not in MODELS:
        raise SpecError(f"{path}.model" if path else "model", f"must be one of {MODELS}, got {model!r}")
    return model


def spec_from_dict(obj, path="") -> MapSpec:
    """Build a spec from its JSON-compatible form; errors name the bad field."""
    if not isinstance(obj, dict):
        raise SpecError(path, "expected an object")
    kind = obj.get("type")
    here = (lambda key: f"{path}.{key}" if path else key)
    if kind == "blaschke":
        model = _model_from(obj, path)
        if model != DISK:
            raise SpecError(here("model"), "Blaschke products live on the disk")
        turns = obj.get("rotation_turns", 0.0)
        if isinstance(turns, bool) or not isinstance(turns, (int, float)) or not math.isfinite(turns):
            raise SpecError(here("rotation_turns"), "must be a finite number")
        raw = obj.get("zeros", [])
        if not isinstance(raw, list):
            raise SpecError(here("zeros"), "must be a list")
        zeros = []
        for k, item in enumerate(raw):
            zp = f"{here('zeros')}[{k}]"
            if not isinstance(item, dict):
                raise SpecError(zp, "expected an object with re, im, multiplicity")
            pos = _complex_from({key: item[key] for key in ("re", "im") if key in item}, zp)
            if abs(pos) >= 1:
                raise SpecError(zp, f"zero must satisfy |position| < 1, got {abs(pos)}")
            m = item.get("multiplicity", 1)
            if isinstance(m, bool) or not isinstance(m, int) or m < 1:
                raise SpecError(f"{zp}.multiplicity", "must be a positive integer")
            zeros.append(BlaschkeZero(pos, m))
        return BlaschkeSpec(tuple(zeros), float(turns), model)
    if kind == "mobius":
        model = _model_from(obj, path)
        coeffs = []
        for key in "abcd":
            if key not in obj:
                raise SpecError(here(key), "missing coefficient")
            coeffs.append(_complex_from(obj[key], here(key)))
        a, b, c, d = coeffs
        if a * d - b * c == 0:
            raise SpecError(path, "degenerate Mobius map (ad - bc == 0)")
        return MobiusSpec(a, b, c, d, model)
    if kind == "polynomial":
        model = _model_from(obj, path)
        raw = obj.get("coefficients")
        if not isinstance(raw, list) or not raw:
            raise SpecError(here("coefficients"), "must be a non-empty list")
        coeffs = tuple(_complex_from(c, f"{here('coefficients')}[{k}]") for k, c in enumerate(raw))
        return PolynomialSpec(coeffs, model)
    if kind == "composition":
        for key in ("inner", "outer"):
            if key not in obj:
                raise SpecError(here(key), "missing")
        inner = spec_from_dict(obj["inner"], here("inner"))
        outer = spec_from_dict(obj["outer"], here("outer"))
        if "model" in obj and obj["model"] != inner.model:
            raise SpecError(here("model"), "does not match the operands")
        try:
            return CompositionSpec(inner, outer)
        except ModelMismatchError as exc:
            raise SpecError(path, str(exc)) from None
    if kind == "halfplane_conjugate":
        if "disk" not in obj:
            raise SpecError(here("disk"), "missing")
        disk = spec_from_dict(obj["disk"], here("disk"))
        if disk.model != DISK:
            raise SpecError(here("disk"), "must be a disk map")
        anchor = _complex_from(obj.get("anchor", -1.0), here("anchor"))
        if abs(abs(anchor) - 1) > BOUNDARY_TOL:
            raise SpecError(here("anchor"), "must lie on the unit circle")
        return HalfPlaneConjugateSpec(disk, anchor)
    raise SpecError(here("type"), f"unknown map type {kind!r}")


def spec_to_dict(spec: MapSpec) -> dict:
    if isinstance(spec, BlaschkeSpec):
        return {
            "model": spec.model,
            "type": "blaschke",
            "rotation_turns": spec.rotation_turns,
            "zeros": [
                {"re": z.position.real, "im": z.position.imag, "multiplicity": z.multiplicity}
                for z in spec.zeros
            ],
        }
    if isinstance(spec, MobiusSpec):
        out = {"model": spec.model, "type": "mobius"}
        out.update({key: _complex_to_dict(getattr(spec, key)) for key in "abcd"})
        return out
    if isinstance(spec, PolynomialSpec):
        return {
            "model": spec.model,
            "type": "polynomial",
            "coefficients": [_complex_to_dict(c) for c in spec.coefficients],
        }
    if isinstance(spec, CompositionSpec):
        return {
            "model": spec.model,
            "type": "composition",
            "inner": spec_to_dict(spec.inner),
            "outer": spec_to_dict(spec.outer),
        }
    if isinstance(spec, HalfPlaneConjugateSpec):
        return {
            "model": UHP,
            "type": "halfplane_conjugate",
            "disk": spec_to_dict(spec.disk),
            "anchor": _complex_to_dict(spec.anchor),
        }
    raise TypeError(f"not a map spec: {spec!r}")


def loads_spec(text: str) -> MapSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return spec_from_dict(obj)


def load_map(path) -> "SelfMap":
    with open(path, encoding="utf-8") as fh:
        return SelfMap(loads_spec(fh.read()))


# --------------------------------------------------------------------------
# evaluation


def canonical_cayley(anchor=-1 + 0j) -> MobiusTransform:
    """Half-plane to disk map with ``i -> 0`` and ``0 -> anchor``.

    For ``anchor = -1`` this is ``w -> (w - i)/(w + i)``, so ``infinity -> 1``.
    """
    anchor = complex(anchor)
    return MobiusTransform(-anchor, 1j * anchor, 1, 1j)


def _blaschke_funcs(spec: BlaschkeSpec):
    rot = np.exp(2j * np.pi * spec.rotation_turns)
    zeros = [(z.position, z.position.conjugate(), z.multiplicity) for z in spec.zeros]

    def factors(z):
        out = []
        for a, ac, m in zeros:
            den = 1.0 - ac * z
            if np.any(den == 0):
                raise PoleError(f"Blaschke factor evaluated at its pole {1 / ac}")
            out.append(((z - a) / den, (1.0 - abs(a) ** 2) / den**2, m))
        return out

    def f(z):
        val = np.full(np.shape(z), rot, dtype=complex)
        for b, _, m in factors(z):
            val = val * b**m
        return val

    def df(z):
        fs = factors(z)
        val = np.full(np.shape(z), rot, dtype=complex)
        for b, _, m in fs:
            val = val * b**m
        logd = np.zeros(np.shape(z), dtype=complex)
        small = np.abs(val) < _LOGDERIV_FLOOR
        with np.errstate(divide="ignore", invalid="ignore"):
            for a, ac, m in zeros:
                logd = logd + m * (1.0 - abs(a) ** 2) / ((z - a) * (1.0 - ac * z))
            out = val * logd
        if np.any(small):
            # product rule: sum_k m_k b_k^(m_k-1) b_k' prod_{j != k} b_j^m_j
            prod = np.zeros(np.shape(z), dtype=complex)
            for k, (bk, dbk, mk) in enumerate(fs):
                term = rot * mk * bk ** (mk - 1) * dbk
                for j, (bj, _, mj) in enumerate(fs):
                    if j != k:
                        term = term * bj**mj
                prod = prod + term
            out = np.where(small, prod, out)
        return out

    return f, df


def _build(spec: MapSpec):
    if isinstance(spec, BlaschkeSpec):
        return _blaschke_funcs(spec)
    if isinstance(spec, MobiusSpec):
        t = spec.transform()
        return (lambda z: np.asarray(t(z))), (lambda z: np.asarray(t.derivative(z)))
    if isinstance(spec, PolynomialSpec):
        c = np.array(spec.coefficients, dtype=complex)
        dc = npoly.polyder(c) if len(c) > 1 else np.zeros(1, dtype=complex)
        return (lambda z: npoly.polyval(z, c)), (lambda z: npoly.polyval(z, dc))
    if isinstance(spec, CompositionSpec):
        fi, dfi = _build(spec.inner)
        fo, dfo = _build(spec.outer)

        def df(z):
            w = fi(z)
            return dfo(w) * dfi(z)

        return (lambda z: fo(fi(z))), df
    if isinstance(spec, HalfPlaneConjugateSpec):
        fd, dfd = _build(spec.disk)
        to_disk = canonical_cayley(spec.anchor)
        back = to_disk.inverse()

        def f(w):
            return np.asarray(back(fd(np.asarray(to_disk(w)))))

        def df(w):
            z = np.asarray(to_disk(w))
            fz = fd(z)
            return np.asarray(back.derivative(fz)) * dfd(z) * np.asarray(to_disk.derivative(w))

        return f, df
    raise TypeError(f"not a map spec: {spec!r}")


def _build_scalar(spec: MapSpec):
    """Plain-``complex`` versions of (f, f'); no numpy overhead for tight loops."""
    if isinstance(spec, BlaschkeSpec):
        rot = complex(np.exp(2j * np.pi * spec.rotation_turns))
        zeros = [(z.position, z.position.conjugate(), z.multiplicity, 1.0 - abs(z.position) ** 2)
                 for z in spec.zeros]

        def f(z):
            val = rot
            for a, ac, m, _ in zeros:
                val *= ((z - a) / (1.0 - ac * z)) ** m
            return val

        def df(z):
            total = 0j
            for k, (a, ac, m, s) in enumerate(zeros):
                den = 1.0 - ac * z
                b = (z - a) / den
                term = rot * m * b ** (m - 1) * s / den**2
                for j, (aj, acj, mj, _) in enumerate(zeros):
                    if j != k:
                        term *= ((z - aj) / (1.0 - acj * z)) ** mj
                total += term
            return total

        return f, df
    if isinstance(spec, MobiusSpec):
        a, b, c, d = spec.a, spec.b, spec.c, spec.d
        det = a * d - b * c
        return (lambda z: (a * z + b) / (c * z + d)), (lambda z: det / (c * z + d) ** 2)
    if isinstance(spec, PolynomialSpec):
        coeffs = list(spec.coefficients)[::-1]
        dcoeffs = [k * c for k, c in enumerate(spec.coefficients)][1:][::-1] or [0j]

        def horner(cs):
            def p(z):
                acc = 0j
                for c in cs:
                    acc = acc * z + c
                return acc
            return p

        return horner(coeffs), horner(dcoeffs)
    if isinstance(spec, CompositionSpec):
        fi, dfi = _build_scalar(spec.inner)
        fo, dfo = _build_scalar(spec.outer)
        return (lambda z: fo(fi(z))), (lambda z: dfo(fi(z)) * dfi(z))
    if isinstance(spec, HalfPlaneConjugateSpec):
        fd, dfd = _build_scalar(spec.disk)
        t = canonical_cayley(spec.anchor)
        u = t.inverse()
        ta, tb, tc, td, tdet = t.a, t.b, t.c, t.d, t.det
        ua, ub, uc, ud, udet = u.a, u.b, u.c, u.d, u.det

        def f(w):
            z = (ta * w + tb) / (tc * w + td)
            v = fd(z)
            return (ua * v + ub) / (uc * v + ud)

        def df(w):
            z = (ta * w + tb) / (tc * w + td)
            v = fd(z)
            return udet / (uc * v + ud) ** 2 * dfd(z) * tdet / (tc * w + td) ** 2

        return f, df
    raise TypeError(f"not a map spec: {spec!r}")


class SelfMap:
    """Evaluatable form of a :data:`MapSpec`.  Immutable.

    ``f(z)`` and ``f.derivative(z)`` accept scalars or arrays; ``f.at`` and
    ``f.slope_at`` are the unchecked scalar fast paths used by iterative
    solvers (they raise ``ZeroDivisionError`` at poles).
    """

    __slots__ = ("_spec", "_f", "_df", "at", "slope_at")

    def __init__(self, spec: MapSpec):
        object.__setattr__(self, "_spec", spec)
        f, df = _build(spec)
        object.__setattr__(self, "_f", f)
        object.__setattr__(self, "_df", df)
        at, slope_at = _build_scalar(spec)
        object.__setattr__(self, "at", at)
        object.__setattr__(self, "slope_at", slope_at)

    def __setattr__(self, name, value):
        raise AttributeError("SelfMap is immutable")

    @property
    def spec(self) -> MapSpec:
        return self._spec

    @property
    def model(self) -> str:
        return self._spec.model

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self, z):
        return derivative(self, z)

    def to_dict(self) -> dict:
        return spec_to_dict(self._spec)

    @classmethod
    def from_dict(cls, obj) -> SelfMap:
        return cls(spec_from_dict(obj))

    def __repr__(self):
        return f"SelfMap({self._spec!r})"

    def __eq__(self, other):
        return isinstance(other, SelfMap) and self._spec == other._spec

    def __hash__(self):
        return hash(self._spec)


def _finite_or_pole(val, what):
    if not np.all(np.isfinite(val)):
        raise PoleError(f"{what} is not finite (pole)")
    return _out(val)


def evaluate(f: SelfMap, z):
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        val = f._f(z)
    return _finite_or_pole(val, "map value")


def derivative(f: SelfMap, z):
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        val = f._df(z)
    return _finite_or_pole(val, "derivative")


# --------------------------------------------------------------------------
# constructors


def blaschke(zeros=(), rotation_turns=0.0) -> SelfMap:
    """Finite Blaschke product.  ``zeros`` holds positions or ``(position, multiplicity)`` pairs."""
    items = []
    for z in zeros:
        pos, m = (z if isinstance(z, tuple) else (z, 1))
        pos = complex(pos)
        if abs(pos) >= 1:
            raise DomainError(f"Blaschke zero {pos} is not inside the disk")
        if int(m) != m or m < 1:
            raise DomainError("multiplicity must be a positive integer")
        items.append(BlaschkeZero(pos, int(m)))
    return SelfMap(BlaschkeSpec(tuple(items), float(rotation_turns)))


def mobius(a, b, c, d, model=DISK) -> SelfMap:
    MobiusTransform(a, b, c, d)  # validates nondegeneracy
    return SelfMap(MobiusSpec(complex(a), complex(b), complex(c), complex(d), model))


def from_transform(t: MobiusTransform, model=DISK) -> SelfMap:
    return mobius(t.a, t.b, t.c, t.d, model)


def polynomial(coefficients, model=DISK) -> SelfMap:
    return SelfMap(PolynomialSpec(tuple(complex(c) for c in coefficients), model))


def identity(model=DISK) -> SelfMap:
    return mobius(1, 0, 0, 1, model)


def compose(outer: SelfMap, inner: SelfMap) -> SelfMap:
    """``outer o inner``."""
    if outer.model != inner.model:
        raise ModelMismatchError(f"cannot compose a {outer.model} map with a {inner.model} map")
    return SelfMap(CompositionSpec(inner.spec, outer.spec))


def conjugate_to_halfplane(f: SelfMap, anchor=-1 + 0j) -> SelfMap:
    """``C^-1 o f o C`` with ``C`` the Cayley map sending ``i -> 0`` and ``0 -> anchor``."""
    if f.model != DISK:
        raise ModelMismatchError("conjugate_to_halfplane expects a disk map")
    anchor = complex(anchor)
    if abs(abs(anchor) - 1) > BOUNDARY_TOL:
        raise DomainError("anchor must lie on the unit circle")
    return SelfMap(HalfPlaneConjugateSpec(f.spec, anchor))


def conjugate_to_disk(g: SelfMap, anchor=-1 + 0j):
    """Inverse of :func:`conjugate_to_halfplane`, as a plain callable on the disk."""
    if isinstance(g.spec, HalfPlaneConjugateSpec) and g.spec.anchor == complex(anchor):
        return SelfMap(g.spec.disk)
    c = canonical_cayley(anchor)
    back = c.inverse()

    def f(z):
        return c(evaluate(g, back(z)))

    return f


def rescale(f: SelfMap, alpha) -> SelfMap:
    """``F(z) = f(alpha z) / f(alpha)``.

    When ``|f|`` peaks on the boundary at ``alpha`` this is a self-map fixing 1
    with ``F'(1) = alpha f'(alpha) / f(alpha)``.
    """
    alpha = complex(alpha)
    fa = complex(evaluate(f, alpha))
    if fa == 0:
        raise DomainError("f vanishes at alpha; cannot rescale")
    inner = mobius(alpha, 0, 0, 1, f.model)
    outer = mobius(1, 0, 0, fa, f.model)
    return compose(outer, compose(f, inner))


# --------------------------------------------------------------------------
# structural predicates and validation


def is_identity(f: SelfMap, points=32, seed=0, tol=1e-12) -> bool:
    rng = np.random.default_rng(seed)
    if f.model == DISK:
        z = 0.9 * np.sqrt(rng.random(points)) * np.exp(2j * np.pi * rng.random(points))
    else:
        z = rng.uniform(-3, 3, points) + 1j * rng.uniform(0.05, 3, points)
    try:
        return bool(np.max(np.abs(evaluate(f, z) - z)) <= tol)
    except PoleError:
        return False


def is_disk_automorphism(f: SelfMap) -> bool:
    """Structural test: degree-one Blaschke, automorphic Mobius, or a composite of those."""
    spec = f.spec
    if spec.model != DISK:
        return False
    if isinstance(spec, BlaschkeSpec):
        return spec.degree == 1
    if isinstance(spec, MobiusSpec):
        return spec.transform().is_disk_automorphism()
    if isinstance(spec, PolynomialSpec):
        c = [x for x in spec.coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return len(c) == 2 and c[0] == 0 and abs(abs(c[1]) - 1) <= 1e-15
    if isinstance(spec, CompositionSpec):
        return is_disk_automorphism(SelfMap(spec.inner)) and is_disk_automorphism(SelfMap(spec.outer))
    return False


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    max_modulus: float
    witness: complex
    samples: int
    structural: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_modulus": self.max_modulus,
            "witness": _complex_to_dict(self.witness),
            "samples": self.samples,
            "structural": self.structural,
            "reason": self.reason,
        }


def _boundary_sweep(func, samples, offset=0.0):
    t = 2 * np.pi * (np.arange(samples) + offset) / samples
    z = np.exp(1j * t)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.abs(func(z))
    vals = np.where(np.isfinite(vals), vals, np.inf)
    mx = float(np.max(vals))
    # ties (e.g. constant modulus) resolve to the smallest angle
    k = int(np.argmax(vals >= mx - 1e-12 * max(1.0, mx)))
    return mx, z[k]


# disk points pulled back to interior half-plane probes (0 lands on i)
_UHP_PROBE = np.concatenate([[0.0], np.exp(2j * np.pi * np.arange(32) / 32)])


def validate_selfmap(f: SelfMap, samples=4096) -> ValidationReport:
    """Certify that ``f`` maps its model domain into itself.

    Blaschke products and disk automorphisms pass structurally.  Anything
    else passes when the boundary sweep stays within ``1 + 1e-9`` in modulus
    (half-plane maps are swept after conjugation to the disk) and no pole
    lies in the closed domain.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    spec = f.spec
    tol = BOUNDARY_TOL
    if f.model == UHP:
        if isinstance(spec, HalfPlaneConjugateSpec):
            inner = validate_selfmap(SelfMap(spec.disk), samples)
            back = canonical_cayley(spec.anchor).inverse()
            witness = complex(back(inner.witness)) if abs(inner.witness + spec.anchor) > 0 else complex("inf")
            return ValidationReport(inner.passed, inner.max_modulus, witness, samples,
                                    inner.structural, inner.reason)
        if isinstance(spec, MobiusSpec):
            pole = spec.transform().pole()
            if pole is not None and pole.imag > -tol:
                return ValidationReport(False, math.inf, pole, samples, True,
                                        "pole in the closed upper half-plane")
        c = canonical_cayley()
        back = c.inverse()
        # half-step offset keeps the sweep off z = 1, the image of infinity
        mx, wz = _boundary_sweep(lambda z: np.asarray(c(f._f(np.asarray(back(z))))), samples, 0.5)
        if mx > 1 + tol:
            return ValidationReport(False, mx, complex(back(wz)), samples, False,
                                    "image leaves the half-plane")
        # the boundary alone cannot rule out z -> -z: probe interior points too
        probe = np.asarray(back(0.9 * _UHP_PROBE))
        with np.errstate(divide="ignore", invalid="ignore"):
            im = np.asarray(f._f(probe)).imag
        im = np.where(np.isfinite(im), im, -np.inf)
        k = int(np.argmin(im))
        if im[k] <= 0:
            return ValidationReport(False, mx, complex(probe[k]), samples, False,
                                    "interior point mapped outside the half-plane")
        return ValidationReport(True, mx, complex(back(wz)), samples, False)

    mx, wz = _boundary_sweep(f._f, samples)
    if isinstance(spec, BlaschkeSpec) or is_disk_automorphism(f):
        return ValidationReport(True, mx, complex(wz), samples, True)
    if isinstance(spec, MobiusSpec):
        pole = spec.transform().pole()
        if pole is not None and abs(pole) <= 1 + tol:
            return ValidationReport(False, math.inf, pole, samples, True, "pole in the closed disk")
    if isinstance(spec, CompositionSpec):
        inner = validate_selfmap(SelfMap(spec.inner), samples)
        outer = validate_selfmap(SelfMap(spec.outer), samples)
        if inner.passed and outer.passed:
            return ValidationReport(True, mx, complex(wz), samples,
                                    inner.structural and outer.structural)
    passed = mx <= 1 + tol
    return ValidationReport(passed, mx, complex(wz), samples, False,
                            "" if passed else f"boundary modulus {mx:.6g} exceeds 1")
