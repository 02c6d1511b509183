"""Numerical checks of the Schwarz-Pick / Julia family of inequalities.

Every checker rewrites its inequality as ``margin >= 0`` and returns a
:class:`VerificationReport` holding the worst margin over a sample grid and
the point where it occurs.  A report passes when the worst margin is at
least ``-MARGIN_TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import grids
from .errors import BurnsKrantzViolation, DomainError, PreconditionError
from .fixedpoints import angular_derivative, boundary_multiplier
from .geometry import BOUNDARY_TOL, _complex_to_dict, one_minus_abs2
from .selfmaps import (
    DISK,
    UHP,
    SelfMap,
    is_disk_automorphism,
    is_identity,
    rescale,
    validate_selfmap,
)

MARGIN_TOL = 1e-9
EQUALITY_TOL = 1e-10
#: slack between consecutive ratios in the monotonicity check
MONOTONE_SLACK = 1e-10


@dataclass
class VerificationReport:
    name: str
    samples: int
    worst_margin: float
    witness: complex | None
    witness2: complex | None = None
    seed: int | None = None
    equality: bool = False
    status: str = "checked"
    details: dict = field(default_factory=dict)
    tolerance: float = MARGIN_TOL

    @property
    def passed(self) -> bool:
        if self.status != "checked":
            return True
        return bool(self.worst_margin >= -self.tolerance)

    @property
    def skipped(self) -> bool:
        return self.status != "checked"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "samples": self.samples,
            "worst_margin": None if self.skipped else float(self.worst_margin),
            "witness": None if self.witness is None else _complex_to_dict(self.witness),
        }
        if self.witness2 is not None:
            out["witness2"] = _complex_to_dict(self.witness2)
        out["pass"] = self.passed
        out.update(seed=self.seed, equality=self.equality, status=self.status,
                   tolerance=self.tolerance)
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def skipped_report(name, reason, seed=None) -> VerificationReport:
    return VerificationReport(name, 0, math.nan, None, seed=seed,
                              status=f"skipped: precondition ({reason})")


def _jsonable(v):
    if isinstance(v, complex):
        return _complex_to_dict(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class TangencyResult:
    order: int
    coefficients: list
    identity: bool = False
    slope: float = math.nan

    @property
    def coefficient(self) -> complex | None:
        return self.coefficients[0] if self.coefficients else None


def _require_model(f, model, what):
    if f.model != model:
        raise PreconditionError(f"{what} expects a {model} map, got {f.model}")


def _require_valid(f):
    rep = validate_selfmap(f)
    if not rep.passed:
        raise PreconditionError(f"map failed validation: {rep.reason}")


def _worst(margins, points, points2=None):
    margins = np.asarray(margins, dtype=float)
    k = int(np.argmin(margins))
    w2 = None if points2 is None else complex(points2[k])
    return float(margins[k]), complex(points[k]), w2


def _is_equality(*arrays):
    return all(np.max(np.abs(np.asarray(a, dtype=float))) <= EQUALITY_TOL for a in arrays)


# --------------------------------------------------------------------------
# disk inequalities


def check_schwarz(f: SelfMap, grid=None, seed=grids.DEFAULT_SEED, samples=256) -> VerificationReport:
    """``|f(z)| <= |z|`` and ``|f'(0)| <= 1`` for a disk map fixing 0."""
    _require_model(f, DISK, "check_schwarz")
    if abs(complex(f(0))) > 1e-12:
        raise PreconditionError("f(0) != 0")
    z = grids.disk_grid(samples, seed) if grid is None else np.asarray(grid, dtype=complex)
    z = z[np.abs(z) > 1e-12]
    m1 = np.abs(z) - np.abs(f(z))
    m2 = 1 - abs(complex(f.derivative(0)))
    worst, wit, _ = _worst(m1, z)
    if m2 < worst:
        worst, wit = m2, 0j
    return VerificationReport(
        "schwarz", len(z), worst, wit, seed=seed,
        equality=_is_equality(m1, [m2]),
        details={"modulus_margin": float(np.min(m1)), "derivative_margin": float(m2)},
    )


def check_schwarz_pick(f: SelfMap, pairs=None, seed=grids.DEFAULT_SEED, samples=256) -> VerificationReport:
    """Pseudo-distance contraction and its derivative form."""
    _require_model(f, DISK, "check_schwarz_pick")
    _require_valid(f)
    zeta, z = grids.disk_pairs(samples, seed) if pairs is None else map(np.asarray, pairs)
    fz, fzeta = f(z), f(zeta)
    with np.errstate(invalid="ignore", divide="ignore"):
        d0 = np.abs((zeta - z) / (1 - np.conj(zeta) * z))
        d1 = np.abs((fzeta - fz) / (1 - np.conj(fzeta) * fz))
    d1 = np.where(np.isfinite(d1), d1, 0.0)
    m1 = d0 - d1
    m2 = one_minus_abs2(fzeta) / one_minus_abs2(zeta) - np.abs(f.derivative(zeta))
    w1, a1, b1 = _worst(m1, zeta, z)
    w2, a2, _ = _worst(m2, zeta)
    worst, wit, wit2 = (w1, a1, b1) if w1 <= w2 else (w2, a2, None)
    return VerificationReport(
        "schwarz-pick", len(z), worst, wit, wit2, seed=seed,
        equality=_is_equality(m1, m2),
        details={"pair_margin": w1, "derivative_margin": w2},
    )


def check_julia_wolff_disk(f: SelfMap, grid=None, seed=grids.DEFAULT_SEED, samples=256) -> VerificationReport:
    """Horocycle form of Julia's inequality at the boundary fixed point 1."""
    _require_model(f, DISK, "check_julia_wolff_disk")
    if abs(complex(f(1.0)) - 1) > BOUNDARY_TOL:
        raise PreconditionError("1 is not a boundary fixed point")
    beta = boundary_multiplier(f, 1.0)
    z = grids.disk_grid(samples, seed) if grid is None else np.asarray(grid, dtype=complex)
    fz = f(z)
    level_z = one_minus_abs2(z) / np.abs(1 - z) ** 2
    level_f = one_minus_abs2(fz) / np.abs(1 - fz) ** 2
    m = beta - level_z / level_f
    worst, wit, _ = _worst(m, z)
    # scale-aware equality: the ratio itself is O(beta)
    eq = bool(np.max(np.abs(m)) <= EQUALITY_TOL * max(1.0, beta))
    return VerificationReport("julia-wolff-disk", len(z), worst, wit, seed=seed, equality=eq,
                              details={"multiplier": beta})


def _log_modulus_slope(f, t):
    """``-d/dt log|f(e^{it})| = Im(a f'(a) / f(a))`` at ``a = e^{it}``."""
    a = complex(math.cos(t), math.sin(t))
    return (a * complex(f.slope_at(a)) / complex(f.at(a))).imag


def _refine_maximum(f, tk, h):
    # the stationarity condition pins the angle to rounding level; golden
    # section on |f| itself cannot beat sqrt(eps) at a smooth maximum
    lo, hi = _log_modulus_slope(f, tk - h), _log_modulus_slope(f, tk + h)
    if lo < 0 < hi:
        return brentq(lambda s: _log_modulus_slope(f, s), tk - h, tk + h, xtol=1e-15, rtol=1e-15) % (2 * np.pi)
    res = minimize_scalar(lambda s: -abs(complex(f.at(complex(math.cos(s), math.sin(s))))),
                          bracket=(tk - h, tk, tk + h), method="golden", tol=1e-12)
    return float(res.x) % (2 * np.pi) if res.success and abs(res.x - tk) <= h else tk


def _max_modulus_points(f: SelfMap, scan=1024):
    """Local maxima of ``|f(e^{it})|`` that attain the global maximum."""
    t = 2 * np.pi * np.arange(scan) / scan
    vals = np.abs(f(np.exp(1j * t)))
    top = float(np.max(vals))
    if top - float(np.min(vals)) <= 1e-12 * max(1.0, top):
        # constant modulus (e.g. a Blaschke product): every point is a maximum
        return list(np.exp(1j * t))
    found = []
    for k in range(scan):
        left, right = vals[k - 1], vals[(k + 1) % scan]
        if vals[k] < left or vals[k] < right:
            continue
        tk = t[k]
        if vals[k] > left and vals[k] > right:
            tk = _refine_maximum(f, tk, 2 * np.pi / scan)
        found.append((tk, abs(complex(f.at(complex(math.cos(tk), math.sin(tk)))))))
    best = max(v for _, v in found)
    top = max(top, best)
    keep = sorted(tk for tk, v in found if v >= top - 1e-12 * max(1.0, top))
    return [complex(math.cos(s), math.sin(s)) for s in keep]


def check_jack(f: SelfMap, scan=1024) -> VerificationReport:
    """At a boundary maximum ``alpha`` of ``|f|``, ``alpha f'(alpha)/f(alpha)`` is real and at least 1."""
    _require_model(f, DISK, "check_jack")
    if abs(complex(f(0))) > 1e-12:
        raise PreconditionError("f(0) != 0")
    if not validate_selfmap(f).passed:
        raise PreconditionError("f does not map the closed disk into itself")
    alphas = _max_modulus_points(f, scan)
    if not alphas or abs(complex(f(alphas[0]))) == 0:
        raise PreconditionError("f vanishes identically")
    a = np.asarray(alphas)
    q = a * np.asarray(f.derivative(a)) / np.asarray(f(a))
    margins = np.minimum(q.real - 1, -np.abs(q.imag))
    worst, wit, _ = _worst(margins, a)
    k = int(np.argmin(margins))
    via = complex(rescale(f, a[k]).derivative(1.0))
    return VerificationReport(
        "jack", scan, worst, wit, equality=_is_equality(q.real - 1, q.imag),
        details={"quantity": complex(q[k]), "via_rescaling": via, "maxima": len(a)},
    )


def check_unkelbach(f: SelfMap) -> VerificationReport:
    """``f'(1) >= 2 / (1 + |f'(0)|)`` for a disk map fixing 0 and 1."""
    _require_model(f, DISK, "check_unkelbach")
    if abs(complex(f(0))) > BOUNDARY_TOL or abs(complex(f(1.0)) - 1) > BOUNDARY_TOL:
        raise PreconditionError("f must fix both 0 and 1")
    d1 = boundary_multiplier(f, 1.0)
    d0 = abs(complex(f.derivative(0)))
    bound = 2 / (1 + d0)
    margin = d1 - bound
    return VerificationReport(
        "unkelbach", 1, margin, 1 + 0j, equality=abs(margin) <= EQUALITY_TOL,
        details={"derivative_at_1": d1, "derivative_at_0": d0, "bound": bound,
                 "julia_margin": d1 - 1},
    )


def check_boundary_product(f: SelfMap, alpha1, alpha2) -> VerificationReport:
    """Product of the multipliers at two distinct boundary fixed points is at least 1."""
    _require_model(f, DISK, "check_boundary_product")
    a1, a2 = complex(alpha1), complex(alpha2)
    for a in (a1, a2):
        if abs(abs(a) - 1) > BOUNDARY_TOL or abs(complex(f(a)) - a) > BOUNDARY_TOL:
            raise PreconditionError(f"{a} is not a boundary fixed point")
    if abs(a1 - a2) <= 1e-9:
        raise PreconditionError("the two boundary points coincide")
    m1, m2 = boundary_multiplier(f, a1), boundary_multiplier(f, a2)
    margin = m1 * m2 - 1
    return VerificationReport(
        "boundary-product", 2, margin, a1, a2, equality=abs(margin) <= EQUALITY_TOL,
        details={"multipliers": [m1, m2], "product": m1 * m2,
                 "strict": not is_disk_automorphism(f)},
    )


# --------------------------------------------------------------------------
# half-plane inequalities


def _pick_kernel(a, b):
    return a.imag * b.imag / np.abs(a - np.conj(b)) ** 2


def check_uhp_pick(g: SelfMap, pairs=None, seed=grids.DEFAULT_SEED, samples=256) -> VerificationReport:
    """Half-plane Schwarz-Pick in kernel and derivative form."""
    _require_model(g, UHP, "check_uhp_pick")
    _require_valid(g)
    zeta, z = grids.uhp_pairs(samples, seed) if pairs is None else map(np.asarray, pairs)
    gz, gzeta = g(z), g(zeta)
    m1 = _pick_kernel(gz, gzeta) - _pick_kernel(z, zeta)
    m2 = gzeta.imag / zeta.imag - np.abs(g.derivative(zeta))
    w1, a1, b1 = _worst(m1, zeta, z)
    w2, a2, _ = _worst(m2, zeta)
    worst, wit, wit2 = (w1, a1, b1) if w1 <= w2 else (w2, a2, None)
    return VerificationReport(
        "uhp-pick", len(z), worst, wit, wit2, seed=seed, equality=_is_equality(m1, m2),
        details={"kernel_margin": w1, "derivative_margin": w2},
    )


def check_julia(g: SelfMap, beta, grid=None, seed=grids.DEFAULT_SEED, samples=256) -> VerificationReport:
    """Julia's inequality at the boundary fixed point 0 of a half-plane map."""
    _require_model(g, UHP, "check_julia")
    try:
        g0 = complex(g(0j))
    except ZeroDivisionError:
        g0 = complex("inf")
    if not abs(g0) <= 1e-9:
        raise PreconditionError("0 is not a boundary fixed point")
    beta = float(beta)
    if not beta > 0:
        raise DomainError("beta must be positive")
    z = grids.uhp_grid(samples, seed) if grid is None else np.asarray(grid, dtype=complex)
    gz = g(z)
    m = beta * gz.imag / np.abs(gz) ** 2 - z.imag / np.abs(z) ** 2
    # equivalent form Im(1/g) <= Im(1/(beta z)); equal to m / beta exactly
    m_alt = (1 / (beta * z)).imag - (1 / gz).imag
    worst, wit, _ = _worst(m, z)
    agree = bool((np.min(m) >= -MARGIN_TOL) == (np.min(m_alt) * beta >= -MARGIN_TOL))
    return VerificationReport(
        "julia", len(z), worst, wit, seed=seed, equality=_is_equality(m),
        details={"beta": beta, "reciprocal_margin": float(np.min(m_alt)), "forms_agree": agree},
    )


def check_wolff_monotonicity(g: SelfMap, x=0.0, y_grid=None) -> VerificationReport:
    """``Im g(x + iy) / y`` does not decrease as ``y`` decreases."""
    _require_model(g, UHP, "check_wolff_monotonicity")
    _require_valid(g)
    y = 2.0 ** -np.arange(0, 17) if y_grid is None else np.asarray(y_grid, dtype=float)
    if np.any(y <= 0) or np.any(np.diff(y) >= 0):
        raise DomainError("y_grid must be strictly decreasing positive reals")
    z = float(x) + 1j * y
    ratio = np.asarray(g(z)).imag / y
    steps = np.diff(ratio)
    worst, wit, _ = _worst(steps, z[1:])
    return VerificationReport(
        "wolff-monotonicity", len(y), worst, wit, equality=_is_equality(steps),
        details={"x": float(x), "ratios": [float(r) for r in ratio],
                 "within_slack": bool(worst >= -MONOTONE_SLACK)},
    )


# --------------------------------------------------------------------------
# rigidity


def tangency_order(f: SelfMap, alpha=1.0, max_order=8, jmin=4, jmax=16) -> TangencyResult:
    """Leading exponent ``k`` in ``f(z) - z ~ c (z - alpha)^k`` along the radius to ``alpha``.

    Raises :class:`BurnsKrantzViolation` when ``k >= 4`` for a map that is
    not the identity.
    """
    _require_model(f, DISK, "tangency_order")
    alpha = complex(alpha)
    if abs(complex(f(alpha)) - alpha) > BOUNDARY_TOL:
        raise PreconditionError(f"{alpha} is not a boundary fixed point")
    beta = angular_derivative(f, alpha, check=False)
    if not abs(beta - 1) <= 1e-6:
        return TangencyResult(1, [complex(f.derivative(alpha)) - 1])

    h = 2.0 ** -np.arange(jmin, jmax + 1)
    z = (1 - h) * alpha
    diff = np.asarray(f(z)) - z
    d = np.abs(diff)
    # below this the difference is rounding noise
    ok = d > 1e-13 * np.maximum(1.0, np.abs(z)) * 64
    if ok.sum() < 3:
        if is_identity(f, tol=1e-10):
            return TangencyResult(max_order, [], identity=True, slope=math.inf)
        raise BurnsKrantzViolation(
            f"f(z) - z vanishes to working precision at {alpha} but f is not the identity")
    slope = float(np.polyfit(np.log(h[ok]), np.log(d[ok]), 1)[0])
    k = min(max(int(round(slope)), 1), max_order)
    coeffs = diff[ok] / (z[ok] - alpha) ** k
    # first-order Richardson on the last two samples (h halves each step)
    lead = 2 * coeffs[-1] - coeffs[-2] if len(coeffs) >= 2 else coeffs[-1]
    result = TangencyResult(k, [complex(lead)] + [complex(c) for c in coeffs], slope=slope)
    if k >= 4 and not is_identity(f, tol=1e-10):
        raise BurnsKrantzViolation(
            f"order {k} contact with the identity at {alpha}, but f is not the identity")
    return result


# --------------------------------------------------------------------------
# Harnack


def harnack_bounds(u0, r, rho):
    """Two-sided Harnack bounds at distance ``rho`` from the center of a disk of radius ``r``."""
    u0, r, rho = float(u0), float(r), float(rho)
    if not u0 > 0:
        raise DomainError("u0 must be positive")
    if not 0 <= rho < r:
        raise DomainError("need 0 <= rho < r")
    return u0 * (r - rho) / (r + rho), u0 * (r + rho) / (r - rho)


def poisson_kernel(z, r=1.0):
    """``Re((r + z) / (r - z))``, positive and harmonic in ``|z| < r`` with value 1 at 0."""
    z = np.asarray(z, dtype=complex)
    return ((r + z) / (r - z)).real


def check_harnack(u, u0, r, rho, samples=256, phase=0.0) -> VerificationReport:
    """Sample ``u`` on the circle of radius ``rho`` and compare with the Harnack bounds."""
    lo, hi = harnack_bounds(u0, r, rho)
    z = grids.circle_points(samples, rho, phase)
    vals = np.asarray(u(z), dtype=float)
    m = np.minimum(vals - lo, hi - vals)
    worst, wit, _ = _worst(m, z)
    return VerificationReport("harnack", samples, worst, wit,
                              details={"lower": lo, "upper": hi, "rho": rho, "r": r})
