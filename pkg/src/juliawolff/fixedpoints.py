"""Fixed points of holomorphic self-maps of the disk.

Interior fixed points come from damped Newton, boundary fixed points from a
lifted-phase scan of ``f(e^{it}) = e^{it}``, and the Denjoy-Wolff point from
either Wolff's shrunken maps ``(1 - 1/n) f`` or plain iteration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import NonConvergenceError, PreconditionError
from .geometry import BOUNDARY_TOL, _complex_to_dict
from .selfmaps import DISK, SelfMap, is_identity, spec_to_dict

#: |f(alpha) - alpha| accepted for a boundary fixed point
BOUNDARY_RESIDUAL = 1e-10
#: |f(z) - z| accepted for an interior fixed point
INTERIOR_RESIDUAL = 1e-12
#: multipliers up to 1 + this count as "at most one"
MULTIPLIER_TOL = 1e-9


@dataclass(frozen=True)
class FixedPointRecord:
    location: complex
    kind: str  # "interior" | "boundary"
    multiplier: complex | float
    is_denjoy_wolff: bool = False

    def to_dict(self) -> dict:
        mult = self.multiplier
        return {
            "location": _complex_to_dict(self.location),
            "kind": self.kind,
            "multiplier": _complex_to_dict(mult) if self.kind == "interior" else float(mult),
            "is_denjoy_wolff": self.is_denjoy_wolff,
        }


@dataclass
class BoundaryScan:
    """Outcome of :func:`boundary_fixed_points`.

    ``whole_circle`` is set for the identity map, whose fixed-point set is the
    entire circle.  ``message`` reports anything unusual about the phase lift.
    """

    points: list = field(default_factory=list)
    whole_circle: bool = False
    message: str = ""

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _require_disk(f):
    if f.model != DISK:
        raise PreconditionError("expected a disk map")


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def boundary_fixed_points(f: SelfMap, resolution=2048) -> BoundaryScan:
    """All solutions of ``f(e^{it}) = e^{it}``.

    The lifted phase difference ``arg f(e^{it}) - t`` is scanned over
    ``resolution`` panels; each crossing of a multiple of ``2 pi`` is
    bracketed and solved.  Tangential touches (multiplier exactly one) do not
    change sign, so local minima of ``|f(e^{it}) - e^{it}|`` are refined as
    well.  A candidate survives only if ``|f(alpha) - alpha| <= 1e-10``.
    """
    _require_disk(f)
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    if is_identity(f):
        return BoundaryScan([], True, "identity map: every boundary point is fixed")

    t = 2 * np.pi * np.arange(resolution + 1) / resolution
    z = np.exp(1j * t)
    w = np.asarray(f(z))
    residual = np.abs(w - z)
    message = ""
    vanish = np.abs(w) < 1e-8
    if np.any(vanish):
        message = f"f vanishes on the boundary near t={t[np.argmax(vanish)]:.6g}; phase lift is discontinuous there"
    h = np.angle(w * np.conj(z))  # principal branch of the lifted difference modulo 2 pi

    def h_of(s):
        e = cmath.exp(1j * s)
        return cmath.phase(f.at(e) / e)

    def res_of(s):
        e = cmath.exp(1j * s)
        return abs(f.at(e) - e)

    def slope_of(s):
        # d/dt of the lifted phase difference
        e = cmath.exp(1j * s)
        return (e * f.slope_at(e) / f.at(e)).real - 1

    found = []
    for k in range(resolution):
        a, b = h[k], h[k + 1]
        if residual[k] <= BOUNDARY_RESIDUAL:
            # a grid point that is itself a root (maps normalized to fix 1 hit t = 0)
            found.append(t[k])
        # a genuine crossing of the lift is small on both ends; a jump of ~2 pi is a branch cut
        if a * b < 0 and abs(a) < np.pi / 2 and abs(b) < np.pi / 2:
            ha, hb = h_of(t[k]), h_of(t[k + 1])
            if ha * hb <= 0:
                found.append(brentq(h_of, t[k], t[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
            else:
                # vector and scalar evaluation disagree in the last bits; keep the closer end
                found.append(t[k] if abs(ha) < abs(hb) else t[k + 1])

    res = residual[:-1]
    prev, nxt = np.roll(res, 1), np.roll(res, -1)
    minima = np.nonzero((res <= prev) & (res <= nxt) & (res < 0.1))[0]
    step = t[1] - t[0]
    for k in minima:
        # each half separately: two close roots can share the neighborhood of one minimum
        for lo, hi in ((t[k] - step, t[k]), (t[k], t[k] + step)):
            opt = minimize_scalar(res_of, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-15, "maxiter": 200})
            found.append(opt.x)

    accepted = []
    for s in found:
        s, r = float(s), res_of(float(s))
        polished = float(_polish_tangential(slope_of, s))
        # two close simple roots would pull the polish onto the slope zero between them
        r_pol = res_of(polished)
        if r_pol <= max(2 * r, 1e-13):
            s, r = polished, r_pol
        s %= 2 * np.pi
        if r <= BOUNDARY_RESIDUAL:
            accepted.append((s, r))
    accepted.sort()
    merged = []
    for s, r in accepted:
        if merged and abs(_wrap(s - merged[-1][0])) < 1e-7:
            if r < merged[-1][1]:
                merged[-1] = (s, r)
            continue
        merged.append((s, r))
    if len(merged) > 1 and abs(_wrap(merged[0][0] - merged[-1][0])) < 1e-7:
        if merged[-1][1] < merged[0][1]:
            merged[0] = merged[-1]
        merged.pop()
    return BoundaryScan([_snap_unit(cmath.exp(1j * s)) for s, _ in merged], False, message)


def _polish_tangential(slope_of, s, h=1e-6):
    """Refine a candidate that is a double root of the phase difference.

    Near a double root the phase difference sinks below rounding noise
    within about ``sqrt(eps)`` of the root, so both the crossing scan and the
    residual minimization land only that close.  The phase slope has a simple
    zero there, which a bracketing solve locates to rounding level.  Simple
    roots and higher-order contact keep ``s``.
    """
    lo, hi = s - h, s + h
    try:
        a, b = slope_of(lo), slope_of(hi)
    except ZeroDivisionError:
        return s
    if a * b < 0:
        return brentq(slope_of, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return s


def _snap_unit(z):
    # tidy exact-looking values: -1 comes out as -1+1.2e-16j
    re = 0.0 if abs(z.real) < 1e-15 else z.real
    im = 0.0 if abs(z.imag) < 1e-15 else z.imag
    return complex(re, im)


def _damped_newton(g, dg, z0, tol, maxiter=100, radius=1.0):
    """Damped Newton for ``g(z) = 0`` confined to ``|z| < radius``.

    Returns ``(z, |g(z)|)``; the caller decides whether that is good enough.
    """
    z = complex(z0)
    try:
        gz = g(z)
    except ZeroDivisionError:
        return z, math.inf
    for _ in range(maxiter):
        if abs(gz) <= tol:
            break
        try:
            d = dg(z)
        except ZeroDivisionError:
            break
        if d == 0:
            break
        step = gz / d
        lam = 1.0
        while lam > 1e-6:
            zn = z - lam * step
            if abs(zn) < radius:
                try:
                    gn = g(zn)
                except ZeroDivisionError:
                    gn = None
                if gn is not None and abs(gn) < abs(gz):
                    break
            lam *= 0.5
        else:
            break
        z, gz = zn, gn
    return z, abs(gz)


def _is_simple_interior_root(f, z, residual):
    """Accept ``z`` only if it is a well-located simple root inside the disk.

    Near a multiple boundary root (multiplier one) ``|f(z) - z|`` is tiny
    over a whole neighbourhood, so the residual alone proves nothing; the
    Newton correction ``|g/g'|`` measures how well the root is pinned down.
    Interior fixed points of non-identity maps are always simple.
    """
    if residual > INTERIOR_RESIDUAL or abs(z) >= 1 - BOUNDARY_TOL:
        return False
    try:
        d = f.slope_at(z) - 1
        step = abs((f.at(z) - z) / d) if d != 0 else math.inf
    except ZeroDivisionError:
        return False
    return step <= 1e-10 and 1 - abs(z) > 100 * step


def _seeds():
    yield 0j
    for r in (0.4, 0.8):
        for k in range(8):
            yield r * cmath.exp(2j * math.pi * (k + 0.5 * (r > 0.5)) / 8)


def interior_fixed_point(f: SelfMap):
    """The interior fixed point of a non-identity disk self-map, or None."""
    _require_disk(f)
    if is_identity(f):
        raise PreconditionError("the identity fixes every point; no unique interior fixed point")

    def g(z):
        return f.at(z) - z

    def dg(z):
        return f.slope_at(z) - 1

    for seed in _seeds():
        z, r = _damped_newton(g, dg, seed, INTERIOR_RESIDUAL * 0.01)
        if _is_simple_interior_root(f, z, r):
            return z
    return None


def _richardson(values, order=2):
    """Eliminate ``h`` and ``h^2`` terms from estimates taken at step sizes halving each time."""
    table = [list(values)]
    for j in range(1, order + 1):
        prev = table[-1]
        fac = 2.0**j
        table.append([(fac * prev[k + 1] - prev[k]) / (fac - 1) for k in range(len(prev) - 1)])
    return table[-1]


def radial_ratios(f: SelfMap, alpha, kmin=4, kmax=20):
    """``(1 - |f(r alpha)|) / (1 - r)`` at ``r = 1 - 2^-k``."""
    alpha = complex(alpha)
    hs = 2.0 ** -np.arange(kmin, kmax + 1)
    vals = np.abs(np.asarray(f((1 - hs) * alpha)))
    return hs, (1 - vals) / hs


def angular_derivative(f: SelfMap, alpha, check=True) -> float:
    """Radial limit of ``(1 - |f(r alpha)|) / (1 - r)`` at a boundary fixed point.

    Order-2 Richardson extrapolation over ``r = 1 - 2^-k``, ``k = 4..20``.
    Returns ``math.inf`` when the ratios blow up.  With ``check`` the result
    is compared against the analytic ``f'(alpha)``.
    """
    _require_disk(f)
    alpha = complex(alpha)
    if abs(complex(f(alpha)) - alpha) > BOUNDARY_TOL:
        raise PreconditionError(f"{alpha} is not a boundary fixed point")
    _, ratios = radial_ratios(f, alpha)
    tail = ratios[-6:]
    if tail[-1] > 1e6 or (np.all(np.diff(tail) > 0) and np.all(tail[1:] / tail[:-1] > 1.3)):
        return math.inf
    est = _richardson(ratios)
    value, previous = float(est[-1]), float(est[-2])
    if abs(value - previous) > 1e-6 * max(1.0, abs(value)):
        raise NonConvergenceError(
            "radial extrapolation did not settle",
            {"alpha": alpha, "last_estimates": [previous, value]},
        )
    if check:
        analytic = complex(f.derivative(alpha))
        if abs(analytic - value) > 1e-6 * max(1.0, abs(value)):
            raise NonConvergenceError(
                "radial angular derivative disagrees with f'(alpha)",
                {"alpha": alpha, "radial": value, "analytic": analytic},
            )
    return value


def boundary_multiplier(f: SelfMap, alpha) -> float:
    """Angular derivative reported in fixed-point records.

    The radial extrapolation certifies the value; the analytic derivative,
    which every map built from a MapSpec has, supplies the digits.
    """
    angular_derivative(f, alpha, check=True)
    return float(complex(f.derivative(alpha)).real)


# --------------------------------------------------------------------------
# Denjoy-Wolff point


def wolff_approximants(f: SelfMap, max_power=20):
    """Fixed points ``alpha_n`` of ``(1 - 1/n) f`` for ``n = 2, 4, ..., 2**max_power``.

    Each solve is warm-started from the previous one.  Stops early once the
    sequence has settled to machine precision (interior limit).
    """
    _require_disk(f)
    out = []
    z = 0j
    for p in range(1, max_power + 1):
        n = 2**p
        s = 1.0 - 1.0 / n

        def g(x, s=s):
            return s * f.at(x) - x

        def dg(x, s=s):
            return s * f.slope_at(x) - 1

        z, r = _damped_newton(g, dg, z, 1e-15, maxiter=200)
        if r > 1e-12:
            raise NonConvergenceError(
                f"Newton failed for the fixed point of (1 - 1/{n}) f",
                {"n": n, "residual": r, "approximants": out},
            )
        out.append((n, z))
        if len(out) >= 3 and abs(out[-1][1] - out[-2][1]) < 1e-15:
            break
    return out


def _boundary_dw_near(f: SelfMap, estimate, tolerance, diagnostics, resolution=2048):
    """The boundary fixed point with multiplier <= 1 closest to ``estimate``."""
    scan = boundary_fixed_points(f, resolution)
    best = None
    for alpha in scan.points:
        mult = boundary_multiplier(f, alpha)
        if mult > 1 + MULTIPLIER_TOL:
            continue
        dist = abs(alpha - estimate)
        if best is None or dist < best[0]:
            best = (dist, alpha, mult)
    if best is None or best[0] > tolerance:
        diagnostics = dict(diagnostics, boundary_points=scan.points, estimate=estimate)
        raise NonConvergenceError("no boundary fixed point with multiplier <= 1 near the limit", diagnostics)
    return FixedPointRecord(best[1], "boundary", best[2], True)


def _interior_record(f, z):
    return FixedPointRecord(z, "interior", complex(f.slope_at(z)), True)


def _polish_interior(f, z0):
    z, r = _damped_newton(lambda x: f.at(x) - x, lambda x: f.slope_at(x) - 1, z0, 1e-15)
    if _is_simple_interior_root(f, z, r):
        return z
    return None


def _dw_wolff(f, max_power=20):
    approx = wolff_approximants(f, max_power)
    last = approx[-1][1]
    z = _polish_interior(f, last)
    if z is not None and abs(z - last) < 1e-3:
        return _interior_record(f, z)
    # alpha_n ~ alpha + c/n near a hyperbolic boundary point: one Richardson step
    if len(approx) >= 2:
        est = 2 * approx[-1][1] - approx[-2][1]
    else:
        est = last
    est = est / abs(est) if est != 0 else 1 + 0j
    gap = 1 - abs(last)
    return _boundary_dw_near(f, est, 0.1 + 10 * gap, {"method": "wolff", "approximants": approx})


def _iterate(step, z0, max_steps):
    """Run ``z <- step(z)``; returns (z, status, steps, history tail)."""
    z = complex(z0)
    near_boundary = 0
    tail = []
    for k in range(max_steps):
        zn = step(z)
        if abs(zn - z) < 1e-13:
            return zn, "stalled", k + 1, tail
        if 1 - abs(zn) < 1e-9:
            near_boundary += 1
            if near_boundary >= 50:
                return zn, "boundary", k + 1, tail
        else:
            near_boundary = 0
        z = zn
        if k % 1000 == 0:
            tail.append(abs(z))
    return z, "exhausted", max_steps, tail


def _dw_iterate(f, max_steps=200_000):
    z, status, steps, tail = _iterate(f.at, 0j, max_steps)
    diag = {"method": "iterate", "steps": steps, "status": status, "last": z}
    if status == "stalled" and abs(z) < 1 - BOUNDARY_TOL:
        return _interior_record(f, _polish_interior(f, z) or z)
    escaping = len(tail) >= 3 and all(b >= a for a, b in zip(tail[-3:], tail[-2:])) and abs(z) > 0.99
    if status in ("stalled", "boundary") or escaping:
        est = z / abs(z)
        return _boundary_dw_near(f, est, 0.1 + 10 * (1 - abs(z)), diag)
    # elliptic automorphisms rotate around their fixed point forever; the
    # averaged map (z + f(z))/2 has the same fixed points and contracts there
    z, status, steps, _ = _iterate(lambda x: 0.5 * (x + f.at(x)), 0j, max_steps)
    diag.update(averaged_status=status, averaged_steps=steps, averaged_last=z)
    if status == "stalled" and abs(z) < 1 - BOUNDARY_TOL:
        polished = _polish_interior(f, z)
        if polished is not None:
            return _interior_record(f, polished)
    raise NonConvergenceError("iteration did not settle", diag)


def denjoy_wolff(f: SelfMap, method="wolff") -> FixedPointRecord:
    """The distinguished fixed point with multiplier of modulus at most one."""
    _require_disk(f)
    if is_identity(f):
        raise PreconditionError("the identity has no Denjoy-Wolff point")
    if method == "wolff":
        return _dw_wolff(f)
    if method == "iterate":
        return _dw_iterate(f)
    raise ValueError(f"unknown method {method!r}; expected 'wolff' or 'iterate'")


# --------------------------------------------------------------------------
# full analysis


@dataclass
class AnalysisReport:
    map: dict
    fixed_points: list
    identity: bool = False
    notes: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    @property
    def denjoy_wolff(self):
        for rec in self.fixed_points:
            if rec.is_denjoy_wolff:
                return rec
        return None

    @property
    def boundary(self):
        return [r for r in self.fixed_points if r.kind == "boundary"]

    @property
    def interior(self):
        return [r for r in self.fixed_points if r.kind == "interior"]

    def to_dict(self) -> dict:
        return {
            "map": self.map,
            "identity": self.identity,
            "fixed_points": [r.to_dict() for r in self.fixed_points],
            "method": self.notes,
            "tolerances": self.tolerances,
        }


def analyze(f: SelfMap, resolution=2048) -> AnalysisReport:
    """Locate and classify every fixed point of a disk self-map."""
    _require_disk(f)
    tolerances = {
        "boundary_residual": BOUNDARY_RESIDUAL,
        "interior_residual": INTERIOR_RESIDUAL,
        "multiplier": MULTIPLIER_TOL,
        "boundary": BOUNDARY_TOL,
        "resolution": resolution,
    }
    spec = spec_to_dict(f.spec)
    if is_identity(f):
        return AnalysisReport(spec, [], True, {"identity": "every point is fixed"}, tolerances)

    notes = {"interior": "damped Newton, 17 seeds", "boundary": "lifted-phase scan"}
    interior = interior_fixed_point(f)
    scan = boundary_fixed_points(f, resolution)
    if scan.message:
        notes["boundary_scan"] = scan.message
    boundary = [(alpha, boundary_multiplier(f, alpha)) for alpha in scan.points]

    records = []
    if interior is not None:
        records.append(_interior_record(f, interior))
        records += [FixedPointRecord(a, "boundary", m, False) for a, m in boundary]
        notes["denjoy_wolff"] = "interior fixed point"
    else:
        dw = [k for k, (_, m) in enumerate(boundary) if m <= 1 + MULTIPLIER_TOL]
        if dw:
            pick = min(dw, key=lambda k: boundary[k][1])
            records += [FixedPointRecord(a, "boundary", m, k == pick) for k, (a, m) in enumerate(boundary)]
            notes["denjoy_wolff"] = "unique boundary fixed point with multiplier <= 1"
        else:
            rec = denjoy_wolff(f, "wolff")
            records += [FixedPointRecord(a, "boundary", m, False) for a, m in boundary]
            records.append(rec)
            notes["denjoy_wolff"] = "Wolff approximants"

    mults = [m for _, m in boundary]
    if len(mults) >= 2:
        s = sorted(mults)
        notes["min_pair_product"] = s[0] * s[1]
    return AnalysisReport(spec, records, False, notes, tolerances)
