"""Static SVG diagrams: non-Euclidean circles, Julia's two disks, horocycles, orbits.

A :class:`Scene` keeps every primitive in model coordinates together with the
data that defines it (pseudo radius, horocycle level, ...).  The pixel map is
an affine fit of the scene's bounding box into the viewport, so emitted
files depend only on the inputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError
from .geometry import (
    EuclideanCircle,
    Horocycle,
    NonEuclideanCircle,
    _complex_to_dict,
    horocycle_to_euclidean,
    noneuclidean_circle_to_euclidean,
)
from .selfmaps import DISK, SelfMap, is_identity, validate_selfmap

VIEWPORT = 600
MARGIN = 36
DECIMALS = 3


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    dashed: bool = False
    label: str = ""
    meta: dict = field(default_factory=dict, hash=False, compare=False)

    def bbox(self):
        c, r = self.center, self.radius
        return c.real - r, c.imag - r, c.real + r, c.imag + r


@dataclass(frozen=True)
class Dot:
    position: complex
    label: str = ""
    meta: dict = field(default_factory=dict, hash=False, compare=False)

    def bbox(self):
        p = self.position
        return p.real, p.imag, p.real, p.imag


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex
    dashed: bool = False
    label: str = ""
    meta: dict = field(default_factory=dict, hash=False, compare=False)

    def bbox(self):
        a, b = self.start, self.end
        return min(a.real, b.real), min(a.imag, b.imag), max(a.real, b.real), max(a.imag, b.imag)


@dataclass(frozen=True)
class Polyline:
    points: tuple
    dashed: bool = False
    label: str = ""
    meta: dict = field(default_factory=dict, hash=False, compare=False)

    def bbox(self):
        xs = [p.real for p in self.points]
        ys = [p.imag for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass
class Scene:
    """Primitives in model coordinates plus the affine map to pixels.

    ``scale`` is pixels per model unit and ``origin`` the model point drawn
    at the viewport center; the unit circle frame, when present, has pixel
    radius ``scale``.
    """

    title: str
    primitives: list = field(default_factory=list)
    width: int = VIEWPORT
    height: int = VIEWPORT
    scale: float = 1.0
    origin: complex = 0j
    frame: bool = False

    def add(self, prim):
        self.primitives.append(prim)
        return prim

    def fit(self):
        boxes = [p.bbox() for p in self.primitives] or [(-1.0, -1.0, 1.0, 1.0)]
        x0 = min(b[0] for b in boxes)
        y0 = min(b[1] for b in boxes)
        x1 = max(b[2] for b in boxes)
        y1 = max(b[3] for b in boxes)
        span = max(x1 - x0, y1 - y0, 1e-9)
        self.scale = (min(self.width, self.height) - 2 * MARGIN) / span
        self.origin = complex((x0 + x1) / 2, (y0 + y1) / 2)
        return self

    def to_pixels(self, z):
        z = complex(z) - self.origin
        return self.width / 2 + self.scale * z.real, self.height / 2 - self.scale * z.imag

    def within_viewport(self, slack=0.5) -> bool:
        for p in self.primitives:
            x0, y0, x1, y1 = p.bbox()
            for corner in (complex(x0, y0), complex(x1, y1)):
                px, py = self.to_pixels(corner)
                if not (-slack <= px <= self.width + slack and -slack <= py <= self.height + slack):
                    return False
        return True

    @property
    def circles(self):
        return [p for p in self.primitives if isinstance(p, Circle)]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "width": self.width,
            "height": self.height,
            "transform": {"scale": self.scale, "origin": _complex_to_dict(self.origin)},
            "primitives": [_prim_dict(p) for p in self.primitives],
        }

    def dump(self) -> str:
        """Structured-text form used for golden comparisons."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_svg(self) -> str:
        return _svg(self)


def _jsonable(v):
    if isinstance(v, complex):
        return _complex_to_dict(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _prim_dict(p) -> dict:
    out = {"type": type(p).__name__.lower()}
    if isinstance(p, Circle):
        out.update(center=_complex_to_dict(p.center), radius=p.radius, dashed=p.dashed)
    elif isinstance(p, Dot):
        out.update(position=_complex_to_dict(p.position))
    elif isinstance(p, Segment):
        out.update(start=_complex_to_dict(p.start), end=_complex_to_dict(p.end), dashed=p.dashed)
    else:
        out.update(points=[_complex_to_dict(z) for z in p.points], dashed=p.dashed)
    if p.label:
        out["label"] = p.label
    if p.meta:
        out["meta"] = {k: _jsonable(v) for k, v in p.meta.items()}
    return out


# --------------------------------------------------------------------------
# SVG emission


def _f(x):
    s = f"{x:.{DECIMALS}f}"
    return "0.000" if s == "-0.000" else s


_DASH = ' stroke-dasharray="6 4"'


def _label_svg(x, y, text, dx=6, dy=-6):
    return (f'<text x="{_f(x + dx)}" y="{_f(y + dy)}" font-family="serif" font-size="16" '
            f'font-style="italic">{escape(text)}</text>')


def _svg(scene: Scene) -> str:
    w, h = scene.width, scene.height
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f"<title>{escape(scene.title)}</title>",
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        '<g fill="none" stroke="black" stroke-width="1.5">',
    ]
    labels = []
    for p in scene.primitives:
        dash = _DASH if getattr(p, "dashed", False) else ""
        if isinstance(p, Circle):
            x, y = scene.to_pixels(p.center)
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(p.radius * scene.scale)}"{dash}/>')
            if p.label:
                lx, ly = scene.to_pixels(p.center + p.radius * np.exp(0.25j * np.pi))
                labels.append(_label_svg(lx, ly, p.label))
        elif isinstance(p, Dot):
            x, y = scene.to_pixels(p.position)
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3.000" fill="black" stroke="none"/>')
            if p.label:
                labels.append(_label_svg(x, y, p.label))
        elif isinstance(p, Segment):
            x0, y0 = scene.to_pixels(p.start)
            x1, y1 = scene.to_pixels(p.end)
            out.append(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y1)}"{dash}/>')
            if p.label:
                labels.append(_label_svg((x0 + x1) / 2, (y0 + y1) / 2, p.label, dy=4))
        else:
            pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in map(scene.to_pixels, p.points))
            out.append(f'<polyline points="{pts}"{dash}/>')
    out.append("</g>")
    out += labels
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# figures


def _disk_frame(scene: Scene):
    scene.frame = True
    scene.add(Circle(0j, 1.0, dashed=True, meta={"role": "unit circle"}))
    scene.add(Dot(0j, "0"))
    scene.add(Dot(1 + 0j, "1"))


def render_circles(zeta, radii=()) -> Scene:
    """Non-Euclidean circles about ``zeta`` with the given pseudo radii."""
    zeta = complex(zeta)
    scene = Scene("Some circles with non-Euclidean center zeta")
    _disk_frame(scene)
    scene.add(Dot(zeta, "ζ"))
    for rho in radii:
        c = noneuclidean_circle_to_euclidean(NonEuclideanCircle(zeta, rho))
        scene.add(Circle(c.center, c.radius, meta={"noneuclidean_center": zeta, "pseudo_radius": float(rho)}))
    return scene.fit()


def render_horocycles(alpha_deg, radii=()) -> Scene:
    """Horocycles of the given Euclidean radii, all touching the unit circle at one point."""
    alpha = complex(np.exp(1j * math.radians(float(alpha_deg))))
    scene = Scene("Some horocycles")
    _disk_frame(scene)
    for r in radii:
        h = Horocycle.with_radius(alpha, float(r))
        c = horocycle_to_euclidean(h)
        scene.add(Circle(c.center, c.radius, meta={"contact": alpha, "level": h.level}))
    scene.add(Dot(alpha, "α"))
    return scene.fit()


def _tangent_points(center, radius, p):
    """Points where the two tangent lines from ``p`` touch the circle."""
    d = center - p
    dist = abs(d)
    if dist <= radius:
        return []
    half = math.asin(radius / dist)
    length = math.sqrt(dist**2 - radius**2)
    u = d / dist
    return [p + length * u * np.exp(s * 1j * half) for s in (1, -1)]


def uhp_disk(zeta, r) -> EuclideanCircle:
    """Euclidean circle of radius ``r`` whose non-Euclidean center is ``zeta``.

    A hyperbolic disk about ``x + iy`` of hyperbolic radius ``d`` has
    Euclidean center ``x + i y cosh d`` and radius ``y sinh d``.
    """
    zeta = complex(zeta)
    return EuclideanCircle(complex(zeta.real, math.hypot(zeta.imag, r)), r)


def render_julia_disks(zeta, f_zeta, r) -> Scene:
    """Two congruent non-Euclidean disks about ``zeta`` and ``f_zeta`` and the dilation linking them."""
    zeta, f_zeta, r = complex(zeta), complex(f_zeta), float(r)
    if zeta.imag <= 0 or f_zeta.imag <= 0:
        raise DomainError("zeta and f(zeta) must lie in the upper half-plane")
    if not r > 0:
        raise DomainError("r must be positive")
    k = f_zeta.imag / zeta.imag
    c1 = uhp_disk(zeta, r)
    c2 = uhp_disk(f_zeta, k * r)
    scene = Scene("Two congruent non-Euclidean disks")
    scene.add(Circle(c1.center, c1.radius, meta={"noneuclidean_center": zeta}))
    scene.add(Circle(c2.center, c2.radius, meta={"noneuclidean_center": f_zeta, "ratio": k}))
    scene.add(Dot(zeta, "ζ"))
    scene.add(Dot(f_zeta, "f(ζ)"))
    scene.add(Dot(c1.center))
    scene.add(Dot(c2.center))
    scene.add(Segment(c1.center, c1.center + 1j * c1.radius, label="r"))
    scene.add(Segment(c2.center, c2.center + 1j * c2.radius, label="R"))
    scene.add(Segment(complex(zeta.real, 0), zeta, dashed=True, label="Im ζ"))
    scene.add(Segment(complex(f_zeta.real, 0), f_zeta, dashed=True, label="Im f(ζ)"))

    xs = [zeta.real, f_zeta.real, c1.center.real - r, c2.center.real + k * r]
    if abs(k - 1) > 1e-12:
        # center of the dilation taking zeta to f(zeta)
        p = complex((f_zeta.real - k * zeta.real) / (1 - k), 0)
        scene.add(Dot(p, "p", meta={"role": "dilation center"}))
        for target in (f_zeta, c2.center, c2.center + 1j * c2.radius):
            scene.add(Segment(p, target, dashed=True))
        big = c2 if k >= 1 else c1
        for t in _tangent_points(big.center, big.radius, p):
            scene.add(Segment(p, t, dashed=True, meta={"role": "tangent"}))
        xs.append(p.real)
    pad = 0.25 * (max(xs) - min(xs) + 1)
    scene.add(Segment(complex(min(xs) - pad, 0), complex(max(xs) + pad, 0), meta={"role": "real axis"}))
    return scene.fit()


def render_inversion(r, ratio, z_angle_deg=120.0, f_z=None, panel_gap=None) -> Scene:
    """Limiting Julia configuration and its image under ``w -> -1/w``.

    Left panel: circles of radii ``r`` and ``R = ratio * r`` tangent to the
    real axis at 0, a point ``z`` on the small circle and a point ``f(z)``
    in the large disk.  Right panel: the same objects mapped pointwise by
    ``-1/w``; the circles become the lines ``Im = 1/(2r)`` and ``1/(2R)``.
    """
    r, ratio = float(r), float(ratio)
    if not (r > 0 and ratio > 0):
        raise DomainError("r and ratio must be positive")
    big_r = ratio * r
    small = EuclideanCircle(1j * r, r)
    big = EuclideanCircle(1j * big_r, big_r)
    z = small.center + r * np.exp(1j * math.radians(float(z_angle_deg)))
    f_z = complex(1j * big_r + 0.4 * big_r) if f_z is None else complex(f_z)

    scene = Scene("Inverting the limiting configuration")
    scene.add(Circle(big.center, big.radius, meta={"panel": "limit"}))
    scene.add(Circle(small.center, small.radius, meta={"panel": "limit"}))
    scene.add(Segment(small.center, small.center + 1j * r, label="r"))
    scene.add(Segment(big.center, big.center + 1j * big_r, label="R"))
    scene.add(Dot(0j, "0"))
    scene.add(Dot(complex(z), "z"))
    scene.add(Dot(f_z, "f(z)"))
    half = max(big_r, 1.0)
    scene.add(Segment(complex(-half, 0), complex(half, 0), meta={"role": "real axis"}))

    def inv(w):
        return -1 / np.asarray(w, dtype=complex)

    shift = (2 * half + 1.0) if panel_gap is None else float(panel_gap)
    images = []
    for circ, name in ((small, "1/(2r)"), (big, "1/(2R)")):
        # every circle point except the tangency at 0 lands on one horizontal line
        pts = circ.points(64, phase=0.5 * math.pi / 32)
        pts = pts[np.abs(pts) > 1e-9]
        img = inv(pts)
        height = float(np.median(img.imag))
        images.append(height)
        scene.add(Segment(complex(shift - half, height), complex(shift + half, height), label=name,
                          meta={"panel": "image", "height": height, "spread": float(np.ptp(img.imag))}))
    scene.add(Segment(complex(shift - half, 0), complex(shift + half, 0), meta={"role": "real axis"}))
    scene.add(Dot(complex(shift, 0), "0"))
    scene.add(Dot(shift + inv(z).item(), "-1/z", meta={"panel": "image"}))
    scene.add(Dot(shift + inv(f_z).item(), "-1/f(z)", meta={"panel": "image"}))
    return scene.fit()


def render_orbit(f: SelfMap, z0, steps=50) -> Scene:
    """Orbit of ``z0`` under ``f`` with the Denjoy-Wolff point marked."""
    from .fixedpoints import analyze

    if f.model != DISK:
        raise DomainError("render_orbit expects a disk map")
    rep = validate_selfmap(f)
    if not rep.passed:
        raise DomainError(f"map failed validation: {rep.reason}")
    z = complex(z0)
    if abs(z) >= 1:
        raise DomainError("z0 must lie in the open disk")
    scene = Scene("Orbit")
    _disk_frame(scene)
    if is_identity(f):
        scene.add(Dot(z, "z0", meta={"role": "orbit"}))
        return scene.fit()
    orbit = [z]
    for _ in range(int(steps)):
        z = complex(f.at(z))
        orbit.append(z)
    scene.add(Polyline(tuple(orbit), meta={"role": "orbit", "steps": int(steps)}))
    scene.add(Dot(orbit[0], "z0"))
    dw = analyze(f).denjoy_wolff
    if dw is not None:
        scene.add(Dot(dw.location, "DW", meta={"kind": dw.kind, "multiplier": dw.multiplier}))
    return scene.fit()
