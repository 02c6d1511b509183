"""Command-line entry point: ``juliawolff analyze|verify|dw|render``.

Exit codes: 0 success (or all checks pass), 1 input error, 2 validation
failure, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import render, verifiers
from .errors import JuliaWolffError, NonConvergenceError, PreconditionError, SpecError
from .fixedpoints import analyze, denjoy_wolff
from .geometry import _complex_to_dict
from .selfmaps import (
    DISK,
    conjugate_to_halfplane,
    is_identity,
    load_map,
    spec_to_dict,
    validate_selfmap,
)

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_NONCONVERGENCE = 0, 1, 2, 3

INEQUALITIES = (
    "schwarz",
    "schwarz-pick",
    "jack",
    "julia-wolff-disk",
    "unkelbach",
    "boundary-product",
    "uhp-pick",
    "julia",
    "wolff-monotonicity",
)
FIGURES = ("circles", "julia-disks", "inversion", "horocycles", "orbit")
FIG1_RADII = (0.25, 0.5, 0.75, 0.875)
FIG4_RADII = (2 / 3, 1 / 2, 1 / 3, 1 / 6)


class InputError(Exception):
    """Bad flags or inputs; maps to exit code 1."""


_POLAR = re.compile(r"^\s*([+-]?[0-9.eE+-]+)\s*@\s*([+-]?[0-9.eE+-]+)\s*(deg|rad)?\s*$")


def parse_complex(text: str) -> complex:
    """Parse ``"re+imi"`` (``i`` or ``j``) or polar ``"r@THETAdeg"`` / ``"r@THETArad"``."""
    m = _POLAR.match(text)
    try:
        if m:
            r, theta, unit = float(m.group(1)), float(m.group(2)), m.group(3) or "deg"
            angle = math.radians(theta) if unit == "deg" else theta
            return complex(r * math.cos(angle), r * math.sin(angle))
        z = complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"complex literal must be finite: {text!r}")
    return z


def _radii(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of reals: {text!r}") from None


@dataclass
class RunConfig:
    command: str
    map_path: str | None = None
    tol: float = verifiers.MARGIN_TOL
    samples: int = 256
    seed: int = 42
    out: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        if self.samples < 64:
            raise InputError("--samples must be at least 64")
        if not 0 <= self.seed < 2**64:
            raise InputError("--seed must be a 64-bit unsigned integer")


# --------------------------------------------------------------------------
# output


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.path.abspath(path)
    directory = os.path.dirname(path)
    fd, tmp = tempfile.mkstemp(prefix=".juliawolff-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        # mkstemp creates the file 0600; give it the usual umask-derived mode
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(config: RunConfig, document, table: list):
    """Document to ``--out`` with the table on stdout, or the document on stdout."""
    text = document if isinstance(document, str) else json.dumps(document, indent=2, sort_keys=True) + "\n"
    if config.out:
        write_atomic(config.out, text)
        print("\n".join(table))
    else:
        sys.stdout.write(text)
        print("\n".join(table), file=sys.stderr)


def _fmt(x):
    if isinstance(x, complex):
        return f"{x.real:+.12f}{x.imag:+.12f}i"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _table(headers, rows):
    cols = [[str(h)] + [_fmt(r[k]) for r in rows] for k, h in enumerate(headers)]
    widths = [max(len(c) for c in col) for col in cols]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(_fmt(v).ljust(w) for v, w in zip(r, widths)))
    return lines


def _load(config: RunConfig):
    if not config.map_path:
        raise InputError("--map is required")
    try:
        return load_map(config.map_path)
    except OSError as exc:
        raise InputError(f"cannot read {config.map_path}: {exc.strerror}") from None


def _validation_failure(config, f, rep):
    doc = {"map": spec_to_dict(f.spec), "validation": rep.to_dict()}
    _emit(config, doc, [f"validation failed: {rep.reason}",
                        f"  max modulus {rep.max_modulus:.6g} at {_fmt(rep.witness)}"])
    return EXIT_INVALID


# --------------------------------------------------------------------------
# subcommands


def cmd_analyze(config: RunConfig) -> int:
    f = _load(config)
    rep = validate_selfmap(f)
    if not rep.passed:
        return _validation_failure(config, f, rep)
    if f.model != DISK:
        raise InputError("analyze expects a disk map")
    report = analyze(f, resolution=config.options.get("resolution", 2048))
    doc = report.to_dict()
    doc["validation"] = rep.to_dict()
    if report.identity:
        table = ["identity map: every point is fixed"]
    else:
        rows = [(r.kind, r.location, r.multiplier, "yes" if r.is_denjoy_wolff else "")
                for r in report.fixed_points]
        table = _table(("kind", "location", "multiplier", "DW"), rows)
    _emit(config, doc, table)
    return EXIT_OK


def _conjugate_at_dw(f, report):
    """Half-plane conjugate placing a boundary fixed point at 0, with its multiplier."""
    if report.identity:
        # every boundary point is fixed with multiplier 1
        return conjugate_to_halfplane(f, -1), 1.0
    pts = report.boundary
    if not pts:
        return None, None
    pick = next((r for r in pts if r.is_denjoy_wolff), pts[0])
    return conjugate_to_halfplane(f, pick.location), pick.multiplier


def _run_check(name, fn, seed):
    try:
        return fn()
    except PreconditionError as exc:
        return verifiers.skipped_report(name, str(exc), seed)


def _disk_checks(f, names, config):
    seed, n = config.seed, config.samples
    report = analyze(f)
    g, beta = _conjugate_at_dw(f, report)
    no_conj = "no boundary fixed point to move to the half-plane origin"

    def boundary_product():
        pts = report.boundary
        if len(pts) < 2:
            raise PreconditionError("fewer than two boundary fixed points")
        pairs = [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
        a, b = min(pairs, key=lambda p: p[0].multiplier * p[1].multiplier)
        return verifiers.check_boundary_product(f, a.location, b.location)

    def need_conj(fn):
        def run():
            if g is None:
                raise PreconditionError(no_conj)
            return fn()
        return run

    table = {
        "schwarz": lambda: verifiers.check_schwarz(f, seed=seed, samples=n),
        "schwarz-pick": lambda: verifiers.check_schwarz_pick(f, seed=seed, samples=n),
        "jack": lambda: verifiers.check_jack(f),
        "julia-wolff-disk": lambda: verifiers.check_julia_wolff_disk(f, seed=seed, samples=n),
        "unkelbach": lambda: verifiers.check_unkelbach(f),
        "boundary-product": boundary_product,
        "uhp-pick": need_conj(lambda: verifiers.check_uhp_pick(g, seed=seed, samples=n)),
        "julia": need_conj(lambda: verifiers.check_julia(g, beta, seed=seed, samples=n)),
        "wolff-monotonicity": need_conj(lambda: verifiers.check_wolff_monotonicity(g)),
    }
    return [_run_check(name, table[name], seed) for name in names]


def _uhp_beta(g):
    """Multiplier at the boundary fixed point 0, ``lim Im g(iy) / y``."""
    if abs(complex(g(0j))) > 1e-9:
        raise PreconditionError("0 is not a boundary fixed point")
    return float(complex(g.derivative(0j)).real)


def _uhp_checks(g, names, config):
    seed, n = config.seed, config.samples

    def julia():
        return verifiers.check_julia(g, _uhp_beta(g), seed=seed, samples=n)

    def disk_only():
        raise PreconditionError("requires a disk map")

    table = {
        "uhp-pick": lambda: verifiers.check_uhp_pick(g, seed=seed, samples=n),
        "julia": julia,
        "wolff-monotonicity": lambda: verifiers.check_wolff_monotonicity(g),
    }
    return [_run_check(name, table.get(name, disk_only), seed) for name in names]


def cmd_verify(config: RunConfig) -> int:
    f = _load(config)
    rep = validate_selfmap(f)
    if not rep.passed:
        return _validation_failure(config, f, rep)
    which = config.options.get("inequality", "all")
    names = list(INEQUALITIES) if which == "all" else [which]
    reports = (_disk_checks if f.model == DISK else _uhp_checks)(f, names, config)
    for r in reports:
        r.tolerance = config.tol
    ok = all(r.passed for r in reports)
    doc = {"map": spec_to_dict(f.spec), "seed": config.seed, "all_pass": ok,
           "reports": [r.to_dict() for r in reports]}
    rows = [(r.name, r.status if r.skipped else ("pass" if r.passed else "FAIL"),
             "" if r.skipped else float(r.worst_margin),
             "" if r.witness is None else r.witness, "yes" if r.equality else "")
            for r in reports]
    _emit(config, doc, _table(("inequality", "status", "worst margin", "witness", "equality"), rows))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_dw(config: RunConfig) -> int:
    f = _load(config)
    rep = validate_selfmap(f)
    if not rep.passed:
        return _validation_failure(config, f, rep)
    if f.model != DISK:
        raise InputError("dw expects a disk map")
    if is_identity(f):
        raise InputError("the identity has no Denjoy-Wolff point")
    method = config.options.get("method", "wolff")
    methods = ("wolff", "iterate") if method == "both" else (method,)
    records = {m: denjoy_wolff(f, m) for m in methods}
    doc = {"map": spec_to_dict(f.spec), "method": method,
           "records": {m: r.to_dict() for m, r in records.items()}}
    rows = [(m, r.kind, r.location, r.multiplier) for m, r in records.items()]
    table = _table(("method", "kind", "location", "multiplier"), rows)
    code = EXIT_OK
    if method == "both":
        dist = abs(records["wolff"].location - records["iterate"].location)
        doc["agreement"] = bool(dist <= 1e-6)
        doc["distance"] = dist
        table.append(f"agreement: {doc['agreement']} (distance {dist:.3e})")
        if not doc["agreement"]:
            code = EXIT_NONCONVERGENCE
    _emit(config, doc, table)
    return code


_FIGURE_FLAGS = {
    "circles": ("--zeta",),
    "julia-disks": ("--zeta", "--fzeta", "--r"),
    "inversion": ("--zeta", "--fzeta", "--r"),
    "horocycles": ("--alpha-deg",),
    "orbit": ("--map", "--z0"),
}


def cmd_render(config: RunConfig) -> int:
    opt = config.options
    figure = opt.get("figure")
    if figure is None:
        raise InputError("--figure is required (one of: " + ", ".join(FIGURES) + ")")
    present = {"--zeta": opt.get("zeta"), "--fzeta": opt.get("fzeta"), "--r": opt.get("r"),
               "--alpha-deg": opt.get("alpha_deg"), "--map": config.map_path, "--z0": opt.get("z0")}
    missing = [flag for flag in _FIGURE_FLAGS[figure] if present[flag] is None]
    if missing:
        raise InputError(f"--figure {figure} requires " + ", ".join(_FIGURE_FLAGS[figure])
                         + " (missing: " + ", ".join(missing) + ")")
    radii = opt.get("radii")
    if figure == "circles":
        scene = render.render_circles(opt["zeta"], FIG1_RADII if radii is None else radii)
    elif figure == "horocycles":
        scene = render.render_horocycles(opt["alpha_deg"], FIG4_RADII if radii is None else radii)
    elif figure == "julia-disks":
        scene = render.render_julia_disks(opt["zeta"], opt["fzeta"], opt["r"])
    elif figure == "inversion":
        zeta, fzeta = opt["zeta"], opt["fzeta"]
        if zeta.imag <= 0 or fzeta.imag <= 0:
            raise InputError("--zeta and --fzeta must lie in the upper half-plane")
        scene = render.render_inversion(opt["r"], fzeta.imag / zeta.imag)
    else:
        f = _load(config)
        rep = validate_selfmap(f)
        if not rep.passed:
            return _validation_failure(config, f, rep)
        scene = render.render_orbit(f, opt["z0"], opt.get("steps", 50))
    if not scene.within_viewport():
        raise JuliaWolffError("scene does not fit its viewport")
    if opt.get("scene"):
        write_atomic(opt["scene"], scene.dump())
    counts = {}
    for p in scene.primitives:
        counts[type(p).__name__] = counts.get(type(p).__name__, 0) + 1
    _emit(config, scene.to_svg(),
          [f"figure {figure}: " + ", ".join(f"{v} {k.lower()}" for k, v in sorted(counts.items()))])
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "dw": cmd_dw, "render": cmd_render}


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", dest="map_path", metavar="PATH", help="map spec (JSON)")
    common.add_argument("--tol", type=float, default=verifiers.MARGIN_TOL,
                        help="pass tolerance on worst margins (default %(default)g)")
    common.add_argument("--samples", type=int, default=256, help="grid size (default %(default)s)")
    common.add_argument("--seed", type=int, default=42, help="grid seed (default %(default)s)")
    common.add_argument("--out", metavar="PATH", help="write the report here (default: stdout)")

    parser = _Parser(prog="juliawolff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="locate and classify fixed points")
    p.add_argument("--resolution", type=int, default=2048, help="boundary scan points")

    p = sub.add_parser("verify", parents=[common], help="run inequality checks")
    p.add_argument("--inequality", default="all", choices=("all",) + INEQUALITIES)

    p = sub.add_parser("dw", parents=[common], help="Denjoy-Wolff point")
    p.add_argument("--method", default="wolff", choices=("wolff", "iterate", "both"))

    p = sub.add_parser("render", parents=[common], help="emit an SVG figure")
    p.add_argument("--figure", choices=FIGURES)
    p.add_argument("--zeta", type=parse_complex)
    p.add_argument("--fzeta", type=parse_complex)
    p.add_argument("--r", type=float)
    p.add_argument("--alpha-deg", type=float)
    p.add_argument("--radii", type=_radii, help="comma-separated radii")
    p.add_argument("--z0", type=parse_complex)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--scene", metavar="PATH", help="also write the scene dump here")
    return parser


_OPTION_KEYS = ("resolution", "inequality", "method", "figure", "zeta", "fzeta", "r",
                "alpha_deg", "radii", "z0", "steps", "scene")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            args.command, args.map_path, args.tol, args.samples, args.seed, args.out,
            {k: getattr(args, k) for k in _OPTION_KEYS if getattr(args, k, None) is not None},
        )
        return COMMANDS[args.command](config)
    except SpecError as exc:
        print(f"error: malformed map spec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(json.dumps(exc.diagnostics, default=_diag_default, sort_keys=True), file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (InputError, JuliaWolffError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _diag_default(obj):
    if isinstance(obj, complex):
        return _complex_to_dict(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return repr(obj)


if __name__ == "__main__":
    raise SystemExit(main())
