"""Command-line frontend: portraits, traces, verification reports, point clouds and asymptotes.

Exit codes: 0 success or verification pass, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from . import io as sio
from .contour import Window
from .errors import SlagError
from .forms import RadialPotential
from .portrait import auto_levels, phase_portrait
from .quadric import CaseKind, QuadricSpec, evaluate_immersion, random_sphere_config
from .verification import verify_calabi_yau, verify_lagrangian, verify_special_curve

log = logging.getLogger("slagquad")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
# options whose values may begin with '-' (e.g. ``--window -3,3,-3,3``)
_VALUE_OPTIONS = {"--window", "--start", "--levels", "--gamma", "--level"}
_COMPLEX_RE = re.compile(r"^[0-9eE.+\-ij]+$")


class UsageError(SlagError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``bi`` or ``a`` (spaces allowed, ``j`` accepted for ``i``)."""
    s = text.replace(" ", "").replace("I", "i")
    if not s or not _COMPLEX_RE.match(s):
        raise UsageError(f"cannot parse complex number {text!r}")
    s = s.replace("i", "j")
    try:
        z = complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"complex number {text!r} is not finite")
    return z


def parse_floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"non-finite value in {text!r}")
    return vals


def _fi(args) -> dyn.FirstIntegralSpec:
    return dyn.antiderivative_coefficients(args.n, CaseKind(args.case))


def _controls(args, **extra) -> dyn.TraceControls:
    return dyn.TraceControls(
        max_step=args.max_step, stop_radius=args.stop_radius, standoff=args.standoff, **extra
    )


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        sio.write_text(out, text)
        log.info("wrote %s", out)


def _asymptote_table(case: CaseKind, n: int) -> dict:
    table = {"infinity": dyn.asymptote_angles(case, n, dyn.Location.INFINITY), "plus_one": [], "minus_one": []}
    note = None
    if case is CaseKind.FLAT:
        note = "the flat case has no singular points at +-1; level-0 lines meet at the origin"
    elif n == 2:
        note = "for n = 2 the direction field is regular at +-1, so no branches leave there"
    else:
        table["plus_one"] = dyn.asymptote_angles(case, n, dyn.Location.PLUS_ONE)
        table["minus_one"] = dyn.asymptote_angles(case, n, dyn.Location.MINUS_ONE)
    table["note"] = note
    return table


def cmd_portrait(args) -> int:
    fi = _fi(args)
    window = Window(*parse_floats(args.window, 4), grid=args.grid)
    levels = auto_levels(fi) if args.levels is None else parse_floats(args.levels)
    curves = phase_portrait(fi, levels, window, _controls(args))
    table = _asymptote_table(fi.case, fi.n)
    payload = sio.portrait_payload(curves, window, table)
    payload["levels"] = [float(v) for v in sorted(levels)]
    fmt = args.format or (Path(args.out).suffix.lstrip(".").lower() or "svg")
    if fmt not in ("svg", "json", "csv"):
        raise UsageError(f"unknown portrait format {fmt!r}")
    # compute every output first, then write
    outputs = []
    if fmt == "svg":
        outputs.append((args.out, sio.portrait_svg(fi, curves, window, table["infinity"])))
        outputs.append((str(Path(args.out).with_suffix(".json")), sio.dumps(fi.case.value, fi.n, payload)))
    elif fmt == "json":
        outputs.append((args.out, sio.dumps(fi.case.value, fi.n, payload)))
    else:
        outputs.append((args.out, sio.portrait_csv(curves)))
    for path, text in outputs:
        _emit(text, path)
    return EXIT_OK


def cmd_trace(args) -> int:
    fi = _fi(args)
    start = parse_complex(args.start)
    ctl = _controls(args)
    if args.orientation == "both":
        curve = dyn.trace_through(fi, start, ctl, args.level)
    else:
        curve = dyn.trace_curve(fi, start, int(args.orientation), ctl, args.level)
    log.info("traced %d points, level %.17g, drift %.3e", len(curve), curve.level, curve.drift)
    if args.format == "csv":
        _emit(sio.trace_csv(fi, curve), args.out)
    else:
        _emit(sio.curve_document(curve), args.out)
    return EXIT_OK


def _potential(name: str) -> RadialPotential | None:
    return None if name == "none" else RadialPotential.by_name(name)


def cmd_verify(args) -> int:
    if args.which == "lagrangian":
        spec = QuadricSpec.sphere(args.n) if args.case == "sphere" else QuadricSpec.flat(args.n)
        pot = _potential(args.potential) if args.case == "sphere" else None
        report = verify_lagrangian(spec, pot, samples=args.samples, seed=args.seed)
        case, n = spec.case_kind.value, spec.n
    elif args.which == "slag":
        fi = _fi(args)
        rng = np.random.default_rng(args.seed)
        cfg = random_sphere_config(fi.n, rng)
        start = dyn.seed_on_level(fi, args.level) if args.start is None else parse_complex(args.start)
        curve = dyn.trace_through(fi, start, _controls(args), None if args.start else args.level)
        report = verify_special_curve(fi, curve, cfg)
        case, n = fi.case.value, fi.n
    else:
        pot = RadialPotential.by_name(args.potential if args.potential != "none" else "stenzel")
        report = verify_calabi_yau(samples=args.samples, seed=args.seed, pot=pot)
        case, n = CaseKind.SPHERE.value, 2
    _emit(sio.dumps(case, n, report.to_dict()), args.out)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {report.name}: max residual {report.max_residual:.3e} (tol {report.tolerance:g})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _load_curve(path: str) -> tuple[str, int, np.ndarray, np.ndarray | None]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read curve file: {exc}") from None
    doc = sio.loads(text)
    payload = doc["payload"]
    if not isinstance(payload, dict) or "points" not in payload:
        raise UsageError("curve file has no points")
    if doc["case"] not in ("flat", "sphere") or not isinstance(doc["n"], int) or doc["n"] < 2:
        raise UsageError("curve file has an unsupported case or n")
    points = sio.from_pairs(payload["points"])
    if len(points) == 0:
        raise UsageError("curve file has no points")
    roots = sio.from_pairs(payload["roots"]) if "roots" in payload else None
    if roots is not None and len(roots) != len(points):
        raise UsageError("curve file has mismatched points and roots")
    return doc["case"], int(doc["n"]), points, roots


def cmd_immerse(args) -> int:
    if args.curve is not None:
        case, n, points, roots = _load_curve(args.curve)
        if (args.case and args.case != case) or (args.n and args.n != n):
            raise UsageError("--case/--n disagree with the curve file")
    else:
        if args.gamma is None or args.case is None or args.n is None:
            raise UsageError("immerse needs --curve, or --case, --n and --gamma")
        case, n = args.case, args.n
        points = np.array([parse_complex(t) for t in args.gamma.split(",")])
        roots = None
    spec = QuadricSpec.sphere(n) if case == "sphere" else QuadricSpec.flat(n)
    fi = dyn.antiderivative_coefficients(n, CaseKind(case))
    if roots is None:
        roots = dyn.curve_from_points(fi, points).roots if len(points) > 1 else np.sqrt(spec.P(points))
    points, roots = points[:: args.stride], roots[:: args.stride]
    rng = np.random.default_rng(args.seed)
    cfgs = [random_sphere_config(n, rng) for _ in range(args.sphere_samples)]
    cloud, residuals = [], []
    for g, r in zip(points, roots):
        g, r = complex(g), complex(r)
        # stored roots are rounded; re-centre them on sqrt(P) without changing the branch
        exact = complex(np.sqrt(complex(spec.P(g))))
        r = exact if (exact * np.conj(r)).real >= 0 else -exact
        for cfg in cfgs:
            p = evaluate_immersion(spec, g, r, cfg)
            cloud.append(np.column_stack([p.z.real, p.z.imag]).ravel().tolist())
            residuals.append(p.residual(spec))
    payload = {
        "sphere_samples": args.sphere_samples,
        "seed": args.seed,
        "max_residual": float(max(residuals, default=0.0)),
        "residuals": [float(v) for v in residuals],
        "points": cloud,
    }
    _emit(sio.dumps(case, n, payload), args.out)
    return EXIT_OK


def cmd_asymptotes(args) -> int:
    case = CaseKind(args.case)
    table = _asymptote_table(case, args.n)
    if args.format == "json":
        _emit(sio.dumps(case.value, args.n, table), args.out)
        return EXIT_OK
    lines = [f"{case.value} n={args.n}"]
    for key in ("infinity", "plus_one", "minus_one"):
        vals = table[key]
        lines.append(f"{key}: " + (", ".join(f"{a:.6f} ({a / math.pi:.6g} pi)" for a in vals) if vals else "none"))
    if table["note"]:
        lines.append(f"note: {table['note']}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _add_case(p, required=True):
    p.add_argument("--case", choices=["flat", "sphere"], required=required, default=None if required else None)
    p.add_argument("--n", type=int, required=required)


def _add_controls(p, stop_radius=100.0):
    p.add_argument("--max-step", type=float, default=0.05)
    p.add_argument("--stop-radius", type=float, default=stop_radius)
    p.add_argument("--standoff", type=float, default=1e-4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slagquad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("portrait", help="phase portrait as SVG (with JSON sidecar), JSON or CSV")
    _add_case(p)
    p.add_argument("--levels", help="comma-separated levels; default: 0 and +-{0.25,0.5,1,2} scaled")
    p.add_argument("--window", default="-3,3,-3,3", help="re_min,re_max,im_min,im_max")
    p.add_argument("--grid", type=int, default=800)
    p.add_argument("--out", default="portrait.svg")
    p.add_argument("--format", choices=["svg", "json", "csv"])
    _add_controls(p)
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("trace", help="trace one profile curve")
    _add_case(p)
    p.add_argument("--start", required=True, help="complex start point, e.g. 0.3+0.7i")
    p.add_argument("--orientation", choices=["1", "-1", "both"], default="both")
    p.add_argument("--level", type=float, help="project onto this level instead of the start's own")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    _add_controls(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="run a verifier; exit 0 iff it passes")
    p.add_argument("which", choices=["lagrangian", "slag", "calabi-yau"])
    p.add_argument("--case", choices=["flat", "sphere"], default="sphere")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--potential", choices=["stenzel", "quadratic", "log", "flat", "none"], default="stenzel")
    p.add_argument("--level", type=float, default=0.5)
    p.add_argument("--start", help="start point for slag (default: a seed on --level)")
    p.add_argument("--out")
    _add_controls(p, stop_radius=10.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("immerse", help="ambient point cloud of the immersion over a curve")
    p.add_argument("--curve", help="curve JSON written by 'trace'")
    p.add_argument("--case", choices=["flat", "sphere"])
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", help="comma-separated complex curve points")
    p.add_argument("--sphere-samples", type=int, default=64)
    p.add_argument("--stride", type=int, default=1, help="use every k-th curve point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_immerse)

    p = sub.add_parser("asymptotes", help="asymptotic half-line angles")
    _add_case(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymptotes)
    return parser


def _join_values(argv: list[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _configure_logging() -> None:
    name = os.environ.get("SLAG_LOG", "quiet").strip().lower() or "quiet"
    if name not in LOG_LEVELS:
        raise UsageError(f"SLAG_LOG must be one of {sorted(LOG_LEVELS)}, got {name!r}")
    logging.basicConfig(level=LOG_LEVELS[name], format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger("slagquad").setLevel(LOG_LEVELS[name])


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        _configure_logging()
        for name in ("n", "samples", "sphere_samples", "stride", "grid"):
            val = getattr(args, name, None)
            if val is not None and val < (2 if name == "n" else 1):
                raise UsageError(f"--{name.replace('_', '-')} is out of range: {val}")
        return args.func(args)
    except SlagError as exc:
        print(f"slagquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream reader closed early (e.g. ``| head``); not an error
        sys.stderr.close()
        return EXIT_OK
    except OSError as exc:
        print(f"slagquad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
