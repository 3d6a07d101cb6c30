"""Command line: ``render``, ``certify`` and ``converge``.

Exit status: 0 ok, 1 bad configuration or usage, 2 a certification check
failed at the requested tolerance.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .basins import Viewport, classify_grid, write_image
from .conjugacy import affine_A_inverse
from .iterators import Method, MethodSpec, OrbitParams
from .julia import julia_locus_general
from .poly import TwoRootPolynomial
from .validation import (BoundaryParams, CertificationError, boundary_report,
                         convergence_report, probes_csv)

OUT_DIR_ENV = "SCHROEDER_OUT_DIR"

EXIT_OK, EXIT_CONFIG, EXIT_CERTIFY = 0, 1, 2


class ConfigError(ValueError):
    pass


class UsageError(Exception):
    pass


def parse_complex(text) -> complex:
    """'re' or 're,im'."""
    if isinstance(text, (list, tuple)):
        return complex(*map(float, text))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    parts = str(text).split(",")
    if not 1 <= len(parts) <= 2:
        raise ConfigError(f"bad complex number {text!r}, expected re[,im]")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"bad complex number {text!r}, expected re[,im]") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _floats(text, count: int, what: str) -> list[float]:
    if isinstance(text, (list, tuple)):
        vals = [float(v) for v in text]
    else:
        try:
            vals = [float(v) for v in str(text).split(",")]
        except ValueError:
            raise ConfigError(f"bad {what}: {text!r}") from None
    if len(vals) != count:
        raise ConfigError(f"{what} needs {count} comma separated numbers, got {text!r}")
    return vals


@dataclass
class RunConfig:
    subcommand: str
    method: str = "schroeder"
    alpha: float | None = None
    m: int | None = None
    n: int | None = None
    a: list[float] = field(default_factory=lambda: [1.0, 0.0])
    b: list[float] = field(default_factory=lambda: [-1.0, 0.0])
    viewport: list[float] | None = None  # center_re, center_im, width, height
    px: list[int] = field(default_factory=lambda: [512, 512])
    conv_tol: float = 1e-9
    max_iter: int = 200
    escape_radius: float = 1e6
    overlay: bool = False
    out: str | None = None
    csv: str | None = None
    rays: int = 64
    bisect_tol: float = 1e-8
    tol: float = 1e-5
    z0: list[list[float]] = field(default_factory=list)
    n_seeds: int = 20
    seed_radius: float = 0.3
    seed: int = 0
    order_range: list[float] | None = None
    threads: int = 1  # not serialized: results do not depend on it

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("threads")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if "config" in d and isinstance(d["config"], dict):
            d = d["config"]
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    # typed views, validated

    def method_spec(self) -> MethodSpec:
        try:
            return MethodSpec.parse(self.method, self.alpha)
        except ValueError as exc:
            raise ConfigError(f"bad method {self.method!r}: {exc}") from None

    def poly(self) -> TwoRootPolynomial:
        if self.m is None or self.n is None:
            raise UsageError("--m and --n are required")
        try:
            return TwoRootPolynomial(parse_complex(self.a), parse_complex(self.b),
                                     int(self.m), int(self.n))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def orbit(self) -> OrbitParams:
        params = OrbitParams(float(self.conv_tol), int(self.max_iter), float(self.escape_radius))
        try:
            params.check(self.poly())
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return params

    def view(self) -> Viewport:
        px = [int(v) for v in self.px]
        if self.viewport is None:
            cre, cim, w, h = default_viewport(self.poly())
        else:
            cre, cim, w, h = _floats(self.viewport, 4, "viewport")
        try:
            return Viewport(complex(cre, cim), w, h, px[0], px[1])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def default_viewport(poly: TwoRootPolynomial) -> list[float]:
    """center -1, 6x6 for the collapsing circles (m/n >= 2), else center 0, 8x8.

    Sized for roots at +-1 and carried over to general roots by the affine
    map sending +-1 to a, b.
    """
    if poly.n == 0:
        return [poly.a.real, poly.a.imag, 4.0, 4.0]
    big, small = max(poly.m, poly.n), min(poly.m, poly.n)
    center, size = (-1.0, 6.0) if big >= 2 * small else (0.0, 8.0)
    hi, lo = (poly.a, poly.b) if poly.m >= poly.n else (poly.b, poly.a)
    c = affine_A_inverse(hi, lo, center)
    scale = abs(poly.a - poly.b) / 2
    return [c.real, c.imag, size * scale, size * scale]


def analytic_locus(poly: TwoRootPolynomial, method: MethodSpec):
    """Julia set known in closed form for this method, or None.

    Schroeder: always (n >= 1). Newton: only the equal multiplicity bisector.
    """
    if poly.n == 0:
        return None
    if method.kind is Method.SCHROEDER or poly.m == poly.n:
        if poly.m >= poly.n:
            return julia_locus_general(poly.m, poly.n, poly.a, poly.b)
        return julia_locus_general(poly.n, poly.m, poly.b, poly.a)
    return None


def _out_path(cfg: RunConfig, default_name: str) -> Path:
    path = Path(cfg.out or default_name)
    if not path.is_absolute():
        path = Path(os.environ.get(OUT_DIR_ENV, ".")) / path
    return path


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run_render(cfg: RunConfig) -> int:
    poly, method = cfg.poly(), cfg.method_spec()
    params, view = cfg.orbit(), cfg.view()
    locus = analytic_locus(poly, method)
    if cfg.overlay and locus is None:
        print("warning: no closed-form Julia set for this method; overlay skipped",
              file=sys.stderr)
    grid = classify_grid(poly, method, view, params, workers=cfg.threads)
    path = _out_path(cfg, f"{method.kind.value}_m{poly.m}_n{poly.n}.ppm")
    meta = {
        "config": cfg.to_dict(),
        "viewport": view.to_dict(),
        "locus": locus.to_dict() if locus is not None else None,
        "counts": grid.counts(),
    }
    write_image(path, grid, overlay=locus if cfg.overlay else None, metadata=meta)
    print(str(path))
    return EXIT_OK


def run_certify(cfg: RunConfig) -> int:
    poly, method = cfg.poly(), cfg.method_spec()
    params = cfg.orbit()
    if poly.n < 1:
        raise ConfigError("certify needs two roots (n >= 1)")
    locus = analytic_locus(poly, method)
    if locus is None:
        raise ConfigError("no closed-form Julia set to certify for this method")
    if cfg.rays < 8:
        raise ConfigError("--rays must be >= 8")
    bp = BoundaryParams(int(cfg.rays), float(cfg.bisect_tol), orbit=params)
    try:
        report = boundary_report(poly, method, locus, bp, workers=cfg.threads)
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFY
    report["config"]["run"] = cfg.to_dict()
    report["tolerance"] = cfg.tol
    report["passed"] = bool(report["max_dev"] <= cfg.tol and not report["failures"])
    _emit(cfg, report)
    if cfg.csv:
        Path(cfg.csv).write_text(probes_csv(report))
    return EXIT_OK if report["passed"] else EXIT_CERTIFY


def make_seeds(poly: TwoRootPolynomial, count: int, radius: float, seed: int) -> list[complex]:
    """Uniform in disks of the given radius around the roots, alternating a, b."""
    rng = np.random.default_rng(seed)
    roots = [poly.a] if poly.n == 0 else [poly.a, poly.b]
    seeds = []
    for k in range(count):
        r = radius * np.sqrt(rng.uniform(0.0, 1.0))
        theta = rng.uniform(0.0, 2 * np.pi)
        seeds.append(roots[k % len(roots)] + complex(r * np.cos(theta), r * np.sin(theta)))
    return seeds


def run_converge(cfg: RunConfig) -> int:
    poly, method = cfg.poly(), cfg.method_spec()
    params = cfg.orbit()
    if cfg.z0:
        seeds = [parse_complex(z) for z in cfg.z0]
    else:
        seeds = make_seeds(poly, int(cfg.n_seeds), float(cfg.seed_radius), int(cfg.seed))
    report = convergence_report(poly, method, seeds, params)
    report["config"]["run"] = cfg.to_dict()
    status = EXIT_OK
    if cfg.order_range is not None:
        lo, hi = _floats(cfg.order_range, 2, "order range")
        ok = all(r["coc"] is not None and lo <= r["coc"] <= hi for r in report["coc"])
        report["passed"] = ok
        status = EXIT_OK if ok else EXIT_CERTIFY
    _emit(cfg, report)
    return status


def _emit(cfg: RunConfig, report: dict) -> None:
    text = _dump(report)
    if cfg.out:
        path = _out_path(cfg, cfg.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# flags whose values may start with '-' (negative numbers with commas)
_VALUE_FLAGS = {"--a", "--b", "--viewport", "--z0", "--order-range"}


def _join_negative_values(argv: list[str]) -> list[str]:
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv) and argv[k + 1].startswith("-") \
                and not argv[k + 1].startswith("--"):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON config or image sidecar to start from")
    common.add_argument("--method", default=S,
                        help="newton | schroeder | chebyshev | halley | chebyshev_halley")
    common.add_argument("--alpha", type=float, default=S, help="Chebyshev-Halley parameter")
    common.add_argument("--m", type=int, default=S, help="multiplicity of root a")
    common.add_argument("--n", type=int, default=S, help="multiplicity of root b")
    common.add_argument("--a", default=S, help="root a as re[,im] (default 1)")
    common.add_argument("--b", default=S, help="root b as re[,im] (default -1)")
    common.add_argument("--conv-tol", dest="conv_tol", type=float, default=S)
    common.add_argument("--max-iter", dest="max_iter", type=int, default=S)
    common.add_argument("--escape-radius", dest="escape_radius", type=float, default=S)
    common.add_argument("--out", default=S, help=f"output file (relative to ${OUT_DIR_ENV})")
    common.add_argument("--threads", type=int, default=S, help="worker processes")

    parser = _Parser(prog="schroeder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    r = sub.add_parser("render", parents=[common], help="basin of attraction image (PPM)")
    r.add_argument("--viewport", default=S, help="center_re,center_im,width,height")
    r.add_argument("--px", default=S, help="W or W,H pixels")
    r.add_argument("--overlay", action="store_true", default=S,
                   help="draw the closed-form Julia set in white")

    c = sub.add_parser("certify", parents=[common], help="bisection check of the Julia set")
    c.add_argument("--rays", type=int, default=S)
    c.add_argument("--bisect-tol", dest="bisect_tol", type=float, default=S)
    c.add_argument("--tol", type=float, default=S, help="max allowed deviation (1e-5)")
    c.add_argument("--csv", default=S, help="also write probes as CSV")

    v = sub.add_parser("converge", parents=[common], help="convergence order report")
    v.add_argument("--z0", action="append", default=S, help="seed re[,im]; repeatable")
    v.add_argument("--n-seeds", dest="n_seeds", type=int, default=S)
    v.add_argument("--seed-radius", dest="seed_radius", type=float, default=S)
    v.add_argument("--seed", type=int, default=S, help="RNG seed for random seeds")
    v.add_argument("--order-range", dest="order_range", default=S,
                   help="lo,hi: exit 2 unless every COC falls inside")
    parser.subcommands = {"render": r, "certify": c, "converge": v}
    return parser


def config_from_args(argv: list[str]) -> RunConfig:
    parser = build_parser()
    ns = vars(parser.parse_args(_join_negative_values(argv)))
    sub = ns.pop("subcommand")
    if sub is None:
        raise UsageError("a subcommand is required")
    base: dict = {}
    cfg_file = ns.pop("config", None)
    if cfg_file:
        try:
            base = json.loads(Path(cfg_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {cfg_file}: {exc}") from None
        base = dict(base.get("config", base))
        if base.get("subcommand", sub) != sub:
            raise ConfigError(f"config is for {base['subcommand']!r}, not {sub!r}")
    if "px" in ns:
        px = str(ns["px"]).split(",")
        ns["px"] = [int(px[0]), int(px[-1])]
    if "viewport" in ns:
        ns["viewport"] = _floats(ns["viewport"], 4, "viewport")
    for key in ("a", "b"):
        if key in ns:
            z = parse_complex(ns[key])
            ns[key] = [z.real, z.imag]
    if "z0" in ns:
        ns["z0"] = [[z.real, z.imag] for z in map(parse_complex, ns["z0"])]
    if "order_range" in ns:
        ns["order_range"] = _floats(ns["order_range"], 2, "order range")
    base.update(ns)
    base["subcommand"] = sub
    cfg = RunConfig.from_dict(base)
    if cfg.m is None or cfg.n is None:
        raise UsageError("--m and --n are required")
    return cfg


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = config_from_args(argv)
        handler = {"render": run_render, "certify": run_certify, "converge": run_converge}
        return handler[cfg.subcommand](cfg)
    except UsageError as exc:
        parser = build_parser()
        sub = next((a for a in argv if a in parser.subcommands), None)
        (parser.subcommands[sub] if sub else parser).print_help(sys.stderr)
        print(f"\nerror: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
