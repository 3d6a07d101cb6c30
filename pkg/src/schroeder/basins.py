"""Pixel grids of seeds classified by the root their orbit reaches, and PPM output."""

from __future__ import annotations

import enum
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .iterators import MethodSpec, OrbitParams, Root, Status, run_orbit
from .julia import JuliaLocus, signed_distance
from .poly import TwoRootPolynomial


class Cell(enum.IntEnum):
    ROOT_A = 0
    ROOT_B = 1
    DIVERGED = 2
    MAX_ITERATIONS = 3
    HIT_SINGULARITY = 4


_FROM_STATUS = {
    Status.DIVERGED: Cell.DIVERGED,
    Status.MAX_ITERATIONS: Cell.MAX_ITERATIONS,
    Status.HIT_SINGULARITY: Cell.HIT_SINGULARITY,
}


@dataclass(frozen=True)
class Viewport:
    center: complex = -1 + 0j
    width: float = 6.0
    height: float = 6.0
    px_w: int = 512
    px_h: int = 512

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.width > 0 and self.height > 0):
            raise ValueError("viewport width and height must be positive")
        if self.px_w < 1 or self.px_h < 1:
            raise ValueError("pixel dimensions must be >= 1")

    @classmethod
    def from_bounds(cls, re_min, re_max, im_min, im_max, px_w, px_h) -> "Viewport":
        return cls(complex((re_min + re_max) / 2, (im_min + im_max) / 2),
                   re_max - re_min, im_max - im_min, px_w, px_h)

    @property
    def pixel_diagonal(self) -> float:
        return math.hypot(self.width / self.px_w, self.height / self.px_h)

    def xs(self) -> np.ndarray:
        # ((i + 0.5)/px_w - 0.5) * width, written so mirrored columns negate exactly
        i = np.arange(self.px_w)
        return self.center.real + (2 * i + 1 - self.px_w) / (2 * self.px_w) * self.width

    def ys(self) -> np.ndarray:
        # row 0 is the top edge
        j = np.arange(self.px_h)
        return self.center.imag + (self.px_h - 1 - 2 * j) / (2 * self.px_h) * self.height

    def point(self, i: int, j: int) -> complex:
        x = self.center.real + (2 * i + 1 - self.px_w) / (2 * self.px_w) * self.width
        y = self.center.imag + (self.px_h - 1 - 2 * j) / (2 * self.px_h) * self.height
        return complex(x, y)

    def to_dict(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "width": self.width,
                "height": self.height, "px_w": self.px_w, "px_h": self.px_h}


@dataclass
class BasinGrid:
    viewport: Viewport
    cells: np.ndarray  # (px_h, px_w) uint8 of Cell codes, row 0 on top
    iters: np.ndarray  # (px_h, px_w) int32
    max_iter: int

    def cell(self, i: int, j: int) -> tuple[Cell, int]:
        return Cell(int(self.cells[j, i])), int(self.iters[j, i])

    def counts(self) -> dict[str, int]:
        return {c.name.lower(): int(np.count_nonzero(self.cells == c)) for c in Cell}


def _classify_row(poly, method, viewport, params, j) -> tuple[list[int], list[int]]:
    y = viewport.ys()[j]
    codes, iters = [], []
    for x in viewport.xs():
        res = run_orbit(poly, method, complex(x, y), params, record=False)
        if res.status is Status.CONVERGED:
            codes.append(Cell.ROOT_A if res.root is Root.A else Cell.ROOT_B)
        else:
            codes.append(_FROM_STATUS[res.status])
        iters.append(res.steps)
    return codes, iters


def _classify_rows(args):
    poly, method, viewport, params, rows = args
    return [_classify_row(poly, method, viewport, params, j) for j in rows]


def classify_grid(poly: TwoRootPolynomial, method: MethodSpec, viewport: Viewport,
                  params: OrbitParams = OrbitParams(), workers: int = 1) -> BasinGrid:
    """Run every pixel-center seed to its fate.

    Each cell is a function of its own seed only, and rows are written back by
    index, so the grid does not depend on ``workers``.
    """
    params.check(poly)
    cells = np.empty((viewport.px_h, viewport.px_w), dtype=np.uint8)
    iters = np.empty((viewport.px_h, viewport.px_w), dtype=np.int32)
    rows = list(range(viewport.px_h))
    if workers <= 1:
        results = _classify_rows((poly, method, viewport, params, rows))
    else:
        chunks = [rows[k::workers] for k in range(workers)]
        results = [None] * viewport.px_h
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk, out in zip(chunks, pool.map(
                    _classify_rows, [(poly, method, viewport, params, c) for c in chunks])):
                for j, row in zip(chunk, out):
                    results[j] = row
    for j, (codes, its) in enumerate(results):
        cells[j] = codes
        iters[j] = its
    return BasinGrid(viewport, cells, iters, params.max_iter)


@dataclass(frozen=True)
class Palette:
    root_a: tuple[int, int, int] = (214, 48, 39)
    root_b: tuple[int, int, int] = (49, 104, 206)
    none: tuple[int, int, int] = (0, 0, 0)
    overlay: tuple[int, int, int] = (255, 255, 255)
    darkest: float = 0.35  # shade at max_iter


def locus_mask(viewport: Viewport, locus: JuliaLocus) -> np.ndarray:
    """Pixels whose center is within half a pixel diagonal of the locus."""
    half = 0.5 * viewport.pixel_diagonal
    xs, ys = viewport.xs(), viewport.ys()
    mask = np.zeros((viewport.px_h, viewport.px_w), dtype=bool)
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            mask[j, i] = abs(signed_distance(locus, complex(x, y))) <= half
    return mask


def render_rgb(grid: BasinGrid, palette: Palette = Palette(),
               overlay: JuliaLocus | None = None) -> np.ndarray:
    base = np.empty((len(Cell), 3), dtype=np.float64)
    base[Cell.ROOT_A] = palette.root_a
    base[Cell.ROOT_B] = palette.root_b
    base[Cell.DIVERGED:] = palette.none
    shade = 1.0 - (1.0 - palette.darkest) * grid.iters.astype(np.float64) / grid.max_iter
    rgb = np.floor(base[grid.cells] * shade[..., None] + 0.5).astype(np.uint8)
    if overlay is not None:
        rgb[locus_mask(grid.viewport, overlay)] = palette.overlay
    return rgb


def ppm_bytes(rgb: np.ndarray) -> bytes:
    h, w, _ = rgb.shape
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(rgb, dtype=np.uint8).tobytes()


def render_ppm(grid: BasinGrid, palette: Palette = Palette(),
               overlay: JuliaLocus | None = None) -> bytes:
    """Binary P6 image; iteration count darkens each basin color linearly."""
    return ppm_bytes(render_rgb(grid, palette, overlay))


def read_ppm(data: bytes) -> np.ndarray:
    magic, dims, maxval, payload = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not a P6/255 image")
    w, h = map(int, dims.split())
    return np.frombuffer(payload, dtype=np.uint8).reshape(h, w, 3)


def write_image(path, grid: BasinGrid, palette: Palette = Palette(),
                overlay: JuliaLocus | None = None, metadata: dict | None = None) -> Path:
    """Write the PPM, plus a ``.json`` sidecar next to it when metadata is given."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        os.makedirs(path.parent, exist_ok=True)
    path.write_bytes(render_ppm(grid, palette, overlay))
    if metadata is not None:
        sidecar = path.with_suffix(".json")
        sidecar.write_text(json.dumps(metadata, indent=2) + "\n")
    return path
