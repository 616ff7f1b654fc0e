"""Marching-squares extraction of first-integral level sets.

This is the grid oracle the traced curves are checked against, so it shares
nothing with the tracer beyond evaluating the (single-valued) first integral.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .dynamics import FirstIntegralSpec, primitive
from .errors import DomainError
from .quadric import CaseKind

__all__ = ["Window", "level_grid", "contour_extract", "densify", "directed_hausdorff"]


@dataclass(frozen=True)
class Window:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    grid: int = 800

    def __post_init__(self):
        if not (self.re_max > self.re_min and self.im_max > self.im_min):
            raise DomainError("window must be a non-degenerate rectangle")
        if int(self.grid) != self.grid or self.grid < 16:
            raise DomainError("window grid must be an integer >= 16")

    @classmethod
    def square(cls, half_width: float, grid: int = 800) -> "Window":
        return cls(-half_width, half_width, -half_width, half_width, grid)

    @property
    def cell(self) -> float:
        """The larger of the two cell side lengths."""
        return max(self.re_max - self.re_min, self.im_max - self.im_min) / self.grid

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.re_min, self.re_max, self.im_min, self.im_max)


def level_grid(fi: FirstIntegralSpec, window: Window) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """First integral sampled on the ``(grid+1) x (grid+1)`` vertex lattice (rows = imaginary part)."""
    if fi.odd_sphere:
        raise DomainError("the odd sphere first integral is multivalued; contouring needs a single-valued case")
    xs = np.linspace(window.re_min, window.re_max, window.grid + 1)
    ys = np.linspace(window.im_min, window.im_max, window.grid + 1)
    z = xs[None, :] + 1j * ys[:, None]
    if fi.case is CaseKind.FLAT:
        vals = (z**fi.n).imag
    else:
        vals = np.polynomial.polynomial.polyval(z, fi._q).imag
    return xs, ys, vals


def _f_at(fi, z):
    return primitive(fi, z).imag


def contour_extract(fi: FirstIntegralSpec, level: float, window: Window) -> list[np.ndarray]:
    """Polylines (complex arrays) approximating ``{F = level}`` inside ``window``.

    Corners with ``F >= level`` count as inside. Crossings are placed by linear
    interpolation along cell edges; saddle cells are resolved by sampling ``F``
    at the cell centre.
    """
    xs, ys, vals = level_grid(fi, window)
    v = vals - level
    inside = v >= 0
    g = window.grid
    # edge ids: horizontal edge (row i, col j) -> i*g + j; vertical (row i, col j) -> H + i*(g+1) + j
    n_h = (g + 1) * g

    def h_id(i, j):
        return i * g + j

    def v_id(i, j):
        return n_h + i * (g + 1) + j

    # crossing location for every edge that changes sign
    points: dict[int, complex] = {}
    hi, hj = np.nonzero(inside[:, :-1] != inside[:, 1:])
    t = v[hi, hj] / (v[hi, hj] - v[hi, hj + 1])
    for i, j, tt in zip(hi, hj, t):
        points[h_id(i, j)] = complex(xs[j] + tt * (xs[j + 1] - xs[j]), ys[i])
    vi, vj = np.nonzero(inside[:-1, :] != inside[1:, :])
    t = v[vi, vj] / (v[vi, vj] - v[vi + 1, vj])
    for i, j, tt in zip(vi, vj, t):
        points[v_id(i, j)] = complex(xs[j], ys[i] + tt * (ys[i + 1] - ys[i]))
    if not points:
        return []

    b00 = inside[:-1, :-1]
    b10 = inside[:-1, 1:]
    b11 = inside[1:, 1:]
    b01 = inside[1:, :-1]
    code = b00 * 1 + b10 * 2 + b11 * 4 + b01 * 8
    adjacency: dict[int, list[int]] = defaultdict(list)

    def link(a, b):
        adjacency[a].append(b)
        adjacency[b].append(a)

    ci, cj = np.nonzero((code != 0) & (code != 15))
    for i, j, c in zip(ci, cj, code[ci, cj]):
        bottom, top = h_id(i, j), h_id(i + 1, j)
        left, right = v_id(i, j), v_id(i, j + 1)
        if c in (5, 10):
            centre = complex(0.5 * (xs[j] + xs[j + 1]), 0.5 * (ys[i] + ys[i + 1]))
            centre_in = _f_at(fi, centre) >= level
            # 5: b00 and b11 inside; 10: b10 and b01 inside
            if (c == 5) == centre_in:
                link(bottom, right)
                link(left, top)
            else:
                link(left, bottom)
                link(top, right)
            continue
        edges = [e for e, crossed in ((bottom, b00[i, j] != b10[i, j]), (right, b10[i, j] != b11[i, j]),
                                      (top, b11[i, j] != b01[i, j]), (left, b01[i, j] != b00[i, j])) if crossed]
        link(edges[0], edges[1])

    return [np.array([points[e] for e in chain]) for chain in _join(adjacency)]


def _join(adjacency: dict[int, list[int]]) -> list[list[int]]:
    seen: set[int] = set()
    chains = []

    def walk(start):
        chain = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [e for e in adjacency[cur] if e != prev and e not in seen]
            if not nxt:
                # close loops explicitly
                if prev is not None and start in adjacency[cur] and len(chain) > 2:
                    chain.append(start)
                return chain
            prev, cur = cur, nxt[0]
            seen.add(cur)
            chain.append(cur)

    for e in sorted(adjacency):
        if len(adjacency[e]) == 1 and e not in seen:
            chains.append(walk(e))
    for e in sorted(adjacency):
        if e not in seen:
            chains.append(walk(e))
    return chains


def densify(polyline: np.ndarray, spacing: float) -> np.ndarray:
    """Insert evenly spaced points so consecutive vertices are at most ``spacing`` apart."""
    p = np.asarray(polyline, dtype=complex)
    if p.size < 2:
        return p
    seg = np.abs(np.diff(p))
    counts = np.maximum(1, np.ceil(seg / spacing).astype(int))
    parts = [p[i] + (p[i + 1] - p[i]) * np.arange(c) / c for i, c in enumerate(counts)]
    return np.concatenate(parts + [p[-1:]])


def directed_hausdorff(points: np.ndarray, polylines: list[np.ndarray], spacing: float | None = None) -> float:
    """Largest distance from any of ``points`` to the nearest polyline vertex.

    With ``spacing`` the polylines are first densified, so the result
    approximates the distance to the polylines themselves within ``spacing/2``.
    """
    if spacing is not None:
        polylines = [densify(p, spacing) for p in polylines]
    verts = np.concatenate([np.asarray(p) for p in polylines])
    tree = cKDTree(np.column_stack([verts.real, verts.imag]))
    pts = np.asarray(points)
    dist, _ = tree.query(np.column_stack([pts.real, pts.imag]))
    return float(np.max(dist))
