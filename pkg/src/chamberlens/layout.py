"""Multi-stage force-directed layout for the reply graph.

Five annealing stages (liquid, expansion, cooldown, crunch, simmer) run
over fixed fractions of the iteration budget. Each iteration every node
evaluates up to three candidate positions — stay, a damped move toward
its weighted neighbor centroid, and a temperature-scaled random jump —
and keeps the one with the lowest energy. Energy is edge attraction
(weight times (distance/cell)^alpha) plus a density penalty from a grid
occupancy count; an exact Gaussian-kernel density is available for
validating the grid approximation on small graphs. Updates are applied
synchronously, so per-node evaluation order cannot affect the result.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from chamberlens.errors import FormatError, ValidationError
from chamberlens.graph import InteractionGraph

FIELD = 2000.0
GRID = 50
CELL = FIELD / GRID


@dataclass(frozen=True)
class Stage:
    name: str
    fraction: float
    t_start: float
    t_end: float
    attraction_exp: float
    damping: float
    jump_p: float
    density_w: float


STAGES = (
    Stage("liquid", 0.25, 400.0, 200.0, 1.0, 0.5, 0.9, 1.0),
    Stage("expansion", 0.25, 200.0, 100.0, 1.0, 0.5, 0.6, 1.5),
    Stage("cooldown", 0.25, 100.0, 20.0, 1.5, 0.4, 0.3, 1.0),
    Stage("crunch", 0.10, 20.0, 10.0, 2.0, 0.3, 0.1, 0.5),
    Stage("simmer", 0.15, 10.0, 0.0, 2.0, 0.2, 0.05, 0.25),
)

# 3x3 density kernel: own cell, orthogonal neighbors, diagonal neighbors.
_KERNEL = (
    ((0, 0), 1.0),
    ((0, 1), 0.5), ((0, -1), 0.5), ((1, 0), 0.5), ((-1, 0), 0.5),
    ((1, 1), 0.25), ((1, -1), 0.25), ((-1, 1), 0.25), ((-1, -1), 0.25),
)


@dataclass(frozen=True)
class LayoutPositions:
    node_ids: tuple[str, ...]
    coords: np.ndarray

    def __post_init__(self):
        if self.coords.shape != (len(self.node_ids), 2):
            raise ValidationError(
                f"coords shape {self.coords.shape} for {len(self.node_ids)} nodes")
        if not np.isfinite(self.coords).all():
            raise ValidationError("layout produced non-finite coordinates")

    def position(self, user_id: str) -> tuple[float, float]:
        i = self.node_ids.index(user_id)
        return float(self.coords[i, 0]), float(self.coords[i, 1])


def initial_positions(g: InteractionGraph, seed: int) -> np.ndarray:
    """The seeded uniform start inside the field, exactly as the layout
    uses it (exposed so callers can compare start and end states)."""
    if g.n_nodes == 0:
        raise ValidationError("layout requires a non-empty graph")
    rng = np.random.default_rng(seed)
    return rng.uniform(-FIELD / 2.0, FIELD / 2.0, (g.n_nodes, 2))


def openord_layout(g: InteractionGraph, seed: int, total_iters: int = 750,
                   cut: float = 0.0, repulsion: str = "grid") -> LayoutPositions:
    """Run the five-stage schedule and return centered coordinates.

    cut in [0,1] ignores that fraction of the longest edges during the
    cooldown and crunch stages (0 disables cutting). repulsion selects
    the grid density (default) or the exact Gaussian-kernel density.
    """
    if g.n_nodes == 0:
        raise ValidationError("layout requires a non-empty graph")
    if not 0.0 <= cut <= 1.0:
        raise ValidationError(f"cut must be in [0,1], got {cut}")
    if repulsion not in ("grid", "exact"):
        raise ValidationError(f"unknown repulsion mode: {repulsion!r}")
    if total_iters < 0:
        raise ValidationError(f"total_iters must be >= 0, got {total_iters}")
    if repulsion == "exact" and g.n_nodes > 2000:
        raise ValidationError("exact repulsion is limited to 2000 nodes")

    rng = np.random.default_rng(seed)
    n = g.n_nodes
    pos = rng.uniform(-FIELD / 2.0, FIELD / 2.0, (n, 2))

    # Directed edge arrays: each undirected edge contributes both ways.
    ei = np.fromiter((i for i, j, _ in g.edges for i in (i, j)),
                     dtype=np.int64, count=2 * g.n_edges)
    ej = np.fromiter((j for i, j, _ in g.edges for j in (j, i)),
                     dtype=np.int64, count=2 * g.n_edges)
    ew = np.fromiter((w for _, _, w in g.edges for w in (w, w)),
                     dtype=np.float64, count=2 * g.n_edges)

    for stage, (lo, hi) in zip(STAGES, _stage_bounds(total_iters)):
        iters = hi - lo
        cutting = cut > 0.0 and stage.name in ("cooldown", "crunch")
        for it in range(iters):
            temp = stage.t_start + (stage.t_end - stage.t_start) * (it / iters)
            jump_gate = rng.random(n)
            jump_off = rng.uniform(-temp, temp, (n, 2))
            pos = _step(pos, ei, ej, ew, stage, temp, jump_gate, jump_off,
                        cutting, cut, repulsion)
    pos = pos - pos.mean(axis=0)
    return LayoutPositions(g.node_ids, pos)


def _step(pos: np.ndarray, ei: np.ndarray, ej: np.ndarray, ew: np.ndarray,
          stage: Stage, temp: float, jump_gate: np.ndarray,
          jump_off: np.ndarray, cutting: bool, cut: float,
          repulsion: str) -> np.ndarray:
    n = pos.shape[0]
    if ei.size and cutting:
        cur_len = np.sqrt(((pos[ei] - pos[ej]) ** 2).sum(axis=1))
        keep = cur_len <= _cut_length(cur_len[::2], cut)
        aei, aej, aew = ei[keep], ej[keep], ew[keep]
    else:
        aei, aej, aew = ei, ej, ew

    if repulsion == "grid":
        cells, counts = _grid(pos)
        density = lambda P: _grid_density(P, cells, counts)  # noqa: E731
    else:
        density = lambda P: _exact_density(P, pos)  # noqa: E731

    def energy(P: np.ndarray) -> np.ndarray:
        e = stage.density_w * density(P)
        if aei.size:
            d = np.sqrt(((P[aei] - pos[aej]) ** 2).sum(axis=1))
            np.add.at(e, aei, aew * (d / CELL) ** stage.attraction_exp)
        return e

    sumw = np.zeros(n)
    wpos = np.zeros((n, 2))
    if aei.size:
        np.add.at(sumw, aei, aew)
        np.add.at(wpos, aei, aew[:, None] * pos[aej])
    has = sumw > 0.0
    centroid = np.where(has[:, None], wpos / np.where(has, sumw, 1.0)[:, None], pos)
    toward = _clamp(np.where(has[:, None],
                             pos + stage.damping * (centroid - pos), pos))
    jump = _clamp(toward + jump_off)

    best = pos
    best_e = energy(pos)
    e1 = energy(toward)
    better = e1 < best_e
    best = np.where(better[:, None], toward, best)
    best_e = np.where(better, e1, best_e)
    e2 = energy(jump)
    better = (jump_gate < stage.jump_p) & (e2 < best_e)
    return np.where(better[:, None], jump, best)


def _stage_bounds(total_iters: int) -> list[tuple[int, int]]:
    bounds = []
    cum = 0.0
    lo = 0
    for stage in STAGES:
        cum += stage.fraction
        hi = round(cum * total_iters)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _cut_length(undirected_lengths: np.ndarray, cut: float) -> float:
    """Length threshold above which edges are ignored this iteration."""
    if cut >= 1.0:
        return 0.0
    return float(np.quantile(undirected_lengths, 1.0 - cut))


def _grid(pos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    cells = np.clip(((pos + FIELD / 2.0) / CELL).astype(np.int64), 0, GRID - 1)
    counts = np.zeros((GRID, GRID), dtype=np.float64)
    np.add.at(counts, (cells[:, 0], cells[:, 1]), 1.0)
    return cells, counts


def _grid_density(P: np.ndarray, cells_now: np.ndarray,
                  counts: np.ndarray) -> np.ndarray:
    """Kernel-weighted occupancy around each candidate cell, excluding
    each node's own current contribution."""
    c = np.clip(((P + FIELD / 2.0) / CELL).astype(np.int64), 0, GRID - 1)
    total = np.zeros(P.shape[0])
    for (dx, dy), w in _KERNEL:
        x = c[:, 0] + dx
        y = c[:, 1] + dy
        ok = (x >= 0) & (x < GRID) & (y >= 0) & (y < GRID)
        total[ok] += w * counts[x[ok], y[ok]]
    rel = cells_now - c
    for (dx, dy), w in _KERNEL:
        total[(rel[:, 0] == dx) & (rel[:, 1] == dy)] -= w
    return total


def _exact_density(P: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """Gaussian-kernel density with bandwidth CELL, self-excluded."""
    d2 = ((P[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
    k = np.exp(-d2 / (2.0 * CELL * CELL))
    return k.sum(axis=1) - np.diagonal(k)


def _clamp(p: np.ndarray) -> np.ndarray:
    return np.clip(p, -FIELD / 2.0, FIELD / 2.0)


def write_layout_csv(lp: LayoutPositions, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user_id", "x", "y"])
        for uid, (x, y) in zip(lp.node_ids, lp.coords):
            writer.writerow([uid, repr(float(x)), repr(float(y))])


def read_layout_csv(path: str | Path) -> LayoutPositions:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["user_id", "x", "y"]:
        raise FormatError(f"{path}: expected header user_id,x,y")
    ids: list[str] = []
    coords: list[tuple[float, float]] = []
    for row in rows[1:]:
        if len(row) != 3:
            raise FormatError(f"{path}: row with {len(row)} cells")
        try:
            coords.append((float(row[1]), float(row[2])))
        except ValueError as exc:
            raise FormatError(f"{path}: non-numeric coordinate: {exc}") from exc
        ids.append(row[0])
    if len(set(ids)) != len(ids):
        raise FormatError(f"{path}: duplicate user ids")
    return LayoutPositions(tuple(ids), np.asarray(coords, dtype=np.float64))
