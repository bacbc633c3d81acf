"""Toroidal king packings: boards, symmetry-reduced exact search, layered
constructions, and board rendering.

The exact search feeds the generic branch-and-bound, but first pins one
king at the origin (any packing can be translated there) and then branches
the level below orbitally under the origin stabilizer (coordinate
permutations and per-axis reflections): include a representative or
discard its whole orbit.  Deeper levels run the plain search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product

from .graphs import DEFAULT_VERTEX_LIMIT, Graph, GraphError, ProductIndex
from .solvers import (IndependentSet, SolverConfig, _run_engine,
                      heuristic_independent_set, is_independent_set)


class PlacementError(ValueError):
    pass


@dataclass(frozen=True)
class Board:
    p: int
    d: int

    def __post_init__(self):
        if self.p < 3:
            raise PlacementError("cycle length p must be >= 3")
        if self.d < 1:
            raise PlacementError("dimension d must be >= 1")

    @property
    def cells(self):
        return self.p**self.d

    @property
    def index(self):
        return ProductIndex((self.p,) * self.d)


@dataclass(frozen=True)
class Placement:
    board: Board
    cells: tuple

    def __post_init__(self):
        seen = set()
        for idx, cell in enumerate(self.cells):
            if len(cell) != self.board.d:
                raise PlacementError(f"cell {idx} has arity {len(cell)}, "
                                     f"board is {self.board.d}-dimensional")
            for c in cell:
                if not 0 <= c < self.board.p:
                    raise PlacementError(f"cell {idx} coordinate {c} out of "
                                         f"range 0..{self.board.p - 1}")
            if cell in seen:
                raise PlacementError(f"cell {idx} duplicates {cell}")
            seen.add(cell)

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class KingSearchResult:
    placement: Placement
    proven_optimal: bool
    upper_bound: int

    @property
    def count(self):
        return len(self.placement)


def toroidal_chebyshev(a, b, p):
    """max over coordinates of the cyclic distance mod p."""
    out = 0
    for x, y in zip(a, b):
        diff = abs(x - y)
        diff = min(diff, p - diff)
        if diff > out:
            out = diff
    return out


def king_graph(board, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """Graph on all cells of the p^d torus; two cells are adjacent iff every
    coordinate differs by 0 or +-1 mod p and the cells differ.  Equals the
    d-th strong power of the p-cycle, labels included."""
    if board.cells > vertex_limit:
        raise GraphError(f"king graph would have {board.cells} vertices "
                         f"(> limit {vertex_limit})")
    p, d = board.p, board.d
    idx = board.index
    cells = [idx.decode(i) for i in range(board.cells)]
    steps = [s for s in product((-1, 0, 1), repeat=d) if any(s)]
    rows = []
    for i, cell in enumerate(cells):
        row = 0
        for s in steps:
            j = idx.encode(tuple((c + dc) % p for c, dc in zip(cell, s)))
            row |= 1 << j
        row &= ~(1 << i)  # p=3: a +-1 step can wrap back onto the cell
        rows.append(row)
    return Graph(board.cells, tuple(rows), tuple(cells))


def verify_placement(pl):
    """(True, None) iff every pair of cells is at toroidal Chebyshev
    distance >= 2; otherwise (False, first violating index pair).  Checks
    nothing the solvers computed; pure coordinate arithmetic."""
    cells = pl.cells
    p = pl.board.p
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if toroidal_chebyshev(cells[i], cells[j], p) < 2:
                return False, (i, j)
    return True, None


def layered_construction(base, floors):
    """Stack copies of a d-dimensional packing into floors of a (d+1)-torus.

    Floors must be pairwise at cyclic distance >= 2 so kings in different
    floors can never touch; within a floor the base packing guarantees it.
    """
    floors = tuple(sorted(set(floors)))
    if not floors:
        raise PlacementError("need at least one floor")
    p = base.board.p
    for f in floors:
        if not 0 <= f < p:
            raise PlacementError(f"floor {f} out of range 0..{p - 1}")
    for i, f in enumerate(floors):
        for g in floors[i + 1:]:
            diff = abs(f - g)
            if min(diff, p - diff) < 2:
                raise PlacementError(f"floors {f} and {g} are adjacent mod {p}")
    ok, pair = verify_placement(base)
    if not ok:
        raise PlacementError(f"base placement invalid at cell pair {pair}")
    board = Board(p, base.board.d + 1)
    cells = tuple(cell + (f,) for f in floors for cell in base.cells)
    out = Placement(board, cells)
    ok, pair = verify_placement(out)
    if not ok:
        raise PlacementError(f"layered placement invalid at cell pair {pair}")
    return out


def canonical_placement(pl):
    """Lexicographically smallest translate; makes serialized artifacts
    diff-stable."""
    p, d = pl.board.p, pl.board.d
    best = None
    for shift in product(range(p), repeat=d):
        moved = tuple(sorted(tuple((c + s) % p for c, s in zip(cell, shift))
                             for cell in pl.cells))
        if best is None or moved < best:
            best = moved
    return Placement(pl.board, best)


def _stabilizer_orbit(board, cell):
    """Orbit of a cell under coordinate permutations and per-axis
    reflections (the automorphisms fixing the origin that we exploit)."""
    p, d = board.p, board.d
    out = set()
    for perm in permutations(range(d)):
        permuted = tuple(cell[perm[i]] for i in range(d))
        for signs in product((1, -1), repeat=d):
            out.add(tuple((c * s) % p for c, s in zip(permuted, signs)))
    return out


def heuristic_max_kings(board, cfg=None, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """Randomized-greedy packing, strengthened by the layered construction
    from one dimension down whenever that helps."""
    cfg = cfg or SolverConfig()
    G = king_graph(board, vertex_limit)
    found = heuristic_independent_set(G, cfg)
    cells = tuple(G.labels[v] for v in found.vertices)
    best = Placement(board, cells)
    if board.d > 1:
        sub = heuristic_max_kings(Board(board.p, board.d - 1), cfg, vertex_limit)
        floors = tuple(range(0, board.p - 1, 2))[: board.p // 2]
        stacked = layered_construction(sub.placement, floors)
        if len(stacked) > len(best):
            best = stacked
    return KingSearchResult(canonical_placement(best), False, board.cells)


def exact_max_kings(board, cfg=None, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """Exact packing number of the toroidal board within budget.

    Symmetry breaking: the first king is fixed at the origin, and the
    branching level right below it prunes whole orbits of the origin
    stabilizer.  Cross-checked in tests against the generic solver.
    """
    cfg = cfg or SolverConfig()
    G = king_graph(board, vertex_limit)
    idx = board.index
    incumbent = heuristic_max_kings(board, cfg, vertex_limit).placement
    incumbent_ids = tuple(idx.encode(c) for c in incumbent.cells)
    # translate the incumbent so it contains the origin and seeds the search
    shift = tuple(-c % board.p for c in incumbent.cells[0]) if incumbent.cells else None
    if shift:
        incumbent_ids = tuple(
            idx.encode(tuple((c + s) % board.p for c, s in zip(cell, shift)))
            for cell in incumbent.cells)
    origin = idx.encode((0,) * board.d)

    def orbit_mask(v):
        mask = 0
        for cell in _stabilizer_orbit(board, idx.decode(v)):
            mask |= 1 << idx.encode(cell)
        return mask

    verts, proven, upper, _ = _run_engine(
        G, cfg, forced=(origin,), orbit_fn=orbit_mask, incumbent=incumbent_ids)
    if not is_independent_set(G, verts):
        raise PlacementError("internal error: search returned adjacent kings")
    pl = canonical_placement(Placement(board, tuple(idx.decode(v) for v in verts)))
    ok, pair = verify_placement(pl)
    if not ok:
        raise PlacementError(f"internal error: invalid packing at {pair}")
    return KingSearchResult(pl, proven, upper)


# -- serialization ------------------------------------------------------------


def placement_to_json(pl):
    pl = canonical_placement(pl)
    doc = {"p": pl.board.p, "d": pl.board.d,
           "cells": [list(c) for c in pl.cells]}
    return json.dumps(doc, sort_keys=True)


def placement_from_json(text):
    doc = json.loads(text)
    try:
        board = Board(int(doc["p"]), int(doc["d"]))
        cells = tuple(tuple(int(x) for x in c) for c in doc["cells"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PlacementError(f"malformed placement JSON: {exc}")
    return Placement(board, cells)


# -- rendering ----------------------------------------------------------------


def render_board(pl, fmt="ascii"):
    """Deterministic drawing of a packing, d <= 3 (3-d as layer sequence).
    The frame marks that rows and columns wrap around."""
    if pl.board.d > 3:
        raise PlacementError("rendering supports d <= 3 only")
    if fmt == "ascii":
        return _render_ascii(pl)
    if fmt == "svg":
        return _render_svg(pl)
    raise PlacementError(f"unknown render format {fmt!r}")


def _layers(pl):
    p, d = pl.board.p, pl.board.d
    if d == 1:
        grids = {None: {(0, c[0]) for c in pl.cells}}
        shape = (1, p)
    elif d == 2:
        grids = {None: {(c[0], c[1]) for c in pl.cells}}
        shape = (p, p)
    else:
        grids = {z: set() for z in range(p)}
        for c in pl.cells:
            grids[c[2]].add((c[0], c[1]))
        shape = (p, p)
    return grids, shape


def _render_ascii(pl):
    grids, (rows, cols) = _layers(pl)
    out = [f"torus {pl.board.p}^{pl.board.d}, {len(pl.cells)} kings "
           f"(edges wrap)"]
    border = "~" * (2 * cols + 3)
    for key in sorted(grids, key=lambda z: (z is not None, z)):
        if key is not None:
            out.append(f"layer {key}:")
        out.append(border)
        for r in range(rows):
            line = " ".join("K" if (r, c) in grids[key] else "."
                            for c in range(cols))
            out.append(f"~ {line} ~")
        out.append(border)
    return "\n".join(out) + "\n"


def _render_svg(pl):
    grids, (rows, cols) = _layers(pl)
    cell = 24
    pad = 10
    layer_keys = sorted(grids, key=lambda z: (z is not None, z))
    width = pad + len(layer_keys) * (cols * cell + pad)
    height = 2 * pad + rows * cell
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}">']
    for li, key in enumerate(layer_keys):
        x0 = pad + li * (cols * cell + pad)
        parts.append(f'<rect x="{x0}" y="{pad}" width="{cols * cell}" '
                     f'height="{rows * cell}" fill="none" stroke="black" '
                     f'stroke-dasharray="6,3"/>')  # dashed frame: torus wrap
        for r in range(rows + 1):
            y = pad + r * cell
            parts.append(f'<line x1="{x0}" y1="{y}" x2="{x0 + cols * cell}" '
                         f'y2="{y}" stroke="gray" stroke-width="0.5"/>')
        for c in range(cols + 1):
            x = x0 + c * cell
            parts.append(f'<line x1="{x}" y1="{pad}" x2="{x}" '
                         f'y2="{pad + rows * cell}" stroke="gray" '
                         f'stroke-width="0.5"/>')
        for (r, c) in sorted(grids[key]):
            cx = x0 + c * cell + cell // 2
            cy = pad + r * cell + cell // 2
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="{cell // 3}" '
                         f'fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
