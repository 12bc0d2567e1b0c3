"""MAPF world model: 4-connected grid maps, agents, shortest-path utilities,
and readers for the community benchmark ``.map`` / ``.scen`` text formats.

Cells are ``(x, y)`` pairs with ``x`` the zero-based column and ``y`` the
zero-based row, matching the coordinate convention of the benchmark scenario
files. Everything here is immutable once constructed and safe to share.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

Cell = tuple[int, int]
Path = tuple[Cell, ...]

MOVES: tuple[Cell, ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))

PASSABLE_CHARS = frozenset(".G")
BLOCKED_CHARS = frozenset("@OTW")


class ParseError(ValueError):
    """Malformed .map / .scen input; the message names the offending line."""


@dataclass(frozen=True, eq=False)
class GridMap:
    """A rectangular 4-connected grid with blocked cells.

    ``passable`` is a boolean array of shape ``(height, width)`` indexed
    ``[row, col]``; the vertex count ``n`` is the number of passable cells.
    """

    width: int
    height: int
    passable: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("map dimensions must be positive")
        if self.passable.shape != (self.height, self.width):
            raise ValueError("passable mask shape does not match dimensions")
        if not bool(self.passable.any()):
            raise ValueError("map has no passable cell")
        self.passable.setflags(write=False)

    @property
    def n(self) -> int:
        """Number of passable cells (the graph's vertex count)."""
        return int(self.passable.sum())

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_passable(self, cell: Cell) -> bool:
        x, y = cell
        return (
            0 <= x < self.width
            and 0 <= y < self.height
            and bool(self.passable[y, x])
        )

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Passable 4-neighbors of a cell (wait moves are not included)."""
        x, y = cell
        out = []
        for dx, dy in MOVES:
            nxt = (x + dx, y + dy)
            if self.is_passable(nxt):
                out.append(nxt)
        return out

    def cells(self) -> Iterator[Cell]:
        """Passable cells in row-major order."""
        for y in range(self.height):
            for x in range(self.width):
                if self.passable[y, x]:
                    yield (x, y)


def parse_map(text: str) -> GridMap:
    """Parse the benchmark ``.map`` format.

    Header: ``type octile`` / ``height H`` / ``width W`` / ``map``, followed by
    ``H`` rows of ``W`` symbols. ``.`` and ``G`` are passable; ``@ O T W``
    are blocked; anything else is an error.
    """
    lines = text.splitlines()

    def header(idx: int, key: str) -> str:
        if idx >= len(lines):
            raise ParseError(f"line {idx + 1}: missing '{key}' header line")
        return lines[idx]

    if not header(0, "type").startswith("type"):
        raise ParseError("line 1: expected 'type ...' header")
    for idx, key in ((1, "height"), (2, "width")):
        parts = header(idx, key).split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(f"line {idx + 1}: expected '{key} <int>'")
        try:
            value = int(parts[1])
        except ValueError:
            raise ParseError(f"line {idx + 1}: expected '{key} <int>'") from None
        if key == "height":
            height = value
        else:
            width = value
    if header(3, "map").strip() != "map":
        raise ParseError("line 4: expected 'map'")
    if height < 1 or width < 1:
        raise ParseError("line 2: map dimensions must be positive")

    mask = np.zeros((height, width), dtype=bool)
    for row in range(height):
        lineno = 5 + row
        if 4 + row >= len(lines):
            raise ParseError(f"line {lineno}: missing map row {row}")
        raw = lines[4 + row].rstrip("\r")
        if len(raw) != width:
            raise ParseError(
                f"line {lineno}: row length {len(raw)} does not match width {width}"
            )
        for col, sym in enumerate(raw):
            if sym in PASSABLE_CHARS:
                mask[row, col] = True
            elif sym in BLOCKED_CHARS:
                mask[row, col] = False
            else:
                raise ParseError(f"line {lineno}: unknown symbol {sym!r}")
    return GridMap(width, height, mask)


def serialize_map(grid: GridMap) -> str:
    """Emit a .map text whose passable/blocked mask round-trips bit-exactly."""
    rows = [
        "".join("." if grid.passable[y, x] else "@" for x in range(grid.width))
        for y in range(grid.height)
    ]
    head = ["type octile", f"height {grid.height}", f"width {grid.width}", "map"]
    return "\n".join(head + rows) + "\n"


@dataclass(frozen=True)
class ScenEntry:
    """One row of a ``.scen`` file."""

    bucket: int
    map_name: str
    map_width: int
    map_height: int
    start: Cell
    goal: Cell
    optimal_length: float


def read_scen_entries(text: str) -> list[ScenEntry]:
    """Parse the ``version 1`` scenario format into raw entries."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("line 1: empty scenario file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "version" or head[1] != "1":
        raise ParseError(f"line 1: unsupported scenario version {lines[0]!r}")
    entries = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 9:
            raise ParseError(f"line {i}: expected 9 fields, got {len(parts)}")
        try:
            bucket = int(parts[0])
            w, h = int(parts[2]), int(parts[3])
            sx, sy, gx, gy = (int(p) for p in parts[4:8])
            opt = float(parts[8])
        except ValueError:
            raise ParseError(f"line {i}: malformed numeric field") from None
        entries.append(ScenEntry(bucket, parts[1], w, h, (sx, sy), (gx, gy), opt))
    return entries


@dataclass(frozen=True)
class Instance:
    """A MAPF instance: a grid plus an ordered list of (start, goal) agents."""

    map: GridMap
    agents: tuple[tuple[Cell, Cell], ...]

    def __post_init__(self):
        if len(self.agents) < 1:
            raise ValueError("at least one agent required")
        starts = [s for s, _ in self.agents]
        goals = [g for _, g in self.agents]
        if len(set(starts)) != len(starts):
            raise ValueError("agent start cells must be distinct")
        if len(set(goals)) != len(goals):
            raise ValueError("agent goal cells must be distinct")
        for i, (s, g) in enumerate(self.agents):
            if not self.map.is_passable(s):
                raise ValueError(f"agent {i} start {s} is blocked or out of bounds")
            if not self.map.is_passable(g):
                raise ValueError(f"agent {i} goal {g} is blocked or out of bounds")

    @property
    def k(self) -> int:
        return len(self.agents)


def parse_scen(text: str, count: int, grid: GridMap) -> Instance:
    """Build an Instance from the first ``count`` scenario rows."""
    if count < 1:
        raise ParseError("at least one agent required")
    entries = read_scen_entries(text)
    if count > len(entries):
        raise ParseError(
            f"requested {count} agents but scenario has only {len(entries)} rows"
        )
    agents = []
    for i, e in enumerate(entries[:count]):
        for which, cell in (("start", e.start), ("goal", e.goal)):
            if not grid.in_bounds(cell):
                raise ParseError(f"line {i + 2}: {which} {cell} out of bounds")
            if not grid.is_passable(cell):
                raise ParseError(f"line {i + 2}: {which} {cell} is a blocked cell")
        agents.append((e.start, e.goal))
    return Instance(grid, tuple(agents))


def path_cost(path: Path) -> int:
    """Termination time of a path: the index of its final waypoint."""
    return len(path) - 1


def is_valid_path(grid: GridMap, path: Path) -> bool:
    """Waypoints are passable and consecutive steps are waits or 4-adjacent."""
    if not path:
        return False
    if not all(grid.is_passable(c) for c in path):
        return False
    for (x0, y0), (x1, y1) in zip(path, path[1:]):
        if abs(x0 - x1) + abs(y0 - y1) > 1:
            return False
    return True


def distance_field(grid: GridMap, source: Cell) -> np.ndarray:
    """BFS distances from ``source`` to every cell; -1 marks unreachable."""
    if not grid.is_passable(source):
        raise ValueError(f"source {source} is blocked or out of bounds")
    dist = np.full((grid.height, grid.width), -1, dtype=np.int32)
    dist[source[1], source[0]] = 0
    queue = deque([source])
    while queue:
        x, y = queue.popleft()
        d = dist[y, x] + 1
        for dx, dy in MOVES:
            nx, ny = x + dx, y + dy
            if (
                0 <= nx < grid.width
                and 0 <= ny < grid.height
                and grid.passable[ny, nx]
                and dist[ny, nx] < 0
            ):
                dist[ny, nx] = d
                queue.append((nx, ny))
    return dist


def bfs_distance(grid: GridMap, a: Cell, b: Cell) -> Optional[int]:
    """Exact unweighted shortest-path length, or None if unreachable."""
    if not grid.is_passable(b):
        raise ValueError(f"target {b} is blocked or out of bounds")
    d = distance_field(grid, a)[b[1], b[0]]
    return None if d < 0 else int(d)


def radius(grid: GridMap) -> tuple[int, Cell]:
    """Minimum eccentricity over all cells, with one center cell attaining it.

    Raises ValueError on a disconnected map.
    """
    cells = list(grid.cells())
    first = distance_field(grid, cells[0])
    for x, y in cells:
        if first[y, x] < 0:
            raise ValueError("disconnected map has no finite radius")
    best: Optional[int] = None
    center = cells[0]
    for cell in cells:
        field = distance_field(grid, cell)
        ecc = int(max(field[y, x] for x, y in cells))
        if best is None or ecc < best:
            best, center = ecc, cell
    return best, center


@dataclass(frozen=True)
class InstanceSummary:
    """The (n, k, C) triple of a benchmark instance, for report tables."""

    name: str
    n: int
    k: int
    C: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.C < 0:
            raise ValueError("summary requires n >= 1, k >= 1, C >= 0")

    def csv_row(self) -> str:
        return f"{self.name},{self.n},{self.k},{self.C}"
