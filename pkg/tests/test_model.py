from __future__ import annotations

import random

import numpy as np
import pytest

from cbsbounds import (
    Instance,
    InstanceSummary,
    ParseError,
    bfs_distance,
    distance_field,
    is_valid_path,
    parse_map,
    parse_scen,
    path_cost,
    radius,
    read_scen_entries,
    serialize_map,
)
from conftest import grid_from_rows, open_grid
from oracles import brute_force_radius, dijkstra_distance


def map_text(rows: list[str]) -> str:
    return "\n".join(
        ["type octile", f"height {len(rows)}", f"width {len(rows[0])}", "map"] + rows
    )


def make_warehouse_text(height=161, width=63) -> str:
    """Deterministic warehouse-style map: shelf blocks separated by aisles."""
    rows = []
    for y in range(height):
        if y % 4 == 0 or y < 2 or y >= height - 2:
            rows.append("." * width)
        else:
            row = []
            for x in range(width):
                inside = 3 <= x < width - 3 and (x - 3) % 7 < 5
                row.append("@" if inside else ".")
            rows.append("".join(row))
    return map_text(rows)


class TestParseMap:
    def test_all_open_3x3(self):
        grid = parse_map(map_text(["...", "...", "..."]))
        assert (grid.width, grid.height, grid.n) == (3, 3, 9)

    def test_forced_count_2x2(self):
        grid = parse_map(map_text([".@", "@."]))
        assert grid.n == 2
        assert grid.is_passable((0, 0)) and grid.is_passable((1, 1))
        assert not grid.is_passable((1, 0))

    def test_g_passable_and_all_blockers(self):
        grid = parse_map(map_text([".G@", "OTW"]))
        assert grid.n == 2

    def test_warehouse_scale_recount(self):
        text = make_warehouse_text()
        grid = parse_map(text)
        assert (grid.height, grid.width) == (161, 63)
        # independent textual recount of passable symbols
        body = text.splitlines()[4:]
        expected = sum(row.count(".") + row.count("G") for row in body)
        assert grid.n == expected
        assert grid.passable.size == 161 * 63

    @pytest.mark.parametrize(
        "lines, fragment",
        [
            (["height 2", "width 2", "map", "..", ".."], "line 1"),
            (["type octile", "height x", "width 2", "map", ".."], "line 2"),
            (["type octile", "height 1", "width 3", "map", ".."], "line 5"),
            (["type octile", "height 1", "width 2", "map", ".z"], "line 5"),
            (["type octile", "height 2", "width 2", "map", ".."], "line 6"),
        ],
    )
    def test_errors_name_line(self, lines, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse_map("\n".join(lines))

    def test_roundtrip_mask_exact(self):
        rng = random.Random(7)
        for _ in range(20):
            rows = [
                "".join(rng.choice(".@") for _ in range(6)) for _ in range(4)
            ]
            if all(ch == "@" for row in rows for ch in row):
                continue
            grid = parse_map(map_text(rows))
            again = parse_map(serialize_map(grid))
            assert np.array_equal(grid.passable, again.passable)


SCEN_HEAD = "version 1"


def scen_text(rows: list[tuple]) -> str:
    lines = [SCEN_HEAD]
    for bucket, name, w, h, sx, sy, gx, gy, opt in rows:
        lines.append(f"{bucket}\t{name}\t{w}\t{h}\t{sx}\t{sy}\t{gx}\t{gy}\t{opt}")
    return "\n".join(lines)


class TestParseScen:
    def test_single_row(self):
        grid = open_grid(4)
        inst = parse_scen(scen_text([(0, "m", 4, 4, 0, 0, 3, 3, 6)]), 1, grid)
        assert inst.k == 1
        assert inst.agents[0] == ((0, 0), (3, 3))

    def test_zero_agents_rejected(self):
        grid = open_grid(3)
        with pytest.raises(ParseError, match="at least one agent"):
            parse_scen(scen_text([(0, "m", 3, 3, 0, 0, 2, 2, 4)]), 0, grid)

    def test_version_mismatch(self):
        with pytest.raises(ParseError, match="version"):
            read_scen_entries("version 2\n0\tm\t3\t3\t0\t0\t1\t1\t2")

    def test_blocked_or_out_of_bounds(self):
        grid = grid_from_rows([".@.", "..."])
        bad_cell = scen_text([(0, "m", 3, 2, 1, 0, 2, 1, 2)])
        with pytest.raises(ParseError, match="blocked"):
            parse_scen(bad_cell, 1, grid)
        oob = scen_text([(0, "m", 3, 2, 0, 0, 5, 5, 2)])
        with pytest.raises(ParseError, match="out of bounds"):
            parse_scen(oob, 1, grid)

    def test_declared_length_matches_bfs(self):
        grid = grid_from_rows(
            [
                ".....",
                ".@@@.",
                ".....",
            ]
        )
        start, goal = (0, 0), (4, 0)
        oracle = dijkstra_distance(grid, start, goal)
        text = scen_text([(0, "m", 5, 3, *start, *goal, oracle)])
        entries = read_scen_entries(text)
        assert entries[0].optimal_length == bfs_distance(grid, start, goal)


class TestDistances:
    def test_zero_distance(self, open5):
        assert bfs_distance(open5, (2, 2), (2, 2)) == 0

    def test_manhattan_on_open_grid(self, open5):
        assert bfs_distance(open5, (0, 0), (4, 4)) == 8

    def test_corridor_matches_dijkstra(self):
        grid = grid_from_rows(
            [
                "......",
                "@@@@.@",
                "......",
                ".@@@@@",
                "......",
            ]
        )
        cells = list(grid.cells())
        rng = random.Random(11)
        for _ in range(40):
            a, b = rng.choice(cells), rng.choice(cells)
            assert bfs_distance(grid, a, b) == dijkstra_distance(grid, a, b)

    def test_symmetry(self):
        grid = grid_from_rows([".@..", "....", "..@."])
        cells = list(grid.cells())
        rng = random.Random(3)
        for _ in range(30):
            a, b = rng.choice(cells), rng.choice(cells)
            assert bfs_distance(grid, a, b) == bfs_distance(grid, b, a)

    def test_unreachable_is_none(self):
        grid = grid_from_rows([".@."])
        assert bfs_distance(grid, (0, 0), (2, 0)) is None

    def test_triangle_inequality_sampled(self):
        rng = random.Random(19)
        for _ in range(5):
            rows = [
                "".join("." if rng.random() > 0.25 else "@" for _ in range(8))
                for _ in range(8)
            ]
            rows[0] = "." * 8  # keep at least one open row
            grid = grid_from_rows(rows)
            cells = list(grid.cells())
            field_cache = {}

            def dist(a, b):
                if a not in field_cache:
                    field_cache[a] = distance_field(grid, a)
                d = field_cache[a][b[1], b[0]]
                return None if d < 0 else int(d)

            for _ in range(60):
                u, v, w = (rng.choice(cells) for _ in range(3))
                duw, duv, dvw = dist(u, w), dist(u, v), dist(v, w)
                if duw is None or duv is None or dvw is None:
                    continue
                assert duw <= duv + dvw


class TestRadius:
    def test_single_cell(self):
        assert radius(open_grid(1)) == (0, (0, 0))

    def test_open_5x5(self, open5):
        assert radius(open5) == (4, (2, 2))

    def test_open_7x7(self):
        r, _ = radius(open_grid(7))
        assert r == 6

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="disconnected"):
            radius(grid_from_rows([".@."]))

    def test_matches_brute_force_on_random_maps(self):
        rng = random.Random(23)
        done = 0
        while done < 6:
            rows = [
                "".join("." if rng.random() > 0.3 else "@" for _ in range(7))
                for _ in range(6)
            ]
            grid = grid_from_rows(rows) if any("." in r for r in rows) else None
            if grid is None:
                continue
            expected = brute_force_radius(grid)
            if expected is None:
                continue  # disconnected sample
            assert radius(grid)[0] == expected
            done += 1


class TestInstanceAndPaths:
    def test_instance_validations(self, open5):
        with pytest.raises(ValueError, match="start cells"):
            Instance(open5, (((0, 0), (1, 1)), ((0, 0), (2, 2))))
        with pytest.raises(ValueError, match="goal cells"):
            Instance(open5, (((0, 0), (1, 1)), ((1, 0), (1, 1))))
        with pytest.raises(ValueError, match="at least one agent"):
            Instance(open5, ())

    def test_path_helpers(self, open5):
        path = ((0, 0), (1, 0), (1, 0), (1, 1))
        assert path_cost(path) == 3
        assert is_valid_path(open5, path)
        assert not is_valid_path(open5, ((0, 0), (2, 0)))

    def test_summary_row(self):
        assert InstanceSummary("empty-a", 2304, 64, 70).csv_row() == "empty-a,2304,64,70"
        with pytest.raises(ValueError):
            InstanceSummary("x", 0, 1, 1)
