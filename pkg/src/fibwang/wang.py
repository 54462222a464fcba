"""Wang tiles, the 16-tile set Z, validity checks and a rectangle solver."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

__all__ = [
    "WangTile",
    "WangTileSet",
    "Patch",
    "EquivalenceCertificate",
    "Violation",
    "TileIndexError",
    "Z_TILES",
    "tile_set_z",
    "is_valid_patch",
    "first_violation",
    "solve_rectangle",
    "admissible_dominoes",
    "is_equivalent",
    "render_text",
    "render_svg",
    "render",
]

Z_TILES = (
    "DOJO", "DOHL", "JMDP", "DMDK", "HPJP", "HPHN", "HKDP", "BOIO",
    "ILEO", "ILCL", "ALIO", "EPIP", "IPIK", "IKBM", "IKAK", "CNIP",
)


class TileIndexError(IndexError):
    pass


class WangTile(NamedTuple):
    east: str
    north: str
    west: str
    south: str

    @classmethod
    def parse(cls, text: str) -> WangTile:
        if len(text) != 4:
            raise ValueError(f"tile strings have 4 characters (E, N, W, S), got {text!r}")
        return cls(*text)

    def __str__(self) -> str:
        return "(" + ", ".join(self) + ")"


@dataclass(frozen=True)
class WangTileSet:
    tiles: tuple[WangTile, ...]

    def __post_init__(self):
        tiles = tuple(t if isinstance(t, WangTile) else WangTile(*t) for t in self.tiles)
        if len(set(tiles)) != len(tiles):
            raise ValueError("duplicate tiles in tile set")
        object.__setattr__(self, "tiles", tiles)

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> WangTileSet:
        return cls(tuple(WangTile.parse(s) for s in strings))

    def __len__(self) -> int:
        return len(self.tiles)

    def __getitem__(self, i: int) -> WangTile:
        return self.tiles[i]

    def __iter__(self):
        return iter(self.tiles)

    @property
    def vertical_colors(self) -> set[str]:
        """Colors on east and west edges."""
        return {t.east for t in self.tiles} | {t.west for t in self.tiles}

    @property
    def horizontal_colors(self) -> set[str]:
        """Colors on north and south edges."""
        return {t.north for t in self.tiles} | {t.south for t in self.tiles}

    def to_json(self) -> str:
        if all(len(c) == 1 for t in self.tiles for c in t):
            return json.dumps({"tiles": ["".join(t) for t in self.tiles]})
        return json.dumps({"tiles": [list(t) for t in self.tiles]})

    @classmethod
    def from_json(cls, text: str) -> WangTileSet:
        doc = json.loads(text)
        return cls(tuple(WangTile.parse(t) if isinstance(t, str) else WangTile(*t) for t in doc["tiles"]))


def tile_set_z() -> WangTileSet:
    return WangTileSet.from_strings(Z_TILES)


@dataclass(frozen=True)
class Patch:
    """Tile indices on the half-open window ``[x0, x1) x [y0, y1)``."""

    window: tuple[int, int, int, int]
    assignment: Mapping[tuple[int, int], int] = field(hash=False)

    def __post_init__(self):
        x0, y0, x1, y1 = self.window
        if x0 >= x1 or y0 >= y1:
            raise ValueError(f"empty window {self.window}")
        missing = [p for p in self.positions() if p not in self.assignment]
        if missing:
            raise ValueError(f"assignment is not total on the window; e.g. {missing[0]} is missing")
        object.__setattr__(self, "assignment", dict(self.assignment))

    def positions(self):
        x0, y0, x1, y1 = self.window
        return [(x, y) for y in range(y0, y1) for x in range(x0, x1)]

    def __getitem__(self, pos):
        return self.assignment[pos]

    @property
    def width(self) -> int:
        return self.window[2] - self.window[0]

    @property
    def height(self) -> int:
        return self.window[3] - self.window[1]

    def top_rows(self) -> list[list[int]]:
        x0, y0, x1, y1 = self.window
        return [[self.assignment[x, y] for x in range(x0, x1)] for y in range(y1 - 1, y0 - 1, -1)]

    @classmethod
    def from_top_rows(cls, rows, origin=(0, 0)) -> Patch:
        """``origin`` is the position of the bottom-left cell."""
        rows = [list(r) for r in rows]
        x0, y0 = origin
        h, w = len(rows), len(rows[0])
        assignment = {(x0 + i, y0 + h - 1 - r): a for r, row in enumerate(rows) for i, a in enumerate(row)}
        return cls((x0, y0, x0 + w, y0 + h), assignment)

    def to_json(self) -> str:
        return json.dumps({"window": list(self.window), "rows": self.top_rows()})

    @classmethod
    def from_json(cls, text: str) -> Patch:
        doc = json.loads(text)
        x0, y0, x1, y1 = doc["window"]
        patch = cls.from_top_rows(doc["rows"], (x0, y0))
        if patch.window != (x0, y0, x1, y1):
            raise ValueError(f"rows do not fill window {doc['window']}")
        return patch


class Violation(NamedTuple):
    position: tuple[int, int]
    neighbor: tuple[int, int]
    color: str
    neighbor_color: str

    def __str__(self):
        return (f"tile at {self.position} shows {self.color!r} but its neighbor at "
                f"{self.neighbor} shows {self.neighbor_color!r}")


def first_violation(tiles: WangTileSet, patch: Patch) -> Violation | None:
    n = len(tiles)
    for pos, t in patch.assignment.items():
        if not 0 <= t < n:
            raise TileIndexError(f"tile index {t} at {pos} outside 0..{n - 1}")
    for (x, y) in patch.positions():
        tile = tiles[patch[x, y]]
        right, up = (x + 1, y), (x, y + 1)
        if right in patch.assignment and tile.east != tiles[patch[right]].west:
            return Violation((x, y), right, tile.east, tiles[patch[right]].west)
        if up in patch.assignment and tile.north != tiles[patch[up]].south:
            return Violation((x, y), up, tile.north, tiles[patch[up]].south)
    return None


def is_valid_patch(tiles: WangTileSet, patch: Patch) -> bool:
    return first_violation(tiles, patch) is None


class _Compat:
    """Bitmask neighbor tables for a tile set."""

    def __init__(self, tiles: WangTileSet):
        n = len(tiles)
        self.n = n
        self.full = (1 << n) - 1
        by_west, by_south, by_east, by_north = {}, {}, {}, {}
        for i, t in enumerate(tiles):
            by_west[t.west] = by_west.get(t.west, 0) | (1 << i)
            by_south[t.south] = by_south.get(t.south, 0) | (1 << i)
            by_east[t.east] = by_east.get(t.east, 0) | (1 << i)
            by_north[t.north] = by_north.get(t.north, 0) | (1 << i)
        self.right = [by_west.get(t.east, 0) for t in tiles]
        self.left = [by_east.get(t.west, 0) for t in tiles]
        self.up = [by_south.get(t.north, 0) for t in tiles]
        self.down = [by_north.get(t.south, 0) for t in tiles]

    def support(self, table, mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= table[low.bit_length() - 1]
            mask ^= low
        return out


def _propagate(compat: _Compat, domains: dict, queue: list, w: int, h: int) -> bool:
    """Arc consistency on the grid; ``queue`` holds cells whose domain shrank."""
    directions = ((1, 0, compat.right), (-1, 0, compat.left), (0, 1, compat.up), (0, -1, compat.down))
    while queue:
        x, y = queue.pop()
        dom = domains[x, y]
        for dx, dy, table in directions:
            nb = (x + dx, y + dy)
            if not (0 <= nb[0] < w and 0 <= nb[1] < h):
                continue
            old = domains[nb]
            new = old & compat.support(table, dom)
            if new != old:
                if not new:
                    return False
                domains[nb] = new
                queue.append(nb)
    return True


def solve_rectangle(tiles: WangTileSet, width: int, height: int,
                    pinned: Mapping[tuple[int, int], int] | None = None,
                    origin: tuple[int, int] = (0, 0)) -> Patch | None:
    """Find a valid tiling of a ``width x height`` rectangle, or None.

    ``pinned`` positions are absolute; the rectangle's bottom-left cell is at
    ``origin``.  Cells are filled bottom row first, left to right, trying
    tiles in index order while maintaining arc consistency.
    """
    pinned = dict(pinned or {})
    compat = _Compat(tiles)
    ox, oy = origin
    domains = {(x, y): compat.full for y in range(height) for x in range(width)}
    for (px, py), t in pinned.items():
        cell = (px - ox, py - oy)
        if cell not in domains:
            raise ValueError(f"pinned position {(px, py)} outside the rectangle")
        if not 0 <= t < compat.n:
            raise TileIndexError(f"tile index {t} outside 0..{compat.n - 1}")
        domains[cell] = 1 << t
    if not _propagate(compat, domains, list(domains), width, height):
        return None
    order = [(x, y) for y in range(height) for x in range(width)]

    def search(k: int, domains: dict):
        while k < len(order) and domains[order[k]] & (domains[order[k]] - 1) == 0:
            k += 1
        if k == len(order):
            return domains
        cell = order[k]
        mask = domains[cell]
        while mask:
            low = mask & -mask
            mask ^= low
            trial = dict(domains)
            trial[cell] = low
            if _propagate(compat, trial, [cell], width, height):
                found = search(k + 1, trial)
                if found is not None:
                    return found
        return None

    solved = search(0, domains)
    if solved is None:
        return None
    assignment = {(x + ox, y + oy): solved[x, y].bit_length() - 1 for (x, y) in order}
    return Patch((ox, oy, ox + width, oy + height), assignment)


def admissible_dominoes(tiles: WangTileSet, direction: int, radius: int) -> set[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``b`` right of (direction 1) or above (direction 2) ``a``.

    A pair is admissible when the domino, surrounded by ``radius`` cells on
    every side, extends to a valid rectangle.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if direction not in (1, 2):
        raise ValueError(f"direction must be 1 or 2, got {direction}")
    compat = _Compat(tiles)
    table = compat.right if direction == 1 else compat.up
    if direction == 1:
        w, h, second = 2 + 2 * radius, 1 + 2 * radius, (radius + 1, radius)
    else:
        w, h, second = 1 + 2 * radius, 2 + 2 * radius, (radius, radius + 1)
    out = set()
    for a in range(len(tiles)):
        for b in range(len(tiles)):
            if not table[a] >> b & 1:
                continue
            if radius == 0 or solve_rectangle(tiles, w, h, {(radius, radius): a, second: b}) is not None:
                out.add((a, b))
    return out


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Color bijections and the tile bijection taking one tile set onto another."""

    vert: Mapping[str, str]
    horiz: Mapping[str, str]
    tile_map: Mapping[int, int]

    def verify(self, first: WangTileSet, second: WangTileSet) -> bool:
        if len(first) != len(second) or sorted(self.tile_map.values()) != list(range(len(second))):
            return False
        for i, t in enumerate(first):
            image = WangTile(self.vert[t.east], self.horiz[t.north], self.vert[t.west], self.horiz[t.south])
            if second[self.tile_map[i]] != image:
                return False
        return True


def is_equivalent(first: WangTileSet, second: WangTileSet) -> EquivalenceCertificate | None:
    """Search for color bijections relabeling ``first`` into ``second``.

    Tiles of ``first`` are matched in index order against candidates in
    index order, so the returned certificate is deterministic.
    """
    if len(first) != len(second):
        return None
    if len(first.vertical_colors) != len(second.vertical_colors):
        return None
    if len(first.horizontal_colors) != len(second.horizontal_colors):
        return None
    n = len(first)

    def bind(mapping, inverse, a, b, undo):
        if a in mapping:
            return mapping[a] == b
        if b in inverse:
            return False
        mapping[a] = b
        inverse[b] = a
        undo.append((mapping, inverse, a, b))
        return True

    vert, vert_inv, horiz, horiz_inv = {}, {}, {}, {}
    tile_map: dict[int, int] = {}
    used = [False] * n

    def search(i: int) -> bool:
        if i == n:
            return True
        t = first[i]
        for j in range(n):
            if used[j]:
                continue
            u = second[j]
            undo: list = []
            ok = (bind(vert, vert_inv, t.east, u.east, undo)
                  and bind(horiz, horiz_inv, t.north, u.north, undo)
                  and bind(vert, vert_inv, t.west, u.west, undo)
                  and bind(horiz, horiz_inv, t.south, u.south, undo))
            if ok:
                used[j] = True
                tile_map[i] = j
                if search(i + 1):
                    return True
                used[j] = False
                del tile_map[i]
            for mapping, inverse, a, b in reversed(undo):
                del mapping[a]
                del inverse[b]
        return False

    if not search(0):
        return None
    return EquivalenceCertificate(dict(vert), dict(horiz), dict(tile_map))


def render_text(patch: Patch) -> str:
    rows = patch.top_rows()
    width = max(len(str(a)) for row in rows for a in row)
    return "\n".join(" ".join(str(a).rjust(width) for a in row) for row in rows)


_CELL = 32


def render_svg(tiles: WangTileSet, patch: Patch) -> str:
    """SVG drawing with one 32-unit square per tile and its four edge labels."""
    rows = patch.top_rows()
    h, w = len(rows), len(rows[0])
    c = _CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * c}" height="{h * c}" '
        f'viewBox="0 0 {w * c} {h * c}" font-family="monospace">'
    ]
    for r, row in enumerate(rows):
        for i, index in enumerate(row):
            x, y = i * c, r * c
            t = tiles[index]
            out.append(f'<g><rect x="{x}" y="{y}" width="{c}" height="{c}" fill="white" stroke="black"/>')
            out.append(f'<text x="{x + c // 2}" y="{y + c // 2 + 3}" font-size="9" text-anchor="middle">{index}</text>')
            out.append(f'<text x="{x + c - 2}" y="{y + c // 2 + 3}" font-size="7" text-anchor="end">{t.east}</text>')
            out.append(f'<text x="{x + c // 2}" y="{y + 8}" font-size="7" text-anchor="middle">{t.north}</text>')
            out.append(f'<text x="{x + 2}" y="{y + c // 2 + 3}" font-size="7" text-anchor="start">{t.west}</text>')
            out.append(f'<text x="{x + c // 2}" y="{y + c - 2}" font-size="7" text-anchor="middle">{t.south}</text></g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(tiles: WangTileSet, patch: Patch, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(patch)
    if fmt == "svg":
        return render_svg(tiles, patch)
    raise ValueError(f"unknown format {fmt!r}")
