"""JSON document formats, the signal grammar, and renderers.

Signals are written ``LABEL(SRC->DST)`` where SRC is ``0`` or an axial
direction and DST is an axial direction; labels in side sets are plain
strings with negatives prefixed ``-``.  Tileset and assembly documents are
self-contained JSON objects.
"""

from __future__ import annotations

import json
import re

from .model import (
    ActiveTile,
    DIRECTIONS,
    Signal,
    TileSide,
    check_registered,
    is_positive,
    validate_active_tile,
)

_SIGNAL_RE = re.compile(r"^\s*([^()\s]+)\((0|[+-][xy])->([+-][xy])\)\s*$")


def parse_signal(text: str) -> Signal:
    m = _SIGNAL_RE.match(text)
    if not m:
        raise ValueError(
            f"bad signal {text!r}: expected LABEL(SRC->DST) with "
            f"SRC in 0/+x/-x/+y/-y and DST a direction"
        )
    base, src, dst = m.groups()
    if not is_positive(base):
        raise ValueError(f"bad signal {text!r}: label must be the base symbol")
    return Signal(base, src, dst)


def format_signal(s: Signal) -> str:
    return f"{s.base}({s.src}->{s.dst})"


# -- tiles and tilesets --------------------------------------------------


def tile_to_doc(tile: ActiveTile) -> dict:
    return {
        "name": tile.name,
        "sides": {
            d: {
                "active": sorted(tile.side(d).active),
                "inactive": sorted(tile.side(d).inactive),
            }
            for d in DIRECTIONS
        },
        "activation": sorted(format_signal(s) for s in tile.activation),
        "transmission": sorted(format_signal(s) for s in tile.transmission),
    }


def tile_from_doc(doc: dict) -> ActiveTile:
    sides = []
    for d in DIRECTIONS:
        entry = doc.get("sides", {}).get(d, {})
        sides.append(
            TileSide(
                frozenset(entry.get("active", ())),
                frozenset(entry.get("inactive", ())),
            )
        )
    return ActiveTile(
        sides=tuple(sides),
        activation=frozenset(parse_signal(t) for t in doc.get("activation", ())),
        transmission=frozenset(parse_signal(t) for t in doc.get("transmission", ())),
        name=doc.get("name", ""),
    )


def tileset_to_doc(system) -> dict:
    return {
        "name": system.name,
        "theta": system.theta,
        "strength": dict(system.strength),
        "tiles": [tile_to_doc(t) for t in system.tiles],
    }


def tileset_from_doc(doc: dict):
    from .assembler import TileSystem

    problems = []
    strength = doc.get("strength", {})
    for base, value in strength.items():
        if not isinstance(value, int) or value < 0:
            problems.append(f"strength[{base}] must be a nonnegative integer")
    theta = doc.get("theta")
    if not isinstance(theta, int) or theta < 1:
        problems.append("theta must be a positive integer")
    tiles = []
    for k, tdoc in enumerate(doc.get("tiles", ())):
        label = tdoc.get("name") or f"#{k}"
        try:
            tile = tile_from_doc(tdoc)
        except ValueError as exc:
            problems.append(f"tile {label}: {exc}")
            continue
        for msg in validate_active_tile(tile):
            problems.append(f"tile {label}: {msg}")
        for msg in check_registered(tile, strength):
            problems.append(f"tile {label}: {msg}")
        tiles.append(tile)
    if not tiles:
        problems.append("tileset holds no tiles")
    if problems:
        raise ValueError("; ".join(problems))
    return TileSystem(
        tiles=tiles, strength=strength, theta=theta, name=doc.get("name", "")
    )


# -- assemblies -----------------------------------------------------------


def assembly_to_doc(cells: dict, name: str = "") -> dict:
    return {
        "name": name,
        "cells": [
            {"x": x, "y": y, "tile": tile_to_doc(t)}
            for (x, y), t in sorted(cells.items())
        ],
    }


def assembly_from_doc(doc: dict) -> dict:
    cells = {}
    for entry in doc.get("cells", ()):
        pos = (entry["x"], entry["y"])
        if pos in cells:
            raise ValueError(f"duplicate cell at {pos}")
        cells[pos] = tile_from_doc(entry["tile"])
    if not cells:
        raise ValueError("assembly holds no cells")
    return cells


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- rendering ------------------------------------------------------------


def render_ascii(cells: dict) -> str:
    """Name-grid view; cell width adapts to the longest name."""
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    width = max(len(t.name) for t in cells.values()) or 1
    lines = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for x in range(min(xs), max(xs) + 1):
            t = cells.get((x, y))
            row.append((t.name if t else "").ljust(width))
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines) + "\n"


_SIDE_ANCHOR = {
    "+y": (0.5, 0.12, "middle"),
    "-y": (0.5, 0.95, "middle"),
    "+x": (0.97, 0.56, "end"),
    "-x": (0.03, 0.56, "start"),
}


def render_svg(cells: dict, scale: int = 48) -> str:
    """One square per cell with the tile name and its active labels."""
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    x0, y0 = min(xs), min(ys)
    w = (max(xs) - x0 + 1) * scale
    h = (max(ys) - y0 + 1) * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for (x, y), tile in sorted(cells.items()):
        px = (x - x0) * scale
        py = h - (y - y0 + 1) * scale
        parts.append(
            f'<rect x="{px}" y="{py}" width="{scale}" height="{scale}" '
            f'fill="#f4f1e8" stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px + scale / 2}" y="{py + scale * 0.58}" '
            f'font-size="{scale * 0.22}" text-anchor="middle" '
            f'font-family="monospace">{tile.name}</text>'
        )
        for d, (fx, fy, anchor) in _SIDE_ANCHOR.items():
            labels = ",".join(sorted(tile.side(d).active))
            if not labels:
                continue
            parts.append(
                f'<text x="{px + scale * fx}" y="{py + scale * fy}" '
                f'font-size="{scale * 0.16}" text-anchor="{anchor}" '
                f'fill="#8a2d2d" font-family="monospace">{labels}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
