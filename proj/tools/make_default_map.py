#!/usr/bin/env python3
"""Generate the default 200x200 riverbank fixture (terrain + elevation).

Layout: a two-lane road on the west edge, a meandering main river near the
east edge with an eastern tributary joining it, a short detached side stream
running parallel to the main river, a delta wedge at the confluence, a hill
with trees in the interior, and park hotspots along the west bank.

Usage: make_default_map.py <out_dir>
"""

import math
import sys
from pathlib import Path

W = H = 200


def main_river_x(y):
    return int(round(176 + 5 * math.sin(y / 16.0)))


def build():
    g = [["." for _ in range(W)] for _ in range(H)]

    for y in range(H):
        g[y][0] = g[y][1] = "="

    river = set()
    for y in range(H):
        river.add((main_river_x(y), y))

    # Confluence at y=75: the main river is locally vertical there so the
    # junction cell has river neighbours N, S and E.
    jy = 75
    jx = main_river_x(jy)
    assert main_river_x(jy - 1) == jx == main_river_x(jy + 1)
    for x in range(jx + 1, jx + 7):
        river.add((x, jy))
    k = 1
    while jx + 6 + k < W and jy - k >= 0:
        river.add((jx + 6 + k, jy - k))
        k += 1

    # Detached side stream, 7 cells west of the main channel.
    for y in range(120, 176):
        river.add((main_river_x(y) - 7, y))

    for (x, y) in river:
        g[y][x] = "~"

    for y in range(H):
        for x in range(W):
            if g[y][x] != ".":
                continue
            near = any(
                (x + dx, y + dy) in river
                for dx in (-1, 0, 1)
                for dy in (-1, 0, 1)
                if (dx, dy) != (0, 0)
            )
            if near:
                g[y][x] = "r"

    for y in range(jy - 6, jy - 1):
        for x in range(jx + 2, jx + 7):
            if g[y][x] == ".":
                g[y][x] = "d"

    def disc(cx, cy, r, ch):
        for y in range(cy - r, cy + r + 1):
            for x in range(cx - r, cx + r + 1):
                if 0 <= x < W and 0 <= y < H and (x - cx) ** 2 + (y - cy) ** 2 <= r * r:
                    if g[y][x] == ".":
                        g[y][x] = ch

    disc(60, 40, 5, "t")
    disc(95, 130, 4, "t")
    disc(130, 170, 6, "t")
    disc(40, 110, 3, "t")

    for y in range(150, 157):
        for x in range(25, 32):
            g[y][x] = "#"
    for y in range(20, 25):
        for x in range(110, 115):
            g[y][x] = "#"

    hotspots = [(main_river_x(y) - 3, y) for y in (20, 50, 95, 130, 160, 190)]
    hotspots.append((100, 60))
    for (x, y) in hotspots:
        assert g[y][x] == ".", (x, y, g[y][x])
        g[y][x] = "H"

    elev = [[0.0] * W for _ in range(H)]
    for y in range(H):
        for x in range(W):
            hill = 4.0 * math.exp(-((x - 95) ** 2 + (y - 130) ** 2) / (2 * 36.0))
            elev[y][x] = 10.0 - 8.0 * x / (W - 1) + hill
    return g, elev


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    g, elev = build()
    (out / "riverbank.map").write_text("".join("".join(row) + "\n" for row in g))
    (out / "riverbank.elev").write_text(
        "".join(" ".join(f"{v:.3f}" for v in row) + "\n" for row in elev)
    )


if __name__ == "__main__":
    main()
