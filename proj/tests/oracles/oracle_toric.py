#!/usr/bin/env python3
"""Freeze lattice-count fixtures for the bundled diagrams.

Counts are recomputed here from first principles (shoelace + brute lattice
enumeration + Pick) without reusing any engine code.
"""

import json
import os


def load(path):
    with open(path) as f:
        return json.load(f)


def polygon_counts(vertices, triangles):
    hull = convex_hull([tuple(v) for v in vertices])
    area2 = 0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        area2 += x1 * y2 - x2 * y1
    area2 = abs(area2)

    xs = [v[0] for v in hull]
    ys = [v[1] for v in hull]
    inside = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            c = classify(hull, (x, y))
            if c == 1:
                inside += 1
            elif c == 0:
                boundary += 1

    trivert = {tuple(p) for t in triangles for p in t}
    p = len(trivert) - 3
    s = inside + boundary - 3 - p
    fg, fn = inside, boundary
    chi = area2
    assert chi == 2 * fg - 2 + fn, "Pick"
    assert chi == 1 + p + s + fg
    nodes = len(triangles)
    return {"p": p, "s": s, "fg": fg, "fn": fn, "chi": chi,
            "nodes": nodes, "rays": fn, "internal_edges": (3 * nodes - fn) // 2}


def convex_hull(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def half(points):
        out = []
        for pt in points:
            while len(out) >= 2 and cross(out[-2], out[-1], pt) <= 0:
                out.pop()
            out.append(pt)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def classify(hull, pt):
    """1 interior, 0 boundary, -1 outside."""
    on_edge = False
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        c = cross(a, b, pt)
        if c < 0:
            return -1
        if c == 0:
            lo = (min(a[0], b[0]), min(a[1], b[1]))
            hi = (max(a[0], b[0]), max(a[1], b[1]))
            if lo[0] <= pt[0] <= hi[0] and lo[1] <= pt[1] <= hi[1]:
                on_edge = True
    return 0 if on_edge else 1


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    corpus = os.path.normpath(os.path.join(here, "..", "..", "data", "corpus"))
    out = {}
    for name in ["c3", "conifold", "c3_z3", "local_p2", "c3_z3_leg"]:
        d = load(os.path.join(corpus, name + ".json"))
        dg = d.get("diagram", d)
        out[name] = polygon_counts(dg["vertices"], dg["triangles"])
    dest = os.path.join(here, "..", "data", "oracle_toric.json")
    with open(dest, "w") as f:
        json.dump(out, f, indent=1, sort_keys=True)
        f.write("\n")
    print("wrote", os.path.normpath(dest))


if __name__ == "__main__":
    main()
