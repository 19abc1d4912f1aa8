"""Independent reference computations. Nothing here imports the traversal code under test."""

import math
from itertools import combinations


def dda_walk(a, b):
    """Nearest-pixel DDA in floating point, stepping from the lexicographically smaller end.

    Ties (exact .5) round away from the start, the same convention as the
    integer walk; the pixels are returned in a -> b order.
    """
    start, end = (a, b) if tuple(a) <= tuple(b) else (b, a)
    dx, dy = end[0] - start[0], end[1] - start[1]
    n = max(abs(dx), abs(dy))
    if n == 0:
        return [tuple(a)]
    sx = 1 if dx >= 0 else -1
    sy = 1 if dy >= 0 else -1
    pts = [
        (start[0] + sx * math.floor(k * abs(dx) / n + 0.5),
         start[1] + sy * math.floor(k * abs(dy) / n + 0.5))
        for k in range(n + 1)
    ]
    return pts if tuple(a) <= tuple(b) else pts[::-1]


def segment_oracle(mask, a, b, crossing="length"):
    """(d, w) by walking the DDA pixels of a numpy/list-of-lists mask indexed [y][x]."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    d = math.sqrt(dx * dx + dy * dy)
    if d == 0:
        return 0.0, 0.0
    walk = dda_walk(a, b)
    inner = [bool(mask[y][x]) for x, y in walk[1:-1]]
    n = len(walk) - 1
    if crossing == "length":
        w = sum(inner) * d / n
    elif crossing == "count":
        w = float(sum(inner))
    else:
        w = float(sum(1 for k in range(len(inner)) if inner[k] and (k == 0 or not inner[k - 1])))
    return d, min(w, d)


def pe_oracle(mask, points, crossing="length"):
    L = E = 0.0
    for a, b in combinations(sorted(points), 2):
        d, w = segment_oracle(mask, a, b, crossing)
        L += d
        E += w
    return 1.0 + E / L if L > 0 else 1.0


def sobel_oracle(img):
    """Literal 3x3 correlation with the Sobel kernels; border left at zero."""
    kx = [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]]
    ky = [[-1, -2, -1], [0, 0, 0], [1, 2, 1]]
    h, w = len(img), len(img[0])
    out = [[0.0] * w for _ in range(h)]
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            gx = sum(kx[j][i] * float(img[y + j - 1][x + i - 1]) for j in range(3) for i in range(3))
            gy = sum(ky[j][i] * float(img[y + j - 1][x + i - 1]) for j in range(3) for i in range(3))
            out[y][x] = math.sqrt(gx * gx + gy * gy)
    return out
