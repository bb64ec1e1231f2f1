"""
Deterministic file formats and comparison metrics for Wigner grids.

CSV grids carry one row per half-lattice point (a, b, p, q, value) behind a
comment header with the run parameters; numbers are printed with 17
significant digits so identical runs are byte-identical.  PGM emission is
plain P2 grayscale with the affine value mapping recorded in the header.
"""

import math

import numpy as np

from .wigner import WignerGrid

FMT = "%.17g"


def _header_lines(meta):
    for key in sorted(meta):
        yield "# %s: %s" % (key, meta[key])


def write_grid_csv(path, grid, meta):
    """Write a WignerGrid as CSV: header comments, then a,b,p,q,value rows."""
    N = grid.N
    meta = dict(meta)
    meta.setdefault("N", N)
    meta.setdefault("provenance", grid.provenance)
    with open(path, "w", newline="\n") as f:
        for line in _header_lines(meta):
            f.write(line + "\n")
        f.write("a,b,p,q,value\n")
        for a in range(2 * N):
            p = a / (2.0 * N)
            row = grid.values[a]
            for b in range(2 * N):
                f.write("%d,%d,%s,%s,%s\n"
                        % (a, b, FMT % p, FMT % (b / (2.0 * N)), FMT % row[b]))


def read_grid_csv(path):
    """Read a grid CSV back into (WignerGrid, meta dict)."""
    meta = {}
    values = None
    with open(path) as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                meta[key.strip()] = val.strip()
                continue
            if line.startswith("a,"):
                N = int(meta["N"])
                values = np.empty((2 * N, 2 * N))
                continue
            a, b, _, _, v = line.split(",")
            values[int(a), int(b)] = float(v)
    if values is None:
        raise ValueError("%s: not a grid CSV (missing header row)" % path)
    return WignerGrid(int(meta["N"]), values,
                      meta.get("provenance", "exact")), meta


def write_pgm(path, grid, meta):
    """Plain P2 PGM, values affinely mapped from [min, max] to [0, 65535]."""
    vals = grid.values
    lo = float(vals.min())
    hi = float(vals.max())
    span = hi - lo if hi > lo else 1.0
    img = np.rint((vals - lo) / span * 65535).astype(int)
    with open(path, "w", newline="\n") as f:
        f.write("P2\n")
        meta = dict(meta)
        meta["value_min"] = FMT % lo
        meta["value_max"] = FMT % hi
        for line in _header_lines(meta):
            f.write(line + "\n")
        f.write("%d %d\n65535\n" % (img.shape[1], img.shape[0]))
        for row in img:
            f.write(" ".join(str(v) for v in row) + "\n")


def write_report(path, items):
    """Plain-text report, one 'key: value' line per item (ordered)."""
    with open(path, "w", newline="\n") as f:
        for key, val in items:
            if isinstance(val, float):
                val = FMT % val
            f.write("%s: %s\n" % (key, val))


def write_section_csv(path, coord, exact_vals, sc_vals, meta):
    """Two-value 1-D section: coordinate, exact_value, sc_value."""
    with open(path, "w", newline="\n") as f:
        for line in _header_lines(meta):
            f.write(line + "\n")
        f.write("coordinate,exact_value,sc_value\n")
        for c, e, s in zip(coord, exact_vals, sc_vals):
            f.write("%s,%s,%s\n" % (FMT % c, FMT % e, FMT % s))


def square_window_mask(N, X, r):
    """Boolean 2N x 2N mask of the square of half-width r around X (wrapped)."""
    c = np.arange(2 * N) / (2.0 * N)
    dp = np.abs((c[:, None] - X[0] + 0.5) % 1.0 - 0.5)
    dq = np.abs((c[None, :] - X[1] + 0.5) % 1.0 - 0.5)
    return (dp <= r) & (dq <= r)


def pearson(a, b):
    """Pearson correlation of two flat arrays after mean removal."""
    a = np.asarray(a, float).ravel()
    b = np.asarray(b, float).ravel()
    a = a - a.mean()
    b = b - b.mean()
    den = math.sqrt(float(a @ a) * float(b @ b))
    if den == 0.0:
        raise ValueError("Pearson undefined: zero variance input")
    return float(a @ b) / den


def scale_fit(a, b):
    """Least-squares scalar s minimizing |a - s b| on mean-removed values."""
    a = np.asarray(a, float).ravel()
    b = np.asarray(b, float).ravel()
    a = a - a.mean()
    b = b - b.mean()
    bb = float(b @ b)
    if bb == 0.0:
        raise ValueError("scale fit undefined: zero variance reference")
    return float(a @ b) / bb


def rms(a):
    a = np.asarray(a, float).ravel()
    return math.sqrt(float(a @ a) / a.size) if a.size else 0.0


def compare_grids(grid_a, grid_b, X, r):
    """Comparison metrics over the square window of half-width r around X.

    Returns an ordered list of (key, value) report items; grid_a is treated
    as the reference (exact) grid for the scale fit.
    """
    if grid_a.N != grid_b.N:
        raise ValueError("grids have different N: %d vs %d"
                         % (grid_a.N, grid_b.N))
    mask = square_window_mask(grid_a.N, X, r)
    a = grid_a.values[mask]
    b = grid_b.values[mask]
    r_ab = pearson(a, b)
    s = scale_fit(a, b)
    resid = rms((a - a.mean()) - s * (b - b.mean()))
    from .wigner import localization_metric
    loc = []
    for tag, g in (("a", grid_a), ("b", grid_b)):
        inside, outside = localization_metric(g, X, r)
        ratio = outside / inside if inside > 0 else float("inf")
        loc += [("inside_rms_%s" % tag, inside),
                ("outside_rms_%s" % tag, outside),
                ("outside_over_inside_%s" % tag, ratio)]
    return [
        ("region", "square half-width %s around (%s, %s)"
         % (FMT % r, FMT % X[0], FMT % X[1])),
        ("points", int(mask.sum())),
        ("pearson", r_ab),
        ("scale_fit", s),
        ("rms_error_after_fit", resid),
    ] + loc
