"""Grid file formats, windows and comparison metrics."""

import numpy as np
import pytest

from scarlab import WignerGrid
from scarlab import gridio


def sample_grid(N=5, seed=0):
    rng = np.random.default_rng(seed)
    return WignerGrid(N, rng.normal(size=(2 * N, 2 * N)))


def test_csv_round_trip(tmp_path):
    grid = sample_grid()
    path = tmp_path / "g_grid.csv"
    meta = {"X": "0.5,0.5", "T": 6}
    gridio.write_grid_csv(path, grid, meta)
    back, meta2 = gridio.read_grid_csv(path)
    assert back.N == grid.N
    assert np.array_equal(back.values, grid.values)   # 17 digits round-trip
    assert meta2["X"] == "0.5,0.5" and meta2["T"] == "6"


def test_csv_writes_are_byte_identical(tmp_path):
    grid = sample_grid()
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    gridio.write_grid_csv(p1, grid, {"k": 1})
    gridio.write_grid_csv(p2, grid, {"k": 1})
    assert p1.read_bytes() == p2.read_bytes()


def test_pgm_format(tmp_path):
    grid = sample_grid()
    path = tmp_path / "g.pgm"
    gridio.write_pgm(path, grid, {})
    lines = path.read_text().splitlines()
    assert lines[0] == "P2"
    body = [ln for ln in lines[1:] if not ln.startswith("#")]
    assert body[0] == "10 10" and body[1] == "65535"
    pixels = [int(v) for ln in body[2:] for v in ln.split()]
    assert len(pixels) == 100
    assert min(pixels) == 0 and max(pixels) == 65535


def test_report_and_section(tmp_path):
    rpath = tmp_path / "r.txt"
    gridio.write_report(rpath, [("alpha", 1.5), ("tag", "x")])
    assert rpath.read_text() == "alpha: 1.5\ntag: x\n"
    spath = tmp_path / "s.csv"
    gridio.write_section_csv(spath, [0.0, 0.5], [1.0, 2.0], [1.5, 2.5], {})
    lines = spath.read_text().splitlines()
    assert lines[0] == "coordinate,exact_value,sc_value"
    assert lines[1] == "0,1,1.5"


def test_square_window_mask():
    mask = gridio.square_window_mask(10, (0.5, 0.5), 0.15)
    c = np.arange(20) / 20.0
    inside = (np.abs(c[:, None] - 0.5) <= 0.15) & (np.abs(c[None, :] - 0.5) <= 0.15)
    assert np.array_equal(mask, inside)
    # wraps around the torus edge
    mask0 = gridio.square_window_mask(10, (0.0, 0.0), 0.15)
    assert mask0[0, 0] and mask0[-1, -1] and not mask0[10, 10]


def test_pearson_and_scale_fit():
    rng = np.random.default_rng(1)
    a = rng.normal(size=100)
    assert abs(gridio.pearson(a, 3.0 * a + 2.0) - 1.0) < 1e-12
    assert abs(gridio.pearson(a, -a) + 1.0) < 1e-12
    assert abs(gridio.scale_fit(3.0 * a + 1.0, a) - 3.0) < 1e-12
    with pytest.raises(ValueError):
        gridio.pearson(a, np.zeros(100))


def test_compare_grids_self():
    grid = sample_grid(N=11)
    items = dict(gridio.compare_grids(grid, grid, (0.5, 0.5), 0.15))
    assert abs(items["pearson"] - 1.0) < 1e-12
    assert abs(items["scale_fit"] - 1.0) < 1e-12
    assert items["rms_error_after_fit"] < 1e-12
    assert items["outside_over_inside_a"] == items["outside_over_inside_b"]


def test_compare_grids_rejects_mismatched_n():
    with pytest.raises(ValueError):
        gridio.compare_grids(sample_grid(N=5), sample_grid(N=7), (0.5, 0.5), 0.1)
