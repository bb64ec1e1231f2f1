"""
Command-line front end: classical tables, scar / semiclassical / spectral
Wigner grids, and grid comparison reports.

Configuration is a flat key=value text file plus command-line overrides of
the same form; every run with the same configuration produces byte-identical
output files.
"""

import argparse
import os
import sys
import time

import numpy as np

from .classical import CatMapSpec, periodic_points, stability, cayley_matrix
from .errors import NumericalInvariantError
from .torus import TorusHilbertSpace, propagator, ScarParams, scar_state
from .wigner import wigner_of_state, spectral_wigner, localization_metric
from .semiclassical import scar_wigner_torus, phi_for_phase, scar_phase
from . import gridio

FMT = gridio.FMT


class ConfigError(Exception):
    pass


def parse_kv(pairs):
    out = {}
    for item in pairs:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ConfigError("expected key=value, got %r" % item)
        out[key.strip()] = val.strip()
    return out


def load_config(path, overrides):
    cfg = {}
    if path:
        try:
            with open(path) as f:
                lines = [ln.strip() for ln in f]
        except OSError as e:
            raise ConfigError(str(e))
        cfg.update(parse_kv(
            ln for ln in lines if ln and not ln.startswith("#")))
    cfg.update(overrides)
    return cfg


def _get_map(cfg):
    raw = cfg.get("map", "2,3,1,2")
    try:
        m11, m12, m21, m22 = (int(v) for v in raw.split(","))
        return CatMapSpec(m11, m12, m21, m22)
    except ValueError as e:
        raise ConfigError("bad map %r: %s" % (raw, e))


def _get_point(cfg, key="X", default="0.5,0.5"):
    raw = cfg.get(key, default)
    try:
        p, q = (float(v) for v in raw.split(","))
        return (p % 1.0, q % 1.0)
    except ValueError:
        raise ConfigError("bad point %r for %s" % (raw, key))


def _get_int(cfg, key, default, even=False, odd=False):
    try:
        v = int(cfg.get(key, default))
    except ValueError:
        raise ConfigError("bad integer for %s: %r" % (key, cfg[key]))
    if even and v % 2:
        raise ConfigError("%s must be even, got %d" % (key, v))
    if odd and v % 2 == 0:
        raise ConfigError("%s must be odd, got %d" % (key, v))
    return v


def _get_float(cfg, key, default):
    try:
        return float(cfg.get(key, default))
    except ValueError:
        raise ConfigError("bad number for %s: %r" % (key, cfg[key]))


def _get_phi(cfg, space, map_spec, X):
    """phi may be a number or the presets 'bohr' (theta=0) / 'antibohr'."""
    raw = str(cfg.get("phi", "0"))
    alpha = _get_float(cfg, "alpha", 0.0)
    if raw == "bohr":
        return phi_for_phase(space, map_spec, X, 0.0, alpha)
    if raw == "antibohr":
        return phi_for_phase(space, map_spec, X, float(np.pi), alpha)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError("bad phi %r (number, 'bohr' or 'antibohr')" % raw)


def _outdir(cfg):
    out = cfg.get("out", ".")
    os.makedirs(out, exist_ok=True)
    return out


def _emit_grid(cfg, grid, meta, stem):
    out = _outdir(cfg)
    formats = cfg.get("emit", "csv").split(",")
    paths = []
    for fmt in formats:
        fmt = fmt.strip()
        if fmt == "csv":
            path = os.path.join(out, stem + "_grid.csv")
            gridio.write_grid_csv(path, grid, meta)
        elif fmt == "pgm":
            path = os.path.join(out, stem + "_grid.pgm")
            gridio.write_pgm(path, grid, meta)
        else:
            raise ConfigError("unknown emit format %r" % fmt)
        paths.append(path)
    return paths


def cmd_classical(cfg):
    map_spec = _get_map(cfg)
    lmax = _get_int(cfg, "lmax", 2)
    hyp = stability(map_spec, 1)
    lines = [
        ("map", "%d,%d,%d,%d" % (map_spec.m11, map_spec.m12,
                                 map_spec.m21, map_spec.m22)),
        ("trace", map_spec.trace),
        ("lambda", hyp.lam),
        ("xi_u", "%s,%s" % (FMT % hyp.xi_u[0], FMT % hyp.xi_u[1])),
        ("xi_s", "%s,%s" % (FMT % hyp.xi_s[0], FMT % hyp.xi_s[1])),
    ]
    B = cayley_matrix(map_spec, 1)
    lines.append(("cayley_B", "%s,%s;%s,%s"
                  % (B[0][0], B[0][1], B[1][0], B[1][1])))
    for l in range(1, lmax + 1):
        for i, orb in enumerate(periodic_points(map_spec, l)):
            if orb.period != l:
                continue
            pts = " ".join("(%s,%s)" % (p, q) for p, q in orb.points)
            lines.append(("orbit_l%d_%d" % (l, i), pts))
            lines.append(("orbit_l%d_%d_winding" % (l, i),
                          " ".join("(%d,%d)" % w for w in orb.windings)))
            lines.append(("orbit_l%d_%d_action" % (l, i), str(orb.action)))
            lines.append(("orbit_l%d_%d_exponent" % (l, i), orb.exponent))
    if "out" in cfg:
        path = os.path.join(_outdir(cfg), "classical.txt")
        gridio.write_report(path, lines)
        print(path)
    else:
        for key, val in lines:
            print("%s: %s" % (key, FMT % val if isinstance(val, float) else val))
    return 0


def _scar_setup(cfg):
    map_spec = _get_map(cfg)
    N = _get_int(cfg, "N", 31, odd=True)
    space = TorusHilbertSpace(N)
    X = _get_point(cfg)
    T = _get_int(cfg, "T", 6, even=True)
    phi = _get_phi(cfg, space, map_spec, X)
    alpha = _get_float(cfg, "alpha", 0.0)
    return map_spec, space, X, T, phi, alpha


def _grid_meta(cfg, map_spec, space, X, T, phi, alpha, provenance, **extra):
    meta = {
        "map": "%d,%d,%d,%d" % (map_spec.m11, map_spec.m12,
                                map_spec.m21, map_spec.m22),
        "N": space.N,
        "X": "%s,%s" % (FMT % X[0], FMT % X[1]),
        "T": T,
        "phi": FMT % phi,
        "alpha": FMT % alpha,
        "window": cfg.get("window", "cosine"),
        "provenance": provenance,
    }
    meta.update(extra)
    return meta


def cmd_scar(cfg):
    map_spec, space, X, T, phi, alpha = _scar_setup(cfg)
    params = ScarParams(X=X, phi=phi, T=T,
                        window=cfg.get("window", "cosine"),
                        eps=_get_float(cfg, "eps", 0.0))
    U = propagator(space, map_spec)
    psi, raw_norm = scar_state(space, U, params, map_spec=map_spec,
                               return_norm=True)
    grid = wigner_of_state(space, psi)
    meta = _grid_meta(cfg, map_spec, space, X, T, phi, alpha, "exact",
                      raw_norm=FMT % raw_norm)
    for path in _emit_grid(cfg, grid, meta, cfg.get("tag", "scar")):
        print(path)
    return 0


def cmd_semiclassical(cfg):
    map_spec, space, X, T, phi, alpha = _scar_setup(cfg)
    mode = cfg.get("mode", "gaussian")
    grid = scar_wigner_torus(space, map_spec, X, phi, T, alpha=alpha, mode=mode)
    meta = _grid_meta(cfg, map_spec, space, X, T, phi, alpha,
                      "semiclassical", mode=mode,
                      theta=FMT % scar_phase(space, map_spec, X, phi, alpha))
    for path in _emit_grid(cfg, grid, meta, cfg.get("tag", "semiclassical")):
        print(path)
    return 0


def cmd_spectral(cfg):
    map_spec, space, X, T, phi, alpha = _scar_setup(cfg)
    tau = _get_float(cfg, "tau", T / 2.0)
    if tau <= 0:
        raise ConfigError("tau must be positive")
    tmax = _get_int(cfg, "tmax", max(T, int(round(6 * tau))))
    U = propagator(space, map_spec)
    grid = spectral_wigner(space, U, phi, tau, tmax)
    meta = _grid_meta(cfg, map_spec, space, X, T, phi, alpha, "spectral",
                      tau=FMT % tau, tmax=tmax)
    for path in _emit_grid(cfg, grid, meta, cfg.get("tag", "spectral")):
        print(path)
    r = _get_float(cfg, "r", 0.15)
    inside, outside = localization_metric(grid, X, r)
    items = [("tau", tau), ("tmax", tmax),
             ("inside_rms", inside), ("outside_rms", outside),
             ("outside_over_inside",
              outside / inside if inside > 0 else float("inf"))]
    scar_csv = cfg.get("scar_grid", "")
    if scar_csv:
        sgrid, _ = gridio.read_grid_csv(scar_csv)
        s_in, s_out = localization_metric(sgrid, X, r)
        items += [("scar_outside_over_inside",
                   s_out / s_in if s_in > 0 else float("inf"))]
    path = os.path.join(_outdir(cfg), cfg.get("tag", "spectral") + "_report.txt")
    gridio.write_report(path, items)
    print(path)
    return 0


def cmd_compare(cfg, path_a, path_b):
    t0 = time.time()
    grid_a, meta_a = gridio.read_grid_csv(path_a)
    grid_b, meta_b = gridio.read_grid_csv(path_b)
    if grid_a.N != grid_b.N:
        raise ConfigError("grids differ in N: %d vs %d" % (grid_a.N, grid_b.N))
    X = _get_point(cfg, default=meta_a.get("X", "0.5,0.5"))
    r = _get_float(cfg, "r", 0.15)
    items = gridio.compare_grids(grid_a, grid_b, X, r)
    out = _outdir(cfg)
    N = grid_a.N
    c = np.arange(2 * N) / (2.0 * N)
    ib = int(round(2 * N * X[1])) % (2 * N)
    ia = int(round(2 * N * X[0])) % (2 * N)
    sec_meta = {"N": N, "X": "%s,%s" % (FMT % X[0], FMT % X[1]),
                "grid_a": os.path.basename(path_a),
                "grid_b": os.path.basename(path_b)}
    h_path = os.path.join(out, "section_horizontal.csv")
    gridio.write_section_csv(h_path, c, grid_a.values[:, ib],
                             grid_b.values[:, ib],
                             dict(sec_meta, section="q=%s" % (FMT % (ib / (2.0 * N)))))
    v_path = os.path.join(out, "section_vertical.csv")
    gridio.write_section_csv(v_path, c, grid_a.values[ia, :],
                             grid_b.values[ia, :],
                             dict(sec_meta, section="p=%s" % (FMT % (ia / (2.0 * N)))))
    items.append(("runtime_seconds", time.time() - t0))
    rep_path = os.path.join(out, "compare_report.txt")
    gridio.write_report(rep_path, items)
    for path in (rep_path, h_path, v_path):
        print(path)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="scarlab",
        description="Scar Wigner functions of quantized cat maps on the torus.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, hlp in (
            ("classical", "periodic orbits, actions and stability data"),
            ("scar", "exact scar state Wigner grid"),
            ("semiclassical", "closed-form semiclassical scar Wigner grid"),
            ("spectral", "spectral (damped propagator comb) Wigner grid"),
            ("compare", "compare two grid CSV files")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--config", default=None, help="key=value config file")
        if name == "compare":
            p.add_argument("grid_a")
            p.add_argument("grid_b")
        p.add_argument("overrides", nargs="*", metavar="key=value",
                       help="config overrides")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, parse_kv(args.overrides))
        if args.command == "classical":
            return cmd_classical(cfg)
        if args.command == "scar":
            return cmd_scar(cfg)
        if args.command == "semiclassical":
            return cmd_semiclassical(cfg)
        if args.command == "spectral":
            return cmd_spectral(cfg)
        if args.command == "compare":
            return cmd_compare(cfg, args.grid_a, args.grid_b)
        raise ConfigError("unknown command %r" % args.command)
    except (ConfigError, ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except NumericalInvariantError as e:
        print("numerical invariant violated: %s" % e, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
