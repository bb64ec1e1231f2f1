"""Shared fixtures; the N = 223 objects are expensive and session-scoped."""

import time

import numpy as np
import pytest

from scarlab import (STANDARD_MAP, TorusHilbertSpace, propagator, ScarParams,
                     scar_state, wigner_of_state, scar_wigner_torus,
                     phi_for_phase, spectral_wigner)


@pytest.fixture(scope="session")
def std_map():
    return STANDARD_MAP


@pytest.fixture(scope="session")
def space223():
    return TorusHilbertSpace(223)


@pytest.fixture(scope="session")
def U223(space223, std_map):
    return propagator(space223, std_map)


@pytest.fixture(scope="session")
def fig2(space223, U223, std_map):
    """Exact and semiclassical grids at the figure-2 parameters.

    N = 223, X = (1/2, 1/2), T = 6, alpha = 0, for theta = pi (non-Bohr)
    and theta = 0 (Bohr).  Also records the raw (pre-normalization) norms
    of the scar superpositions and the wall-clock time of the theta = pi
    exact + semiclassical grid pair.
    """
    sp, U, m = space223, U223, std_map
    X, T = (0.5, 0.5), 6
    out = {"X": X, "T": T}
    t0 = time.time()
    for key, theta in (("pi", np.pi), ("0", 0.0)):
        phi = phi_for_phase(sp, m, X, theta)
        psi, raw = scar_state(sp, U, ScarParams(X=X, phi=phi, T=T),
                              map_spec=m, return_norm=True)
        out["exact_" + key] = wigner_of_state(sp, psi)
        out["raw_norm_" + key] = raw
        out["sc_" + key] = scar_wigner_torus(sp, m, X, phi, T)
        out["phi_" + key] = phi
        if key == "pi":
            out["runtime_pi"] = time.time() - t0
    return out


@pytest.fixture(scope="session")
def spectral223(space223, U223, fig2):
    """Spectral Wigner grid at the figure-2 phi (theta = pi), tau = T/2."""
    tau = fig2["T"] / 2.0
    return spectral_wigner(space223, U223, fig2["phi_pi"], tau,
                           int(round(6 * tau)))
