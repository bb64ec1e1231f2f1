"""
Closed-form semiclassical scar Wigner functions.

Near a hyperbolic fixed point the Wigner function of a scar state is a double
sum over propagation times of squeezed Gaussians modulated by hyperbolic
interference fringes transverse to the stable and unstable manifolds.  Two
evaluators are provided:

* ``scar_wigner_plane`` -- the stationary-phase closed form: real amplitude
  1/(2 cosh) per time pair and a pure fringe phase in the product p'q'.
* Gaussian cross terms (``cross_term``) -- the same construction with every
  time pair evaluated by exact Gaussian integration of the linearized
  dynamics, which for cat maps is exact up to torus wrap-around.  This is
  the default mode of ``scar_wigner_torus`` since the stationary-phase
  amplitudes misweight the off-diagonal time pairs (see module tests).

The plane pattern is periodized onto the torus by summing the four
half-lattice images with the Wigner periodization signs.
"""

from dataclasses import dataclass
import math

import numpy as np

from .classical import stability, orbit_of_point
from .wigner import WignerGrid

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ScarCenterData:
    """Fixed point data feeding the semiclassical formula."""

    X: tuple              # fixed point (P, Q)
    action: float         # center action S_X of the fixed point (one step)
    lam: float            # one-step stability exponent


def fixed_point_data(map_spec, X):
    """Resolve X to a hyperbolic fixed point of the map with its action."""
    orb = orbit_of_point(map_spec, X)
    if orb is None:
        raise ValueError("scar center %r is not a periodic point" % (X,))
    if orb.period != 1:
        raise ValueError("semiclassical formula needs a fixed point; "
                         "%r has period %d" % (X, orb.period))
    hyp = stability(map_spec, 1)
    return ScarCenterData(X=(float(X[0]), float(X[1])),
                          action=float(orb.action), lam=hyp.lam)


def scar_phase(space, map_spec, X, phi, alpha=0.0):
    """Accumulated phase per step theta = phi + S_X / hbar + alpha (mod 2 pi).

    theta = 0 is the Bohr-quantized case (constructive recurrences along the
    orbit), theta = pi the anti-quantized one.
    """
    data = fixed_point_data(map_spec, X)
    return (phi + TWO_PI * ((space.N * data.action) % 1.0) + alpha) % TWO_PI


def phi_for_phase(space, map_spec, X, theta, alpha=0.0):
    """Quasi-energy phi that realizes a requested theta at this N."""
    data = fixed_point_data(map_spec, X)
    return (theta - TWO_PI * ((space.N * data.action) % 1.0) - alpha) % TWO_PI


def stable_unstable_coords(hyp, dp, dq):
    """Decompose the displacement from the fixed point along the manifolds.

    x' = p' xi_u + q' xi_s with p' = x' ^ xi_s and q' = xi_u ^ x'
    (wedge u ^ v = u_p v_q - u_q v_p; the directions satisfy xi_u ^ xi_s = 1).
    """
    p1 = dp * hyp.xi_s[1] - dq * hyp.xi_s[0]
    q1 = hyp.xi_u[0] * dq - hyp.xi_u[1] * dp
    return p1, q1


def scar_wigner_plane(hyp, hbar, theta, T, dp, dq):
    """Stationary-phase scar Wigner function near a hyperbolic fixed point.

    Double sum over times t, t' in (-T/2, T/2) of

      cos(pi t/T) cos(pi t'/T) / (2 cosh(lam D/2))
        * exp{-[p'^2 e^{lam s} xi_u^2 + q'^2 e^{-lam s} xi_s^2
                + 2 p' q' xi_u.xi_s] / (hbar cosh^2(lam D/2))}
        * exp i[theta D - (2/hbar) p' q' tanh(lam D/2)]

    with D = t - t', s = t + t'; the symmetrized (real) form is summed.  The
    sign of the p'q' fringe phase is immaterial after symmetrization (the
    pair (t,t') + (t',t) always combines to cos(theta D) cos(fringe)).
    dp, dq are displacements from the fixed point (broadcastable arrays).
    """
    if T < 2 or T % 2:
        raise ValueError("time window T must be a positive even integer")
    p1, q1 = stable_unstable_coords(hyp, np.asarray(dp, float), np.asarray(dq, float))
    pq = p1 * q1
    lam = hyp.lam
    acc = np.zeros(np.broadcast(p1, q1).shape)
    ts = range(-T // 2 + 1, T // 2)
    for t in ts:
        wt = math.cos(math.pi * t / T)
        for t2 in ts:
            w = wt * math.cos(math.pi * t2 / T)
            D = t - t2
            s = t + t2
            ch = math.cosh(0.5 * lam * D)
            env = np.exp(-(p1 * p1 * math.exp(lam * s) * hyp.xi_u2
                           + q1 * q1 * math.exp(-lam * s) * hyp.xi_s2
                           + 2.0 * pq * hyp.dot_us) / (hbar * ch * ch))
            osc = np.cos(theta * D - (2.0 / hbar) * pq * math.tanh(0.5 * lam * D))
            acc += (w / (2.0 * ch)) * env * osc
    return acc


def gaussian_params(map_spec, tmax):
    """Complex Gaussian slope a_t and prefactor of the evolved coherent state.

    In coordinates recentered on the fixed point the coherent state is
    psi_t(u) = pref_t exp[i a_t u^2 / (2 hbar)] under the linearized map;
    a_t follows the Moebius action of the matrix on the slope (a_0 = i) and
    the prefactor tracks the square-root branch step by step.
    """
    m = map_spec
    out = {0: (1j, 1.0 + 0j)}
    a, pref = 1j, 1.0 + 0j
    for t in range(1, tmax + 1):
        A = a * m.m21 + m.m22
        pref = pref * np.exp(-1j * math.pi / 4) / np.sqrt(-1j * A)
        a = (m.m11 * a + m.m12) / A
        out[t] = (a, pref)
    a, pref = 1j, 1.0 + 0j
    for t in range(1, tmax + 1):
        A = a * m.m21 - m.m11
        pref = pref * np.exp(1j * math.pi / 4) / np.sqrt(-1j * A)
        a = (m.m22 * a - m.m12) / (m.m11 - m.m21 * a)
        out[-t] = (a, pref)
    return out


def cross_term(params, hbar, t, t2, dp, dq):
    """Exact cross-Wigner <0| V^{-t'} R_{x'} V^t |0> of the linearized flow.

    V is the metaplectic propagator recentered on the fixed point, R_{x'} the
    plane reflection through x' = (dp, dq), and |0> the round coherent state.
    A single complex Gaussian integral in the position representation gives
    the closed form; normalized so the (0,0) term is exp(-x'^2 / hbar).
    Dynamical (action) phases are not included -- the caller multiplies by
    e^{i theta (t - t')}.
    """
    a_t, p_t = params[t]
    a_s, p_s = params[t2]
    A = a_t - np.conj(a_s)
    B = -2.0 * a_t * dq + 2.0 * dp
    C = 4.0 * a_t * dq * dq - 4.0 * dp * dq
    amp = np.conj(p_s) * p_t * np.sqrt(2j / A)
    return amp * np.exp(1j / (2.0 * hbar) * (C - B * B / A))


def scar_wigner_gaussian(map_spec, hbar, theta, T, dp, dq):
    """Scar Wigner plane pattern with exact Gaussian cross terms."""
    if T < 2 or T % 2:
        raise ValueError("time window T must be a positive even integer")
    params = gaussian_params(map_spec, T // 2)
    dp = np.asarray(dp, float)
    dq = np.asarray(dq, float)
    acc = np.zeros(np.broadcast(dp, dq).shape, dtype=complex)
    ts = range(-T // 2 + 1, T // 2)
    for t in ts:
        wt = math.cos(math.pi * t / T)
        for t2 in ts:
            w = wt * math.cos(math.pi * t2 / T)
            acc += (w * np.exp(1j * theta * (t - t2))
                    * cross_term(params, hbar, t, t2, dp, dq))
    return acc.real


def scar_wigner_torus(space, map_spec, X, phi, T, alpha=0.0, mode="gaussian"):
    """Semiclassical scar Wigner function on the full 2N x 2N half-lattice.

    The plane pattern is evaluated around the fixed point and its three
    half-shifted images; the image at X + (k, j)/2 carries the periodization
    sign (-1)^(j A + k B + j k N) where (A, B) = 2N X are the half-lattice
    labels of the center.  mode selects the plane evaluator: "gaussian"
    (exact cross terms, default) or "stationary" (the 1/(2 cosh) closed
    form, which misweights off-diagonal time pairs but shares the fringe
    geometry).
    """
    if mode not in ("gaussian", "stationary"):
        raise ValueError("unknown semiclassical mode %r" % (mode,))
    N = space.N
    data = fixed_point_data(map_spec, X)
    theta = scar_phase(space, map_spec, X, phi, alpha)
    A = round(2 * N * data.X[0])
    B = round(2 * N * data.X[1])
    if abs(2 * N * data.X[0] - A) > 1e-12 or abs(2 * N * data.X[1] - B) > 1e-12:
        raise ValueError("scar center must sit on the half-lattice at this N")
    hyp = stability(map_spec, 1)
    c = np.arange(2 * N) / (2.0 * N)
    p = c[:, None]
    q = c[None, :]
    vals = np.zeros((2 * N, 2 * N))
    for k in (0, 1):
        for j in (0, 1):
            sign = -1 if (j * A + k * B + j * k * N) % 2 else 1
            dp = np.broadcast_to((p - data.X[0] - 0.5 * k + 0.5) % 1.0 - 0.5,
                                 (2 * N, 2 * N))
            dq = np.broadcast_to((q - data.X[1] - 0.5 * j + 0.5) % 1.0 - 0.5,
                                 (2 * N, 2 * N))
            if mode == "gaussian":
                vals += sign * scar_wigner_gaussian(map_spec, space.hbar,
                                                    theta, T, dp, dq)
            else:
                vals += sign * scar_wigner_plane(hyp, space.hbar, theta, T,
                                                 dp, dq)
    return WignerGrid(N, vals, provenance="semiclassical")
