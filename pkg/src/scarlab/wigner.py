"""
Discrete Weyl-Wigner symbols on the torus.

Symbols live on the half-lattice x = (a/(2N), b/(2N)) of the unit torus.
Only the N x N base lattice x = (a/N, b/N) is computed directly (as a trace
against reflection operators, evaluated with an FFT over the matrix-element
sum); the full 2N x 2N grid follows from the exact periodization sign rule
      W(x + (k,j)/2) = (-1)^(2ja + 2kb + jkN) W(x),
which for odd N makes the (P+1/2, Q+1/2) image the negative of the other
three.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import NumericalInvariantError
from .classical import _mat_pow, _det, _mat_inv_frac, center_action

REALITY_TOL = 1e-10


@dataclass
class WignerGrid:
    """Real Weyl symbol on the 2N x 2N half-lattice; values[a, b] at
    x = (a/(2N), b/(2N))."""

    N: int
    values: np.ndarray
    provenance: str = "exact"

    def base(self):
        """The N x N base sub-lattice (even indices)."""
        return self.values[::2, ::2]

    def trace(self):
        """(1/N) sum over the base lattice = Tr[rho]."""
        return self.base().sum() / self.N


def periodization_sign(k, j, a, b, N):
    """Sign (-1)^(2ja + 2kb + jkN) relating W at x + (k,j)/2 to W at x.

    a, b label x on the base lattice; on the half-lattice pass 2a, 2b in
    units of 1/(2N) and halve (see sc image sums, which use the raw form).
    """
    return -1 if (2 * j * a + 2 * k * b + j * k * N) % 2 else 1


def _extend_base(base, N):
    """Fill the 2N x 2N half-lattice from the base symbol via the sign rule."""
    full = np.empty((2 * N, 2 * N), dtype=base.dtype)
    a = np.arange(N)
    for k in (0, 1):
        for j in (0, 1):
            sign = -1 if (j * k * N) % 2 else 1
            rows = (2 * a + k * N) % (2 * N)
            cols = (2 * a + j * N) % (2 * N)
            full[np.ix_(rows, cols)] = sign * base
    return full


def _base_symbol_of_state(space, psi):
    """W(a,b) = Tr[R_(a,b) |psi><psi|]
             = sum_j e^{i 4 pi a (b - j)/N} psi_j conj(psi_{(2b-j) mod N}),
    all a at once per b via a length-N FFT (O(N^2 log N) total)."""
    N = space.N
    j = np.arange(N)
    b = np.arange(N)[:, None]
    f = psi[j] * psi.conj()[(2 * b - j) % N]       # f[b, j]
    F = np.fft.fft(f, axis=1)                      # F[b, m] = sum_j f e^{-2pi i m j/N}
    a = np.arange(N)
    W = np.exp(4j * np.pi * np.outer(a, b.ravel()) / N) * F[:, (2 * a) % N].T
    return W                                       # W[a, b]


def wigner_of_state(space, psi, provenance="exact"):
    """Wigner function of a normalized pure state on the full half-lattice."""
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("state not normalized: |psi| = %.12g" % norm)
    W = _base_symbol_of_state(space, psi)
    resid = np.max(np.abs(W.imag))
    if resid > REALITY_TOL:
        raise NumericalInvariantError("Wigner imaginary residue %g" % resid)
    return WignerGrid(space.N, _extend_base(W.real, space.N), provenance)


def weyl_symbol_of_operator(space, A):
    """Complex base-lattice Weyl symbol A_W(a, b) = Tr[R_(a,b) A]."""
    N = space.N
    k = np.arange(N)
    b = np.arange(N)[:, None]
    f = A[k, (2 * b - k) % N]                      # f[b, k] = A[k, (2b-k) mod N]
    F = np.fft.fft(f, axis=1)
    a = np.arange(N)
    W = np.exp(4j * np.pi * np.outer(a, b.ravel()) / N) * F[:, (2 * a) % N].T
    return W


def wigner_of_operator(space, A, provenance="exact"):
    """WignerGrid of a Hermitian operator (real symbol enforced)."""
    W = weyl_symbol_of_operator(space, A)
    resid = np.max(np.abs(W.imag))
    if resid > REALITY_TOL:
        raise NumericalInvariantError("Weyl symbol imaginary residue %g" % resid)
    return WignerGrid(space.N, _extend_base(W.real, space.N), provenance)


def spectral_wigner(space, U, phi, tau, tmax):
    """Wigner grid of the spectral operator at quasi-energy phi."""
    from .torus import spectral_operator
    G = spectral_operator(space, U, phi, tau, tmax)
    return wigner_of_operator(space, G, provenance="spectral")


def localization_metric(grid, X, r):
    """(inside_rms, outside_rms) of grid values within torus distance r of X
    and its three half-shifted images, and over the complement."""
    if not 0 < r < 0.25:
        raise ValueError("radius must satisfy 0 < r < 1/4")
    N = grid.N
    c = np.arange(2 * N) / (2.0 * N)
    p = c[:, None]
    q = c[None, :]
    inside = np.zeros((2 * N, 2 * N), dtype=bool)
    for dp in (0.0, 0.5):
        for dq in (0.0, 0.5):
            P = (X[0] + dp) % 1.0
            Q = (X[1] + dq) % 1.0
            u = np.abs(p - P)
            v = np.abs(q - Q)
            u = np.minimum(u, 1.0 - u)
            v = np.minimum(v, 1.0 - v)
            inside |= u * u + v * v <= r * r
    vals = grid.values
    rms = lambda x: float(np.sqrt(np.mean(x * x))) if x.size else 0.0
    return rms(vals[inside]), rms(vals[~inside])


def winding_set(map_spec, x, t=1):
    """Winding vectors m of the torus trajectories centered at x under M^t.

    A center x corresponds to the trajectories x_- -> M^t x_- - m with start
    point x_- = (M^t + 1)^(-1) (2x + m) inside the fundamental domain
    [0,1)^2; exactly |det(M^t + 1)| winding vectors qualify.  Exact rational
    arithmetic keeps the half-open boundary test unambiguous.
    """
    Mt = _mat_pow(map_spec.int_matrix(), t)
    MP1 = ((Mt[0][0] + 1, Mt[0][1]), (Mt[1][0], Mt[1][1] + 1))
    inv = _mat_inv_frac(MP1)
    x = (Fraction(x[0]), Fraction(x[1]))
    # m = (M^t+1) x_- - 2x over x_- in [0,1)^2 bounds the candidate box.
    corners = [(u, v) for u in (0, 1) for v in (0, 1)]
    m1s = [MP1[0][0] * u + MP1[0][1] * v - 2 * x[0] for u, v in corners]
    m2s = [MP1[1][0] * u + MP1[1][1] * v - 2 * x[1] for u, v in corners]
    out = []
    for m1 in range(math.floor(min(m1s)), math.ceil(max(m1s)) + 1):
        for m2 in range(math.floor(min(m2s)), math.ceil(max(m2s)) + 1):
            v = (2 * x[0] + m1, 2 * x[1] + m2)
            xm = (inv[0][0] * v[0] + inv[0][1] * v[1],
                  inv[1][0] * v[0] + inv[1][1] * v[1])
            if 0 <= xm[0] < 1 and 0 <= xm[1] < 1:
                out.append((m1, m2))
    return out


def cat_weyl_symbol_closed_form(space, map_spec, t=1):
    """Closed-form Weyl symbol of the quantized cat map power U^t:

    U_W(x) = |det(M^t + 1)|^(-1/2) * sum_m exp[i 2 pi N S_t(x, m)]

    on the base lattice, with m running over the finite winding set of each
    center.  Used as the independent semiclassical-exactness oracle.  In the
    normalization fixed by Tr R_x = 1 the prefactor is half the value quoted
    for conventions where reflection traces carry a factor 2.
    """
    N = space.N
    Mt = _mat_pow(map_spec.int_matrix(), t)
    MP1 = ((Mt[0][0] + 1, Mt[0][1]), (Mt[1][0], Mt[1][1] + 1))
    pref = 1.0 / np.sqrt(abs(_det(MP1)))
    W = np.zeros((N, N), dtype=complex)
    for a in range(N):
        for b in range(N):
            x = (Fraction(a, N), Fraction(b, N))
            tot = 0.0 + 0.0j
            for m in winding_set(map_spec, x, t):
                s = center_action(map_spec, x, m, t)
                tot += np.exp(2j * np.pi * float((N * s) % 1))
            W[a, b] = pref * tot
    return W
