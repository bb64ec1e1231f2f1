"""
Quantum kinematics and dynamics on the N-dimensional torus Hilbert space.

Position states live on the lattice q_j = j/N with N odd and hbar = 1/(2 pi N).
Provides translation and reflection operators, the quantized cat map
propagator, periodized coherent states, scar states and the spectral operator.
"""

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from .classical import CatMapSpec, orbit_of_point
from .errors import NumericalInvariantError

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class TorusHilbertSpace:
    """Dimension-N torus Hilbert space; N must be odd."""

    N: int

    def __post_init__(self):
        if self.N < 1 or self.N % 2 == 0:
            raise ValueError("torus Hilbert space dimension must be odd and positive")

    @property
    def hbar(self):
        return 1.0 / (2.0 * math.pi * self.N)


def _check_unitary(U, tol=UNITARITY_TOL):
    N = U.shape[0]
    dev = np.max(np.abs(U.conj().T @ U - np.eye(N)))
    if dev > tol:
        raise NumericalInvariantError("operator not unitary: max deviation %g" % dev)


def propagator(space, map_spec):
    """Position-representation propagator of the quantized cat map.

    <q_k|U|q_j> = e^{-i pi/4} / sqrt(N) * exp[i pi (m11 k^2 - 2 j k + m22 j^2) / (N m21)].
    For the standard map ((2,3),(1,2)) this is the Hannay-Berry kernel
    (i/N)^{1/2} exp[(2 pi i / N)(k^2 - j k + j^2)] with the square-root branch
    chosen so that the Weyl symbol of U is the winding sum over the center
    action with a real positive prefactor (no residual Maslov phase).
    Unitarity is verified and a failure (maps whose quadratic Gauss sum
    degenerates at this N) raises.
    """
    N = space.N
    if map_spec.m21 == 0:
        raise ValueError("propagator kernel needs m21 != 0")
    k = np.arange(N)[:, None]
    j = np.arange(N)[None, :]
    phase = np.pi * (map_spec.m11 * k * k - 2.0 * j * k + map_spec.m22 * j * j) / (N * map_spec.m21)
    U = np.exp(-1j * np.pi / 4) / math.sqrt(N) * np.exp(1j * phase)
    _check_unitary(U)
    return U


def translation(space, k, j):
    """Phase-space translation by the chord xi = (k/N, j/N).

    T = T_p T_q exp[-(i/2 hbar) p q]: the position shift by j sites combined
    with the momentum phase by k, with the symmetrizing phase.
    """
    N = space.N
    a = np.arange(N)
    T = np.zeros((N, N), dtype=complex)
    T[(a + j) % N, a] = np.exp(2j * np.pi * k * (a + j / 2.0) / N)
    return T


def reflection(space, a, b):
    """Reflection operator through the base-lattice center x = (a/N, b/N).

    <q_k|R|q_j> = exp[i 4 pi a (b - j) / N] delta_{k, (2b - j) mod N}.
    Hermitian and unitary, so R^2 = 1.
    """
    return reflection_half(space, 2 * a, 2 * b)


def reflection_half(space, a2, b2):
    """Reflection through the half-lattice center x = (a2/(2N), b2/(2N)).

    Built from the base operator by composing with a half-period translation,
    R_{x0 + (k,j)/2} = T_{(k,j)} R_{x0} e^{(i/hbar) x0 ^ (k,j)}, which keeps
    the torus cocycle signs consistent with the periodization identity.
    a2 = 2a, b2 = 2b even recovers the base-lattice operator.
    """
    N = space.N
    a2 %= 2 * N
    b2 %= 2 * N
    k, a = (0, a2 // 2) if a2 % 2 == 0 else (1, (((a2 - N) % (2 * N)) // 2))
    j, b = (0, b2 // 2) if b2 % 2 == 0 else (1, (((b2 - N) % (2 * N)) // 2))
    jj = np.arange(N)
    R = np.zeros((N, N), dtype=complex)
    R[(2 * b - jj) % N, jj] = np.exp(4j * np.pi * a * (b - jj) / N)
    if k or j:
        # x0 ^ (k,j) phase is e^{2 pi i (a j - b k)} = 1 on the base lattice.
        R = translation(space, k * N, j * N) @ R
    return R


def coherent_state(space, X, omega=1.0, jc=4):
    """Periodized Gaussian coherent state centered at X = (P, Q), unit norm.

    psi_k = sum_{|j| <= jc} exp{2 pi N [-(j + Q - k/N)^2 / (2 w^2)
                                        - i P (j + Q/2 - k/N)]}.
    The image sum converges extremely fast; jc = 4 leaves a tail below 1e-12
    for every N >= 3.
    """
    N = space.N
    P, Q = float(X[0]), float(X[1])
    k = np.arange(N)
    psi = np.zeros(N, dtype=complex)
    for j in range(-jc, jc + 1):
        u = j + Q - k / N
        psi += np.exp(2 * np.pi * N * (-u * u / (2.0 * omega * omega)
                                       - 1j * P * (j + Q / 2.0 - k / N)))
    return psi / np.linalg.norm(psi)


@dataclass(frozen=True)
class ScarParams:
    """Parameters of a scar state: center, quasi-energy, window."""

    X: tuple
    phi: float
    T: int
    window: str = "cosine"      # "cosine" or "exponential"
    eps: float = 0.0            # damping scale for the exponential window

    def __post_init__(self):
        if self.T < 2 or self.T % 2:
            raise ValueError("time window T must be a positive even integer")
        if self.window not in ("cosine", "exponential"):
            raise ValueError("unknown window %r" % (self.window,))

    def weight(self, t, hbar):
        if self.window == "cosine":
            return math.cos(math.pi * t / self.T)
        return math.exp(-abs(t) * self.eps / hbar)


def scar_state(space, U, params, map_spec=None, return_norm=False):
    """Scar state sum_{t=-T/2}^{T/2} e^{i phi t} cos(pi t / T) U^t |X>, unit norm.

    Powers of U are applied incrementally to the coherent state (never formed
    as dense matrix powers).  The cosine endpoints t = +-T/2 carry zero weight
    and are skipped.  With return_norm=True also returns the norm of the raw
    superposition, which measures the constructive-interference strength (it
    is maximal when phi puts the orbit on a Bohr-quantized phase).
    """
    if map_spec is not None and orbit_of_point(map_spec, params.X) is None:
        warnings.warn("scar center %r is not a periodic point of the map; "
                      "scarring will degrade" % (params.X,))
    psi0 = coherent_state(space, params.X)
    tmax = params.T // 2 if params.window == "exponential" else params.T // 2 - 1
    acc = params.weight(0, space.hbar) * psi0
    fwd = psi0.copy()
    bwd = psi0.copy()
    Udag = U.conj().T
    for t in range(1, tmax + 1):
        fwd = U @ fwd
        bwd = Udag @ bwd
        w = params.weight(t, space.hbar)
        acc = acc + w * (np.exp(1j * params.phi * t) * fwd
                         + np.exp(-1j * params.phi * t) * bwd)
    nrm = np.linalg.norm(acc)
    if return_norm:
        return acc / nrm, float(nrm)
    return acc / nrm


def spectral_operator(space, U, phi, tau, tmax):
    """Damped propagator comb G = sum_{|t| <= tmax} e^{i phi t} e^{-|t|/tau} U^t.

    tau is the damping time in map steps (tau = hbar / eps for a Lorentzian
    of half-width eps).  G is Hermitian by the t <-> -t pairing.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    N = space.N
    G = np.eye(N, dtype=complex)
    fwd = np.eye(N, dtype=complex)
    for t in range(1, tmax + 1):
        fwd = U @ fwd
        term = math.exp(-t / tau) * np.exp(1j * phi * t) * fwd
        G = G + term + term.conj().T
    herm = np.max(np.abs(G - G.conj().T))
    if herm > 1e-10:
        raise NumericalInvariantError("spectral operator not Hermitian: %g" % herm)
    return G


def nilpotency_order(space, U, kmax=None, tol=1e-8):
    """Smallest k with U^k proportional to the identity, or None."""
    N = space.N
    if kmax is None:
        kmax = 3 * N
    P = np.eye(N, dtype=complex)
    for k in range(1, kmax + 1):
        P = U @ P
        d = np.diag(P)
        if np.max(np.abs(P - np.diag(d))) < tol and np.max(np.abs(d - d[0])) < tol:
            return k
    return None
