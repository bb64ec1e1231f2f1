"""
Classical layer for hyperbolic torus automorphisms (cat maps).

Integer symplectic 2x2 matrices acting mod 1 on x = (p, q), their periodic
orbits, stability data, Cayley matrices and the quadratic center generating
function. Periodic points are kept as exact rationals; floats appear only
when data is handed to the quantum layer.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

# Symplectic form J and the antidiagonal unit matrix used by the center action.
J_MAT = ((0, -1), (1, 0))
JTILDE_MAT = ((0, 1), (1, 0))


def _mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _mat_vec(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def _mat_pow(A, t):
    M = ((1, 0), (0, 1))
    for _ in range(t):
        M = _mat_mul(M, A)
    return M


def _det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _mat_inv_frac(A):
    d = Fraction(_det(A))
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    return (
        (A[1][1] / d, -A[0][1] / d),
        (-A[1][0] / d, A[0][0] / d),
    )


@dataclass(frozen=True)
class CatMapSpec:
    """Integer symplectic matrix M acting mod 1 on column vectors (p, q)."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.det != 1:
            raise ValueError("cat map must be symplectic: det = %d != 1" % self.det)
        if abs(self.trace) <= 2:
            raise ValueError("elliptic/parabolic map: |trace| = %d <= 2" % abs(self.trace))

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self):
        return self.m11 + self.m22

    @property
    def time_reversal(self):
        # Equal diagonal entries give the time-reversal symmetric case.
        return self.m11 == self.m22

    def int_matrix(self):
        return ((self.m11, self.m12), (self.m21, self.m22))

    def matrix(self):
        return np.array(self.int_matrix(), dtype=float)

    def apply(self, x):
        """One map step on an exact point, wrapped into [0,1)^2."""
        y = _mat_vec(self.int_matrix(), x)
        return (y[0] % 1, y[1] % 1)


# The map used throughout the worked examples.
STANDARD_MAP = CatMapSpec(2, 3, 1, 2)


@dataclass(frozen=True)
class HyperbolicData:
    """Stability data of a map power M^t at its (shared) fixed directions."""

    lam: float            # stability exponent lambda_t = t * lambda
    xi_u: np.ndarray      # unstable direction, M xi_u = e^lambda xi_u
    xi_s: np.ndarray      # stable direction, wedge-normalized xi_u ^ xi_s = 1
    B: np.ndarray         # Cayley matrix of M^t, symmetric
    B_frac: tuple         # same matrix as exact Fractions
    xi_u2: float
    xi_s2: float
    dot_us: float


def cayley_matrix(map_spec, t):
    """Exact Cayley matrix B of M^t, with J B = (1 - M^t)(1 + M^t)^(-1)."""
    Mt = _mat_pow(map_spec.int_matrix(), t)
    MP1 = ((Mt[0][0] + 1, Mt[0][1]), (Mt[1][0], Mt[1][1] + 1))
    if _det(MP1) == 0:
        raise ValueError("Cayley undefined: M^t + 1 singular")
    OneMinus = ((1 - Mt[0][0], -Mt[0][1]), (-Mt[1][0], 1 - Mt[1][1]))
    JB = _mat_mul(OneMinus, _mat_inv_frac(MP1))
    # B = -J (J B)  since J^2 = -1
    minus_J = ((0, 1), (-1, 0))
    B = _mat_mul(minus_J, JB)
    return (
        (Fraction(B[0][0]), Fraction(B[0][1])),
        (Fraction(B[1][0]), Fraction(B[1][1])),
    )


def stability(map_spec, t=1):
    """Stability exponent, eigendirections and Cayley matrix of M^t.

    The eigendirections are those of M itself (shared by all powers); the
    unstable one is scaled to unit p-component and the stable one so that
    xi_u ^ xi_s = 1.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    tr = map_spec.trace
    if tr < -2:
        raise ValueError("negative-trace hyperbolic maps are not supported")
    lam1 = math.log((tr + math.sqrt(tr * tr - 4)) / 2.0)
    mu_u = math.exp(lam1)
    mu_s = math.exp(-lam1)
    # Hyperbolicity with det = 1 forces m12 != 0, so this parametrization is safe.
    xi_u = np.array([1.0, (mu_u - map_spec.m11) / map_spec.m12])
    v_s = np.array([1.0, (mu_s - map_spec.m11) / map_spec.m12])
    wedge = xi_u[0] * v_s[1] - xi_u[1] * v_s[0]
    xi_s = v_s / wedge
    B_frac = cayley_matrix(map_spec, t)
    B = np.array([[float(B_frac[0][0]), float(B_frac[0][1])],
                  [float(B_frac[1][0]), float(B_frac[1][1])]])
    return HyperbolicData(
        lam=t * lam1,
        xi_u=xi_u,
        xi_s=xi_s,
        B=B,
        B_frac=B_frac,
        xi_u2=float(xi_u @ xi_u),
        xi_s2=float(xi_s @ xi_s),
        dot_us=float(xi_u @ xi_s),
    )


def center_action(map_spec, x, m, t=1):
    """Center generating function S(x, m) = xBx + x(B-J)m + (1/4) m(B+Jt)m.

    Exact when x is given as Fractions; B is the Cayley matrix of M^t.
    """
    B = cayley_matrix(map_spec, t)
    x = (Fraction(x[0]), Fraction(x[1]))
    m = (Fraction(m[0]), Fraction(m[1]))

    def quad(Q, u, v):
        return sum(u[i] * Q[i][j] * v[j] for i in range(2) for j in range(2))

    BmJ = tuple(tuple(B[i][j] - J_MAT[i][j] for j in range(2)) for i in range(2))
    BpJt = tuple(tuple(B[i][j] + JTILDE_MAT[i][j] for j in range(2)) for i in range(2))
    return quad(B, x, x) + quad(BmJ, x, m) + Fraction(1, 4) * quad(BpJt, m, m)


def det_identity_check(map_spec, t):
    """(|det(M^t + 1)|^(1/2), 2 cosh(lambda t / 2)) from independent routes."""
    Mt = _mat_pow(map_spec.int_matrix(), t)
    MP1 = ((Mt[0][0] + 1, Mt[0][1]), (Mt[1][0], Mt[1][1] + 1))
    lhs = math.sqrt(abs(_det(MP1)))
    lam1 = stability(map_spec, 1).lam
    rhs = 2.0 * math.cosh(lam1 * t / 2.0)
    return lhs, rhs


@dataclass(frozen=True)
class PeriodicOrbit:
    """A periodic orbit of minimal period dividing the requested l."""

    period: int           # minimal period
    points: tuple         # cycle of exact (p, q) Fractions, starting at the min point
    windings: tuple       # integer winding vector (M^period - 1) x per point
    action: Fraction      # center action per traversal of the minimal period
    exponent: float       # period * lambda

    def contains(self, x, tol=0.0):
        x = (Fraction(x[0]) % 1, Fraction(x[1]) % 1)
        return x in self.points


def _orbit_action(map_spec, cycle):
    """Sum of one-step center actions along a cycle.

    Each step x -> M x - m has center (x + (Mx - m))/2 and winding m chosen
    so the image lands back in [0,1)^2.
    """
    M = map_spec.int_matrix()
    total = Fraction(0)
    for x in cycle:
        y = _mat_vec(M, x)
        yw = (y[0] % 1, y[1] % 1)
        m = (int(y[0] - yw[0]), int(y[1] - yw[1]))
        c = ((x[0] + yw[0]) / 2, (x[1] + yw[1]) / 2)
        total += center_action(map_spec, c, m, t=1)
    return total


def periodic_points(map_spec, l):
    """All periodic orbits whose points are fixed by M^l, as exact rationals.

    Fixed points of M^l have coordinates with denominator D = |det(M^l - 1)|;
    the D candidates are enumerated directly and grouped into orbits keyed by
    their lexicographically smallest point.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    Ml = _mat_pow(map_spec.int_matrix(), l)
    K = ((Ml[0][0] - 1, Ml[0][1]), (Ml[1][0], Ml[1][1] - 1))
    D = abs(_det(K))
    if D == 0:
        raise ValueError("M^l - 1 singular")
    points = []
    for a in range(D):
        for b in range(D):
            if (K[0][0] * a + K[0][1] * b) % D == 0 and (K[1][0] * a + K[1][1] * b) % D == 0:
                points.append((Fraction(a, D), Fraction(b, D)))
    lam1 = stability(map_spec, 1).lam
    seen = set()
    orbits = []
    for x0 in points:
        if x0 in seen:
            continue
        cycle = [x0]
        x = map_spec.apply(x0)
        while x != x0:
            cycle.append(x)
            x = map_spec.apply(x)
        seen.update(cycle)
        start = min(cycle)
        i0 = cycle.index(start)
        cycle = cycle[i0:] + cycle[:i0]
        n = len(cycle)
        Mn = _mat_pow(map_spec.int_matrix(), n)
        Kn = ((Mn[0][0] - 1, Mn[0][1]), (Mn[1][0], Mn[1][1] - 1))
        windings = []
        for x in cycle:
            w = _mat_vec(Kn, x)
            windings.append((int(w[0]), int(w[1])))
        orbits.append(PeriodicOrbit(
            period=n,
            points=tuple(cycle),
            windings=tuple(windings),
            action=_orbit_action(map_spec, cycle),
            exponent=n * lam1,
        ))
    orbits.sort(key=lambda o: (o.period, o.points[0]))
    return orbits


def orbit_of_point(map_spec, x, max_period=64):
    """Minimal orbit through an exact periodic point x, or None if not periodic."""
    x0 = (Fraction(x[0]) % 1, Fraction(x[1]) % 1)
    cycle = [x0]
    y = map_spec.apply(x0)
    while y != x0:
        if len(cycle) > max_period:
            return None
        cycle.append(y)
        y = map_spec.apply(y)
    for orb in periodic_points(map_spec, len(cycle)):
        if x0 in orb.points:
            return orb
    return None


def cayley_reconstruct(B_frac):
    """Invert the Cayley parametrization: M = (1 - J B)(1 + J B)^(-1)."""
    JB = _mat_mul(tuple(tuple(Fraction(v) for v in row) for row in J_MAT), B_frac)
    num = ((1 - JB[0][0], -JB[0][1]), (-JB[1][0], 1 - JB[1][1]))
    den = ((1 + JB[0][0], JB[0][1]), (JB[1][0], 1 + JB[1][1]))
    M = _mat_mul(num, _mat_inv_frac(den))
    return M
