"""Torus operators: reflections, translations, propagator, scar states."""

import math

import numpy as np
import pytest

from scarlab import (STANDARD_MAP, TorusHilbertSpace, propagator, translation,
                     reflection, reflection_half, coherent_state, ScarParams,
                     scar_state, spectral_operator)
from scarlab.torus import nilpotency_order


def test_space_requires_odd_dimension():
    with pytest.raises(ValueError):
        TorusHilbertSpace(4)
    assert abs(TorusHilbertSpace(7).hbar - 1.0 / (14.0 * math.pi)) < 1e-18


def test_propagator_unitary_and_symmetric():
    for N in (3, 7, 31):
        sp = TorusHilbertSpace(N)
        U = propagator(sp, STANDARD_MAP)
        assert np.max(np.abs(U.conj().T @ U - np.eye(N))) < 1e-10
        # symmetric map (m11 = m22) gives a symmetric kernel
        assert np.max(np.abs(U - U.T)) < 1e-12


def test_reflection_algebra_exhaustive_n5():
    sp = TorusHilbertSpace(5)
    N = sp.N
    Rs = {(a, b): reflection(sp, a, b) for a in range(N) for b in range(N)}
    I = np.eye(N)
    for (a, b), R in Rs.items():
        assert np.max(np.abs(R - R.conj().T)) < 1e-12
        assert np.max(np.abs(R @ R - I)) < 1e-12
    for (a, b), R in Rs.items():
        for (c, d), S in Rs.items():
            tr = np.trace(R @ S)
            want = N if (a, b) == (c, d) else 0.0
            assert abs(tr - want) < 1e-10
    total = sum(Rs.values()) / N
    assert np.max(np.abs(total - I)) < 1e-10


def test_half_lattice_reflection_consistency():
    sp = TorusHilbertSpace(7)
    # even labels recover the base operator
    for a in range(7):
        for b in range(7):
            d = reflection_half(sp, 2 * a, 2 * b) - reflection(sp, a, b)
            assert np.max(np.abs(d)) < 1e-12
    # half-shifted operators stay Hermitian involutions
    for a2, b2 in ((1, 0), (0, 3), (5, 9), (13, 13)):
        R = reflection_half(sp, a2, b2)
        assert np.max(np.abs(R - R.conj().T)) < 1e-12
        assert np.max(np.abs(R @ R - np.eye(7))) < 1e-12


def test_translation_group_law():
    sp = TorusHilbertSpace(7)
    rng = np.random.default_rng(3)
    for _ in range(10):
        k1, j1, k2, j2 = rng.integers(0, 7, size=4)
        T1 = translation(sp, k1, j1)
        T2 = translation(sp, k2, j2)
        T12 = translation(sp, k1 + k2, j1 + j2)
        # composition differs from the sum chord by the symplectic phase
        phase = np.exp(1j * np.pi * (k1 * j2 - j1 * k2) / 7.0)
        assert np.max(np.abs(T1 @ T2 - phase * T12)) < 1e-10


def test_coherent_state_basics(space223):
    sp = space223
    X = (0.5, 0.5)
    psi = coherent_state(sp, X)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
    assert int(np.argmax(np.abs(psi))) == round(sp.N * X[1]) % sp.N
    # overlap of nearby coherent states matches the plane Gaussian formula
    X2 = (0.5, 0.5 + 5.0 / sp.N)
    ov = abs(np.vdot(coherent_state(sp, X2), psi))
    want = math.exp(-((X2[1] - X[1]) ** 2) / (4.0 * sp.hbar))
    assert abs(ov - want) < 1e-6 * want


def test_reflected_coherent_state(space223):
    sp = space223
    X = (0.4, 0.3)
    a, b = 112, 89                 # reflection center exactly on the lattice
    x = (a / sp.N, b / sp.N)
    R = reflection(sp, a, b)
    refl = R @ coherent_state(sp, X)
    target = coherent_state(sp, ((2 * x[0] - X[0]) % 1.0,
                                 (2 * x[1] - X[1]) % 1.0))
    assert abs(abs(np.vdot(target, refl)) - 1.0) < 1e-8


def test_scar_state_t2_is_coherent(space223, U223):
    psi = scar_state(space223, U223, ScarParams(X=(0.5, 0.5), phi=0.3, T=2),
                     map_spec=STANDARD_MAP)
    assert abs(abs(np.vdot(psi, coherent_state(space223, (0.5, 0.5)))) - 1.0) < 1e-12


def test_scar_state_warns_off_orbit(space223, U223):
    with pytest.warns(UserWarning):
        scar_state(space223, U223, ScarParams(X=(0.123, 0.456), phi=0.0, T=4),
                   map_spec=STANDARD_MAP)


def test_window_interchangeability(space223, U223):
    # Cosine vs exponential damping of the same width: the states stay close
    # (up to a global phase) when the recurrence phase is constructive.
    # Measured distance at N = 223, T = 6 on the Bohr phase: 0.26.
    from scarlab import phi_for_phase
    sp, U = space223, U223
    T = 6
    phi = phi_for_phase(sp, STANDARD_MAP, (0.5, 0.5), 0.0)
    cos_psi = scar_state(sp, U, ScarParams(X=(0.5, 0.5), phi=phi, T=T))
    eps = sp.hbar / T
    exp_psi = scar_state(sp, U, ScarParams(X=(0.5, 0.5), phi=phi, T=T,
                                           window="exponential", eps=eps))
    phase = np.vdot(exp_psi, cos_psi)
    phase /= abs(phase)
    assert np.linalg.norm(cos_psi - phase * exp_psi) < 0.3


def test_spectral_operator_hermitian_and_limits(space223, U223):
    sp, U = space223, U223
    G = spectral_operator(sp, U, 0.7, 3.0, 12)
    assert np.max(np.abs(G - G.conj().T)) < 1e-10
    # tiny tau: only t = 0 survives
    G0 = spectral_operator(sp, U, 0.7, 1e-3, 5)
    assert np.max(np.abs(G0 - np.eye(sp.N))) < 1e-10


def test_spectral_operator_peaks_at_quasienergy(space223, U223):
    sp, U = space223, U223
    evals, evecs = np.linalg.eig(U)
    phases = np.angle(evals)
    phi = float(phases[7])
    G = spectral_operator(sp, U, phi, 3.0, 18)
    w, v = np.linalg.eigh(G)
    top = v[:, np.argmax(w)]
    # G = sum e^{i phi t} U^t peaks on the U eigenspace with eigenphase
    # nearest -phi (the t-sum is maximal where phi + omega = 0 mod 2 pi)
    dist = np.abs(np.angle(np.exp(1j * (phases + phi))))
    near = dist < dist.min() + 1e-8
    coeff = np.linalg.lstsq(evecs[:, near], top, rcond=None)[0]
    proj = evecs[:, near] @ coeff
    assert np.linalg.norm(proj) > 0.99


def test_nilpotency_small_n():
    for N in (3, 5, 7, 11):
        sp = TorusHilbertSpace(N)
        U = propagator(sp, STANDARD_MAP)
        k = nilpotency_order(sp, U)
        assert k is not None and k <= 3 * N
