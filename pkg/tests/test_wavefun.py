import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgmakarov import model, oracle, wavefun
from kgmakarov.model import AngularChannel, DomainError, ModelParams, QuantumNumbers
from kgmakarov.wavefun import ConsistencyError

P = ModelParams(1.0, 0.0, 0.0, 1.0)


def test_radial_ground_state_example():
    # E = 0.6: x = 1.6 r, R = C r exp(-0.8 r) with C = 1.6^(3/2)/sqrt(2); the x-form constant is sqrt(0.8)
    w = wavefun.radial_wave(P, 0.6, 0.0, 0)
    assert w.x_scale == pytest.approx(1.6, abs=1e-15)
    assert w.norm_numeric * 1.6 == pytest.approx(1.6**1.5 / math.sqrt(2), rel=1e-12)
    assert w.norm_numeric == pytest.approx(math.sqrt(0.8), abs=1e-12)
    assert w.norm_analytic**2 == pytest.approx(1.6, abs=1e-12)
    r = np.array([0.5, 1.0, 3.0])
    assert np.allclose(w(r), w.norm_numeric * 1.6 * r * np.exp(-0.8 * r), rtol=1e-13)


@pytest.mark.parametrize("ell,N", [(0.0, 0), (0.5, 2), (math.sqrt(2), 3), (2.0, 1)])
def test_radial_unit_norm_and_nodes(ell, N):
    E = model.radial_energy_closed_form(P.M, P.alpha, ell, N)
    w = wavefun.radial_wave(P, E, ell, N)
    assert w(0.0) == 0.0
    assert oracle.quadrature(lambda r: w(r) ** 2, 0.0, math.inf, panels=32) == pytest.approx(1.0, abs=1e-10)
    r = np.linspace(0, 6 * (w.n_prime + 10 * math.sqrt(w.n_prime)) / w.kappa, 2048)[1:]
    assert wavefun.count_sign_changes(w(r)) == N


def test_radial_wave_samples_and_errors():
    w = wavefun.radial_wave(P, 0.6, 0.0, 0, r_grid=[0.0, 1.0])
    assert w.samples[0] == (0.0, 0.0) and w.samples[1][1] == pytest.approx(float(w(1.0)))
    with pytest.raises(DomainError):
        wavefun.radial_wave(P, 1.0, 0.0, 0)
    with pytest.raises(DomainError):
        wavefun.radial_wave(P, 0.5, -1.0, 0)


def test_over_r_matches_ratio():
    w = wavefun.radial_wave(P, 0.8, 0.5, 1)
    r = np.array([0.3, 2.0, 7.0])
    assert np.allclose(w.over_r(r), w(r) / r, rtol=1e-12)
    assert w.over_r(0.0) == 0.0
    w0 = wavefun.radial_wave(P, 0.6, 0.0, 0)
    assert float(w0.over_r(0.0)) == pytest.approx(w0.norm_numeric * w0.x_scale)


@pytest.mark.parametrize("params", [(1.0, 0.0, 0.0, 1.0), (0.7, 0.2, 0.1, 2.0)])
def test_printed_radial_constant_is_off_by_sqrt2(params):
    p = ModelParams(*params)
    ratios = []
    for N in range(4):
        for ell in (0.0, 0.5, 1.3):
            E = model.radial_energy_closed_form(p.M, p.alpha, ell, N)
            ratios.append(wavefun.radial_norm_audit(p, E, ell, N)[2])
    assert np.allclose(np.square(ratios), 2.0, atol=1e-12)


def test_radial_gram_matrix():
    for ell in (0.0, math.sqrt(2)):
        G = wavefun.radial_gram_matrix(ell, 4)
        assert np.max(np.abs(G - np.eye(5))) < 1e-10


def test_angular_examples():
    w = wavefun.angular_wave(0, 0.0, 0.0, 0)
    assert float(w(0.7)) == pytest.approx(1 / math.sqrt(2), abs=1e-13)
    w = wavefun.angular_wave(1, 0.0, 0.0, 0)
    th = np.linspace(0.1, 3.0, 9)
    assert np.allclose(w(th), math.sqrt(0.75) * np.sin(th), atol=1e-13)
    w = wavefun.angular_wave(1, 0.0, 0.0, 1)
    th = np.linspace(0, math.pi, 2049)
    assert wavefun.count_sign_changes(w(th)) == 1
    assert abs(float(w(math.pi / 2))) < 1e-13


@pytest.mark.parametrize("m", [0, 1, 2])
def test_angular_legendre_limit(m):
    th = np.linspace(0.05, math.pi - 0.05, 20)
    for n in range(4):
        w = wavefun.angular_wave(m, 0.0, 0.0, n)
        ref = oracle.associated_legendre(m + n, m, np.cos(th))
        got = w(th)
        sign = np.sign(got[np.argmax(np.abs(got))] * ref[np.argmax(np.abs(got))])
        assert np.allclose(got, sign * ref, rtol=1e-8, atol=1e-12)


channels = st.tuples(st.integers(0, 3), st.floats(0, 4), st.floats(-1, 1), st.integers(0, 3))


@settings(max_examples=25)
@given(channels)
def test_angular_unit_norm_and_printed_ratio(ch):
    m, bp, gp, n = ch
    base = m * m + bp
    gp = gp * base  # keep the channel bound
    if base - abs(gp) < 0.05:
        return
    w = wavefun.angular_wave(m, bp, gp, n)
    norm = oracle.quadrature(lambda t: w(t) ** 2 * np.sin(t), 0.0, math.pi, panels=16, rtol=1e-10)
    assert norm == pytest.approx(1.0, abs=1e-6)
    assert w.norm_analytic / w.norm_numeric == pytest.approx(1.0, abs=1e-9)
    th = np.linspace(0, math.pi, 2049)
    assert wavefun.count_sign_changes(w(th)) == n


def test_angular_ratio_state_independent():
    ratios = [wavefun.angular_norm_audit(m, bp, gp, n)[2]
              for m, bp, gp in [(1, 0.3, 0.1), (2, 1.0, -0.5), (0, 2.0, 1.0)] for n in range(3)]
    assert np.ptp(ratios) < 1e-10


def test_angular_gram_matrix():
    G = wavefun.angular_gram_matrix(1, 0.6, 0.25, 3)
    assert np.max(np.abs(G - np.eye(4))) < 1e-10


def test_azimuthal():
    assert wavefun.azimuthal_wave(0, 1.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    v = wavefun.azimuthal_wave(2, math.pi / 4)
    assert v == pytest.approx(1j / math.sqrt(2 * math.pi), abs=1e-15)
    phi = np.linspace(0, 2 * math.pi, 5)
    assert np.allclose(np.abs(wavefun.azimuthal_wave(-3, phi)), 1 / math.sqrt(2 * math.pi))


def _state(p, N, n, m):
    e = model.self_consistent_spectrum(p, QuantumNumbers(N, n, m))
    ch = AngularChannel.from_energy(p, e.energy, m)
    return (wavefun.radial_wave(p, e.energy, e.ell_eff, N),
            wavefun.angular_wave(m, ch.beta_p, ch.gamma_p, n))


def test_assemble_psi_phase_and_consistency():
    p = ModelParams(1.0, 0.1, 0.05, 1.0)
    rw, aw = _state(p, 1, 0, 1)
    pts = [(1.5, 0.9, phi) for phi in np.linspace(0, 2 * math.pi, 7)]
    vals = [s.value for s in wavefun.assemble_psi(rw, aw, 1, pts)]
    assert np.ptp(np.abs(vals)) < 1e-14
    assert vals[1] / vals[0] == pytest.approx(np.exp(1j * 2 * math.pi / 6))
    with pytest.raises(ConsistencyError):
        wavefun.assemble_psi(rw, aw, 2, pts)
    _, other = _state(p, 0, 1, 1)
    with pytest.raises(ConsistencyError):
        wavefun.assemble_psi(rw, other, 1, pts)


def test_assemble_psi_three_dimensional_norm():
    p = ModelParams(1.0, 0.1, 0.05, 1.0)
    rw, aw = _state(p, 0, 1, 2)
    # |psi|^2 r^2 sin(theta) over r and theta; the phi integral of |Phi|^2 is 1
    r_int = oracle.quadrature(lambda r: (rw.over_r(r) * r) ** 2, 0.0, math.inf, panels=32)
    t_int = oracle.quadrature(lambda t: aw(t) ** 2 * np.sin(t), 0.0, math.pi, panels=16)
    phi = np.linspace(0, 2 * math.pi, 65)[:-1]
    ph_int = np.mean(np.abs(wavefun.azimuthal_wave(2, phi)) ** 2) * 2 * math.pi
    assert r_int * t_int * ph_int == pytest.approx(1.0, abs=1e-8)
    s = wavefun.assemble_psi(rw, aw, 2, [(2.0, 1.0, 0.3)])[0]
    assert abs(s.value) == pytest.approx(abs(rw.over_r(2.0) * aw(1.0)) / math.sqrt(2 * math.pi))


def test_ground_state_shape():
    rw, aw = _state(P, 0, 0, 0)
    r = np.linspace(0.01, 20, 400)
    assert np.all(np.diff(rw.over_r(r)) < 0)
    th = np.linspace(0, math.pi, 50)
    vals = [s.value for s in wavefun.assemble_psi(rw, aw, 0, [(1.0, t, 0.0) for t in th])]
    assert np.ptp(np.real(vals)) < 1e-13 and np.max(np.abs(np.imag(vals))) == 0
