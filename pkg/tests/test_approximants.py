"""Squeeze frame, squeezing matrix elements, and the block approximations.

The closed-form matrix elements are the one place where several sign and
index conventions compete; every test here pins them against the matrix
exponential of the generator, computed by a route (scipy Pade) that shares
no code with the library.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmtp_rabi import (
    CollapseRegime,
    ModelParams,
    SectorKey,
    collapse_point,
    exact_sector_spectrum,
    rwa_energies,
    sgrwa_diag_energy,
    sgrwa_energies,
    squeeze_elements_closed,
    squeeze_elements_oracle,
    squeeze_frame,
)

from oracles import squeeze_window_pade


def frame_for_alpha(alpha, delta=0, omega1=1.0, omega2=1.0, j=1.0):
    """Build the frame whose squeeze magnitude is the requested alpha."""
    lam = 0.5 * (omega1 + omega2) * math.tanh(2.0 * alpha)
    p = ModelParams(omega1=omega1, omega2=omega2, j=j, lam=lam)
    return squeeze_frame(p, delta)


class TestSqueezeFrame:
    def test_three_four_five_point(self):
        p = ModelParams(lam=0.6)
        fr = squeeze_frame(p, 0)
        assert fr.omega_tilde == pytest.approx(0.8, abs=1e-15)
        assert fr.alpha == pytest.approx(0.5 * math.atanh(0.6), abs=1e-15)
        assert fr.alpha == pytest.approx(0.25 * math.log(4.0), abs=1e-15)
        assert fr.eta == pytest.approx(math.tanh(fr.alpha), abs=1e-16)
        assert fr.offset == pytest.approx(-0.2, abs=1e-15)

    def test_kappa_and_offset_track_delta(self):
        p = ModelParams(omega1=1.2, omega2=0.8, lam=0.5)
        for delta in (-3, 0, 2):
            fr = squeeze_frame(p, delta)
            assert fr.kappa == pytest.approx((abs(delta) + 1) / 2.0)
            expected_offset = fr.omega_tilde - 1.0 + 0.2 * delta
            assert fr.offset == pytest.approx(expected_offset, abs=1e-14)

    def test_collapse_raises_at_and_beyond(self):
        p = ModelParams(lam=1.0)
        with pytest.raises(CollapseRegime) as info:
            squeeze_frame(p, 0)
        assert info.value.lambda_c == 1.0
        assert info.value.lam == 1.0
        assert "lambda_c=1" in str(info.value)
        with pytest.raises(CollapseRegime):
            squeeze_frame(ModelParams(lam=1.5), 0)

    def test_collapse_point_is_mean_frequency(self):
        assert collapse_point(ModelParams()) == 1.0
        assert collapse_point(ModelParams(omega1=1.2, omega2=0.8)) == 1.0
        assert collapse_point(ModelParams(omega1=3.0, omega2=1.0)) == 2.0

    def test_frequency_squashes_monotonically(self):
        tildes = [
            squeeze_frame(ModelParams(lam=lam), 0).omega_tilde
            for lam in np.linspace(0.0, 0.999, 40)
        ]
        assert tildes[0] == 1.0
        assert all(a > b for a, b in zip(tildes, tildes[1:]))
        assert tildes[-1] < 0.05

    def test_frame_identity_links_eta_and_kappa(self):
        # (1 - eta^2)^kappa with eta = tanh(alpha) equals sech(alpha)^(|D|+1)
        for alpha in (0.2, 0.5, 0.9):
            for delta in (0, 1, 3):
                fr = frame_for_alpha(alpha, delta)
                left = (1.0 - fr.eta**2) ** fr.kappa
                right = (1.0 / math.cosh(fr.alpha)) ** (abs(delta) + 1)
                assert left == pytest.approx(right, abs=1e-14)


class TestSqueezeElementsClosed:
    def test_zero_squeeze_is_identity(self):
        fr = squeeze_frame(ModelParams(lam=0.0), 2)
        for sign in (1, -1):
            m = squeeze_elements_closed(fr, 2, 6, sign=sign)
            assert np.array_equal(m.entries, np.eye(6))

    def test_corner_element_closed_form(self):
        # the (0,0) element is (1 - tanh^2(2 alpha))^kappa = sech(2 alpha)^(|D|+1)
        for alpha in (0.1, 0.3467, 0.8):
            for delta in (0, 1, 2):
                fr = frame_for_alpha(alpha, delta)
                m = squeeze_elements_closed(fr, delta, 1)
                expected = (1.0 / math.cosh(2.0 * alpha)) ** (abs(delta) + 1)
                assert m.entries[0, 0] == pytest.approx(expected, abs=1e-14)

    def test_matches_pade_oracle_moderate_squeeze(self):
        fr = frame_for_alpha(0.3, 1)
        got = squeeze_elements_closed(fr, 1, 12).entries
        ref = squeeze_window_pade(0.3, 1, 12, 96)
        assert np.max(np.abs(got - ref)) <= 1e-8

    def test_matches_pade_oracle_both_signs(self):
        for sign in (1, -1):
            for delta in (0, 2):
                fr = frame_for_alpha(0.45, delta)
                got = squeeze_elements_closed(fr, delta, 10, sign=sign).entries
                ref = squeeze_window_pade(0.45, delta, 10, 120, sign=sign)
                assert np.max(np.abs(got - ref)) <= 1e-10

    def test_transpose_inverts_the_sign(self):
        # S(-theta) = S(theta)^T holds exactly entry by entry
        fr = frame_for_alpha(0.6, 3)
        plus = squeeze_elements_closed(fr, 3, 9, sign=1).entries
        minus = squeeze_elements_closed(fr, 3, 9, sign=-1).entries
        assert np.array_equal(minus, plus.T)

    def test_checkerboard_reflection(self):
        # S[n, m] = (-1)^(m+n) S[m, n] exactly
        fr = frame_for_alpha(0.5, 1)
        m = squeeze_elements_closed(fr, 1, 8).entries
        for i in range(8):
            for k in range(8):
                assert m[k, i] == (-1.0) ** (i + k) * m[i, k]

    def test_rejects_mismatched_frame_delta(self):
        fr = squeeze_frame(ModelParams(lam=0.4), 1)
        with pytest.raises(ValueError):
            squeeze_elements_closed(fr, 2, 4)

    def test_rejects_bad_sign(self):
        fr = squeeze_frame(ModelParams(lam=0.4), 0)
        with pytest.raises(ValueError):
            squeeze_elements_closed(fr, 0, 4, sign=2)


class TestSqueezeElementsOracle:
    def test_zero_squeeze_is_identity(self):
        fr = squeeze_frame(ModelParams(lam=0.0), 0)
        m = squeeze_elements_oracle(fr, 0, 5, 24)
        assert np.max(np.abs(m.entries - np.eye(5))) <= 1e-14

    def test_scalar_cutoff_doubling(self):
        fr = frame_for_alpha(0.3, 0)
        at_100 = squeeze_elements_oracle(fr, 0, 1, 100).entries[0, 0]
        at_200 = squeeze_elements_oracle(fr, 0, 1, 200).entries[0, 0]
        assert abs(at_100 - at_200) <= 1e-12

    def test_rejects_small_cutoff(self):
        fr = squeeze_frame(ModelParams(lam=0.4), 0)
        with pytest.raises(ValueError):
            squeeze_elements_oracle(fr, 0, 10, 39)

    def test_full_column_slab_is_orthonormal(self):
        # The columns of the full-cutoff operator restricted to the first
        # `size` indices are orthonormal (unitarity); the square size x size
        # window is not, since it drops rows that carry column weight.
        from tmtp_rabi.linalg import expm_antisymmetric

        size, cutoff = 10, 80
        for alpha in (0.1, 0.5):
            g = np.zeros((cutoff, cutoff))
            for n in range(cutoff - 1):
                v = 2.0 * alpha * math.sqrt((n + 1) * (n + 1))
                g[n, n + 1] = v
                g[n + 1, n] = -v
            full = expm_antisymmetric(g)
            slab = full[:, :size]
            assert np.max(np.abs(slab.T @ slab - np.eye(size))) <= 1e-8
            fr = frame_for_alpha(alpha, 0)
            window = squeeze_elements_oracle(fr, 0, size, cutoff).entries
            assert np.max(np.abs(window.T @ window - np.eye(size))) > 0.1


def converged_oracle_window(frame, delta, size, sign):
    """Escalate the oracle cutoff by doubling until the window stabilizes.

    The 4x-size floor on the oracle cutoff is only a floor: near alpha = 1
    the squeezed image spreads far past the window and a fixed multiple of
    the size is not enough. Two successive cutoffs agreeing to 1e-10 is the
    trust criterion.
    """
    cutoff = max(4 * size, 64)
    prev = squeeze_elements_oracle(frame, delta, size, cutoff, sign=sign).entries
    while cutoff <= 2048:
        cutoff *= 2
        cur = squeeze_elements_oracle(frame, delta, size, cutoff, sign=sign).entries
        if np.max(np.abs(cur - prev)) <= 1e-10:
            return cur
        prev = cur
    raise AssertionError(f"oracle not converged by cutoff {cutoff}")


@given(
    alpha=st.floats(min_value=0.0, max_value=1.0),
    delta=st.integers(min_value=-4, max_value=4),
    size=st.integers(min_value=1, max_value=12),
    sign=st.sampled_from([1, -1]),
)
@settings(max_examples=25)
def test_property_closed_matches_expm_oracle(alpha, delta, size, sign):
    fr = frame_for_alpha(alpha, delta)
    closed = squeeze_elements_closed(fr, delta, size, sign=sign).entries
    oracle = converged_oracle_window(fr, delta, size, sign)
    assert np.max(np.abs(closed - oracle)) <= 1e-8


class TestSgrwaDiagEnergy:
    def test_decoupled_values(self):
        p = ModelParams(lam=0.0)
        assert sgrwa_diag_energy(p, SectorKey(branch=-1, delta=0), 0) == pytest.approx(
            -1.0, abs=1e-15
        )
        # |D|=2 flips the sector constant phase: 2 + (+1)(-1) * 1 = 1
        assert sgrwa_diag_energy(p, SectorKey(branch=1, delta=2), 0) == pytest.approx(
            1.0, abs=1e-15
        )

    def test_equals_single_site_block_limit(self):
        p = ModelParams(lam=0.5)
        sector = SectorKey(branch=-1, delta=0)
        singles = sgrwa_energies(p, sector, 8, 1)
        diag = sorted(sgrwa_diag_energy(p, sector, n) for n in range(8))
        assert np.array_equal(singles, np.array(diag))

    def test_near_ground_at_moderate_coupling(self):
        p = ModelParams(lam=0.5)
        sector = SectorKey(branch=-1, delta=0)
        approx = sgrwa_diag_energy(p, sector, 0)
        exact = exact_sector_spectrum(p, sector, 120, 1)[0]
        assert abs(approx - exact) <= 0.10 * abs(exact)

    def test_collapse_propagates(self):
        with pytest.raises(CollapseRegime):
            sgrwa_diag_energy(ModelParams(lam=1.0), SectorKey(branch=1, delta=0), 0)


class TestSgrwaEnergies:
    def test_full_block_reproduces_exact_sector(self):
        p = ModelParams(lam=0.4)
        sector = SectorKey(branch=-1, delta=0)
        approx = sgrwa_energies(p, sector, 80, 80)[:10]
        exact = exact_sector_spectrum(p, sector, 200, 10)
        assert np.max(np.abs(approx - exact)) <= 1e-6

    def test_block_size_cutoff_is_most_accurate(self):
        p = ModelParams(lam=0.6)
        sector = SectorKey(branch=1, delta=1)
        exact = exact_sector_spectrum(p, sector, 240, 6)
        errors = {}
        for block in (1, 2, 60):
            approx = sgrwa_energies(p, sector, 60, block)[:6]
            errors[block] = float(np.max(np.abs(approx - exact)))
        assert errors[60] <= 1e-6
        assert errors[60] == min(errors.values())
        assert all(np.isfinite(list(errors.values())))

    def test_ascending_and_sized(self):
        p = ModelParams(lam=0.3)
        for block in (1, 2, 3, 7):
            w = sgrwa_energies(p, SectorKey(branch=1, delta=2), 7, block)
            assert w.size == 7
            assert np.all(np.diff(w) >= -1e-12)

    def test_rejects_bad_block_size(self):
        p = ModelParams(lam=0.3)
        sector = SectorKey(branch=1, delta=0)
        with pytest.raises(ValueError):
            sgrwa_energies(p, sector, 10, 0)
        with pytest.raises(ValueError):
            sgrwa_energies(p, sector, 10, 11)

    def test_collapse_raises(self):
        with pytest.raises(CollapseRegime):
            sgrwa_energies(ModelParams(lam=1.2), SectorKey(branch=1, delta=0), 10, 2)


class TestRwaEnergies:
    def test_decoupled_exact(self):
        p = ModelParams(lam=0.0)
        got = rwa_energies(p, SectorKey(branch=-1, delta=0), 6)
        assert got.tolist() == [-1.0, 3.0, 3.0, 7.0, 7.0, 11.0]

    def test_ground_close_at_weak_coupling(self):
        p = ModelParams(lam=0.2)
        sector = SectorKey(branch=-1, delta=0)
        approx = rwa_energies(p, sector, 100)[0]
        exact = exact_sector_spectrum(p, sector, 120, 1)[0]
        assert abs(approx - exact) <= 0.05 * abs(exact)

    def test_no_collapse_past_critical_coupling(self):
        # unlike the squeezed frame, the bare 2x2 truncation stays finite
        # and spread out at and beyond the collapse coupling
        for lam in (1.0, 1.3):
            w = rwa_energies(ModelParams(lam=lam), SectorKey(branch=-1, delta=0), 40)
            assert np.all(np.isfinite(w))
            spacings = np.diff(w[:10])
            assert np.mean(spacings) > 0.3

    def test_odd_cutoff_keeps_last_singleton(self):
        p = ModelParams(lam=0.7)
        w = rwa_energies(p, SectorKey(branch=1, delta=0), 7)
        assert w.size == 7
        # the dangling level (index 6, diag 12 + j*(+1)) survives unblocked
        assert np.any(np.abs(w - 13.0) <= 1e-12)

    def test_rejects_cutoff_below_two(self):
        with pytest.raises(ValueError):
            rwa_energies(ModelParams(), SectorKey(branch=1, delta=0), 1)


@given(
    lam=st.floats(min_value=0.0, max_value=0.95),
    s=st.sampled_from([1, -1]),
    delta=st.integers(min_value=-3, max_value=3),
    block=st.integers(min_value=1, max_value=20),
)
@settings(max_examples=30)
def test_property_approximants_return_sorted_finite(lam, s, delta, block):
    p = ModelParams(lam=lam)
    sector = SectorKey(branch=s, delta=delta)
    sg = sgrwa_energies(p, sector, 20, block)
    rw = rwa_energies(p, sector, 20)
    for w in (sg, rw):
        assert w.size == 20
        assert np.all(np.isfinite(w))
        assert np.all(np.diff(w) >= -1e-12)
