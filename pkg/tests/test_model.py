"""Hamiltonian construction and parity algebra against dense-loop oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmtp_rabi import (
    ModelParams,
    SectorKey,
    build_full_hamiltonian,
    build_sector_hamiltonian,
    fulton_gouterman_residual,
    parity_sign_total,
    sector_parity_sign,
)
from tmtp_rabi.model import (
    number_diagonal,
    pair_coupling,
    parity_diagonal,
    sector_occupations,
)

from oracles import (
    dense_boson_operators,
    dense_full_hamiltonian,
    eigvals_dense,
    fulton_gouterman_offdiagonal,
    parity_sign_reference,
    sector_matrix_projection,
    sector_states,
)


class TestModelParams:
    def test_derived_frequencies(self):
        p = ModelParams(omega1=1.2, omega2=0.8, j=1.0, lam=0.3)
        assert p.omega_plus == pytest.approx(1.0)
        assert p.omega_minus == pytest.approx(0.2)

    def test_defaults_are_resonant(self):
        p = ModelParams()
        assert (p.omega1, p.omega2, p.j, p.lam) == (1.0, 1.0, 1.0, 0.0)

    def test_rejects_nonpositive_frequencies(self):
        with pytest.raises(ValueError):
            ModelParams(omega1=0.0)
        with pytest.raises(ValueError):
            ModelParams(omega2=-1.0)

    def test_rejects_negative_coupling(self):
        with pytest.raises(ValueError):
            ModelParams(lam=-0.1)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            ModelParams(j=float("nan"))


class TestSectorKey:
    def test_branch_values(self):
        assert SectorKey(branch=1, delta=0).branch == 1
        assert SectorKey(branch=-1, delta=-3).delta == -3
        with pytest.raises(ValueError):
            SectorKey(branch=0, delta=0)
        with pytest.raises(ValueError):
            SectorKey(branch=2, delta=1)


class TestParitySigns:
    def test_total_parity_first_values(self):
        # pattern of (-1)^(N(N-1)/2): two plus, two minus, repeating
        expected = [1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1]
        assert [parity_sign_total(n) for n in range(12)] == expected

    def test_total_parity_matches_reference(self):
        for n in range(200):
            assert parity_sign_total(n) == parity_sign_reference(n)

    def test_sector_parity_examples(self):
        assert sector_parity_sign(1, 0) == -1
        assert sector_parity_sign(0, 1) == 1
        assert sector_parity_sign(0, 2) == -1

    def test_sector_constant_phase_table(self):
        # c_delta = sector_parity_sign(0, delta) has period 4 in |delta|
        expected = {0: 1, 1: 1, 2: -1, 3: -1, 4: 1, 5: 1, 6: -1, 7: -1, 8: 1}
        for delta, c in expected.items():
            assert sector_parity_sign(0, delta) == c
            assert sector_parity_sign(0, -delta) == c

    def test_sector_parity_reduces_to_total(self):
        for delta in range(-5, 6):
            for n in range(30):
                assert sector_parity_sign(n, delta) == parity_sign_total(
                    2 * n + abs(delta)
                )


@given(n=st.integers(min_value=0, max_value=500), delta=st.integers(-40, 40))
def test_property_sector_parity_alternates(n, delta):
    assert sector_parity_sign(n, delta) == (-1) ** n * sector_parity_sign(0, delta)


class TestSectorOccupations:
    def test_excess_in_mode_a_for_positive_delta(self):
        na, nb = sector_occupations(2, 4)
        assert na.tolist() == [2, 3, 4, 5]
        assert nb.tolist() == [0, 1, 2, 3]

    def test_excess_in_mode_b_for_negative_delta(self):
        na, nb = sector_occupations(-2, 3)
        assert na.tolist() == [0, 1, 2]
        assert nb.tolist() == [2, 3, 4]

    def test_matches_oracle_listing(self):
        for delta in (-3, -1, 0, 1, 4):
            na, nb = sector_occupations(delta, 6)
            assert list(zip(na.tolist(), nb.tolist())) == sector_states(delta, 6)


class TestBuildSectorHamiltonian:
    def test_decoupled_frozen_example(self):
        p = ModelParams(omega1=1.0, omega2=1.0, j=1.0, lam=0.0)
        t = build_sector_hamiltonian(p, SectorKey(branch=-1, delta=0), 3)
        assert t.diag.tolist() == [-1.0, 3.0, 3.0]
        assert t.off.tolist() == [0.0, 0.0]

    def test_first_coupling_entry(self):
        p = ModelParams(lam=0.5)
        for s in (1, -1):
            t = build_sector_hamiltonian(p, SectorKey(branch=s, delta=1), 2)
            assert t.off[0] == pytest.approx(s * 0.5 * math.sqrt(2.0), abs=1e-15)

    def test_rejects_zero_cutoff(self):
        with pytest.raises(ValueError):
            build_sector_hamiltonian(ModelParams(), SectorKey(branch=1, delta=0), 0)

    def test_matches_dense_projection_oracle(self):
        p = ModelParams(omega1=1.0, omega2=2.0, j=0.7, lam=0.4)
        for s in (1, -1):
            for delta in (-2, 0, 1, 3):
                t = build_sector_hamiltonian(p, SectorKey(branch=s, delta=delta), 8)
                ref = sector_matrix_projection(1.0, 2.0, 0.7, 0.4, s, delta, 8)
                assert np.max(np.abs(t.dense() - ref)) == 0.0

    def test_mode_swap_mirrors_delta_sign(self):
        p = ModelParams(omega1=1.3, omega2=0.6, j=0.9, lam=0.5)
        q = ModelParams(omega1=0.6, omega2=1.3, j=0.9, lam=0.5)
        for s in (1, -1):
            for delta in (1, 2, 5):
                a = build_sector_hamiltonian(p, SectorKey(branch=s, delta=delta), 7)
                b = build_sector_hamiltonian(q, SectorKey(branch=s, delta=-delta), 7)
                assert np.array_equal(a.diag, b.diag)
                assert np.array_equal(a.off, b.off)

    def test_branch_flip_equals_sign_flipped_couplings(self):
        # H(-branch) at (j, lam) is entrywise H(+branch) at (-j, -lam): the
        # two branches share one formula with every coupling negated.
        p = ModelParams(j=0.8, lam=0.45)
        minus = build_sector_hamiltonian(p, SectorKey(branch=-1, delta=1), 6)
        plus = build_sector_hamiltonian(p, SectorKey(branch=1, delta=1), 6)
        number = np.array(
            [1.0 * (n + 1) + 1.0 * n for n in range(6)]
        )  # omega1*na + omega2*nb
        assert np.allclose(minus.diag - number, -(plus.diag - number), atol=0)
        assert np.array_equal(minus.off, -plus.off)


@given(
    s=st.sampled_from([1, -1]),
    delta=st.integers(min_value=-4, max_value=4),
    cutoff=st.integers(min_value=1, max_value=9),
    j=st.floats(min_value=0.0, max_value=3.0),
    lam=st.floats(min_value=0.0, max_value=2.0),
)
@settings(max_examples=40)
def test_property_sector_matrix_matches_projection(s, delta, cutoff, j, lam):
    p = ModelParams(omega1=1.0, omega2=1.5, j=j, lam=lam)
    t = build_sector_hamiltonian(p, SectorKey(branch=s, delta=delta), cutoff)
    ref = sector_matrix_projection(1.0, 1.5, j, lam, s, delta, cutoff)
    assert np.max(np.abs(t.dense() - ref)) == 0.0


class TestBosonOperators:
    def test_entries_match_dense_loops(self):
        p = ModelParams(omega1=1.0, omega2=2.0)
        number_ref, parity_ref, pair_ref = dense_boson_operators(1.0, 2.0, 5)
        assert np.array_equal(np.diag(number_diagonal(p, 5)), number_ref)
        assert np.array_equal(np.diag(parity_diagonal(5)), parity_ref)
        assert np.max(np.abs(pair_coupling(5).toarray() - pair_ref)) == 0.0

    def test_parity_algebra_exact(self):
        par = parity_diagonal(7)
        pair = pair_coupling(7).toarray()
        pmat = np.diag(par)
        assert np.array_equal(pmat @ pmat, np.eye(par.size))
        # diagonal operators commute; the pair coupling anticommutes because
        # it moves total occupation by exactly 2, flipping the parity sign
        anti = pmat @ pair + pair @ pmat
        assert np.max(np.abs(anti)) == 0.0


class TestBuildFullHamiltonian:
    def test_matches_dense_loop_oracle_entrywise(self):
        for omega1, omega2, j, lam in [
            (1.0, 1.0, 1.0, 0.5),
            (1.0, 2.0, 0.7, 0.3),
            (0.5, 0.5, 0.0, 1.0),
        ]:
            p = ModelParams(omega1=omega1, omega2=omega2, j=j, lam=lam)
            h = build_full_hamiltonian(p, 6)
            ref = dense_full_hamiltonian(omega1, omega2, j, lam, 6)
            assert h.dim == ref.shape[0]
            assert np.max(np.abs(h.entries.toarray() - ref)) == 0.0

    def test_decoupled_spectrum(self):
        p = ModelParams(omega1=1.0, omega2=2.0, j=0.7, lam=0.0)
        h = build_full_hamiltonian(p, 3)
        got = eigvals_dense(h.entries.toarray())
        expected = np.sort(
            [
                omega_n + sign * 0.7
                for omega_n in (na + 2.0 * nb for na in range(4) for nb in range(4))
                for sign in (1.0, -1.0)
            ]
        )
        assert np.max(np.abs(got - expected)) <= 1e-12

    def test_pair_block_eigenvalues(self):
        # j=0 decouples spins; the {(0,0), (1,1)} block of the +lam spin
        # branch is [[0, lam], [lam, 2]] with eigenvalues 1 +- sqrt(1+lam^2);
        # at lam=1 that is 1 +- sqrt(2)
        p = ModelParams(omega1=1.0, omega2=1.0, j=0.0, lam=1.0)
        h = build_full_hamiltonian(p, 1)
        w = eigvals_dense(h.entries.toarray())
        for target in (1.0 - math.sqrt(2.0), 1.0 + math.sqrt(2.0)):
            assert np.min(np.abs(w - target)) <= 1e-12

    def test_rejects_zero_cutoff(self):
        with pytest.raises(ValueError):
            build_full_hamiltonian(ModelParams(), 0)


class TestFultonGouterman:
    def test_residual_exactly_zero(self):
        p = ModelParams(omega1=1.0, omega2=2.0, j=0.7, lam=0.3)
        assert fulton_gouterman_residual(p, 10) == 0.0

    def test_residual_zero_without_coupling(self):
        assert fulton_gouterman_residual(ModelParams(j=0.5, lam=0.0), 5) == 0.0

    def test_dense_rotation_oracle_small(self):
        for n_max in (3, 5, 10):
            res = fulton_gouterman_offdiagonal(1.0, 2.0, 0.7, 0.3, n_max)
            assert res <= 1e-12

    def test_rotation_preserves_spectrum_blockwise(self):
        # eigenvalues of the full matrix equal the union of the two
        # spin-decoupled blocks h0 +- (j P + lam V)
        p = ModelParams(omega1=1.0, omega2=1.0, j=1.0, lam=0.4)
        h = build_full_hamiltonian(p, 5)
        full = eigvals_dense(h.entries.toarray())
        number, parity, pair = dense_boson_operators(1.0, 1.0, 5)
        blocks = np.concatenate(
            [
                eigvals_dense(number + s * (1.0 * parity + 0.4 * pair))
                for s in (1, -1)
            ]
        )
        assert np.max(np.abs(full - np.sort(blocks))) <= 1e-12


@given(
    n_max=st.integers(min_value=1, max_value=7),
    j=st.floats(min_value=0.0, max_value=2.0),
    lam=st.floats(min_value=0.0, max_value=2.0),
    omega2=st.floats(min_value=0.3, max_value=3.0),
)
@settings(max_examples=30)
def test_property_spin_blocks_stay_decoupled(n_max, j, lam, omega2):
    p = ModelParams(omega1=1.0, omega2=omega2, j=j, lam=lam)
    assert fulton_gouterman_residual(p, n_max) <= 1e-12
