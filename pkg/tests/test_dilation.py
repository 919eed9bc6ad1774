import numpy as np
import pytest

from ptsim import (
    build_dilation,
    dilated_evolution,
    embed_state,
    embedding_membership,
    errors,
    gunther_eta,
    gunther_system,
    in_tau_subspace,
    matrix_exp,
)
from ptsim.linalg import psd_power

from corpus import broken_corpus, defective_corpus, unbroken_corpus

RESIDUAL_KEYS = ("hermiticity", "eq_h1h2", "eq_h2h4", "tau_sq")


def assert_clean(d, tol=1e-10):
    for key in RESIDUAL_KEYS:
        assert d.residuals[key] <= tol, (key, d.residuals[key])


class TestBuildDilation:
    def test_gunther_supplied_eta(self):
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6), h1_choice="paper")
        assert_clean(d)
        # defining equations hold verbatim
        assert d.H1 + d.H2 @ d.tau == pytest.approx(d.H, abs=1e-12)
        assert d.H2.conj().T + d.H4 @ d.tau == pytest.approx(d.tau @ d.H, abs=1e-12)

    def test_auto_eta_margin(self):
        sys = gunther_system(0.7)
        d = build_dilation(sys, margin=1.25)
        assert_clean(d)
        w = np.linalg.eigvalsh(d.eta)
        assert w.min() == pytest.approx(1.25)

    def test_eta_not_greater_than_identity(self):
        sys = gunther_system(np.pi / 6)
        small = 0.1 * gunther_eta(np.pi / 6)
        with pytest.raises(errors.EtaNotGreaterThanIError):
            build_dilation(sys, eta=small)
        # rescue via rescaling
        d = build_dilation(sys, eta=small, rescale_supplied=True)
        assert_clean(d)

    def test_supplied_h1(self):
        sys = gunther_system(np.pi / 6)
        h1 = np.array([[0.3, 0.1], [0.1, -0.2]], dtype=complex)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6), h1_choice="supplied", h1=h1)
        assert_clean(d)
        assert d.H1 == pytest.approx(h1)

    def test_supplied_h1_must_be_hermitian(self):
        sys = gunther_system(np.pi / 6)
        with pytest.raises(errors.SuppliedH1NotHermitianError):
            build_dilation(
                sys,
                eta=gunther_eta(np.pi / 6),
                h1_choice="supplied",
                h1=np.array([[0, 1], [0, 0]], dtype=complex),
            )

    def test_refuses_broken_and_defective(self):
        for sys in broken_corpus()[:2] + defective_corpus()[:2]:
            with pytest.raises(errors.NotUnbrokenError):
                build_dilation(sys)

    def test_random_corpus_both_h1_choices(self):
        rng = np.random.default_rng(41)
        for sys in unbroken_corpus():
            for choice in ("zero", "paper"):
                d = build_dilation(sys, h1_choice=choice)
                assert_clean(d)
            n = sys.H.shape[0]
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            d = build_dilation(sys, h1_choice="supplied", h1=0.5 * (g + g.conj().T))
            assert_clean(d)


class TestEvolution:
    def test_top_block_identity(self):
        sys = gunther_system(np.pi / 4)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 4), h1_choice="paper")
        psi = np.array([0.6, 0.8j], dtype=complex)
        for t in (0.1, 0.5, 1.0, 2.0, 5.0):
            x = np.concatenate([psi, d.tau @ psi])
            y = dilated_evolution(d, t, x)
            target = matrix_exp(-1j * t * d.H) @ psi
            assert np.linalg.norm(y[:2] - target) <= 1e-8
            assert np.linalg.norm(y[2:] - d.tau @ target) <= 1e-8

    def test_subspace_is_invariant(self):
        for sys in unbroken_corpus()[:4]:
            d = build_dilation(sys)
            n = d.dim
            psi = np.arange(1, n + 1).astype(complex)
            x = np.concatenate([psi, d.tau @ psi])
            y = dilated_evolution(d, 1.3, x)
            assert in_tau_subspace(y, d.tau)

    def test_rejects_non_member(self):
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6))
        bad = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
        assert not in_tau_subspace(bad, d.tau)
        with pytest.raises(errors.NotInSubspaceError):
            dilated_evolution(d, 1.0, bad)


class TestEmbedState:
    def test_unit_norm_and_membership(self):
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6))
        psi = np.array([1.0, 2.0 - 1j], dtype=complex)
        x = embed_state(psi, d)
        assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
        assert in_tau_subspace(x, d.tau)
        # direction is (psi; tau psi)
        raw = np.concatenate([psi, d.tau @ psi])
        assert x == pytest.approx(raw / np.linalg.norm(raw), abs=1e-12)

    def test_eta_norm_is_the_normalizer(self):
        # ||(psi; tau psi)||^2 = <psi, eta psi>, so the Euclidean normalizer
        # coincides with the eta-norm of psi
        sys = gunther_system(0.9)
        d = build_dilation(sys)
        psi = np.array([0.2, -1.1 + 0.4j], dtype=complex)
        sqrt_eta = psd_power(d.eta, 0.5)
        raw = np.concatenate([psi, d.tau @ psi])
        assert np.linalg.norm(raw) == pytest.approx(np.linalg.norm(sqrt_eta @ psi), abs=1e-12)

    def test_eta_norm_conservation_under_evolution(self):
        # ||sqrt(eta) psi(t)|| is constant, so the embedded state stays unit
        sys = gunther_system(np.pi / 4)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 4))
        psi = np.array([0.3, 0.7j], dtype=complex)
        x = embed_state(psi, d)
        for t in (0.5, 1.0, 3.0):
            y = dilated_evolution(d, t, x)
            assert np.linalg.norm(y) == pytest.approx(1.0, abs=1e-10)

    def test_zero_vector(self):
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6))
        with pytest.raises(errors.ZeroVectorError):
            embed_state(np.zeros(2), d)


class TestEmbeddingMembership:
    def test_members_accepted(self):
        rng = np.random.default_rng(43)
        for sys in unbroken_corpus()[:5]:
            d = build_dilation(sys)
            n = d.dim
            psi = rng.normal(size=n) + 1j * rng.normal(size=n)
            x = np.concatenate([psi, d.tau @ psi])
            assert embedding_membership(d.Hhat, d.H, x)

    def test_generic_non_members_rejected(self):
        rng = np.random.default_rng(44)
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6))
        hits = 0
        for _ in range(20):
            x = rng.normal(size=4) + 1j * rng.normal(size=4)
            hits += embedding_membership(d.Hhat, d.H, x)
        assert hits == 0

    def test_shape_mismatch(self):
        sys = gunther_system(np.pi / 6)
        d = build_dilation(sys, eta=gunther_eta(np.pi / 6))
        with pytest.raises(errors.DimensionMismatchError):
            embedding_membership(d.Hhat, d.H, np.zeros(3))
