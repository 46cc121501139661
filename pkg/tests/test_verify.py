import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orliczmod import multiplier as mult
from orliczmod.field import Grid, SampledField, make_signal, make_window
from orliczmod.tfa import stft_T
from orliczmod.verify import (VerificationReport, check_chirp_covariance, check_commutation,
                              check_compact_support_equivalence, check_convolution_bound,
                              check_mtilde, check_transference, check_wm_duality,
                              check_wpr_membership, drift_verdict, exit_status, run_suite,
                              summary_table, write_reports)
from orliczmod.verify.ensembles import (compact_members, level_grids, pair_ensemble,
                                        probe_ensemble, random_members)
from orliczmod.verify.suite import (CONVOLUTION_TRIPLES, check_seed, compact_chirp,
                                    compact_symbols, load_config, mtilde_choices, symbol_grid)
from orliczmod.young import Power

G = Grid(1, 128, 0.25)
LEVELS = level_grids(G, 2)


def window(g):
    return make_window("gaussian", g, 1.0)


def ensemble(g, seed=0):
    return probe_ensemble(g, 6, seed, 0.5, LEVELS[0].n)


def report(verdict, expected, trend=(1.0, 1.0)):
    return VerificationReport("c", 1, [], [1.0], [1.0], 1.0, list(trend), verdict, expected)


def explicit_T(f, phi):
    """``T_phi f`` by direct summation over the periodic grid."""
    g = f.grid
    n = g.n
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None] + n // 2) % n
    W = np.conj(phi.values[idx]) * f.values[None, :]
    V = g.dx / math.sqrt(2 * math.pi) * W @ np.exp(-1j * np.outer(g.x, g.xi))
    return np.exp(1j * np.outer(g.x, g.xi)) * V


def explicit_multiplier(m, g):
    """Matrix of ``m(D)`` built from the plain DFT sum."""
    E = np.exp(-1j * np.outer(g.xi, g.x))
    return E.conj().T @ np.diag(m.evaluate(g)) @ E / g.n


class TestReport:
    @pytest.mark.parametrize("trend,verdict", [
        ([1, 1.3, 1.7], "divergent"), ([1, 1.05], "bounded_stable"),
        ([1, 1.2], "inconclusive"), ([1, 2, 2.05], "bounded_stable"),
        ([1, math.inf], "divergent"), ([0, 0], "bounded_stable")])
    def test_drift_rule(self, trend, verdict):
        assert drift_verdict(trend) == verdict

    def test_pass_rules(self):
        assert report("inconclusive", "bounded_stable").passed
        assert not report("divergent", "bounded_stable").passed
        assert report("divergent", "divergent").passed
        assert not report("identity_fail", "identity_pass").passed
        assert report("divergent", None).passed

    def test_validation(self):
        with pytest.raises(ValueError):
            report("fine", None)
        with pytest.raises(ValueError):
            VerificationReport("c", 1, [], [], [], -1.0, [], "divergent")

    def test_exit_status(self):
        assert exit_status([]) == 0
        assert exit_status([report("bounded_stable", "bounded_stable")]) == 0
        assert exit_status([report("divergent", "bounded_stable")]) == 1

    def test_serialization(self, tmp_path):
        r = report("inconclusive", "bounded_stable", (1.0, math.inf))
        r.boundary_mass = 1e-3
        write_reports([r, r], tmp_path / "r.json", tmp_path / "r.csv")
        data = json.loads((tmp_path / "r.json").read_text())
        assert data[0]["refinement_trend"] == [1.0, "inf"] and data[0]["boundary_flag"]
        assert len((tmp_path / "r.csv").read_text().splitlines()) == 3
        assert "inconclusive" in summary_table([r])


class TestCommutation:
    @pytest.mark.parametrize("m", [mult.identity(), mult.homogeneous_chirp(0.5, 2),
                                   mult.rational_mihlin(), mult.sign_type()], ids=repr)
    def test_against_direct_summation(self, m):
        g = Grid(1, 32, 0.25)
        f = random_members(g, 1, 5)[0]
        phi = window(g)
        T = explicit_T(f, phi)
        M = explicit_multiplier(m, g)
        left = M @ T
        right = explicit_T(SampledField(g, M @ f.values), phi)
        scale = np.abs(T).max()
        assert np.abs(left - right).max() <= 1e-12 * scale
        np.testing.assert_allclose(stft_T(f, phi).values, T, atol=1e-14)
        assert check_commutation(m, f, phi) <= 1e-12

    def test_identity_is_exact(self):
        f = random_members(G, 1, 0)[0]
        assert check_commutation(mult.identity(), f, window(G)) <= 1e-13

    @given(st.integers(0, 10 ** 5), st.floats(-2, 2))
    @settings(max_examples=10, deadline=None)
    def test_chirp_property(self, seed, a):
        f = random_members(G, 1, seed)[0]
        assert check_commutation(mult.homogeneous_chirp(a, 2), f, window(G)) <= 1e-8


class TestTransference:
    def test_identity_constants(self):
        rep = check_transference(mult.identity(), Power(2), Power(2), Power(2), ensemble,
                                 window, LEVELS)
        np.testing.assert_allclose(rep.details["lebesgue_constant"], 1, rtol=1e-10)
        np.testing.assert_allclose(rep.details["modulation_constant"], 1, rtol=1e-10)

    def test_unimodular_chirp_is_isometric(self):
        rep = check_transference(mult.homogeneous_chirp(0.5, 2), Power(2), Power(2), Power(2),
                                 ensemble, window, LEVELS)
        np.testing.assert_allclose(rep.details["modulation_constant"], 1, rtol=1e-8)

    def test_rational_mihlin_stable(self):
        rep = check_transference(mult.rational_mihlin(), Power(4), Power(4), Power(2),
                                 ensemble, window, LEVELS)
        assert rep.verdict == "bounded_stable" and rep.passed

    def test_degenerate(self):
        with pytest.raises(ValueError):
            check_transference(mult.identity(), Power(2), Power(2), Power(2),
                               [make_signal("zero", G)])

    def test_scaling_invariance(self):
        plain = check_transference(mult.rational_mihlin(), Power(4), Power(4), Power(2),
                                   ensemble, window, LEVELS)
        scaled = check_transference(mult.rational_mihlin(), Power(4), Power(4), Power(2),
                                    lambda g: [f * 37.5 for f in ensemble(g)], window, LEVELS)
        np.testing.assert_allclose(scaled.refinement_trend, plain.refinement_trend, rtol=1e-9)
        assert scaled.empirical_constant == pytest.approx(plain.empirical_constant, rel=1e-9)


class TestConvolution:
    def test_gaussian_pair_closed_form(self):
        # f = g = pi^(-1/4) exp(-x^2/2):  f * g = exp(-x^2/4), whose M^{2,2} norm is its
        # L^2 norm (2 pi)^(1/4);  |V f| = exp(-(x^2 + xi^2)/4) / sqrt(2 pi) gives
        # ||f||_{M^{1,inf}} = sup_xi sqrt(2) exp(-xi^2/4) = sqrt(2)
        g = Grid(1, 256, 0.125)
        f = make_signal("gaussian", g, 1.0)
        rep = check_convolution_bound(Power(2), Power(2), 1.0, [(f, f)], window)
        assert rep.empirical_constant == pytest.approx((2 * math.pi) ** 0.25 / math.sqrt(2),
                                                       rel=1e-9)

    def test_zero_factor(self):
        f = make_signal("gaussian", G)
        rep = check_convolution_bound(Power(2), Power(2), 1.0, [(make_signal("zero", G), f)],
                                      window)
        assert rep.lhs == [0.0]

    def test_spike_reproduces_signal(self):
        spike = np.zeros(G.shape)
        spike[G.n // 2] = 1 / G.dx
        f = random_members(G, 1, 2)[0]
        rep = check_convolution_bound(Power(2), Power(2), 1.0, [(SampledField(G, spike), f)],
                                      window)
        assert 0 < rep.empirical_constant < math.inf
        assert rep.lhs[0] == pytest.approx(1.0, rel=1e-10)  # ||f||_{M^{2,2}} = ||f||_2 = 1

    def test_order_precondition(self):
        with pytest.raises(ValueError, match="order"):
            check_convolution_bound(Power(0.5), Power(1), 1.0, [], window)

    @pytest.mark.parametrize("label,phi,psi,r", CONVOLUTION_TRIPLES, ids=lambda v: str(v))
    def test_disjoint_ensembles_agree(self, label, phi, psi, r):
        def pairs(seed):
            return lambda g: pair_ensemble(g, 16, seed, 0.5, LEVELS[0].n)

        a = check_convolution_bound(phi, psi, r, pairs(11), window, LEVELS)
        b = check_convolution_bound(phi, psi, r, pairs(29), window, LEVELS)
        assert a.verdict == "bounded_stable" and b.verdict == "bounded_stable"
        assert abs(a.empirical_constant / b.empirical_constant - 1) < 0.10


class TestSymbolIdentities:
    def test_wm_duality_examples(self):
        pg = symbol_grid()
        phi = window(pg)
        eta = pg.dual().x
        bump = SampledField(pg.dual(), np.exp(-eta ** 2))
        assert check_wm_duality(bump, phi, 1.0) <= 1e-6
        assert check_wm_duality(bump.with_values(0 * eta), phi, 1.0) == 0
        m1 = dict(compact_symbols(pg))["cutoff_piece_1"]
        for r in (0.5, 1.0):
            assert check_wm_duality(m1, phi, r) <= 1e-5

    def test_mtilde_examples(self):
        pg = symbol_grid()
        sg = pg.dual()
        step = 2 * math.pi / (sg.n * sg.dx)
        m = dict(compact_symbols(pg))["cutoff_piece_1"]
        phi = window(sg)
        # same quantity through two different summation paths: rounding only
        assert check_mtilde(m, phi, 1.0) <= 1e-12
        assert check_mtilde(m, phi, 1.0, beta_fn=lambda x: step + 0 * x) <= 1e-10
        for label, a_fn, b_fn in mtilde_choices(step):
            assert check_mtilde(m, phi, 1.0, a_fn, b_fn) <= 1e-10, label

    def test_compact_support(self):
        def fields(g):
            return compact_members(g, 4, 3, reference_n=LEVELS[0].n)

        lo, hi, rep = check_compact_support_equivalence(fields, None, 1, 1, 2, LEVELS, window)
        assert lo == pytest.approx(1, rel=1e-14) and hi == pytest.approx(1, rel=1e-14)
        lo, hi, rep = check_compact_support_equivalence(fields, None, 1, 2, 2, LEVELS, window)
        assert 0 < lo <= hi < math.inf and rep.verdict == "bounded_stable"
        f = fields(G)
        _, hi_scaled, _ = check_compact_support_equivalence([x * 1e3 for x in f], window(G),
                                                            1, 2, 2)
        _, hi_plain, _ = check_compact_support_equivalence(f, window(G), 1, 2, 2)
        assert hi_scaled == pytest.approx(hi_plain, rel=1e-10)

    def test_compact_support_boundary_guard(self):
        with pytest.raises(ValueError, match="boundary"):
            check_compact_support_equivalence([make_signal("gaussian", G, 4.0)], window(G),
                                              1, 2, 2)


class TestChirpCovariance:
    g = Grid(1, 256, 0.125)

    def test_zero_chirp(self):
        f = make_signal("gaussian", self.g)
        B, dev, info = check_chirp_covariance(0.0, f, window(self.g))
        assert abs(B) * max(map(abs, info["slice_xi"])) <= self.g.dx
        assert dev <= 1e-10

    @pytest.mark.parametrize("a", [0.1, -0.1])
    def test_shift_is_twice_a(self, a):
        f = make_signal("gaussian", self.g)
        B, dev, info = check_chirp_covariance(a, f, window(self.g))
        assert abs(B - 2 * a) * max(map(abs, info["slice_xi"])) <= self.g.dx
        assert dev <= 1e-6

    def test_two_dimensional_not_supported(self):
        g = Grid(2, 8, 1.0)
        with pytest.raises(NotImplementedError):
            check_chirp_covariance([[0.1, 0], [0, 0.1]], make_signal("gaussian", g), window(g))


class TestWpr:
    def test_cutoff_alone_is_stable(self):
        def cutoff(pg):
            return SampledField(pg.dual(), mult.Cutoff()(pg.dual().x))

        grids = [Grid(1, 128 * 2 ** k, 2 * math.pi / 16) for k in range(3)]
        rep = check_wpr_membership(cutoff, (math.inf,), 1.0, grids, window)
        assert rep.verdict == "bounded_stable"

    def test_compact_chirp_series(self):
        grids = [Grid(1, 128 * 2 ** k, 2 * math.pi / 16) for k in range(3)]
        rep = check_wpr_membership(compact_chirp(1.5), (1.0, math.inf), 1.0, grids, window,
                                   series=lambda g: mult.taylor_terms(g, 30))
        assert rep.verdict == "bounded_stable"
        sums = rep.details["series_partial_sums"]
        assert np.all(np.diff(sums) >= 0) and rep.details["series_tail_change"] < 1e-6


class TestSuite:
    def test_empty_check_list(self):
        assert run_suite({"checks": []}) == []

    @pytest.mark.parametrize("bad", [{"nope": 1}, {"grid": {"m": 3}}, {"checks": ["x"]},
                                     {"levels": 1}])
    def test_config_errors(self, bad):
        with pytest.raises(ValueError):
            load_config(bad)

    def test_seed_is_order_independent(self):
        assert check_seed("moyal", 7) == check_seed("moyal", 7) != check_seed("mihlin", 7)

    def test_reproducible(self):
        cfg = {"checks": ["moyal", "exponent_gate"], "seed": 7,
               "grid": {"d": 1, "n": 128, "dx": 0.25}}
        a = [r.to_dict() for r in run_suite(cfg)]
        b = [r.to_dict() for r in run_suite(cfg)]
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        assert all(r["passed"] for r in a)

    def test_ensembles_are_refinement_consistent(self):
        coarse, fine = LEVELS
        a = random_members(coarse, 2, 4, reference_n=coarse.n)
        b = random_members(fine, 2, 4, reference_n=coarse.n)
        for x, y in zip(a, b):
            np.testing.assert_allclose(y.values[::2], x.values, atol=1e-12)
