import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from orliczmod.field import Grid, SampledField, random_bandlimited
from orliczmod.multiplier import (Cutoff, apply_along, apply_multiplier, build_cutoff_pieces,
                                  classify_growth, dyadic_pieces, envelope_G, hormander_functional,
                                  hormander_profile, homogeneous_chirp, identity, mihlin_functional,
                                  mihlin_study, multi_indices, parse_symbol, quadratic_chirp,
                                  rational_mihlin, sign_type, symbol_from_config, tabulated,
                                  taylor_tail_bound, taylor_terms)

G = Grid(1, 256, 0.125)


class TestSymbols:
    def test_chirp_values(self):
        m = homogeneous_chirp(0.7, 2.0)
        np.testing.assert_allclose(m.evaluate(G), np.exp(0.7j * G.xi ** 2), atol=1e-14)
        assert not m.singular_at_origin

    def test_fractional_chirp_is_singular(self):
        m = homogeneous_chirp(1.0, 1.5)
        assert m.singular_at_origin
        d1 = m.partial((1,), G)
        assert d1[G.n // 2] == 0
        xi = G.xi[G.n // 2 + 3]
        expected = 1.5j * abs(xi) ** 0.5 * np.sign(xi) * np.exp(1j * abs(xi) ** 1.5)
        assert d1[G.n // 2 + 3] == pytest.approx(expected, rel=1e-13)

    def test_sign_type_two_dimensional(self):
        g = Grid(2, 16, 0.5)
        X, Y = g.frequencies()
        with np.errstate(all="ignore"):
            expected = np.where((X == 0) & (Y == 0), 0, Y / np.hypot(X, Y))
        np.testing.assert_allclose(sign_type(1, 2).evaluate(g), expected, atol=1e-15)

    def test_tabulated_derivative_against_analytic(self):
        g = Grid(1, 512, 0.05)
        xi = g.xi
        m = tabulated(np.exp(-xi ** 2), g)
        # Richardson-corrected central difference is fourth order in the step
        np.testing.assert_allclose(m.partial((1,), g), -2 * xi * np.exp(-xi ** 2),
                                   atol=50 * g.dxi ** 4)

    def test_tabulated_rejects_other_grid(self):
        m = tabulated(np.ones(G.shape), G)
        with pytest.raises(ValueError):
            m.evaluate(G.refined())
        with pytest.raises(ValueError):
            tabulated(np.ones(5), G)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            rational_mihlin(0, 2).evaluate(G)
        with pytest.raises(ValueError):
            rational_mihlin().partial((1, 0), G)

    def test_quadratic_requires_symmetric(self):
        with pytest.raises(ValueError):
            quadratic_chirp([[0, 1], [0, 0]])


class TestConfig:
    def test_parse(self):
        m = parse_symbol("homogeneous_chirp:2,1.5")
        assert m.params == {"c": 2.0, "alpha": 1.5}
        assert parse_symbol("rational_mihlin").name == "rational_mihlin"
        assert parse_symbol("quadratic_chirp:1,0,0,2", d=2).params["A"] == [[1, 0], [0, 2]]

    @pytest.mark.parametrize("text", ["bogus", "homogeneous_chirp", "homogeneous_chirp:1,2,3",
                                      "quadratic_chirp:1,2"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            parse_symbol(text)

    def test_missing_parameter(self):
        with pytest.raises(ValueError, match="missing"):
            symbol_from_config({"symbol": "homogeneous_chirp", "c": 1})


class TestApply:
    def test_gaussian_under_quadratic_chirp(self):
        # exp(i a xi^2) applied to exp(-x^2/2) is (1 - 2ia)^(-1/2) exp(-x^2 / (2 (1 - 2ia)))
        a = 0.3
        out = apply_multiplier(quadratic_chirp(a), SampledField(G, np.exp(-G.x ** 2 / 2)))
        z = 1 - 2j * a
        np.testing.assert_allclose(out.values, np.exp(-G.x ** 2 / (2 * z)) / np.sqrt(z),
                                   atol=1e-12)

    def test_identity(self):
        f = random_bandlimited(G, 0.5, 0)
        np.testing.assert_allclose(apply_multiplier(identity(), f).values, f.values, atol=1e-14)

    def test_apply_along_matches_apply(self):
        f = random_bandlimited(G, 0.5, 1)
        m = rational_mihlin()
        stacked = np.stack([f.values, 2 * f.values], axis=1)
        out = apply_along(m, stacked, G, axes=(0,))
        np.testing.assert_allclose(out[:, 0], apply_multiplier(m, f).values, atol=1e-14)
        np.testing.assert_allclose(out[:, 1], 2 * out[:, 0], atol=1e-14)

    def test_non_finite_symbol_rejected(self):
        bad = tabulated(np.full(G.shape, np.inf), G)
        with pytest.raises(ValueError):
            apply_multiplier(bad, random_bandlimited(G, 0.5, 0))


class TestMihlin:
    def test_multi_indices(self):
        assert multi_indices(2, 2) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]

    def test_chirp_exact_value(self):
        # |xi| |2 xi exp(i xi^2)| = 2 xi^2, largest at the Nyquist frequency pi / dx
        vals = mihlin_functional(homogeneous_chirp(1.0, 2.0), G)
        assert vals[(1,)] == pytest.approx(2 * (math.pi / G.dx) ** 2, rel=1e-13)
        assert vals[(0,)] == pytest.approx(1, rel=1e-14)

    def test_rational_against_closed_form_scan(self):
        xi = G.xi[G.xi != 0]
        expected = np.max(2 * xi ** 2 / (1 + xi ** 2) ** 2)
        assert mihlin_functional(rational_mihlin(), G)[(1,)] == pytest.approx(expected, rel=1e-13)
        assert expected == pytest.approx(0.5, abs=1e-3)

    def test_study_verdicts(self):
        chirp = mihlin_study(lambda g: homogeneous_chirp(1.0, 2.0), G, doublings=2)
        values, verdict = chirp[(1,)]
        assert verdict == "divergent"
        assert values[1] / values[0] == pytest.approx(4, rel=1e-12)
        assert mihlin_study(lambda g: rational_mihlin(), G, doublings=2)[(1,)][1] == "bounded"

    @pytest.mark.parametrize("values,verdict", [([1, 2, 4], "divergent"), ([1, 1.01, 1.02], "bounded"),
                                                ([1, 2, 2.1], "bounded"), ([1, 1.5, 1.2], "inconclusive"),
                                                ([0, 0, 0], "bounded"), ([1], "inconclusive")])
    def test_classify(self, values, verdict):
        assert classify_growth(values) == verdict


class TestHormander:
    def test_constant_symbol_1d(self):
        # R^-1 |{R < |xi| < 2R}| = 2
        R = [2 * G.dxi, 1.0, 3.7]
        np.testing.assert_allclose(hormander_profile(identity(), G, R, 0)[(0,)], 2, rtol=1e-12)

    def test_constant_symbol_2d(self):
        g = Grid(2, 64, 0.25)
        vals = hormander_profile(identity(2), g, [1.5, 3.0], 0)[(0, 0)]
        np.testing.assert_allclose(vals, 3 * math.pi, rtol=2e-2)

    def test_rational_against_quadrature(self):
        g = Grid(1, 4096, 0.125)  # long box, frequency spacing ~0.012
        R = 0.8
        d1 = lambda s: 2 * s / (1 + s ** 2) ** 2
        exact = R * 2 * quad(lambda s: d1(s) ** 2, R, 2 * R)[0]
        got = hormander_profile(rational_mihlin(), g, [R], 1)[(1,)][0]
        assert got == pytest.approx(exact, rel=1e-3)

    def test_functional_is_max(self):
        R = [0.5, 1.0, 2.0]
        prof = hormander_profile(rational_mihlin(), G, R)
        func = hormander_functional(rational_mihlin(), G, R)
        assert func[(1,)] == prof[(1,)].max()

    def test_out_of_band(self):
        with pytest.raises(ValueError):
            hormander_profile(identity(), G, [G.dxi])
        with pytest.raises(ValueError):
            hormander_profile(identity(), G, [G.extent])


class TestCutoff:
    def test_values(self):
        chi = Cutoff()
        np.testing.assert_array_equal(chi(np.array([0, 0.5, 1, 2, 3, -5])), [1, 1, 1, 0, 0, 0])
        assert chi(1.5) == pytest.approx(0.5, abs=1e-15)

    @given(st.floats(0, 3), st.floats(0, 3))
    @settings(max_examples=50, deadline=None)
    def test_monotone_and_bounded(self, a, b):
        chi = Cutoff()
        lo, hi = sorted((a, b))
        assert 0 <= chi(hi) <= chi(lo) <= 1

    def test_pieces_sum_to_phase(self):
        m1, m2, chi = build_cutoff_pieces(G, 1.0, 1.5)
        phase = np.exp(1j * np.abs(G.xi) ** 1.5)
        np.testing.assert_allclose(m1.evaluate(G) + m2.evaluate(G), phase, atol=1e-15)
        np.testing.assert_allclose(np.abs(m1.evaluate(G)), chi(G.xi), atol=1e-15)

    def test_alpha_range(self):
        with pytest.raises(ValueError):
            build_cutoff_pieces(G, 1.0, 2.5)

    @pytest.mark.parametrize("J", [1, 3, 6])
    def test_dyadic_telescoping(self, J):
        chi = Cutoff()
        total = np.sum(dyadic_pieces(chi, J, G), axis=0)
        np.testing.assert_allclose(total, chi(G.xi) - chi(2.0 ** J * G.xi), atol=1e-14)
        assert total[G.n // 2] == 0
        with pytest.raises(ValueError):
            dyadic_pieces(chi, 0, G)


class TestTaylor:
    def test_series_reconstructs_localized_phase(self):
        K = 30
        terms = taylor_terms(G, K)
        series = sum(1j ** k / math.factorial(k) * t for k, t in enumerate(terms))
        target = np.exp(1j * np.abs(G.xi) ** 1.5) * Cutoff()(G.xi)
        np.testing.assert_allclose(series, target, atol=1e-12)

    def test_short_series_rejected(self):
        with pytest.raises(ValueError, match="tail bound"):
            taylor_terms(G, 3)

    def test_tail_bound(self):
        assert taylor_tail_bound(2.0, 3) == pytest.approx(16 / 24)
        assert taylor_tail_bound(0.0, 3) == 0


class TestEnvelope:
    def test_values(self):
        g = Grid(1, 8, 1.0)
        np.testing.assert_allclose(envelope_G(2, g), [1 / 16, 1 / 9, 1 / 4, 1, 1, 1, 1 / 4, 1 / 9])
        with pytest.raises(ValueError):
            envelope_G(0, g)

    @pytest.mark.parametrize("L", [32.0, 64.0])
    def test_half_power_integral(self, L):
        # int G^(1/2) over [-L/2, L/2] with N = 3: 2 + 4 (1 - (L/2)^(-1/2))
        g = Grid(1, 2 ** 16, L / 2 ** 16)
        got = np.sum(envelope_G(3, g) ** 0.5) * g.dx
        assert got == pytest.approx(2 + 4 * (1 - (L / 2) ** -0.5), rel=1e-3)

    def test_two_dimensional_is_max_of_axes(self):
        g = Grid(2, 8, 1.0)
        X, Y = g.positions()
        expected = 1 / np.maximum(np.maximum(np.abs(X), np.abs(Y)) ** 3, 1)
        np.testing.assert_allclose(envelope_G(3, g), expected)
