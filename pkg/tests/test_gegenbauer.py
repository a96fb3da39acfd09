#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_gegenbauer
---------------

Tests for `gegenpypes.gegenbauer` module.
"""

import os
import math
import unittest
from fractions import Fraction

import numpy as np

from gegenpypes.errors import InvalidModel, DuplicateFrequency, SingularFrequency
from gegenpypes.gegenbauer import GegenbauerModel, AcvTable, psd, \
    spectral_integral, band_pass_variance, leaf_variances, autocovariance, \
    acv_asymptote, covariance_matrix, CACHE_SIZE
from gegenpypes.bestbasis import best_basis_1factor
from gegenpypes.wpt import full_tree, wavelet_tree, random_tree

SLOW = os.getenv('GEGENPYPES_SLOW', '0') == '1'

WHITE = GegenbauerModel([])
PROCESS_1 = GegenbauerModel([(0.4, Fraction(1, 12))])
PROCESS_4 = GegenbauerModel([(0.3, 1 / 40.0), (0.3, 0.2)])


def local_maxima(values):
    """Indexes of the strict local maxima of a sequence."""
    return [
        i for i in range(1, len(values) - 1)
        if values[i] > values[i - 1] and values[i] >= values[i + 1]
        ]


class TestGegenbauerModel(unittest.TestCase):

    def test_fields(self):
        model = GegenbauerModel([(0.3, '1/40'), (0.3, 0.2)], sigma2=1.0)
        self.assertEqual(model.k, 2)
        self.assertEqual(model.ds, (0.3, 0.3))
        self.assertEqual(model.nus, (1 / 40.0, 0.2))
        self.assertAlmostEqual(model.etas[1], math.cos(0.4 * math.pi), places=15)
        self.assertEqual(model.sigma2, 1.0)

    def test_defaults(self):
        self.assertEqual(WHITE.k, 0)
        self.assertAlmostEqual(WHITE.sigma2, 2.0 * math.pi, places=15)

    def test_singular_exponent(self):
        model = GegenbauerModel([(0.2, 0.0), (0.3, 0.25)])
        self.assertAlmostEqual(model.singular_exponent(0), 0.8, places=15)
        self.assertAlmostEqual(model.singular_exponent(1), 0.6, places=15)

    def test_invalid(self):
        for factors, sigma2 in (
                ([(0.3, 0.0)], 1.0),        # edge frequency needs d < 1/4
                ([(0.3, 0.5)], 1.0),
                ([(0.5, 0.2)], 1.0),
                ([(0.0, 0.2)], 1.0),
                ([(-0.1, 0.2)], 1.0),
                ([(0.2, 0.6)], 1.0),
                ([(0.2, -0.1)], 1.0),
                ([(0.2, 0.1)], 0.0),
                ([], -1.0),
                ):
            with self.assertRaises(InvalidModel, msg=factors):
                GegenbauerModel(factors, sigma2)

    def test_duplicate(self):
        with self.assertRaises(DuplicateFrequency):
            GegenbauerModel([(0.1, 0.2), (0.2, '1/5')])

    def test_equality(self):
        self.assertEqual(GegenbauerModel([(0.4, '1/12')]), PROCESS_1)
        self.assertNotEqual(PROCESS_1, PROCESS_1.scaled(2.0))
        self.assertEqual(len({PROCESS_1, GegenbauerModel([(0.4, Fraction(1, 12))])}), 1)


class TestPsd(unittest.TestCase):

    def test_white_noise(self):
        model = GegenbauerModel([], sigma2=3.0)
        for lam in (0.0, 0.1, 0.5):
            self.assertAlmostEqual(psd(model, lam), 3.0 / (2.0 * math.pi), places=14)

    def test_hand_value(self):
        # 4 (cos(pi/2) - cos(pi/6))^2 = 3
        self.assertAlmostEqual(psd(PROCESS_1, 0.25), 3.0 ** -0.4, places=12)

    def test_product_of_factors(self):
        lam = 0.33
        value = psd(PROCESS_4, lam)
        expected = 1.0
        for d, nu in PROCESS_4.factors:
            expected *= (4.0 * (math.cos(2 * math.pi * lam) - math.cos(2 * math.pi * nu)) ** 2) ** -d
        self.assertAlmostEqual(value / expected, 1.0, places=12)

    def test_diverges(self):
        nu = 1 / 12.0
        values = [psd(PROCESS_1, nu + offset) for offset in (1e-2, 1e-4, 1e-6)]
        self.assertLess(values[0], values[1])
        self.assertLess(values[1], values[2])

    def test_positive(self):
        for lam in np.linspace(0.0, 0.5, 101):
            if abs(lam - 1 / 12.0) > 1e-9:
                self.assertGreater(psd(PROCESS_1, lam), 0.0)

    def test_singular_frequency(self):
        with self.assertRaises(SingularFrequency):
            psd(PROCESS_1, 1 / 12.0)


class TestBandPassVariance(unittest.TestCase):

    def test_white_noise(self):
        for j, p in ((0, 0), (1, 1), (3, 5), (6, 63)):
            self.assertAlmostEqual(band_pass_variance(WHITE, j, p), 2.0 ** -j, places=12)

    def test_scales_with_sigma2(self):
        scaled = PROCESS_1.scaled(3.0)
        self.assertAlmostEqual(
            band_pass_variance(scaled, 3, 1) / band_pass_variance(PROCESS_1, 3, 1), 3.0, places=7)

    def test_additivity(self):
        for model in (PROCESS_1, PROCESS_4, GegenbauerModel([(0.2, 0.0)]), GegenbauerModel([(0.45, 0.375)])):
            for j, p in ((0, 0), (1, 0), (2, 0), (3, 1), (4, 6), (5, 3)):
                parent = band_pass_variance(model, j, p)
                children = band_pass_variance(model, j + 1, 2 * p) + band_pass_variance(model, j + 1, 2 * p + 1)
                self.assertAlmostEqual(children / parent, 1.0, delta=1e-6, msg=(model, j, p))

    def test_leaves_sum_to_variance(self):
        gamma0 = autocovariance(PROCESS_1, 0).gamma[0]
        for tree in (best_basis_1factor(Fraction(1, 12), 6), full_tree(5), wavelet_tree(7)):
            total = sum(beta2 for beta2, sigma2 in leaf_variances(PROCESS_1, tree).values())
            self.assertAlmostEqual(total / gamma0, 1.0, delta=1e-4, msg=tree)

    def test_random_trees_sum_to_variance(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            d = rng.uniform(0.05, 0.45)
            nu = rng.uniform(0.01, 0.49)
            model = GegenbauerModel([(d, nu)])
            tree = random_tree(6, rng)
            gamma0 = autocovariance(model, 0).gamma[0]
            total = sum(beta2 for beta2, sigma2 in leaf_variances(model, tree).values())
            self.assertAlmostEqual(total / gamma0, 1.0, delta=1e-4, msg=(model, tree))

    def test_coefficient_variance(self):
        tree = wavelet_tree(4)
        for leaf, (beta2, sigma2) in leaf_variances(PROCESS_1, tree).items():
            self.assertAlmostEqual(sigma2, 2 ** leaf.j * beta2, places=12)

    def test_bad_index(self):
        with self.assertRaises(ValueError):
            band_pass_variance(WHITE, 2, 4)

    def test_singular_endpoint(self):
        # a band whose edge is the singular frequency
        model = GegenbauerModel([(0.3, 0.125)])
        inner = spectral_integral(model, 0.0, 0.125) + spectral_integral(model, 0.125, 0.25)
        self.assertAlmostEqual(inner / spectral_integral(model, 0.0, 0.25), 1.0, delta=1e-7)


class TestAutocovariance(unittest.TestCase):

    def test_white_noise(self):
        acv = autocovariance(WHITE, 8)
        self.assertAlmostEqual(acv.gamma[0], 1.0, delta=1e-10)
        np.testing.assert_allclose(acv.gamma[1:], 0.0, atol=1e-10)

    def test_unit_innovation_variance(self):
        # the spectral density of white noise is sigma2 / 2 pi
        acv = autocovariance(GegenbauerModel([], sigma2=1.0), 3)
        self.assertAlmostEqual(acv.gamma[0], 1.0 / (2.0 * math.pi), delta=1e-10)
        np.testing.assert_allclose(acv.gamma[1:], 0.0, atol=1e-10)

    def test_table(self):
        acv = autocovariance(PROCESS_1, 10)
        self.assertIsInstance(acv, AcvTable)
        self.assertEqual(acv.h_max, 10)
        self.assertEqual(acv.rho[0], 1.0)
        self.assertEqual(acv[-3], acv[3])
        self.assertTrue(np.all(np.abs(acv.rho) <= 1.0))
        with self.assertRaises(ValueError):
            acv.gamma[0] = 0.0

    def test_sign_oscillation(self):
        rho = autocovariance(PROCESS_1, 78).rho
        for m in range(2, 6):
            self.assertGreater(rho[12 * m], 0.0, msg=12 * m)
            self.assertLess(rho[12 * m + 6], 0.0, msg=12 * m + 6)

    def test_negative_lag(self):
        with self.assertRaises(ValueError):
            autocovariance(WHITE, -1)

    @unittest.skipUnless(SLOW, "slow")
    def test_envelope_slope(self):
        for d in (0.2, 0.3, 0.4):
            rho = autocovariance(GegenbauerModel([(d, Fraction(1, 12))]), 504).rho
            lags = np.arange(108, 505, 12)
            slope, _ = np.polyfit(np.log(lags), np.log(rho[lags]), 1)
            self.assertAlmostEqual(slope, 2 * d - 1, delta=0.1, msg=d)

    @unittest.skipUnless(SLOW, "slow")
    def test_envelope_ratio(self):
        rho = autocovariance(GegenbauerModel([(0.2, Fraction(1, 12))]), 410).rho
        peaks = local_maxima(np.abs(rho))
        near = max(peaks, key=lambda h: -abs(h - 200))
        far = max(peaks, key=lambda h: -abs(h - 400))
        ratio = abs(rho[far]) / abs(rho[near])
        self.assertAlmostEqual(ratio / (far / float(near)) ** -0.6, 1.0, delta=0.15)


class GridSum(object):

    """
    Midpoint sums of the single factor density on a 2^22 point grid over
    [0, 1/2].  The cells within WINDOW of the singular frequency are left
    out of the sum and the local power law is integrated in closed form
    over them instead.
    """

    CELLS = 2 ** 22
    WINDOW = 64

    def __init__(self, d, nu, sigma2=2.0 * math.pi):
        self.d = d
        self.nu = nu
        self.width = 0.5 / self.CELLS
        self.lam = (np.arange(self.CELLS) + 0.5) * self.width

        c = int(nu / self.width)
        self.window = (c - self.WINDOW, c + self.WINDOW + 1)
        self.density = sigma2 / (2.0 * math.pi) \
            * (4.0 * (np.cos(2.0 * math.pi * self.lam) - math.cos(2.0 * math.pi * nu)) ** 2) ** -d
        self.density[self.window[0]:self.window[1]] = 0.0

        # f ~ C |lam - nu|^(-2d) next to nu
        alpha = 2.0 * d
        scale = sigma2 / (2.0 * math.pi) * (16.0 * math.pi ** 2 * math.sin(2.0 * math.pi * nu) ** 2) ** -d
        a, b = self.window[0] * self.width, self.window[1] * self.width
        self.local = scale * ((nu - a) ** (1.0 - alpha) + (b - nu) ** (1.0 - alpha)) / (1.0 - alpha)

    def gamma(self, h):
        total = self.width * np.dot(self.density, np.cos(2.0 * math.pi * h * self.lam))
        return 2.0 * (total + self.local * math.cos(2.0 * math.pi * h * self.nu))

    def beta2(self, j, p):
        cells = self.CELLS >> j
        lo, hi = p * cells, (p + 1) * cells
        total = self.width * np.sum(self.density[lo:hi])
        if lo <= self.window[0] and self.window[1] <= hi:
            total += self.local
        return 2.0 * total


class TestGridSum(unittest.TestCase):

    def test_autocovariance(self):
        for d in (0.2, 0.35):
            grid = GridSum(d, 1.0 / 12.0)
            acv = autocovariance(GegenbauerModel([(d, 1.0 / 12.0)]), 30)
            for h in (0, 1, 5, 6, 12, 30):
                self.assertAlmostEqual(acv.gamma[h], grid.gamma(h), delta=1e-4 * acv.gamma[0], msg=(d, h))

    def test_band_pass_variance(self):
        grid = GridSum(0.3, 1.0 / 12.0)
        model = GegenbauerModel([(0.3, 1.0 / 12.0)])
        for j, p in ((0, 0), (2, 0), (3, 1), (6, 10), (6, 11), (8, 42), (8, 43)):
            expected = grid.beta2(j, p)
            self.assertAlmostEqual(band_pass_variance(model, j, p) / expected, 1.0, delta=1e-4, msg=(j, p))

    def test_cache_bound(self):
        self.assertEqual(band_pass_variance.cache_info().maxsize, CACHE_SIZE)


class TestAsymptote(unittest.TestCase):

    def test_values(self):
        self.assertAlmostEqual(acv_asymptote(0.4, 0.1, 1), math.cos(0.2 * math.pi), places=15)
        self.assertAlmostEqual(acv_asymptote(0.25, 0.0, 16), 0.25, places=15)
        self.assertAlmostEqual(acv_asymptote(0.4, 1 / 12.0, 12), 12 ** -0.2, places=12)


class TestCovarianceMatrix(unittest.TestCase):

    def test_white_noise(self):
        np.testing.assert_allclose(covariance_matrix(WHITE, 6), np.eye(6), atol=1e-10)

    def test_toeplitz(self):
        model = GegenbauerModel([(0.2, Fraction(1, 12))])
        gamma = autocovariance(model, 1).gamma
        np.testing.assert_array_equal(
            covariance_matrix(model, 2),
            [[gamma[0], gamma[1]], [gamma[1], gamma[0]]],
            )

    def test_semidefinite(self):
        gamma = covariance_matrix(PROCESS_4, 64)
        np.testing.assert_array_equal(gamma, gamma.T)
        self.assertGreater(np.linalg.eigvalsh(gamma)[0], -1e-8 * gamma[0, 0])

    def test_invalid_size(self):
        with self.assertRaises(ValueError):
            covariance_matrix(WHITE, 0)

if __name__ == '__main__':
    unittest.main()
