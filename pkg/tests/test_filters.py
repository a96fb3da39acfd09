#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_filters
------------

Tests for `gegenpypes.filters` module.
"""

import math
import unittest

import numpy as np

from gegenpypes import filters
from gegenpypes.errors import UnsupportedFamilyOrder, EXIT_VALIDATION
from gegenpypes.filters import make_filter, squared_gain, parse_filter_name, \
    filter_table, DAUBECHIES, SYMMLET, COIFLET, BATTLE_LEMARIE, SUPPORTED_ORDERS


def on_grid(coeffs, first, lo, hi):
    """Place coefficients starting at index first on the index range lo..hi."""
    grid = np.zeros(hi - lo + 1)
    grid[first - lo:first - lo + len(coeffs)] = coeffs
    return grid


def shifted_products(a, b, shift):
    """sum_n a(n) b(n - shift) for sequences on the same index range."""
    if shift >= 0:
        return float(np.dot(a[shift:], b[:len(b) - shift]))
    return float(np.dot(a[:shift], b[-shift:]))


def all_filters():
    for family in (DAUBECHIES, SYMMLET, COIFLET, BATTLE_LEMARIE):
        for q in SUPPORTED_ORDERS[family]:
            yield make_filter(family, q)


class TestQmfPair(unittest.TestCase):

    def test_haar(self):
        qmf = make_filter(DAUBECHIES, 1)
        np.testing.assert_allclose(qmf.lowpass, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
        np.testing.assert_allclose(qmf.highpass, [1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-15)
        self.assertEqual(qmf.name, 'db1')
        self.assertEqual(qmf.n_star, 1)

    def test_sums(self):
        for qmf in all_filters():
            self.assertAlmostEqual(np.sum(qmf.lowpass), math.sqrt(2), delta=1e-12, msg=qmf.name)
            self.assertAlmostEqual(np.sum(qmf.highpass), 0.0, delta=1e-12, msg=qmf.name)
            self.assertAlmostEqual(np.sum(qmf.lowpass[::2]), np.sum(qmf.lowpass[1::2]), delta=1e-12, msg=qmf.name)

    def test_orthonormal_shifts(self):
        for qmf in all_filters():
            tol = 1e-10 if qmf.compact else 1e-6
            lo = min(qmf.support_lo, qmf.highpass_lo)
            hi = max(qmf.support_hi, qmf.highpass_hi)
            h = on_grid(qmf.lowpass, qmf.support_lo, lo, hi)
            g = on_grid(qmf.highpass, qmf.highpass_lo, lo, hi)

            for m in range(-(hi - lo) // 2, (hi - lo) // 2 + 1):
                expected = 1.0 if m == 0 else 0.0
                self.assertAlmostEqual(shifted_products(h, h, 2 * m), expected, delta=tol, msg=qmf.name)
                self.assertAlmostEqual(shifted_products(g, g, 2 * m), expected, delta=tol, msg=qmf.name)
                self.assertAlmostEqual(shifted_products(h, g, 2 * m), 0.0, delta=tol, msg=qmf.name)

    def test_conjugate_mirror(self):
        qmf = make_filter(SYMMLET, 6)
        for n in range(qmf.highpass_lo, qmf.highpass_hi + 1):
            g = qmf.highpass[n - qmf.highpass_lo]
            h = qmf.lowpass[1 - n - qmf.support_lo]
            self.assertEqual(g, (-1) ** n * h)

    def test_support_length(self):
        for qmf in all_filters():
            self.assertEqual(qmf.support_hi - qmf.support_lo + 1, qmf.length)
            self.assertEqual(len(qmf.highpass), qmf.length)

    def test_daubechies_moments(self):
        qmf = make_filter(DAUBECHIES, 10)
        self.assertEqual(qmf.length, 20)

        n = np.arange(qmf.support_lo, qmf.support_hi + 1)
        sign = np.where(n % 2 == 0, 1.0, -1.0)
        for r in range(10):
            terms = sign * n.astype(float) ** r * qmf.lowpass
            self.assertLess(abs(np.sum(terms)), 1e-9 * max(1.0, np.sum(np.abs(terms))), msg=r)

    def test_coiflet_names(self):
        qmf = make_filter(COIFLET, 10)
        self.assertEqual(qmf.name, 'coif5')
        self.assertEqual(qmf.length, 30)
        self.assertEqual(parse_filter_name('coif5'), (COIFLET, 10))
        self.assertEqual(parse_filter_name('BL6'), (BATTLE_LEMARIE, 6))

    def test_battle_lemarie(self):
        qmf = make_filter(BATTLE_LEMARIE, 6)
        self.assertFalse(qmf.compact)
        self.assertEqual(qmf.length % 2, 1)
        self.assertEqual(qmf.support_lo, -qmf.support_hi)
        np.testing.assert_allclose(qmf.lowpass, qmf.lowpass[::-1], atol=1e-12)
        self.assertGreater(qmf.length, 20)

        # the outermost coefficients sit at the truncation cutoff
        self.assertGreaterEqual(abs(qmf.lowpass[0]), 0.5 * filters.BL_CUTOFF)
        self.assertLess(abs(qmf.lowpass[0]), 1e-6)

    def test_battle_lemarie_lengths(self):
        # the tails are cut at BL_CUTOFF, the spline order sets the decay
        for q, length in ((2, 55), (4, 113), (6, 167)):
            self.assertEqual(make_filter(BATTLE_LEMARIE, q).length, length, msg=q)

    def test_deterministic(self):
        first = filters._battle_lemarie_lowpass(4)[0]
        second = filters._battle_lemarie_lowpass(4)[0]
        self.assertTrue(np.array_equal(first, second))
        self.assertIs(make_filter(DAUBECHIES, 4), make_filter(DAUBECHIES, 4))

    def test_unsupported(self):
        for family, q in ((DAUBECHIES, 11), (SYMMLET, 3), (COIFLET, 3), (BATTLE_LEMARIE, 8), ('haar', 1)):
            with self.assertRaises(UnsupportedFamilyOrder) as context:
                make_filter(family, q)
            self.assertEqual(context.exception.exit_status, EXIT_VALIDATION)

        with self.assertRaises(UnsupportedFamilyOrder):
            parse_filter_name('db42')

    def test_filter_table(self):
        names = [name for name, family, q in filter_table()]
        self.assertIn('db10', names)
        self.assertIn('sym10', names)
        self.assertIn('coif5', names)
        self.assertIn('bl6', names)
        self.assertEqual(len(names), sum(len(orders) for orders in SUPPORTED_ORDERS.values()))


class TestSquaredGain(unittest.TestCase):

    def test_haar(self):
        qmf = make_filter(DAUBECHIES, 1)
        self.assertAlmostEqual(squared_gain(qmf, 'low', 0.0), 2.0, places=12)
        self.assertAlmostEqual(squared_gain(qmf, 'high', 0.0), 0.0, places=12)
        self.assertAlmostEqual(squared_gain(qmf, 'low', 0.5), 0.0, places=12)

    def test_db10_high_at_nyquist(self):
        qmf = make_filter(DAUBECHIES, 10)
        self.assertAlmostEqual(squared_gain(qmf, 'high', 0.5), 2.0, places=10)

    def test_power_complementary(self):
        lam = np.linspace(0.0, 0.5, 64)
        for qmf in all_filters():
            tol = 1e-8 if qmf.compact else 1e-4
            total = squared_gain(qmf, 'low', lam) + squared_gain(qmf, 'high', lam)
            np.testing.assert_allclose(total, 2.0, atol=tol, err_msg=qmf.name)

    def test_bad_selector(self):
        with self.assertRaises(ValueError):
            squared_gain(make_filter(DAUBECHIES, 2), 'band', 0.1)

if __name__ == '__main__':
    unittest.main()
