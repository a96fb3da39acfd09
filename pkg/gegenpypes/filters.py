#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Filters
=======

Conjugate quadrature mirror filter pairs for the four orthonormal wavelet
families used to build wavelet packets.  The Daubechies, Symmlet and Coiflet
coefficients are the tables shipped with PyWavelets, the Battle-Lemarie spline
filters are computed by spectral factorization and truncated.
"""

import math
from functools import lru_cache

import numpy as np
import pywt
from scipy.interpolate import BSpline

from bacpypes.debugging import bacpypes_debugging, DebugContents, ModuleLogger

from .errors import UnsupportedFamilyOrder

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# families
DAUBECHIES = 'daubechies'
SYMMLET = 'symmlet'
COIFLET = 'coiflet'
BATTLE_LEMARIE = 'battle-lemarie'

FAMILIES = (DAUBECHIES, SYMMLET, COIFLET, BATTLE_LEMARIE)

# supported number of vanishing moments per family
SUPPORTED_ORDERS = {
    DAUBECHIES: tuple(range(1, 11)),
    SYMMLET: tuple(range(4, 11)),
    COIFLET: (2, 4, 6, 8, 10),
    BATTLE_LEMARIE: (2, 4, 6),
    }

# short names, coifN has 2N vanishing moments
_prefix = {
    DAUBECHIES: 'db',
    SYMMLET: 'sym',
    COIFLET: 'coif',
    BATTLE_LEMARIE: 'bl',
    }

# Battle-Lemarie factorization settings
BL_GRID_LENGTH = 2 ** 14
BL_CUTOFF = 1e-9

#
#   QmfPair
#


@bacpypes_debugging
class QmfPair(DebugContents):

    """
    A conjugate pair of quadrature mirror filters.  The lowpass filter h(n)
    is stored for n = support_lo .. support_hi and the highpass filter is
    derived from it by g(n) = (-1)^n h(1 - n).
    """

    _debug_contents = (
        'family',
        'q',
        'support_lo',
        'support_hi',
        'compact',
        )

    def __init__(self, family, q, lowpass, support_lo=0, compact=True):
        if _debug: QmfPair._debug("__init__ %r %r ... %r %r", family, q, support_lo, compact)

        self.family = family
        self.q = q
        self.compact = compact

        lowpass = np.array(lowpass, dtype=float)
        lowpass.setflags(write=False)
        self.lowpass = lowpass
        self.support_lo = support_lo
        self.support_hi = support_lo + len(lowpass) - 1

        # g(n) = (-1)^n h(1 - n) for n = 1 - N2 .. 1 - N1
        self.highpass_lo = 1 - self.support_hi
        self.highpass_hi = 1 - self.support_lo
        n = np.arange(self.highpass_lo, self.highpass_hi + 1)
        highpass = np.where(n % 2 == 0, 1.0, -1.0) * lowpass[::-1]
        highpass.setflags(write=False)
        self.highpass = highpass

    @property
    def name(self):
        """Short name of the filter, for example db10 or coif5."""
        if self.family == COIFLET:
            return "%s%d" % (_prefix[self.family], self.q // 2)
        return "%s%d" % (_prefix[self.family], self.q)

    @property
    def length(self):
        return len(self.lowpass)

    @property
    def n_star(self):
        """N* = max(|N1|, |N2|), the support radius used by the decay bounds."""
        return max(abs(self.support_lo), abs(self.support_hi))

    def coefficients(self, which):
        """Return the (coefficients, first index) of the low or high filter."""
        if which == 'low':
            return self.lowpass, self.support_lo
        elif which == 'high':
            return self.highpass, self.highpass_lo
        raise ValueError("which must be 'low' or 'high': %r" % (which,))

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, self.name)

#
#   Filter construction
#


def _battle_lemarie_lowpass(q):
    """Compute the symmetric Battle-Lemarie lowpass filter with q vanishing
    moments on a frequency grid, then truncate the tails.

    :param q: number of vanishing moments (spline order)
    :returns: a tuple of the coefficients and the index of the first one
    """
    if _debug: _log.debug("_battle_lemarie_lowpass %r", q)

    # the autocorrelation of the order q B-spline is the order 2q B-spline,
    # its integer samples are the Fourier coefficients of A(omega)
    degree = 2 * q - 1
    knots = np.arange(degree + 2) - (degree + 1) / 2.0
    spline = BSpline.basis_element(knots, extrapolate=False)
    taps = np.arange(1, q)
    samples = spline(taps)
    center = spline(0.0)

    def autocorrelation(omega):
        value = np.full_like(omega, center)
        for n, b in zip(taps, samples):
            value += 2.0 * b * np.cos(n * omega)
        return value

    omega = 2.0 * np.pi * np.arange(BL_GRID_LENGTH) / BL_GRID_LENGTH
    gain = math.sqrt(2.0) * np.cos(omega / 2.0) ** q \
        * np.sqrt(autocorrelation(omega) / autocorrelation(2.0 * omega))

    # back to the time domain, index n lives at position n mod M
    coeffs = np.real(np.fft.ifft(gain))
    coeffs = np.fft.fftshift(coeffs)
    index = np.arange(BL_GRID_LENGTH) - BL_GRID_LENGTH // 2

    # truncate symmetrically where the coefficients drop below the cutoff
    radius = int(np.max(np.abs(index[np.abs(coeffs) >= BL_CUTOFF])))
    keep = np.abs(index) <= radius
    coeffs = coeffs[keep]
    if _debug: _log.debug("    - radius: %r", radius)

    return coeffs, -radius


def _balance(coeffs, first):
    """Scale the even and the odd indexed coefficients so each half sums to
    1/sqrt(2), then h sums to sqrt(2) and g sums to zero to rounding.

    :param coeffs: lowpass coefficients
    :param first: index of the first coefficient
    :returns: the scaled coefficients
    """
    coeffs = np.array(coeffs, dtype=float)
    even = (np.arange(len(coeffs)) + first) % 2 == 0
    for half in (even, ~even):
        coeffs[half] *= (1.0 / math.sqrt(2.0)) / np.sum(coeffs[half])
    return coeffs


@lru_cache(maxsize=None)
def make_filter(family, q):
    """
    Build the QMF pair of a wavelet family.

    :param family: one of the family constants
    :param q: number of vanishing moments
    :returns: a :class:`QmfPair`
    """
    if _debug: _log.debug("make_filter %r %r", family, q)

    if q not in SUPPORTED_ORDERS.get(family, ()):
        raise UnsupportedFamilyOrder(family, q)

    if family == BATTLE_LEMARIE:
        coeffs, first = _battle_lemarie_lowpass(q)
        return QmfPair(family, q, _balance(coeffs, first), support_lo=first, compact=False)

    if family == COIFLET:
        wavelet = pywt.Wavelet("coif%d" % (q // 2,))
    else:
        wavelet = pywt.Wavelet("%s%d" % (_prefix[family], q))

    return QmfPair(family, q, _balance(wavelet.rec_lo, 0), support_lo=0)


def filter_table():
    """Return a list of (name, family, q) for every supported filter."""
    table = []
    for family in FAMILIES:
        for q in SUPPORTED_ORDERS[family]:
            if family == COIFLET:
                name = "%s%d" % (_prefix[family], q // 2)
            else:
                name = "%s%d" % (_prefix[family], q)
            table.append((name, family, q))
    return table


def parse_filter_name(name):
    """Map a short filter name like ``db10``, ``coif5`` or ``bl6`` to a
    (family, q) tuple.
    """
    for short_name, family, q in filter_table():
        if short_name == name.lower():
            return family, q
    raise UnsupportedFamilyOrder(name)


def squared_gain(qmf, which, lam):
    """
    Squared gain |sum_n c(n) exp(-i 2 pi lam n)|^2 of the low or high
    filter of a pair.

    :param qmf: a :class:`QmfPair`
    :param which: 'low' or 'high'
    :param lam: frequency in cycles per sample, scalar or array
    """
    coeffs, first = qmf.coefficients(which)
    lam = np.asarray(lam, dtype=float)

    n = np.arange(first, first + len(coeffs))
    phase = np.exp(-2j * np.pi * np.multiply.outer(lam, n))
    gain = np.abs(phase @ coeffs) ** 2

    if gain.ndim == 0:
        return float(gain)
    return gain
